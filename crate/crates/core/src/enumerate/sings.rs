use serde::{Deserialize, Serialize};

use super::types::node_target;
use crate::perm::PermGroup;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rejection {
    /// Two stabilizers share a power of order at least 3.
    WorseThanNode,
    /// The running node count passed `8 − K²`.
    TooManyNodes,
    /// Only nodes, but fewer than `8 − K²` of them.
    TooFewNodes,
}

/// Singularities of `(C1 × C2)/G` read off from a pair of spherical systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub accepted: bool,
    pub node_count: Rational,
    pub rejection: Option<Rejection>,
}

/// Counts the nodes of the quotient surface.
///
/// For every `g1` in the first tuple, `g2` in the second, and exponents
/// `1 ≤ d1 < ord g1`, `1 ≤ d2 < ord g2` with `g1^d1` conjugate to `g2^d2`:
/// a common power of order at least 3 is a worse singularity, and one of
/// order 2 contributes `|G| / (2 d1 d2 |class|)` nodes. The scan stops as
/// soon as the count passes `8 − K²`.
pub fn check_sings(group: &PermGroup, sys1: &[usize], sys2: &[usize], k_squared: u32) -> SingularityReport {
    let target = Rational::from_integer(node_target(k_squared) as i64);
    let n = group.order() as i64;
    let mut nodes = Rational::from_integer(0);
    for &g1 in sys1 {
        let o1 = group.element_order(g1);
        for &g2 in sys2 {
            let o2 = group.element_order(g2);
            for d1 in 1..o1 {
                let p1 = group.pow(g1, d1 as i64);
                for d2 in 1..o2 {
                    let p2 = group.pow(g2, d2 as i64);
                    if !group.are_conjugate(p1, p2) {
                        continue;
                    }
                    let order = group.element_order(p1);
                    if order >= 3 {
                        return SingularityReport {
                            accepted: false,
                            node_count: nodes,
                            rejection: Some(Rejection::WorseThanNode),
                        };
                    }
                    let class = group.class_size(p1) as i64;
                    nodes += Rational::new(n, 2 * d1 as i64 * d2 as i64 * class);
                    if nodes > target {
                        return SingularityReport {
                            accepted: false,
                            node_count: nodes,
                            rejection: Some(Rejection::TooManyNodes),
                        };
                    }
                }
            }
        }
    }
    let accepted = nodes == target;
    SingularityReport { accepted, node_count: nodes, rejection: (!accepted).then_some(Rejection::TooFewNodes) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn setup(degree: usize, gens: &[&str], a: &[&str], b: &[&str]) -> (PermGroup, Vec<usize>, Vec<usize>) {
        let gens = gens.iter().map(|g| Permutation::parse_cycles(g, degree).unwrap()).collect();
        let g = PermGroup::from_generators(degree, gens).unwrap();
        let ids = |s: &[&str]| s.iter().map(|c| g.id_of(&Permutation::parse_cycles(c, degree).unwrap()).unwrap()).collect();
        let (a, b) = (ids(a), ids(b));
        (g, a, b)
    }

    #[test]
    fn a5_pair_has_six_nodes() {
        let (g, a, b) = setup(
            5,
            &["(1,2,3)", "(3,4,5)"],
            &["(1,4)(3,5)", "(1,5)(2,4)", "(1,3)(2,4)", "(1,5,4)"],
            &["(2,3)(4,5)", "(1,5,3,4,2)", "(1,3,4,2,5)"],
        );
        let r = check_sings(&g, &a, &b, 2);
        assert!(r.accepted);
        assert_eq!(r.node_count, Rational::from_integer(6));
    }

    #[test]
    fn shared_three_cycle_is_worse_than_a_node() {
        let (g, a, b) = setup(
            5,
            &["(1,2,3)", "(3,4,5)"],
            &["(1,2)(4,5)", "(1,2,3)", "(1,3,4,2,5)"],
            &["(1,3)(2,4)", "(1,2,3)", "(2,3)(4,5)", "(1,5,4)"],
        );
        assert_eq!(check_sings(&g, &a, &b, 2).rejection, Some(Rejection::WorseThanNode));
    }

    #[test]
    fn disjoint_orders() {
        let (g, a, b) = setup(
            7,
            &["(3,4)(5,6)", "(1,2,3)(4,5,7)"],
            &["(1,5,7)(2,3,4)", "(1,4,5)(3,6,7)", "(2,4,7,6)(3,5)"],
            &["(1,2,3,5,6,7,4)", "(1,2,3,5,6,7,4)", "(1,2,3,5,6,7,4)", "(1,2,3,5,6,7,4)", "(1,2,3,5,6,7,4)", "(1,2,3,5,6,7,4)", "(1,2,3,5,6,7,4)"],
        );
        let r = check_sings(&g, &a, &b, 8);
        assert!(r.accepted);
        assert_eq!(r.node_count, Rational::from_integer(0));
        assert_eq!(check_sings(&g, &a, &b, 6).rejection, Some(Rejection::TooFewNodes));
    }
}
