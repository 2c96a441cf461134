use std::collections::{HashSet, VecDeque};

use super::{EnumerateError, SphericalSystem};
use crate::perm::PermGroup;

/// Default bound on the number of tuples visited by one orbit computation.
pub const DEFAULT_ORBIT_CAP: usize = 2_000_000;

/// The move at position `idx` (0-based, `idx + 1 < r`):
/// `(…, x, y, …) ↦ (…, y, y⁻¹ x y, …)`.
pub fn hurwitz_move(sys: &SphericalSystem, idx: usize) -> SphericalSystem {
    let mut elements = sys.elements().to_vec();
    move_in_place(sys.group(), &mut elements, idx);
    SphericalSystem::unchecked(sys.group().clone(), elements, sys.signature().clone())
}

/// Inverse of [`hurwitz_move`]: `(…, x, y, …) ↦ (…, x y x⁻¹, x, …)`.
pub fn inverse_hurwitz_move(sys: &SphericalSystem, idx: usize) -> SphericalSystem {
    let group = sys.group();
    let mut elements = sys.elements().to_vec();
    let (x, y) = (elements[idx], elements[idx + 1]);
    elements[idx] = group.conjugate(y, group.inv(x));
    elements[idx + 1] = x;
    SphericalSystem::unchecked(group.clone(), elements, sys.signature().clone())
}

pub(crate) fn move_in_place(group: &PermGroup, t: &mut [usize], idx: usize) {
    let (x, y) = (t[idx], t[idx + 1]);
    t[idx] = y;
    t[idx + 1] = group.conjugate(x, y);
}

/// Breadth-first closure of `start` under all moves, capped at `cap` tuples.
pub(crate) fn full_orbit(group: &PermGroup, start: &[usize], cap: usize) -> Result<Vec<Vec<usize>>, EnumerateError> {
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut out = Vec::new();
    while let Some(t) = queue.pop_front() {
        for idx in 0..t.len().saturating_sub(1) {
            let mut u = t.clone();
            move_in_place(group, &mut u, idx);
            if !seen.contains(&u) {
                if seen.len() >= cap {
                    return Err(EnumerateError::OrbitCapExceeded { cap });
                }
                seen.insert(u.clone());
                queue.push_back(u);
            }
        }
        out.push(t);
    }
    Ok(out)
}

/// The Hurwitz orbit of `sys`, restricted to tuples whose element orders are
/// nondecreasing, sorted.
pub fn hurwitz_orbit(sys: &SphericalSystem, cap: usize) -> Result<Vec<SphericalSystem>, EnumerateError> {
    let group = sys.group();
    let mut out: Vec<SphericalSystem> = full_orbit(group, sys.elements(), cap)?
        .into_iter()
        .filter(|t| t.windows(2).all(|w| group.element_order(w[0]) <= group.element_order(w[1])))
        .map(|t| SphericalSystem::unchecked(group.clone(), t, sys.signature().clone()))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use std::sync::Arc;

    fn a5() -> Arc<PermGroup> {
        let gens = ["(1,2,3)", "(3,4,5)"].iter().map(|g| Permutation::parse_cycles(g, 5).unwrap()).collect();
        Arc::new(PermGroup::from_generators(5, gens).unwrap())
    }

    #[test]
    fn moves_preserve_system_and_invert() {
        let g = a5();
        let s = SphericalSystem::from_cycles(g.clone(), &["(1,4)(3,5)", "(1,5)(2,4)", "(1,3)(2,4)", "(1,5,4)"]).unwrap();
        for idx in 0..3 {
            let m = hurwitz_move(&s, idx);
            assert!(SphericalSystem::new(g.clone(), m.elements().to_vec()).is_ok());
            assert_eq!(m.signature(), s.signature());
            assert_eq!(inverse_hurwitz_move(&m, idx), s);
        }
    }

    #[test]
    fn commuting_pair_swaps() {
        let z = {
            let gens = vec![Permutation::parse_cycles("(1,2)", 4).unwrap(), Permutation::parse_cycles("(3,4)", 4).unwrap()];
            Arc::new(PermGroup::from_generators(4, gens).unwrap())
        };
        let s = SphericalSystem::from_cycles(z.clone(), &["(1,2)", "(3,4)", "(1,2)(3,4)"]).unwrap();
        let m = hurwitz_move(&s, 0);
        assert_eq!(m.elements(), &[s.elements()[1], s.elements()[0], s.elements()[2]]);
        let e = SphericalSystem::from_cycles(z.clone(), &["(1,2)", "(1,2)", "(3,4)", "(3,4)"]).unwrap();
        assert_eq!(hurwitz_orbit(&e, 100).unwrap().len(), 6);
        let z2 = Arc::new(PermGroup::from_generators(4, vec![Permutation::parse_cycles("(1,2)", 4).unwrap()]).unwrap());
        let pair = SphericalSystem::from_cycles(z2, &["(1,2)", "(1,2)"]).unwrap();
        assert_eq!(hurwitz_orbit(&pair, 100).unwrap(), vec![pair]);
    }

    #[test]
    fn orbit_is_closed() {
        let g = a5();
        let s = SphericalSystem::from_cycles(g.clone(), &["(2,3)(4,5)", "(1,5,3,4,2)", "(1,3,4,2,5)"]).unwrap();
        let full: HashSet<Vec<usize>> = full_orbit(&g, s.elements(), 100_000).unwrap().into_iter().collect();
        for t in &full {
            for idx in 0..2 {
                let mut u = t.clone();
                move_in_place(&g, &mut u, idx);
                assert!(full.contains(&u));
            }
        }
        let sorted = hurwitz_orbit(&s, 100_000).unwrap();
        assert!(sorted.len() > 1);
        assert!(sorted.iter().all(|x| x.is_order_sorted()));
        assert!(matches!(hurwitz_orbit(&s, 2), Err(EnumerateError::OrbitCapExceeded { .. })));
    }
}
