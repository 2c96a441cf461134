use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use super::{PermError, Permutation};
use crate::fp::AbelianInvariants;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// Groups up to this order carry a full multiplication table.
const TABLE_LIMIT: usize = 4096;

/// A finite permutation group with its complete element list.
///
/// Elements are numbered by breadth-first discovery from the identity
/// (element 0), multiplying on the right by the generators in order. All
/// derived data (inverses, orders, conjugacy classes) is computed once at
/// construction, after which the group is immutable.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    table: Option<Vec<u16>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u32>,
}

/// Outcome of a conjugacy test. When `conjugate` holds, `h⁻¹ x h = y` for the witness `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub conjugate: bool,
    pub witness: Option<usize>,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    /// Closes `generators` under multiplication, failing once more than `cap` elements appear.
    pub fn with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0u32)]);
        let mut parent = vec![0u32];
        let mut via = vec![0u32];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let next = elements[head].then(g);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= cap {
                            return Err(PermError::CapExceeded { cap });
                        }
                        let id = elements.len() as u32;
                        index.insert(next.clone(), id);
                        elements.push(next);
                        parent.push(head as u32);
                        via.push(gi as u32);
                        id
                    }
                };
                right[gi].push(id);
            }
            head += 1;
        }
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut table = vec![0u16; n * n];
            for i in 0..n {
                let row = &mut table[i * n..(i + 1) * n];
                row[0] = i as u16;
                for j in 1..n {
                    let p = row[parent[j] as usize] as usize;
                    row[j] = right[via[j] as usize][p] as u16;
                }
            }
            table
        });
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        let mut group = PermGroup {
            degree,
            generators,
            elements,
            index,
            table,
            inverse,
            orders,
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_sizes: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g] as usize).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            class_of[start] = c;
            let mut queue = VecDeque::from([start]);
            let mut size = 1u32;
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.conjugate(x, g);
                    if class_of[y] == u32::MAX {
                        class_of[y] = c;
                        size += 1;
                        queue.push_back(y);
                    }
                }
            }
            reps.push(start as u32);
            sizes.push(size);
        }
        self.class_of = class_of;
        self.class_reps = reps;
        self.class_sizes = sizes;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element ids of the generators.
    pub fn generator_ids(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g] as usize).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = Self::IDENTITY;
        for _ in 0..k.unsigned_abs() % self.element_order(x) as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn product(&self, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(Self::IDENTITY, |acc, x| self.mul(acc, x))
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x] as usize
    }

    /// All elements of exact order `k`, in element order.
    pub fn elements_of_order(&self, k: usize) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.element_order(x) == k).collect()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    /// Class representatives: the least element id of each class.
    pub fn class_reps(&self) -> impl Iterator<Item = usize> + '_ {
        self.class_reps.iter().map(|&r| r as usize)
    }

    pub fn class_size(&self, x: usize) -> usize {
        self.class_sizes[self.class_of(x)] as usize
    }

    pub fn is_class_rep(&self, x: usize) -> bool {
        self.class_reps[self.class_of(x)] as usize == x
    }

    /// Exhaustive scan for `h` with `h⁻¹ x h = y`, the first one in element order.
    pub fn conjugacy(&self, x: usize, y: usize) -> ConjugacyWitness {
        let witness = (0..self.order()).find(|&h| self.conjugate(x, h) == y);
        ConjugacyWitness { conjugate: witness.is_some(), witness }
    }

    pub fn are_conjugate(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn centralizer_elements(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }

    /// The centralizer of `x` as a group, together with the size of the class of `x`.
    pub fn centralizer_and_class(&self, x: usize) -> (PermGroup, usize) {
        let cent = self.centralizer_elements(x);
        let gens = self.minimal_generators_from(&cent);
        let group = PermGroup::with_cap(self.degree, gens.iter().map(|&g| self.elements[g].clone()).collect(), usize::MAX)
            .expect("subgroup of an existing group");
        let class_size = self.order() / cent.len();
        (group, class_size)
    }

    /// Greedy generating set for the subgroup whose elements are `members`.
    fn minimal_generators_from(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[Self::IDENTITY] = true;
        for &m in members {
            if inside[m] {
                continue;
            }
            gens.push(m);
            for x in self.closure(&gens) {
                inside[x] = true;
            }
        }
        gens
    }

    /// Elements of the subgroup generated by `ids`, in discovery order.
    pub fn closure(&self, ids: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[Self::IDENTITY] = true;
        let mut out = vec![Self::IDENTITY];
        let mut head = 0;
        while head < out.len() {
            let e = out[head];
            head += 1;
            for &s in ids {
                let f = self.mul(e, s);
                if !seen[f] {
                    seen[f] = true;
                    out.push(f);
                }
            }
        }
        out
    }

    /// Whether `ids` generate the whole group. Stops as soon as more than half
    /// the group is reached, since a proper subgroup has index at least two.
    pub fn generates(&self, ids: &[usize]) -> bool {
        let n = self.order();
        if n == 1 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[Self::IDENTITY] = true;
        let mut queue = Vec::with_capacity(n);
        queue.push(Self::IDENTITY);
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &s in ids {
                let f = self.mul(e, s);
                if !seen[f] {
                    seen[f] = true;
                    queue.push(f);
                    if 2 * queue.len() > n {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// The commutator subgroup, sorted. It is generated by the commutators
    /// of the generators with all elements, which already form a normal set.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = self
            .generator_ids()
            .into_iter()
            .flat_map(|a| (0..self.order()).map(move |g| (a, g)))
            .map(|(a, g)| self.mul(self.inv(a), self.conjugate(a, g)))
            .filter(|&c| c != Self::IDENTITY)
            .collect();
        comms.sort_unstable();
        comms.dedup();
        let mut out = self.closure(&comms);
        out.sort_unstable();
        out
    }

    /// Abelian invariants of `G/[G,G]`, read off from how many cosets of the
    /// commutator subgroup are killed by each prime power.
    pub fn abelianization(&self) -> AbelianInvariants {
        let derived = self.derived_subgroup();
        let mut inside = vec![false; self.order()];
        for &x in &derived {
            inside[x] = true;
        }
        let mut rest = self.order() / derived.len();
        let mut factors: Vec<u64> = Vec::new();
        let mut p = 2;
        while rest > 1 {
            if rest % p != 0 {
                p += 1;
                continue;
            }
            let mut full = 1;
            while rest % p == 0 {
                rest /= p;
                full *= p;
            }
            // ranks[k] = number of cyclic factors of order at least p^(k+1)
            let mut ranks = Vec::new();
            let (mut q, mut prev) = (p, 1);
            while prev < full {
                let killed = (0..self.order()).filter(|&x| inside[self.pow(x, q as i64)]).count() / derived.len();
                let mut r = 0;
                let mut t = killed / prev;
                while t > 1 {
                    t /= p;
                    r += 1;
                }
                ranks.push(r);
                prev = killed;
                q *= p;
            }
            let cyclic = ranks.first().copied().unwrap_or(0);
            for i in 0..cyclic {
                let e = ranks.iter().filter(|&&m| m > i).count() as u32;
                if factors.len() <= i {
                    factors.push(1);
                }
                factors[i] *= (p as u64).pow(e);
            }
            p += 1;
        }
        let factors: Vec<BigInt> = factors.into_iter().map(BigInt::from).collect();
        AbelianInvariants::from_factors(factors.len(), &factors)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ids();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted list of `(element order, class size, number of classes)`; an isomorphism invariant.
    pub fn fingerprint(&self) -> Vec<(usize, usize, usize)> {
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for r in self.class_reps() {
            *counts.entry((self.element_order(r), self.class_size(r))).or_default() += 1;
        }
        let mut out: Vec<_> = counts.into_iter().map(|((o, s), c)| (o, s, c)).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn group(degree: usize, gens: &[&str]) -> PermGroup {
        let gens = gens.iter().map(|g| Permutation::parse_cycles(g, degree).unwrap()).collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    #[test]
    fn abelianizations() {
        let h1 = |degree, gens: &[&str]| group(degree, gens).abelianization().to_string();
        assert_eq!(h1(4, &["(1,2)", "(1,2,3,4)"]), "Z2");
        assert_eq!(h1(4, &["(1,2,3)", "(2,3,4)"]), "Z3");
        assert_eq!(h1(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"]), "1");
        assert_eq!(h1(4, &["(1,2,3,4)", "(1,3)"]), "Z2^2");
        assert_eq!(h1(6, &["(1,2,3,4)", "(5,6)"]), "Z2xZ4");
        assert_eq!(h1(9, &["(1,2,3)(4,5,6,7,8,9)"]), "Z6");
        assert_eq!(group(4, &["(1,2,3)", "(2,3,4)"]).derived_subgroup().len(), 4);
    }

    #[test]
    fn closure_orders() {
        assert_eq!(group(3, &["(1,2)", "(1,2,3)"]).order(), 6);
        assert_eq!(group(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"]).order(), 168);
        assert_eq!(group(6, &["(1,2)", "(1,3)", "(1,4)", "(5,6)"]).order(), 48);
        assert_eq!(group(4, &[]).order(), 1);
    }

    #[test]
    fn closure_cap() {
        let gens = vec![
            Permutation::parse_cycles("(1,2)", 7).unwrap(),
            Permutation::parse_cycles("(1,2,3,4,5,6,7)", 7).unwrap(),
        ];
        assert!(matches!(PermGroup::with_cap(7, gens, 1000), Err(PermError::CapExceeded { cap: 1000 })));
    }

    #[test]
    fn bfs_order_is_deterministic() {
        let g = group(3, &["(1,2)", "(1,2,3)"]);
        let shown: Vec<String> = g.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["()", "(1,2)", "(1,2,3)", "(1,3)", "(2,3)", "(1,3,2)"]);
    }

    #[test]
    fn table_matches_composition() {
        let g = group(5, &["(1,2,3)", "(3,4,5)"]);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(g.element(g.mul(a, b)), &g.element(a).then(g.element(b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), PermGroup::IDENTITY);
        }
    }

    #[test]
    fn element_counts() {
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        assert_eq!(s3.elements_of_order(2).len(), 3);
        assert_eq!(s3.elements_of_order(1), vec![0]);
        let psl = group(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"]);
        assert_eq!(psl.elements_of_order(2).len(), 21);
    }

    #[test]
    fn conjugacy_and_centralizers() {
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        let a = s3.id_of(&Permutation::parse_cycles("(1,2)", 3).unwrap()).unwrap();
        let b = s3.id_of(&Permutation::parse_cycles("(1,3)", 3).unwrap()).unwrap();
        let w = s3.conjugacy(a, b);
        assert!(w.conjugate);
        assert_eq!(s3.conjugate(a, w.witness.unwrap()), b);
        assert_eq!(s3.conjugacy(0, 0), ConjugacyWitness { conjugate: true, witness: Some(0) });

        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let t = s4.id_of(&Permutation::parse_cycles("(1,2)", 4).unwrap()).unwrap();
        let (cent, size) = s4.centralizer_and_class(t);
        assert_eq!(size, 6);
        assert_eq!(cent.order(), 4);
        let (cent, size) = s4.centralizer_and_class(0);
        assert_eq!((cent.order(), size), (24, 1));

        let psl = group(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"]);
        for x in psl.elements_of_order(2) {
            assert_eq!(psl.centralizer_and_class(x).1, 21);
        }
    }

    #[test]
    fn abelian_conjugacy_is_equality() {
        let g = group(6, &["(1,2,3,4)", "(5,6)"]);
        let fours = g.elements_of_order(4);
        assert!(!g.conjugacy(fours[0], fours[1]).conjugate);
    }

    #[test]
    fn class_equation() {
        for g in [
            group(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"]),
            group(6, &["(1,2)", "(1,3)", "(1,4)", "(5,6)"]),
            group(6, &["(1,2,3,4,5)", "(4,5,6)"]),
        ] {
            let total: usize = g.class_reps().map(|r| g.class_size(r)).sum();
            assert_eq!(total, g.order());
            for x in 0..g.order() {
                assert_eq!(g.class_size(x) * g.centralizer_elements(x).len(), g.order());
            }
        }
    }

    #[test]
    fn generates_detects_proper_subgroups() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let c = s4.id_of(&Permutation::parse_cycles("(1,2,3,4)", 4).unwrap()).unwrap();
        let t = s4.id_of(&Permutation::parse_cycles("(1,3)", 4).unwrap()).unwrap();
        assert!(!s4.generates(&[c, t]));
        assert_eq!(s4.closure(&[c, t]).len(), 8);
        assert!(s4.generates(&s4.generator_ids()));
    }
}
