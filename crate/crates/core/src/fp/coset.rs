use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;
use crate::perm::PermGroup;

const NONE: u32 = u32::MAX;

/// Action of a finitely presented group on the right cosets of a subgroup.
///
/// Columns are indexed by [`Letter::column`]: `2g` for generator `g` and
/// `2g + 1` for its inverse. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    table: Vec<u32>,
    subgroup_words: Vec<Word>,
}

impl CosetTable {
    /// Builds a table from a right action given as one image list per generator.
    pub fn from_action(images: &[Vec<u32>], subgroup_words: Vec<Word>) -> Result<Self, FpError> {
        let generators = images.len();
        let n = images.first().map_or(1, Vec::len);
        let cols = 2 * generators;
        let mut table = vec![NONE; n * cols];
        for (g, img) in images.iter().enumerate() {
            if img.len() != n {
                return Err(FpError::IncompleteTable);
            }
            for (c, &d) in img.iter().enumerate() {
                table[c * cols + 2 * g] = d;
                if table[d as usize * cols + 2 * g + 1] != NONE {
                    return Err(FpError::IncompleteTable);
                }
                table[d as usize * cols + 2 * g + 1] = c as u32;
            }
        }
        Ok(CosetTable { generators, table, subgroup_words })
    }

    pub fn coset_count(&self) -> usize {
        if self.generators == 0 {
            1
        } else {
            self.table.len() / (2 * self.generators)
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    #[inline]
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.table[coset * 2 * self.generators + letter.column()] as usize
    }

    /// Image of `coset` under a word, read left to right.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Every relator fixes every coset and every subgroup word fixes coset 0.
    pub fn is_consistent_with(&self, p: &Presentation) -> bool {
        (0..self.coset_count()).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
            && self.subgroup_words.iter().all(|w| self.trace(0, w) == 0)
    }

    /// Renumbers cosets in breadth-first order from coset 0, scanning columns
    /// in order. Two tables of the same subgroup become identical.
    pub fn standardize(&self) -> CosetTable {
        let n = self.coset_count();
        let cols = 2 * self.generators;
        let mut new_of = vec![NONE; n];
        let mut order = vec![0usize];
        new_of[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..cols {
                let d = self.table[c * cols + col] as usize;
                if new_of[d] == NONE {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = vec![NONE; n * cols];
        for (new, &old) in order.iter().enumerate() {
            for col in 0..cols {
                table[new * cols + col] = new_of[self.table[old * cols + col] as usize];
            }
        }
        CosetTable { generators: self.generators, table, subgroup_words: self.subgroup_words.clone() }
    }

    /// Right action of generator `g` as an image list.
    pub fn generator_images(&self, g: usize) -> Vec<u32> {
        (0..self.coset_count()).map(|c| self.act(c, Letter::gen(g)) as u32).collect()
    }
}

/// Coset table of `H = {(x, y) : φ1(x) = φ2(y)}` inside `P1 × P2`, built from the epimorphisms.
///
/// The right coset of `(x, y)` is identified with `φ2(y)⁻¹ φ1(x) ∈ G`; the
/// generators of `P1` act by right multiplication with their images and those
/// of `P2` by left multiplication with inverse images. The table therefore has
/// exactly `|G|` cosets, coset `i` being element `i` of `G`.
///
/// `phi1`, `phi2` give element ids in `group` for the generators of `p1`, `p2`.
/// Power relators `g^m` must map to elements of order exactly `m`.
pub fn coset_table_from_hom(
    p1: &Presentation,
    p2: &Presentation,
    group: &PermGroup,
    phi1: &[usize],
    phi2: &[usize],
) -> Result<CosetTable, FpError> {
    check_epimorphism(p1, group, phi1)?;
    check_epimorphism(p2, group, phi2)?;
    let n = group.order();
    let mut images: Vec<Vec<u32>> = Vec::with_capacity(phi1.len() + phi2.len());
    for &g in phi1 {
        images.push((0..n).map(|k| group.mul(k, g) as u32).collect());
    }
    for &d in phi2 {
        let di = group.inv(d);
        images.push((0..n).map(|k| group.mul(di, k) as u32).collect());
    }
    CosetTable::from_action(&images, Vec::new())
}

/// Checks that generator images define an appropriate surjection onto `group`.
pub fn check_epimorphism(p: &Presentation, group: &PermGroup, images: &[usize]) -> Result<(), FpError> {
    if images.len() != p.generator_count() {
        return Err(FpError::NotAHomomorphism);
    }
    for r in p.relators() {
        let value = r.letters().iter().fold(PermGroup::IDENTITY, |acc, l| {
            let g = images[l.generator()];
            group.mul(acc, if l.is_inverse() { group.inv(g) } else { g })
        });
        if value != PermGroup::IDENTITY {
            return Err(FpError::NotAHomomorphism);
        }
        let first = r.letters()[0];
        if r.letters().iter().all(|&l| l == first) && group.element_order(images[first.generator()]) != r.len() {
            return Err(FpError::NotAppropriate);
        }
    }
    if !group.generates(images) {
        return Err(FpError::NotSurjective);
    }
    Ok(())
}

/// Default coset limit for finiteness probes.
pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

/// How many times the table may fill up before the enumeration is abandoned.
const MAX_LOOKAHEADS: usize = 12;

struct Enumerator<'a> {
    cols: usize,
    table: Vec<u32>,
    /// Union-find forest; `parent[c] == c` for live cosets.
    parent: Vec<u32>,
    queue: Vec<u32>,
    relators: Vec<Vec<u32>>,
    subgroup: Vec<Vec<u32>>,
    limit: usize,
    live: usize,
    presentation: &'a Presentation,
}

enum Full {
    Yes,
}

impl<'a> Enumerator<'a> {
    fn new(p: &'a Presentation, subgroup: &[Word], limit: usize) -> Self {
        let cols = 2 * p.generator_count();
        let letters = |w: &Word| w.letters().iter().map(|l| l.column() as u32).collect::<Vec<u32>>();
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: Vec::new(),
            relators: p.relators().iter().map(letters).collect(),
            subgroup: subgroup.iter().map(|w| letters(&w.free_reduce())).collect(),
            limit,
            live: 1,
            presentation: p,
        }
    }

    #[inline]
    fn get(&self, c: usize, col: u32) -> u32 {
        self.table[c * self.cols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: usize, col: u32, d: u32) {
        self.table[c * self.cols + col as usize] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: usize, col: u32) -> Result<(), Full> {
        if self.live >= self.limit {
            return Err(Full::Yes);
        }
        let d = self.count() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, col, d);
        self.set(d as usize, col ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for col in 0..self.cols as u32 {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                if self.get(f as usize, col ^ 1) == e as u32 {
                    self.set(f as usize, col ^ 1, NONE);
                }
                let e1 = self.rep(e as u32);
                let f1 = self.rep(f);
                let x = self.get(e1 as usize, col);
                if x != NONE {
                    self.merge(f1, x);
                } else {
                    let y = self.get(f1 as usize, col ^ 1);
                    if y != NONE {
                        self.merge(e1, y);
                    } else {
                        self.set(e1 as usize, col, f1);
                        self.set(f1 as usize, col ^ 1, e1);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `w` from both ends at coset `c`; fills a single gap by
    /// deduction, records a coincidence, and defines new cosets if `define` is set.
    fn scan(&mut self, c: usize, w: &[u32], define: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c as u32;
        let mut b = c as u32;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while i as isize <= j {
                let x = self.get(f as usize, w[i]);
                if x == NONE {
                    break;
                }
                f = x;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let x = self.get(b as usize, w[j as usize] ^ 1);
                if x == NONE {
                    break;
                }
                b = x;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f as usize, w[i], b);
                self.set(b as usize, w[i] ^ 1, f);
                return Ok(());
            }
            if !define {
                return Ok(());
            }
            self.define(f as usize, w[i])?;
        }
    }

    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        let mut c = 0;
        while c < self.count() {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
        self.relators = relators;
    }

    /// Drops dead cosets, keeping the relative order of live ones. Returns the
    /// new position of old coset `pointer`.
    fn compact(&mut self, pointer: usize) -> usize {
        let n = self.count();
        let mut new_of = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.is_live(c) {
                new_of[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.cols as u32 {
                let d = self.get(c, col);
                table.push(if d == NONE { NONE } else { new_of[self.rep(d) as usize] });
            }
        }
        let new_pointer = (0..pointer.min(n)).filter(|&c| self.is_live(c)).count();
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_pointer
    }

    fn run(mut self) -> Result<CosetTable, FpError> {
        let subgroup = std::mem::take(&mut self.subgroup);
        let relators = std::mem::take(&mut self.relators);
        self.relators = relators.clone();
        let mut fills = 0;
        let mut c = 0usize;
        'outer: while c < self.count() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            let mut work: Vec<&Vec<u32>> = Vec::new();
            if c == 0 {
                work.extend(subgroup.iter());
            }
            work.extend(relators.iter());
            let mut result = Ok(());
            for w in work {
                if !self.is_live(c) {
                    break;
                }
                result = self.scan(c, w, true);
                if result.is_err() {
                    break;
                }
            }
            if result.is_ok() && self.is_live(c) {
                for col in 0..self.cols as u32 {
                    if self.get(c, col) == NONE {
                        if self.define(c, col).is_err() {
                            result = Err(Full::Yes);
                            break;
                        }
                    }
                }
            }
            match result {
                Ok(()) => c += 1,
                Err(Full::Yes) => {
                    fills += 1;
                    self.lookahead();
                    c = self.compact(c);
                    if fills > MAX_LOOKAHEADS || self.live + self.limit / 16 > self.limit {
                        return Err(FpError::CosetLimitExceeded { limit: self.limit });
                    }
                    continue 'outer;
                }
            }
        }
        self.compact(0);
        if self.table.contains(&NONE) {
            return Err(FpError::IncompleteTable);
        }
        let table = CosetTable {
            generators: self.presentation.generator_count(),
            table: self.table,
            subgroup_words: Vec::new(),
        };
        Ok(table)
    }
}

/// Hasselgrove–Leech–Trotter coset enumeration with lookahead when the table fills.
///
/// Cosets are numbered in order of definition, after removal of coincident
/// ones. Fails with [`FpError::CosetLimitExceeded`] when more than
/// `coset_limit` cosets would be live at once and lookahead cannot free a
/// sixteenth of the table.
pub fn todd_coxeter(p: &Presentation, subgroup_words: &[Word], coset_limit: usize) -> Result<CosetTable, FpError> {
    if coset_limit == 0 {
        return Err(FpError::CosetLimitExceeded { limit: 0 });
    }
    if p.generator_count() == 0 {
        return Ok(CosetTable { generators: 0, table: Vec::new(), subgroup_words: subgroup_words.to_vec() });
    }
    let mut table = Enumerator::new(p, subgroup_words, coset_limit).run()?;
    table.subgroup_words = subgroup_words.to_vec();
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::presentation::polygonal_presentation;
    use crate::geometry::Signature;
    use crate::perm::Permutation;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_and_small_groups() {
        let t = todd_coxeter(&pres("gens: a\nrel: a^5"), &[], 100).unwrap();
        assert_eq!(t.coset_count(), 5);
        let s3 = pres("gens: a b\nrel: a^2\nrel: b^3\nrel: a*b*a*b");
        assert_eq!(todd_coxeter(&s3, &[], 100).unwrap().coset_count(), 6);
        let b = Word::power_of(1, 1);
        let t = todd_coxeter(&s3, &[b], 100).unwrap();
        assert_eq!(t.coset_count(), 2);
        assert!(t.is_consistent_with(&s3));
    }

    #[test]
    fn triangle_groups() {
        let sig = |s: &str| s.parse::<Signature>().unwrap();
        assert_eq!(todd_coxeter(&polygonal_presentation(&sig("2,3,5")), &[], 1000).unwrap().coset_count(), 60);
        assert_eq!(todd_coxeter(&polygonal_presentation(&sig("2,3,4")), &[], 1000).unwrap().coset_count(), 24);
        let hyperbolic = polygonal_presentation(&sig("2,3,7"));
        assert!(matches!(todd_coxeter(&hyperbolic, &[], 100_000), Err(FpError::CosetLimitExceeded { .. })));
    }

    #[test]
    fn coincidences_collapse() {
        // ⟨a, b | a b a⁻¹ b⁻², b a b⁻¹ a⁻²⟩ is trivial.
        let p = pres("gens: a b\nrel: a*b*a^-1*b^-2\nrel: b*a*b^-1*a^-2");
        assert_eq!(todd_coxeter(&p, &[], 1000).unwrap().coset_count(), 1);
        // Limit of one coset still suffices when lookahead proves triviality.
        let q = pres("gens: a\nrel: a");
        assert_eq!(todd_coxeter(&q, &[], 1).unwrap().coset_count(), 1);
    }

    #[test]
    fn algebraic_fiber_product_table() {
        let sig = |s: &str| s.parse::<Signature>().unwrap();
        let z2 = PermGroup::from_generators(2, vec![Permutation::parse_cycles("(1,2)", 2).unwrap()]).unwrap();
        let p = polygonal_presentation(&sig("2,2"));
        let t = coset_table_from_hom(&p, &p, &z2, &[1, 1], &[1, 1]).unwrap();
        assert_eq!(t.coset_count(), 2);
        let product = crate::fp::presentation::direct_product_presentation(&p, &p);
        assert!(t.is_consistent_with(&product));
        assert!(matches!(coset_table_from_hom(&p, &p, &z2, &[0, 0], &[1, 1]), Err(FpError::NotAppropriate)));
    }

    #[test]
    fn standardization_is_canonical() {
        let s3 = pres("gens: a b\nrel: a^2\nrel: b^3\nrel: a*b*a*b");
        let t = todd_coxeter(&s3, &[], 100).unwrap();
        assert_eq!(t.standardize(), t.standardize().standardize());
    }
}
