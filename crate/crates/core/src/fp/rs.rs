use std::collections::VecDeque;

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;

/// Rewrites words of the parent group that lie in the subgroup into words in
/// the Schreier generators.
#[derive(Clone, Debug)]
pub struct Rewriter {
    table: CosetTable,
    /// For the positive edge `(coset, generator)`: its Schreier generator, or `None` on a tree edge.
    edge_gen: Vec<Option<u32>>,
    generators: usize,
}

impl Rewriter {
    fn edge(&self, coset: usize, generator: usize) -> Option<u32> {
        self.edge_gen[coset * self.generators + generator]
    }

    /// Rewrites `w`, traced from coset `start`, and reports the end coset.
    pub fn rewrite_from(&self, start: usize, w: &Word) -> (Word, usize) {
        let mut out = Vec::new();
        let mut c = start;
        for &l in w.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let d = self.table.act(c, l);
                if let Some(s) = self.edge(d, g) {
                    out.push(Letter::inv(s as usize));
                }
                c = d;
            } else {
                if let Some(s) = self.edge(c, g) {
                    out.push(Letter::gen(s as usize));
                }
                c = self.table.act(c, l);
            }
        }
        (Word::from_letters(out), c)
    }

    /// Rewrites a word of the subgroup; errors if `w` does not fix coset 0.
    pub fn rewrite(&self, w: &Word) -> Result<Word, FpError> {
        match self.rewrite_from(0, w) {
            (word, 0) => Ok(word.free_reduce()),
            _ => Err(FpError::WordNotInSubgroup),
        }
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }
}

/// Output of [`reidemeister_schreier`].
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    pub rewriter: Rewriter,
    /// Schreier generator `i` as a word in the parent generators: `u_c · g · u_{cg}⁻¹`.
    pub generator_words: Vec<Word>,
}

/// Reidemeister–Schreier presentation of the stabilizer of coset 0.
///
/// The transversal comes from a breadth-first spanning tree of the coset
/// graph (columns scanned in order); every positive edge outside the tree is
/// a Schreier generator, and every relator rewritten from every coset is a
/// relator of the subgroup.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<SubgroupPresentation, FpError> {
    let n = table.coset_count();
    let gens = p.generator_count();
    if table.generator_count() != gens {
        return Err(FpError::IncompleteTable);
    }
    let mut rep: Vec<Option<Word>> = vec![None; n];
    rep[0] = Some(Word::identity());
    let mut tree = vec![false; n * gens];
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * gens {
            let l = Letter::from_column(col);
            let d = table.act(c, l);
            if rep[d].is_none() {
                let mut w = rep[c].clone().expect("visited");
                w.push(l);
                rep[d] = Some(w);
                let (from, g) = if l.is_inverse() { (d, l.generator()) } else { (c, l.generator()) };
                tree[from * gens + g] = true;
                queue.push_back(d);
            }
        }
    }
    let rep: Vec<Word> = rep.into_iter().collect::<Option<_>>().ok_or(FpError::IncompleteTable)?;
    let mut edge_gen = vec![None; n * gens];
    let mut generator_words = Vec::new();
    for c in 0..n {
        for g in 0..gens {
            if !tree[c * gens + g] {
                edge_gen[c * gens + g] = Some(generator_words.len() as u32);
                let d = table.act(c, Letter::gen(g));
                let mut w = rep[c].clone();
                w.push(Letter::gen(g));
                w.extend_from(&rep[d].inverse());
                generator_words.push(w.free_reduce());
            }
        }
    }
    let rewriter = Rewriter { table: table.clone(), edge_gen, generators: gens };
    let mut relators = Vec::with_capacity(n * p.relators().len());
    for c in 0..n {
        for r in p.relators() {
            let (w, end) = rewriter.rewrite_from(c, r);
            if end != c {
                return Err(FpError::IncompleteTable);
            }
            relators.push(w);
        }
    }
    let labels = (1..=generator_words.len()).map(|i| format!("h{i}")).collect();
    Ok(SubgroupPresentation { presentation: Presentation::new(labels, relators), rewriter, generator_words })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::coset::todd_coxeter;

    #[test]
    fn index_two_in_z4() {
        let p = Presentation::parse("gens: a\nrel: a^4").unwrap();
        let a2 = Word::power_of(0, 2);
        let t = todd_coxeter(&p, &[a2.clone()], 10).unwrap();
        assert_eq!(t.coset_count(), 2);
        let sub = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sub.presentation.abelian_invariants().to_string(), "Z2");
        let r = sub.rewriter.rewrite(&a2).unwrap();
        assert_eq!(r.len(), 1);
        assert!(matches!(sub.rewriter.rewrite(&Word::power_of(0, 1)), Err(FpError::WordNotInSubgroup)));
    }

    #[test]
    fn commutator_subgroup_of_free_group() {
        // Kernel of F2 → Z2 × Z2 is free of rank 5.
        let p = Presentation::parse("gens: a b").unwrap();
        let images = vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]];
        let t = CosetTable::from_action(&images, Vec::new()).unwrap();
        let sub = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sub.generator_words.len(), 5);
        assert_eq!(sub.presentation.abelian_invariants().free_rank, 5);
        // Each Schreier generator word fixes coset 0 and rewrites to itself.
        for (i, w) in sub.generator_words.iter().enumerate() {
            assert_eq!(t.trace(0, w), 0);
            assert_eq!(sub.rewriter.rewrite(w).unwrap(), Word::power_of(i, 1));
        }
    }
}
