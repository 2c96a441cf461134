use super::{PermError, PermGroup};
use crate::fp::{Letter, Word};

/// Shortest words for every element of the subgroup generated by `gens`.
///
/// Breadth-first search over the Cayley graph, trying letters in the order
/// `g1, g1⁻¹, g2, g2⁻¹, …`; the first word found for an element is kept.
/// Built once, queried many times.
#[derive(Clone, Debug)]
pub struct WordSearch {
    /// `(previous element, letter)` on the shortest path, indexed by element id.
    back: Vec<Option<(u32, Letter)>>,
}

impl WordSearch {
    pub fn new(group: &PermGroup, gens: &[usize]) -> Self {
        let n = group.order();
        let mut back = vec![None; n];
        let mut seen = vec![false; n];
        seen[PermGroup::IDENTITY] = true;
        let mut queue = vec![PermGroup::IDENTITY];
        let steps: Vec<(Letter, usize)> = gens
            .iter()
            .enumerate()
            .flat_map(|(i, &g)| [(Letter::gen(i), g), (Letter::inv(i), group.inv(g))])
            .collect();
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &(letter, s) in &steps {
                let f = group.mul(e, s);
                if !seen[f] {
                    seen[f] = true;
                    back[f] = Some((e as u32, letter));
                    queue.push(f);
                }
            }
        }
        WordSearch { back }
    }

    pub fn word(&self, element: usize) -> Result<Word, PermError> {
        let mut letters = Vec::new();
        let mut e = element;
        while e != PermGroup::IDENTITY {
            let (prev, letter) = self.back[e].ok_or(PermError::NotInSubgroup)?;
            letters.push(letter);
            e = prev as usize;
        }
        letters.reverse();
        Ok(Word::from_letters(letters))
    }
}

/// A shortest word in `gens` (and inverses) evaluating to `g`, ties broken by generator index.
pub fn express_as_word(group: &PermGroup, gens: &[usize], g: usize) -> Result<Word, PermError> {
    WordSearch::new(group, gens).word(g)
}

/// Evaluates a word over element ids, reading left to right.
pub fn evaluate(group: &PermGroup, gens: &[usize], word: &Word) -> usize {
    word.letters().iter().fold(PermGroup::IDENTITY, |acc, l| {
        let g = gens[l.generator()];
        group.mul(acc, if l.is_inverse() { group.inv(g) } else { g })
    })
}

#[cfg(test)]
mod tests {
    use super::super::Permutation;
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        let gens = gens.iter().map(|g| Permutation::parse_cycles(g, degree).unwrap()).collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    fn id(g: &PermGroup, s: &str) -> usize {
        g.id_of(&Permutation::parse_cycles(s, g.degree()).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        let gens = s3.generator_ids();
        assert!(express_as_word(&s3, &gens, 0).unwrap().is_empty());
        assert_eq!(express_as_word(&s3, &gens, id(&s3, "(1,2,3)")).unwrap().to_string(), "g2");
    }

    #[test]
    fn every_element_round_trips() {
        let psl = group(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"]);
        let gens = vec![id(&psl, "(1,6,3,2)(4,7)"), id(&psl, "(1,5,2,4)(3,6)"), id(&psl, "(1,7,4,3)(2,5)")];
        let search = WordSearch::new(&psl, &gens);
        for g in 0..psl.order() {
            let w = search.word(g).unwrap();
            assert_eq!(evaluate(&psl, &gens, &w), g);
        }
        let target = id(&psl, "(1,3)(2,6)");
        assert_eq!(evaluate(&psl, &gens, &express_as_word(&psl, &gens, target).unwrap()), target);
    }

    #[test]
    fn outside_subgroup() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let sub = vec![id(&s4, "(1,2)")];
        assert_eq!(express_as_word(&s4, &sub, id(&s4, "(1,3)")), Err(PermError::NotInSubgroup));
    }
}
