use std::collections::HashSet;

use super::presentation::Presentation;
use super::word::{Letter, Word};

/// Eliminations that grow the total relator length are allowed while it stays
/// below this multiple of the smallest total seen so far.
const EXPAND_FACTOR: usize = 3;
const EXPAND_FLOOR: usize = 256;

/// Quotient of `p` by the normal closure of `extra`, then [`simplify`]d.
pub fn quotient_and_simplify(p: &Presentation, extra: &[Word]) -> Presentation {
    let mut q = p.clone();
    q.add_relators(extra.iter().cloned());
    simplify(&q)
}

/// Bounded Tietze simplification.
///
/// Repeats until nothing changes: relators are cyclically reduced and
/// deduplicated up to rotation and inversion; a relator of length one kills
/// its generator and one of length two in distinct generators identifies them;
/// otherwise a generator occurring exactly once in some relator is solved for
/// and substituted everywhere, cheapest first, as long as the total relator
/// length stays within a fixed expansion budget. The result presents an
/// isomorphic group and depends only on the input.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut state = State::new(p);
    state.run();
    state.finish(p)
}

struct State {
    gens: usize,
    alive: Vec<bool>,
    relators: Vec<Vec<Letter>>,
}

impl State {
    fn new(p: &Presentation) -> Self {
        let mut s = State {
            gens: p.generator_count(),
            alive: vec![true; p.generator_count()],
            relators: p.relators().iter().map(|r| r.letters().to_vec()).collect(),
        };
        s.normalize();
        s
    }

    fn total(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// Cyclic reduction, removal of empty relators and of duplicates up to rotation and inversion.
    fn normalize(&mut self) {
        let mut seen = HashSet::new();
        let relators = std::mem::take(&mut self.relators);
        for r in relators {
            let r = Word::from_letters(r).cyclic_reduce();
            if r.is_empty() {
                continue;
            }
            let key = canonical(r.letters());
            if seen.insert(key) {
                self.relators.push(r.letters().to_vec());
            }
        }
        self.relators.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    }

    fn substitute(&mut self, images: &[Option<Word>]) {
        for r in &mut self.relators {
            if !r.iter().any(|l| images[l.generator()].is_some()) {
                continue;
            }
            let mut out = Vec::with_capacity(r.len());
            for &l in r.iter() {
                match &images[l.generator()] {
                    None => out.push(l),
                    Some(w) if l.is_inverse() => out.extend(w.letters().iter().rev().map(|x| x.inverse())),
                    Some(w) => out.extend_from_slice(w.letters()),
                }
            }
            *r = out;
        }
        self.normalize();
    }

    /// Kills generators with length-one relators and identifies generators
    /// related by length-two relators, all in one pass.
    fn short_relators(&mut self) -> bool {
        // image[g]: Some(empty) for a trivial generator, Some(single letter) for an identified one.
        let mut image: Vec<Option<Word>> = vec![None; self.gens];
        let mut changed = false;
        for r in &self.relators {
            if r.len() > 2 {
                break;
            }
            let resolved: Vec<Letter> = Word::from_letters(r.iter().flat_map(|&l| resolve(&image, l)).collect())
                .cyclic_reduce()
                .letters()
                .to_vec();
            match resolved.as_slice() {
                [l] => {
                    image[l.generator()] = Some(Word::identity());
                    changed = true;
                }
                [a, b] if a.generator() != b.generator() => {
                    // a·b = 1, so the later generator is the inverse of the earlier letter.
                    let (keep, drop) = if a.generator() < b.generator() { (*a, *b) } else { (*b, *a) };
                    let value = if drop.is_inverse() { vec![keep] } else { vec![keep.inverse()] };
                    image[drop.generator()] = Some(Word::from_letters(value));
                    changed = true;
                }
                _ => {}
            }
        }
        if changed {
            let full: Vec<Option<Word>> = (0..self.gens)
                .map(|g| image[g].as_ref().map(|_| resolve(&image, Letter::gen(g)).into_iter().collect()))
                .collect();
            for (g, v) in full.iter().enumerate() {
                if v.is_some() {
                    self.alive[g] = false;
                }
            }
            self.substitute(&full);
        }
        changed
    }

    /// Eliminates one generator occurring exactly once in some relator, if the budget allows.
    fn eliminate_one(&mut self, budget: usize) -> bool {
        let total = self.total();
        let mut occurrences = vec![0usize; self.gens];
        for r in &self.relators {
            for l in r {
                occurrences[l.generator()] += 1;
            }
        }
        let mut best: Option<(i64, usize, usize, usize)> = None;
        let mut once = vec![0usize; self.gens];
        for (ri, r) in self.relators.iter().enumerate() {
            for l in r {
                once[l.generator()] += 1;
            }
            for l in r {
                let g = l.generator();
                if once[g] == 1 {
                    let len = r.len() as i64;
                    let delta = (occurrences[g] as i64 - 1) * (len - 2) - len;
                    let key = (delta, r.len(), g, ri);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
            for l in r {
                once[l.generator()] = 0;
            }
        }
        let Some((delta, _, g, ri)) = best else { return false };
        if delta > 0 && total as i64 + delta > budget as i64 {
            return false;
        }
        let r = self.relators.remove(ri);
        let pos = r.iter().position(|l| l.generator() == g).expect("candidate generator occurs");
        // Rotate so that g comes first: g^e · v = 1.
        let rest: Vec<Letter> = r[pos + 1..].iter().chain(r[..pos].iter()).copied().collect();
        let v = Word::from_letters(rest);
        let value = if r[pos].is_inverse() { v } else { v.inverse() };
        let mut images = vec![None; self.gens];
        images[g] = Some(value);
        self.alive[g] = false;
        self.substitute(&images);
        true
    }

    fn run(&mut self) {
        let mut smallest = self.total();
        loop {
            while self.short_relators() {}
            smallest = smallest.min(self.total());
            let budget = (EXPAND_FACTOR * smallest).max(EXPAND_FLOOR);
            if !self.eliminate_one(budget) {
                break;
            }
        }
    }

    fn finish(self, original: &Presentation) -> Presentation {
        let survivors: Vec<usize> = (0..self.gens).filter(|&g| self.alive[g]).collect();
        let mut new_index = vec![usize::MAX; self.gens];
        for (i, &g) in survivors.iter().enumerate() {
            new_index[g] = i;
        }
        let labels = survivors.iter().map(|&g| original.labels()[g].clone()).collect();
        let relators = self
            .relators
            .iter()
            .map(|r| r.iter().map(|l| Letter::new(new_index[l.generator()], l.is_inverse())).collect())
            .collect();
        Presentation::new(labels, relators)
    }
}

/// Follows identifications until reaching a surviving generator.
fn resolve(image: &[Option<Word>], l: Letter) -> Vec<Letter> {
    match &image[l.generator()] {
        None => vec![l],
        Some(w) => {
            let mut out = Vec::new();
            let letters: Vec<Letter> = if l.is_inverse() {
                w.letters().iter().rev().map(|x| x.inverse()).collect()
            } else {
                w.letters().to_vec()
            };
            for x in letters {
                out.extend(resolve(image, x));
            }
            out
        }
    }
}

/// Least rotation of `w` or of its inverse; equal for relators that define the same normal closure trivially.
fn canonical(w: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverse()).collect();
    let a = rotate_min(w);
    let b = rotate_min(&inv);
    a.min(b)
}

fn rotate_min(s: &[Letter]) -> Vec<Letter> {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let start = i.min(j);
    s[start..].iter().chain(s[..start].iter()).copied().collect()
}
