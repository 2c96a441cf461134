use std::fmt;
use std::ops::Mul;

/// A generator or its inverse. Stored as `±(index + 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let v = generator as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn gen(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn inv(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i64 {
        self.0.signum() as i64
    }

    /// Column index in a coset table: `2g` for the generator, `2g + 1` for its inverse.
    #[inline]
    pub fn column(self) -> usize {
        2 * self.generator() + self.is_inverse() as usize
    }

    pub fn from_column(column: usize) -> Letter {
        Letter::new(column / 2, column % 2 == 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.generator() + 1, if self.is_inverse() { "^-1" } else { "" })
    }
}

/// A word in the generators of a free group; not reduced unless asked.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// `g^exp` for a single generator.
    pub fn power_of(generator: usize, exp: i64) -> Self {
        let l = Letter::new(generator, exp < 0);
        Word { letters: vec![l; exp.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `w⁻¹ · self · w`
    pub fn conjugate_by(&self, w: &Word) -> Word {
        &(&w.inverse() * self) * w
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        let mut w = a.inverse();
        w.extend_from(&b.inverse());
        w.extend_from(a);
        w.extend_from(b);
        w
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free reduction followed by cancelling inverse pairs across the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let n = w.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.letters[k] == w.letters[n - 1 - k].inverse() {
            k += 1;
        }
        Word { letters: w.letters[k..n - k].to_vec() }
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters.iter().filter(|l| l.generator() == generator).map(|l| l.exponent()).sum()
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.letters.iter().filter(|l| l.generator() == generator).count()
    }

    /// Substitutes a word for every generator; `images[g]` replaces `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &l in &self.letters {
            let img = &images[l.generator()];
            if l.is_inverse() {
                out.extend(img.letters.iter().rev().map(|x| x.inverse()));
            } else {
                out.extend_from_slice(&img.letters);
            }
        }
        Word { letters: out }
    }

    /// Renders with the given generator labels, powers collapsed: `a^2*b^-1`; `1` if empty.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.exponent();
            let name = &labels[l.generator()];
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            i = j;
        }
        parts.join("*")
    }
}

/// Free reduction of `w`.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { letters }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.letters.iter().map(|l| l.generator() + 1).max().unwrap_or(0);
        f.write_str(&self.display_with(&default_labels(n)))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(spec: &[i32]) -> Word {
        spec.iter().map(|&x| Letter::new(x.unsigned_abs() as usize - 1, x < 0)).collect()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w(&[1, -1]).free_reduce(), Word::identity());
        assert_eq!(Word::identity().free_reduce(), Word::identity());
        assert_eq!(w(&[1, 2, -2, 1]).free_reduce(), w(&[1, 1]));
        assert_eq!(w(&[-2, 1, 3, 2]).cyclic_reduce(), w(&[1, 3]));
        assert_eq!(w(&[-2, 1, -1, 2]).cyclic_reduce(), Word::identity());
    }

    #[test]
    fn display() {
        assert_eq!(w(&[1, 1, -2, 3]).to_string(), "g1^2*g2^-1*g3");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(Word::power_of(1, -3).to_string(), "g2^-3");
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..24)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent(x in word_strategy()) {
            let r = x.free_reduce();
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inverse()));
            for g in 0..3 {
                prop_assert_eq!(r.exponent_sum(g), x.exponent_sum(g));
            }
        }

        #[test]
        fn inverse_cancels(x in word_strategy()) {
            prop_assert!((&x * &x.inverse()).free_reduce().is_empty());
        }
    }
}
