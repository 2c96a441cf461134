use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use super::PermError;

/// A permutation of `{0, .., degree - 1}` stored by its image list.
///
/// Products are read left to right: `a * b` applies `a` first and then `b`,
/// so `(a * b).apply(x) == b.apply(a.apply(x))`. Conjugation follows the same
/// convention, `x.conjugate_by(g) == g⁻¹ · x · g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u16::MAX as usize, "degree {degree} too large");
        Permutation { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(PermError::NotAPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u16).collect() })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(PermError::NotAPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses 1-based disjoint-cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    /// Whitespace is ignored and points may also be separated by blanks.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let bad = || PermError::Parse(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().filter(|&p| p >= 1).map(|p| p - 1))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles).map_err(|_| bad())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u16;
        }
        Permutation { images: images.into_boxed_slice() }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut result = Permutation::identity(self.degree());
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        result
    }

    /// `g⁻¹ · self · g`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Disjoint cycles of length at least two, each starting at its least point, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k > 0` with `self^k` the identity: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// The same permutation acting on `degree` points, fixing the added ones.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images: Vec<u16> = self.images.to_vec();
        images.extend(self.degree() as u16..degree as u16);
        Permutation { images: images.into_boxed_slice() }
    }

    /// The permutation moved onto points `offset..offset + self.degree()` of a `degree`-point set.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &p) in self.images.iter().enumerate() {
            images[offset + i] = offset as u16 + p;
        }
        Permutation { images: images.into_boxed_slice() }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// 1-based disjoint-cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}
