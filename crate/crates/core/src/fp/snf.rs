use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{convert, ExactInt};

/// A dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInt> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, T)>> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| !self.get(r, c).is_zero()).map(|c| (c, self.get(r, c).clone())).collect())
            .collect()
    }
}

/// Sparse row: `(column, nonzero value)` sorted by column.
pub(crate) type SparseRow<T> = Vec<(usize, T)>;

/// `a - q·b`, or `None` on overflow.
fn sub_mul<T: ExactInt>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}

/// `row - f·pivot`, merged by column.
fn eliminate<T: ExactInt>(row: &[(usize, T)], f: &T, pivot: &[(usize, T)]) -> Option<SparseRow<T>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            let v = T::zero().checked_sub(&f.checked_mul(&pivot[j].1)?)?;
            out.push((pivot[j].0, v));
            j += 1;
        } else {
            let v = sub_mul(&row[i].1, f, &pivot[j].1)?;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Nonzero invariant factors of a sparse integer matrix with `cols` columns,
/// as a divisibility chain of positive values. `None` on overflow.
///
/// Unit pivots are cleared first with a Markowitz-style choice to limit fill-in;
/// whatever survives is diagonalized densely.
pub(crate) fn invariant_factors<T: ExactInt>(cols: usize, rows: Vec<SparseRow<T>>) -> Option<Vec<T>> {
    let mut rows: Vec<SparseRow<T>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c].push(i);
        }
    }
    let mut units = 0usize;
    loop {
        let mut col_count = vec![0usize; cols];
        for r in &rows {
            for &(c, _) in r {
                col_count[c] += 1;
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            for (k, (c, v)) in r.iter().enumerate() {
                if v.abs().is_one() {
                    let cost = (r.len() - 1) * (col_count[*c] - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, i, k));
                    }
                }
            }
            if best.is_some_and(|(b, _, _)| b == 0) {
                break;
            }
        }
        let Some((_, p, k)) = best else { break };
        let pivot = std::mem::take(&mut rows[p]);
        let (c, u) = pivot[k].clone();
        let targets = std::mem::take(&mut col_rows[c]);
        for i in targets {
            if i == p {
                continue;
            }
            let Ok(pos) = rows[i].binary_search_by_key(&c, |e| e.0) else { continue };
            // u is ±1, so a·u is the exact multiple of the pivot row to remove.
            let f = rows[i][pos].1.checked_mul(&u)?;
            let new = eliminate(&rows[i], &f, &pivot)?;
            for &(cc, _) in &new {
                if cc != c && rows[i].binary_search_by_key(&cc, |e| e.0).is_err() {
                    col_rows[cc].push(i);
                }
            }
            rows[i] = new;
        }
        units += 1;
    }
    let rest: Vec<SparseRow<T>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut used: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let mut dense = Matrix::zeros(rest.len(), used.len());
    for (i, r) in rest.iter().enumerate() {
        for (c, v) in r {
            dense.set(i, used.binary_search(c).expect("collected column"), v.clone());
        }
    }
    let mut factors = vec![T::one(); units];
    factors.extend(dense_diagonal(dense)?);
    Some(factors)
}

/// Diagonalizes by gcd steps and returns the nonzero diagonal as a divisibility chain.
fn dense_diagonal<T: ExactInt>(mut m: Matrix<T>) -> Option<Vec<T>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut pick: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let v = m.get(r, c);
                    if !v.is_zero() && pick.is_none_or(|(pr, pc)| v.abs() < m.get(pr, pc).abs()) {
                        pick = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pick else {
                return normalize_chain(diag);
            };
            swap_rows(&mut m, t, pr);
            swap_cols(&mut m, t, pc);
            let p = m.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..rows {
                let q = m.get(r, t).div_floor(&p);
                if !q.is_zero() {
                    for c in t..cols {
                        let v = sub_mul(m.get(r, c), &q, m.get(t, c))?;
                        m.set(r, c, v);
                    }
                }
                clean &= m.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                let q = m.get(t, c).div_floor(&p);
                if !q.is_zero() {
                    for r in t..rows {
                        let v = sub_mul(m.get(r, c), &q, m.get(r, t))?;
                        m.set(r, c, v);
                    }
                }
                clean &= m.get(t, c).is_zero();
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    normalize_chain(diag)
}

fn swap_rows<T: ExactInt>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a != b {
        for c in 0..m.cols {
            m.data.swap(a * m.cols + c, b * m.cols + c);
        }
    }
}

fn swap_cols<T: ExactInt>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a != b {
        for r in 0..m.rows {
            m.data.swap(r * m.cols + a, r * m.cols + b);
        }
    }
}

/// Turns any list of positive diagonal entries into the equivalent divisibility chain.
fn normalize_chain<T: ExactInt>(mut d: Vec<T>) -> Option<Vec<T>> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g.is_zero() {
                continue;
            }
            let l = (d[i].clone() / g.clone()).checked_mul(&d[j])?;
            d[i] = g;
            d[j] = l;
        }
    }
    Some(d)
}

/// Smith normal form diagonal of a matrix over `T`, `min(rows, cols)` entries
/// with zeros last. `None` if an intermediate value overflows `T`.
pub fn smith_diagonal<T: ExactInt>(m: &Matrix<T>) -> Option<Vec<T>> {
    let mut d = invariant_factors(m.cols, m.sparse_rows())?;
    d.resize(m.rows.min(m.cols), T::zero());
    Some(d)
}

/// Smith normal form diagonal: `d1 | d2 | …`, zeros last, `min(rows, cols)` entries.
///
/// Runs in `i64` when the input fits and redoes the computation with big
/// integers if any intermediate step overflows.
pub fn smith_normal_form(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let narrow: Option<Vec<i64>> = m.data.iter().map(|x| x.to_i64()).collect();
    if let Some(data) = narrow {
        let small = Matrix { rows: m.rows, cols: m.cols, data };
        if let Some(d) = smith_diagonal(&small) {
            return d.into_iter().map(BigInt::from).collect();
        }
    }
    smith_diagonal(m).expect("big integers do not overflow")
}

/// Invariant factors of a sparse relation matrix, with the same escalation as [`smith_normal_form`].
pub(crate) fn sparse_invariant_factors(cols: usize, rows: Vec<SparseRow<i64>>) -> Vec<BigInt> {
    if let Some(d) = invariant_factors(cols, rows.clone()) {
        return d.into_iter().map(BigInt::from).collect();
    }
    let big = rows.into_iter().map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()).collect();
    invariant_factors(cols, big).expect("big integers do not overflow")
}

/// `Z^free_rank ⊕ Z/d1 ⊕ Z/d2 ⊕ …` with `1 < d1 | d2 | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }

    /// From the nonzero invariant factors of a relation matrix on `generators` columns.
    pub fn from_factors(generators: usize, factors: &[BigInt]) -> Self {
        let nonzero: Vec<BigInt> = factors.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let free_rank = generators - nonzero.len();
        let torsion = normalize_chain(nonzero).expect("big integers do not overflow").into_iter().filter(|d| !d.is_one()).collect();
        AbelianInvariants { free_rank, torsion }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Whether `source` surjects onto `self`.
    ///
    /// A surjection onto the free part splits off, so this reduces to the
    /// torsion of `self` being a quotient (equivalently a subgroup) of the
    /// leftover free part plus the torsion of `source`. That is decided prime
    /// power by prime power, counting invariant factors divisible by each.
    pub fn is_quotient_of(&self, source: &AbelianInvariants) -> bool {
        if self.free_rank > source.free_rank {
            return false;
        }
        let spare_free = source.free_rank - self.free_rank;
        let mut prime_powers: Vec<BigInt> = Vec::new();
        for d in &self.torsion {
            let mut rest = d.clone();
            let mut p = BigInt::from(2);
            while rest > BigInt::one() {
                if (&rest % &p).is_zero() {
                    let mut q = BigInt::one();
                    while (&rest % &p).is_zero() {
                        rest /= &p;
                        q *= &p;
                        prime_powers.push(q.clone());
                    }
                }
                p += 1;
            }
        }
        prime_powers.sort();
        prime_powers.dedup();
        prime_powers.iter().all(|q| {
            let need = self.torsion.iter().filter(|d| (*d % q).is_zero()).count();
            let have = source.torsion.iter().filter(|d| (*d % q).is_zero()).count();
            need <= have + spare_free
        })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z{}", self.torsion[i]) } else { format!("Z{}^{}", self.torsion[i], j - i) });
            i = j;
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("x"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse abelian group `{0}`")]
pub struct ParseAbelianError(String);

/// Parses the [`Display`](fmt::Display) form, e.g. `Z^2xZ3`, `Z2^2xZ4`, `1`.
/// Factors need not form a divisibility chain; the result is normalized.
impl FromStr for AbelianInvariants {
    type Err = ParseAbelianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseAbelianError(s.to_string());
        let s = s.trim();
        if s == "1" || s == "0" {
            return Ok(AbelianInvariants::trivial());
        }
        let mut free = 0usize;
        let mut cyclic: Vec<BigInt> = Vec::new();
        for part in s.split('x') {
            let body = part.trim().strip_prefix('Z').ok_or_else(bad)?;
            let (base, exp) = match body.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            if base.is_empty() {
                free += exp;
            } else {
                let n: BigInt = base.parse().map_err(|_| bad())?;
                if n < BigInt::one() {
                    return Err(bad());
                }
                cyclic.extend(std::iter::repeat_n(n, exp));
            }
        }
        let rows: Vec<Vec<(usize, BigInt)>> = cyclic.iter().enumerate().map(|(i, n)| vec![(i, n.clone())]).collect();
        let factors = invariant_factors(cyclic.len(), rows).expect("big integers do not overflow");
        let mut inv = AbelianInvariants::from_factors(cyclic.len(), &factors);
        inv.free_rank += free;
        Ok(inv)
    }
}

/// Converts the entries of a matrix to another exact integer type, if they fit.
pub fn convert_matrix<S: ExactInt, T: ExactInt>(m: &Matrix<S>) -> Option<Matrix<T>> {
    Some(Matrix { rows: m.rows, cols: m.cols, data: m.data.iter().map(convert).collect::<Option<_>>()? })
}
