//! Numerical invariants of the covers `C → P¹` and of the quotient surface.
//!
//! All arithmetic is exact. Functions are generic over the integer type of
//! the rationals; the pipeline uses [`crate::Rational`].

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("signature must have parts >= 2, got {0:?}")]
    BadSignature(Vec<u32>),
    #[error("theta vanishes for signature {0}")]
    ThetaZero(Signature),
    #[error("no integral genus for |G| = {group_order} and signature {signature}")]
    NonIntegralGenus { group_order: u64, signature: Signature },
    #[error("({n}, {a}) is not a cyclic quotient type")]
    BadType { n: u64, a: u64 },
    #[error("singular intersection matrix")]
    SingularSystem,
}

/// Branching data `(m1, …, mr)` of a Galois cover of the line, sorted.
///
/// Ordered first by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Signature {
    parts: Vec<u32>,
}

impl Signature {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, GeometryError> {
        if parts.iter().any(|&m| m < 2) {
            return Err(GeometryError::BadSignature(parts));
        }
        parts.sort_unstable();
        Ok(Signature { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Compact notation with exponents for repeats: `2^3,4`.
    pub fn compact(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == self.parts[i] {
                j += 1;
            }
            out.push(if j - i == 1 { self.parts[i].to_string() } else { format!("{}^{}", self.parts[i], j - i) });
            i = j;
        }
        out.join(",")
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.parts.len(), &self.parts).cmp(&(other.parts.len(), &other.parts))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Signature {
    type Err = GeometryError;

    /// Accepts `2,3,7` as well as the compact `2^3,4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::BadSignature(Vec::new());
        let mut parts = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (base, exp) = match item.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (item, 1),
            };
            let m = base.trim().parse::<u32>().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(m, exp));
        }
        Signature::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Signature {
    type Error = GeometryError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Signature::new(parts)
    }
}

impl From<Signature> for Vec<u32> {
    fn from(s: Signature) -> Self {
        s.parts
    }
}

fn int<T: ExactInt>(x: u64) -> T {
    T::from_u64(x).expect("small integer")
}

/// `Θ = −2 + Σ (1 − 1/m_i)`.
pub fn theta<T: ExactInt>(sig: &Signature) -> Ratio<T> {
    let two = Ratio::from_integer(int::<T>(2));
    sig.parts().iter().fold(-two, |acc, &m| acc + Ratio::one() - Ratio::new(T::one(), int(m as u64)))
}

/// `α = K² / (4Θ)`.
pub fn alpha<T: ExactInt>(sig: &Signature, k_squared: u32) -> Result<Ratio<T>, GeometryError> {
    let th = theta::<T>(sig);
    if th.is_zero() {
        return Err(GeometryError::ThetaZero(sig.clone()));
    }
    Ok(Ratio::from_integer(int(k_squared as u64)) / (th * Ratio::from_integer(int(4))))
}

/// Genus `g` of the cover with `2g − 2 = |G|·Θ`.
pub fn hurwitz_genus(group_order: u64, sig: &Signature) -> Result<u64, GeometryError> {
    let two_g_minus_two = theta::<i64>(sig) * Ratio::from_integer(group_order as i64);
    let err = || GeometryError::NonIntegralGenus { group_order, signature: sig.clone() };
    if !two_g_minus_two.is_integer() {
        return Err(err());
    }
    let v = two_g_minus_two.to_integer() + 2;
    if v < 0 || v.is_odd() {
        return Err(err());
    }
    Ok((v / 2) as u64)
}

/// `|G| = 8 α1 α2 / K²`.
pub fn group_order_for_pair<T: ExactInt>(
    t1: &Signature,
    t2: &Signature,
    k_squared: u32,
) -> Result<Ratio<T>, GeometryError> {
    let a1 = alpha::<T>(t1, k_squared)?;
    let a2 = alpha::<T>(t2, k_squared)?;
    Ok(a1 * a2 * Ratio::from_integer(int(8)) / Ratio::from_integer(int(k_squared as u64)))
}

/// `K² = 8 (g1 − 1)(g2 − 1) / |G|`.
pub fn k_squared<T: ExactInt>(g1: u64, g2: u64, group_order: u64) -> Ratio<T> {
    Ratio::new(int::<T>(8) * int(g1 - 1) * int(g2 - 1), int(group_order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData<T: Clone + Integer> {
    pub signature: Signature,
    pub group_order: u64,
    pub genus: u64,
    pub theta: Ratio<T>,
    pub alpha: Ratio<T>,
}

pub fn curve_data<T: ExactInt>(sig: &Signature, group_order: u64, k_squared: u32) -> Result<CurveData<T>, GeometryError> {
    Ok(CurveData {
        signature: sig.clone(),
        group_order,
        genus: hurwitz_genus(group_order, sig)?,
        theta: theta(sig),
        alpha: alpha(sig, k_squared)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants<T: Clone + Integer> {
    pub k_squared: Ratio<T>,
    pub node_count: u32,
    pub euler: Ratio<T>,
    pub chi: Ratio<T>,
}

impl<T: ExactInt> SurfaceInvariants<T> {
    /// Whether `χ(O_S) = 1`, as forced by `p_g = q = 0`.
    pub fn chi_is_one(&self) -> bool {
        self.chi.is_one()
    }
}

/// Euler number and `χ` of the minimal resolution when the only singularities are `t` nodes:
/// `e = K²/2 + 3t/2`, `χ = (K² + e)/12`.
pub fn euler_and_chi<T: ExactInt>(k_squared: Ratio<T>, t: u32) -> SurfaceInvariants<T> {
    let two = Ratio::from_integer(int::<T>(2));
    let euler = k_squared.clone() / two.clone() + Ratio::from_integer(int::<T>(3 * t as u64)) / two;
    let chi = (k_squared.clone() + euler.clone()) / Ratio::from_integer(int(12));
    SurfaceInvariants { k_squared, node_count: t, euler, chi }
}

/// Resolution data of a cyclic quotient singularity of type `(1/n)(1, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJData<T: Clone + Integer> {
    pub n: u64,
    pub a: u64,
    /// Self-intersections are `−b_i`.
    pub string: Vec<u64>,
    pub discrepancies: Vec<Ratio<T>>,
    pub index: u64,
}

impl<T: ExactInt> HJData<T> {
    pub fn len(&self) -> usize {
        self.string.len()
    }

    pub fn is_empty(&self) -> bool {
        self.string.is_empty()
    }
}

/// Continued fraction `n/a = b1 − 1/(b2 − 1/(…))` with all `b_i ≥ 2`.
pub fn hj_string(n: u64, a: u64) -> Result<Vec<u64>, GeometryError> {
    if a == 0 || a >= n || n.gcd(&a) != 1 {
        return Err(GeometryError::BadType { n, a });
    }
    let (mut num, mut den) = (n, a);
    let mut out = Vec::new();
    while den != 0 {
        let b = num.div_ceil(den);
        out.push(b);
        (num, den) = (den, b * den - num);
    }
    Ok(out)
}

/// Evaluates `b1 − 1/(b2 − …)`.
pub fn continued_fraction<T: ExactInt>(string: &[u64]) -> Ratio<T> {
    let mut acc: Option<Ratio<T>> = None;
    for &b in string.iter().rev() {
        let b = Ratio::from_integer(int::<T>(b));
        acc = Some(match acc {
            None => b,
            Some(x) => b - x.recip(),
        });
    }
    acc.unwrap_or_else(Ratio::zero)
}

/// Solves `(K + E_j)·E_j = −2` for `K = Σ a_i E_i` on the chain, and the index
/// `min {λ : λ a_i ∈ Z for all i}`.
pub fn discrepancies_and_index<T: ExactInt>(string: &[u64]) -> Result<(Vec<Ratio<T>>, u64), GeometryError> {
    let l = string.len();
    // M a = rhs with M the intersection matrix and rhs_j = K·E_j = b_j − 2.
    let mut m: Vec<Vec<Ratio<T>>> = vec![vec![Ratio::zero(); l + 1]; l];
    for j in 0..l {
        m[j][j] = -Ratio::from_integer(int::<T>(string[j]));
        if j > 0 {
            m[j][j - 1] = Ratio::one();
        }
        if j + 1 < l {
            m[j][j + 1] = Ratio::one();
        }
        m[j][l] = Ratio::from_integer(int::<T>(string[j])) - Ratio::from_integer(int::<T>(2));
    }
    for col in 0..l {
        let pivot = (col..l).find(|&r| !m[r][col].is_zero()).ok_or(GeometryError::SingularSystem)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = x.clone() / p.clone();
        }
        for r in 0..l {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=l {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - v;
                }
            }
        }
    }
    let a: Vec<Ratio<T>> = m.into_iter().map(|row| row[l].clone()).collect();
    let index = a.iter().fold(1u64, |acc, x| acc.lcm(&x.denom().abs().to_u64().expect("small denominator")));
    Ok((a, index))
}

pub fn hj_data<T: ExactInt>(n: u64, a: u64) -> Result<HJData<T>, GeometryError> {
    let string = hj_string(n, a)?;
    let (discrepancies, index) = discrepancies_and_index(&string)?;
    Ok(HJData { n, a, string, discrepancies, index })
}

/// `−F̃² = Σ (1 − 1/(n_p + 1))` over the singular points of type `A_{n_p}` on a fibre.
/// Integrality is necessary for the configuration to occur.
pub fn ftilde_square<T: ExactInt>(node_types: &[u64]) -> Ratio<T> {
    node_types
        .iter()
        .fold(Ratio::zero(), |acc, &n| acc + Ratio::one() - Ratio::new(T::one(), int(n + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Ratio<i64>;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn theta_and_alpha() {
        assert_eq!(theta::<i64>(&sig("2,3,7")), Q::new(1, 42));
        assert_eq!(theta::<i64>(&sig("2,2,2,4")), Q::new(1, 4));
        assert_eq!(theta::<i64>(&sig("2,2,2,2")), Q::zero());
        assert_eq!(alpha::<i64>(&sig("2,3,7"), 2).unwrap(), Q::from_integer(21));
        assert_eq!(alpha::<i64>(&sig("4,4,4"), 2).unwrap(), Q::from_integer(2));
        assert_eq!(alpha::<i64>(&sig("2,5,5"), 6).unwrap(), Q::from_integer(15));
        assert!(matches!(alpha::<i64>(&sig("2,2,2,2"), 2), Err(GeometryError::ThetaZero(_))));
    }

    #[test]
    fn genera_and_orders() {
        assert_eq!(hurwitz_genus(168, &sig("2,3,7")).unwrap(), 3);
        assert_eq!(hurwitz_genus(168, &sig("4,4,4")).unwrap(), 22);
        assert_eq!(hurwitz_genus(60, &sig("2,2,2,3")).unwrap(), 6);
        assert!(hurwitz_genus(10, &sig("2,3,7")).is_err());
        let ord = |a: &str, b: &str, k| group_order_for_pair::<i64>(&sig(a), &sig(b), k).unwrap();
        assert_eq!(ord("2,3,7", "4,4,4", 2), Q::from_integer(168));
        assert_eq!(ord("2,5,5", "3,3,4", 6), Q::from_integer(360));
        assert_eq!(ord("2,2,2,2,2", "2,2,2,2,2", 4), Q::from_integer(8));
        assert_eq!(k_squared::<i64>(3, 22, 168), Q::from_integer(2));
        assert_eq!(k_squared::<i64>(4, 11, 120), Q::from_integer(2));
        assert_eq!(k_squared::<i64>(2, 2, 8), Q::from_integer(1));
    }

    #[test]
    fn euler_numbers() {
        let s = euler_and_chi(Q::from_integer(2), 6);
        assert_eq!((s.euler, s.chi.clone()), (Q::from_integer(10), Q::one()));
        assert!(euler_and_chi(Q::from_integer(8), 0).chi_is_one());
        assert_eq!(euler_and_chi(Q::from_integer(4), 4).euler, Q::from_integer(8));
    }

    #[test]
    fn hirzebruch_jung() {
        assert_eq!(hj_string(2, 1).unwrap(), vec![2]);
        assert_eq!(hj_string(6, 5).unwrap(), vec![2; 5]);
        assert_eq!(hj_string(5, 2).unwrap(), vec![3, 2]);
        assert!(hj_string(4, 2).is_err());
        let (a, idx) = discrepancies_and_index::<i64>(&[2]).unwrap();
        assert_eq!((a, idx), (vec![Q::zero()], 1));
        let (a, idx) = discrepancies_and_index::<i64>(&[2, 2, 2]).unwrap();
        assert_eq!((a, idx), (vec![Q::zero(); 3], 1));
        let (a, idx) = discrepancies_and_index::<i64>(&[3]).unwrap();
        assert_eq!((a, idx), (vec![Q::new(-1, 3)], 3));
    }

    #[test]
    fn fibre_contributions() {
        assert_eq!(ftilde_square::<i64>(&[]), Q::zero());
        assert_eq!(ftilde_square::<i64>(&[1, 1]), Q::one());
        assert_eq!(ftilde_square::<i64>(&[1]), Q::new(1, 2));
    }

    #[test]
    fn signature_order_and_text() {
        assert!(sig("4,4,4") < sig("2,2,2,3"));
        assert!(sig("2,3,7") < sig("2,4,5"));
        assert_eq!(sig("2^3,4"), sig("2,2,2,4"));
        assert_eq!(sig("4,2,2,2").to_string(), "2,2,2,4");
        assert_eq!(sig("2,2,2,4").compact(), "2^3,4");
        assert!("1,2".parse::<Signature>().is_err());
    }

    proptest! {
        #[test]
        fn hj_round_trip(n in 2u64..=50, a in 1u64..50) {
            prop_assume!(a < n && n.gcd(&a) == 1);
            let s = hj_string(n, a).unwrap();
            prop_assert!(s.iter().all(|&b| b >= 2));
            prop_assert_eq!(continued_fraction::<i64>(&s), Q::new(n as i64, a as i64));
        }

        #[test]
        fn all_twos_are_crepant(l in 1usize..12) {
            let (a, idx) = discrepancies_and_index::<i64>(&vec![2; l]).unwrap();
            prop_assert!(a.iter().all(Zero::is_zero));
            prop_assert_eq!(idx, 1);
        }
    }
}
