use crate::geometry::{alpha, Signature};
use crate::Rational;

/// Longest signature that can occur for `p_g = q = 0`.
pub const MAX_ARITY: usize = 7;

/// Largest admissible branching index: `3(10 − t)` with `t = 8 − K²`.
pub fn max_part(k_squared: u32) -> u32 {
    3 * (k_squared + 2)
}

/// Number of nodes `t = 8 − K²` on the quotient surface.
pub fn node_target(k_squared: u32) -> u32 {
    8 - k_squared
}

/// `α` as an integer, if the signature is admissible for `k_squared`.
pub fn integral_alpha(sig: &Signature, k_squared: u32) -> Option<u64> {
    let a = alpha::<i64>(sig, k_squared).ok()?;
    (a.is_integer() && *a.numer() > 0).then(|| *a.numer() as u64)
}

/// The three arithmetic conditions on a signature: `α` a positive integer,
/// every `m_i` divides `2α`, and at most `t/2` of them fail to divide `α`.
pub fn is_admissible(sig: &Signature, k_squared: u32) -> bool {
    let Some(a) = integral_alpha(sig, k_squared) else { return false };
    let parts = sig.parts();
    if parts.iter().any(|&m| (2 * a) % m as u64 != 0) {
        return false;
    }
    let not_dividing = parts.iter().filter(|&&m| a % m as u64 != 0).count() as u32;
    2 * not_dividing <= node_target(k_squared)
}

/// All admissible signatures for `k_squared ∈ {2, 4, 6}`, in signature order.
///
/// Nondecreasing sequences of length 3 to 7 with parts in `2..=3(K² + 2)`.
/// Since `α ≥ 1` forces `Θ ≤ K²/4` and `Θ` only grows as parts are added,
/// prefixes past that bound are cut.
pub fn list_of_types(k_squared: u32) -> Vec<Signature> {
    assert!(matches!(k_squared, 2 | 4 | 6), "K² must be 2, 4 or 6");
    let bound = Rational::new(k_squared as i64, 4);
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(MAX_ARITY);
    extend(&mut parts, Rational::from_integer(-2), &bound, k_squared, &mut out);
    out.sort();
    out
}

fn extend(parts: &mut Vec<u32>, th: Rational, bound: &Rational, k_squared: u32, out: &mut Vec<Signature>) {
    if parts.len() >= 3 && th > Rational::from_integer(0) {
        let sig = Signature::new(parts.clone()).expect("parts are at least 2");
        if is_admissible(&sig, k_squared) {
            out.push(sig);
        }
    }
    if parts.len() == MAX_ARITY {
        return;
    }
    let start = parts.last().copied().unwrap_or(2);
    for m in start..=max_part(k_squared) {
        let next = th + Rational::new(m as i64 - 1, m as i64);
        if next > *bound {
            break;
        }
        parts.push(m);
        extend(parts, next, bound, k_squared, out);
        parts.pop();
    }
}
