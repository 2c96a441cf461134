//! The bundled catalog.
//!
//! The groups of the classification come first, with the generators used in
//! the published family descriptions. Generated families follow: every
//! abelian group, dihedral and dicyclic groups, small affine and Frobenius
//! groups, symmetric and alternating groups up to degree 7, a few linear
//! groups, and direct products of a handful of small non-abelian groups with
//! abelian groups and with each other. Only orders that the sweep can ask
//! for (plus everything up to 32) are kept.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_integer::Integer;

use super::{excluded_by_hand, Catalog, CatalogEntry};
use crate::enumerate::{integral_alpha, list_of_types};
use crate::perm::Permutation;

/// `(label, degree, generators, order)` of the groups in the classification.
const CLASSIFICATION_GROUPS: &[(&str, usize, &[&str], u64)] = &[
    ("PSL(2,7)", 7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"], 168),
    ("S5", 5, &["(1,2)", "(1,2,3,4,5)"], 120),
    ("A5", 5, &["(1,2,3)", "(3,4,5)"], 60),
    ("S4xZ2", 6, &["(1,2)", "(1,3)", "(1,4)", "(5,6)"], 48),
    ("S3xS3", 6, &["(1,2)", "(1,3)", "(4,5)", "(4,6)"], 36),
    ("Z4^2", 8, &["(1,2,3,4)", "(5,6,7,8)"], 16),
    ("D4xZ2", 6, &["(1,2,3,4)", "(1,4)(2,3)", "(5,6)"], 16),
    ("Z2^4:Z2", 8, &["(1,2)(3,4)", "(1,4)(2,3)", "(5,6)(7,8)", "(5,8)(6,7)", "(1,3)(5,7)"], 32),
    ("S4", 4, &["(1,2)", "(1,2,3,4)"], 24),
    ("S3xZ3", 6, &["(1,2)", "(1,3)", "(4,5,6)"], 18),
    ("Z3^2:Z2", 6, &["(1,2,3)", "(4,5,6)", "(1,2)(4,5)"], 18),
    ("Z4xZ2", 6, &["(1,2,3,4)", "(5,6)"], 8),
    ("Z2^3", 6, &["(1,2)", "(3,4)", "(5,6)"], 8),
    ("A6", 6, &["(1,2,3,4,5)", "(4,5,6)"], 360),
    ("S5xZ2", 7, &["(1,2)", "(1,3)", "(1,4)", "(1,5)", "(6,7)"], 240),
];

/// The groups of the classification with their published generators.
pub fn classification_groups() -> Vec<CatalogEntry> {
    CLASSIFICATION_GROUPS
        .iter()
        .map(|&(label, degree, gens, order)| CatalogEntry::from_cycles(label, degree, gens, order))
        .collect()
}

/// Orders the sweep can ask for, plus all orders up to 32 for quotient searches.
pub fn builtin_order_set() -> BTreeSet<u64> {
    let mut set: BTreeSet<u64> = (1..=32).collect();
    for k2 in [2u32, 4, 6] {
        let types = list_of_types(k2);
        for (i, t1) in types.iter().enumerate() {
            for t2 in &types[i..] {
                let (a1, a2) = (integral_alpha(t1, k2).unwrap(), integral_alpha(t2, k2).unwrap());
                if (8 * a1 * a2) % k2 as u64 == 0 {
                    let n = 8 * a1 * a2 / k2 as u64;
                    if !excluded_by_hand(n) {
                        set.insert(n);
                    }
                }
            }
        }
    }
    set
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Orders of `set` for which the generated families provably contain every
/// group: all orders up to 15, orders with only the cyclic group
/// (`gcd(n, φ(n)) = 1`), squares of primes, and twice a prime.
pub fn certified_orders(set: &BTreeSet<u64>) -> BTreeSet<u64> {
    set.iter()
        .copied()
        .filter(|&n| {
            n <= 15
                || n.gcd(&totient(n)) == 1
                || (is_prime(n.isqrt()) && n.isqrt() * n.isqrt() == n)
                || (n % 2 == 0 && is_prime(n / 2))
        })
        .collect()
}

/// The bundled catalog; built once per process.
pub fn builtin_catalog() -> Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(build).clone()
}

fn build() -> Catalog {
    let set = builtin_order_set();
    let wanted = |n: u64| set.contains(&n) || n == 2520;
    let mut catalog = Catalog::new();
    let add = |catalog: &mut Catalog, e: CatalogEntry| {
        if wanted(e.claimed_order.unwrap()) && catalog.get(&e.label).is_none() {
            catalog.push_trusted(e);
        }
    };
    for &(label, degree, gens, order) in CLASSIFICATION_GROUPS {
        add(&mut catalog, CatalogEntry::from_cycles(label, degree, gens, order));
    }
    let max = *set.iter().max().unwrap();
    for n in 1..=max {
        if !set.contains(&n) {
            continue;
        }
        for inv in abelian_invariants_of_order(n) {
            add(&mut catalog, abelian(&inv));
        }
    }
    let mut atoms = Vec::new();
    // D3 is S3, added below.
    for n in (4..=max / 2).filter(|&n| wanted(2 * n)) {
        add(&mut catalog, dihedral(n));
    }
    for n in (2..=max / 4).filter(|&n| wanted(4 * n)) {
        add(&mut catalog, dicyclic(n));
    }
    for p in (5..=max).filter(|&p| is_prime(p) && p * (p - 1) <= max) {
        for q in (3..=p - 1).filter(|&q| (p - 1) % q == 0 && wanted(p * q)) {
            add(&mut catalog, affine(p, q));
        }
    }
    for n in (3..=max / 2).filter(|&n| n % 2 == 1 && wanted(2 * n)) {
        let invs: Vec<Vec<u64>> = abelian_invariants_of_order(n).into_iter().filter(|v| v.len() > 1).collect();
        for inv in invs {
            add(&mut catalog, generalized_dihedral(&inv));
        }
    }
    for n in 3..=6 {
        add(&mut catalog, symmetric(n));
    }
    for n in 4..=7 {
        add(&mut catalog, alternating(n));
    }
    for p in [11u64, 13] {
        add(&mut catalog, psl2_prime(p, false));
    }
    add(&mut catalog, psl2_prime(7, true));
    add(&mut catalog, psl28());
    add(&mut catalog, linear_on_vectors("SL(2,3)", 3, true));
    add(&mut catalog, linear_on_vectors("GL(2,3)", 3, false));
    add(&mut catalog, linear_on_vectors("SL(2,5)", 5, true));

    for label in [
        "S3", "D4", "Q8", "D5", "A4", "Dic3", "Z7:Z3", "AGL(1,5)", "S4", "SL(2,3)", "GL(2,3)", "A5", "SL(2,5)", "S5",
        "PSL(2,7)", "Z3^2:Z2", "A6",
    ] {
        if let Some(e) = catalog.get(label) {
            atoms.push(e.clone());
        }
    }
    // S3 × Z2 and D5 × Z2 are dihedral.
    let dihedral_twins = ["S3xZ2", "D5xZ2"];
    for a in &atoms {
        let m = a.claimed_order.unwrap();
        for n in 2..=max / m {
            if !set.contains(&(m * n)) {
                continue;
            }
            for inv in abelian_invariants_of_order(n) {
                let e = product(a, &abelian(&inv));
                if !dihedral_twins.contains(&e.label.as_str()) {
                    add(&mut catalog, e);
                }
            }
        }
    }
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i..] {
            if wanted(a.claimed_order.unwrap() * b.claimed_order.unwrap()) {
                add(&mut catalog, product(a, b));
            }
        }
    }
    for n in certified_orders(&set) {
        catalog.certify_complete(n);
    }
    catalog
}

/// Invariant factors `d1 ≥ d2 ≥ …` with `d_{i+1} | d_i`, one list per abelian group of order `n`.
pub(crate) fn abelian_invariants_of_order(n: u64) -> Vec<Vec<u64>> {
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for base in &out {
            for part in partitions(e) {
                let len = base.len().max(part.len());
                let v: Vec<u64> = (0..len)
                    .map(|i| base.get(i).copied().unwrap_or(1) * p.pow(part.get(i).copied().unwrap_or(0)))
                    .collect();
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Partitions of `n` as nonincreasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `Z4^2`, `Z4xZ2`, `Z12`; the trivial group is `Z1`.
pub(crate) fn abelian_label(inv: &[u64]) -> String {
    if inv.is_empty() {
        return "Z1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < inv.len() {
        let j = (i..inv.len()).find(|&j| inv[j] != inv[i]).unwrap_or(inv.len());
        parts.push(if j - i == 1 { format!("Z{}", inv[i]) } else { format!("Z{}^{}", inv[i], j - i) });
        i = j;
    }
    parts.join("x")
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("constructed permutation")
}

fn cycle_on(degree: usize, start: usize, len: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    for k in 0..len {
        images[start + k] = start + (k + 1) % len;
    }
    perm(images)
}

fn abelian(inv: &[u64]) -> CatalogEntry {
    let degree = inv.iter().sum::<u64>().max(1) as usize;
    let mut gens = Vec::new();
    let mut start = 0;
    for &d in inv {
        gens.push(cycle_on(degree, start, d as usize));
        start += d as usize;
    }
    CatalogEntry::new(abelian_label(inv), degree, gens, inv.iter().product())
}

fn dihedral(n: u64) -> CatalogEntry {
    let d = n as usize;
    let reflection = perm((0..d).map(|i| (d - i) % d).collect());
    CatalogEntry::new(format!("D{n}"), d, vec![cycle_on(d, 0, d), reflection], 2 * n)
}

/// `⟨a, x | a^{2n}, x² = a^n, x⁻¹ a x = a⁻¹⟩` in its regular action on
/// `a^k x^e ↦ k + 2n e`.
fn dicyclic(n: u64) -> CatalogEntry {
    let m = 2 * n as usize;
    let mut a = vec![0; 2 * m];
    let mut x = vec![0; 2 * m];
    for k in 0..m {
        a[k] = (k + 1) % m;
        a[m + k] = m + (k + m - 1) % m;
        x[k] = m + k;
        x[m + k] = (k + n as usize) % m;
    }
    let label = if n == 2 { "Q8".to_string() } else { format!("Dic{n}") };
    CatalogEntry::new(label, 2 * m, vec![perm(a), perm(x)], 4 * n)
}

/// `x ↦ x + 1` and `x ↦ r x` on `Z/p`, with `r` of order `q`.
fn affine(p: u64, q: u64) -> CatalogEntry {
    let order_mod = |r: u64| (1..).find(|&k| pow_mod(r, k, p) == 1).unwrap();
    let r = (2..p).find(|&r| order_mod(r) == q).expect("Z/p* is cyclic");
    let d = p as usize;
    let shift = cycle_on(d, 0, d);
    let scale = perm((0..p).map(|x| (x * r % p) as usize).collect());
    let label = if q == p - 1 { format!("AGL(1,{p})") } else { format!("Z{p}:Z{q}") };
    CatalogEntry::new(label, d, vec![shift, scale], p * q)
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % m)
}

/// `A ⋊ Z2` with the generator acting by inversion, on the points of `A`.
fn generalized_dihedral(inv: &[u64]) -> CatalogEntry {
    let n: u64 = inv.iter().product();
    let d = n as usize;
    let digits = |mut x: usize| -> Vec<usize> {
        inv.iter()
            .map(|&m| {
                let r = x % m as usize;
                x /= m as usize;
                r
            })
            .collect()
    };
    let number = |v: &[usize]| -> usize { v.iter().zip(inv).rev().fold(0, |acc, (&r, &m)| acc * m as usize + r) };
    let mut gens = Vec::new();
    for (i, &m) in inv.iter().enumerate() {
        gens.push(perm(
            (0..d)
                .map(|x| {
                    let mut v = digits(x);
                    v[i] = (v[i] + 1) % m as usize;
                    number(&v)
                })
                .collect(),
        ));
    }
    gens.push(perm(
        (0..d)
            .map(|x| {
                let v: Vec<usize> = digits(x).iter().zip(inv).map(|(&r, &m)| (m as usize - r) % m as usize).collect();
                number(&v)
            })
            .collect(),
    ));
    CatalogEntry::new(format!("{}:Z2", abelian_label(inv)), d, gens, 2 * n)
}

fn symmetric(n: usize) -> CatalogEntry {
    let order = (1..=n as u64).product();
    CatalogEntry::new(format!("S{n}"), n, vec![cycle_on(n, 0, 2), cycle_on(n, 0, n)], order)
}

fn alternating(n: usize) -> CatalogEntry {
    let order = (1..=n as u64).product::<u64>() / 2;
    let long = if n % 2 == 1 { cycle_on(n, 0, n) } else { cycle_on(n, 1, n - 1) };
    CatalogEntry::new(format!("A{n}"), n, vec![cycle_on(n, 0, 3), long], order)
}

/// `PSL(2, p)` on the projective line, points `0..p` with `p` standing for
/// infinity; with `pgl` the non-square scaling is added.
fn psl2_prime(p: u64, pgl: bool) -> CatalogEntry {
    let d = p as usize + 1;
    let inf = p as usize;
    let inverse = |x: u64| pow_mod(x, p - 2, p);
    let shift = perm((0..d).map(|x| if x == inf { inf } else { (x + 1) % p as usize }).collect());
    let invert = perm(
        (0..d)
            .map(|x| match x {
                _ if x == inf => 0,
                0 => inf,
                _ => ((p - inverse(x as u64)) % p) as usize,
            })
            .collect(),
    );
    let mut gens = vec![shift, invert];
    let order = p * (p * p - 1) / 2;
    if pgl {
        let r = (2..p).find(|&r| pow_mod(r, (p - 1) / 2, p) != 1).expect("a non-square exists");
        gens.push(perm((0..d).map(|x| if x == inf { inf } else { (x as u64 * r % p) as usize }).collect()));
        return CatalogEntry::new(format!("PGL(2,{p})"), d, gens, 2 * order);
    }
    CatalogEntry::new(format!("PSL(2,{p})"), d, gens, order)
}

/// `PSL(2,8)` on the projective line over `F8 = F2[t]/(t³ + t + 1)`.
fn psl28() -> CatalogEntry {
    fn mul(a: usize, b: usize) -> usize {
        let mut r = 0;
        for i in 0..3 {
            if b >> i & 1 == 1 {
                r ^= a << i;
            }
        }
        for i in (3..5).rev() {
            if r >> i & 1 == 1 {
                r ^= 0b1011 << (i - 3);
            }
        }
        r
    }
    let inv = |x: usize| (1..8).find(|&y| mul(x, y) == 1).unwrap();
    let inf = 8;
    let shift = perm((0..9).map(|x| if x == inf { inf } else { x ^ 1 }).collect());
    let invert = perm((0..9).map(|x| if x == inf { 0 } else if x == 0 { inf } else { inv(x) }).collect());
    let scale = perm((0..9).map(|x| if x == inf { inf } else { mul(x, 2) }).collect());
    CatalogEntry::new("PSL(2,8)", 9, vec![shift, invert, scale], 504)
}

/// `SL(2, p)` or `GL(2, p)` acting on the nonzero vectors of `F_p²`.
fn linear_on_vectors(label: &str, p: u64, special: bool) -> CatalogEntry {
    let p = p as usize;
    let vectors: Vec<(usize, usize)> = (0..p * p).map(|i| (i % p, i / p)).filter(|&v| v != (0, 0)).collect();
    let index = |v: (usize, usize)| vectors.iter().position(|&w| w == v).unwrap();
    let act = |m: [usize; 4]| {
        perm(vectors.iter().map(|&(x, y)| index(((m[0] * x + m[1] * y) % p, (m[2] * x + m[3] * y) % p))).collect())
    };
    let mut gens = vec![act([1, 1, 0, 1]), act([0, p - 1, 1, 0])];
    let sl = (p * (p * p - 1)) as u64;
    let order = if special {
        sl
    } else {
        let r = (2..p).find(|&r| (1..p - 1).all(|k| pow_mod(r as u64, k as u64, p as u64) != 1)).unwrap_or(2);
        gens.push(act([r, 0, 0, 1]));
        sl * (p as u64 - 1)
    };
    CatalogEntry::new(label, vectors.len(), gens, order)
}

fn product(a: &CatalogEntry, b: &CatalogEntry) -> CatalogEntry {
    let degree = a.degree + b.degree;
    let gens = a
        .generators
        .iter()
        .map(|g| g.shifted(0, degree))
        .chain(b.generators.iter().map(|g| g.shifted(a.degree, degree)))
        .collect();
    let order = a.claimed_order.unwrap() * b.claimed_order.unwrap();
    CatalogEntry::new(format!("{}x{}", a.label, b.label), degree, gens, order)
}
