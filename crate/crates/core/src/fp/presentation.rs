use std::fmt;

use num_bigint::BigInt;

use super::snf::{sparse_invariant_factors, AbelianInvariants};
use super::word::{default_labels, Letter, Word};
use super::FpError;
use crate::geometry::Signature;

/// A finitely presented group `⟨labels | relators⟩`.
///
/// Relators are kept freely and cyclically reduced; empty relators are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    labels: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(labels: Vec<String>, relators: Vec<Word>) -> Self {
        let mut p = Presentation { labels, relators: Vec::new() };
        p.add_relators(relators);
        p
    }

    /// Generators labelled `g1, g2, …`.
    pub fn with_generators(n: usize, relators: Vec<Word>) -> Self {
        Presentation::new(default_labels(n), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn add_relators(&mut self, relators: impl IntoIterator<Item = Word>) {
        for r in relators {
            debug_assert!(r.letters().iter().all(|l| l.generator() < self.labels.len()));
            let r = r.cyclic_reduce();
            if !r.is_empty() {
                self.relators.push(r);
            }
        }
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        abelian_invariants(self)
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display_with(&self.labels)
    }

    /// Parses the line format written by [`Display`](fmt::Display):
    /// a `gens:` line followed by `rel:` lines. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, FpError> {
        let mut labels: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| FpError::Parse { line: n + 1, message: msg.to_string() };
            if let Some(rest) = line.strip_prefix("gens:") {
                if labels.is_some() {
                    return Err(err("duplicate gens line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (i, name) in names.iter().enumerate() {
                    if !is_identifier(name) || names[..i].contains(name) {
                        return Err(err(&format!("bad generator name `{name}`")));
                    }
                }
                labels = Some(names);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let names = labels.as_ref().ok_or_else(|| err("rel before gens"))?;
                relators.push(parse_word(rest, names).map_err(|m| err(&m))?);
            } else {
                return Err(err("expected `gens:` or `rel:`"));
            }
        }
        let labels = labels.ok_or(FpError::Parse { line: 0, message: "missing gens line".into() })?;
        Ok(Presentation::new(labels, relators))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `a^2*b^-1*c` (or blank-separated factors) over the given labels; `1` is the empty word.
pub fn parse_word(text: &str, labels: &[String]) -> Result<Word, String> {
    let mut word = Word::identity();
    for token in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        if token == "1" {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| format!("bad exponent in `{token}`"))?),
            None => (token, 1),
        };
        let g = labels.iter().position(|l| l == name).ok_or_else(|| format!("unknown generator `{name}`"))?;
        word.extend_from(&Word::power_of(g, exp));
    }
    Ok(word)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.labels.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.display_with(&self.labels))?;
        }
        Ok(())
    }
}

/// `⟨c1,…,cr | c1^m1, …, cr^mr, c1⋯cr⟩`.
pub fn polygonal_presentation(sig: &Signature) -> Presentation {
    polygonal_with_prefix(sig, "c")
}

pub(crate) fn polygonal_with_prefix(sig: &Signature, prefix: &str) -> Presentation {
    let r = sig.len();
    let labels = (1..=r).map(|i| format!("{prefix}{i}")).collect();
    let mut relators: Vec<Word> = sig.parts().iter().enumerate().map(|(i, &m)| Word::power_of(i, m as i64)).collect();
    relators.push((0..r).map(Letter::gen).collect());
    Presentation::new(labels, relators)
}

/// Presentation of `P1 × P2`: generators of `P1` then of `P2`, both relator
/// sets, and a commutator for every pair of generators from different factors.
pub fn direct_product_presentation(p1: &Presentation, p2: &Presentation) -> Presentation {
    let n1 = p1.generator_count();
    let shift: Vec<Word> = (0..p2.generator_count()).map(|j| Word::power_of(n1 + j, 1)).collect();
    let mut labels = p1.labels.clone();
    labels.extend(p2.labels.iter().cloned());
    let mut relators = p1.relators.clone();
    relators.extend(p2.relators.iter().map(|r| r.substitute(&shift)));
    for i in 0..n1 {
        for j in 0..p2.generator_count() {
            relators.push(Word::commutator(&Word::power_of(i, 1), &shift[j]));
        }
    }
    Presentation::new(labels, relators)
}

/// Abelian invariants from the Smith normal form of the exponent-sum matrix.
pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let n = p.generator_count();
    let rows = p
        .relators
        .iter()
        .map(|r| {
            let mut sums = std::collections::BTreeMap::new();
            for l in r.letters() {
                *sums.entry(l.generator()).or_insert(0i64) += l.exponent();
            }
            sums.into_iter().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    let factors: Vec<BigInt> = sparse_invariant_factors(n, rows);
    AbelianInvariants::from_factors(n, &factors)
}
