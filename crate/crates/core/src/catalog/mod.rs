//! Group catalogs: the list of finite groups searched by the triple sweep,
//! with an explicit record of the orders for which the list is complete.

mod builtin;

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

pub use builtin::{builtin_catalog, builtin_order_set, certified_orders, classification_groups};

use crate::perm::{PermError, PermGroup, Permutation};

/// Orders the sweep never searches: the two orders settled by hand and
/// everything past 2000.
pub fn excluded_by_hand(n: u64) -> bool {
    n == 1024 || n == 1152 || n > 2000
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("group {label}: claimed order {claimed}, generators give {actual}")]
    OrderMismatch { label: String, claimed: u64, actual: u64 },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("group {label}: {source}")]
    Group { label: String, source: PermError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Completeness {
    /// Every isomorphism class of this order is in the catalog.
    Complete,
    /// The catalog has some groups of this order but makes no claim.
    BestEffort,
    /// The order is not searched at all.
    ExcludedByHand,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::Complete => "complete",
            Completeness::BestEffort => "best-effort",
            Completeness::ExcludedByHand => "excluded",
        }
    }
}

/// One group, given by permutation generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub claimed_order: Option<u64>,
}

impl CatalogEntry {
    pub fn new(label: impl Into<String>, degree: usize, generators: Vec<Permutation>, order: u64) -> Self {
        CatalogEntry { label: label.into(), degree, generators, claimed_order: Some(order) }
    }

    /// Builds from 1-based cycle strings.
    pub fn from_cycles(label: &str, degree: usize, gens: &[&str], order: u64) -> Self {
        let generators =
            gens.iter().map(|g| Permutation::parse_cycles(g, degree).expect("valid builtin generator")).collect();
        Self::new(label, degree, generators, order)
    }

    /// Closes the generators. Groups are rebuilt on demand rather than kept,
    /// since the largest ones carry multi-megabyte tables.
    pub fn build(&self) -> Result<Arc<PermGroup>, CatalogError> {
        let group = PermGroup::from_generators(self.degree, self.generators.clone())
            .map_err(|source| CatalogError::Group { label: self.label.clone(), source })?;
        Ok(Arc::new(group))
    }

    fn order(&self) -> Result<u64, CatalogError> {
        match self.claimed_order {
            Some(n) => Ok(n),
            None => Ok(self.build()?.order() as u64),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    /// Element orders of the entries, aligned with `entries`.
    orders: Vec<u64>,
    order_complete: BTreeSet<u64>,
    /// Set when some completeness claim came from a user file rather than the certified list.
    user_asserted: bool,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry after checking its label and, when claimed, its order.
    pub fn push(&mut self, entry: CatalogEntry) -> Result<(), CatalogError> {
        if self.entries.iter().any(|e| e.label == entry.label) {
            return Err(CatalogError::DuplicateLabel(entry.label));
        }
        let order = entry.order()?;
        self.orders.push(order);
        self.entries.push(entry);
        Ok(())
    }

    /// Adds an entry whose order is known by construction.
    pub(crate) fn push_trusted(&mut self, entry: CatalogEntry) {
        let order = entry.claimed_order.expect("trusted entries carry their order");
        self.orders.push(order);
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn order_complete(&self) -> &BTreeSet<u64> {
        &self.order_complete
    }

    pub fn user_asserted(&self) -> bool {
        self.user_asserted
    }

    pub fn assert_complete(&mut self, n: u64) {
        self.order_complete.insert(n);
        self.user_asserted = true;
    }

    pub(crate) fn certify_complete(&mut self, n: u64) {
        self.order_complete.insert(n);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges `other` into `self`; labels must stay unique.
    pub fn extend(&mut self, other: Catalog) -> Result<(), CatalogError> {
        for (e, n) in other.entries.into_iter().zip(other.orders) {
            if self.entries.iter().any(|x| x.label == e.label) {
                return Err(CatalogError::DuplicateLabel(e.label));
            }
            self.entries.push(e);
            self.orders.push(n);
        }
        self.order_complete.extend(other.order_complete);
        self.user_asserted |= other.user_asserted;
        Ok(())
    }

    /// Keeps only the entries accepted by `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&CatalogEntry) -> bool) {
        let mut orders = std::mem::take(&mut self.orders).into_iter();
        let mut kept_orders = Vec::new();
        self.entries.retain(|e| {
            let n = orders.next().expect("aligned");
            let k = keep(e);
            if k {
                kept_orders.push(n);
            }
            k
        });
        self.orders = kept_orders;
    }

    /// The entries of order `n` and how much the catalog vouches for them.
    pub fn groups_of_order(&self, n: u64) -> (Vec<&CatalogEntry>, Completeness) {
        let entries: Vec<&CatalogEntry> =
            self.entries.iter().zip(&self.orders).filter(|(_, &o)| o == n).map(|(e, _)| e).collect();
        let verdict = if excluded_by_hand(n) {
            Completeness::ExcludedByHand
        } else if self.order_complete.contains(&n) {
            Completeness::Complete
        } else {
            Completeness::BestEffort
        };
        (entries, verdict)
    }

    /// The line-oriented text format read by [`parse_catalog`].
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for n in &self.order_complete {
            let _ = writeln!(out, "order-complete {n}");
        }
        for e in &self.entries {
            let _ = writeln!(out, "group {}", e.label);
            let _ = writeln!(out, "degree {}", e.degree);
            if let Some(n) = e.claimed_order {
                let _ = writeln!(out, "order {n}");
            }
            for g in &e.generators {
                let _ = writeln!(out, "gen {g}");
            }
            out.push_str("end\n");
        }
        out
    }
}

/// Free function form of [`Catalog::groups_of_order`].
pub fn groups_of_order(catalog: &Catalog, n: u64) -> (Vec<&CatalogEntry>, Completeness) {
    catalog.groups_of_order(n)
}

/// Parses the catalog text format.
///
/// ```text
/// order-complete 7
/// group Z7
/// degree 7
/// order 7
/// gen (1,2,3,4,5,6,7)
/// end
/// ```
///
/// Blank lines and lines starting with `#` are skipped. Every group is
/// closed and its order checked against `order` when given. Completeness
/// lines are recorded as user assertions.
pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    struct Open {
        line: usize,
        label: String,
        degree: Option<usize>,
        order: Option<u64>,
        gens: Vec<(usize, String)>,
    }
    let err = |line: usize, message: String| CatalogError::Parse { line, message };
    let mut catalog = Catalog::new();
    let mut labels = HashSet::new();
    let mut open: Option<Open> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, value) = t.split_once(char::is_whitespace).map(|(k, v)| (k, v.trim())).unwrap_or((t, ""));
        let number = |v: &str| v.parse::<u64>().map_err(|_| err(line, format!("expected a number, found `{v}`")));
        match (key, open.as_mut()) {
            ("order-complete", None) => {
                let n = number(value)?;
                catalog.assert_complete(n);
            }
            ("group", None) => {
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(err(line, "group label must be a single word".into()));
                }
                if !labels.insert(value.to_string()) {
                    return Err(err(line, format!("duplicate label {value}")));
                }
                open = Some(Open { line, label: value.into(), degree: None, order: None, gens: Vec::new() });
            }
            ("degree", Some(o)) => o.degree = Some(number(value)? as usize),
            ("order", Some(o)) => o.order = Some(number(value)?),
            ("gen", Some(o)) => o.gens.push((line, value.to_string())),
            ("end", Some(_)) => {
                let o = open.take().expect("matched Some");
                let degree = o.degree.ok_or_else(|| err(o.line, format!("group {} has no degree", o.label)))?;
                let mut generators = Vec::new();
                for (gl, g) in &o.gens {
                    let p = Permutation::parse_cycles(g, degree).map_err(|e| err(*gl, e.to_string()))?;
                    generators.push(p);
                }
                let entry = CatalogEntry { label: o.label.clone(), degree, generators, claimed_order: None };
                let actual = entry.build()?.order() as u64;
                if let Some(claimed) = o.order {
                    if claimed != actual {
                        return Err(CatalogError::OrderMismatch { label: o.label, claimed, actual });
                    }
                }
                catalog.entries.push(CatalogEntry { claimed_order: o.order, ..entry });
                catalog.orders.push(actual);
            }
            (_, Some(_)) if key == "group" || key == "order-complete" => {
                return Err(err(line, format!("`{key}` inside an unterminated group")));
            }
            (_, None) if matches!(key, "degree" | "order" | "gen" | "end") => {
                return Err(err(line, format!("`{key}` outside a group")));
            }
            _ => return Err(err(line, format!("unknown keyword `{key}`"))),
        }
    }
    if let Some(o) = open {
        return Err(err(o.line, format!("group {} is missing `end`", o.label)));
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PSL: &str = "group PSL27\ndegree 7\ngen (3,4)(5,6)\ngen (1,2,3)(4,5,7)\nend\n";

    #[test]
    fn parse_examples() {
        let c = parse_catalog(PSL).unwrap();
        let (entries, verdict) = c.groups_of_order(168);
        assert_eq!(entries.len(), 1);
        assert_eq!(verdict, Completeness::BestEffort);
        assert!(parse_catalog("").unwrap().is_empty());
        let bad = "group PSL27\ndegree 7\norder 100\ngen (3,4)(5,6)\ngen (1,2,3)(4,5,7)\nend\n";
        assert!(matches!(parse_catalog(bad), Err(CatalogError::OrderMismatch { claimed: 100, actual: 168, .. })));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_catalog("group A\ndegree 3\ngen (1,2\nend\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 3, .. }));
        let e = parse_catalog("gen (1,2)\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 1, .. }));
        let e = parse_catalog("group A\ndegree 2\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 1, .. }));
        let e = parse_catalog("group A\ndegree 2\nend\ngroup A\ndegree 2\nend\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 4, .. }));
    }

    #[test]
    fn round_trip_and_assertions() {
        let text = format!("order-complete 7\n{PSL}group Z7\ndegree 7\norder 7\ngen (1,2,3,4,5,6,7)\nend\n");
        let c = parse_catalog(&text).unwrap();
        assert!(c.user_asserted());
        assert_eq!(c.serialize(), text);
        assert_eq!(parse_catalog(&c.serialize()).unwrap(), c);
        assert_eq!(c.groups_of_order(7).1, Completeness::Complete);
        assert_eq!(c.groups_of_order(1152).1, Completeness::ExcludedByHand);
        assert_eq!(c.groups_of_order(1024).1, Completeness::ExcludedByHand);
        assert_eq!(c.groups_of_order(2001).1, Completeness::ExcludedByHand);
    }
}
