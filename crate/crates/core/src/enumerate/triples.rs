use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::sings::check_sings;
use super::spherical::{exists_spherical, systems_up_to_conjugation};
use super::types::{integral_alpha, list_of_types};
use crate::catalog::{Catalog, Completeness};
use crate::geometry::Signature;
use crate::perm::PermGroup;

/// A group together with two signatures it realizes, for a fixed `K²`.
#[derive(Clone)]
pub struct Triple {
    pub k_squared: u32,
    pub t1: Signature,
    pub t2: Signature,
    pub label: String,
    pub group_order: u64,
    pub group: Arc<PermGroup>,
}

impl Triple {
    fn key(&self) -> (u32, &Signature, &Signature, &str) {
        (self.k_squared, &self.t1, &self.t2, &self.label)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triple(K²={}, ({}), ({}), {})", self.k_squared, self.t1, self.t2, self.label)
    }
}

impl PartialEq for Triple {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

/// An order the sweep did not search exhaustively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedOrder {
    pub k_squared: u32,
    pub order: u64,
    pub verdict: Completeness,
    /// Catalog groups of this order that were searched (none when excluded).
    pub searched: Vec<String>,
    pub pairs: Vec<(Signature, Signature)>,
}

impl SkippedOrder {
    /// No catalog group of this order at all.
    pub fn is_missing(&self) -> bool {
        self.verdict != Completeness::ExcludedByHand && self.searched.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct TripleSearch {
    pub triples: Vec<Triple>,
    pub skipped: Vec<SkippedOrder>,
}

/// Unordered pairs `T1 ≤ T2` of admissible signatures whose group order
/// `8 α1 α2 / K²` is an integer, with that order.
pub fn signature_pairs(k_squared: u32) -> Vec<(Signature, Signature, u64)> {
    let types = list_of_types(k_squared);
    let mut out = Vec::new();
    for (i, t1) in types.iter().enumerate() {
        let a1 = integral_alpha(t1, k_squared).expect("admissible");
        for t2 in &types[i..] {
            let a2 = integral_alpha(t2, k_squared).expect("admissible");
            if (8 * a1 * a2) % k_squared as u64 == 0 {
                out.push((t1.clone(), t2.clone(), 8 * a1 * a2 / k_squared as u64));
            }
        }
    }
    out
}

/// All triples `(T1, T2, G)` with `G` from the catalog of order
/// `8 α1 α2 / K²` having spherical systems of both signatures.
///
/// Orders excluded by hand are not searched; they and every order the
/// catalog does not certify complete are reported in `skipped`.
pub fn list_triples(k_squared: u32, catalog: &Catalog) -> TripleSearch {
    let mut by_order: BTreeMap<u64, Vec<(Signature, Signature)>> = BTreeMap::new();
    for (t1, t2, n) in signature_pairs(k_squared) {
        by_order.entry(n).or_default().push((t1, t2));
    }
    let results: Vec<(Vec<Triple>, Option<SkippedOrder>)> = by_order
        .par_iter()
        .map(|(&n, pairs)| {
            let (entries, verdict) = catalog.groups_of_order(n);
            let skipped = (verdict != Completeness::Complete).then(|| SkippedOrder {
                k_squared,
                order: n,
                verdict,
                searched: if verdict == Completeness::ExcludedByHand {
                    Vec::new()
                } else {
                    entries.iter().map(|e| e.label.clone()).collect()
                },
                pairs: pairs.clone(),
            });
            if verdict == Completeness::ExcludedByHand {
                return (Vec::new(), skipped);
            }
            let signatures: BTreeSet<&Signature> = pairs.iter().flat_map(|(a, b)| [a, b]).collect();
            let mut triples = Vec::new();
            for entry in entries {
                let group = match entry.build() {
                    Ok(g) => g,
                    Err(e) => {
                        log::warn!("skipping {}: {e}", entry.label);
                        continue;
                    }
                };
                let realized: HashSet<&Signature> =
                    signatures.par_iter().copied().filter(|s| exists_spherical(&group, s)).collect();
                for (t1, t2) in pairs {
                    if realized.contains(t1) && realized.contains(t2) {
                        triples.push(Triple {
                            k_squared,
                            t1: t1.clone(),
                            t2: t2.clone(),
                            label: entry.label.clone(),
                            group_order: n,
                            group: group.clone(),
                        });
                    }
                }
            }
            (triples, skipped)
        })
        .collect();
    let mut search = TripleSearch::default();
    for (triples, skipped) in results {
        search.triples.extend(triples);
        search.skipped.extend(skipped);
    }
    search.triples.sort_by(|a, b| a.key().cmp(&b.key()));
    search
}

/// Whether some pair of spherical systems of the triple gives exactly
/// `8 − K²` nodes and no worse singularity.
///
/// The node count only depends on the conjugacy classes of the elements, so
/// one system per simultaneous conjugacy class suffices, and systems with
/// the same multiset of classes are tried once.
pub fn has_nodal_pair(triple: &Triple) -> bool {
    let group = &triple.group;
    let class_reps = |sig: &Signature| -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        systems_up_to_conjugation(group, sig)
            .into_iter()
            .filter_map(|s| {
                let mut classes: Vec<usize> = s.elements().iter().map(|&x| group.class_of(x)).collect();
                classes.sort_unstable();
                seen.insert(classes).then(|| s.elements().to_vec())
            })
            .collect()
    };
    let first = class_reps(&triple.t1);
    let second = if triple.t1 == triple.t2 { first.clone() } else { class_reps(&triple.t2) };
    first
        .par_iter()
        .any(|a| second.iter().any(|b| check_sings(group, a, b, triple.k_squared).accepted))
}

/// The triples of [`list_triples`] that yield at least one surface with the
/// right nodes.
pub fn existing_nodal_surfaces(k_squared: u32, catalog: &Catalog) -> TripleSearch {
    let mut search = list_triples(k_squared, catalog);
    let keep: Vec<bool> = search.triples.par_iter().map(has_nodal_pair).collect();
    let mut flags = keep.into_iter();
    search.triples.retain(|_| flags.next().unwrap());
    search
}
