use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::fiber::{FiberProductData, TorsionWordSet};
use super::Pi1Error;
use crate::catalog::Catalog;
use crate::fp::{quotient_and_simplify, reidemeister_schreier, todd_coxeter, AbelianInvariants, CosetTable, Presentation, Word};
use crate::perm::PermGroup;

/// Default number of partial assignments a single epimorphism search may visit.
pub const DEFAULT_SEARCH_CAP: usize = 50_000_000;

/// Default bound on the order of the quotients tried by [`structure_probe`].
pub const DEFAULT_INDEX_BOUND: usize = 32;

/// The fundamental group `H / Tors(H)` and what is known about it.
#[derive(Clone, Debug, Serialize)]
pub struct Pi1Report {
    #[serde(serialize_with = "as_text")]
    pub presentation: Presentation,
    pub h1: AbelianInvariants,
    pub finite_order: Option<u64>,
    pub structure: Option<StructureReport>,
    pub torsion_words: usize,
    pub h_generators: usize,
}

fn as_text<S: serde::Serializer>(p: &Presentation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl Pi1Report {
    /// One-line description: the abelian invariants for a finite abelian
    /// group, the order for a finite nonabelian one, and otherwise the best
    /// finite-index subgroup with free abelianization that was found.
    pub fn summary(&self) -> String {
        match self.finite_order {
            Some(n) if self.h1.order().is_some_and(|o| o == n.into()) => self.h1.to_string(),
            Some(n) => format!("finite({n})"),
            None => match self.structure.as_ref().and_then(|s| s.best_probe()) {
                Some(p) => format!("Z^{} <| pi1 ->> {}", p.kernel_h1.free_rank, p.quotient),
                None => "infinite".to_string(),
            },
        }
    }
}

/// Quotient of the fiber product by the torsion words, simplified.
pub fn pi1_presentation(fp: &FiberProductData, tors: &TorsionWordSet) -> Result<Pi1Report, Pi1Error> {
    let extra: Vec<Word> = tors.words.iter().map(|w| fp.subgroup.rewriter.rewrite(w)).collect::<Result<_, _>>()?;
    let presentation = quotient_and_simplify(&fp.subgroup.presentation, &extra);
    let h1 = presentation.abelian_invariants();
    Ok(Pi1Report {
        presentation,
        h1,
        finite_order: None,
        structure: None,
        torsion_words: tors.len(),
        h_generators: fp.subgroup.presentation.generator_count(),
    })
}

/// The order of the group if coset enumeration over the trivial subgroup
/// closes within `coset_limit` cosets.
pub fn finite_order_probe(report: &Pi1Report, coset_limit: usize) -> Option<u64> {
    if !report.h1.is_finite() {
        return None;
    }
    todd_coxeter(&report.presentation, &[], coset_limit).ok().map(|t| t.coset_count() as u64)
}

/// A normal subgroup found as the kernel of an epimorphism onto a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelProbe {
    pub quotient: String,
    pub kernel_index: usize,
    pub kernel_h1: AbelianInvariants,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub probes: Vec<KernelProbe>,
    /// `(index, free rank)` of the first kernel of least index with free abelianization.
    pub best: Option<(usize, usize)>,
}

impl StructureReport {
    pub fn best_probe(&self) -> Option<&KernelProbe> {
        let (index, rank) = self.best?;
        self.probes
            .iter()
            .find(|p| p.kernel_index == index && p.kernel_h1.is_free() && p.kernel_h1.free_rank == rank)
    }

    /// Whether some kernel of the given index is free abelian of the given rank after abelianizing.
    pub fn has_free_kernel(&self, index: usize, rank: usize) -> bool {
        self.probes
            .iter()
            .any(|p| p.kernel_index == index && p.kernel_h1.is_free() && p.kernel_h1.free_rank == rank)
    }
}

/// Kernels of all epimorphisms from `pi1` onto catalog groups of order at
/// most `index_bound`, one per kernel, with their abelian invariants.
///
/// Quotients whose abelianization is not a quotient of `H1` are skipped
/// before searching. Generator images are assigned one at a time, checking
/// every relator as soon as its letters are all assigned; the first image is
/// only taken up to conjugacy in the quotient.
pub fn structure_probe(report: &Pi1Report, quotients: &Catalog, index_bound: usize) -> Result<StructureReport, Pi1Error> {
    structure_probe_with_cap(report, quotients, index_bound, DEFAULT_SEARCH_CAP)
}

pub fn structure_probe_with_cap(
    report: &Pi1Report,
    quotients: &Catalog,
    index_bound: usize,
    search_cap: usize,
) -> Result<StructureReport, Pi1Error> {
    let mut entries: Vec<_> = quotients
        .entries()
        .iter()
        .filter(|e| e.claimed_order.map_or(true, |n| n >= 2 && n as usize <= index_bound))
        .collect();
    entries.sort_by(|a, b| (a.claimed_order, &a.label).cmp(&(b.claimed_order, &b.label)));
    let found: Vec<Vec<KernelProbe>> = entries
        .par_iter()
        .map(|entry| -> Result<Vec<KernelProbe>, Pi1Error> {
            let q = entry.build()?;
            if q.order() < 2 || q.order() > index_bound || !q.abelianization().is_quotient_of(&report.h1) {
                return Ok(Vec::new());
            }
            let kernels = epimorphism_kernels(&report.presentation, &q, search_cap)?;
            kernels
                .into_iter()
                .map(|table| {
                    let kernel = reidemeister_schreier(&report.presentation, &table)?;
                    Ok(KernelProbe {
                        quotient: entry.label.clone(),
                        kernel_index: table.coset_count(),
                        kernel_h1: kernel.presentation.abelian_invariants(),
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let probes: Vec<KernelProbe> = found.into_iter().flatten().collect();
    let best = probes
        .iter()
        .filter(|p| p.kernel_h1.is_free())
        .min_by_key(|p| p.kernel_index)
        .map(|p| (p.kernel_index, p.kernel_h1.free_rank));
    Ok(StructureReport { probes, best })
}

/// Coset tables (standardized, one per kernel) of the regular actions
/// induced by all epimorphisms from the presented group onto `q`.
pub fn epimorphism_kernels(p: &Presentation, q: &PermGroup, search_cap: usize) -> Result<Vec<CosetTable>, Pi1Error> {
    let k = p.generator_count();
    let n = q.order();
    if k == 0 {
        return Ok(Vec::new());
    }
    // relators grouped by the last generator they involve
    let mut checks: Vec<Vec<&Word>> = vec![Vec::new(); k];
    for r in p.relators() {
        if let Some(last) = r.letters().iter().map(|l| l.generator()).max() {
            checks[last].push(r);
        }
    }
    // composing with an inner automorphism keeps the kernel
    let first_choices: Vec<usize> = q.class_reps().collect();
    let visited = AtomicUsize::new(0);
    let results: Vec<Vec<Vec<usize>>> = first_choices
        .par_iter()
        .map(|&x| {
            let mut images = vec![x];
            let mut out = Vec::new();
            if satisfied(q, &checks[0], &images) {
                extend(q, &checks, &mut images, k, &visited, search_cap, &mut out)?;
            }
            Ok(out)
        })
        .collect::<Result<_, Pi1Error>>()?;
    let mut seen = HashSet::new();
    let mut tables = Vec::new();
    for images in results.into_iter().flatten() {
        let action: Vec<Vec<u32>> = images.iter().map(|&x| (0..n).map(|c| q.mul(c, x) as u32).collect()).collect();
        let table = CosetTable::from_action(&action, Vec::new())?.standardize();
        let key: Vec<Vec<u32>> = (0..k).map(|g| table.generator_images(g)).collect();
        if seen.insert(key) {
            tables.push(table);
        }
    }
    Ok(tables)
}

fn satisfied(q: &PermGroup, relators: &[&Word], images: &[usize]) -> bool {
    relators.iter().all(|r| {
        r.letters().iter().fold(PermGroup::IDENTITY, |acc, l| {
            let x = images[l.generator()];
            q.mul(acc, if l.is_inverse() { q.inv(x) } else { x })
        }) == PermGroup::IDENTITY
    })
}

fn extend(
    q: &PermGroup,
    checks: &[Vec<&Word>],
    images: &mut Vec<usize>,
    k: usize,
    visited: &AtomicUsize,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), Pi1Error> {
    if images.len() == k {
        if q.generates(images) {
            out.push(images.clone());
        }
        return Ok(());
    }
    if visited.fetch_add(1, Ordering::Relaxed) > cap {
        return Err(Pi1Error::SearchCapExceeded { cap });
    }
    let g = images.len();
    for x in 0..q.order() {
        images.push(x);
        if satisfied(q, &checks[g], images) {
            extend(q, checks, images, k, visited, cap, out)?;
        }
        images.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Presentation;
    use crate::perm::Permutation;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        let gens = gens.iter().map(|c| Permutation::parse_cycles(c, degree).unwrap()).collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    #[test]
    fn kernels_onto_small_groups() {
        // Z^2 has three subgroups of index 2 and one kernel onto Z2^2
        let z2 = Presentation::parse("gens: a b\nrel: a*b*a^-1*b^-1").unwrap();
        assert_eq!(epimorphism_kernels(&z2, &group(2, &["(1,2)"]), 1000).unwrap().len(), 3);
        assert_eq!(epimorphism_kernels(&z2, &group(4, &["(1,2)", "(3,4)"]), 1000).unwrap().len(), 1);
        assert_eq!(epimorphism_kernels(&z2, &group(3, &["(1,2)", "(1,2,3)"]), 1000).unwrap().len(), 0);
        // the free group of rank 2 maps onto S3 with 18 epimorphisms, 3 kernels up to Aut(S3) = Inn(S3)
        let f2 = Presentation::parse("gens: a b").unwrap();
        assert_eq!(epimorphism_kernels(&f2, &group(3, &["(1,2)", "(1,2,3)"]), 1000).unwrap().len(), 3);
    }

    #[test]
    fn search_cap() {
        let f2 = Presentation::parse("gens: a b c").unwrap();
        let err = epimorphism_kernels(&f2, &group(4, &["(1,2)", "(1,2,3,4)"]), 5).unwrap_err();
        assert_eq!(err, Pi1Error::SearchCapExceeded { cap: 5 });
    }
}
