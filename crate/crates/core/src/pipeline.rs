//! End-to-end runs: signatures, triples, families and fundamental groups for
//! each requested `K²`, collected into table rows, per-family records and a
//! ledger of everything the run could not do exhaustively.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, Completeness};
use crate::enumerate::{
    existing_nodal_surfaces, find_all_components, integral_alpha, node_target, ComponentLimits, EnumerateError,
    FamilyClass, SkippedOrder, Triple,
};
use crate::fp::{FpError, DEFAULT_COSET_LIMIT};
use crate::geometry::{hurwitz_genus, Signature};
use crate::perm::PermError;
use crate::pi1::{compute_pi1, finite_order_probe, structure_probe, Pi1Error, DEFAULT_INDEX_BOUND};

/// Environment variable overriding the number of worker threads.
pub const THREADS_ENV: &str = "CLASSIFY_THREADS";

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub k_squared: Vec<u32>,
    pub catalog: Catalog,
    /// Catalog of candidate quotients for the structure probes.
    pub quotients: Catalog,
    pub coset_limit: usize,
    pub limits: ComponentLimits,
    pub index_bound: usize,
    /// Compute fundamental groups; without this rows carry no H1 or π1.
    pub fundamental_groups: bool,
    pub threads: usize,
}

impl RunConfig {
    pub fn new(k_squared: Vec<u32>, catalog: Catalog) -> Self {
        RunConfig {
            k_squared,
            quotients: catalog.clone(),
            catalog,
            coset_limit: DEFAULT_COSET_LIMIT,
            limits: ComponentLimits::default(),
            index_bound: DEFAULT_INDEX_BOUND,
            fundamental_groups: true,
            threads: default_threads(),
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |msg: String| Err(PipelineError::Config(msg));
        if self.k_squared.is_empty() {
            return bad("no K² requested".into());
        }
        if let Some(k) = self.k_squared.iter().find(|k| ![2, 4, 6].contains(*k)) {
            return bad(format!("K² = {k} is not one of 2, 4, 6"));
        }
        if self.coset_limit == 0 || self.index_bound == 0 || self.limits.orbit_cap == 0 {
            return bad("limits must be positive".into());
        }
        if self.threads == 0 {
            return bad("at least one thread is needed".into());
        }
        Ok(())
    }
}

/// `CLASSIFY_THREADS` if set to a positive integer, otherwise the number of CPUs.
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("cannot start worker threads: {0}")]
    Threads(String),
}

/// One row of the table of surfaces: a triple with at least one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub k_squared: u32,
    pub t1: Signature,
    pub t2: Signature,
    pub g1: u64,
    pub g2: u64,
    pub group: String,
    pub group_order: u64,
    pub families: usize,
    pub h1: String,
    pub pi1: String,
}

/// What was computed for one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub k_squared: u32,
    pub t1: Signature,
    pub t2: Signature,
    pub group: String,
    pub class_id: usize,
    pub sys1: String,
    pub sys2: String,
    pub nodes: u64,
    pub h_generators: usize,
    pub torsion_words: usize,
    pub presentation: String,
    pub h1: String,
    pub finite_order: Option<u64>,
    /// `(index, free rank)` of the least-index kernel with free abelianization.
    pub free_kernel: Option<(usize, usize)>,
    /// Every kernel found by the structure probe.
    pub kernels: Vec<KernelRecord>,
    pub pi1: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRecord {
    pub quotient: String,
    pub index: usize,
    pub h1: String,
    pub free_rank: usize,
    pub free: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LedgerEntry {
    /// A group order whose catalog list is not known to be complete.
    Order { k_squared: u32, order: u64, verdict: Completeness, searched: usize, pairs: usize },
    /// No catalog group of an order the sweep needed.
    Missing { k_squared: u32, order: u64, pairs: usize },
    /// A triple or family whose computation failed; `cap` marks a search cap.
    Failure { k_squared: u32, subject: String, message: String, cap: bool },
}

impl LedgerEntry {
    pub fn skipped(k_squared: u32, s: &SkippedOrder) -> Self {
        if s.is_missing() {
            LedgerEntry::Missing { k_squared, order: s.order, pairs: s.pairs.len() }
        } else {
            LedgerEntry::Order {
                k_squared,
                order: s.order,
                verdict: s.verdict,
                searched: s.searched.len(),
                pairs: s.pairs.len(),
            }
        }
    }
}

impl Ledger {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match e {
                LedgerEntry::Order { k_squared, order, verdict, searched, pairs } => writeln!(
                    out,
                    "K2={k_squared} order {order}: {} ({searched} groups searched, {pairs} signature pairs)",
                    verdict.as_str()
                ),
                LedgerEntry::Missing { k_squared, order, pairs } => {
                    writeln!(out, "K2={k_squared} order {order}: missing ({pairs} signature pairs)")
                }
                LedgerEntry::Failure { k_squared, subject, message, cap } => {
                    let kind = if *cap { "cap exceeded" } else { "failed" };
                    writeln!(out, "K2={k_squared} {subject}: {kind}: {message}")
                }
            }
            .expect("writing to a string");
        }
        out
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e, LedgerEntry::Failure { .. })).count()
    }

    pub fn cap_hits(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e, LedgerEntry::Failure { cap: true, .. })).count()
    }
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOutput {
    pub rows: Vec<ReportRow>,
    pub families: Vec<FamilyRecord>,
    pub ledger: Ledger,
}

impl PipelineOutput {
    pub fn family_count(&self) -> usize {
        self.rows.iter().map(|r| r.families).sum()
    }
}

pub fn run_pipeline(config: &RunConfig) -> Result<PipelineOutput, PipelineError> {
    config.validate()?;
    pool(config)?.install(|| run(config))
}

/// Only the sweep for triples, with its ledger of skipped orders.
pub fn nodal_triples(config: &RunConfig) -> Result<(Vec<Triple>, Ledger), PipelineError> {
    config.validate()?;
    let pool = pool(config)?;
    let mut triples = Vec::new();
    let mut ledger = Ledger::default();
    for &k2 in &sorted_k2(config) {
        let search = pool.install(|| existing_nodal_surfaces(k2, &config.catalog));
        ledger.entries.extend(search.skipped.iter().map(|s| LedgerEntry::skipped(k2, s)));
        triples.extend(search.triples);
    }
    Ok((triples, ledger))
}

fn pool(config: &RunConfig) -> Result<rayon::ThreadPool, PipelineError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| PipelineError::Threads(e.to_string()))
}

fn sorted_k2(config: &RunConfig) -> Vec<u32> {
    let mut ks = config.k_squared.clone();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn run(config: &RunConfig) -> Result<PipelineOutput, PipelineError> {
    let mut out = PipelineOutput::default();
    for k2 in sorted_k2(config) {
        let search = existing_nodal_surfaces(k2, &config.catalog);
        out.ledger.entries.extend(search.skipped.iter().map(|s| LedgerEntry::skipped(k2, s)));
        let classes: Vec<Result<Vec<FamilyClass>, EnumerateError>> =
            search.triples.par_iter().map(|t| find_all_components(t, &config.limits)).collect();
        let mut jobs: Vec<(usize, FamilyClass)> = Vec::new();
        let mut per_triple: Vec<(&Triple, usize)> = Vec::new();
        for (t, result) in search.triples.iter().zip(classes) {
            match result {
                Ok(found) if found.is_empty() => {}
                Ok(found) => {
                    per_triple.push((t, found.len()));
                    let at = per_triple.len() - 1;
                    jobs.extend(found.into_iter().map(|c| (at, c)));
                }
                Err(e) => out.ledger.entries.push(LedgerEntry::Failure {
                    k_squared: k2,
                    subject: subject(t),
                    message: e.to_string(),
                    cap: matches!(
                        e,
                        EnumerateError::OrbitCapExceeded { .. } | EnumerateError::Perm(PermError::CapExceeded { .. })
                    ),
                }),
            }
        }
        let records: Vec<Result<FamilyRecord, Pi1Error>> =
            jobs.par_iter().map(|(_, c)| family_record(c, config)).collect();
        let mut by_triple: Vec<Vec<FamilyRecord>> = vec![Vec::new(); per_triple.len()];
        for ((at, class), record) in jobs.iter().zip(records) {
            match record {
                Ok(r) => by_triple[*at].push(r),
                Err(e) => out.ledger.entries.push(LedgerEntry::Failure {
                    k_squared: k2,
                    subject: format!("{} family {}", subject(&class.triple), class.class_id + 1),
                    message: e.to_string(),
                    cap: matches!(
                        e,
                        Pi1Error::SearchCapExceeded { .. }
                            | Pi1Error::Fp(FpError::CosetLimitExceeded { .. })
                            | Pi1Error::Perm(PermError::CapExceeded { .. })
                    ),
                }),
            }
        }
        for ((t, count), records) in per_triple.into_iter().zip(by_triple) {
            let row = report_row(t, count, &records)?;
            out.rows.push(row);
            out.families.extend(records);
        }
    }
    Ok(out)
}

fn subject(t: &Triple) -> String {
    format!("{} ({}) ({})", t.label, t.t1, t.t2)
}

fn family_record(class: &FamilyClass, config: &RunConfig) -> Result<FamilyRecord, Pi1Error> {
    let t = &class.triple;
    let nodes = class.report.node_count.to_integer().to_u64().unwrap_or(0);
    let mut record = FamilyRecord {
        k_squared: t.k_squared,
        t1: t.t1.clone(),
        t2: t.t2.clone(),
        group: t.label.clone(),
        class_id: class.class_id,
        sys1: class.sys1.to_string(),
        sys2: class.sys2.to_string(),
        nodes,
        h_generators: 0,
        torsion_words: 0,
        presentation: String::new(),
        h1: String::new(),
        finite_order: None,
        free_kernel: None,
        kernels: Vec::new(),
        pi1: String::new(),
    };
    if !config.fundamental_groups {
        return Ok(record);
    }
    let (_, mut report) = compute_pi1(&class.sys1, &class.sys2)?;
    report.finite_order = finite_order_probe(&report, config.coset_limit);
    if report.finite_order.is_none() {
        report.structure = Some(structure_probe(&report, &config.quotients, config.index_bound)?);
    }
    record.h_generators = report.h_generators;
    record.torsion_words = report.torsion_words;
    record.presentation = report.presentation.to_string();
    record.h1 = report.h1.to_string();
    record.finite_order = report.finite_order;
    if let Some(s) = &report.structure {
        record.free_kernel = s.best;
        record.kernels = s
            .probes
            .iter()
            .map(|p| KernelRecord {
                quotient: p.quotient.clone(),
                index: p.kernel_index,
                h1: p.kernel_h1.to_string(),
                free_rank: p.kernel_h1.free_rank,
                free: p.kernel_h1.is_free(),
            })
            .collect();
    }
    record.pi1 = report.summary();
    Ok(record)
}

/// Joins the distinct values of a column over the families of a row.
fn merged(values: impl Iterator<Item = String>) -> String {
    let mut seen: Vec<String> = Vec::new();
    for v in values {
        if !seen.contains(&v) {
            seen.push(v);
        }
    }
    seen.join(" / ")
}

/// Builds a row and re-checks it: the group order from `α1 α2`, both genera
/// from Riemann–Hurwitz, and the node count of every family.
fn report_row(t: &Triple, families: usize, records: &[FamilyRecord]) -> Result<ReportRow, PipelineError> {
    let fail = |msg: String| PipelineError::Invariant(format!("{}: {msg}", subject(t)));
    let k2 = t.k_squared;
    let (a1, a2) = (integral_alpha(&t.t1, k2), integral_alpha(&t.t2, k2));
    let (Some(a1), Some(a2)) = (a1, a2) else { return Err(fail("signature not admissible".into())) };
    if 8 * a1 * a2 != t.group_order * k2 as u64 || t.group.order() as u64 != t.group_order {
        return Err(fail("group order differs from 8·α1·α2/K²".into()));
    }
    let g1 = hurwitz_genus(t.group_order, &t.t1).map_err(|e| fail(e.to_string()))?;
    let g2 = hurwitz_genus(t.group_order, &t.t2).map_err(|e| fail(e.to_string()))?;
    if let Some(r) = records.iter().find(|r| r.nodes != node_target(k2) as u64) {
        return Err(fail(format!("family {} has {} nodes", r.class_id + 1, r.nodes)));
    }
    Ok(ReportRow {
        k_squared: k2,
        t1: t.t1.clone(),
        t2: t.t2.clone(),
        g1,
        g2,
        group: t.label.clone(),
        group_order: t.group_order,
        families,
        h1: merged(records.iter().map(|r| r.h1.clone())),
        pi1: merged(records.iter().map(|r| r.pi1.clone())),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format `{s}` (expected tsv, json or md)")),
        }
    }
}

const COLUMNS: [&str; 9] = ["K2", "T1", "T2", "g1", "g2", "G", "fams", "H1", "pi1"];

pub fn emit(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Tsv => {
            let mut out = COLUMNS.join("\t") + "\n";
            for r in rows {
                let cells = [
                    r.k_squared.to_string(),
                    r.t1.to_string(),
                    r.t2.to_string(),
                    r.g1.to_string(),
                    r.g2.to_string(),
                    r.group.clone(),
                    r.families.to_string(),
                    r.h1.clone(),
                    r.pi1.clone(),
                ];
                out += &(cells.join("\t") + "\n");
            }
            out
        }
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Markdown => {
            let mut out = format!("| {} |\n", COLUMNS.join(" | "));
            out += &format!("|{}\n", "---|".repeat(COLUMNS.len()));
            for r in rows {
                out += &format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.k_squared,
                    r.t1.compact(),
                    r.t2.compact(),
                    r.g1,
                    r.g2,
                    r.group,
                    r.families,
                    r.h1,
                    r.pi1.replace('|', "\\|")
                );
            }
            out
        }
    }
}

pub fn parse_json_rows(text: &str) -> Result<Vec<ReportRow>, serde_json::Error> {
    serde_json::from_str(text)
}
