//! Fundamental groups of the quotient surfaces: the fiber product of the two
//! polygonal groups over `G`, its torsion, the quotient `π1 = H / Tors(H)`
//! and probes of that quotient's finiteness and finite-index subgroups.

mod fiber;
mod probe;

pub use fiber::{
    evaluate_in_group, fiber_product, polygonal_kernel, system_presentation, torsion_generators, FiberProductData,
    TorsionSource, TorsionWordSet,
};
pub use probe::{
    epimorphism_kernels, finite_order_probe, pi1_presentation, structure_probe, structure_probe_with_cap,
    KernelProbe, Pi1Report, StructureReport, DEFAULT_INDEX_BOUND, DEFAULT_SEARCH_CAP,
};

use crate::catalog::CatalogError;
use crate::enumerate::SphericalSystem;
use crate::fp::FpError;
use crate::perm::PermError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Pi1Error {
    #[error("the two systems belong to different groups")]
    GroupMismatch,
    #[error("epimorphism search visited more than {cap} partial assignments")]
    SearchCapExceeded { cap: usize },
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Fiber product, torsion and simplified presentation in one go.
pub fn compute_pi1(sys1: &SphericalSystem, sys2: &SphericalSystem) -> Result<(FiberProductData, Pi1Report), Pi1Error> {
    let fp = fiber_product(sys1, sys2)?;
    let tors = torsion_generators(sys1, sys2, &fp)?;
    let report = pi1_presentation(&fp, &tors)?;
    Ok((fp, report))
}
