//! The classification search: admissible signatures, the sweep over groups,
//! spherical systems, node counting and the equivalence classes of system
//! pairs under Hurwitz moves and automorphisms.

mod components;
mod hurwitz;
mod sings;
mod spherical;
mod triples;
mod types;

pub use components::{find_all_components, ComponentLimits, FamilyClass, FamilyClassifier};
pub use hurwitz::{hurwitz_move, hurwitz_orbit, inverse_hurwitz_move, DEFAULT_ORBIT_CAP};
pub use sings::{check_sings, Rejection, SingularityReport};
pub use spherical::{all_spherical_systems, exists_spherical, systems_up_to_conjugation, SphericalSystem};
pub use triples::{
    existing_nodal_surfaces, has_nodal_pair, list_triples, signature_pairs, SkippedOrder, Triple, TripleSearch,
};
pub use types::{integral_alpha, is_admissible, list_of_types, max_part, node_target, MAX_ARITY};

use crate::perm::PermError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("not a spherical system: {0}")]
    NotSpherical(String),
    #[error("Hurwitz orbit larger than {cap} tuples")]
    OrbitCapExceeded { cap: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}
