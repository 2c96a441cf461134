use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::hurwitz::{full_orbit, move_in_place};
use super::sings::{check_sings, SingularityReport};
use super::spherical::all_spherical_systems;
use super::{EnumerateError, SphericalSystem, Triple};
use crate::geometry::Signature;
use crate::perm::{automorphisms_with_cap, PermGroup, DEFAULT_AUTOMORPHISM_CAP};

use super::hurwitz::DEFAULT_ORBIT_CAP;

/// Caps for [`find_all_components`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentLimits {
    /// Tuples visited by a single Hurwitz orbit.
    pub orbit_cap: usize,
    /// Largest group whose automorphisms are enumerated.
    pub automorphism_cap: usize,
}

impl Default for ComponentLimits {
    fn default() -> Self {
        ComponentLimits { orbit_cap: DEFAULT_ORBIT_CAP, automorphism_cap: DEFAULT_AUTOMORPHISM_CAP }
    }
}

/// One equivalence class of system pairs, i.e. one family of surfaces.
#[derive(Clone, Debug)]
pub struct FamilyClass {
    pub triple: Triple,
    pub sys1: SphericalSystem,
    pub sys2: SphericalSystem,
    /// Position among the accepted classes of the triple, from 0.
    pub class_id: usize,
    pub report: SingularityReport,
}

/// Sorted spherical systems of one signature, labelled by Hurwitz orbit.
pub(crate) struct LabelledSystems {
    pub systems: Vec<SphericalSystem>,
    pub label: Vec<usize>,
    pub index: HashMap<Vec<usize>, usize>,
    /// Least system (by position in `systems`) carrying each label.
    pub first: Vec<usize>,
}

impl LabelledSystems {
    pub fn new(group: &Arc<PermGroup>, sig: &Signature, orbit_cap: usize) -> Result<Self, EnumerateError> {
        let systems = all_spherical_systems(group, sig);
        let index: HashMap<Vec<usize>, usize> =
            systems.iter().enumerate().map(|(i, s)| (s.elements().to_vec(), i)).collect();
        let mut label = vec![usize::MAX; systems.len()];
        let mut first = Vec::new();
        for i in 0..systems.len() {
            if label[i] != usize::MAX {
                continue;
            }
            let l = first.len();
            first.push(i);
            for t in full_orbit(group, systems[i].elements(), orbit_cap)? {
                if let Some(&j) = index.get(&t) {
                    label[j] = l;
                }
            }
        }
        Ok(LabelledSystems { systems, label, index, first })
    }

    pub fn label_count(&self) -> usize {
        self.first.len()
    }

    pub fn label_of(&self, elements: &[usize]) -> Option<usize> {
        self.index.get(elements).map(|&i| self.label[i])
    }

    /// Label of any tuple in the Hurwitz orbit of a labelled system: walks
    /// the orbit until it meets a sorted tuple.
    pub fn label_of_any(&self, elements: &[usize], cap: usize) -> Result<Option<usize>, EnumerateError> {
        if let Some(l) = self.label_of(elements) {
            return Ok(Some(l));
        }
        let Some(group) = self.systems.first().map(|s| s.group().clone()) else { return Ok(None) };
        let mut seen: HashSet<Vec<usize>> = HashSet::from([elements.to_vec()]);
        let mut queue = VecDeque::from([elements.to_vec()]);
        while let Some(t) = queue.pop_front() {
            for idx in 0..t.len().saturating_sub(1) {
                let mut u = t.clone();
                move_in_place(&group, &mut u, idx);
                if let Some(l) = self.label_of(&u) {
                    return Ok(Some(l));
                }
                if seen.insert(u.clone()) {
                    if seen.len() > cap {
                        return Err(EnumerateError::OrbitCapExceeded { cap });
                    }
                    queue.push_back(u);
                }
            }
        }
        Ok(None)
    }

    /// The permutation of labels induced by an element map.
    fn act(&self, f: impl Fn(usize) -> usize) -> Vec<usize> {
        self.first
            .iter()
            .map(|&i| {
                let image: Vec<usize> = self.systems[i].elements().iter().map(|&x| f(x)).collect();
                self.label_of(&image).expect("automorphisms permute spherical systems")
            })
            .collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Classes of pairs of spherical systems up to Hurwitz moves on each factor
/// and simultaneous automorphisms, keeping those whose surface has exactly
/// the right nodes.
///
/// Every sorted system is labelled by its Hurwitz orbit; automorphisms then
/// act on pairs of labels, and each orbit of that action is one class. The
/// representative of a class is its least pair of sorted systems. The two
/// factors are never exchanged, even when the signatures agree.
pub fn find_all_components(triple: &Triple, limits: &ComponentLimits) -> Result<Vec<FamilyClass>, EnumerateError> {
    Ok(FamilyClassifier::new(triple, limits)?.classes)
}

/// The classes of [`find_all_components`] together with the labelling that
/// produced them, so that any pair of systems can be placed in its class.
pub struct FamilyClassifier {
    first: LabelledSystems,
    /// `None` when both factors have the same signature.
    second: Option<LabelledSystems>,
    /// Accepted class of each label pair, indexed `i * l2 + j`.
    class_of_pair: Vec<Option<usize>>,
    orbit_cap: usize,
    pub classes: Vec<FamilyClass>,
}

impl FamilyClassifier {
    pub fn new(triple: &Triple, limits: &ComponentLimits) -> Result<Self, EnumerateError> {
        let group = &triple.group;
        let first = LabelledSystems::new(group, &triple.t1, limits.orbit_cap)?;
        let second = if triple.t1 == triple.t2 {
            None
        } else {
            Some(LabelledSystems::new(group, &triple.t2, limits.orbit_cap)?)
        };
        let other = second.as_ref().unwrap_or(&first);
        let (l1, l2) = (first.label_count(), other.label_count());
        let mut unions = UnionFind((0..l1 * l2).collect());
        if l1 * l2 > 1 {
            let auts = automorphisms_with_cap(group, limits.automorphism_cap)?;
            for phi in &auts {
                let a1 = first.act(|x| phi.apply(x));
                let a2 = if second.is_none() { a1.clone() } else { other.act(|x| phi.apply(x)) };
                for i in 0..l1 {
                    for j in 0..l2 {
                        unions.union(i * l2 + j, a1[i] * l2 + a2[j]);
                    }
                }
            }
        }
        // Least pair of systems per class; labels are numbered by their least
        // system, so the least pair has the least label pair.
        let mut class_of_root: Vec<Option<usize>> = vec![None; l1 * l2];
        let mut seen = vec![false; l1 * l2];
        let mut classes = Vec::new();
        for p in 0..l1 * l2 {
            let root = unions.find(p);
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let sys1 = first.systems[first.first[p / l2]].clone();
            let sys2 = other.systems[other.first[p % l2]].clone();
            let report = check_sings(group, sys1.elements(), sys2.elements(), triple.k_squared);
            if report.accepted {
                class_of_root[root] = Some(classes.len());
                classes.push(FamilyClass { triple: triple.clone(), sys1, sys2, class_id: classes.len(), report });
            }
        }
        let class_of_pair = (0..l1 * l2).map(|p| class_of_root[unions.find(p)]).collect();
        Ok(FamilyClassifier { first, second, class_of_pair, orbit_cap: limits.orbit_cap, classes })
    }

    /// The accepted class containing a pair of systems of the triple's
    /// signatures, in any order of their elements; `None` if the pair is
    /// rejected.
    pub fn class_of(&self, sys1: &[usize], sys2: &[usize]) -> Result<Option<usize>, EnumerateError> {
        let other = self.second.as_ref().unwrap_or(&self.first);
        let i = self.first.label_of_any(sys1, self.orbit_cap)?;
        let j = other.label_of_any(sys2, self.orbit_cap)?;
        let (Some(i), Some(j)) = (i, j) else { return Ok(None) };
        Ok(self.class_of_pair[i * other.label_count() + j])
    }
}
