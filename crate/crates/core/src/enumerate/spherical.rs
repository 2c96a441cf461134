use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;

use super::EnumerateError;
use crate::geometry::Signature;
use crate::perm::{PermGroup, Permutation};

/// An ordered generating tuple `(h1, …, hr)` with `h1 ⋯ hr = 1`.
///
/// Elements are ids in `group`. The signature is the sorted multiset of
/// element orders; the tuple itself need not be sorted by order (Hurwitz
/// moves produce unsorted tuples).
#[derive(Clone)]
pub struct SphericalSystem {
    group: Arc<PermGroup>,
    elements: Vec<usize>,
    signature: Signature,
}

impl SphericalSystem {
    /// Validates the product, element orders and generation.
    pub fn new(group: Arc<PermGroup>, elements: Vec<usize>) -> Result<Self, EnumerateError> {
        if elements.iter().any(|&e| e >= group.order()) {
            return Err(EnumerateError::NotSpherical("element id out of range".into()));
        }
        if group.product(elements.iter().copied()) != PermGroup::IDENTITY {
            return Err(EnumerateError::NotSpherical("product is not the identity".into()));
        }
        let orders: Vec<u32> = elements.iter().map(|&e| group.element_order(e) as u32).collect();
        let signature =
            Signature::new(orders).map_err(|_| EnumerateError::NotSpherical("an element is trivial".into()))?;
        if !group.generates(&elements) {
            return Err(EnumerateError::NotSpherical("elements do not generate the group".into()));
        }
        Ok(SphericalSystem { group, elements, signature })
    }

    /// Parses cycle notation, one permutation per string.
    pub fn from_cycles(group: Arc<PermGroup>, cycles: &[&str]) -> Result<Self, EnumerateError> {
        let mut elements = Vec::with_capacity(cycles.len());
        for c in cycles {
            let p = Permutation::parse_cycles(c, group.degree())?;
            let id = group.id_of(&p).ok_or_else(|| EnumerateError::NotSpherical(format!("{c} is not in the group")))?;
            elements.push(id);
        }
        Self::new(group, elements)
    }

    /// Trusted constructor for tuples produced by the searches and moves in this module.
    pub(crate) fn unchecked(group: Arc<PermGroup>, elements: Vec<usize>, signature: Signature) -> Self {
        SphericalSystem { group, elements, signature }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Orders of the elements in tuple order.
    pub fn orders(&self) -> Vec<u32> {
        self.elements.iter().map(|&e| self.group.element_order(e) as u32).collect()
    }

    /// Whether the element orders are nondecreasing along the tuple.
    pub fn is_order_sorted(&self) -> bool {
        self.orders().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn permutations(&self) -> Vec<&Permutation> {
        self.elements.iter().map(|&e| self.group.element(e)).collect()
    }

    /// The tuple with every element replaced by `g⁻¹ x g`.
    pub fn conjugate_by(&self, g: usize) -> SphericalSystem {
        let elements = self.elements.iter().map(|&x| self.group.conjugate(x, g)).collect();
        Self::unchecked(self.group.clone(), elements, self.signature.clone())
    }

    /// The tuple with an element map applied, e.g. an automorphism.
    pub fn map_elements(&self, f: impl Fn(usize) -> usize) -> SphericalSystem {
        let elements = self.elements.iter().map(|&x| f(x)).collect();
        Self::unchecked(self.group.clone(), elements, self.signature.clone())
    }
}

impl PartialEq for SphericalSystem {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for SphericalSystem {}

impl Hash for SphericalSystem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Ord for SphericalSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl PartialOrd for SphericalSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SphericalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SphericalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.permutations().iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Depth-first search for tuples with exact orders `orders[i]`, product one,
/// generating the group. The first entry ranges over `firsts`; the last one
/// is forced by the product. `visit` sees every hit and may stop the search.
fn search<F>(group: &PermGroup, orders: &[u32], firsts: &[usize], by_order: &[Vec<usize>], visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let r = orders.len();
    let mut tuple = Vec::with_capacity(r);
    for &x in firsts {
        tuple.clear();
        tuple.push(x);
        descend(group, orders, by_order, &mut tuple, x, visit)?;
    }
    ControlFlow::Continue(())
}

fn descend<F>(
    group: &PermGroup,
    orders: &[u32],
    by_order: &[Vec<usize>],
    tuple: &mut Vec<usize>,
    prefix: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let pos = tuple.len();
    let r = orders.len();
    if pos == r - 1 {
        let last = group.inv(prefix);
        if group.element_order(last) == orders[pos] as usize {
            tuple.push(last);
            if group.generates(tuple) {
                visit(tuple)?;
            }
            tuple.pop();
        }
        return ControlFlow::Continue(());
    }
    for &x in &by_order[pos] {
        tuple.push(x);
        descend(group, orders, by_order, tuple, group.mul(prefix, x), visit)?;
        tuple.pop();
    }
    ControlFlow::Continue(())
}

/// Elements of each required order, or `None` if some order does not occur.
fn candidates(group: &PermGroup, orders: &[u32]) -> Option<Vec<Vec<usize>>> {
    let lists: Vec<Vec<usize>> = orders.iter().map(|&m| group.elements_of_order(m as usize)).collect();
    lists.iter().all(|l| !l.is_empty()).then_some(lists)
}

/// Whether `group` has a spherical system of signature `sig`.
///
/// Simultaneous conjugation fixes the answer, so the first element only
/// runs over class representatives.
pub fn exists_spherical(group: &PermGroup, sig: &Signature) -> bool {
    let orders = sig.parts();
    if orders.len() < 2 {
        return false;
    }
    let Some(by_order) = candidates(group, orders) else { return false };
    let firsts: Vec<usize> = by_order[0].iter().copied().filter(|&x| group.is_class_rep(x)).collect();
    firsts
        .par_iter()
        .any(|&x| search(group, orders, &[x], &by_order, &mut |_| ControlFlow::Break(())).is_break())
}

/// Every spherical system of signature `sig` whose element orders appear in
/// signature order, sorted by element ids.
pub fn all_spherical_systems(group: &Arc<PermGroup>, sig: &Signature) -> Vec<SphericalSystem> {
    let orders = sig.parts();
    if orders.len() < 2 {
        return Vec::new();
    }
    let Some(by_order) = candidates(group, orders) else { return Vec::new() };
    let tuples: Vec<Vec<Vec<usize>>> = by_order[0]
        .par_iter()
        .map(|&x| {
            let mut hits = Vec::new();
            let _ = search(group, orders, &[x], &by_order, &mut |t| {
                hits.push(t.to_vec());
                ControlFlow::Continue(())
            });
            hits
        })
        .collect();
    tuples
        .into_iter()
        .flatten()
        .map(|t| SphericalSystem::unchecked(group.clone(), t, sig.clone()))
        .collect()
}

/// One spherical system of signature `sig` per simultaneous conjugacy class.
///
/// The representative has a class representative in the first slot and is
/// the least tuple among its conjugates by the centralizer of that element.
pub fn systems_up_to_conjugation(group: &Arc<PermGroup>, sig: &Signature) -> Vec<SphericalSystem> {
    let orders = sig.parts();
    if orders.len() < 2 {
        return Vec::new();
    }
    let Some(by_order) = candidates(group, orders) else { return Vec::new() };
    let firsts: Vec<usize> = by_order[0].iter().copied().filter(|&x| group.is_class_rep(x)).collect();
    let tuples: Vec<Vec<Vec<usize>>> = firsts
        .par_iter()
        .map(|&x| {
            let centralizer = group.centralizer_elements(x);
            let mut hits = Vec::new();
            let _ = search(group, orders, &[x], &by_order, &mut |t| {
                if is_least_conjugate(group, t, &centralizer) {
                    hits.push(t.to_vec());
                }
                ControlFlow::Continue(())
            });
            hits
        })
        .collect();
    tuples
        .into_iter()
        .flatten()
        .map(|t| SphericalSystem::unchecked(group.clone(), t, sig.clone()))
        .collect()
}

fn is_least_conjugate(group: &PermGroup, t: &[usize], centralizer: &[usize]) -> bool {
    centralizer.iter().all(|&c| {
        for &x in &t[1..] {
            match group.conjugate(x, c).cmp(&x) {
                Ordering::Less => return false,
                Ordering::Greater => return true,
                Ordering::Equal => {}
            }
        }
        true
    })
}
