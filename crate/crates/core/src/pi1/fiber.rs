use std::sync::Arc;

use serde::Serialize;

use super::Pi1Error;
use crate::enumerate::SphericalSystem;
use crate::fp::{
    coset_table_from_hom, direct_product_presentation, reidemeister_schreier, CosetTable, FpError, Letter,
    Presentation, SubgroupPresentation, Word,
};
use crate::perm::{evaluate, PermGroup, WordSearch};

/// `⟨x1,…,xr | x1^m1, …, xr^mr, x1⋯xr⟩` with the orders of a system in its
/// own order, which need not be sorted.
pub fn system_presentation(sys: &SphericalSystem, prefix: &str) -> Presentation {
    let orders = sys.orders();
    let labels = (1..=orders.len()).map(|i| format!("{prefix}{i}")).collect();
    let mut relators: Vec<Word> = orders.iter().enumerate().map(|(i, &m)| Word::power_of(i, m as i64)).collect();
    relators.push((0..orders.len()).map(Letter::gen).collect());
    Presentation::new(labels, relators)
}

/// The fiber product `H = {(x, y) : φ1(x) = φ2(y)}` inside `T1 × T2`.
#[derive(Clone, Debug)]
pub struct FiberProductData {
    pub group: Arc<PermGroup>,
    /// `T1 × T2`, generators `c1…cr` then `d1…ds`.
    pub product: Presentation,
    /// Number of generators coming from `T1`.
    pub first_len: usize,
    pub images: Vec<usize>,
    pub table: CosetTable,
    pub subgroup: SubgroupPresentation,
}

impl FiberProductData {
    pub fn index(&self) -> usize {
        self.table.coset_count()
    }

    pub fn h_presentation(&self) -> &Presentation {
        &self.subgroup.presentation
    }

    /// Generators of `H` as words in the letters of `T1 × T2`.
    pub fn h_generator_words(&self) -> Vec<String> {
        self.subgroup.generator_words.iter().map(|w| self.product.display_word(w)).collect()
    }

    /// Image of a word of `T1 × T2` in `G × G`.
    pub fn image(&self, w: &Word) -> (usize, usize) {
        let g = &self.group;
        let mut pair = (PermGroup::IDENTITY, PermGroup::IDENTITY);
        for &l in w.letters() {
            let x = self.images[l.generator()];
            let x = if l.is_inverse() { g.inv(x) } else { x };
            if l.generator() < self.first_len {
                pair.0 = g.mul(pair.0, x);
            } else {
                pair.1 = g.mul(pair.1, x);
            }
        }
        pair
    }
}

fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.degree() == b.degree() && a.generators() == b.generators())
}

/// Builds `H` with its coset table, which is read off from the two
/// epimorphisms rather than enumerated, and presents it by
/// Reidemeister–Schreier.
pub fn fiber_product(sys1: &SphericalSystem, sys2: &SphericalSystem) -> Result<FiberProductData, Pi1Error> {
    if !same_group(sys1.group(), sys2.group()) {
        return Err(Pi1Error::GroupMismatch);
    }
    let group = sys1.group().clone();
    let p1 = system_presentation(sys1, "c");
    let p2 = system_presentation(sys2, "d");
    let table = coset_table_from_hom(&p1, &p2, &group, sys1.elements(), sys2.elements())?;
    let product = direct_product_presentation(&p1, &p2);
    let subgroup = reidemeister_schreier(&product, &table)?;
    let mut images = sys1.elements().to_vec();
    images.extend_from_slice(sys2.elements());
    Ok(FiberProductData { group, product, first_len: sys1.len(), images, table, subgroup })
}

/// One generator of `Tors(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionSource {
    /// Positions in the two systems, from 0.
    pub i: usize,
    pub j: usize,
    /// Exponents making `γ_i^a` and `δ_j^b` involutions.
    pub a: usize,
    pub b: usize,
    /// Fixed conjugator with `h⁻¹ γ_i^a h = δ_j^b`.
    pub h: usize,
    /// Element of the centralizer of `γ_i^a`.
    pub c: usize,
}

/// Words `c_i^a · t⁻¹ · d_j^b · t` with `t` a preimage of `h⁻¹c` in `T2`,
/// one for every pair of positions whose involution powers are conjugate
/// and every `c` centralizing `γ_i^a`. Their normal closure in `H` is the
/// subgroup generated by the elements of finite order.
#[derive(Clone, Debug, Default)]
pub struct TorsionWordSet {
    pub words: Vec<Word>,
    pub sources: Vec<TorsionSource>,
}

impl TorsionWordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn torsion_generators(
    sys1: &SphericalSystem,
    sys2: &SphericalSystem,
    fp: &FiberProductData,
) -> Result<TorsionWordSet, Pi1Error> {
    let g = &fp.group;
    let search = WordSearch::new(g, sys2.elements());
    let shift: Vec<Word> = (0..sys2.len()).map(|j| Word::power_of(fp.first_len + j, 1)).collect();
    let mut out = TorsionWordSet::default();
    for (i, &gamma) in sys1.elements().iter().enumerate() {
        let m = g.element_order(gamma);
        if m % 2 != 0 {
            continue;
        }
        let a = m / 2;
        let sigma = g.pow(gamma, a as i64);
        let centralizer = g.centralizer_elements(sigma);
        for (j, &delta) in sys2.elements().iter().enumerate() {
            let n = g.element_order(delta);
            if n % 2 != 0 {
                continue;
            }
            let b = n / 2;
            let tau = g.pow(delta, b as i64);
            let Some(h) = g.conjugacy(sigma, tau).witness else { continue };
            for &c in &centralizer {
                let t = search.word(g.mul(g.inv(h), c))?.substitute(&shift);
                let mut w = Word::power_of(i, a as i64);
                w.extend_from(&t.inverse());
                w.extend_from(&Word::power_of(fp.first_len + j, b as i64));
                w.extend_from(&t);
                let (x, y) = fp.image(&w);
                if x != y || g.element_order(x) > 2 || fp.table.trace(0, &w) != 0 {
                    return Err(FpError::WordNotInSubgroup.into());
                }
                out.words.push(w);
                out.sources.push(TorsionSource { i, j, a, b, h, c });
            }
        }
    }
    Ok(out)
}

/// Reidemeister–Schreier presentation of the kernel of `T → G` given by a
/// spherical system, via the regular action of `G` on itself.
pub fn polygonal_kernel(sys: &SphericalSystem) -> Result<SubgroupPresentation, Pi1Error> {
    let g = sys.group();
    let p = system_presentation(sys, "c");
    let images: Vec<Vec<u32>> = sys
        .elements()
        .iter()
        .map(|&x| (0..g.order()).map(|k| g.mul(k, x) as u32).collect())
        .collect();
    let table = CosetTable::from_action(&images, Vec::new())?;
    debug_assert!(table.is_consistent_with(&p));
    Ok(reidemeister_schreier(&p, &table)?)
}

/// Evaluates a word of `T` through a system.
pub fn evaluate_in_group(sys: &SphericalSystem, w: &Word) -> usize {
    evaluate(sys.group(), sys.elements(), w)
}
