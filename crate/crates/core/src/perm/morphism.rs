use std::collections::HashMap;

use super::{PermError, PermGroup};

/// Groups larger than this are refused by [`automorphisms`].
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 400;

/// A homomorphism between two [`PermGroup`]s, stored as an element-id table.
///
/// The groups themselves are not stored; `image_table[i]` is the id in the
/// target of the image of element `i` of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    pub image_table: Vec<u32>,
}

impl GroupMap {
    pub fn identity(order: usize) -> Self {
        GroupMap { image_table: (0..order as u32).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image_table[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        GroupMap { image_table: self.image_table.iter().map(|&x| other.image_table[x as usize]).collect() }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut table = vec![0u32; self.image_table.len()];
        for (i, &x) in self.image_table.iter().enumerate() {
            table[x as usize] = i as u32;
        }
        GroupMap { image_table: table }
    }

    pub fn is_homomorphism(&self, source: &PermGroup, target: &PermGroup) -> bool {
        (0..source.order()).all(|a| {
            (0..source.order()).all(|b| self.apply(source.mul(a, b)) == target.mul(self.apply(a), self.apply(b)))
        })
    }

    /// The inner automorphism `x ↦ g⁻¹ x g`.
    pub fn conjugation(group: &PermGroup, g: usize) -> GroupMap {
        GroupMap { image_table: (0..group.order()).map(|x| group.conjugate(x, g) as u32).collect() }
    }
}

/// Breadth-first layout of a group's Cayley graph with respect to a chosen
/// generating tuple. A map defined on the generators extends to at most one
/// homomorphism, which is built along `tree` and checked along `checks`.
struct CayleyPlan {
    tree: Vec<(u32, u32, u32)>,
    checks: Vec<(u32, u32, u32)>,
}

impl CayleyPlan {
    fn new(group: &PermGroup, gens: &[usize]) -> Self {
        let n = group.order();
        let mut seen = vec![false; n];
        seen[PermGroup::IDENTITY] = true;
        let mut queue = vec![PermGroup::IDENTITY];
        let mut tree = Vec::with_capacity(n);
        let mut checks = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for (i, &s) in gens.iter().enumerate() {
                let f = group.mul(e, s);
                if seen[f] {
                    checks.push((e as u32, i as u32, f as u32));
                } else {
                    seen[f] = true;
                    tree.push((e as u32, i as u32, f as u32));
                    queue.push(f);
                }
            }
        }
        debug_assert_eq!(queue.len(), n, "plan generators must generate the group");
        CayleyPlan { tree, checks }
    }

    /// Extends `images` (one target element per plan generator) to a homomorphism, if possible.
    fn extend(&self, source_order: usize, target: &PermGroup, images: &[usize]) -> Option<GroupMap> {
        let mut table = vec![u32::MAX; source_order];
        table[PermGroup::IDENTITY] = PermGroup::IDENTITY as u32;
        for &(e, i, f) in &self.tree {
            table[f as usize] = target.mul(table[e as usize] as usize, images[i as usize]) as u32;
        }
        for &(e, i, f) in &self.checks {
            if target.mul(table[e as usize] as usize, images[i as usize]) != table[f as usize] as usize {
                return None;
            }
        }
        Some(GroupMap { image_table: table })
    }
}

/// Elements of `target` that could be the image of `x` under an isomorphism.
fn candidates(source: &PermGroup, target: &PermGroup, x: usize) -> Vec<usize> {
    let (order, class) = (source.element_order(x), source.class_size(x));
    (0..target.order())
        .filter(|&y| target.element_order(y) == order && target.class_size(y) == class)
        .collect()
}

fn candidate_count(group: &PermGroup) -> Vec<usize> {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for x in 0..group.order() {
        *counts.entry((group.element_order(x), group.class_size(x))).or_default() += 1;
    }
    (0..group.order()).map(|x| counts[&(group.element_order(x), group.class_size(x))]).collect()
}

/// A generating tuple keeping the product of candidate counts small: the
/// best generating pair if there is one, otherwise a greedy extension.
fn search_generators(group: &PermGroup) -> Vec<usize> {
    let n = group.order();
    if n == 1 {
        return Vec::new();
    }
    let count = candidate_count(group);
    if let Some(x) = (1..n).filter(|&x| group.element_order(x) == n).min_by_key(|&x| count[x]) {
        return vec![x];
    }
    let mut reps: Vec<usize> = group.class_reps().filter(|&x| x != PermGroup::IDENTITY).collect();
    reps.sort_by_key(|&x| (count[x], x));
    let mut others: Vec<usize> = (1..n).collect();
    others.sort_by_key(|&y| (count[y], y));
    let mut best: Option<(usize, usize, usize)> = None;
    for &x in &reps {
        for &y in &others {
            let cost = count[x] * count[y];
            if best.is_some_and(|(c, _, _)| c <= cost) {
                break;
            }
            if group.generates(&[x, y]) {
                best = Some((cost, x, y));
            }
        }
    }
    if let Some((_, x, y)) = best {
        return vec![x, y];
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = group.closure(&gens);
    while inside.len() < n {
        let mut member = vec![false; n];
        for &e in &inside {
            member[e] = true;
        }
        let mut pick: Option<(usize, usize, usize)> = None;
        for y in (1..n).filter(|&y| !member[y]) {
            let mut trial = gens.clone();
            trial.push(y);
            let size = group.closure(&trial).len();
            let key = (count[y], n - size, y);
            if pick.is_none_or(|p| key < p) {
                pick = Some(key);
            }
        }
        gens.push(pick.expect("proper subgroup has an outside element").2);
        inside = group.closure(&gens);
    }
    gens
}

/// Enumerates injective homomorphisms `source → target` between groups of equal order.
fn isomorphisms(source: &PermGroup, target: &PermGroup, first_only: bool) -> Vec<GroupMap> {
    let mut found = Vec::new();
    if source.order() != target.order() || source.fingerprint() != target.fingerprint() {
        return found;
    }
    let gens = search_generators(source);
    let plan = CayleyPlan::new(source, &gens);
    let options: Vec<Vec<usize>> = gens.iter().map(|&g| candidates(source, target, g)).collect();
    let k = gens.len();
    // Orders of pairwise products are preserved by any isomorphism; used to prune early.
    let pair_orders: Vec<Vec<usize>> =
        (0..k).map(|i| (0..i).map(|j| source.element_order(source.mul(gens[j], gens[i]))).collect()).collect();
    let mut images = vec![0usize; k];
    let mut pos = vec![0usize; k];
    let mut depth = 0;
    if k == 0 {
        found.push(GroupMap::identity(1));
        return found;
    }
    loop {
        if pos[depth] == options[depth].len() {
            if depth == 0 {
                break;
            }
            pos[depth] = 0;
            depth -= 1;
            pos[depth] += 1;
            continue;
        }
        let y = options[depth][pos[depth]];
        images[depth] = y;
        let ok = (0..depth).all(|j| target.element_order(target.mul(images[j], y)) == pair_orders[depth][j]);
        if !ok {
            pos[depth] += 1;
            continue;
        }
        if depth + 1 < k {
            depth += 1;
            continue;
        }
        if let Some(map) = plan.extend(source.order(), target, &images) {
            let mut hit = vec![false; target.order()];
            let bijective = map.image_table.iter().all(|&x| !std::mem::replace(&mut hit[x as usize], true));
            if bijective {
                found.push(map);
                if first_only {
                    return found;
                }
            }
        }
        pos[depth] += 1;
    }
    found
}

/// The full automorphism group of `group`, sorted by image table; the identity comes first.
pub fn automorphisms(group: &PermGroup) -> Result<Vec<GroupMap>, PermError> {
    automorphisms_with_cap(group, DEFAULT_AUTOMORPHISM_CAP)
}

pub fn automorphisms_with_cap(group: &PermGroup, cap: usize) -> Result<Vec<GroupMap>, PermError> {
    if group.order() > cap {
        return Err(PermError::CapExceeded { cap });
    }
    let mut auts = isomorphisms(group, group, false);
    auts.sort();
    Ok(auts)
}

pub fn find_isomorphism(source: &PermGroup, target: &PermGroup) -> Option<GroupMap> {
    isomorphisms(source, target, true).pop()
}

pub fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.is_abelian() && b.is_abelian() {
        // Finite abelian groups are determined by their element order statistics.
        return a.order() == b.order() && a.fingerprint() == b.fingerprint();
    }
    find_isomorphism(a, b).is_some()
}

/// `G × H` acting on `deg G + deg H` points, with the two embeddings.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<(PermGroup, GroupMap, GroupMap), PermError> {
    direct_product_with_cap(g, h, super::DEFAULT_ELEMENT_CAP)
}

pub fn direct_product_with_cap(
    g: &PermGroup,
    h: &PermGroup,
    cap: usize,
) -> Result<(PermGroup, GroupMap, GroupMap), PermError> {
    if g.order().saturating_mul(h.order()) > cap {
        return Err(PermError::CapExceeded { cap });
    }
    let degree = g.degree() + h.degree();
    let gens = g
        .generators()
        .iter()
        .map(|x| x.shifted(0, degree))
        .chain(h.generators().iter().map(|y| y.shifted(g.degree(), degree)))
        .collect();
    let product = PermGroup::with_cap(degree, gens, cap)?;
    let embed = |group: &PermGroup, offset: usize| GroupMap {
        image_table: group
            .elements()
            .iter()
            .map(|x| product.id_of(&x.shifted(offset, degree)).expect("embedded element") as u32)
            .collect(),
    };
    let (left, right) = (embed(g, 0), embed(h, g.degree()));
    Ok((product, left, right))
}
