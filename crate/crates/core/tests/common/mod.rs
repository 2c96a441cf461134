//! Brute-force oracles for small groups. They use nothing from the library
//! beyond the multiplication table of a permutation group.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use pqclass::PermGroup;

pub struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

fn order_of(g: &PermGroup, x: usize) -> usize {
    let mut y = x;
    let mut n = 1;
    while y != 0 {
        y = g.mul(y, x);
        n += 1;
    }
    n
}

fn closure(g: &PermGroup, gens: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count
}

/// All tuples with the given element orders, product 1, generating `g`.
pub fn spherical_tuples(g: &PermGroup, orders: &[u32]) -> Vec<Vec<usize>> {
    let n = g.order();
    let by_order: Vec<Vec<usize>> =
        orders.iter().map(|&m| (0..n).filter(|&x| order_of(g, x) == m as usize).collect()).collect();
    let mut out = Vec::new();
    let mut t = Vec::new();
    fn rec(g: &PermGroup, orders: &[u32], by_order: &[Vec<usize>], t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = t.len();
        if k + 1 == orders.len() {
            let prod = t.iter().fold(0, |acc, &x| g.mul(acc, x));
            let last = g.inv(prod);
            if order_of(g, last) == orders[k] as usize {
                t.push(last);
                if closure(g, t) == g.order() {
                    out.push(t.clone());
                }
                t.pop();
            }
            return;
        }
        for &x in &by_order[k] {
            t.push(x);
            rec(g, orders, by_order, t, out);
            t.pop();
        }
    }
    rec(g, orders, &by_order, &mut t, &mut out);
    out.sort();
    out
}

/// Singular points of `(C1 × C2)/G` from the fixed points of the two
/// actions: over the `i`-th branch point the curve has the points
/// `x⟨γ_i⟩` with stabilizers `x⟨γ_i⟩x⁻¹`. Returns whether some point has a
/// stabilizer of order at least 3, and the number of orbits with stabilizer
/// of order 2.
pub fn fixed_point_nodes(g: &PermGroup, sys1: &[usize], sys2: &[usize]) -> (bool, usize) {
    let n = g.order();
    let cyclic = |x: usize| {
        let mut c = vec![0];
        let mut y = x;
        while y != 0 {
            c.push(y);
            y = g.mul(y, x);
        }
        c
    };
    // points as (coset as a sorted set, stabilizer as a membership vector)
    let points = |gamma: usize| -> Vec<(Vec<usize>, Vec<bool>)> {
        let c = cyclic(gamma);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in 0..n {
            let mut coset: Vec<usize> = c.iter().map(|&h| g.mul(x, h)).collect();
            coset.sort();
            if seen.insert(coset.clone()) {
                let mut stab = vec![false; n];
                for &h in &c {
                    stab[g.mul(g.mul(x, h), g.inv(x))] = true;
                }
                out.push((coset, stab));
            }
        }
        out
    };
    let mut worse = false;
    let mut nodes = 0;
    for &gamma in sys1 {
        let p1 = points(gamma);
        let idx1: HashMap<&Vec<usize>, usize> = p1.iter().enumerate().map(|(i, p)| (&p.0, i)).collect();
        for &delta in sys2 {
            let p2 = points(delta);
            let idx2: HashMap<&Vec<usize>, usize> = p2.iter().enumerate().map(|(i, p)| (&p.0, i)).collect();
            let m = p2.len();
            let mut dsu = Dsu::new(p1.len() * m);
            let act = |coset: &Vec<usize>, y: usize| {
                let mut c: Vec<usize> = coset.iter().map(|&z| g.mul(y, z)).collect();
                c.sort();
                c
            };
            for (a, (ca, _)) in p1.iter().enumerate() {
                for (b, (cb, _)) in p2.iter().enumerate() {
                    for y in 0..n {
                        let a2 = idx1[&act(ca, y)];
                        let b2 = idx2[&act(cb, y)];
                        dsu.union(a * m + b, a2 * m + b2);
                    }
                }
            }
            for a in 0..p1.len() {
                for b in 0..m {
                    if dsu.find(a * m + b) != a * m + b {
                        continue;
                    }
                    let common = (0..n).filter(|&z| p1[a].1[z] && p2[b].1[z]).count();
                    if common >= 3 {
                        worse = true;
                    } else if common == 2 {
                        nodes += 1;
                    }
                }
            }
        }
    }
    (worse, nodes)
}

/// Automorphisms as image tables, by trying every assignment of the
/// generators and extending along the Cayley graph.
pub fn automorphisms(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let gens = g.generator_ids();
    let orders: Vec<usize> = (0..n).map(|x| order_of(g, x)).collect();
    let choices: Vec<Vec<usize>> = gens.iter().map(|&s| (0..n).filter(|&x| orders[x] == orders[s]).collect()).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(g, &gens, &images) {
            out.push(map);
        }
        for k in 0..pick.len() {
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                continue 'outer;
            }
            pick[k] = 0;
        }
        break;
    }
    out
}

fn extend(g: &PermGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let (y, fy) = (g.mul(x, s), g.mul(map[x], t));
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let distinct: HashSet<usize> = map.iter().copied().collect();
    (distinct.len() == n).then_some(map)
}

/// Labels of sorted tuples by connected component of the braid moves
/// `(x, y) ↦ (y, y⁻¹xy)` and their inverses, walking through unsorted tuples.
pub fn braid_labels(g: &PermGroup, tuples: &[Vec<usize>]) -> Vec<usize> {
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut label = vec![usize::MAX; tuples.len()];
    let mut next = 0;
    for start in 0..tuples.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut seen = HashSet::from([tuples[start].clone()]);
        let mut queue = VecDeque::from([tuples[start].clone()]);
        while let Some(t) = queue.pop_front() {
            if let Some(&i) = index.get(&t) {
                label[i] = next;
            }
            for k in 0..t.len() - 1 {
                let (x, y) = (t[k], t[k + 1]);
                let mut fwd = t.clone();
                fwd[k] = y;
                fwd[k + 1] = g.mul(g.mul(g.inv(y), x), y);
                let mut back = t.clone();
                back[k] = g.mul(g.mul(x, y), g.inv(x));
                back[k + 1] = x;
                for u in [fwd, back] {
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
            }
        }
        next += 1;
    }
    label
}

/// Families of a triple by brute force: classes of pairs of sorted
/// systems under braid moves on each side and simultaneous automorphisms,
/// keeping those whose surface has exactly `nodes` nodes and nothing worse.
pub struct BruteClasses {
    pub first: Vec<Vec<usize>>,
    pub second: Vec<Vec<usize>>,
    labels1: Vec<usize>,
    labels2: Vec<usize>,
    l2: usize,
    /// Accepted class of each label pair.
    class: Vec<Option<usize>>,
    pub count: usize,
    /// `(first, second, worse, nodes)` for every pair the oracle evaluated.
    pub checked: Vec<(usize, usize, bool, usize)>,
}

impl BruteClasses {
    pub fn new(g: &PermGroup, t1: &[u32], t2: &[u32], nodes: usize) -> Self {
        let first = spherical_tuples(g, t1);
        let second = spherical_tuples(g, t2);
        let labels1 = braid_labels(g, &first);
        let labels2 = braid_labels(g, &second);
        let l1 = labels1.iter().max().map_or(0, |m| m + 1);
        let l2 = labels2.iter().max().map_or(0, |m| m + 1);
        let index1: HashMap<&Vec<usize>, usize> = first.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let index2: HashMap<&Vec<usize>, usize> = second.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut dsu = Dsu::new(l1 * l2);
        for phi in automorphisms(g) {
            let image_label = |tuples: &[Vec<usize>], labels: &[usize], index: &HashMap<&Vec<usize>, usize>| {
                let mut out = vec![usize::MAX; labels.iter().max().map_or(0, |m| m + 1)];
                for (t, &l) in tuples.iter().zip(labels) {
                    let u: Vec<usize> = t.iter().map(|&x| phi[x]).collect();
                    out[l] = labels[index[&u]];
                }
                out
            };
            let a1 = image_label(&first, &labels1, &index1);
            let a2 = image_label(&second, &labels2, &index2);
            for i in 0..l1 {
                for j in 0..l2 {
                    dsu.union(i * l2 + j, a1[i] * l2 + a2[j]);
                }
            }
        }
        // acceptance on up to three members of each label on each side,
        // checked to be constant on classes
        let members = |labels: &[usize], l: usize| -> Vec<Vec<usize>> {
            let mut m = vec![Vec::new(); l];
            for (i, &x) in labels.iter().enumerate() {
                if m[x].len() < 3 {
                    m[x].push(i);
                }
            }
            m
        };
        let (m1, m2) = (members(&labels1, l1), members(&labels2, l2));
        let mut verdict: Vec<Option<bool>> = vec![None; l1 * l2];
        let mut checked = Vec::new();
        for i in 0..l1 {
            for j in 0..l2 {
                for &a in &m1[i] {
                    for &b in &m2[j] {
                        let (worse, count) = fixed_point_nodes(g, &first[a], &second[b]);
                        let ok = !worse && count == nodes;
                        checked.push((a, b, worse, count));
                        let root = dsu.find(i * l2 + j);
                        match verdict[root] {
                            None => verdict[root] = Some(ok),
                            Some(v) => assert_eq!(v, ok, "acceptance is not constant on a class"),
                        }
                    }
                }
            }
        }
        let mut class = vec![None; l1 * l2];
        let mut id_of_root: HashMap<usize, usize> = HashMap::new();
        for p in 0..l1 * l2 {
            let root = dsu.find(p);
            if verdict[root] == Some(true) {
                let next = id_of_root.len();
                class[p] = Some(*id_of_root.entry(root).or_insert(next));
            }
        }
        BruteClasses { count: id_of_root.len(), first, second, labels1, labels2, l2, class, checked }
    }

    pub fn class_of(&self, s1: &[usize], s2: &[usize]) -> Option<usize> {
        let a = self.first.iter().position(|t| t == s1)?;
        let b = self.second.iter().position(|t| t == s2)?;
        self.class[self.labels1[a] * self.l2 + self.labels2[b]]
    }
}
