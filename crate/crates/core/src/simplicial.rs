//! Facet-presented simplicial complexes.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::face::Face;

/// Default cap on the number of faces any enumeration may produce.
pub const DEFAULT_FACE_CAP: usize = 1 << 22;

/// Above this many facets the exhaustive leaf-order search is skipped.
pub const BACKTRACK_FACET_LIMIT: usize = 24;

/// A simplicial complex stored by its facets.
///
/// The facet list is kept pairwise incomparable and in order of first
/// appearance. The complex with no facets is the empty complex `{∅}`.
#[derive(Clone, Default)]
pub struct SimplicialComplex {
    vertices: Face,
    facets: Vec<Face>,
}

/// Face counts by dimension; `counts[d]` is the number of `d`-faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    pub fn get(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Empty,
    Connected,
    Disconnected,
}

/// A leaf facet together with a joint witnessing it (`None` when the leaf is
/// the only facet). Both are indices into the facet list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub facet: usize,
    pub joint: Option<usize>,
}

/// Facet indices `F_0, ..., F_k` such that each `F_i` is a leaf of
/// `<F_0, ..., F_i>`, with the joint used at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafOrder {
    pub order: Vec<usize>,
    pub joints: Vec<Option<usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a complex from generating faces, keeping only maximal ones.
    pub fn from_facets(faces: impl IntoIterator<Item = Face>) -> Self {
        let candidates: Vec<Face> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        let mut facets = Vec::with_capacity(candidates.len());
        for (i, &f) in candidates.iter().enumerate() {
            let dominated =
                candidates.iter().enumerate().any(
                    |(j, &g)| {
                        if f == g {
                            j < i
                        } else {
                            f.is_subset(g)
                        }
                    },
                );
            if !dominated {
                facets.push(f);
            }
        }
        let vertices = facets.iter().fold(Face::EMPTY, |acc, &f| acc.union(f));
        SimplicialComplex { vertices, facets }
    }

    pub fn from_vertex_lists(lists: &[Vec<u32>]) -> Result<Self> {
        let faces = lists
            .iter()
            .map(|l| Face::try_from_vertices(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_facets(faces))
    }

    pub fn simplex(vertices: Face) -> Self {
        Self::from_facets([vertices])
    }

    pub fn vertices(&self) -> Face {
        self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the complex; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn contains_face(&self, face: Face) -> bool {
        face.is_empty() || self.facets.iter().any(|&f| face.is_subset(f))
    }

    /// Upper bound on the number of nonempty faces (sum over facets).
    pub fn face_count_bound(&self) -> u128 {
        self.facets
            .iter()
            .map(|f| {
                if f.len() >= 127 {
                    u128::MAX / 256
                } else {
                    (1u128 << f.len()) - 1
                }
            })
            .fold(0u128, u128::saturating_add)
    }

    /// All nonempty faces grouped by dimension, each group sorted.
    pub fn faces(&self, cap: usize) -> Result<Vec<Vec<Face>>> {
        let over = || Error::ResourceLimit {
            what: "face enumeration".into(),
            limit: cap,
            flag: "--face-cap",
        };
        if let Some(big) = self.facets.iter().map(|f| f.len()).max() {
            if big >= 63 || (1u128 << big) - 1 > cap as u128 {
                return Err(over());
            }
        }
        let mut seen: HashSet<Face> = HashSet::new();
        for &f in &self.facets {
            for s in f.subsets() {
                if !s.is_empty() && seen.insert(s) && seen.len() > cap {
                    return Err(over());
                }
            }
        }
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); (self.dim() + 1).max(0) as usize];
        for s in seen {
            by_dim[s.len() - 1].push(s);
        }
        for group in &mut by_dim {
            group.sort_unstable();
        }
        Ok(by_dim)
    }

    /// f-vector by explicit face enumeration.
    pub fn f_vector_enumerated(&self, cap: usize) -> Result<FVector> {
        Ok(FVector {
            counts: self.faces(cap)?.iter().map(|g| g.len() as u64).collect(),
        })
    }

    /// f-vector by inclusion-exclusion over the facets when there are few of
    /// them, by enumeration otherwise.
    pub fn f_vector(&self, cap: usize) -> Result<FVector> {
        if self.facets.len() > 20 {
            return self.f_vector_enumerated(cap);
        }
        let dim = (self.dim() + 1).max(0) as usize;
        let mut signed = vec![0i128; dim];
        // binom[n][k] for n up to the largest facet size
        let nmax = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let binom = binomial_table(nmax);
        fn walk(
            facets: &[Face],
            start: usize,
            inter: Face,
            depth: usize,
            signed: &mut [i128],
            binom: &[Vec<i128>],
        ) {
            for i in start..facets.len() {
                let next = inter.intersection(facets[i]);
                if next.is_empty() {
                    continue;
                }
                let sign = if depth.is_multiple_of(2) { 1 } else { -1 };
                let n = next.len();
                for (d, slot) in signed.iter_mut().enumerate().take(n) {
                    *slot += sign * binom[n][d + 1];
                }
                walk(facets, i + 1, next, depth + 1, signed, binom);
            }
        }
        walk(
            &self.facets,
            0,
            Face::from_bits(u128::MAX),
            0,
            &mut signed,
            &binom,
        );
        Ok(FVector {
            counts: signed.into_iter().map(|c| c as u64).collect(),
        })
    }

    /// Faces of the complex contained in `w`.
    pub fn induced_subcomplex(&self, w: Face) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().map(|f| f.intersection(w)))
    }

    /// Like [`Self::induced_subcomplex`], also returning the ids of `w` that
    /// are not vertices of the complex (they are ignored).
    pub fn induced_subcomplex_flagged(&self, w: Face) -> (SimplicialComplex, Face) {
        (self.induced_subcomplex(w), w.difference(self.vertices))
    }

    pub fn delete_vertex(&self, v: u32) -> Result<SimplicialComplex> {
        if !self.vertices.contains(v) {
            return Err(Error::VertexAbsent(v));
        }
        Ok(Self::from_facets(self.facets.iter().map(|f| f.without(v))))
    }

    /// Connectivity of the 1-skeleton.
    pub fn connectivity(&self) -> Connectivity {
        if self.facets.is_empty() {
            return Connectivity::Empty;
        }
        // union-find over facets, merging facets that share a vertex
        let k = self.facets.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..k {
            for j in i + 1..k {
                if !self.facets[i].intersection(self.facets[j]).is_empty() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let root = find(&mut parent, 0);
        if (1..k).all(|i| find(&mut parent, i) == root) {
            Connectivity::Connected
        } else {
            Connectivity::Disconnected
        }
    }

    /// True iff the complex is nonempty and connected.
    pub fn is_connected(&self) -> bool {
        self.connectivity() == Connectivity::Connected
    }

    /// Some leaf of the complex, or `None` if no facet is a leaf.
    pub fn find_leaf(&self) -> Result<Option<Leaf>> {
        if self.facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let active: Vec<usize> = (0..self.facets.len()).collect();
        Ok(active.iter().find_map(|&f| {
            leaf_joint(&self.facets, &active, f).map(|joint| Leaf { facet: f, joint })
        }))
    }

    /// Leaf order found by repeatedly removing a leaf, falling back to an
    /// exhaustive search for small facet counts. `None` if no order exists.
    pub fn quasi_forest_order(&self) -> Option<LeafOrder> {
        greedy_leaf_order(&self.facets).or_else(|| {
            if self.facets.len() <= BACKTRACK_FACET_LIMIT {
                exhaustive_leaf_order(&self.facets)
            } else {
                None
            }
        })
    }

    pub fn is_quasi_forest(&self) -> bool {
        self.quasi_forest_order().is_some()
    }

    pub fn is_quasi_tree(&self) -> bool {
        self.is_quasi_forest() && self.is_connected()
    }

    /// True if some vertex lies in every facet (the complex is a cone).
    pub fn is_cone(&self) -> bool {
        !self.facets.is_empty()
            && !self
                .facets
                .iter()
                .fold(Face::from_bits(u128::MAX), |acc, &f| acc.intersection(f))
                .is_empty()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.facets.clone();
        let mut b = other.facets.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet:?}")?;
        }
        write!(f, ">")
    }
}

pub(crate) fn binomial_table(nmax: usize) -> Vec<Vec<i128>> {
    let mut t = vec![vec![0i128; nmax + 2]; nmax + 1];
    for n in 0..=nmax {
        t[n][0] = 1;
        for k in 1..=n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
        }
    }
    t
}

/// If `facets[f]` is a leaf of the complex generated by `facets[active]`,
/// returns its joint (`None` when it is the only active facet).
pub fn leaf_joint(facets: &[Face], active: &[usize], f: usize) -> Option<Option<usize>> {
    if active.len() == 1 && active[0] == f {
        return Some(None);
    }
    let needed = active
        .iter()
        .filter(|&&h| h != f)
        .fold(Face::EMPTY, |acc, &h| {
            acc.union(facets[f].intersection(facets[h]))
        });
    active
        .iter()
        .copied()
        .find(|&g| g != f && needed.is_subset(facets[g]))
        .map(Some)
}

/// Reverse greedy: strip any leaf (the highest-indexed one) until one facet
/// remains; the removal sequence reversed is a leaf order.
pub fn greedy_leaf_order(facets: &[Face]) -> Option<LeafOrder> {
    let mut active: Vec<usize> = (0..facets.len()).collect();
    let mut removed = Vec::with_capacity(facets.len());
    while !active.is_empty() {
        let (pos, joint) = active
            .iter()
            .enumerate()
            .rev()
            .find_map(|(pos, &f)| leaf_joint(facets, &active, f).map(|j| (pos, j)))?;
        removed.push((active.remove(pos), joint));
    }
    removed.reverse();
    let (order, joints) = removed.into_iter().unzip();
    Some(LeafOrder { order, joints })
}

/// Exhaustive search over removal sequences with memoized dead ends.
pub fn exhaustive_leaf_order(facets: &[Face]) -> Option<LeafOrder> {
    let k = facets.len();
    assert!(k < 64, "exhaustive search supports fewer than 64 facets");
    if k == 0 {
        return Some(LeafOrder {
            order: vec![],
            joints: vec![],
        });
    }
    fn search(
        facets: &[Face],
        mask: u64,
        dead: &mut HashSet<u64>,
        removed: &mut Vec<(usize, Option<usize>)>,
    ) -> bool {
        if mask == 0 {
            return true;
        }
        if dead.contains(&mask) {
            return false;
        }
        let active: Vec<usize> = (0..facets.len()).filter(|i| mask >> i & 1 == 1).collect();
        for &f in &active {
            if let Some(joint) = leaf_joint(facets, &active, f) {
                removed.push((f, joint));
                if search(facets, mask & !(1 << f), dead, removed) {
                    return true;
                }
                removed.pop();
            }
        }
        dead.insert(mask);
        false
    }
    let mut dead = HashSet::new();
    let mut removed = Vec::new();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    if !search(facets, full, &mut dead, &mut removed) {
        return None;
    }
    removed.reverse();
    let (order, joints) = removed.into_iter().unzip();
    Some(LeafOrder { order, joints })
}

/// Checks from scratch that each `F_i` in `order` is a leaf of
/// `<F_0, ..., F_i>` and that every facet appears exactly once.
pub fn verify_leaf_order(facets: &[Face], order: &[usize]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..facets.len()).collect::<Vec<_>>() {
        return false;
    }
    (0..order.len()).all(|i| {
        let prefix = &order[..=i];
        let f = facets[order[i]];
        i == 0
            || prefix[..i].iter().any(|&g| {
                prefix[..i]
                    .iter()
                    .all(|&h| f.intersection(facets[h]).is_subset(facets[g]))
            })
    })
}
