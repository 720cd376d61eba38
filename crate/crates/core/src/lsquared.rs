//! The complexes `L²_q` and `L²(I)` supporting resolutions of `I²`, and the
//! Betti-number bounds they give.
//!
//! Vertex `ℓ_{i,j}` (`1 <= i <= j <= q`) gets id equal to its position in the
//! lexicographic list `ℓ_{1,1}, ℓ_{1,2}, ..., ℓ_{1,q}, ℓ_{2,2}, ...`; `L²(I)`
//! keeps the ids of `L²_q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::face::{Face, MAX_VERTICES};
use crate::homology::ComputeOptions;
use crate::ideal::{minimalize, MonomialIdeal};
use crate::labeled::{betti_numbers, LabeledComplex};
use crate::monomial::Monomial;
use crate::simplicial::{FVector, SimplicialComplex};

/// Largest `q` for which `L²_q` fits in the vertex-id range.
pub const MAX_Q: usize = 15;

/// Default largest `q` for which bound tables also compute exact Betti numbers.
pub const DEFAULT_ENUM_Q_CAP: usize = 7;

/// The vertex `ℓ_{i,j}`, stored with `i <= j` (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairVertex {
    i: usize,
    j: usize,
}

impl PairVertex {
    /// `ℓ_{i,j}`; `ℓ_{j,i}` normalizes to `ℓ_{i,j}`.
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1, "pair indices are 1-based");
        PairVertex {
            i: i.min(j),
            j: i.max(j),
        }
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }

    pub fn id(self, q: usize) -> u32 {
        debug_assert!(self.j <= q);
        let before = (self.i - 1) * (q + 1) - (self.i - 1) * self.i / 2;
        (before + self.j - self.i) as u32
    }

    pub fn from_id(q: usize, id: u32) -> Self {
        let mut rest = id as usize;
        for i in 1..=q {
            let row = q - i + 1;
            if rest < row {
                return PairVertex { i, j: i + rest };
            }
            rest -= row;
        }
        panic!("vertex id {id} out of range for q = {q}");
    }

    pub fn all(q: usize) -> impl Iterator<Item = PairVertex> {
        (1..=q).flat_map(move |i| (i..=q).map(move |j| PairVertex { i, j }))
    }
}

impl fmt::Display for PairVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{},{}", self.i, self.j)
    }
}

fn check_q(q: usize) -> Result<()> {
    if q == 0 {
        return Err(Error::Invalid("q must be at least 1".into()));
    }
    if q > MAX_Q {
        return Err(Error::ResourceLimit {
            what: format!("L²_q with q = {q} ({} vertices)", q * (q + 1) / 2),
            limit: MAX_Q,
            flag: "--max-q",
        });
    }
    Ok(())
}

/// Facets of `L²_q` as vertex sets: the off-diagonal facet `F_0` first, then
/// the rows `F_i = {ℓ_{i,j} : 1 <= j <= q}`. For `q <= 2` the first set is
/// not maximal and disappears.
fn l2q_generating_faces(q: usize) -> Vec<Face> {
    let f0: Face = PairVertex::all(q)
        .filter(|p| !p.is_diagonal())
        .map(|p| p.id(q))
        .collect();
    let rows = (1..=q).map(|i| (1..=q).map(|j| PairVertex::new(i, j).id(q)).collect());
    std::iter::once(f0).chain(rows).collect()
}

/// `L²_q` on `C(q+1, 2)` vertices.
pub fn build_l2q(q: usize) -> Result<SimplicialComplex> {
    check_q(q)?;
    debug_assert!(q * (q + 1) / 2 <= MAX_VERTICES as usize);
    Ok(SimplicialComplex::from_facets(l2q_generating_faces(q)))
}

/// Which vertices of `L²_q` were removed to form `L²(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionRecord {
    pub q: usize,
    pub deleted: BTreeSet<PairVertex>,
    /// Surviving vertex count, the number of minimal generators of `I²`.
    pub s: usize,
    /// `t[i-1]` counts deleted vertices of the form `ℓ_{i,j}`.
    pub t: Vec<usize>,
}

impl DeletionRecord {
    pub fn new(q: usize, deleted: BTreeSet<PairVertex>) -> Self {
        let mut t = vec![0; q];
        for p in &deleted {
            t[p.i - 1] += 1;
            if !p.is_diagonal() {
                t[p.j - 1] += 1;
            }
        }
        DeletionRecord {
            q,
            s: q * (q + 1) / 2 - deleted.len(),
            deleted,
            t,
        }
    }

    /// Checks the bookkeeping identities of the record.
    pub fn is_consistent(&self) -> bool {
        self.t.len() == self.q
            && self.s + self.deleted.len() == self.q * (self.q + 1) / 2
            && self
                .deleted
                .iter()
                .all(|p| !p.is_diagonal() && p.j <= self.q)
            && self.t.iter().sum::<usize>() == 2 * self.deleted.len()
    }
}

/// `L²(I)` for `I` minimally generated by square-free monomials, together
/// with the record of deleted vertices.
///
/// Vertex `ℓ_{i,j}` is labeled `m_i m_j`. For index pairs `{i,j} != {u,v}`
/// with `m_i m_j | m_u m_v`: if the products differ, `ℓ_{u,v}` is deleted;
/// if they are equal, the pair holding the smallest index is deleted.
pub fn build_l2i(ideal: &MonomialIdeal) -> Result<(LabeledComplex, DeletionRecord)> {
    if let Some(bad) = ideal.gens().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquareFree(ideal.format_monomial(bad)));
    }
    let q = ideal.q();
    check_q(q)?;
    let pairs: Vec<(PairVertex, Monomial)> = ideal
        .pair_products()
        .into_iter()
        .map(|((i, j), m)| (PairVertex::new(i + 1, j + 1), m))
        .collect();

    let mut deleted = BTreeSet::new();
    for (a, pa) in &pairs {
        for (b, pb) in &pairs {
            if a == b || !pa.divides(pb) {
                continue;
            }
            if pa != pb {
                deleted.insert(*b);
            } else if (a.i, a.j) < (b.i, b.j) {
                // equal products from distinct pairs never share the first
                // index, so this is the pair containing min{i,j,u,v}
                deleted.insert(*a);
            }
        }
    }

    let survivors: Face = pairs
        .iter()
        .filter(|(p, _)| !deleted.contains(p))
        .map(|(p, _)| p.id(q))
        .collect();
    let complex = build_l2q(q)?.induced_subcomplex(survivors);
    let labels: BTreeMap<u32, Monomial> = pairs
        .iter()
        .filter(|(p, _)| !deleted.contains(p))
        .map(|(p, m)| (p.id(q), m.clone()))
        .collect();

    // the surviving labels must be exactly the minimal generators of I²
    let all_products: Vec<Monomial> = pairs.iter().map(|(_, m)| m.clone()).collect();
    let mut expected = minimalize(&all_products)?;
    let mut got: Vec<Monomial> = labels.values().cloned().collect();
    expected.sort();
    got.sort();
    if expected != got {
        return Err(Error::Internal(format!(
            "L²(I) labels ({} survivors) disagree with the minimal generators of I² ({})",
            got.len(),
            expected.len()
        )));
    }

    let labeled = LabeledComplex::new(complex, labels, ideal.vars().clone())?;
    Ok((labeled, DeletionRecord::new(q, deleted)))
}

/// `C(n, k)`, saturating at `u128::MAX`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        let n2 = num / d;
        acc = match a.checked_mul(n2) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `C(q(q-1)/2, d+1) + q·C(q-1, d)`: the number of `d`-faces of `L²_q`.
pub fn bound_a(q: usize, d: usize) -> u128 {
    let q = q as u64;
    let d = d as u64;
    if q == 0 {
        return 0;
    }
    binomial(q * (q - 1) / 2, d + 1).saturating_add((q as u128).saturating_mul(binomial(q - 1, d)))
}

/// `C(s-q, d+1) + Σ_i C(q-1-t_i, d)`: the number of `d`-faces of `L²(I)`.
pub fn bound_b(record: &DeletionRecord, d: usize) -> u128 {
    let q = record.q as u64;
    let d = d as u64;
    let off_diagonal = (record.s as u64).saturating_sub(q);
    record
        .t
        .iter()
        .map(|&t| binomial((q - 1).saturating_sub(t as u64), d))
        .fold(binomial(off_diagonal, d + 1), u128::saturating_add)
}

/// `C(n, d+1)`, the `d`-faces of a simplex on `n` vertices (the Taylor bound).
pub fn taylor_bound(n: usize, d: usize) -> u128 {
    binomial(n as u64, d as u64 + 1)
}

/// f-vector of `L²_q` from the face-count formula.
pub fn l2q_f_vector(q: usize) -> FVector {
    let dim = match q {
        0 => return FVector::default(),
        1 => 0,
        2 => 1,
        _ => q * (q - 1) / 2 - 1,
    };
    FVector {
        counts: (0..=dim)
            .map(|d| bound_a(q, d).min(u64::MAX as u128) as u64)
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub d: usize,
    /// Faces of the simplex on `C(q+1, 2)` vertices.
    pub taylor_largest: u128,
    /// Faces of `Taylor(I²)`, a simplex on `s` vertices.
    pub taylor_actual: u128,
    pub bound_a: u128,
    pub bound_b: u128,
    pub betti: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub q: usize,
    pub s: usize,
    pub rows: Vec<BoundRow>,
}

/// Bounds on `β_d(I²)` for `d = 0, ..., C(q, 2)`, with the exact Betti
/// numbers when `q <= enum_q_cap`.
pub fn bound_table(
    ideal: &MonomialIdeal,
    opts: &ComputeOptions,
    enum_q_cap: usize,
) -> Result<BoundTable> {
    let (l2, record) = build_l2i(ideal)?;
    let q = ideal.q();
    let betti = if q <= enum_q_cap {
        let square = ideal.power(2)?;
        Some(betti_numbers(&l2, &square, opts)?)
    } else {
        None
    };
    let largest = q * (q + 1) / 2;
    let rows = (0..=q * (q.saturating_sub(1)) / 2)
        .map(|d| BoundRow {
            d,
            taylor_largest: taylor_bound(largest, d),
            taylor_actual: taylor_bound(record.s, d),
            bound_a: bound_a(q, d),
            bound_b: bound_b(&record, d),
            betti: betti.as_ref().map(|b| b.get(d)),
        })
        .collect();
    Ok(BoundTable {
        q,
        s: record.s,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;
    use crate::simplicial::DEFAULT_FACE_CAP;

    fn ideal(s: &str) -> MonomialIdeal {
        parse_ideal(s, None).unwrap().ideal
    }

    fn ids(q: usize, pairs: &[(usize, usize)]) -> Face {
        pairs
            .iter()
            .map(|&(i, j)| PairVertex::new(i, j).id(q))
            .collect()
    }

    #[test]
    fn pair_ids_round_trip() {
        for q in 1..=MAX_Q {
            let all: Vec<PairVertex> = PairVertex::all(q).collect();
            for (k, p) in all.iter().enumerate() {
                assert_eq!(p.id(q), k as u32);
                assert_eq!(PairVertex::from_id(q, k as u32), *p);
            }
        }
        assert_eq!(PairVertex::new(3, 1), PairVertex::new(1, 3));
    }

    #[test]
    fn small_l2q() {
        assert_eq!(build_l2q(1).unwrap().facets(), &[ids(1, &[(1, 1)])]);
        let two = build_l2q(2).unwrap();
        assert_eq!(
            two.facets(),
            &[ids(2, &[(1, 1), (1, 2)]), ids(2, &[(1, 2), (2, 2)])]
        );
        assert!(build_l2q(0).is_err());
        assert!(matches!(build_l2q(16), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn l2_4_shape() {
        let c = build_l2q(4).unwrap();
        assert_eq!(c.num_vertices(), 10);
        let mut dims: Vec<isize> = c.facets().iter().map(|f| f.dim()).collect();
        dims.sort();
        assert_eq!(dims, [3, 3, 3, 3, 5]);
        assert_eq!(
            c.f_vector(DEFAULT_FACE_CAP).unwrap().counts,
            [10, 27, 32, 19, 6, 1]
        );
    }

    #[test]
    fn l2_3_leaf_with_joint() {
        let c = build_l2q(3).unwrap();
        let f1 = ids(3, &[(1, 1), (1, 2), (1, 3)]);
        let idx = c.facets().iter().position(|&f| f == f1).unwrap();
        let active: Vec<usize> = (0..c.facets().len()).collect();
        let joint = crate::simplicial::leaf_joint(c.facets(), &active, idx)
            .unwrap()
            .unwrap();
        assert_eq!(c.facets()[joint], ids(3, &[(1, 2), (1, 3), (2, 3)]));
        // l11 and l22 share no facet
        let sub = c.induced_subcomplex(ids(3, &[(1, 1), (2, 2)]));
        assert_eq!(sub.facets().len(), 2);
        assert!(!sub.is_connected());
    }

    #[test]
    fn running_ideal_deletes_l13() {
        let i = ideal("abe,bc,cdf,ad");
        let (l2, record) = build_l2i(&i).unwrap();
        assert_eq!(
            record.deleted.iter().copied().collect::<Vec<_>>(),
            [PairVertex::new(1, 3)]
        );
        assert_eq!(record.s, 9);
        assert_eq!(record.t, [1, 0, 1, 0]);
        assert!(record.is_consistent());
        let mut dims: Vec<isize> = l2.complex().facets().iter().map(|f| f.dim()).collect();
        dims.sort();
        assert_eq!(dims, [2, 2, 3, 3, 4]);
        let expected = build_l2q(4)
            .unwrap()
            .delete_vertex(PairVertex::new(1, 3).id(4))
            .unwrap();
        assert_eq!(l2.complex(), &expected);
        for d in 0..5 {
            assert_eq!(
                bound_b(&record, d),
                l2.complex()
                    .f_vector_enumerated(DEFAULT_FACE_CAP)
                    .unwrap()
                    .get(d) as u128
            );
        }
        assert_eq!(bound_b(&record, 1), 20);
        assert_eq!(bound_b(&record, 3), 7);
    }

    #[test]
    fn first_square_sees_only_its_vertex() {
        let i = ideal("abe,bc,cdf,ad");
        let (l2, _) = build_l2i(&i).unwrap();
        let m1 = &i.gens()[0];
        let sub = l2.restrict_divides(&m1.mul(m1)).unwrap();
        assert_eq!(
            sub.complex().facets(),
            &[Face::singleton(PairVertex::new(1, 1).id(4))]
        );
    }

    #[test]
    fn no_deletions_for_variables_and_sharp_example() {
        for s in ["x,y,z,w", "xabc,yade,zbdf,wcef"] {
            let (l2, record) = build_l2i(&ideal(s)).unwrap();
            assert!(record.deleted.is_empty());
            assert_eq!(record.s, 10);
            assert_eq!(l2.complex(), &build_l2q(4).unwrap());
        }
    }

    #[test]
    fn equal_products_keep_one_vertex() {
        // ab·cd = ac·bd = abcd
        let i = ideal("ab,cd,ac,bd");
        let (l2, record) = build_l2i(&i).unwrap();
        assert!(record.deleted.contains(&PairVertex::new(1, 2)));
        assert!(!record.deleted.contains(&PairVertex::new(3, 4)));
        assert_eq!(record.s, i.power(2).unwrap().q());
        assert_eq!(l2.labels().len(), record.s);
    }

    #[test]
    fn non_squarefree_rejected() {
        match build_l2i(&ideal("x^2,y")) {
            Err(Error::NotSquareFree(m)) => assert_eq!(m, "x^2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(bound_a(4, 0), 10);
        assert_eq!(bound_a(4, 2), 32);
        assert_eq!(bound_a(4, 6), 0);
        assert_eq!(taylor_bound(10, 2), 120);
        assert_eq!(taylor_bound(9, 3), 126);
        assert_eq!(taylor_bound(5, 5), 0);
        let none = DeletionRecord::new(4, BTreeSet::new());
        for d in 0..8 {
            assert_eq!(bound_b(&none, d), bound_a(4, d));
        }
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for q in 1..=6 {
            let enumerated = build_l2q(q)
                .unwrap()
                .f_vector_enumerated(DEFAULT_FACE_CAP)
                .unwrap();
            assert_eq!(l2q_f_vector(q), enumerated, "q = {q}");
        }
    }

    #[test]
    fn principal_bound_table() {
        let t = bound_table(
            &ideal("abc"),
            &ComputeOptions::default(),
            DEFAULT_ENUM_Q_CAP,
        )
        .unwrap();
        assert_eq!(t.rows.len(), 1);
        let r = &t.rows[0];
        assert_eq!(
            (
                r.taylor_largest,
                r.taylor_actual,
                r.bound_a,
                r.bound_b,
                r.betti
            ),
            (1, 1, 1, 1, Some(1))
        );
    }
}
