//! Reduced simplicial homology over exact coefficient fields.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::simplicial::{SimplicialComplex, DEFAULT_FACE_CAP};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rationals, via fraction-free integer elimination.
    #[default]
    Rational,
    /// The prime field `GF(p)`.
    Prime(u64),
}

impl Field {
    pub fn gf(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 32) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("gf:{p}")))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "rational" | "rationals" | "q" | "qq" => Ok(Field::Rational),
            "gf2" => Ok(Field::Prime(2)),
            _ => {
                let p = t
                    .strip_prefix("gf:")
                    .or_else(|| t.strip_prefix("gf"))
                    .and_then(|rest| rest.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidField(s.to_string()))?;
                Field::gf(p).map_err(|_| Error::InvalidField(s.to_string()))
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field and resource cap shared by the homology-based computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeOptions {
    pub field: Field,
    pub face_cap: usize,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            field: Field::Rational,
            face_cap: DEFAULT_FACE_CAP,
        }
    }
}

impl ComputeOptions {
    pub fn with_field(field: Field) -> Self {
        ComputeOptions {
            field,
            ..Default::default()
        }
    }
}

/// Ranks of reduced homology `H̃_{-1}, H̃_0, ..., H̃_{dim}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    ranks: Vec<usize>,
}

impl ReducedHomology {
    /// Rank of `H̃_d` for `d >= -1`; zero above the dimension.
    pub fn rank(&self, d: isize) -> usize {
        if d < -1 {
            return 0;
        }
        self.ranks.get((d + 1) as usize).copied().unwrap_or(0)
    }

    /// The ranks starting at `H̃_{-1}`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Smallest `d` with `H̃_d != 0`.
    pub fn first_nonzero(&self) -> Option<isize> {
        self.ranks
            .iter()
            .position(|&r| r != 0)
            .map(|i| i as isize - 1)
    }

    /// Reduced Euler characteristic `sum_d (-1)^d rank H̃_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 1 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Reduced homology ranks of `complex`.
///
/// Cones are acyclic and are answered directly. When the complex has few
/// facets compared to its size, the homology is computed on the nerve of the
/// facet cover, which has the same homology; otherwise all faces are
/// enumerated and the boundary maps are reduced exactly.
pub fn reduced_homology_ranks(
    complex: &SimplicialComplex,
    opts: &ComputeOptions,
) -> Result<ReducedHomology> {
    let len = (complex.dim() + 2) as usize;
    if complex.is_empty() {
        return Ok(ReducedHomology { ranks: vec![1] });
    }
    if complex.is_cone() {
        return Ok(ReducedHomology {
            ranks: vec![0; len],
        });
    }
    let k = complex.facets().len();
    if k <= 24 && (1u128 << k) < complex.face_count_bound() {
        let nerve = nerve_faces(complex.facets());
        let mut ranks = ranks_from_faces(&nerve, opts.field);
        debug_assert!(ranks.iter().skip(len).all(|&r| r == 0));
        ranks.resize(len, 0);
        return Ok(ReducedHomology { ranks });
    }
    reduced_homology_enumerated(complex, opts)
}

/// Reduced homology from the full face enumeration, with no shortcuts.
pub fn reduced_homology_enumerated(
    complex: &SimplicialComplex,
    opts: &ComputeOptions,
) -> Result<ReducedHomology> {
    let faces = complex.faces(opts.face_cap)?;
    Ok(ReducedHomology {
        ranks: ranks_from_faces(&faces, opts.field),
    })
}

/// Faces of the nerve of `facets`: nonempty index sets whose facets share a
/// vertex, grouped by dimension.
fn nerve_faces(facets: &[Face]) -> Vec<Vec<Face>> {
    let mut by_dim: Vec<Vec<Face>> = Vec::new();
    fn walk(facets: &[Face], start: usize, chosen: Face, inter: Face, out: &mut Vec<Vec<Face>>) {
        for i in start..facets.len() {
            let next = inter.intersection(facets[i]);
            if next.is_empty() {
                continue;
            }
            let face = chosen.with(i as u32);
            let d = face.len() - 1;
            if out.len() <= d {
                out.resize(d + 1, Vec::new());
            }
            out[d].push(face);
            walk(facets, i + 1, face, next, out);
        }
    }
    walk(
        facets,
        0,
        Face::EMPTY,
        Face::from_bits(u128::MAX),
        &mut by_dim,
    );
    for group in &mut by_dim {
        group.sort_unstable();
    }
    by_dim
}

/// `ranks[d+1] = rank H̃_d` for a complex given by all of its nonempty faces.
fn ranks_from_faces(faces: &[Vec<Face>], field: Field) -> Vec<usize> {
    let top = faces.len();
    // boundary_ranks[d] = rank of the boundary map out of d-faces, d = 0..top-1
    let boundary_ranks: Vec<usize> = (0..top)
        .map(|d| {
            let columns = boundary_columns(faces, d);
            match field {
                Field::Rational => column_rank(&RationalDomain, columns),
                Field::Prime(p) => column_rank(&PrimeDomain { p }, columns),
            }
        })
        .collect();
    let count = |d: isize| -> usize {
        if d == -1 {
            1
        } else {
            faces.get(d as usize).map_or(0, Vec::len)
        }
    };
    let rank_out = |d: isize| -> usize {
        if d < 0 {
            0
        } else {
            boundary_ranks.get(d as usize).copied().unwrap_or(0)
        }
    };
    (-1..top as isize)
        .map(|d| count(d) - rank_out(d) - rank_out(d + 1))
        .collect()
}

/// Columns of the boundary map from `d`-faces to `(d-1)`-faces, with entries
/// `(row, ±1)`; for `d = 0` the single row is the empty face.
fn boundary_columns(faces: &[Vec<Face>], d: usize) -> Vec<Vec<(u32, i8)>> {
    if d == 0 {
        return faces[0].iter().map(|_| vec![(0, 1)]).collect();
    }
    let rows: HashMap<Face, u32> = faces[d - 1]
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i as u32))
        .collect();
    faces[d]
        .iter()
        .map(|&f| {
            let mut col: Vec<(u32, i8)> = f
                .iter()
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (rows[&f.without(v)], sign)
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

trait Domain {
    type E: Clone;

    fn signed(&self, s: i8) -> Self::E;
    /// Combination of `target` and `pivot` whose entry at the pivot's last
    /// row is zero. Both columns end at that row.
    fn eliminate(&self, target: &[(u32, Self::E)], pivot: &[(u32, Self::E)])
        -> Vec<(u32, Self::E)>;
    fn normalize(&self, col: &mut Vec<(u32, Self::E)>);
}

/// Rank of a matrix given by sparse columns, by column reduction on the
/// lowest nonzero row.
fn column_rank<D: Domain>(dom: &D, columns: Vec<Vec<(u32, i8)>>) -> usize {
    let mut pivots: HashMap<u32, Vec<(u32, D::E)>> = HashMap::new();
    for col in columns {
        let mut col: Vec<(u32, D::E)> = col.into_iter().map(|(r, s)| (r, dom.signed(s))).collect();
        while let Some(&(low, _)) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = dom.eliminate(&col, p),
                None => {
                    dom.normalize(&mut col);
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

struct PrimeDomain {
    p: u64,
}

impl PrimeDomain {
    fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

impl Domain for PrimeDomain {
    type E = u64;

    fn signed(&self, s: i8) -> u64 {
        if s >= 0 {
            s as u64 % self.p
        } else {
            self.p - (s.unsigned_abs() as u64 % self.p)
        }
    }

    fn eliminate(&self, target: &[(u32, u64)], pivot: &[(u32, u64)]) -> Vec<(u32, u64)> {
        // pivot is normalized to 1 at its last row
        let factor = target.last().unwrap().1;
        let neg = self.p - factor;
        merge(
            target,
            pivot,
            |a, b| {
                let v = (a + self.mul(neg, *b)) % self.p;
                (v != 0).then_some(v)
            },
            |b| {
                let v = self.mul(neg, *b);
                (v != 0).then_some(v)
            },
        )
    }

    fn normalize(&self, col: &mut Vec<(u32, u64)>) {
        let inv = self.inv(col.last().unwrap().1);
        for e in col.iter_mut() {
            e.1 = self.mul(e.1, inv);
        }
    }
}

struct RationalDomain;

impl Domain for RationalDomain {
    type E = BigInt;

    fn signed(&self, s: i8) -> BigInt {
        BigInt::from(s)
    }

    fn eliminate(&self, target: &[(u32, BigInt)], pivot: &[(u32, BigInt)]) -> Vec<(u32, BigInt)> {
        // pivot_low * target - target_low * pivot
        let a = pivot.last().unwrap().1.clone();
        let b = target.last().unwrap().1.clone();
        let g = a.gcd(&b);
        let (a, b) = (&a / &g, &b / &g);
        merge(
            target,
            pivot,
            |t, p| {
                let v = &a * t - &b * p;
                (!v.is_zero()).then_some(v)
            },
            |p| Some(-(&b * p)),
        )
    }

    fn normalize(&self, col: &mut Vec<(u32, BigInt)>) {
        let g = col.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.1));
        let flip = col.last().unwrap().1.is_negative();
        if g.is_one() && !flip {
            return;
        }
        for e in col.iter_mut() {
            e.1 = &e.1 / &g;
            if flip {
                e.1 = -&e.1;
            }
        }
    }
}

/// Sparse merge of two row-sorted columns. `both` combines entries present
/// in both; entries only in `left` get a zero partner; `right_only` maps
/// entries only in `right`.
fn merge<E, F, G>(left: &[(u32, E)], right: &[(u32, E)], both: F, right_only: G) -> Vec<(u32, E)>
where
    F: Fn(&E, &E) -> Option<E>,
    G: Fn(&E) -> Option<E>,
    E: Clone + ZeroLike,
{
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    let zero = E::zero_like(&left[0].1);
    while i < left.len() || j < right.len() {
        let li = left.get(i).map(|e| e.0);
        let rj = right.get(j).map(|e| e.0);
        match (li, rj) {
            (Some(a), Some(b)) if a == b => {
                if let Some(v) = both(&left[i].1, &right[j].1) {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                if let Some(v) = both(&left[i].1, &zero) {
                    out.push((a, v));
                }
                i += 1;
            }
            (Some(a), None) => {
                if let Some(v) = both(&left[i].1, &zero) {
                    out.push((a, v));
                }
                i += 1;
            }
            (_, Some(b)) => {
                if let Some(v) = right_only(&right[j].1) {
                    out.push((b, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

trait ZeroLike {
    fn zero_like(_: &Self) -> Self;
}

impl ZeroLike for u64 {
    fn zero_like(_: &Self) -> Self {
        0
    }
}

impl ZeroLike for BigInt {
    fn zero_like(_: &Self) -> Self {
        BigInt::zero()
    }
}
