//! Test-only reference implementations, written without the library's
//! homology, lattice or restriction code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use l2res::ideal::MonomialIdeal;
use l2res::monomial::Monomial;
use l2res::parse::parse_ideal;

pub fn ideal(s: &str) -> MonomialIdeal {
    parse_ideal(s, None).unwrap().ideal
}

/// Rank of an integer matrix over the rationals, by fraction-free
/// elimination in `i128` (panics on overflow).
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = a[rank][col]
                    .checked_mul(a[r][c])
                    .and_then(|x| x.checked_sub(a[r][col].checked_mul(a[rank][c])?))
                    .expect("overflow in reference elimination");
                a[r][c] = v / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

/// Rank over GF(2).
pub fn rank_gf2(rows: &[Vec<i64>]) -> usize {
    let mut bits: Vec<u128> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &x)| x % 2 != 0)
                .fold(0u128, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut rank = 0;
    for col in 0..128 {
        let Some(p) = (rank..bits.len()).find(|&r| bits[r] >> col & 1 == 1) else {
            continue;
        };
        bits.swap(rank, p);
        for r in 0..bits.len() {
            if r != rank && bits[r] >> col & 1 == 1 {
                bits[r] ^= bits[rank];
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefField {
    Rational,
    Gf2,
}

/// Reduced homology ranks `H̃_{-1}, H̃_0, ...` of the complex whose faces
/// (as sorted vertex lists, closed under subsets, including the empty face)
/// are given.
pub fn reduced_homology(faces: &[Vec<u32>], field: RefField) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(Vec::len).max().unwrap();
    let by_size: Vec<Vec<&Vec<u32>>> = (0..=top)
        .map(|k| faces.iter().filter(|f| f.len() == k).collect())
        .collect();
    let rank_of = |k: usize| -> usize {
        // boundary from size-k faces to size-(k-1) faces
        if k == 0 || k > top {
            return 0;
        }
        let index: BTreeMap<&Vec<u32>, usize> = by_size[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|f| {
                let mut row = vec![0i64; by_size[k - 1].len()];
                for pos in 0..f.len() {
                    let mut g = (*f).clone();
                    g.remove(pos);
                    row[index[&g]] = if pos % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        match field {
            RefField::Rational => rank_rational(&rows),
            RefField::Gf2 => rank_gf2(&rows),
        }
    };
    let ranks: Vec<usize> = (0..=top + 1).map(rank_of).collect();
    (0..=top)
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// Every subset (as a sorted list) of `0..n` passing `keep`.
pub fn subsets_where(n: usize, mut keep: impl FnMut(&[u32]) -> bool) -> Vec<Vec<u32>> {
    (0u64..1 << n)
        .map(|mask| {
            (0..n as u32)
                .filter(|&i| mask >> i & 1 == 1)
                .collect::<Vec<u32>>()
        })
        .filter(|s| keep(s))
        .collect()
}

fn in_ideal(gens: &[Monomial], e: &[u32]) -> bool {
    gens.iter()
        .any(|g| g.exponents().iter().zip(e).all(|(a, b)| a <= b))
}

/// Multigraded Betti numbers of `ideal` from the upper Koszul complexes
/// `K^b = {X ⊆ supp(b) squarefree : b / x^X ∈ I}`, scanning every divisor
/// `b` of the lcm of all generators: `β_{d,b} = rank H̃_{d-1}(K^b)`.
pub fn koszul_betti(ideal: &MonomialIdeal, field: RefField) -> BTreeMap<(usize, Monomial), u64> {
    let gens = ideal.gens();
    let n = ideal.vars().len();
    let top: Vec<u32> = (0..n)
        .map(|x| gens.iter().map(|g| g.exponents()[x]).max().unwrap())
        .collect();
    let mut out = BTreeMap::new();
    let mut b = vec![0u32; n];
    loop {
        if in_ideal(gens, &b) {
            let support: Vec<usize> = (0..n).filter(|&x| b[x] > 0).collect();
            let faces = subsets_where(support.len(), |s| {
                let mut e = b.clone();
                for &k in s {
                    e[support[k as usize]] -= 1;
                }
                in_ideal(gens, &e)
            });
            for (i, &r) in reduced_homology(&faces, field).iter().enumerate() {
                if r > 0 {
                    out.insert((i, Monomial::from_exponents(b.clone())), r as u64);
                }
            }
        }
        // next exponent vector below `top`
        let mut x = 0;
        loop {
            if x == n {
                return out;
            }
            if b[x] < top[x] {
                b[x] += 1;
                break;
            }
            b[x] = 0;
            x += 1;
        }
    }
}

pub fn totals(graded: &BTreeMap<(usize, Monomial), u64>) -> Vec<u64> {
    let mut t: Vec<u64> = Vec::new();
    for ((d, _), r) in graded {
        if t.len() <= *d {
            t.resize(d + 1, 0);
        }
        t[*d] += r;
    }
    t
}

/// All faces of the complex generated by `facets` (vertex lists), as sorted
/// lists, including the empty face.
pub fn all_faces(facets: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut set = std::collections::BTreeSet::new();
    set.insert(Vec::new());
    for f in facets {
        for mask in 0u64..1 << f.len() {
            let mut s: Vec<u32> = (0..f.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| f[i])
                .collect();
            s.sort();
            set.insert(s);
        }
    }
    set.into_iter().collect()
}

/// Connected components of the 1-skeleton, counted by union-find.
pub fn components(facets: &[Vec<u32>]) -> usize {
    let verts: std::collections::BTreeSet<u32> = facets.iter().flatten().copied().collect();
    let mut parent: BTreeMap<u32, u32> = verts.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<u32, u32>, v: u32) -> u32 {
        let up = p[&v];
        if up == v {
            return v;
        }
        let r = find(p, up);
        p.insert(v, r);
        r
    }
    for f in facets {
        for w in f.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent.insert(a, b);
        }
    }
    verts.iter().filter(|&&v| find(&mut parent, v) == v).count()
}

#[test]
fn reference_ranks() {
    // hollow triangle
    let faces = all_faces(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert_eq!(reduced_homology(&faces, RefField::Rational), [0, 0, 1]);
    assert_eq!(reduced_homology(&[vec![]], RefField::Gf2), [1]);
    // J = (x, y, z, w): Koszul resolution, ranks C(4, d+1)
    assert_eq!(
        totals(&koszul_betti(&ideal("x,y,z,w"), RefField::Rational)),
        [4, 6, 4, 1]
    );
    assert_eq!(rank_rational(&[vec![2, 4], vec![1, 2]]), 1);
    assert_eq!(rank_gf2(&[vec![2, 4], vec![1, 3]]), 1);
}
