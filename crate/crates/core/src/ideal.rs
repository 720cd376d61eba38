//! Monomial ideals given by minimal generating sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VariableTable};

/// Keeps the monomials not strictly divisible by another list element.
/// Exact duplicates collapse onto their first occurrence; input order is kept.
pub fn minimalize(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    if let Some(bad) = gens.iter().find(|g| g.nvars() != first.nvars()) {
        return Err(Error::VariableMismatch {
            left: first.nvars(),
            right: bad.nvars(),
        });
    }
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, h)| {
            if i == j {
                return false;
            }
            if h == g {
                // duplicates: keep the earliest
                j < i
            } else {
                h.divides(g)
            }
        });
        if !redundant {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: VariableTable,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn new(vars: VariableTable, gens: Vec<Monomial>) -> Result<Self> {
        Ok(Self::new_reporting(vars, gens)?.0)
    }

    /// Like [`MonomialIdeal::new`], also reporting whether `gens` was
    /// already a minimal generating set.
    pub fn new_reporting(vars: VariableTable, gens: Vec<Monomial>) -> Result<(Self, bool)> {
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        if let Some(bad) = gens.iter().find(|g| g.nvars() != vars.len()) {
            return Err(Error::VariableMismatch {
                left: vars.len(),
                right: bad.nvars(),
            });
        }
        if gens.iter().any(Monomial::is_one) {
            return Err(Error::UnitIdeal);
        }
        let minimal = minimalize(&gens)?;
        let was_minimal = minimal.len() == gens.len();
        Ok((
            MonomialIdeal {
                vars,
                gens: minimal,
            },
            was_minimal,
        ))
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Number of minimal generators.
    pub fn q(&self) -> usize {
        self.gens.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        self.vars.format(m)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.vars.format(g)).collect()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `I^r`: all products of `r` generators, index multisets taken in
    /// lexicographic order, then minimalized.
    pub fn power(&self, r: u32) -> Result<MonomialIdeal> {
        if r == 0 {
            return Err(Error::InvalidPower(r));
        }
        let q = self.q();
        let mut products = Vec::new();
        let mut idx = vec![0usize; r as usize];
        loop {
            let prod = idx
                .iter()
                .fold(self.vars.one(), |acc, &i| acc.mul(&self.gens[i]));
            products.push(prod);
            // next nondecreasing index tuple
            let mut k = idx.len();
            while k > 0 && idx[k - 1] == q - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            let v = idx[k - 1];
            for slot in &mut idx[k..] {
                *slot = v;
            }
        }
        Ok(MonomialIdeal {
            vars: self.vars.clone(),
            gens: minimalize(&products)?,
        })
    }

    /// Products `m_i m_j` for `i <= j`, in lexicographic order of `(i, j)`
    /// (0-based indices).
    pub fn pair_products(&self) -> Vec<((usize, usize), Monomial)> {
        let q = self.q();
        let mut out = Vec::with_capacity(q * (q + 1) / 2);
        for i in 0..q {
            for j in i..q {
                out.push(((i, j), self.gens[i].mul(&self.gens[j])));
            }
        }
        out
    }

    pub fn lcm_lattice(&self) -> MultidegreeSet {
        lcm_lattice(self)
    }
}

pub fn ideal_power(ideal: &MonomialIdeal, r: u32) -> Result<MonomialIdeal> {
    ideal.power(r)
}

/// Deduplicated set of multidegrees, sorted by the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeSet {
    elements: Vec<Monomial>,
}

impl MultidegreeSet {
    pub fn from_iter_dedup(items: impl IntoIterator<Item = Monomial>) -> Self {
        let mut elements: Vec<Monomial> = items
            .into_iter()
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        elements.sort();
        MultidegreeSet { elements }
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.elements.iter()
    }
}

/// LCMs of all nonempty subsets of the generators, by closing the generator
/// set under `lcm` with a generator until no new element appears.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> MultidegreeSet {
    let gens = ideal.gens();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let l = f.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    MultidegreeSet::from_iter_dedup(seen)
}

/// Subset-enumeration variant of [`lcm_lattice`], limited to 20 generators.
pub fn lcm_lattice_enumerated(ideal: &MonomialIdeal) -> Result<MultidegreeSet> {
    let q = ideal.q();
    if q > 20 {
        return Err(Error::ResourceLimit {
            what: format!("subset enumeration over {q} generators"),
            limit: 20,
            flag: "--taylor-cap",
        });
    }
    let gens = ideal.gens();
    let all = (1u32..(1 << q)).map(|mask| {
        (0..q)
            .filter(|i| mask >> i & 1 == 1)
            .fold(ideal.vars().one(), |acc, i| acc.lcm(&gens[i]))
    });
    Ok(MultidegreeSet::from_iter_dedup(all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn ideal(s: &str) -> MonomialIdeal {
        parse_ideal(s, None).unwrap().ideal
    }

    fn strs(i: &MonomialIdeal, ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| i.format_monomial(m)).collect()
    }

    #[test]
    fn minimalize_examples() {
        let i = ideal("x,y,z");
        let x = i.gens()[0].clone();
        let y = i.gens()[1].clone();
        let xy = x.mul(&y);
        assert_eq!(
            minimalize(&[x.clone(), xy, y.clone()]).unwrap(),
            vec![x.clone(), y]
        );
        assert!(matches!(minimalize(&[]), Err(Error::EmptyGenerators)));
        assert_eq!(minimalize(&[x.clone(), x.clone()]).unwrap(), vec![x]);

        let j = ideal("abe,bc,cdf,ad");
        assert_eq!(minimalize(j.gens()).unwrap().len(), 4);
    }

    #[test]
    fn square_of_three_generators_is_minimal() {
        // (ab, bc, ad)^2: all six products pairwise incomparable
        let i = ideal("ab,bc,ad");
        let products: Vec<Monomial> = i.pair_products().into_iter().map(|(_, m)| m).collect();
        for (k, a) in products.iter().enumerate() {
            for (l, b) in products.iter().enumerate() {
                if k != l {
                    assert!(!a.divides(b));
                }
            }
        }
        assert_eq!(minimalize(&products).unwrap().len(), 6);
        assert_eq!(i.power(2).unwrap().q(), 6);
    }

    #[test]
    fn power_examples() {
        let p = ideal("ab").power(2).unwrap();
        assert_eq!(p.generator_strings(), ["a^2b^2"]);
        assert_eq!(ideal("x,y,z,w").power(2).unwrap().q(), 10);
        assert_eq!(ideal("abe,bc,cdf,ad").power(2).unwrap().q(), 9);
        assert!(matches!(ideal("x").power(0), Err(Error::InvalidPower(0))));
        assert_eq!(ideal("x,y").power(3).unwrap().q(), 4);
    }

    #[test]
    fn lattice_examples() {
        let i = ideal("ab");
        assert_eq!(strs(&i, lcm_lattice(&i).elements()), ["ab"]);
        let i = ideal("ab,bc");
        assert_eq!(strs(&i, lcm_lattice(&i).elements()), ["ab", "bc", "abc"]);
        let i = ideal("x,y,z");
        let l = lcm_lattice(&i);
        assert_eq!(l.len(), 7);
        assert_eq!(l, lcm_lattice_enumerated(&i).unwrap());
    }

    #[test]
    fn zero_and_unit_rejected() {
        let vars = VariableTable::standard(2);
        assert!(matches!(
            MonomialIdeal::new(vars.clone(), vec![]),
            Err(Error::ZeroIdeal)
        ));
        assert!(matches!(
            MonomialIdeal::new(vars.clone(), vec![vars.one()]),
            Err(Error::UnitIdeal)
        ));
    }
}
