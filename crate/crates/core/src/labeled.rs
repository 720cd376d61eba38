//! Monomial-labeled complexes, resolution-support criteria, and exact
//! multigraded Betti numbers.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{reduced_homology_ranks, ComputeOptions};
use crate::ideal::{lcm_lattice, MonomialIdeal};
use crate::monomial::{Monomial, VariableTable};
use crate::simplicial::{Connectivity, SimplicialComplex};

/// Default cap on the number of generators the Taylor complex accepts.
pub const DEFAULT_TAYLOR_CAP: usize = 22;

/// A simplicial complex with a monomial label on every vertex. Faces are
/// labeled by the lcm of their vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    complex: SimplicialComplex,
    labels: BTreeMap<u32, Monomial>,
    vars: VariableTable,
}

impl LabeledComplex {
    /// Labels for vertices outside the complex are dropped.
    pub fn new(
        complex: SimplicialComplex,
        mut labels: BTreeMap<u32, Monomial>,
        vars: VariableTable,
    ) -> Result<Self> {
        labels.retain(|v, _| complex.vertices().contains(*v));
        if let Some(v) = complex.vertices().iter().find(|v| !labels.contains_key(v)) {
            return Err(Error::Invalid(format!("vertex {v} has no label")));
        }
        if let Some(bad) = labels.values().find(|m| m.nvars() != vars.len()) {
            return Err(Error::VariableMismatch {
                left: vars.len(),
                right: bad.nvars(),
            });
        }
        Ok(LabeledComplex {
            complex,
            labels,
            vars,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn labels(&self) -> &BTreeMap<u32, Monomial> {
        &self.labels
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn label(&self, v: u32) -> Option<&Monomial> {
        self.labels.get(&v)
    }

    /// lcm of the vertex labels; the empty face is labeled 1.
    pub fn face_label(&self, face: Face) -> Monomial {
        face.iter()
            .fold(self.vars.one(), |acc, v| acc.lcm(&self.labels[&v]))
    }

    /// Vertices whose label divides `m`.
    pub fn vertices_dividing(&self, m: &Monomial) -> Face {
        self.labels
            .iter()
            .filter(|(_, l)| l.divides(m))
            .map(|(&v, _)| v)
            .collect()
    }

    fn with_complex(&self, complex: SimplicialComplex) -> LabeledComplex {
        let labels = self
            .labels
            .iter()
            .filter(|(v, _)| complex.vertices().contains(**v))
            .map(|(&v, l)| (v, l.clone()))
            .collect();
        LabeledComplex {
            complex,
            labels,
            vars: self.vars.clone(),
        }
    }

    /// `Δ_m`: the subcomplex induced on vertices whose labels divide `m`.
    pub fn restrict_divides(&self, m: &Monomial) -> Result<LabeledComplex> {
        self.check_vars(m)?;
        let w = self.vertices_dividing(m);
        Ok(self.with_complex(self.complex.induced_subcomplex(w)))
    }

    /// `Δ_{<m}`: all faces whose label strictly divides `m`. This is not an
    /// induced subcomplex in general.
    pub fn restrict_strict(&self, m: &Monomial) -> Result<LabeledComplex> {
        self.check_vars(m)?;
        let w = self.vertices_dividing(m);
        let support: Vec<usize> = (0..m.nvars()).filter(|&x| m.exponents()[x] > 0).collect();
        let mut candidates = Vec::new();
        for &facet in self.complex.facets() {
            let s = facet.intersection(w);
            if s.is_empty() {
                continue;
            }
            if self.face_label(s) != *m {
                candidates.push(s);
                continue;
            }
            // a subset of s misses the top label exactly when, for some
            // variable, it avoids every vertex attaining m's exponent there
            for &x in &support {
                let attaining: Face = s
                    .iter()
                    .filter(|v| self.labels[v].exponents()[x] == m.exponents()[x])
                    .collect();
                candidates.push(s.difference(attaining));
            }
        }
        Ok(self.with_complex(SimplicialComplex::from_facets(candidates)))
    }

    fn check_vars(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.vars.len() {
            return Err(Error::VariableMismatch {
                left: self.vars.len(),
                right: m.nvars(),
            });
        }
        Ok(())
    }

    /// Checks that the vertex labels are exactly the minimal generators of
    /// `ideal`, each used once.
    pub fn check_labels_match(&self, ideal: &MonomialIdeal) -> Result<()> {
        if self.vars != *ideal.vars() {
            return Err(Error::LabelMismatch(format!(
                "complex variables {:?} differ from ideal variables {:?}",
                self.vars,
                ideal.vars()
            )));
        }
        let mut labels: Vec<&Monomial> = self.labels.values().collect();
        let mut gens: Vec<&Monomial> = ideal.gens().iter().collect();
        labels.sort();
        gens.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::LabelMismatch("repeated vertex label".into()));
        }
        if labels != gens {
            let missing: Vec<String> = gens
                .iter()
                .filter(|g| !labels.contains(g))
                .map(|g| self.vars.format(g))
                .collect();
            let extra: Vec<String> = labels
                .iter()
                .filter(|l| !gens.contains(l))
                .map(|l| self.vars.format(l))
                .collect();
            return Err(Error::LabelMismatch(format!(
                "missing generators [{}], labels that are not generators [{}]",
                missing.join(", "),
                extra.join(", ")
            )));
        }
        Ok(())
    }
}

/// The full simplex on the minimal generators, vertex `i` labeled `m_{i+1}`.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<LabeledComplex> {
    taylor_complex_capped(ideal, DEFAULT_TAYLOR_CAP)
}

pub fn taylor_complex_capped(ideal: &MonomialIdeal, cap: usize) -> Result<LabeledComplex> {
    let q = ideal.q();
    if q > cap || q > crate::face::MAX_VERTICES as usize {
        return Err(Error::ResourceLimit {
            what: format!("Taylor complex on {q} generators"),
            limit: cap,
            flag: "--taylor-cap",
        });
    }
    let complex = SimplicialComplex::simplex(Face::range(q as u32));
    let labels = ideal
        .gens()
        .iter()
        .enumerate()
        .map(|(i, g)| (i as u32, g.clone()))
        .collect();
    LabeledComplex::new(complex, labels, ideal.vars().clone())
}

/// Outcome of a support criterion; on failure it carries the first failing
/// multidegree in the lattice order and, for the homological criterion, the
/// lowest dimension with nonzero reduced homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCheck {
    pub supported: bool,
    pub witness: Option<Monomial>,
    pub witness_degree: Option<usize>,
}

impl SupportCheck {
    fn pass() -> Self {
        SupportCheck {
            supported: true,
            witness: None,
            witness_degree: None,
        }
    }
}

/// Connectivity criterion for quasi-trees: `Δ` supports a resolution of `I`
/// iff every `Δ_m`, `m` in the lcm lattice, is empty or connected.
///
/// Refuses complexes that are not quasi-forests.
pub fn supports_resolution_quasitree(
    complex: &LabeledComplex,
    ideal: &MonomialIdeal,
) -> Result<SupportCheck> {
    complex.check_labels_match(ideal)?;
    if complex.complex().quasi_forest_order().is_none() {
        return Err(Error::NotQuasiForest);
    }
    let lattice = lcm_lattice(ideal);
    let failure = lattice.elements().par_iter().find_first(|m| {
        let w = complex.vertices_dividing(m);
        complex.complex().induced_subcomplex(w).connectivity() == Connectivity::Disconnected
    });
    Ok(match failure {
        None => SupportCheck::pass(),
        Some(m) => SupportCheck {
            supported: false,
            witness: Some(m.clone()),
            witness_degree: None,
        },
    })
}

/// Acyclicity criterion: `Δ` supports a resolution of `I` iff every `Δ_m`,
/// `m` in the lcm lattice, is empty or has vanishing reduced homology.
pub fn supports_resolution_homological(
    complex: &LabeledComplex,
    ideal: &MonomialIdeal,
    opts: &ComputeOptions,
) -> Result<SupportCheck> {
    complex.check_labels_match(ideal)?;
    let lattice = lcm_lattice(ideal);
    let results: Vec<Result<Option<usize>>> = lattice
        .elements()
        .par_iter()
        .map(|m| {
            let w = complex.vertices_dividing(m);
            let sub = complex.complex().induced_subcomplex(w);
            if sub.is_empty() {
                return Ok(None);
            }
            let h = reduced_homology_ranks(&sub, opts)?;
            Ok(h.first_nonzero().map(|d| d.max(0) as usize))
        })
        .collect();
    for (m, r) in lattice.elements().iter().zip(results) {
        if let Some(d) = r? {
            return Ok(SupportCheck {
                supported: false,
                witness: Some(m.clone()),
                witness_degree: Some(d),
            });
        }
    }
    Ok(SupportCheck::pass())
}

/// Betti numbers, total and (optionally) multigraded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub total: BTreeMap<usize, u64>,
    pub graded: Option<BTreeMap<(usize, Monomial), u64>>,
}

impl BettiTable {
    pub fn from_totals(totals: &[u64]) -> Self {
        BettiTable {
            total: totals
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, r)| r > 0)
                .collect(),
            graded: None,
        }
    }

    pub fn get(&self, d: usize) -> u64 {
        self.total.get(&d).copied().unwrap_or(0)
    }

    /// Totals `β_0, ..., β_D` up to the last nonzero entry.
    pub fn totals(&self) -> Vec<u64> {
        let len = self.total.keys().next_back().map_or(0, |&d| d + 1);
        (0..len).map(|d| self.get(d)).collect()
    }

    /// Totals padded with zeros (or truncated) to `len` entries.
    pub fn totals_padded(&self, len: usize) -> Vec<u64> {
        (0..len).map(|d| self.get(d)).collect()
    }

    /// Drops the multigraded part.
    pub fn without_graded(&self) -> BettiTable {
        BettiTable {
            total: self.total.clone(),
            graded: None,
        }
    }

    /// True when `total[d] = Σ_m graded[(d, m)]` for every `d`.
    pub fn is_consistent(&self) -> bool {
        let Some(graded) = &self.graded else {
            return true;
        };
        let mut sums: BTreeMap<usize, u64> = BTreeMap::new();
        for ((d, _), &r) in graded {
            *sums.entry(*d).or_default() += r;
        }
        sums.retain(|_, r| *r > 0);
        sums == self.total
    }
}

/// Exact Betti numbers of `ideal` from a complex supporting its resolution:
/// `β_{d,m} = rank H̃_{d-1}(Δ_{<m})` for `m` in the lcm lattice.
///
/// Fails with [`Error::Unsupported`] (carrying the witness) when the
/// acyclicity criterion does not hold.
pub fn betti_numbers(
    complex: &LabeledComplex,
    ideal: &MonomialIdeal,
    opts: &ComputeOptions,
) -> Result<BettiTable> {
    let check = supports_resolution_homological(complex, ideal, opts)?;
    if !check.supported {
        return Err(Error::Unsupported {
            witness: check
                .witness
                .map(|m| ideal.format_monomial(&m))
                .unwrap_or_default(),
            degree: check.witness_degree,
        });
    }
    betti_numbers_unchecked(complex, ideal, opts)
}

/// [`betti_numbers`] without verifying the support criterion first.
pub fn betti_numbers_unchecked(
    complex: &LabeledComplex,
    ideal: &MonomialIdeal,
    opts: &ComputeOptions,
) -> Result<BettiTable> {
    let lattice = lcm_lattice(ideal);
    betti_over(complex, lattice.elements(), opts)
}

/// Multigraded ranks `rank H̃_{d-1}(Δ_{<m})` for the given multidegrees.
pub fn betti_over(
    complex: &LabeledComplex,
    multidegrees: &[Monomial],
    opts: &ComputeOptions,
) -> Result<BettiTable> {
    let per_degree: Vec<Result<Vec<(usize, u64)>>> = multidegrees
        .par_iter()
        .map(|m| {
            // outside the ideal the faces at or below m and strictly below m
            // coincide, so m contributes nothing
            if complex.vertices_dividing(m).is_empty() {
                return Ok(Vec::new());
            }
            let below = complex.restrict_strict(m)?;
            let h = reduced_homology_ranks(below.complex(), opts)?;
            Ok(h.ranks()
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 0)
                .map(|(i, &r)| (i, r as u64))
                .collect())
        })
        .collect();
    let mut table = BettiTable {
        total: BTreeMap::new(),
        graded: Some(BTreeMap::new()),
    };
    let graded = table.graded.as_mut().unwrap();
    for (m, entries) in multidegrees.iter().zip(per_degree) {
        // ranks()[i] is H̃_{i-1}, which contributes to β_i
        for (d, r) in entries? {
            graded.insert((d, m.clone()), r);
            *table.total.entry(d).or_default() += r;
        }
    }
    Ok(table)
}

/// Face counts of the complex, which bound the Betti numbers of any ideal
/// whose resolution it supports.
pub fn betti_upper_bounds(complex: &LabeledComplex, face_cap: usize) -> Result<BettiTable> {
    let f = complex.complex().f_vector(face_cap)?;
    Ok(BettiTable::from_totals(&f.counts))
}
