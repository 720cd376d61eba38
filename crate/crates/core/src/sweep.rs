//! Seeded random square-free ideals and the invariant suite run on each.

use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::homology::ComputeOptions;
use crate::ideal::{ideal_power, minimalize, MonomialIdeal};
use crate::labeled::{
    betti_numbers, supports_resolution_homological, supports_resolution_quasitree, taylor_complex,
};
use crate::lsquared::{binomial, bound_a, bound_b, build_l2i, build_l2q, PairVertex};
use crate::monomial::{Monomial, VariableTable};
use crate::parse::parse_ideal;

pub const MAX_SWEEP_VARS: usize = 64;

/// Draws a square-free ideal: `n` uniform in `1..=max_n`, `q` uniform in
/// `1..=min(max_q, C(n, n/2))`, generators uniform nonempty variable subsets,
/// redrawn until none divides another.
pub fn random_squarefree_ideal(rng: &mut impl Rng, max_n: usize, max_q: usize) -> MonomialIdeal {
    assert!((1..=MAX_SWEEP_VARS).contains(&max_n) && max_q >= 1);
    let n = rng.random_range(1..=max_n);
    let antichain_max = binomial(n as u64, n as u64 / 2).min(max_q as u128) as usize;
    let q = rng.random_range(1..=antichain_max);
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    'attempt: loop {
        let mut masks: Vec<u64> = Vec::with_capacity(q);
        let mut rejected = 0;
        while masks.len() < q {
            let m = loop {
                let m = rng.random::<u64>() & full;
                if m != 0 {
                    break m;
                }
            };
            if masks.iter().any(|&g| g & m == g || g & m == m) {
                rejected += 1;
                if rejected > 1000 {
                    continue 'attempt;
                }
                continue;
            }
            masks.push(m);
        }
        let gens = masks.iter().map(|&m| Monomial::from_mask(m, n)).collect();
        return MonomialIdeal::new(VariableTable::standard(n), gens)
            .expect("antichain of nonempty subsets is a valid ideal");
    }
}

/// `count` ideals from the stream seeded by `seed`.
pub fn random_ideals(seed: u64, count: usize, max_n: usize, max_q: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_squarefree_ideal(&mut rng, max_n, max_q))
        .collect()
}

/// The invariants checked on each ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// A product of `r` generators divides or is divided by `m_i^r` only if
    /// every factor is `m_i` (for `r = 2`).
    PowerRigiditySquare,
    /// The same for `r = 3`.
    PowerRigidityCube,
    /// Every generator has a partner `m_j` with `m_i m_j` not divisible by
    /// any product avoiding `i, j`, and `m_i m_j` minimal in `I²`.
    MinimalPartner,
    /// No `ℓ_{i,i}` is deleted.
    DiagonalKept,
    /// Labels of `L²(I)` are the minimal generators of `I²`, once each, and
    /// `L²(I)` is induced in `L²_q`.
    LabelsMatchSquare,
    QuasiForest,
    /// Every `Δ_m` is empty or connected.
    SupportConnected,
    /// Every `Δ_m` is empty or acyclic over the chosen field.
    SupportAcyclic,
    /// `β_d(I²) <= faces of L²(I)` in every degree.
    BettiBelowFaces,
    /// Faces of `L²(I)` `<=` faces of `L²_q`.
    FacesBelowFullComplex,
    /// The closed face count of `L²(I)` matches enumeration.
    FaceCountFormula,
    /// Multigraded Betti numbers from `Taylor(I²)` and `L²(I)` agree.
    TaylorAgreement,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::PowerRigiditySquare,
        Check::PowerRigidityCube,
        Check::MinimalPartner,
        Check::DiagonalKept,
        Check::LabelsMatchSquare,
        Check::QuasiForest,
        Check::SupportConnected,
        Check::SupportAcyclic,
        Check::BettiBelowFaces,
        Check::FacesBelowFullComplex,
        Check::FaceCountFormula,
        Check::TaylorAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::PowerRigiditySquare => "power-rigidity-r2",
            Check::PowerRigidityCube => "power-rigidity-r3",
            Check::MinimalPartner => "minimal-partner",
            Check::DiagonalKept => "diagonal-kept",
            Check::LabelsMatchSquare => "labels-match-square",
            Check::QuasiForest => "quasi-forest",
            Check::SupportConnected => "support-connected",
            Check::SupportAcyclic => "support-acyclic",
            Check::BettiBelowFaces => "betti-below-faces",
            Check::FacesBelowFullComplex => "faces-below-full-complex",
            Check::FaceCountFormula => "face-count-formula",
            Check::TaylorAgreement => "taylor-agreement",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub max_q: usize,
    pub opts: ComputeOptions,
    /// Also compare against Betti numbers computed from `Taylor(I²)`.
    pub taylor: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 1,
            count: 100,
            max_n: 6,
            max_q: 4,
            opts: ComputeOptions::default(),
            taylor: false,
        }
    }
}

/// Outcome of one check on one ideal; `Err` carries a description.
pub type CheckResult = std::result::Result<(), String>;

#[derive(Clone, Debug)]
pub struct IdealOutcome {
    pub index: usize,
    pub ideal: String,
    pub results: Vec<(Check, CheckResult)>,
}

impl IdealOutcome {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub outcomes: Vec<IdealOutcome>,
    /// Sharpness fixture: Betti numbers of the square equal the face counts.
    pub fixture: Option<CheckResult>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(IdealOutcome::passed)
            && self.fixture.as_ref().is_none_or(|r| r.is_ok())
    }

    /// `(passed, run)` for one check across the sweep.
    pub fn tally(&self, check: Check) -> (usize, usize) {
        let mut passed = 0;
        let mut run = 0;
        for o in &self.outcomes {
            for (c, r) in &o.results {
                if *c == check {
                    run += 1;
                    passed += r.is_ok() as usize;
                }
            }
        }
        (passed, run)
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "seed {} count {} max-n {} max-q {} field {}\n",
            c.seed, c.count, c.max_n, c.max_q, c.opts.field
        );
        if self.outcomes.is_empty() {
            out.push_str("no ideals checked\n");
            return out;
        }
        let width = Check::ALL.iter().map(|c| c.name().len()).max().unwrap_or(0);
        for check in Check::ALL {
            let (passed, run) = self.tally(check);
            if run > 0 {
                let _ = writeln!(out, "{:width$}  {passed}/{run}", check.name());
            }
        }
        let ok = self.outcomes.iter().filter(|o| o.passed()).count();
        let _ = writeln!(
            out,
            "ideals passing every check: {ok}/{}",
            self.outcomes.len()
        );
        if let Some(fixture) = &self.fixture {
            let status = if fixture.is_ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "sharpness fixture ({SHARP_FIXTURE}): {status}");
            if let Err(e) = fixture {
                let _ = writeln!(out, "  {e}");
            }
        }
        let failures: Vec<&IdealOutcome> = self.outcomes.iter().filter(|o| !o.passed()).collect();
        if failures.is_empty() {
            out.push_str("counterexamples: none\n");
        } else {
            let _ = writeln!(out, "counterexamples: {}", failures.len());
            for o in failures {
                let _ = writeln!(out, "#{} {}", o.index, o.ideal);
                for (check, r) in &o.results {
                    if let Err(e) = r {
                        let _ = writeln!(out, "  {check}: {e}");
                    }
                }
            }
        }
        out
    }
}

/// Ideal whose square has `L²_4` as a minimal resolution.
pub const SHARP_FIXTURE: &str = "xabc,yade,zbdf,wcef";

pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let ideals = random_ideals(config.seed, config.count, config.max_n, config.max_q);
    let outcomes = ideals
        .par_iter()
        .enumerate()
        .map(|(index, ideal)| IdealOutcome {
            index,
            ideal: ideal.generator_strings().join(","),
            results: check_ideal(ideal, &config.opts, config.taylor),
        })
        .collect();
    let fixture = (config.count > 0).then(|| sharpness_check(&config.opts));
    SweepReport {
        config: config.clone(),
        outcomes,
        fixture,
    }
}

fn sharpness_check(opts: &ComputeOptions) -> CheckResult {
    let ideal = parse_ideal(SHARP_FIXTURE, None)
        .map_err(|e| e.to_string())?
        .ideal;
    let (l2, record) = build_l2i(&ideal).map_err(|e| e.to_string())?;
    if !record.deleted.is_empty() {
        return Err(format!("{} vertices deleted", record.deleted.len()));
    }
    let square = ideal.power(2).map_err(|e| e.to_string())?;
    let betti = betti_numbers(&l2, &square, opts).map_err(|e| e.to_string())?;
    let faces = crate::lsquared::l2q_f_vector(4).counts;
    let got = betti.totals_padded(faces.len());
    if got != faces {
        return Err(format!("betti {got:?} != faces {faces:?}"));
    }
    Ok(())
}

fn err<T: fmt::Display>(e: T) -> String {
    format!("error: {e}")
}

/// Runs every check on one square-free ideal. Errors inside a check are
/// reported as that check failing.
pub fn check_ideal(
    ideal: &MonomialIdeal,
    opts: &ComputeOptions,
    taylor: bool,
) -> Vec<(Check, CheckResult)> {
    let mut results = vec![
        (Check::PowerRigiditySquare, power_rigidity(ideal, 2)),
        (Check::PowerRigidityCube, power_rigidity(ideal, 3)),
        (Check::MinimalPartner, minimal_partner(ideal)),
    ];
    let built = build_l2i(ideal).and_then(|(l2, record)| Ok((l2, record, ideal_power(ideal, 2)?)));
    let (l2, record, square) = match built {
        Ok(b) => b,
        Err(e) => {
            let msg = err(e);
            results.extend(Check::ALL[3..].iter().map(|&c| (c, Err(msg.clone()))));
            return results;
        }
    };
    let q = ideal.q();

    results.push((
        Check::DiagonalKept,
        match record.deleted.iter().find(|p| p.is_diagonal()) {
            None if record.is_consistent() => Ok(()),
            None => Err("deletion record is inconsistent".into()),
            Some(p) => Err(format!("{p} deleted")),
        },
    ));

    results.push((
        Check::LabelsMatchSquare,
        (|| {
            l2.check_labels_match(&square).map_err(err)?;
            let full = build_l2q(q).map_err(err)?;
            if full.induced_subcomplex(l2.complex().vertices()) != *l2.complex() {
                return Err("not an induced subcomplex of L²_q".into());
            }
            for (&v, label) in l2.labels() {
                let p = PairVertex::from_id(q, v);
                if *label != ideal.gens()[p.i() - 1].mul(&ideal.gens()[p.j() - 1]) {
                    return Err(format!("{p} mislabeled"));
                }
            }
            Ok(())
        })(),
    ));

    results.push((
        Check::QuasiForest,
        if l2.complex().is_quasi_forest() {
            Ok(())
        } else {
            Err("no leaf order".into())
        },
    ));

    let describe = |w: &Option<Monomial>| {
        w.as_ref()
            .map(|m| square.format_monomial(m))
            .unwrap_or_default()
    };
    results.push((
        Check::SupportConnected,
        match supports_resolution_quasitree(&l2, &square) {
            Ok(c) if c.supported => Ok(()),
            Ok(c) => Err(format!("disconnected at {}", describe(&c.witness))),
            Err(e) => Err(err(e)),
        },
    ));
    results.push((
        Check::SupportAcyclic,
        match supports_resolution_homological(&l2, &square, opts) {
            Ok(c) if c.supported => Ok(()),
            Ok(c) => Err(format!(
                "homology in degree {} at {}",
                c.witness_degree.unwrap_or(0),
                describe(&c.witness)
            )),
            Err(e) => Err(err(e)),
        },
    ));

    let enumerated = l2.complex().f_vector_enumerated(opts.face_cap);
    let betti = betti_numbers(&l2, &square, opts);
    let top = q * (q + 1) / 2;

    results.push((
        Check::BettiBelowFaces,
        match &betti {
            Ok(b) => (0..top)
                .find(|&d| b.get(d) as u128 > bound_b(&record, d))
                .map_or(Ok(()), |d| {
                    Err(format!(
                        "β_{d} = {} exceeds {}",
                        b.get(d),
                        bound_b(&record, d)
                    ))
                }),
            Err(e) => Err(err(e)),
        },
    ));
    results.push((
        Check::FacesBelowFullComplex,
        (0..top)
            .find(|&d| bound_b(&record, d) > bound_a(q, d))
            .map_or(Ok(()), |d| {
                Err(format!(
                    "degree {d}: {} > {}",
                    bound_b(&record, d),
                    bound_a(q, d)
                ))
            }),
    ));
    results.push((
        Check::FaceCountFormula,
        match &enumerated {
            Ok(f) => (0..=top)
                .find(|&d| f.get(d) as u128 != bound_b(&record, d))
                .map_or(Ok(()), |d| {
                    Err(format!(
                        "degree {d}: formula {} vs {} faces",
                        bound_b(&record, d),
                        f.get(d)
                    ))
                }),
            Err(e) => Err(err(e)),
        },
    ));

    if taylor {
        results.push((
            Check::TaylorAgreement,
            (|| {
                let from_l2 = betti.as_ref().map_err(err)?;
                let t = taylor_complex(&square).map_err(err)?;
                let from_taylor = betti_numbers(&t, &square, opts).map_err(err)?;
                if from_taylor != *from_l2 {
                    return Err(format!(
                        "Taylor {:?} vs L² {:?}",
                        from_taylor.totals(),
                        from_l2.totals()
                    ));
                }
                Ok(())
            })(),
        ));
    }
    results
}

fn multisets(q: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, q: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for u in start..q {
            cur.push(u);
            go(u, q, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, q, r, &mut Vec::with_capacity(r), &mut out);
    out
}

fn power_rigidity(ideal: &MonomialIdeal, r: u32) -> CheckResult {
    let gens = ideal.gens();
    let tuples = multisets(gens.len(), r as usize);
    for (i, g) in gens.iter().enumerate() {
        let pure = g.pow(r);
        for u in &tuples {
            if u.iter().all(|&k| k == i) {
                continue;
            }
            let prod = u
                .iter()
                .fold(ideal.vars().one(), |acc, &k| acc.mul(&gens[k]));
            if prod.divides(&pure) || pure.divides(&prod) {
                let idx: Vec<String> = u.iter().map(|k| (k + 1).to_string()).collect();
                return Err(format!(
                    "m_{}^{r} comparable with product of ({})",
                    i + 1,
                    idx.join(",")
                ));
            }
        }
    }
    Ok(())
}

fn minimal_partner(ideal: &MonomialIdeal) -> CheckResult {
    let gens = ideal.gens();
    let q = gens.len();
    if q < 2 {
        return Ok(());
    }
    let products: Vec<Monomial> = ideal.pair_products().into_iter().map(|(_, m)| m).collect();
    let minimal = minimalize(&products).map_err(err)?;
    for i in 0..q {
        let found = (0..q).filter(|&j| j != i).any(|j| {
            let target = gens[i].mul(&gens[j]);
            let avoided = (0..q).filter(|&u| u != i && u != j).all(|u| {
                (u..q)
                    .filter(|&v| v != i && v != j)
                    .all(|v| !gens[u].mul(&gens[v]).divides(&target))
            });
            avoided && minimal.contains(&target)
        });
        if !found {
            return Err(format!("m_{} has no partner", i + 1));
        }
    }
    Ok(())
}
