//! The seeded sweep behind `biquad verify`: random smooth curves with
//! case-shaped supports, plus every family instance in range.

use std::collections::{BTreeMap, BTreeSet};

use biquad_core::classify::{enumerate_diagonal_auts, enumerate_swap_auts};
use biquad_core::families::{validate_family, FamilyId, FamilySpec};
use biquad_core::modp::smooth_by_reduction;
use biquad_core::smooth::corner_report;
use biquad_core::scalars::gcd;
use biquad_core::{BiPoly, Corner, CycloScalar, DiagonalAut};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::analysis::{CertAnalysis, Check};
use crate::report::{self, Report};

pub const MAX_ATTEMPTS: u32 = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Inclusive.
    pub a_range: (u32, u32),
    /// Inclusive.
    pub b_range: (u32, u32),
    pub trials: u32,
    pub seed: u64,
    /// Enumeration bound; `a * b` when absent.
    pub max_conductor: Option<u32>,
    pub families: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    Corners0,
    Corners2Adjacent,
    Corners2Opposite,
    Corners3,
    Corners4,
}

impl Pattern {
    pub const ALL: [Pattern; 5] = [
        Pattern::Corners0,
        Pattern::Corners2Adjacent,
        Pattern::Corners2Opposite,
        Pattern::Corners3,
        Pattern::Corners4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Corners0 => "corners-0",
            Pattern::Corners2Adjacent => "corners-2-adjacent",
            Pattern::Corners2Opposite => "corners-2-opposite",
            Pattern::Corners3 => "corners-3",
            Pattern::Corners4 => "corners-4",
        }
    }

    fn members(self, rng: &mut ChaCha8Rng) -> Vec<Corner> {
        use Corner::*;
        match self {
            Pattern::Corners0 => vec![],
            Pattern::Corners2Adjacent => [[Q1, Q2], [Q1, Q3], [Q2, Q4], [Q3, Q4]].choose(rng).unwrap().to_vec(),
            Pattern::Corners2Opposite => [[Q1, Q4], [Q2, Q3]].choose(rng).unwrap().to_vec(),
            Pattern::Corners3 => {
                let skip = *Corner::ALL.choose(rng).unwrap();
                Corner::ALL.into_iter().filter(|&q| q != skip).collect()
            }
            Pattern::Corners4 => Corner::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub pattern: Pattern,
    pub symmetrized: bool,
    pub seed_aut: DiagonalAut,
    pub poly: BiPoly,
}

fn coefficient(rng: &mut ChaCha8Rng) -> CycloScalar {
    let p: i64 = rng.gen_range(1..=5);
    let q: i64 = rng.gen_range(1..=3);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    CycloScalar::from_ratio(sign * p, q).expect("nonzero denominator")
}

/// One candidate: pick a corner pattern and a diagonal automorphism, keep the
/// monomials in one weight class that respect the pattern, and fill in small
/// random rationals. `None` when the pattern does not fit the class.
pub fn candidate(rng: &mut ChaCha8Rng, a: u32, b: u32) -> Option<Curve> {
    let pattern = *Pattern::ALL.choose(rng).unwrap();
    let members = pattern.members(rng);
    let n = rng.gen_range(2..=a * b);
    let d = DiagonalAut::new(n, rng.gen_range(0..n as i64), rng.gen_range(0..n as i64));
    let pure_off: Vec<(u32, u32)> = Corner::ALL
        .into_iter()
        .filter(|q| !members.contains(q))
        .map(|q| q.pure(a, b))
        .collect();
    let anchor = match pure_off.first() {
        Some(&p) => p,
        None => {
            let q = *members.choose(rng).unwrap();
            q.triple(a, b)[rng.gen_range(1..3)]
        }
    };
    let w = d.weight(anchor.0, anchor.1);
    let class: BTreeSet<(u32, u32)> = (0..=a)
        .flat_map(|i| (0..=b).map(move |j| (i, j)))
        .filter(|&(i, j)| d.weight(i, j) == w)
        .collect();
    if !pure_off.iter().all(|p| class.contains(p)) {
        return None;
    }
    let pure_on: BTreeSet<(u32, u32)> = members.iter().map(|q| q.pure(a, b)).collect();
    let mut support: BTreeSet<(u32, u32)> = pure_off.iter().copied().collect();
    support.insert(anchor);
    for q in &members {
        let tangents: Vec<(u32, u32)> = q.triple(a, b)[1..].iter().copied().filter(|t| class.contains(t)).collect();
        if let Some(&t) = tangents.choose(rng) {
            support.insert(t);
        }
    }
    for &m in &class {
        if !pure_on.contains(&m) && rng.gen_bool(0.4) {
            support.insert(m);
        }
    }
    let mut coeffs: BTreeMap<(u32, u32), CycloScalar> = support.into_iter().map(|m| (m, coefficient(rng))).collect();
    let symmetrized = a == b && rng.gen_bool(0.4);
    if symmetrized {
        let keys: Vec<(u32, u32)> = coeffs.keys().copied().collect();
        for (i, j) in keys {
            if i < j || !coeffs.contains_key(&(j, i)) {
                let c = coeffs[&(i, j)].clone();
                coeffs.insert((j, i), c);
            }
        }
    }
    Some(Curve {
        pattern,
        symmetrized,
        seed_aut: d,
        poly: BiPoly::from_terms(a, b, coeffs),
    })
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub a: u32,
    pub b: u32,
    pub trial: u32,
    pub attempts: u32,
    pub curve: Option<Curve>,
    pub corner_count: usize,
    pub diagonal_group_order: u64,
    pub swap_certificates: usize,
    pub orders: BTreeSet<u64>,
    pub checked: BTreeMap<Check, u64>,
    pub unconditional_counterexamples: u64,
    pub violations: Vec<(Check, Value)>,
    pub note: Option<String>,
}

fn trial_rng(seed: u64, a: u32, b: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((a as u64) << 48) | ((b as u64) << 32) | trial as u64);
    rng
}

pub fn run_trial(cfg: &SweepConfig, a: u32, b: u32, trial: u32) -> TrialOutcome {
    let mut out = TrialOutcome {
        a,
        b,
        trial,
        attempts: 0,
        curve: None,
        corner_count: 0,
        diagonal_group_order: 1,
        swap_certificates: 0,
        orders: BTreeSet::new(),
        checked: BTreeMap::new(),
        unconditional_counterexamples: 0,
        violations: Vec::new(),
        note: None,
    };
    let mut rng = trial_rng(cfg.seed, a, b, trial);
    while out.attempts < MAX_ATTEMPTS && out.curve.is_none() {
        out.attempts += 1;
        let Some(c) = candidate(&mut rng, a, b) else {
            continue;
        };
        if smooth_by_reduction(&c.poly).is_some() {
            out.curve = Some(c);
        }
    }
    let Some(curve) = out.curve.clone() else {
        out.note = Some(format!(
            "({},{}) trial {}: no smooth candidate in {} attempts, skipped",
            a, b, trial, MAX_ATTEMPTS
        ));
        return out;
    };
    let f = &curve.poly;
    let n_max = cfg.max_conductor.unwrap_or(a * b);
    let fail = |e: biquad_core::Error| {
        report::assertion(
            "enumeration",
            e.to_string(),
            format!("biquad auts --poly '{}' --max-conductor {}", f, n_max),
        )
    };
    let mut certs = Vec::new();
    match enumerate_diagonal_auts(f, n_max) {
        Ok(en) => {
            out.diagonal_group_order = en.group_order();
            certs.extend(en.certificates);
        }
        Err(e) => out.violations.push((Check::CaseAnalysis, fail(e))),
    }
    if a == b {
        match enumerate_swap_auts(f, n_max) {
            Ok(s) => {
                out.swap_certificates = s.len();
                certs.extend(s);
            }
            Err(e) => out.violations.push((Check::CaseAnalysis, fail(e))),
        }
    }
    out.corner_count = corner_report(f).map(|r| r.corner_count).unwrap_or(0);
    for cert in &certs {
        out.orders.insert(cert.order);
        let an = match CertAnalysis::run(f, cert) {
            Ok(an) => an,
            Err(e) => {
                out.violations.push((Check::CaseAnalysis, fail(e)));
                continue;
            }
        };
        out.unconditional_counterexamples += u64::from(an.unconditional_counterexample());
        for (check, failure) in an.checks(f) {
            *out.checked.entry(check).or_default() += 1;
            if let Some(v) = failure {
                out.violations.push((check, v));
            }
        }
    }
    out
}

pub const FAMILY_PARAMS: [(i64, i64); 4] = [(2, 1), (3, 1), (1, 2), (-1, 1)];

pub fn param(p: (i64, i64)) -> CycloScalar {
    CycloScalar::from_ratio(p.0, p.1).expect("nonzero denominator")
}

/// Every family instance with `a, b >= 4` in range and parameters drawn from
/// `{2, 3, 1/2, -1}`; `MaxAB` only for coprime `(a, b)`.
pub fn family_specs(a_range: (u32, u32), b_range: (u32, u32)) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for a in a_range.0.max(4)..=a_range.1 {
        for b in b_range.0.max(4)..=b_range.1 {
            for id in FamilyId::ALL {
                if id == FamilyId::MaxAB && gcd(a as u64, b as u64) != 1 {
                    continue;
                }
                for s in FAMILY_PARAMS {
                    if id.has_second_param() {
                        for s2 in FAMILY_PARAMS {
                            out.push(FamilySpec::new(id, a, b, param(s), param(s2)));
                        }
                    } else {
                        out.push(FamilySpec::new(id, a, b, param(s), CycloScalar::one()));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FamilyOutcome {
    pub spec: FamilySpec,
    pub value: Value,
    pub degenerate: bool,
    pub violation: Option<Value>,
}

fn family_replay(spec: &FamilySpec) -> String {
    let mut s = format!("biquad family {} {} {} --s '{}'", spec.family_id, spec.a, spec.b, spec.s);
    if spec.family_id.has_second_param() {
        s.push_str(&format!(" --s2 '{}'", spec.s2));
    }
    s
}

/// Validates one family instance. A singular member is acceptable only on a
/// known degenerate locus, where the explicit factorization must check out.
pub fn check_family(spec: &FamilySpec) -> FamilyOutcome {
    let r = match validate_family(spec) {
        Ok(r) => r,
        Err(e) => {
            return FamilyOutcome {
                spec: spec.clone(),
                value: json!({ "error": e.to_string() }),
                degenerate: false,
                violation: Some(report::assertion("family construction", e.to_string(), family_replay(spec))),
            }
        }
    };
    let degenerate = !r.smooth && r.factors.is_some();
    let violation = if degenerate {
        let only_degeneracy = r.failures.iter().all(|f| f.starts_with("degenerate parameter"));
        (!only_degeneracy).then(|| report::assertion("family validation", r.failures.join("; "), family_replay(spec)))
    } else if !r.ok() {
        Some(report::assertion("family validation", r.failures.join("; "), family_replay(spec)))
    } else {
        None
    };
    FamilyOutcome {
        spec: spec.clone(),
        value: report::validation(&r),
        degenerate,
        violation,
    }
}

pub struct Sweep {
    pub config: SweepConfig,
    pub trials: Vec<TrialOutcome>,
    pub families: Vec<FamilyOutcome>,
}

pub fn run_sweep(cfg: &SweepConfig) -> Sweep {
    let jobs: Vec<(u32, u32, u32)> = (cfg.a_range.0..=cfg.a_range.1)
        .flat_map(|a| (cfg.b_range.0..=cfg.b_range.1).flat_map(move |b| (0..cfg.trials).map(move |t| (a, b, t))))
        .collect();
    let trials = jobs.par_iter().map(|&(a, b, t)| run_trial(cfg, a, b, t)).collect();
    let families = if cfg.families {
        family_specs(cfg.a_range, cfg.b_range).par_iter().map(check_family).collect()
    } else {
        Vec::new()
    };
    Sweep {
        config: cfg.clone(),
        trials,
        families,
    }
}

impl Sweep {
    pub fn checked(&self, check: Check) -> u64 {
        self.trials.iter().map(|t| t.checked.get(&check).copied().unwrap_or(0)).sum()
    }

    pub fn violations_of(&self, check: Check) -> Vec<&Value> {
        self.trials
            .iter()
            .flat_map(|t| t.violations.iter().filter(move |(c, _)| *c == check).map(|(_, v)| v))
            .collect()
    }

    pub fn all_violations(&self) -> Vec<Value> {
        let mut out: Vec<Value> = self
            .trials
            .iter()
            .flat_map(|t| t.violations.iter().map(|(_, v)| v.clone()))
            .collect();
        out.extend(self.families.iter().filter_map(|f| f.violation.clone()));
        out
    }

    pub fn smooth_curves(&self) -> usize {
        self.trials.iter().filter(|t| t.curve.is_some()).count()
    }

    pub fn certificates(&self) -> usize {
        self.trials
            .iter()
            .map(|t| (t.diagonal_group_order - 1) as usize + t.swap_certificates)
            .sum()
    }

    pub fn to_report(&self) -> Report {
        let c = &self.config;
        let mut r = Report::new("verify");
        r.input("a_range", format!("{}..{}", c.a_range.0, c.a_range.1))
            .input("b_range", format!("{}..{}", c.b_range.0, c.b_range.1))
            .input("trials", c.trials)
            .input("seed", c.seed)
            .input("max_conductor", c.max_conductor.map_or(Value::String("a*b".into()), Value::from));
        let curves: Vec<Value> = self
            .trials
            .iter()
            .filter_map(|t| {
                let curve = t.curve.as_ref()?;
                Some(json!({
                    "a": t.a,
                    "b": t.b,
                    "trial": t.trial,
                    "attempts": t.attempts,
                    "pattern": curve.pattern.name(),
                    "symmetrized": curve.symmetrized,
                    "seed_automorphism": curve.seed_aut.to_string(),
                    "poly": curve.poly.to_string(),
                    "corner_count": t.corner_count,
                    "diagonal_group_order": t.diagonal_group_order,
                    "swap_certificates": t.swap_certificates,
                    "orders": t.orders.iter().collect::<Vec<_>>(),
                }))
            })
            .collect();
        let skipped: Vec<String> = self.trials.iter().filter_map(|t| t.note.clone()).collect();
        let mut checks = Map::new();
        for check in Check::ALL {
            checks.insert(
                check.name().into(),
                json!({
                    "checked": self.checked(check),
                    "violations": self.violations_of(check).len(),
                }),
            );
        }
        let unconditional: u64 = self.trials.iter().map(|t| t.unconditional_counterexamples).sum();
        r.result("smooth_curves", self.smooth_curves())
            .result("certificates", self.certificates())
            .result("checks", checks)
            .result("fixed_points_with_positive_quotient_genus", unconditional)
            .result("curves", curves)
            .result("skipped", skipped)
            .result(
                "families",
                self.families
                    .iter()
                    .map(|f| {
                        json!({
                            "family": f.spec.family_id.name(),
                            "a": f.spec.a,
                            "b": f.spec.b,
                            "s": f.spec.s.to_string(),
                            "s2": f.spec.s2.to_string(),
                            "degenerate": f.degenerate,
                            "ok": f.violation.is_none(),
                        })
                    })
                    .collect::<Vec<_>>(),
            );
        r.violations = self.all_violations();
        r
    }
}
