//! Everything checked about one invariance certificate on one smooth curve.

use biquad_core::classify::{
    check_order_bound, classify_corner_case, fixed_point_count, galois_criterion, quotient_genus, GaloisWitness,
};
use biquad_core::smooth::corner_report;
use biquad_core::{BiPoly, CaseClassification, Error, InvarianceCertificate, QuotientReport};
use serde_json::{json, Value};

use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    /// The order divides a member of the order menu.
    OrderBound,
    /// A diagonal automorphism acting on both factors never meets exactly one
    /// corner.
    SingleCorner,
    /// The case analysis accepts the certificate.
    CaseAnalysis,
    /// Galois witness, or fixed points with order `l * max(a, b)`, forces
    /// `g' = 0`.
    QuotientConsistency,
    /// Riemann-Hurwitz yields a non-negative integer.
    Integrality,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::OrderBound,
        Check::SingleCorner,
        Check::CaseAnalysis,
        Check::QuotientConsistency,
        Check::Integrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::OrderBound => "order_bound",
            Check::SingleCorner => "single_corner",
            Check::CaseAnalysis => "case_analysis",
            Check::QuotientConsistency => "quotient_consistency",
            Check::Integrality => "integrality",
        }
    }
}

pub struct CertAnalysis {
    pub cert: InvarianceCertificate,
    pub admissible: Result<bool, Error>,
    pub two_sided_diagonal: bool,
    pub corner_count: usize,
    pub classification: Result<CaseClassification, Error>,
    pub galois: Option<GaloisWitness>,
    pub fixed_points: Result<u64, Error>,
    pub quotient: Result<QuotientReport, Error>,
}

/// `ord(f) = l * max(a, b)` with `l >= 2`.
pub fn is_large_multiple(order: u64, a: u32, b: u32) -> bool {
    let m = a.max(b) as u64;
    order % m == 0 && order / m >= 2
}

impl CertAnalysis {
    pub fn run(f: &BiPoly, cert: &InvarianceCertificate) -> Result<Self, Error> {
        let (a, b) = f.bidegree();
        let two_sided_diagonal = cert.diagonal().is_some_and(|d| d.r1 != 0 && d.r2 != 0);
        Ok(CertAnalysis {
            cert: cert.clone(),
            admissible: check_order_bound(cert, a, b),
            two_sided_diagonal,
            corner_count: corner_report(f)?.corner_count,
            classification: classify_corner_case(f, cert),
            galois: galois_criterion(f, cert),
            fixed_points: fixed_point_count(f, &cert.automorphism),
            quotient: quotient_genus(f, cert),
        })
    }

    fn replay(&self, f: &BiPoly) -> String {
        format!("biquad classify --poly '{}' --aut '{}'", f, self.cert.automorphism)
    }

    /// Checks that applied to this certificate, each with its failure if any.
    pub fn checks(&self, f: &BiPoly) -> Vec<(Check, Option<Value>)> {
        let (a, b) = f.bidegree();
        let fail = |claim: &str, detail: String| Some(report::assertion(claim, detail, self.replay(f)));
        let from_error = |e: &Error| match e {
            Error::TheoremViolation(v) => report::violation(v),
            Error::NonIntegralGenus { replay, .. } => {
                report::assertion("Riemann-Hurwitz integrality", e.to_string(), replay.join("; "))
            }
            other => report::assertion("analysis error", other.to_string(), self.replay(f)),
        };
        let mut out = Vec::new();
        out.push((
            Check::OrderBound,
            match &self.admissible {
                Ok(true) => None,
                Ok(false) => fail(
                    "order divides a member of the order menu",
                    format!("order {} at bidegree ({},{})", self.cert.order, a, b),
                ),
                Err(e) => Some(from_error(e)),
            },
        ));
        if self.two_sided_diagonal {
            out.push((
                Check::SingleCorner,
                (self.corner_count == 1).then(|| {
                    report::assertion(
                        "a diagonal automorphism never meets exactly one corner",
                        format!("corner count 1 under {}", self.cert.automorphism),
                        self.replay(f),
                    )
                }),
            ));
        }
        out.push((Check::CaseAnalysis, self.classification.as_ref().err().map(from_error)));
        let q = self.quotient.as_ref().map(|q| q.quotient_genus);
        out.push((Check::Integrality, self.quotient.as_ref().err().map(from_error)));
        if let Ok(g) = q {
            if let Some(w) = self.galois {
                out.push((
                    Check::QuotientConsistency,
                    (g != 0).then(|| {
                        fail(
                            "a Galois witness forces a rational quotient",
                            format!("witness k = {} on the {} projection but g' = {}", w.k, report::axis(w.projection), g),
                        )
                    })
                    .flatten(),
                ));
            }
            if matches!(self.fixed_points, Ok(n) if n > 0) && is_large_multiple(self.cert.order, a, b) {
                out.push((
                    Check::QuotientConsistency,
                    (g != 0).then(|| {
                        fail(
                            "fixed points and order l*max(a,b), l >= 2, force a rational quotient",
                            format!("order {} with fixed points but g' = {}", self.cert.order, g),
                        )
                    })
                    .flatten(),
                ));
            }
        }
        out
    }

    /// Fixed points and `g' > 0`: a counterexample to the reading of the
    /// quotient claim with no condition on the order.
    pub fn unconditional_counterexample(&self) -> bool {
        matches!(self.fixed_points, Ok(n) if n > 0) && matches!(&self.quotient, Ok(q) if q.quotient_genus > 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "certificate": report::certificate(&self.cert, self.admissible.as_ref().ok().copied()),
            "classification": match &self.classification {
                Ok(c) => report::classification(c),
                Err(e) => json!({ "error": e.to_string() }),
            },
            "galois": report::galois(self.galois),
            "fixed_points": match &self.fixed_points {
                Ok(n) => json!(n),
                Err(e) => json!({ "error": e.to_string() }),
            },
            "quotient": match &self.quotient {
                Ok(q) => report::quotient(q),
                Err(e) => json!({ "error": e.to_string() }),
            },
        })
    }
}
