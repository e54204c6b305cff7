//! JSON views of core results. Exact values are emitted as strings in their
//! canonical text form, never as floats.

use biquad_core::classify::{CaseClassification, DiagonalEnumeration, GaloisWitness, QuotientReport};
use biquad_core::families::ValidationReport;
use biquad_core::smooth::{CornerReport, SmoothnessVerdict};
use biquad_core::surfauto::Axis;
use biquad_core::{BiPoly, Corner, InvarianceCertificate, TheoremViolation};
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub violations: Vec<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            violations: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.into(), v.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "violations": self.violations,
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn axis(a: Axis) -> &'static str {
    match a {
        Axis::First => "first",
        Axis::Second => "second",
    }
}

pub fn violation(v: &TheoremViolation) -> Value {
    json!({
        "claim": v.claim,
        "detail": v.detail,
        "poly": v.poly,
        "automorphism": v.automorphism,
        "replay": v.replay,
    })
}

/// A failed check that did not come with a core violation record.
pub fn assertion(claim: &str, detail: String, replay: String) -> Value {
    json!({ "claim": claim, "detail": detail, "replay": replay })
}

pub fn poly(f: &BiPoly) -> Value {
    let (a, b) = f.bidegree();
    json!({
        "text": f.to_string(),
        "bidegree": [a, b],
        "support": f.terms().keys().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
    })
}

pub fn corners(r: &CornerReport) -> Value {
    let mut membership = Map::new();
    let mut polys = Map::new();
    for q in Corner::ALL {
        membership.insert(q.to_string(), r.membership[q.index()].into());
        polys.insert(q.to_string(), r.corner_polys[q.index()].to_string().into());
    }
    json!({
        "membership": membership,
        "corner_count": r.corner_count,
        "corner_polys": polys,
    })
}

pub fn smoothness(v: &SmoothnessVerdict, f: &BiPoly) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "kind": w.kind(),
            "description": w.describe(),
            "validated": w.validate(f),
        })
    });
    json!({
        "smooth": v.smooth,
        "witness": witness,
        "reducible": v.reducible,
        "order_agreement": v.order_agreement,
    })
}

pub fn certificate(c: &InvarianceCertificate, admissible: Option<bool>) -> Value {
    let mut m = Map::new();
    m.insert("automorphism".into(), c.automorphism.to_string().into());
    m.insert("scalar_t".into(), c.scalar_t.to_string().into());
    m.insert("order".into(), c.order.into());
    if let Some(ok) = admissible {
        m.insert("admissible".into(), ok.into());
    }
    Value::Object(m)
}

pub fn enumeration(en: &DiagonalEnumeration, admissible: &dyn Fn(u64) -> Option<bool>) -> Value {
    json!({
        "group_order": en.group_order(),
        "closed": en.closed,
        "structure": en.structure,
        "certificates": en
            .certificates
            .iter()
            .map(|c| certificate(c, admissible(c.order)))
            .collect::<Vec<_>>(),
    })
}

pub fn classification(c: &CaseClassification) -> Value {
    let (a, b) = c.normalized_bidegree;
    json!({
        "case_id": c.case_id,
        "corner_count": c.corner_count,
        "members": c.members.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "normalization": c.normalization,
        "normalized_bidegree": [a, b],
        "normal_form": c.normal_form,
        "relations": c.relations,
        "divisor": c.divisor,
        "order": c.order,
    })
}

pub fn galois(w: Option<GaloisWitness>) -> Value {
    match w {
        Some(w) => json!({ "projection": axis(w.projection), "k": w.k }),
        None => Value::Null,
    }
}

pub fn quotient(q: &QuotientReport) -> Value {
    let fix: Map<String, Value> = q.fix_counts.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
    json!({
        "group_order": q.group_order,
        "fix_counts": fix,
        "stabilizer_sum": q.stabilizer_sum,
        "genus": q.genus,
        "quotient_genus": q.quotient_genus,
    })
}

pub fn validation(r: &ValidationReport) -> Value {
    json!({
        "family": r.spec.family_id.name(),
        "poly": poly(&r.poly),
        "automorphism": r.aut.to_string(),
        "smooth": r.smooth,
        "witness": r.witness.as_ref().map(|w| w.kind()),
        "factors": r.factors.as_ref().map(|[p, q]| json!([p.to_string(), q.to_string()])),
        "invariance_scalar": r.invariance_scalar.as_ref().map(|t| t.to_string()),
        "order": r.order,
        "expected_order": r.expected_order,
        "corner_count": r.corner_count,
        "corner_sum": r.corner_sum.to_string(),
        "classification": r.classification.as_ref().map(classification),
        "quotient": r.quotient.as_ref().map(quotient),
        "quotient_genus": r.quotient_genus(),
        "failures": r.failures,
    })
}
