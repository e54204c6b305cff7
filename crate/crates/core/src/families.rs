//! The four families of curves attaining the largest automorphism orders,
//! with their designated automorphisms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bipoly::{corner_sets, BiPoly};
use crate::classify::{classify_corner_case, invariance_scalar, quotient_genus, CaseClassification, InvarianceCertificate, QuotientReport};
use crate::scalars::{gcd, CycloScalar};
use crate::smooth::{corner_report, is_smooth, Witness};
use crate::surfauto::DiagonalAut;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// Order `ab`.
    MaxAB,
    /// Order `(a-1)b`.
    MaxA1B,
    /// Order `a(b-1)`.
    MaxAB1,
    /// Order `(a-1)(b-1)+1`, first form.
    PlusOneA,
    /// Order `(a-1)(b-1)+1`, second form.
    PlusOneB,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::MaxAB,
        FamilyId::MaxA1B,
        FamilyId::MaxAB1,
        FamilyId::PlusOneA,
        FamilyId::PlusOneB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::MaxAB => "max-ab",
            FamilyId::MaxA1B => "max-a1b",
            FamilyId::MaxAB1 => "max-ab1",
            FamilyId::PlusOneA => "plus-one-a",
            FamilyId::PlusOneB => "plus-one-b",
        }
    }

    pub fn has_second_param(self) -> bool {
        matches!(self, FamilyId::PlusOneA | FamilyId::PlusOneB)
    }

    /// Number of the four corners lying on every member.
    pub fn corner_count(self) -> usize {
        match self {
            FamilyId::MaxAB => 0,
            FamilyId::MaxA1B | FamilyId::MaxAB1 => 2,
            FamilyId::PlusOneA | FamilyId::PlusOneB => 4,
        }
    }

    pub fn expected_order(self, a: u32, b: u32) -> u64 {
        let (a, b) = (a as u64, b as u64);
        match self {
            FamilyId::MaxAB => a * b,
            FamilyId::MaxA1B => (a - 1) * b,
            FamilyId::MaxAB1 => a * (b - 1),
            FamilyId::PlusOneA | FamilyId::PlusOneB => (a - 1) * (b - 1) + 1,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown family '{}'", s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family_id: FamilyId,
    pub a: u32,
    pub b: u32,
    pub s: CycloScalar,
    /// Only read by the two `PlusOne` families.
    pub s2: CycloScalar,
}

impl FamilySpec {
    pub fn new(family_id: FamilyId, a: u32, b: u32, s: CycloScalar, s2: CycloScalar) -> Self {
        FamilySpec { family_id, a, b, s, s2 }
    }

    /// Rejects degrees below 4, zero parameters, and non-coprime `MaxAB`.
    pub fn check(&self) -> Result<()> {
        let (a, b) = (self.a, self.b);
        if a < 4 || b < 4 {
            return Err(Error::DegreeTooSmall { a, b, min: 4 });
        }
        if self.s.is_zero() || (self.family_id.has_second_param() && self.s2.is_zero()) {
            return Err(Error::ParamZero);
        }
        if self.family_id == FamilyId::MaxAB && gcd(a as u64, b as u64) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub poly: BiPoly,
    pub aut: DiagonalAut,
    pub expected_order: u64,
}

pub fn build_family(spec: &FamilySpec) -> Result<Family> {
    spec.check()?;
    let (a, b) = (spec.a, spec.b);
    let one = CycloScalar::one;
    let (s, s2) = (spec.s.clone(), spec.s2.clone());
    let m = ((a - 1) * (b - 1) + 1) as i64;
    let (ai, bi) = (a as i64, b as i64);
    let (terms, aut) = match spec.family_id {
        FamilyId::MaxAB => (
            [((a, b), one()), ((a, 0), one()), ((0, b), one()), ((0, 0), s)],
            DiagonalAut::new(a * b, bi, ai),
        ),
        FamilyId::MaxA1B => (
            [((a, b), one()), ((a - 1, 0), one()), ((1, b), one()), ((0, 0), s)],
            DiagonalAut::new((a - 1) * b, -bi, 1),
        ),
        FamilyId::MaxAB1 => (
            [((a, b), one()), ((0, b - 1), one()), ((a, 1), one()), ((0, 0), s)],
            DiagonalAut::new(a * (b - 1), 1, -ai),
        ),
        FamilyId::PlusOneA => (
            [((a - 1, b), one()), ((a, 1), one()), ((0, b - 1), s), ((1, 0), s2)],
            DiagonalAut::new(m as u32, bi - 1, 1),
        ),
        FamilyId::PlusOneB => (
            [((a, b - 1), one()), ((1, b), one()), ((a - 1, 0), s), ((0, 1), s2)],
            DiagonalAut::new(m as u32, 1, ai - 1),
        ),
    };
    Ok(Family {
        poly: BiPoly::from_terms(a, b, terms),
        aut,
        expected_order: spec.family_id.expected_order(a, b),
    })
}

/// An explicit factorization for the parameter values where a family member
/// is known to split: `s = 1` for `MaxAB`, `s = s2` for the `PlusOne` forms.
pub fn known_factorization(spec: &FamilySpec) -> Result<Option<[BiPoly; 2]>> {
    spec.check()?;
    let (a, b) = (spec.a, spec.b);
    let one = CycloScalar::one;
    Ok(match spec.family_id {
        FamilyId::MaxAB if spec.s.is_one() => Some([
            BiPoly::from_terms(a, 0, [((a, 0), one()), ((0, 0), one())]),
            BiPoly::from_terms(0, b, [((0, b), one()), ((0, 0), one())]),
        ]),
        FamilyId::PlusOneA if spec.s == spec.s2 => Some([
            BiPoly::from_terms(1, b - 1, [((1, 0), one()), ((0, b - 1), one())]),
            BiPoly::from_terms(a - 1, 1, [((a - 1, 1), one()), ((0, 0), spec.s.clone())]),
        ]),
        FamilyId::PlusOneB if spec.s == spec.s2 => {
            let swapped = FamilySpec { family_id: FamilyId::PlusOneA, a: b, b: a, ..spec.clone() };
            known_factorization(&swapped)?.map(|[p, q]| [p.transpose(), q.transpose()])
        }
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub spec: FamilySpec,
    pub poly: BiPoly,
    pub aut: DiagonalAut,
    pub smooth: bool,
    pub witness: Option<Witness>,
    pub invariance_scalar: Option<CycloScalar>,
    pub order: u64,
    pub expected_order: u64,
    pub corner_count: usize,
    pub classification: Option<CaseClassification>,
    pub quotient: Option<QuotientReport>,
    /// Sum of the corner polynomials, the part of `F` supported on `E`.
    pub corner_sum: BiPoly,
    /// Factors of `F` when the parameters sit on a known degenerate locus.
    pub factors: Option<[BiPoly; 2]>,
    /// One line per failed check; empty when everything held.
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn quotient_genus(&self) -> Option<u64> {
        self.quotient.as_ref().map(|q| q.quotient_genus)
    }
}

/// Runs the whole pipeline on one family member. A singular member is
/// reported as degenerate, and the remaining checks are skipped.
pub fn validate_family(spec: &FamilySpec) -> Result<ValidationReport> {
    let fam = build_family(spec)?;
    let f = &fam.poly;
    let (a, b) = f.bidegree();
    let verdict = is_smooth(f)?;
    let (e, _) = corner_sets(a, b)?;
    let mut rep = ValidationReport {
        spec: spec.clone(),
        poly: f.clone(),
        aut: fam.aut,
        smooth: verdict.smooth,
        witness: verdict.witness.clone(),
        invariance_scalar: invariance_scalar(f, &fam.aut.to_aut()),
        order: fam.aut.order(),
        expected_order: fam.expected_order,
        corner_count: corner_report(f)?.corner_count,
        classification: None,
        quotient: None,
        corner_sum: f.restrict_to(&e),
        factors: known_factorization(spec)?.filter(|[p, q]| &p.mul(q) == f),
        failures: Vec::new(),
    };
    if rep.order != rep.expected_order {
        rep.failures
            .push(format!("order {} differs from expected {}", rep.order, rep.expected_order));
    }
    if rep.corner_count != spec.family_id.corner_count() {
        rep.failures.push(format!(
            "corner count {} differs from expected {}",
            rep.corner_count,
            spec.family_id.corner_count()
        ));
    }
    let Some(t) = rep.invariance_scalar.clone() else {
        rep.failures.push(format!("not invariant under {}", fam.aut));
        return Ok(rep);
    };
    if !verdict.smooth {
        let kind = verdict.witness.as_ref().map_or("singular", Witness::kind);
        let split = match &rep.factors {
            Some([p, q]) => format!(", F = ({}) * ({})", p, q),
            None => String::new(),
        };
        rep.failures.push(format!(
            "degenerate parameter s = {}, s2 = {}: {}{}",
            spec.s, spec.s2, kind, split
        ));
        return Ok(rep);
    }
    let cert = InvarianceCertificate {
        automorphism: fam.aut.to_aut(),
        scalar_t: t,
        order: rep.order,
    };
    match classify_corner_case(f, &cert) {
        Ok(c) => rep.classification = Some(c),
        Err(e) => rep.failures.push(format!("classification: {}", e)),
    }
    match quotient_genus(f, &cert) {
        Ok(q) => {
            if q.quotient_genus != 0 {
                rep.failures.push(format!("quotient genus {} is not 0", q.quotient_genus));
            }
            rep.quotient = Some(q);
        }
        Err(e) => rep.failures.push(format!("quotient: {}", e)),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: FamilyId, a: u32, b: u32, s: i64, s2: i64) -> FamilySpec {
        FamilySpec::new(id, a, b, CycloScalar::from_integer(s), CycloScalar::from_integer(s2))
    }

    #[test]
    fn max_ab_four_five() {
        let r = validate_family(&spec(FamilyId::MaxAB, 4, 5, 2, 1)).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!((r.order, r.quotient_genus()), (20, Some(0)));
        assert_eq!(r.invariance_scalar, Some(CycloScalar::one()));
    }

    #[test]
    fn max_ab_degenerate_at_one() {
        let r = validate_family(&spec(FamilyId::MaxAB, 4, 5, 1, 1)).unwrap();
        assert!(!r.smooth);
        assert_eq!(r.witness.as_ref().map(Witness::kind), Some("Reducible"));
    }

    #[test]
    fn plus_one_scalar() {
        let fam = build_family(&spec(FamilyId::PlusOneA, 4, 4, 1, 1)).unwrap();
        assert_eq!(fam.expected_order, 10);
        assert_eq!(
            invariance_scalar(&fam.poly, &fam.aut.to_aut()),
            Some(CycloScalar::zeta_pow(10, 3))
        );
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(build_family(&spec(FamilyId::MaxAB, 4, 6, 2, 1)), Err(Error::NotCoprime { a: 4, b: 6 }));
        assert_eq!(build_family(&spec(FamilyId::MaxA1B, 4, 5, 0, 1)), Err(Error::ParamZero));
        assert_eq!(build_family(&spec(FamilyId::PlusOneB, 4, 5, 1, 0)), Err(Error::ParamZero));
        assert!(matches!(build_family(&spec(FamilyId::MaxA1B, 3, 5, 1, 1)), Err(Error::DegreeTooSmall { .. })));
    }

    #[test]
    fn max_a1b_is_order_fifteen() {
        let r = validate_family(&spec(FamilyId::MaxA1B, 4, 5, 3, 1)).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.order, 15);
        let c = r.classification.unwrap();
        assert_eq!((c.case_id.as_str(), c.divisor), ("C2-Q23-(a-1)b", 15));
    }

    #[test]
    fn plus_one_splits_on_the_diagonal() {
        for id in [FamilyId::PlusOneA, FamilyId::PlusOneB] {
            let r = validate_family(&spec(id, 4, 5, 2, 2)).unwrap();
            assert!(!r.smooth);
            assert!(r.factors.is_some());
            let r = validate_family(&spec(id, 4, 5, 2, 3)).unwrap();
            assert!(r.ok(), "{:?}", r.failures);
            assert!(r.factors.is_none());
        }
    }

    #[test]
    fn names_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.name().parse::<FamilyId>(), Ok(id));
        }
        assert!("max".parse::<FamilyId>().is_err());
    }
}
