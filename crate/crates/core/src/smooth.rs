//! Exact smoothness testing, corner membership and point counts on fibers.
//!
//! On each affine chart the curve `f = 0` is singular exactly where `f`,
//! `f_x` and `f_y` vanish together. The `x`-coordinates of such points are
//! roots of `gcd(Res_y(f, f_y), Res_y(f, f_x))`; for the squarefree part `p`
//! of that gcd we compute `gcd(f, f_x, f_y)` over `K[x]/(p)` and look for a
//! positive-degree result.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bipoly::{BiPoly, BiVarPoly, Chart, Corner, Var};
use crate::poly::UniPoly;
use crate::resultant::{divides_all, gcd_over, resultant, RecPoly};
use crate::scalars::CycloScalar;
use crate::surfauto::{Axis, Mat2};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub membership: [bool; 4],
    pub corner_count: usize,
    pub corner_polys: [BiPoly; 4],
}

impl CornerReport {
    pub fn members(&self) -> Vec<Corner> {
        Corner::ALL.into_iter().filter(|q| self.membership[q.index()]).collect()
    }
}

pub fn corner_report(f: &BiPoly) -> Result<CornerReport> {
    let (a, b) = f.bidegree();
    let polys = [
        f.corner_polynomial(Corner::Q1)?,
        f.corner_polynomial(Corner::Q2)?,
        f.corner_polynomial(Corner::Q3)?,
        f.corner_polynomial(Corner::Q4)?,
    ];
    let membership = Corner::ALL.map(|q| {
        let (i, j) = q.pure(a, b);
        f.coeff(i, j).is_zero()
    });
    Ok(CornerReport {
        corner_count: membership.iter().filter(|&&m| m).count(),
        membership,
        corner_polys: polys,
    })
}

/// Which variable the resultants eliminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// Eliminate `y`; singular points are located by their `x`-coordinate.
    Y,
    /// Eliminate `x`.
    X,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A repeated component: `f` and `f_y` (or `f_x`) share a factor.
    NonReduced { chart: Chart, elimination: Elimination },
    /// `F` has a factor depending on one factor of `P1 x P1` only.
    Reducible { axis: Axis, factor_degree: u32 },
    /// A common zero of `f, f_x, f_y` with first coordinate a root of
    /// `factor` and second coordinate a root of `fiber_gcd`, computed over
    /// `K[t]/(factor)` where `t` is the variable kept by the elimination.
    /// A zero `fiber_gcd` means the whole fiber is singular.
    SingularPoint {
        chart: Chart,
        elimination: Elimination,
        factor: UniPoly,
        fiber_gcd: RecPoly,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::NonReduced { .. } => "NonReduced",
            Witness::Reducible { .. } => "Reducible",
            Witness::SingularPoint { .. } => "SingularPoint",
        }
    }

    /// Re-check the witness in exact arithmetic against `f`.
    pub fn validate(&self, f: &BiPoly) -> bool {
        match self {
            Witness::SingularPoint {
                chart,
                elimination,
                factor,
                fiber_gcd,
            } => {
                let [g, gx, gy] = chart_system(f, *chart, *elimination);
                divides_all(factor, fiber_gcd, &[g.to_rec(), gx.to_rec(), gy.to_rec()])
            }
            Witness::Reducible { axis, factor_degree } => {
                let g = match axis {
                    Axis::First => f.clone(),
                    Axis::Second => f.transpose(),
                };
                x_content(&g).1 == *factor_degree && *factor_degree >= 1
            }
            Witness::NonReduced { chart, elimination } => {
                let [g, _, gy] = chart_system(f, *chart, *elimination);
                resultant(&g.to_rec(), &gy.to_rec()).is_zero() || g.degree_in(Var::Y) == Some(0)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Witness::NonReduced { chart, elimination } => {
                alloc::format!("repeated component seen on chart {} eliminating {:?}", chart, elimination)
            }
            Witness::Reducible { axis, factor_degree } => {
                alloc::format!("factor of degree {} in the {:?} variables only", factor_degree, axis)
            }
            Witness::SingularPoint { chart, elimination, factor, .. } => alloc::format!(
                "singular point on chart {} eliminating {:?}, first coordinate a root of {:?}",
                chart,
                elimination,
                factor
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub witness: Option<Witness>,
    pub reducible: bool,
    /// Both elimination orders reached the same conclusion.
    pub order_agreement: bool,
}

/// `[f, f_x, f_y]` on the chart, with variables exchanged first when `x` is
/// the eliminated one.
fn chart_system(f: &BiPoly, chart: Chart, elim: Elimination) -> [BiVarPoly; 3] {
    let mut g = f.dehomogenize(chart);
    if elim == Elimination::X {
        g = g.swap_vars();
    }
    let gx = g.partial_derivative(Var::X);
    let gy = g.partial_derivative(Var::Y);
    [g, gx, gy]
}

fn chart_singularity(f: &BiPoly, chart: Chart, elim: Elimination) -> Option<Witness> {
    let [g, gx, gy] = chart_system(f, chart, elim);
    if g.degree_in(Var::Y).unwrap_or(0) == 0 {
        let u = g.to_uni_x();
        let d = u.gcd(&u.derivative());
        return (d.degree().unwrap_or(0) >= 1).then_some(Witness::NonReduced { chart, elimination: elim });
    }
    let (rg, rx, ry) = (g.to_rec(), gx.to_rec(), gy.to_rec());
    let disc = resultant(&rg, &ry);
    if disc.is_zero() {
        return Some(Witness::NonReduced { chart, elimination: elim });
    }
    let r1 = resultant(&rg, &rx);
    let common = if r1.is_zero() { disc } else { disc.gcd(&r1) };
    let p = common.squarefree_part();
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    for br in gcd_over(&p, &[rg, rx, ry]) {
        if br.value.degree() != Some(0) {
            return Some(Witness::SingularPoint {
                chart,
                elimination: elim,
                factor: br.modulus,
                fiber_gcd: br.value,
            });
        }
    }
    None
}

/// Content of `F` as a polynomial in `Y` with binary forms in `X` as
/// coefficients: the form and its degree.
fn x_content(f: &BiPoly) -> (UniPoly, u32) {
    let (a, b) = f.bidegree();
    let mut g = UniPoly::zero();
    let mut x1_power = a;
    for j in 0..=b {
        let col: Vec<CycloScalar> = (0..=a).map(|i| f.coeff(i, j)).collect();
        let h = UniPoly::new(col);
        if h.is_zero() {
            continue;
        }
        x1_power = x1_power.min(a - h.degree().unwrap() as u32);
        g = g.gcd(&h);
    }
    let deg = g.degree().unwrap_or(0) as u32 + x1_power;
    (g, deg)
}

fn reducible_witness(f: &BiPoly) -> Option<Witness> {
    let (a, b) = f.bidegree();
    for (axis, g, own, other) in [(Axis::First, f.clone(), a, b), (Axis::Second, f.transpose(), b, a)] {
        let (_, deg) = x_content(&g);
        let splits = if other == 0 { own >= 2 } else { deg >= 1 };
        if splits {
            return Some(Witness::Reducible {
                axis,
                factor_degree: if other == 0 { 1 } else { deg },
            });
        }
    }
    None
}

pub fn is_smooth(f: &BiPoly) -> Result<SmoothnessVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut found = [None, None];
    for (slot, elim) in [Elimination::Y, Elimination::X].into_iter().enumerate() {
        for chart in Chart::ALL {
            if let Some(w) = chart_singularity(f, chart, elim) {
                found[slot] = Some(w);
                break;
            }
        }
    }
    let order_agreement = found[0].is_some() == found[1].is_some();
    let reducible = reducible_witness(f);
    let singular = found.iter().any(Option::is_some);
    let non_reduced = found
        .iter()
        .flatten()
        .find(|w| matches!(w, Witness::NonReduced { .. }))
        .cloned();
    let witness = if !singular {
        None
    } else if non_reduced.is_some() {
        non_reduced
    } else if reducible.is_some() {
        reducible.clone()
    } else {
        found.into_iter().flatten().next()
    };
    Ok(SmoothnessVerdict {
        smooth: !singular,
        witness,
        reducible: reducible.is_some(),
        order_agreement,
    })
}

pub fn genus(a: u32, b: u32) -> u64 {
    (a.saturating_sub(1) as u64) * (b.saturating_sub(1) as u64)
}

/// Which fiber of a projection: over `[0:1]` or over `[1:0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberAt {
    Zero,
    Infinity,
}

/// Number of distinct roots of a binary form of degree `n` given by its
/// dehomogenization; a drop in degree is a root at infinity.
pub fn distinct_projective_roots(h: &UniPoly, n: usize) -> u64 {
    let d = h.degree().expect("nonzero form");
    let finite = h.squarefree_part().degree().unwrap_or(0) as u64;
    finite + u64::from(d < n)
}

/// Distinct points of `C` on a fiber of the first (`axis = First`, fixing
/// `X`) or second projection.
pub fn fiber_points(f: &BiPoly, axis: Axis, which: FiberAt) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pt = match which {
        FiberAt::Zero => [CycloScalar::zero(), CycloScalar::one()],
        FiberAt::Infinity => [CycloScalar::one(), CycloScalar::zero()],
    };
    let (h, n) = match axis {
        Axis::First => (f.restrict_first(&pt), f.bidegree().1),
        Axis::Second => (f.restrict_second(&pt), f.bidegree().0),
    };
    if h.is_zero() {
        let name = match which {
            FiberAt::Zero => "[0:1]",
            FiberAt::Infinity => "[1:0]",
        };
        return Err(Error::FiberIsComponent(alloc::format!("{:?} fiber over {}", axis, name)));
    }
    Ok(distinct_projective_roots(&h, n as usize))
}

/// Distinct points of `C` on the graph `{(x, Ax)}`: the roots of the binary
/// form `F(X, AX)` of degree `a + b`.
pub fn graph_points(f: &BiPoly, m: &Mat2) -> Result<u64> {
    let (a, b) = f.bidegree();
    let t = UniPoly::new(alloc::vec![CycloScalar::zero(), CycloScalar::one()]);
    let y0 = UniPoly::new(alloc::vec![m.get(0, 1).clone(), m.get(0, 0).clone()]);
    let y1 = UniPoly::new(alloc::vec![m.get(1, 1).clone(), m.get(1, 0).clone()]);
    let mut h = UniPoly::zero();
    for (&(i, j), c) in f.terms() {
        let term = t.pow(i).mul(&y0.pow(j)).mul(&y1.pow(b - j)).scale(c);
        h = h.add(&term);
    }
    if h.is_zero() {
        return Err(Error::FiberIsComponent(String::from("graph of the swap")));
    }
    Ok(distinct_projective_roots(&h, (a + b) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> CycloScalar {
        CycloScalar::from_integer(k)
    }

    fn family_i(a: u32, b: u32, s: i64) -> BiPoly {
        BiPoly::from_terms(a, b, [((a, b), int(1)), ((a, 0), int(1)), ((0, b), int(1)), ((0, 0), int(s))])
    }

    #[test]
    fn fermat_type_is_smooth() {
        let v = is_smooth(&family_i(4, 5, 2)).unwrap();
        assert!(v.smooth, "{:?}", v);
        assert!(v.order_agreement);
        assert!(!v.reducible);
    }

    #[test]
    fn product_is_reducible() {
        let f = family_i(4, 5, 1);
        let v = is_smooth(&f).unwrap();
        assert!(!v.smooth);
        assert!(v.reducible);
        assert_eq!(v.witness.as_ref().unwrap().kind(), "Reducible");
        assert!(v.witness.unwrap().validate(&f));
    }

    #[test]
    fn single_monomial_is_non_reduced() {
        let f = BiPoly::from_terms(4, 5, [((4, 5), int(1))]);
        let v = is_smooth(&f).unwrap();
        assert!(!v.smooth);
        assert_eq!(v.witness.unwrap().kind(), "NonReduced");
        assert_eq!(is_smooth(&BiPoly::zero(2, 2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn node_at_a_corner_is_found_and_validates() {
        // family (i) with s_{0,0} removed and no neighbours: singular at Q4
        let f = BiPoly::from_terms(3, 3, [((3, 3), int(1)), ((3, 0), int(1)), ((0, 3), int(1)), ((1, 1), int(1))]);
        let v = is_smooth(&f).unwrap();
        assert!(!v.smooth);
        let w = v.witness.unwrap();
        assert!(w.validate(&f), "{:?}", w);
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(4, 5), 12);
        assert_eq!(genus(1, 7), 0);
        assert_eq!(genus(4, 4), 9);
    }

    #[test]
    fn fiber_counts() {
        let f = family_i(4, 5, 2);
        assert_eq!(fiber_points(&f, Axis::First, FiberAt::Infinity).unwrap(), 5);
        let g = BiPoly::from_terms(3, 2, [((1, 2), int(1)), ((3, 0), int(1)), ((0, 1), int(1))]);
        // X0 = 0: only the (0, 1) term survives: Y0 Y1, two points
        assert_eq!(fiber_points(&g, Axis::First, FiberAt::Zero).unwrap(), 2);
        let h = BiPoly::from_terms(3, 2, [((1, 2), int(1)), ((3, 0), int(1))]);
        assert!(matches!(
            fiber_points(&h, Axis::First, FiberAt::Zero),
            Err(Error::FiberIsComponent(_))
        ));
        let k = BiPoly::from_terms(2, 3, [((1, 3), int(1)), ((2, 1), int(1))]);
        // X0 = 1, X1 = 0: Y0 Y1^2, two points; X1 = 1, X0 = 0: zero
        assert_eq!(fiber_points(&k, Axis::First, FiberAt::Infinity).unwrap(), 2);
    }

    #[test]
    fn repeated_root_fiber() {
        // Y0 = 1, Y1 = 0 leaves X0 X1^2: two points.
        let f = BiPoly::from_terms(3, 3, [((1, 3), int(1)), ((0, 0), int(1))]);
        assert_eq!(fiber_points(&f, Axis::Second, FiberAt::Infinity).unwrap(), 2);
        let g = BiPoly::from_terms(3, 3, [((1, 3), int(1)), ((3, 0), int(1))]);
        // X0 = 1, X1 = 0 leaves Y1^3: one point.
        assert_eq!(fiber_points(&g, Axis::First, FiberAt::Infinity).unwrap(), 1);
    }

    #[test]
    fn diagonal_graph_points() {
        let f = family_i(3, 3, 2);
        // F(x, x) = x0^6 + 2 x0^3 x1^3 + 2 x1^6 has six distinct roots
        let n = graph_points(&f, &Mat2::identity()).unwrap();
        assert_eq!(n, 6);
    }
}
