//! Automorphisms of `P1 x P1`: `[A] x [B]`, or `s o ([A] x [B])` where `s`
//! exchanges the factors.
//!
//! On points, `[A] x [B]` sends `(x, y)` to `(Ax, By)` and the swapped form
//! sends it to `(By, Ax)`. With this convention
//! `(s o ([A] x [B]))^2 = [BA] x [AB]`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::scalars::{euler_phi, gcd, lcm, CycloScalar, RootOfUnity};
use crate::{Error, Result};

/// A point of `P1`.
pub type P1 = [CycloScalar; 2];

pub fn p1(x0: i64, x1: i64) -> P1 {
    [CycloScalar::from_integer(x0), CycloScalar::from_integer(x1)]
}

/// Scale a point so its last nonzero coordinate is 1.
pub fn normalize_point(p: &P1) -> P1 {
    if !p[1].is_zero() {
        let inv = p[1].inv().expect("nonzero");
        [&p[0] * &inv, CycloScalar::one()]
    } else {
        [CycloScalar::one(), CycloScalar::zero()]
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    m: [CycloScalar; 4],
}

impl Mat2 {
    pub fn new(a: CycloScalar, b: CycloScalar, c: CycloScalar, d: CycloScalar) -> Self {
        Mat2 { m: [a, b, c, d] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn diag(p: CycloScalar, q: CycloScalar) -> Self {
        Mat2::new(p, CycloScalar::zero(), CycloScalar::zero(), q)
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloScalar {
        &self.m[2 * r + c]
    }

    pub fn entries(&self) -> &[CycloScalar; 4] {
        &self.m
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Mat2::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
    }

    pub fn det(&self) -> CycloScalar {
        let [a, b, c, d] = &self.m;
        &(a * d) - &(b * c)
    }

    pub fn trace(&self) -> CycloScalar {
        &self.m[0] + &self.m[3]
    }

    /// The adjugate, which is the inverse in `PGL2`.
    pub fn adjugate(&self) -> Mat2 {
        let [a, b, c, d] = &self.m;
        Mat2::new(d.clone(), -b, -c, a.clone())
    }

    pub fn is_diagonal(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.m[0] == self.m[3]
    }

    /// Scale so that the last nonzero entry in row-major order is 1, which
    /// keeps `D(l, 1)` as it is.
    pub fn normalized(&self) -> Mat2 {
        let Some(lead) = self.m.iter().rev().find(|x| !x.is_zero()) else {
            return self.clone();
        };
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.inv().expect("nonzero");
        Mat2 {
            m: [&self.m[0] * &inv, &self.m[1] * &inv, &self.m[2] * &inv, &self.m[3] * &inv],
        }
    }

    pub fn apply(&self, p: &P1) -> P1 {
        [
            &(&self.m[0] * &p[0]) + &(&self.m[1] * &p[1]),
            &(&self.m[2] * &p[0]) + &(&self.m[3] * &p[1]),
        ]
    }

    pub fn conductor(&self) -> u32 {
        self.m.iter().fold(1, |n, x| lcm(n as u64, x.conductor() as u64) as u32)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", a, b, c, d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Largest `k` with `phi(k) <= bound`.
fn max_order_with_phi(bound: u64) -> u64 {
    // phi(k) >= sqrt(k / 2), so nothing beyond 2 bound^2 qualifies.
    let limit = 2 * bound * bound + 2;
    (1..=limit).filter(|&k| euler_phi(k) <= bound).max().unwrap_or(1)
}

fn is_algebraic_integer(x: &CycloScalar) -> bool {
    x.coeffs().iter().all(|q| q.denom().is_one())
}

/// Order of `[M]` in `PGL2`, or `None` when it is infinite.
pub fn pgl_order(m: &Mat2) -> Option<u64> {
    if m.is_scalar() {
        return Some(1);
    }
    let det = m.det();
    if det.is_zero() {
        return None;
    }
    // If the eigenvalue ratio r is a root of unity, tr^2/det = r + 1/r + 2 is
    // an algebraic integer.
    let t = m.trace();
    let u = (&t * &t).checked_div(&det).ok()?;
    if !is_algebraic_integer(&u) {
        return None;
    }
    let bound = max_order_with_phi(2 * euler_phi(m.conductor() as u64));
    let mut p = m.normalized();
    for k in 2..=bound {
        p = p.mul(m).normalized();
        if p.is_scalar() {
            return Some(k);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{}", k),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// `[D(z_N^r1, 1)] x [D(z_N^r2, 1)]`, kept with `gcd(N, r1, r2) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalAut {
    pub n: u32,
    pub r1: u32,
    pub r2: u32,
}

impl DiagonalAut {
    pub fn new(n: u32, r1: i64, r2: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let r1 = r1.rem_euclid(n as i64) as u64;
        let r2 = r2.rem_euclid(n as i64) as u64;
        let g = gcd(gcd(n as u64, r1), r2);
        DiagonalAut {
            n: (n as u64 / g) as u32,
            r1: (r1 / g) as u32,
            r2: (r2 / g) as u32,
        }
    }

    pub fn identity() -> Self {
        DiagonalAut { n: 1, r1: 0, r2: 0 }
    }

    pub fn from_roots(l: RootOfUnity, m: RootOfUnity) -> Self {
        let n = lcm(l.order as u64, m.order as u64) as u32;
        DiagonalAut::new(n, l.exponent_at(n) as i64, m.exponent_at(n) as i64)
    }

    pub fn lambda(&self) -> RootOfUnity {
        RootOfUnity::new(self.n, self.r1)
    }

    pub fn mu(&self) -> RootOfUnity {
        RootOfUnity::new(self.n, self.r2)
    }

    pub fn is_identity(&self) -> bool {
        self.n == 1
    }

    pub fn order(&self) -> u64 {
        self.n as u64
    }

    /// `i r1 + j r2 mod N`, the exponent of `z_N` picked up by term `(i, j)`.
    pub fn weight(&self, i: u32, j: u32) -> u32 {
        ((i as u64 * self.r1 as u64 + j as u64 * self.r2 as u64) % self.n as u64) as u32
    }

    pub fn compose(&self, o: &DiagonalAut) -> DiagonalAut {
        let n = lcm(self.n as u64, o.n as u64) as u32;
        let s = n / self.n;
        let t = n / o.n;
        DiagonalAut::new(
            n,
            (self.r1 * s + o.r1 * t) as i64,
            (self.r2 * s + o.r2 * t) as i64,
        )
    }

    pub fn pow(&self, k: i64) -> DiagonalAut {
        let n = self.n as i64;
        let k = k.rem_euclid(n);
        DiagonalAut::new(self.n, self.r1 as i64 * k, self.r2 as i64 * k)
    }

    pub fn inverse(&self) -> DiagonalAut {
        self.pow(-1)
    }

    pub fn to_aut(&self) -> SurfaceAut {
        SurfaceAut::new(
            false,
            Mat2::diag(CycloScalar::zeta_pow(self.n, self.r1 as i64), CycloScalar::one()),
            Mat2::diag(CycloScalar::zeta_pow(self.n, self.r2 as i64), CycloScalar::one()),
        )
        .expect("diagonal matrices are invertible")
    }
}

impl fmt::Display for DiagonalAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag({}; {}, {})", self.n, self.r1, self.r2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    First,
    Second,
}

/// Where a nontrivial automorphism of finite order fixes points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    /// `Q1, ..., Q4`.
    FourCorners,
    /// The factor named by `axis` acts nontrivially, the other trivially; the
    /// fixed set is the two fibers over `[1:0]` and `[0:1]` of that factor.
    TwoFibers(Axis),
    SwapFinite(Vec<(P1, P1)>),
    /// The graph `{(x, Ax)}`.
    SwapCurve(Mat2),
    /// `Fix(g) = k^-1(Fix(h))` where `h = k o g o k^-1` is the normal form.
    Conjugated {
        conjugator: SurfaceAut,
        normal: Box<FixedLocus>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Diagonal(DiagonalAut),
    /// `s o ([I] x [D(nu, 1)])`, whose square is `[D(nu,1)] x [D(nu,1)]`.
    Swap { nu: RootOfUnity },
}

impl NormalForm {
    pub fn to_aut(&self) -> SurfaceAut {
        match self {
            NormalForm::Diagonal(d) => d.to_aut(),
            NormalForm::Swap { nu } => SurfaceAut::new(
                true,
                Mat2::identity(),
                Mat2::diag(nu.to_scalar(), CycloScalar::one()),
            )
            .expect("invertible"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub conjugator: SurfaceAut,
    pub normal: NormalForm,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceAut {
    swap: bool,
    a: Mat2,
    b: Mat2,
}

impl SurfaceAut {
    pub fn new(swap: bool, a: Mat2, b: Mat2) -> Result<Self> {
        if a.det().is_zero() || b.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(SurfaceAut {
            swap,
            a: a.normalized(),
            b: b.normalized(),
        })
    }

    pub fn identity() -> Self {
        SurfaceAut {
            swap: false,
            a: Mat2::identity(),
            b: Mat2::identity(),
        }
    }

    pub fn swap_only() -> Self {
        SurfaceAut {
            swap: true,
            a: Mat2::identity(),
            b: Mat2::identity(),
        }
    }

    pub fn swap(&self) -> bool {
        self.swap
    }

    pub fn a(&self) -> &Mat2 {
        &self.a
    }

    pub fn b(&self) -> &Mat2 {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        !self.swap && self.a.is_scalar() && self.b.is_scalar()
    }

    pub fn apply(&self, p: &(P1, P1)) -> (P1, P1) {
        let (x, y) = p;
        if self.swap {
            (normalize_point(&self.b.apply(y)), normalize_point(&self.a.apply(x)))
        } else {
            (normalize_point(&self.a.apply(x)), normalize_point(&self.b.apply(y)))
        }
    }

    /// `self o h`: apply `h` first.
    pub fn compose(&self, h: &SurfaceAut) -> SurfaceAut {
        let (a, b) = if h.swap {
            (self.b.mul(&h.a), self.a.mul(&h.b))
        } else {
            (self.a.mul(&h.a), self.b.mul(&h.b))
        };
        SurfaceAut {
            swap: self.swap ^ h.swap,
            a: a.normalized(),
            b: b.normalized(),
        }
    }

    pub fn inverse(&self) -> SurfaceAut {
        let (a, b) = if self.swap {
            (self.b.adjugate(), self.a.adjugate())
        } else {
            (self.a.adjugate(), self.b.adjugate())
        };
        SurfaceAut {
            swap: self.swap,
            a: a.normalized(),
            b: b.normalized(),
        }
    }

    pub fn pow(&self, mut k: u64) -> SurfaceAut {
        let mut acc = SurfaceAut::identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    pub fn conjugate_by(&self, k: &SurfaceAut) -> SurfaceAut {
        k.compose(self).compose(&k.inverse())
    }

    pub fn conductor(&self) -> u32 {
        lcm(self.a.conductor() as u64, self.b.conductor() as u64) as u32
    }

    pub fn order(&self) -> Order {
        if self.swap {
            let sq = self.compose(self);
            if sq.is_identity() {
                return Order::Finite(2);
            }
            return match sq.order() {
                Order::Finite(k) => Order::Finite(2 * k),
                Order::Infinite => Order::Infinite,
            };
        }
        match (pgl_order(&self.a), pgl_order(&self.b)) {
            (Some(p), Some(q)) => Order::Finite(lcm(p, q)),
            _ => Order::Infinite,
        }
    }

    /// The diagonal form, when the matrices are diagonal with root-of-unity
    /// eigenvalue ratios.
    pub fn as_diagonal(&self) -> Option<DiagonalAut> {
        if self.swap || !self.a.is_diagonal() || !self.b.is_diagonal() {
            return None;
        }
        let l = diag_ratio(&self.a)?;
        let m = diag_ratio(&self.b)?;
        Some(DiagonalAut::from_roots(l, m))
    }

    pub fn diagonalize(&self) -> Result<Diagonalization> {
        if self.order() == Order::Infinite {
            return Err(Error::NotFiniteOrder);
        }
        if self.swap {
            let m = self.b.mul(&self.a);
            let (s, nu) = diagonalize_mat(&m)?;
            let t = s.mul(&self.a.adjugate());
            let conjugator = SurfaceAut::new(false, s, t)?;
            let normal = NormalForm::Swap { nu };
            debug_assert_eq!(self.conjugate_by(&conjugator), normal.to_aut());
            return Ok(Diagonalization { conjugator, normal });
        }
        let (ka, l) = diagonalize_mat(&self.a)?;
        let (kb, m) = diagonalize_mat(&self.b)?;
        let conjugator = SurfaceAut::new(false, ka, kb)?;
        let normal = NormalForm::Diagonal(DiagonalAut::from_roots(l, m));
        debug_assert_eq!(self.conjugate_by(&conjugator), normal.to_aut());
        Ok(Diagonalization { conjugator, normal })
    }

    pub fn fixed_locus(&self) -> Result<FixedLocus> {
        if self.is_identity() {
            return Err(Error::IdentityHasNoProperFixedLocus);
        }
        if self.order() == Order::Infinite {
            return Err(Error::NotFiniteOrder);
        }
        if self.swap {
            if self.b.mul(&self.a).is_scalar() {
                return Ok(FixedLocus::SwapCurve(self.a.clone()));
            }
            if self.a.is_diagonal() && self.b.is_diagonal() {
                return Ok(FixedLocus::SwapFinite(vec![(p1(1, 0), p1(1, 0)), (p1(0, 1), p1(0, 1))]));
            }
        } else if let Some(d) = self.as_diagonal() {
            let first = d.r1 != 0;
            let second = d.r2 != 0;
            return Ok(match (first, second) {
                (true, true) => FixedLocus::FourCorners,
                (true, false) => FixedLocus::TwoFibers(Axis::First),
                (false, true) => FixedLocus::TwoFibers(Axis::Second),
                (false, false) => unreachable!("identity handled above"),
            });
        }
        let dz = self.diagonalize()?;
        let normal = dz.normal.to_aut().fixed_locus()?;
        Ok(FixedLocus::Conjugated {
            conjugator: dz.conjugator,
            normal: Box::new(normal),
        })
    }
}

fn diag_ratio(m: &Mat2) -> Option<RootOfUnity> {
    m.get(0, 0).checked_div(m.get(1, 1)).ok()?.as_root_of_unity()
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// A square root of `x` when `x` is a rational times a root of unity whose
/// absolute value is a rational square.
pub fn cyclo_sqrt(x: &CycloScalar) -> Option<CycloScalar> {
    if x.is_zero() {
        return Some(CycloScalar::zero());
    }
    let m = lcm(x.conductor() as u64, 2) as u32;
    for j in 0..m {
        let w = CycloScalar::zeta_pow(m, -(j as i64));
        let Some(q) = (x * &w).to_rational() else {
            continue;
        };
        // x = q z_m^j, sqrt = sqrt(q) z_2m^j
        let half = CycloScalar::zeta_pow(2 * m, j as i64);
        if let Some(r) = rational_sqrt(&q) {
            return Some(&CycloScalar::from_rational(r) * &half);
        }
        if let Some(r) = rational_sqrt(&-q) {
            let i = CycloScalar::zeta(4);
            return Some(&(&CycloScalar::from_rational(r) * &half) * &i);
        }
        return None;
    }
    None
}

fn eigenvector(m: &Mat2, l: &CycloScalar) -> P1 {
    let p = m.get(0, 0) - l;
    let q = m.get(0, 1).clone();
    if !p.is_zero() || !q.is_zero() {
        return [q, -&p];
    }
    let s = m.get(1, 0).clone();
    let t = m.get(1, 1) - l;
    [t, -&s]
}

/// `K` with `K M K^-1 = [D(r, 1)]` projectively.
fn diagonalize_mat(m: &Mat2) -> Result<(Mat2, RootOfUnity)> {
    if m.is_diagonal() {
        let r = diag_ratio(m).ok_or(Error::NotFiniteOrder)?;
        return Ok((Mat2::identity(), r));
    }
    let k = pgl_order(m).ok_or(Error::NotFiniteOrder)? as u32;
    let t = m.trace();
    let det = m.det();
    let (l1, l2, r) = if k == 2 {
        let s = cyclo_sqrt(&-&det).ok_or_else(|| {
            Error::NotRepresentable(alloc::format!("sqrt({})", -&det))
        })?;
        (s.clone(), -&s, RootOfUnity::new(2, 1))
    } else {
        let u = &(&t * &t).checked_div(&det)? - &CycloScalar::from_integer(2);
        let r = (1..k)
            .filter(|&j| gcd(j as u64, k as u64) == 1)
            .map(|j| RootOfUnity::new(k, j))
            .find(|r| {
                let z = r.to_scalar();
                &z + &z.inv().expect("nonzero") == u
            })
            .ok_or(Error::NotFiniteOrder)?;
        let rs = r.to_scalar();
        let l2 = t.checked_div(&(&CycloScalar::one() + &rs))?;
        (&rs * &l2, l2, r)
    };
    let v1 = eigenvector(m, &l1);
    let v2 = eigenvector(m, &l2);
    let s = Mat2::new(v1[0].clone(), v2[0].clone(), v1[1].clone(), v2[1].clone());
    Ok((s.adjugate().normalized(), r))
}

impl fmt::Display for SurfaceAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.as_diagonal() {
            return write!(f, "{}", d);
        }
        write!(f, "mat({}, {}, swap={})", self.a, self.b, self.swap)
    }
}

impl fmt::Debug for SurfaceAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
