//! Invariance certificates, brute-force automorphism enumeration, the corner
//! case analysis, the order menu and quotient genera.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bipoly::{BiPoly, Corner};
use crate::scalars::{gcd, lcm, CycloScalar, RootOfUnity};
use crate::smooth::{corner_report, fiber_points, genus, graph_points, FiberAt};
use crate::surfauto::{pgl_order, Axis, DiagonalAut, FixedLocus, SurfaceAut};
use crate::{Error, Result};

/// `g^* F = t F` with `g` of finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCertificate {
    pub automorphism: SurfaceAut,
    pub scalar_t: CycloScalar,
    pub order: u64,
}

impl InvarianceCertificate {
    pub fn diagonal(&self) -> Option<DiagonalAut> {
        self.automorphism.as_diagonal()
    }

    /// Re-check `g^* F = t F` from scratch.
    pub fn holds_for(&self, f: &BiPoly) -> bool {
        f.pullback(&self.automorphism) == f.scale(&self.scalar_t)
    }
}

/// A falsified claim together with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremViolation {
    pub claim: String,
    pub detail: String,
    pub poly: String,
    pub automorphism: String,
    pub replay: String,
}

impl TheoremViolation {
    fn new(claim: &str, detail: String, f: &BiPoly, g: &SurfaceAut) -> Self {
        let poly = f.to_string();
        let automorphism = g.to_string();
        let replay = format!("biquad classify --poly '{}' --aut '{}'", poly, automorphism);
        TheoremViolation {
            claim: claim.into(),
            detail,
            poly,
            automorphism,
            replay,
        }
    }
}

impl fmt::Display for TheoremViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} [F = {}, g = {}]",
            self.claim, self.detail, self.poly, self.automorphism
        )
    }
}

fn violation(claim: &str, detail: String, f: &BiPoly, g: &SurfaceAut) -> Error {
    Error::TheoremViolation(Box::new(TheoremViolation::new(claim, detail, f, g)))
}

/// `t` with `g^* F = t F`, if there is one.
pub fn invariance_scalar(f: &BiPoly, g: &SurfaceAut) -> Option<CycloScalar> {
    let (&(i, j), c) = f.terms().iter().next()?;
    let pulled = f.pullback(g);
    if pulled.bidegree() != f.bidegree() {
        return None;
    }
    let t = pulled.coeff(i, j).checked_div(c).ok()?;
    if t.is_zero() || pulled != f.scale(&t) {
        return None;
    }
    Some(t)
}

/// A certificate for `g` when `F` is invariant and `g` has finite order.
pub fn certify(f: &BiPoly, g: &SurfaceAut) -> Option<InvarianceCertificate> {
    let t = invariance_scalar(f, g)?;
    let order = g.order().finite()?;
    Some(InvarianceCertificate {
        automorphism: g.clone(),
        scalar_t: t,
        order,
    })
}

fn diagonal_certificate(f: &BiPoly, d: DiagonalAut) -> Option<InvarianceCertificate> {
    let (&(i, j), _) = f.terms().iter().next()?;
    let t = CycloScalar::zeta_pow(d.n, d.weight(i, j) as i64);
    if f.scale_by_weights(&d) != f.scale(&t) {
        return None;
    }
    Some(InvarianceCertificate {
        automorphism: d.to_aut(),
        scalar_t: t,
        order: d.order(),
    })
}

/// Every `(N, r1, r2)` in lowest terms with `2 <= N <= n_max`, sorted.
fn canonical_triples(n_max: u32, include_identity: bool) -> impl Iterator<Item = DiagonalAut> {
    let start = if include_identity { 1 } else { 2 };
    (start..=n_max).flat_map(move |n| {
        (0..n).flat_map(move |r1| {
            (0..n)
                .filter(move |&r2| gcd(gcd(n as u64, r1 as u64), r2 as u64) == 1)
                .map(move |r2| DiagonalAut { n, r1, r2 })
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalEnumeration {
    /// Sorted by `(N, r1, r2)`; the identity is left out.
    pub certificates: Vec<InvarianceCertificate>,
    pub automorphisms: Vec<DiagonalAut>,
    /// Closed under composition within the bound.
    pub closed: bool,
    /// Invariant factors `[d1, d2]` with `d1 | d2`, ones dropped; only
    /// meaningful when `closed`.
    pub structure: Vec<u64>,
}

impl DiagonalEnumeration {
    pub fn group_order(&self) -> u64 {
        self.automorphisms.len() as u64 + 1
    }
}

pub fn enumerate_diagonal_auts(f: &BiPoly, n_max: u32) -> Result<DiagonalEnumeration> {
    let support: Vec<(i64, i64)> = f.terms().keys().map(|&(i, j)| (i as i64, j as i64)).collect();
    let Some(&(i0, j0)) = support.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let diffs: Vec<(i64, i64)> = support
        .iter()
        .skip(1)
        .map(|&(i, j)| (i - i0, j - j0))
        .collect();
    let mut certificates = Vec::new();
    let mut automorphisms = Vec::new();
    for d in canonical_triples(n_max, false) {
        let n = d.n as i64;
        let congruent = diffs
            .iter()
            .all(|&(di, dj)| (di * d.r1 as i64 + dj * d.r2 as i64).rem_euclid(n) == 0);
        if !congruent {
            continue;
        }
        if let Some(c) = diagonal_certificate(f, d) {
            certificates.push(c);
            automorphisms.push(d);
        }
    }
    let members: BTreeSet<DiagonalAut> = automorphisms.iter().copied().collect();
    let closed = automorphisms.iter().all(|x| {
        automorphisms.iter().all(|y| {
            let z = x.compose(y);
            z.is_identity() || members.contains(&z)
        })
    });
    let order = automorphisms.len() as u64 + 1;
    let exponent = automorphisms.iter().map(|d| d.order()).fold(1, lcm);
    let structure = [order / exponent, exponent]
        .into_iter()
        .filter(|&k| k > 1)
        .collect();
    Ok(DiagonalEnumeration {
        certificates,
        automorphisms,
        closed,
        structure,
    })
}

/// `s o ([D(l,1)] x [D(m,1)])` for roots of unity `l`, `m` of order at most
/// `n_max` leaving `F` projectively invariant.
pub fn enumerate_swap_auts(f: &BiPoly, n_max: u32) -> Result<Vec<InvarianceCertificate>> {
    let (a, b) = f.bidegree();
    if a != b {
        return Err(Error::BidegreeAsymmetric { a, b });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // g^* F has s_ij l^j m^i at (j, i), so rho_ij l^j m^i must be constant
    // where rho_ij = s_ij / s_ji.
    let mut rho = Vec::new();
    for (&(i, j), c) in f.terms() {
        let other = f.coeff(j, i);
        if other.is_zero() {
            return Ok(Vec::new());
        }
        match c.checked_div(&other)?.as_root_of_unity() {
            Some(r) => rho.push((i, j, r)),
            None => return Ok(Vec::new()),
        }
    }
    let mut out = Vec::new();
    for d in canonical_triples(n_max, true) {
        let (l, m) = (d.lambda(), d.mu());
        let kappa = |&(i, j, r): &(u32, u32, RootOfUnity)| r.mul(l.pow(j as i64)).mul(m.pow(i as i64));
        let k0 = kappa(&rho[0]);
        if !rho.iter().all(|x| kappa(x) == k0) {
            continue;
        }
        let g = swap_aut(l, m);
        let Some(t) = invariance_scalar(f, &g) else {
            continue;
        };
        debug_assert_eq!(t, k0.to_scalar());
        let nu = l.mul(m);
        let order = if nu.is_one() { 2 } else { 2 * nu.order as u64 };
        out.push(InvarianceCertificate {
            automorphism: g,
            scalar_t: t,
            order,
        });
    }
    Ok(out)
}

fn swap_aut(l: RootOfUnity, m: RootOfUnity) -> SurfaceAut {
    use crate::surfauto::Mat2;
    SurfaceAut::new(
        true,
        Mat2::diag(l.to_scalar(), CycloScalar::one()),
        Mat2::diag(m.to_scalar(), CycloScalar::one()),
    )
    .expect("diagonal matrices are invertible")
}

/// Values that every automorphism order of a smooth `(a, b)` curve divides
/// some member of.
pub fn order_menu(a: u32, b: u32) -> Result<BTreeSet<u64>> {
    if a < 3 || b < 3 {
        return Err(Error::DegreeTooSmall { a, b, min: 3 });
    }
    let (a, b) = (a as u64, b as u64);
    let menu = [
        6,
        a - 2,
        b - 2,
        2 * (a - 1),
        2 * (b - 1),
        (a - 1) * (b - 1) + 1,
        a * (b - 1),
        (a - 1) * b,
        a * b,
    ];
    Ok(menu.into_iter().filter(|&k| k > 1).collect())
}

pub fn order_is_admissible(order: u64, a: u32, b: u32) -> Result<bool> {
    Ok(order_menu(a, b)?.iter().any(|m| m % order == 0))
}

pub fn check_order_bound(cert: &InvarianceCertificate, a: u32, b: u32) -> Result<bool> {
    order_is_admissible(cert.order, a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseClassification {
    pub corner_count: usize,
    pub members: Vec<Corner>,
    /// Coordinate changes applied before matching, in order.
    pub normalization: Vec<String>,
    pub normalized_bidegree: (u32, u32),
    /// The automorphism in the coordinates the branch is stated in.
    pub normal_form: String,
    pub case_id: String,
    /// Root-of-unity identities checked to hold exactly.
    pub relations: Vec<String>,
    pub divisor: u64,
    pub order: u64,
}

/// Exchange `X0` and `X1`.
fn flip_x(f: &BiPoly) -> BiPoly {
    let (a, b) = f.bidegree();
    BiPoly::from_terms(a, b, f.terms().iter().map(|(&(i, j), c)| ((a - i, j), c.clone())))
}

/// Exchange `Y0` and `Y1`.
fn flip_y(f: &BiPoly) -> BiPoly {
    let (a, b) = f.bidegree();
    BiPoly::from_terms(a, b, f.terms().iter().map(|(&(i, j), c)| ((i, b - j), c.clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    FlipX,
    FlipY,
    Exchange,
}

impl Move {
    fn label(self) -> &'static str {
        match self {
            Move::FlipX => "exchange X0,X1",
            Move::FlipY => "exchange Y0,Y1",
            Move::Exchange => "exchange factors",
        }
    }
}

const MOVE_SEQUENCES: [&[Move]; 8] = [
    &[],
    &[Move::FlipX],
    &[Move::FlipY],
    &[Move::FlipX, Move::FlipY],
    &[Move::Exchange],
    &[Move::FlipX, Move::Exchange],
    &[Move::FlipY, Move::Exchange],
    &[Move::FlipX, Move::FlipY, Move::Exchange],
];

/// A diagonal automorphism `[D(l,1)] x [D(m,1)]` of a curve, in some frame.
#[derive(Clone)]
struct Frame {
    f: BiPoly,
    l: RootOfUnity,
    m: RootOfUnity,
    moves: Vec<Move>,
}

impl Frame {
    fn apply(&self, mv: Move) -> Frame {
        let mut moves = self.moves.clone();
        moves.push(mv);
        match mv {
            Move::FlipX => Frame {
                f: flip_x(&self.f),
                l: self.l.inv(),
                m: self.m,
                moves,
            },
            Move::FlipY => Frame {
                f: flip_y(&self.f),
                l: self.l,
                m: self.m.inv(),
                moves,
            },
            Move::Exchange => Frame {
                f: self.f.transpose(),
                l: self.m,
                m: self.l,
                moves,
            },
        }
    }

    fn members(&self) -> Result<BTreeSet<Corner>> {
        Ok(corner_report(&self.f)?.members().into_iter().collect())
    }

    fn normalize(&self, targets: &[&[Corner]]) -> Result<Option<Frame>> {
        for seq in MOVE_SEQUENCES {
            let mut fr = self.clone();
            for &mv in seq {
                fr = fr.apply(mv);
            }
            let got = fr.members()?;
            if targets.iter().any(|t| t.iter().copied().collect::<BTreeSet<_>>() == got) {
                return Ok(Some(fr));
            }
        }
        Ok(None)
    }
}

fn pow_text(name: &str, e: i64) -> String {
    match e {
        1 => name.to_string(),
        _ => format!("{}^{}", name, e),
    }
}

/// Collects identities in `lambda`, `mu`, checking each one.
struct Relations {
    l: RootOfUnity,
    m: RootOfUnity,
    list: Vec<String>,
}

impl Relations {
    fn new(l: RootOfUnity, m: RootOfUnity) -> Self {
        Relations { l, m, list: Vec::new() }
    }

    fn root(&self, name: &str) -> RootOfUnity {
        match name {
            "lambda" => self.l,
            "mu" => self.m,
            _ => self.l.mul(self.m),
        }
    }

    /// `x^e = 1`.
    fn unit(&mut self, x: &str, e: i64) -> bool {
        let ok = self.root(x).pow(e).is_one();
        if ok {
            self.list.push(format!("{} = 1", pow_text(x, e)));
        }
        ok
    }

    /// `x^e = y^k`.
    fn eq(&mut self, x: &str, e: i64, y: &str, k: i64) -> bool {
        let ok = self.root(x).pow(e) == self.root(y).pow(k);
        if ok {
            self.list.push(format!("{} = {}", pow_text(x, e), pow_text(y, k)));
        }
        ok
    }

    fn minus_one(&mut self, x: &str) -> bool {
        let ok = self.root(x) == RootOfUnity::new(2, 1);
        if ok {
            self.list.push(format!("{} = -1", x));
        }
        ok
    }

    /// `y` is a power of `x`; records the smallest exponent.
    fn power_of(&mut self, y: &str, x: &str) -> bool {
        let (rx, ry) = (self.root(x), self.root(y));
        let hit = (1..=rx.order as i64).find(|&i| rx.pow(i) == ry);
        if let Some(i) = hit {
            self.list.push(format!("{} = {}", y, pow_text(x, i)));
        }
        hit.is_some()
    }

    fn divides(&mut self, order: u64, d: u64) -> bool {
        let ok = d % order == 0;
        if ok {
            self.list.push(format!("ord(f) = {} divides {}", order, d));
        }
        ok
    }

    fn mark(&self) -> usize {
        self.list.len()
    }

    fn reset(&mut self, mark: usize) {
        self.list.truncate(mark);
    }
}

struct Outcome {
    case_id: String,
    divisor: u64,
}

fn outcome(id: &str, divisor: u64) -> Option<Outcome> {
    Some(Outcome {
        case_id: id.into(),
        divisor,
    })
}

/// Try each branch in turn; a branch that fails has its partial relations
/// discarded.
fn first_branch(rel: &mut Relations, branches: &mut [&mut dyn FnMut(&mut Relations) -> Option<Outcome>]) -> Option<Outcome> {
    for br in branches.iter_mut() {
        let mark = rel.mark();
        if let Some(o) = br(rel) {
            return Some(o);
        }
        rel.reset(mark);
    }
    None
}

/// Branches for two member corners `{Q3, Q4}`.
fn two_adjacent(rel: &mut Relations, a: u64, b: u64, ord: u64) -> Option<Outcome> {
    first_branch(
        rel,
        &mut [
            &mut |r: &mut Relations| {
                (r.unit("lambda", a as i64 - 1) && r.unit("mu", b as i64) && r.power_of("lambda", "mu") && r.divides(ord, b))
                    .then(|| outcome("C2-Q34-b", b))
                    .flatten()
            },
            &mut |r: &mut Relations| {
                (r.minus_one("mu") && r.unit("lambda", 2 * a as i64) && r.divides(ord, 2 * a))
                    .then(|| outcome("C2-Q34-2a", 2 * a))
                    .flatten()
            },
        ],
    )
}

/// Branches for two member corners `{Q2, Q3}`.
fn two_opposite(rel: &mut Relations, a: u64, b: u64, ord: u64) -> Option<Outcome> {
    first_branch(
        rel,
        &mut [
            &mut |r: &mut Relations| {
                if !(r.eq("lambda", 1, "mu", 1) || r.eq("lambda", 1, "mu", -1)) {
                    return None;
                }
                if r.unit("lambda", a as i64 - 1) && r.divides(ord, a - 1) {
                    return outcome("C2-Q23-a-1", a - 1);
                }
                (r.unit("lambda", b as i64 - 1) && r.divides(ord, b - 1))
                    .then(|| outcome("C2-Q23-b-1", b - 1))
                    .flatten()
            },
            &mut |r: &mut Relations| {
                let d = (a - 1) * b;
                (r.eq("lambda", 1, "mu", -(b as i64)) && r.unit("mu", d as i64) && r.divides(ord, d))
                    .then(|| outcome("C2-Q23-(a-1)b", d))
                    .flatten()
            },
            &mut |r: &mut Relations| {
                let d = a * (b - 1);
                (r.eq("mu", 1, "lambda", -(a as i64)) && r.unit("lambda", d as i64) && r.divides(ord, d))
                    .then(|| outcome("C2-Q23-a(b-1)", d))
                    .flatten()
            },
        ],
    )
}

/// Member corners `{Q2, Q3, Q4}`.
fn three(rel: &mut Relations, a: u64, b: u64, ord: u64) -> Option<Outcome> {
    let g1 = gcd(a.abs_diff(2), 2 * b - 1);
    let g2 = gcd(2 * a - 1, b.abs_diff(2));
    first_branch(
        rel,
        &mut [
            &mut |r: &mut Relations| {
                if !r.divides(ord, g1) {
                    return None;
                }
                let _ = r.eq("mu", 1, "lambda", -2) || r.eq("lambda", 1, "mu", 1);
                outcome("C3-gcd(a-2,2b-1)", g1)
            },
            &mut |r: &mut Relations| {
                if !r.divides(ord, g2) {
                    return None;
                }
                let _ = r.eq("lambda", 1, "mu", -2) || r.eq("lambda", 1, "mu", 1);
                outcome("C3-gcd(2a-1,b-2)", g2)
            },
        ],
    )
}

fn four(rel: &mut Relations, a: u64, b: u64, ord: u64) -> Option<Outcome> {
    let big = (a - 1) * (b - 1) + 1;
    first_branch(
        rel,
        &mut [
            &mut |r: &mut Relations| {
                if !(r.eq("lambda", 1, "mu", 1) || r.eq("lambda", 1, "mu", -1)) {
                    return None;
                }
                let g = gcd(a, b.abs_diff(2));
                if r.divides(ord, g) {
                    return outcome("C4-gcd(a,b-2)", g);
                }
                let g = gcd(a.abs_diff(2), b);
                r.divides(ord, g).then(|| outcome("C4-gcd(a-2,b)", g)).flatten()
            },
            &mut |r: &mut Relations| {
                (r.power_of("mu", "lambda") && r.unit("lambda", a as i64) && r.unit("mu", b as i64 - 2) && r.divides(ord, a))
                    .then(|| outcome("C4-a", a))
                    .flatten()
            },
            &mut |r: &mut Relations| {
                (r.power_of("lambda", "mu") && r.unit("lambda", a as i64 - 2) && r.unit("mu", b as i64) && r.divides(ord, b))
                    .then(|| outcome("C4-b", b))
                    .flatten()
            },
            &mut |r: &mut Relations| {
                (r.eq("mu", b as i64 - 1, "lambda", 1) && r.unit("mu", big as i64) && r.divides(ord, big))
                    .then(|| outcome("C4-(a-1)(b-1)+1-mu", big))
                    .flatten()
            },
            &mut |r: &mut Relations| {
                (r.eq("lambda", a as i64 - 1, "mu", 1) && r.unit("lambda", big as i64) && r.divides(ord, big))
                    .then(|| outcome("C4-(a-1)(b-1)+1-lambda", big))
                    .flatten()
            },
        ],
    )
}

/// Brings a certificate into a frame where the automorphism is
/// `[D(l,1)] x [D(m,1)]` or `s o ([A] x [B])` with `A`, `B` diagonal.
fn normal_coordinates(f: &BiPoly, g: &SurfaceAut) -> Result<(BiPoly, SurfaceAut, Vec<String>)> {
    let diagonal_swap = g.swap() && g.a().is_diagonal() && g.b().is_diagonal();
    if diagonal_swap || g.as_diagonal().is_some() {
        return Ok((f.clone(), g.clone(), Vec::new()));
    }
    let dz = g.diagonalize()?;
    let h = dz.normal.to_aut();
    let f2 = f.pullback(&dz.conjugator.inverse());
    Ok((f2, h, vec![format!("conjugate by {}", dz.conjugator)]))
}

pub fn classify_corner_case(f: &BiPoly, cert: &InvarianceCertificate) -> Result<CaseClassification> {
    let g0 = &cert.automorphism;
    if g0.is_identity() {
        return Err(Error::IdentityHasNoProperFixedLocus);
    }
    let (f1, g, mut normalization) = normal_coordinates(f, g0)?;
    let report = corner_report(&f1)?;
    let members = report.members();
    let count = report.corner_count;
    let ord = cert.order;
    let (a, b) = f1.bidegree();
    let fail = |claim: &str, detail: String| violation(claim, detail, f, g0);

    if g.swap() {
        let nu = g
            .b()
            .mul(g.a())
            .entries()[0]
            .checked_div(&g.b().mul(g.a()).entries()[3])?
            .as_root_of_unity()
            .ok_or(Error::NotFiniteOrder)?;
        if a != b {
            return Err(fail("a swap automorphism forces a = b", format!("bidegree ({},{})", a, b)));
        }
        let mut rel = Relations::new(nu, nu);
        let n = a as u64;
        let set: BTreeSet<Corner> = members.iter().copied().collect();
        let is = |c: &[Corner]| c.iter().copied().collect::<BTreeSet<_>>() == set;
        let hit = if nu.is_one() {
            rel.list.push("f^2 = id".into());
            outcome("S-involution", 2)
        } else {
            match count {
                0 => (rel.unit("nu", n as i64) && rel.divides(ord, 2 * n))
                    .then(|| outcome("S0-2a", 2 * n))
                    .flatten(),
                1 => {
                    return Err(fail(
                        "no curve meets exactly one corner under f^2 = [D(nu,1)]x[D(nu,1)]",
                        format!("corner count 1, nu = {}", nu),
                    ))
                }
                2 => {
                    if !(is(&[Corner::Q1, Corner::Q4]) || is(&[Corner::Q2, Corner::Q3])) {
                        return Err(fail(
                            "a swap-type automorphism meets the corners in {Q1,Q4} or {Q2,Q3}",
                            format!("members {:?}", members),
                        ));
                    }
                    if rel.unit("nu", n as i64 - 1) && rel.divides(ord, 2 * (n - 1)) {
                        outcome("S2-2(a-1)", 2 * (n - 1))
                    } else {
                        (rel.unit("nu", 2) && rel.divides(ord, 4)).then(|| outcome("S2-4", 4)).flatten()
                    }
                }
                3 => {
                    if !(is(&[Corner::Q1, Corner::Q2, Corner::Q3]) || is(&[Corner::Q2, Corner::Q3, Corner::Q4])) {
                        return Err(fail(
                            "a swap-type automorphism meets the corners in {Q1,Q2,Q3} or {Q2,Q3,Q4}",
                            format!("members {:?}", members),
                        ));
                    }
                    (rel.unit("nu", 3) && rel.divides(ord, 6)).then(|| outcome("S3-6", 6)).flatten()
                }
                _ => (rel.unit("nu", 2) && rel.divides(ord, 4)).then(|| outcome("S4-4", 4)).flatten(),
            }
        };
        let Some(o) = hit else {
            return Err(fail(
                "swap-type order bound",
                format!("no branch matches: corner count {}, nu = {}, order {}", count, nu, ord),
            ));
        };
        return Ok(CaseClassification {
            corner_count: count,
            members,
            normalization,
            normalized_bidegree: (a, b),
            normal_form: g.to_string(),
            case_id: o.case_id,
            relations: rel.list,
            divisor: o.divisor,
            order: ord,
        });
    }

    let d = g.as_diagonal().ok_or(Error::NotFiniteOrder)?;
    let start = Frame {
        f: f1.clone(),
        l: d.lambda(),
        m: d.mu(),
        moves: Vec::new(),
    };
    let one_sided = d.r1 == 0 || d.r2 == 0;
    let frame = if one_sided {
        Some(start)
    } else {
        match count {
            1 => {
                return Err(fail(
                    "no smooth curve with a diagonal automorphism meets exactly one corner",
                    format!("members {:?}", members),
                ))
            }
            2 => start.normalize(&[&[Corner::Q3, Corner::Q4], &[Corner::Q2, Corner::Q3]])?,
            3 => start.normalize(&[&[Corner::Q2, Corner::Q3, Corner::Q4]])?,
            _ => Some(start),
        }
    };
    let Some(fr) = frame else {
        return Err(fail("corner normalization", format!("members {:?} cannot be normalized", members)));
    };
    normalization.extend(fr.moves.iter().map(|m| m.label().to_string()));
    let (na, nb) = fr.f.bidegree();
    let (a64, b64) = (na as u64, nb as u64);
    let mut rel = Relations::new(fr.l, fr.m);
    let hit = if d.r2 == 0 {
        (rel.unit("lambda", a64 as i64) && rel.divides(ord, a64))
            .then(|| outcome("L-first-a", a64))
            .flatten()
    } else if d.r1 == 0 {
        (rel.unit("mu", b64 as i64) && rel.divides(ord, b64))
            .then(|| outcome("L-second-b", b64))
            .flatten()
    } else {
        match count {
            0 => {
                let l = lcm(a64, b64);
                (rel.unit("lambda", a64 as i64) && rel.unit("mu", b64 as i64) && rel.divides(ord, l))
                    .then(|| outcome("C0-lcm(a,b)", l))
                    .flatten()
            }
            2 => {
                let got = fr.members()?;
                if got.contains(&Corner::Q4) {
                    two_adjacent(&mut rel, a64, b64, ord)
                } else {
                    two_opposite(&mut rel, a64, b64, ord)
                }
            }
            3 => three(&mut rel, a64, b64, ord),
            _ => four(&mut rel, a64, b64, ord),
        }
    };
    let Some(o) = hit else {
        return Err(fail(
            "diagonal order bound",
            format!(
                "no branch matches: corner count {}, lambda = {}, mu = {}, order {}",
                count, fr.l, fr.m, ord
            ),
        ));
    };
    Ok(CaseClassification {
        corner_count: count,
        members,
        normalization,
        normalized_bidegree: (na, nb),
        normal_form: DiagonalAut::from_roots(fr.l, fr.m).to_string(),
        case_id: o.case_id,
        relations: rel.list,
        divisor: o.divisor,
        order: ord,
    })
}

/// `f^k = [A] x [I]` with `[A]` of order `a`, so `p2` is a cyclic Galois
/// cover of degree `a`; or the same with the factors exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisWitness {
    /// The projection that is the Galois cover.
    pub projection: Axis,
    pub k: u64,
}

pub fn galois_criterion(f: &BiPoly, cert: &InvarianceCertificate) -> Option<GaloisWitness> {
    let (a, b) = f.bidegree();
    let g = &cert.automorphism;
    let powers: Vec<(u64, SurfaceAut)> = match g.as_diagonal() {
        Some(d) => (1..=cert.order).map(|k| (k, d.pow(k as i64).to_aut())).collect(),
        None => {
            let mut acc = SurfaceAut::identity();
            (1..=cert.order)
                .map(|k| {
                    acc = acc.compose(g);
                    (k, acc.clone())
                })
                .collect()
        }
    };
    let acts_only = |h: &SurfaceAut, axis: Axis, deg: u32| {
        if h.swap() {
            return false;
        }
        let (moving, fixed) = match axis {
            Axis::First => (h.a(), h.b()),
            Axis::Second => (h.b(), h.a()),
        };
        fixed.is_scalar() && pgl_order(moving) == Some(deg as u64)
    };
    for (axis, projection, deg) in [(Axis::First, Axis::Second, a), (Axis::Second, Axis::First, b)] {
        if let Some((k, _)) = powers.iter().find(|(_, h)| acts_only(h, axis, deg)) {
            return Some(GaloisWitness { projection, k: *k });
        }
    }
    None
}

fn count_on_locus(f: &BiPoly, locus: &FixedLocus) -> Result<u64> {
    Ok(match locus {
        FixedLocus::FourCorners => corner_report(f)?.corner_count as u64,
        FixedLocus::TwoFibers(axis) => {
            fiber_points(f, *axis, FiberAt::Zero)? + fiber_points(f, *axis, FiberAt::Infinity)?
        }
        FixedLocus::SwapFinite(pts) => pts.iter().filter(|(x, y)| f.eval(x, y).is_zero()).count() as u64,
        FixedLocus::SwapCurve(m) => graph_points(f, m)?,
        FixedLocus::Conjugated { conjugator, normal } => {
            count_on_locus(&f.pullback(&conjugator.inverse()), normal)?
        }
    })
}

/// `|Fix(g) ∩ C|`.
pub fn fixed_point_count(f: &BiPoly, g: &SurfaceAut) -> Result<u64> {
    count_on_locus(f, &g.fixed_locus()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub group_order: u64,
    /// `k -> |Fix(f^k) ∩ C|` for `1 <= k < |G|`.
    pub fix_counts: BTreeMap<u64, u64>,
    pub stabilizer_sum: u64,
    pub genus: u64,
    pub quotient_genus: u64,
}

/// Riemann-Hurwitz for `C -> C/<f>`:
/// `2g - 2 = |G| (2g' - 2) + sum_x (|G_x| - 1)`.
pub fn quotient_genus(f: &BiPoly, cert: &InvarianceCertificate) -> Result<QuotientReport> {
    let (a, b) = f.bidegree();
    let n = cert.order;
    let g = &cert.automorphism;
    let diag = g.as_diagonal();
    let mut by_subgroup: BTreeMap<u64, u64> = BTreeMap::new();
    let mut fix_counts = BTreeMap::new();
    for k in 1..n {
        // f^k and f^gcd(k,n) generate the same subgroup, hence fix the same points.
        let e = gcd(k, n);
        let c = match by_subgroup.get(&e) {
            Some(&c) => c,
            None => {
                let h = match diag {
                    Some(d) => d.pow(e as i64).to_aut(),
                    None => g.pow(e),
                };
                let c = fixed_point_count(f, &h)?;
                by_subgroup.insert(e, c);
                c
            }
        };
        fix_counts.insert(k, c);
    }
    let stabilizer_sum: u64 = fix_counts.values().sum();
    let genus = genus(a, b);
    let lhs = 2 * genus as i64 - 2 - stabilizer_sum as i64;
    let denom = 2 * n as i64;
    let bad = || Error::NonIntegralGenus {
        lhs,
        group_order: n,
        stabilizer_sum,
        replay: vec![
            format!("biquad quotient-genus --poly '{}' --aut '{}'", f, g),
        ],
    };
    // 2g' - 2 = lhs / n, so g' = (lhs + 2n) / 2n.
    if (lhs + denom).rem_euclid(denom) != 0 || lhs + denom < 0 {
        return Err(bad());
    }
    let quotient = ((lhs + denom) / denom) as u64;
    Ok(QuotientReport {
        group_order: n,
        fix_counts,
        stabilizer_sum,
        genus,
        quotient_genus: quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> CycloScalar {
        CycloScalar::from_integer(k)
    }

    fn poly(a: u32, b: u32, terms: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_terms(a, b, terms.iter().map(|&(ij, c)| (ij, int(c))))
    }

    fn pure_corners(a: u32, b: u32, s: i64) -> BiPoly {
        poly(a, b, &[((a, b), 1), ((a, 0), 1), ((0, b), 1), ((0, 0), s)])
    }

    #[test]
    fn menu_values() {
        let m: Vec<u64> = order_menu(4, 5).unwrap().into_iter().collect();
        assert_eq!(m, [2, 3, 6, 8, 13, 15, 16, 20]);
        let m: Vec<u64> = order_menu(3, 3).unwrap().into_iter().collect();
        assert_eq!(m, [4, 5, 6, 9]);
        let m: Vec<u64> = order_menu(4, 4).unwrap().into_iter().collect();
        assert_eq!(m, [2, 6, 10, 12, 16]);
        assert!(order_menu(2, 5).is_err());
        assert!(order_is_admissible(20, 4, 5).unwrap());
        assert!(order_is_admissible(13, 4, 5).unwrap());
        assert!(!order_is_admissible(7, 4, 5).unwrap());
    }

    #[test]
    fn scalar_of_invariance() {
        let f = pure_corners(4, 5, 2);
        let d = DiagonalAut::new(20, 5, 4);
        assert_eq!(invariance_scalar(&f, &d.to_aut()), Some(CycloScalar::one()));
        let g = poly(3, 3, &[((3, 3), 1), ((0, 0), 1)]);
        assert_eq!(invariance_scalar(&g, &DiagonalAut::new(2, 1, 0).to_aut()), None);
    }

    #[test]
    fn diagonal_group_of_pure_corners() {
        let f = pure_corners(4, 5, 2);
        let en = enumerate_diagonal_auts(&f, 20).unwrap();
        assert_eq!(en.group_order(), 20);
        assert!(en.closed);
        assert_eq!(en.structure, [20]);
        assert!(en.automorphisms.iter().all(|d| d.lambda().pow(4).is_one() && d.mu().pow(5).is_one()));
    }

    #[test]
    fn dense_curve_has_no_diagonal_symmetry() {
        let (a, b) = (3u32, 3u32);
        let mut terms = Vec::new();
        let mut c = 1;
        for i in 0..=a {
            for j in 0..=b {
                terms.push(((i, j), c));
                c += 1;
            }
        }
        let f = poly(a, b, &terms);
        assert!(enumerate_diagonal_auts(&f, 40).unwrap().certificates.is_empty());
    }

    #[test]
    fn swap_symmetric() {
        let f = pure_corners(3, 3, 1);
        let certs = enumerate_swap_auts(&f, 9).unwrap();
        assert!(certs.iter().any(|c| c.automorphism == SurfaceAut::swap_only() && c.order == 2));
        assert!(certs.iter().all(|c| c.holds_for(&f)));
        let lopsided = poly(3, 3, &[((3, 3), 1), ((3, 0), 1), ((0, 0), 1)]);
        assert!(enumerate_swap_auts(&lopsided, 9).unwrap().is_empty());
        assert!(matches!(
            enumerate_swap_auts(&pure_corners(3, 4, 2), 9),
            Err(Error::BidegreeAsymmetric { .. })
        ));
    }

    #[test]
    fn fixed_points_on_fibers() {
        let f = pure_corners(4, 5, 2);
        let g = DiagonalAut::new(4, 1, 0).to_aut();
        assert_eq!(fixed_point_count(&f, &g).unwrap(), 10);
        assert_eq!(fixed_point_count(&f, &DiagonalAut::new(20, 5, 4).to_aut()).unwrap(), 0);
    }

    #[test]
    fn quotient_of_pure_corners() {
        let f = pure_corners(4, 5, 2);
        let cert = certify(&f, &DiagonalAut::new(20, 5, 4).to_aut()).unwrap();
        let q = quotient_genus(&f, &cert).unwrap();
        assert_eq!(q.quotient_genus, 0);
        let w = galois_criterion(&f, &cert).unwrap();
        assert_eq!((w.projection, w.k), (Axis::Second, 5));
        let c = classify_corner_case(&f, &cert).unwrap();
        assert_eq!((c.corner_count, c.divisor), (0, 20));
    }

    #[test]
    fn trivial_group_keeps_genus() {
        let f = pure_corners(4, 5, 2);
        let cert = InvarianceCertificate {
            automorphism: SurfaceAut::identity(),
            scalar_t: CycloScalar::one(),
            order: 1,
        };
        assert_eq!(quotient_genus(&f, &cert).unwrap().quotient_genus, 12);
    }

    #[test]
    fn involution_has_no_galois_witness() {
        let f = pure_corners(3, 3, 2);
        let cert = certify(&f, &DiagonalAut::new(2, 1, 1).to_aut());
        if let Some(cert) = cert {
            assert_eq!(galois_criterion(&f, &cert), None);
        }
        let cert = certify(&f, &SurfaceAut::swap_only()).unwrap();
        assert_eq!(galois_criterion(&f, &cert), None);
    }

    #[test]
    fn single_corner_is_reported() {
        // Only Q4 on the curve; a diagonal symmetry would contradict the
        // corner lemma, so feeding one in by hand must produce a violation.
        let f = poly(3, 3, &[((3, 3), 1), ((3, 0), 1), ((0, 3), 1), ((1, 0), 1), ((0, 1), 1)]);
        let cert = InvarianceCertificate {
            automorphism: DiagonalAut::new(3, 1, 1).to_aut(),
            scalar_t: CycloScalar::one(),
            order: 3,
        };
        assert!(matches!(classify_corner_case(&f, &cert), Err(Error::TheoremViolation(_))));
    }
}
