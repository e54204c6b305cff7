//! Polynomials in `y` with coefficients in `K[x]`, resultants by the
//! subresultant algorithm, and gcds over `K[x]/(p)` for squarefree `p` by
//! dynamic evaluation (split `p` whenever a leading coefficient turns out to be
//! a zero divisor).

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::UniPoly;
use crate::scalars::CycloScalar;

/// `sum_k c_k(x) y^k`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecPoly {
    coeffs: Vec<UniPoly>,
}

impl RecPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        RecPoly { coeffs }
    }

    pub fn zero() -> Self {
        RecPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &UniPoly {
        self.coeffs.last().expect("lead of zero polynomial")
    }

    fn scale(&self, c: &UniPoly) -> RecPoly {
        RecPoly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    fn sub(&self, rhs: &RecPoly) -> RecPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => UniPoly::zero(),
            });
        }
        RecPoly::new(v)
    }

    fn shift(&self, k: usize) -> RecPoly {
        let mut v = vec![UniPoly::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        RecPoly::new(v)
    }

    fn div_coeffs(&self, c: &UniPoly) -> RecPoly {
        RecPoly::new(self.coeffs.iter().map(|x| x.div_exact(c)).collect())
    }

    /// Monic gcd of all coefficients.
    pub fn content(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    /// The value at `y = 0`.
    pub fn tail(&self) -> UniPoly {
        self.coeffs.first().cloned().unwrap_or_else(UniPoly::zero)
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn pseudo_rem(a: &RecPoly, b: &RecPoly) -> RecPoly {
    let db = b.degree().expect("pseudo division by zero");
    let da = match a.degree() {
        Some(d) if d >= db => d,
        _ => return a.clone(),
    };
    let lb = b.lead().clone();
    let mut r = a.clone();
    let mut e = da - db + 1;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let s = b.scale(r.lead()).shift(dr - db);
        r = r.scale(&lb).sub(&s);
        e -= 1;
    }
    if e > 0 {
        r = r.scale(&lb.pow(e as u32));
    }
    r
}

/// `Res_y(a, b)` by the subresultant algorithm, with contents removed once
/// up front.
pub fn resultant(a: &RecPoly, b: &RecPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let ca = a.content();
    let cb = b.content();
    let mut a = a.div_coeffs(&ca);
    let mut b = b.div_coeffs(&cb);
    let da0 = a.degree().unwrap() as u32;
    let db0 = b.degree().unwrap() as u32;
    let t = ca.pow(db0).mul(&cb.pow(da0));
    let mut s = CycloScalar::one();
    if da0 < db0 {
        core::mem::swap(&mut a, &mut b);
        if da0 % 2 == 1 && db0 % 2 == 1 {
            s = -s;
        }
    }
    if b.degree() == Some(0) {
        let h = b.lead().pow(a.degree().unwrap() as u32);
        return h.mul(&t).scale(&s);
    }
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        let divisor = g.mul(&h.pow(delta as u32));
        a = b;
        b = r.div_coeffs(&divisor);
        g = a.lead().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32).div_exact(&h.pow(delta as u32 - 1))
        };
        match b.degree() {
            None => return UniPoly::zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap() as u32;
    let h = if da == 0 {
        h
    } else {
        b.lead().pow(da).div_exact(&h.pow(da - 1))
    };
    h.mul(&t).scale(&s)
}

/// Inverse of `c` modulo `p`, or a nontrivial factorization of `p` exposed by
/// `c` being a zero divisor.
pub enum Unit {
    Inverse(UniPoly),
    Split(UniPoly, UniPoly),
    Zero,
}

pub fn invert_mod(c: &UniPoly, p: &UniPoly) -> Unit {
    let c = c.rem(p);
    if c.is_zero() {
        return Unit::Zero;
    }
    // Extended Euclid tracking the cofactor of c.
    let mut r0 = p.clone();
    let mut r1 = c;
    let mut s0 = UniPoly::zero();
    let mut s1 = UniPoly::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
    }
    if r0.degree() == Some(0) {
        let k = r0.lead().unwrap().inv().expect("nonzero");
        return Unit::Inverse(s0.scale(&k).rem(p));
    }
    let g = r0.monic();
    let rest = p.div_exact(&g).monic();
    Unit::Split(g, rest)
}

/// A branch of the computation: the squarefree modulus it is valid on and
/// the value computed there.
#[derive(Clone, Debug)]
pub struct Branch {
    pub modulus: UniPoly,
    pub value: RecPoly,
}

fn reduce(f: &RecPoly, p: &UniPoly) -> RecPoly {
    RecPoly::new(f.coeffs.iter().map(|c| c.rem(p)).collect())
}

fn rem_monic(a: &RecPoly, b: &RecPoly, p: &UniPoly) -> RecPoly {
    // b is monic over K[x]/(p).
    let db = b.degree().unwrap();
    let mut r = a.coeffs.clone();
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            for (t, bt) in b.coeffs.iter().enumerate() {
                r[top - db + t] = r[top - db + t].sub(&c.mul(bt)).rem(p);
            }
        }
        r.pop();
    }
    reduce(&RecPoly::new(r), p)
}

fn make_monic(f: &RecPoly, p: &UniPoly) -> Result<RecPoly, (UniPoly, UniPoly)> {
    match f.degree() {
        None => Ok(RecPoly::zero()),
        Some(_) => match invert_mod(f.lead(), p) {
            Unit::Inverse(u) => Ok(reduce(&f.scale(&u), p)),
            Unit::Split(g, h) => Err((g, h)),
            Unit::Zero => unreachable!("reduced polynomial has zero lead"),
        },
    }
}

fn gcd2(p: UniPoly, a: RecPoly, b: RecPoly, out: &mut Vec<Branch>) {
    let mut a = reduce(&a, &p);
    let mut b = reduce(&b, &p);
    loop {
        if b.is_zero() {
            match make_monic(&a, &p) {
                Ok(g) => out.push(Branch { modulus: p, value: g }),
                Err((g, h)) => {
                    gcd2(g, a.clone(), RecPoly::zero(), out);
                    gcd2(h, a, RecPoly::zero(), out);
                }
            }
            return;
        }
        match make_monic(&b, &p) {
            Ok(bm) => {
                let r = rem_monic(&a, &bm, &p);
                a = bm;
                b = r;
            }
            Err((g, h)) => {
                gcd2(g, a.clone(), b.clone(), out);
                gcd2(h, a, b, out);
                return;
            }
        }
    }
}

/// Monic gcd in `(K[x]/(p))[y]` of all of `polys`, one entry per branch of
/// the splitting of the squarefree `p`. Branches cover all roots of `p`.
pub fn gcd_over(p: &UniPoly, polys: &[RecPoly]) -> Vec<Branch> {
    let mut acc = vec![Branch {
        modulus: p.monic(),
        value: RecPoly::zero(),
    }];
    for f in polys {
        let mut next = Vec::new();
        for br in acc {
            gcd2(br.modulus, br.value, f.clone(), &mut next);
        }
        acc = next;
    }
    acc
}

/// True when `g` divides every one of `polys` modulo `p` (for `g = 0`: when
/// they all vanish modulo `p`).
pub fn divides_all(p: &UniPoly, g: &RecPoly, polys: &[RecPoly]) -> bool {
    polys.iter().all(|f| {
        let f = reduce(f, p);
        if g.is_zero() {
            f.is_zero()
        } else {
            rem_monic(&f, g, p).is_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(v: &[i64]) -> UniPoly {
        UniPoly::new(v.iter().map(|&k| CycloScalar::from_integer(k)).collect())
    }

    fn rp(v: &[&[i64]]) -> RecPoly {
        RecPoly::new(v.iter().map(|c| up(c)).collect())
    }

    // Sylvester determinant by cofactor expansion, as an independent oracle for
    // constant coefficients.
    fn det(m: Vec<Vec<i64>>) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0;
        for c in 0..n {
            if m[0][c] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            acc += sign * m[0][c] * det(minor);
        }
        acc
    }

    fn sylvester(a: &[i64], b: &[i64]) -> i64 {
        let m = a.len() - 1;
        let n = b.len() - 1;
        let size = m + n;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut row = vec![0; size];
            for (k, &c) in a.iter().rev().enumerate() {
                row[i + k] = c;
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![0; size];
            for (k, &c) in b.iter().rev().enumerate() {
                row[i + k] = c;
            }
            rows.push(row);
        }
        det(rows)
    }

    #[test]
    fn matches_sylvester_on_constants() {
        let cases: &[(&[i64], &[i64])] = &[
            (&[1, 2, 3], &[4, 5]),
            (&[2, 0, 1, 1], &[1, 1, 3]),
            (&[-1, 0, 0, 0, 1], &[3, 1, 0, 2]),
            (&[5, 1], &[2, 7, 1, 1]),
            (&[1, 1, 1, 1, 1], &[1, -1, 1]),
        ];
        for (a, b) in cases {
            let ra = RecPoly::new(a.iter().map(|&k| up(&[k])).collect());
            let rb = RecPoly::new(b.iter().map(|&k| up(&[k])).collect());
            let r = resultant(&ra, &rb);
            assert_eq!(r, up(&[sylvester(a, b)]), "{:?} {:?}", a, b);
        }
    }

    #[test]
    fn eliminates_a_common_point() {
        // y - x and y^2 - 1: resultant x^2 - 1 up to sign
        let f = rp(&[&[0, -1], &[1]]);
        let g = rp(&[&[-1], &[], &[1]]);
        let r = resultant(&f, &g);
        assert_eq!(r.monic(), up(&[-1, 0, 1]));
    }

    #[test]
    fn shared_factor_gives_zero() {
        // (y - x)(y + 1) and (y - x)(y - 2)
        let a = rp(&[&[0, -1], &[1, -1], &[1]]);
        let b = rp(&[&[0, 2], &[-2, -1], &[1]]);
        assert!(resultant(&a, &b).is_zero());
    }

    #[test]
    fn gcd_splits_the_modulus() {
        // Over x^2 - 1: y - x and y - 1 agree only at x = 1.
        let p = up(&[-1, 0, 1]);
        let a = rp(&[&[0, -1], &[1]]);
        let b = rp(&[&[-1], &[1]]);
        let branches = gcd_over(&p, &[a.clone(), b.clone()]);
        let mut found_common = false;
        for br in &branches {
            assert!(divides_all(&br.modulus, &br.value, &[a.clone(), b.clone()]));
            if br.value.degree() == Some(1) {
                assert_eq!(br.modulus, up(&[-1, 1]));
                found_common = true;
            }
        }
        assert!(found_common);
        assert_eq!(branches.len(), 2);
    }
}
