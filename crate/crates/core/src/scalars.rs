//! Elements of cyclotomic fields `Q(z_N)`, stored modulo the cyclotomic
//! polynomial `Phi_N` so that equal values have equal representations.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// The `n`-th cyclotomic polynomial, coefficients from degree 0 upwards.
///
/// Built as `prod_{d | n} (x^{n/d} - 1)^{mu(d)}`: multiply in the factors with
/// `mu = 1`, then divide out the others. Every division is exact.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let n = n as u64;
    let mut p = vec![BigInt::one()];
    let divs = divisors(n);
    for &d in &divs {
        if mobius(d) == 1 {
            let k = (n / d) as usize;
            let mut q = vec![BigInt::zero(); p.len() + k];
            for (i, c) in p.iter().enumerate() {
                q[i + k] += c;
                q[i] -= c;
            }
            p = q;
        }
    }
    for &d in &divs {
        if mobius(d) == -1 {
            let k = (n / d) as usize;
            let deg = p.len() - 1;
            let mut q = vec![BigInt::zero(); deg - k + 1];
            for i in 0..q.len() {
                let prev = if i >= k { q[i - k].clone() } else { BigInt::zero() };
                q[i] = prev - &p[i];
            }
            p = q;
        }
    }
    p
}

#[derive(Debug)]
struct Field {
    n: u32,
    phi: usize,
    // Phi_n without its leading 1.
    modulus: Vec<BigInt>,
}

impl Field {
    fn new(n: u32) -> Arc<Field> {
        let mut modulus = cyclotomic_polynomial(n);
        modulus.pop();
        Arc::new(Field {
            n,
            phi: modulus.len(),
            modulus,
        })
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.phi;
        for k in (phi..v.len()).rev() {
            let c = core::mem::replace(&mut v[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (t, m) in self.modulus.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let slot = &mut v[k - phi + t];
                if m.is_one() {
                    *slot -= &c;
                } else if (-m).is_one() {
                    *slot += &c;
                } else {
                    *slot -= &c * BigRational::from_integer(m.clone());
                }
            }
        }
        v.resize(phi, BigRational::zero());
        v
    }
}

/// An element of `Q(z_N)`, the coefficients of its residue modulo `Phi_N`
/// in the power basis `1, z_N, ..., z_N^{phi(N)-1}`.
#[derive(Clone)]
pub struct CycloScalar {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    /// Reduce an arbitrary polynomial in `z_n` into canonical form.
    pub fn from_power_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let field = Field::new(n);
        let coeffs = field.reduce(coeffs);
        CycloScalar { field, coeffs }
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloScalar::from_power_coeffs(1, vec![q])
    }

    pub fn from_integer(k: i64) -> Self {
        CycloScalar::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(CycloScalar::from_rational(BigRational::new(
            BigInt::from(p),
            BigInt::from(q),
        )))
    }

    pub fn zero() -> Self {
        CycloScalar::from_integer(0)
    }

    pub fn one() -> Self {
        CycloScalar::from_integer(1)
    }

    /// `z_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        CycloScalar::from_power_coeffs(n, v)
    }

    pub fn zeta(n: u32) -> Self {
        CycloScalar::zeta_pow(n, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(z_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        let n = self.field.n;
        assert!(m % n == 0, "cannot lift conductor {} to {}", n, m);
        if m == n {
            return self.clone();
        }
        let step = (m / n) as usize;
        let mut v = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        CycloScalar::from_power_coeffs(m, v)
    }

    fn with_field(&self, field: &Arc<Field>, coeffs: Vec<BigRational>) -> Self {
        let _ = self;
        CycloScalar {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.field.n as u64, b.field.n as u64) as u32;
        let a2 = a.lift(m);
        let b2 = if b.field.n == m {
            b.clone()
        } else {
            let mut b2 = b.lift(m);
            b2.field = a2.field.clone();
            b2
        };
        (a2, b2)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        if self.field.n == rhs.field.n {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| f(x, y)).collect();
            return CycloScalar {
                field: self.field.clone(),
                coeffs,
            };
        }
        let (a, b) = CycloScalar::aligned(self, rhs);
        a.zip_with(&b, f)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.field.n != rhs.field.n {
            let (a, b) = CycloScalar::aligned(self, rhs);
            return a.mul_ref(&b);
        }
        if self.field.phi == 1 {
            return CycloScalar {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut v = vec![BigRational::zero(); 2 * self.field.phi - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        self.with_field(&self.field, v)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            let mut out = CycloScalar::zero();
            out.field = self.field.clone();
            out.coeffs = vec![BigRational::zero(); self.field.phi];
            out.coeffs[0] = q.recip();
            return Ok(out);
        }
        let mut modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        modulus.push(BigRational::one());
        let inv = qpoly::inverse_mod(&self.coeffs, &modulus);
        Ok(self.with_field(&self.field, inv))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiply by `z_N` at the current conductor: a shift plus one reduction.
    fn times_zeta(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(BigRational::zero());
        v.extend(self.coeffs.iter().cloned());
        self.with_field(&self.field, v)
    }

    /// Recognize a root of unity. The roots of unity in `Q(z_N)` are the
    /// `lcm(N, 2)`-th ones, so a scan over that group is exhaustive.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return if q.is_one() {
                Some(RootOfUnity::new(1, 0))
            } else if (-q).is_one() {
                Some(RootOfUnity::new(2, 1))
            } else {
                None
            };
        }
        let m = lcm(self.field.n as u64, 2) as u32;
        let target = self.lift(m);
        let mut cur = CycloScalar::one().lift(m);
        for k in 0..m {
            if cur.coeffs == target.coeffs {
                return Some(RootOfUnity::new(m, k));
            }
            cur = cur.times_zeta();
        }
        None
    }

    /// The same value at the smallest conductor dividing the current one
    /// that contains it.
    pub fn minimize(&self) -> Self {
        let n = self.field.n;
        if let Some(q) = self.to_rational() {
            return CycloScalar::from_rational(q);
        }
        for d in divisors(n as u64) {
            let d = d as u32;
            if d == n {
                break;
            }
            let phi_d = euler_phi(d as u64) as usize;
            let basis: Vec<CycloScalar> =
                (0..phi_d).map(|k| CycloScalar::zeta_pow(d, k as i64).lift(n)).collect();
            if let Some(sol) = qpoly::solve_span(&basis.iter().map(|b| b.coeffs.clone()).collect::<Vec<_>>(), &self.coeffs) {
                return CycloScalar::from_power_coeffs(d, sol);
            }
        }
        self.clone()
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycloScalar::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.mul_ref(rhs)
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: CycloScalar) -> CycloScalar {
        &self + &rhs
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: CycloScalar) -> CycloScalar {
        &self - &rhs
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        &self * &rhs
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if self.field.n == rhs.field.n {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        if self.field.n == rhs.field.n {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl From<i64> for CycloScalar {
    fn from(k: i64) -> Self {
        CycloScalar::from_integer(k)
    }
}

impl From<BigRational> for CycloScalar {
    fn from(q: BigRational) -> Self {
        CycloScalar::from_rational(q)
    }
}

impl CycloScalar {
    /// True when the text form needs parentheses to act as a coefficient.
    pub fn is_compound(&self) -> bool {
        self.minimize().coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", q);
        }
        // Printed in the smallest field containing the value, so that equal
        // scalars print alike.
        let min = self.minimize();
        if min.field.n != self.field.n {
            return write!(f, "{}", min);
        }
        let n = self.field.n;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "z{}", n)?;
                    } else {
                        write!(f, "z{}^{}", n, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `z_order^exponent`, normalized so that `order` is the multiplicative
/// order and `gcd(exponent, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    pub order: u32,
    pub exponent: u32,
}

impl RootOfUnity {
    pub fn new(n: u32, r: u32) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let r = r % n;
        let g = gcd(r as u64, n as u64) as u32;
        if r == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        RootOfUnity {
            order: n / g,
            exponent: r / g,
        }
    }

    pub fn from_signed(n: u32, r: i64) -> Self {
        RootOfUnity::new(n, r.rem_euclid(n as i64) as u32)
    }

    pub fn to_scalar(self) -> CycloScalar {
        CycloScalar::zeta_pow(self.order, self.exponent as i64)
    }

    /// Exponent of this root when written over `z_m`; `m` must be a multiple
    /// of the order.
    pub fn exponent_at(self, m: u32) -> u32 {
        assert!(m % self.order == 0);
        self.exponent * (m / self.order)
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let m = lcm(self.order as u64, other.order as u64) as u32;
        RootOfUnity::new(m, (self.exponent_at(m) + other.exponent_at(m)) % m)
    }

    pub fn pow(self, e: i64) -> RootOfUnity {
        let r = (self.exponent as i64 * e.rem_euclid(self.order as i64)).rem_euclid(self.order as i64);
        RootOfUnity::new(self.order, r as u32)
    }

    pub fn inv(self) -> RootOfUnity {
        self.pow(-1)
    }

    pub fn is_one(self) -> bool {
        self.order == 1
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => f.write_str("1"),
            (2, _) => f.write_str("-1"),
            (n, 1) => write!(f, "z{}", n),
            (n, r) => write!(f, "z{}^{}", n, r),
        }
    }
}

/// Dense polynomials over `Q`, only what inversion and minimization need.
mod qpoly {
    use super::*;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lc = b[db].clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lc;
            if !c.is_zero() {
                for (t, bt) in b.iter().enumerate() {
                    r[k + t] -= &c * bt;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        trim(&mut r);
        (q, r)
    }

    fn sub_mul(s0: &[BigRational], q: &[BigRational], s1: &[BigRational]) -> Vec<BigRational> {
        let mut out = s0.to_vec();
        let len = if q.is_empty() || s1.is_empty() { 0 } else { q.len() + s1.len() - 1 };
        if out.len() < len {
            out.resize(len, BigRational::zero());
        }
        for (i, x) in q.iter().enumerate() {
            for (j, y) in s1.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// Inverse of `a` modulo the irreducible `m` by the extended Euclidean
    /// algorithm.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        debug_assert_eq!(r0.len(), 1, "modulus is not irreducible");
        let c = r0[0].clone();
        s0.iter().map(|x| x / &c).collect()
    }

    /// Solve `sum x_k basis[k] = target` over `Q` if possible.
    pub fn solve_span(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
        let rows = target.len();
        let cols = basis.len();
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
                row.push(target[i].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for k in 0..=cols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = m[i][cols].clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len(), 49);
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn basic_identities() {
        let i = CycloScalar::zeta(4);
        assert_eq!(&i * &i, CycloScalar::from_integer(-1));
        let w = CycloScalar::zeta(3);
        assert_eq!(&w + &w.pow(2), CycloScalar::from_integer(-1));
        assert!(CycloScalar::zeta(5).pow(5).is_one());
    }

    #[test]
    fn roots_are_recognized() {
        assert_eq!(CycloScalar::one().as_root_of_unity(), Some(RootOfUnity::new(1, 0)));
        assert_eq!(
            CycloScalar::zeta(6).pow(2).as_root_of_unity(),
            Some(RootOfUnity { order: 3, exponent: 1 })
        );
        assert_eq!(CycloScalar::from_integer(2).as_root_of_unity(), None);
        // -z3 is a primitive sixth root even though the conductor is 3.
        assert_eq!(
            (-CycloScalar::zeta(3)).as_root_of_unity(),
            Some(RootOfUnity { order: 6, exponent: 5 })
        );
        assert_eq!(CycloScalar::zero().as_root_of_unity(), None);
    }

    #[test]
    fn mixed_conductors_meet_at_lcm() {
        let s = &CycloScalar::zeta(4) * &CycloScalar::zeta(3);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s, CycloScalar::zeta_pow(12, 7));
    }

    #[test]
    fn inverse_and_division() {
        let x = &CycloScalar::zeta(7) + &CycloScalar::from_integer(3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(CycloScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn minimize_recovers_small_field() {
        let s = &CycloScalar::zeta(3) + &CycloScalar::from_ratio(1, 2).unwrap();
        let lifted = s.lift(15);
        let back = lifted.minimize();
        assert_eq!(back.conductor(), 3);
        assert_eq!(back.coeffs(), s.coeffs());
        assert_eq!(CycloScalar::zeta_pow(8, 4).minimize().conductor(), 1);
    }

    #[test]
    fn text_form() {
        let s = &CycloScalar::zeta_pow(8, 3).scale(&BigRational::new(1.into(), 2.into()))
            - &CycloScalar::from_integer(2);
        assert_eq!(s.to_string(), "1/2*z8^3 - 2");
        assert_eq!((-CycloScalar::zeta(5)).to_string(), "-z5");
        assert_eq!(CycloScalar::from_ratio(-3, 6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn root_of_unity_arithmetic() {
        let a = RootOfUnity::new(4, 1);
        let b = RootOfUnity::new(6, 1);
        assert_eq!(a.mul(b), RootOfUnity::new(12, 5));
        assert_eq!(a.mul(b).to_scalar(), &a.to_scalar() * &b.to_scalar());
        assert_eq!(RootOfUnity::new(10, 4), RootOfUnity { order: 5, exponent: 2 });
        assert!(a.pow(4).is_one());
    }
}
