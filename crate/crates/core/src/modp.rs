//! Smoothness certificates by reduction modulo a prime.
//!
//! Take a prime `p = 1 (mod N)` and send `z_N` to a primitive `N`-th root of
//! unity in `F_p`. If the reduction of `F` is nonzero and defines a smooth
//! curve over the algebraic closure of `F_p`, then `F` is smooth: the
//! singular locus of the curve over the local ring at `p` is closed and its
//! image in the base does not contain the closed point.
//!
//! On each affine chart a singular point is a common zero of `g`, `g_x` and
//! `g_y`, so `Res_y(g, g_x)` and `Res_y(g, g_y)` vanish at its first
//! coordinate. Coprime resultants on all four charts therefore rule out
//! singular points. The chart is sheared first so that distinct points do
//! not share a first coordinate by accident.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::bipoly::BiPoly;
use crate::scalars::{lcm, CycloScalar};

/// Primes are searched downward from here.
const PRIME_CEILING: u64 = 1 << 31;
/// Number of primes tried before giving up.
const PRIMES_TRIED: usize = 3;
/// Shear parameters tried on each chart.
const SHEARS: [u64; 4] = [1, 2, 5, 11];

#[derive(Clone, Copy, Debug)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
    fn of_big(self, n: &BigInt) -> u64 {
        let r = (n.abs() % BigInt::from(self.0)).to_u64().unwrap();
        if n.is_negative() {
            self.sub(0, r)
        } else {
            r
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes `p = 1 (mod n)` below the ceiling, largest first.
fn primes_one_mod(n: u64) -> impl Iterator<Item = u64> {
    let start = (PRIME_CEILING - 1) / n * n + 1;
    (0..)
        .map(move |k| start - k * n)
        .take_while(move |&p| p > n)
        .filter(|&p| is_prime(p))
}

fn primitive_root_of_unity(fp: Fp, n: u64) -> u64 {
    let qs = prime_factors(n);
    (2..fp.0)
        .map(|g| fp.pow(g, (fp.0 - 1) / n))
        .find(|&w| qs.iter().all(|&q| fp.pow(w, n / q) != 1))
        .expect("p = 1 mod n has a primitive n-th root of unity")
}

/// Image of `c` under `z_N -> omega`, or `None` when a denominator vanishes.
fn reduce_scalar(fp: Fp, c: &CycloScalar, n: u32, omega: u64) -> Option<u64> {
    let step = fp.pow(omega, (n / c.conductor()) as u64);
    let mut acc = 0;
    let mut zk = 1;
    for q in c.coeffs() {
        let den = fp.of_big(q.denom());
        if den == 0 {
            return None;
        }
        let v = fp.mul(fp.of_big(q.numer()), fp.inv(den));
        acc = fp.add(acc, fp.mul(v, zk));
        zk = fp.mul(zk, step);
    }
    Some(acc)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_gcd(fp: Fp, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = fp.inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = fp.mul(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (k, &bk) in b.iter().enumerate() {
                a[off + k] = fp.sub(a[off + k], fp.mul(c, bk));
            }
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a
}

fn det(fp: Fp, mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut d = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            d = fp.sub(0, d);
        }
        d = fp.mul(d, m[col][col]);
        let inv = fp.inv(m[col][col]);
        for r in col + 1..n {
            let c = fp.mul(m[r][col], inv);
            if c != 0 {
                for k in col..n {
                    let t = fp.mul(c, m[col][k]);
                    m[r][k] = fp.sub(m[r][k], t);
                }
            }
        }
    }
    d
}

/// Sylvester determinant of two polynomials in `y` with the given formal
/// degrees; coefficient lists are padded with zeros.
fn formal_resultant(fp: Fp, f: &[u64], df: usize, g: &[u64], dg: usize) -> u64 {
    let size = df + dg;
    if size == 0 {
        return 1;
    }
    let at = |v: &[u64], k: usize| v.get(k).copied().unwrap_or(0);
    let mut m = vec![vec![0; size]; size];
    for r in 0..dg {
        for k in 0..=df {
            m[r][r + k] = at(f, df - k);
        }
    }
    for r in 0..df {
        for k in 0..=dg {
            m[dg + r][r + k] = at(g, dg - k);
        }
    }
    det(fp, m)
}

/// Coefficients of the polynomial of degree `< ys.len()` taking the value
/// `ys[x]` at `x = 0, 1, ...`.
fn interpolate(fp: Fp, ys: &[u64]) -> Vec<u64> {
    let n = ys.len();
    let inv: Vec<u64> = (0..n as u64).map(|j| if j == 0 { 0 } else { fp.inv(j) }).collect();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = fp.mul(fp.sub(c[i], c[i - 1]), inv[j]);
        }
    }
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        // out = out * (x - i) + c[i]
        let mut next = vec![0; n];
        for k in 0..n - 1 {
            next[k + 1] = fp.add(next[k + 1], out[k]);
            next[k] = fp.sub(next[k], fp.mul(out[k], i as u64));
        }
        next[0] = fp.add(next[0], c[i]);
        out = next;
    }
    trim(&mut out);
    out
}

/// Dense `[x-degree][y-degree]` coefficients on a chart.
fn chart(a: usize, b: usize, red: &[((usize, usize), u64)], x0_set: bool, y0_set: bool) -> Vec<Vec<u64>> {
    let mut g = vec![vec![0; b + 1]; a + 1];
    for &((i, j), c) in red {
        let ex = if x0_set { a - i } else { i };
        let ey = if y0_set { b - j } else { j };
        g[ex][ey] = c;
    }
    g
}

fn binomials(n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &c[i - 1];
        let row = (0..=i)
            .map(|k| if k == 0 || k == i { 1 } else { prev[k - 1] + prev[k] })
            .collect();
        c.push(row);
    }
    c
}

/// `g(u - mu y, y)` as `[u-degree][y-degree]`.
fn shear(fp: Fp, g: &[Vec<u64>], mu: u64) -> Vec<Vec<u64>> {
    let a = g.len() - 1;
    let b = g[0].len() - 1;
    let binom = binomials(a);
    let neg_mu = fp.sub(0, mu);
    let mut out = vec![vec![0; a + b + 1]; a + 1];
    for (i, row) in g.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for t in 0..=i {
                let k = fp.mul(binom[i][t] % fp.0, fp.pow(neg_mu, (i - t) as u64));
                out[t][j + i - t] = fp.add(out[t][j + i - t], fp.mul(c, k));
            }
        }
    }
    out
}

/// No singular point of `g = 0` in the affine chart. After the shear the
/// leading coefficient in `y` is a nonzero constant, so both resultants
/// vanish at `u` only if the fiber over `u` carries points with `G_u = 0`
/// and with `G_y = 0`; for all but finitely many `mu` these coincide only at
/// a singular point.
fn chart_is_smooth(fp: Fp, g: &[Vec<u64>], mu: u64) -> bool {
    let sheared = shear(fp, g, mu);
    let a = sheared.len() - 1;
    let Some(k) = (0..sheared[0].len()).rev().find(|&j| sheared.iter().any(|row| row[j] != 0)) else {
        return false;
    };
    if k == 0 {
        return true;
    }
    if sheared.iter().skip(1).any(|row| row[k] != 0) {
        return false;
    }
    let xs: Vec<u64> = (0..=(2 * k * a + 1) as u64).collect();
    let mut r1 = Vec::with_capacity(xs.len());
    let mut r2 = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut gv = vec![0; k + 1];
        let mut guv = vec![0; k + 1];
        let mut xp = 1;
        for (t, row) in sheared.iter().enumerate() {
            let dxp = if t == 0 { 0 } else { fp.mul(t as u64 % fp.0, fp.pow(x, t as u64 - 1)) };
            for (j, &c) in row.iter().take(k + 1).enumerate() {
                gv[j] = fp.add(gv[j], fp.mul(c, xp));
                guv[j] = fp.add(guv[j], fp.mul(c, dxp));
            }
            xp = fp.mul(xp, x);
        }
        let gyv: Vec<u64> = (1..=k).map(|j| fp.mul(j as u64 % fp.0, gv[j])).collect();
        r1.push(formal_resultant(fp, &gv, k, &guv, k - 1));
        r2.push(formal_resultant(fp, &gv, k, &gyv, k - 1));
    }
    let d = poly_gcd(fp, interpolate(fp, &r1), interpolate(fp, &r2));
    d.len() == 1
}

/// A prime `p` for which the reduction of `F` is a smooth curve of the same
/// bidegree, which proves `F` smooth. `None` says nothing about `F`: the
/// primes tried may all be bad, or `F` may be singular.
pub fn smooth_by_reduction(f: &BiPoly) -> Option<u64> {
    let (a, b) = f.bidegree();
    if a == 0 || b == 0 || f.is_zero() {
        return None;
    }
    let n = f.terms().values().fold(1u64, |acc, c| lcm(acc, c.conductor() as u64));
    for p in primes_one_mod(n).take(PRIMES_TRIED) {
        let fp = Fp(p);
        let omega = primitive_root_of_unity(fp, n);
        let red: Option<Vec<((usize, usize), u64)>> = f
            .terms()
            .iter()
            .map(|(&(i, j), c)| reduce_scalar(fp, c, n as u32, omega).map(|v| ((i as usize, j as usize), v)))
            .collect();
        let Some(red) = red else {
            continue;
        };
        if red.iter().all(|&(_, v)| v == 0) {
            continue;
        }
        let (a, b) = (a as usize, b as usize);
        let smooth = [(true, true), (true, false), (false, true), (false, false)]
            .into_iter()
            .all(|(x0, y0)| {
                let g = chart(a, b, &red, x0, y0);
                SHEARS.iter().any(|&mu| chart_is_smooth(fp, &g, mu))
            });
        if smooth {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smooth::is_smooth;
    use alloc::collections::BTreeMap;

    fn poly(a: u32, b: u32, terms: &[((u32, u32), i64)]) -> BiPoly {
        let m: BTreeMap<(u32, u32), CycloScalar> =
            terms.iter().map(|&(k, c)| (k, CycloScalar::from_integer(c))).collect();
        BiPoly::from_terms(a, b, m)
    }

    #[test]
    fn fermat_type_is_certified() {
        let f = poly(4, 5, &[((4, 5), 1), ((4, 0), 1), ((0, 5), 1), ((0, 0), 2)]);
        assert!(smooth_by_reduction(&f).is_some());
    }

    #[test]
    fn singular_curves_are_not_certified() {
        // s = 1 splits into two factors.
        let f = poly(4, 5, &[((4, 5), 1), ((4, 0), 1), ((0, 5), 1), ((0, 0), 1)]);
        assert!(smooth_by_reduction(&f).is_none());
        assert!(!is_smooth(&f).unwrap().smooth);
        // Missing the tangent terms at a corner leaves a singular point there.
        let g = poly(3, 3, &[((3, 3), 1), ((0, 0), 1), ((2, 1), 1), ((1, 2), 1)]);
        assert!(smooth_by_reduction(&g).is_none());
        assert!(!is_smooth(&g).unwrap().smooth);
    }

    #[test]
    fn cyclotomic_coefficients_reduce() {
        let mut m = BTreeMap::new();
        m.insert((3, 3), CycloScalar::one());
        m.insert((3, 0), CycloScalar::zeta(5));
        m.insert((0, 3), CycloScalar::one());
        m.insert((0, 0), CycloScalar::from_integer(3));
        let f = BiPoly::from_terms(3, 3, m);
        assert!(is_smooth(&f).unwrap().smooth);
        let p = smooth_by_reduction(&f).unwrap();
        assert_eq!(p % 5, 1);
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let fp = Fp(101);
        let coeffs = [3u64, 0, 7, 1];
        let ys: Vec<u64> = (0..6)
            .map(|x| coeffs.iter().rev().fold(0, |acc, &c| fp.add(fp.mul(acc, x), c)))
            .collect();
        assert_eq!(interpolate(fp, &ys), coeffs.to_vec());
    }
}
