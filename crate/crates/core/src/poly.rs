//! Dense univariate polynomials over `Q(z_N)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::CycloScalar;

/// Coefficients from degree 0 upwards; never has a trailing zero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<CycloScalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<CycloScalar>) -> Self {
        while coeffs.last().is_some_and(CycloScalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: CycloScalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(CycloScalar::one())
    }

    /// `c * x^k`.
    pub fn monomial(c: CycloScalar, k: usize) -> Self {
        let mut v = vec![CycloScalar::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&CycloScalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> CycloScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut v = long.coeffs.clone();
        for (x, y) in v.iter_mut().zip(&short.coeffs) {
            *x += y;
        }
        UniPoly::new(v)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![CycloScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += &(x * y);
                }
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &CycloScalar) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![CycloScalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; `rhs` must be nonzero.
    pub fn div_rem(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        let db = rhs.degree().expect("polynomial division by zero");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (UniPoly::zero(), self.clone());
        }
        let inv = rhs.lead().unwrap().inv().expect("nonzero lead");
        let mut q = vec![CycloScalar::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if !c.is_zero() {
                for (t, bt) in rhs.coeffs.iter().enumerate() {
                    r[k + t] -= &(&c * bt);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, rhs: &UniPoly) -> UniPoly {
        self.div_rem(rhs).1
    }

    /// Exact quotient; panics in debug builds when the division leaves a
    /// remainder.
    pub fn div_exact(&self, rhs: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &CycloScalar::from_integer(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &CycloScalar) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Product of the distinct irreducible factors, made monic. Characteristic
    /// zero, so `p / gcd(p, p')` works.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Reverse the coefficient list of a form of degree `n`, i.e. swap the
    /// roles of the two homogeneous variables.
    pub fn reversed(&self, n: usize) -> UniPoly {
        let mut v = vec![CycloScalar::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        UniPoly::new(v)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})*t^{}", c, k)?;
        }
        Ok(())
    }
}
