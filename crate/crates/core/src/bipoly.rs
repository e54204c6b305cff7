//! Bihomogeneous polynomials in `(X0, X1; Y0, Y1)`.
//!
//! A term `(i, j)` of a polynomial of bidegree `(a, b)` is the monomial
//! `X0^i X1^(a-i) Y0^j Y1^(b-j)`, so `s_{i,j}` is stored under key `(i, j)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::resultant::RecPoly;
use crate::poly::UniPoly;
use crate::scalars::CycloScalar;
use crate::surfauto::{DiagonalAut, Mat2, SurfaceAut};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::Q1, Corner::Q2, Corner::Q3, Corner::Q4];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(X0 = 1?, Y0 = 1?)`: Q1 is `([1:0], [1:0])`, Q4 is `([0:1], [0:1])`.
    pub fn coords(self) -> (bool, bool) {
        match self {
            Corner::Q1 => (true, true),
            Corner::Q2 => (true, false),
            Corner::Q3 => (false, true),
            Corner::Q4 => (false, false),
        }
    }

    /// The exponent pair of the only monomial not vanishing at the corner.
    pub fn pure(self, a: u32, b: u32) -> (u32, u32) {
        let (x, y) = self.coords();
        (if x { a } else { 0 }, if y { b } else { 0 })
    }

    /// The pure corner and its two neighbours, the support of `F_Q`.
    pub fn triple(self, a: u32, b: u32) -> [(u32, u32); 3] {
        match self {
            Corner::Q1 => [(a, b), (a - 1, b), (a, b - 1)],
            Corner::Q2 => [(a, 0), (a - 1, 0), (a, 1)],
            Corner::Q3 => [(0, b), (1, b), (0, b - 1)],
            Corner::Q4 => [(0, 0), (1, 0), (0, 1)],
        }
    }

    pub fn from_coords(x0: bool, y0: bool) -> Corner {
        match (x0, y0) {
            (true, true) => Corner::Q1,
            (true, false) => Corner::Q2,
            (false, true) => Corner::Q3,
            (false, false) => Corner::Q4,
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", self.index() + 1)
    }
}

/// Affine chart: `C11` sets `X0 = Y0 = 1`, `C22` sets `X1 = Y1 = 1`, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    C11,
    C12,
    C21,
    C22,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::C11, Chart::C12, Chart::C21, Chart::C22];
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::C11 => "11",
            Chart::C12 => "12",
            Chart::C21 => "21",
            Chart::C22 => "22",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub a: u32,
    pub b: u32,
    pub set: BTreeSet<(u32, u32)>,
}

impl SupportSet {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, ij: (u32, u32)) -> bool {
        self.set.contains(&ij)
    }
}

fn check_corner_degree(a: u32, b: u32) -> Result<()> {
    if a < 2 || b < 2 {
        return Err(Error::DegreeTooSmall { a, b, min: 2 });
    }
    Ok(())
}

/// The twelve corner pairs and their complement in `[0,a] x [0,b]`. Below
/// degree 3 the twelve pairs are not distinct.
pub fn corner_sets(a: u32, b: u32) -> Result<(SupportSet, SupportSet)> {
    if a < 3 || b < 3 {
        return Err(Error::DegreeTooSmall { a, b, min: 3 });
    }
    let e: BTreeSet<(u32, u32)> = Corner::ALL.iter().flat_map(|q| q.triple(a, b)).collect();
    let i = (0..=a)
        .flat_map(|x| (0..=b).map(move |y| (x, y)))
        .filter(|p| !e.contains(p))
        .collect();
    Ok((SupportSet { a, b, set: e }, SupportSet { a, b, set: i }))
}

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    a: u32,
    b: u32,
    terms: BTreeMap<(u32, u32), CycloScalar>,
}

impl BiPoly {
    pub fn zero(a: u32, b: u32) -> Self {
        BiPoly {
            a,
            b,
            terms: BTreeMap::new(),
        }
    }

    /// Sum of the given terms; like terms are combined. Panics when an
    /// exponent exceeds the bidegree.
    pub fn from_terms<I>(a: u32, b: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), CycloScalar)>,
    {
        let mut p = BiPoly::zero(a, b);
        for (ij, c) in terms {
            p.add_term(ij, &c);
        }
        p
    }

    pub fn add_term(&mut self, (i, j): (u32, u32), c: &CycloScalar) {
        assert!(i <= self.a && j <= self.b, "exponent ({},{}) outside bidegree ({},{})", i, j, self.a, self.b);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c.clone());
            }
        }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), CycloScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> CycloScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn support(&self) -> SupportSet {
        SupportSet {
            a: self.a,
            b: self.b,
            set: self.terms.keys().copied().collect(),
        }
    }

    /// Lcm of the conductors of all coefficients.
    pub fn conductor(&self) -> u32 {
        self.terms
            .values()
            .fold(1, |m, c| crate::scalars::lcm(m as u64, c.conductor() as u64) as u32)
    }

    pub fn add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        if self.bidegree() != rhs.bidegree() {
            return Err(Error::BidegreeMismatch(self.a, self.b, rhs.a, rhs.b));
        }
        let mut out = self.clone();
        for (&ij, c) in &rhs.terms {
            out.add_term(ij, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(self.a, self.b);
        }
        BiPoly {
            a: self.a,
            b: self.b,
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(self.a + rhs.a, self.b + rhs.b);
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term((i + k, j + l), &(c * d));
            }
        }
        out
    }

    /// `F(Y, X)`: exchange the two factors.
    pub fn transpose(&self) -> BiPoly {
        BiPoly {
            a: self.b,
            b: self.a,
            terms: self.terms.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn corner_polynomial(&self, q: Corner) -> Result<BiPoly> {
        check_corner_degree(self.a, self.b)?;
        let mut out = BiPoly::zero(self.a, self.b);
        for ij in q.triple(self.a, self.b) {
            if let Some(c) = self.terms.get(&ij) {
                out.add_term(ij, c);
            }
        }
        Ok(out)
    }

    /// Keep only the terms whose exponents lie in `set`.
    pub fn restrict_to(&self, set: &SupportSet) -> BiPoly {
        BiPoly {
            a: self.a,
            b: self.b,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| set.contains(**k))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[CycloScalar; 2], y: &[CycloScalar; 2]) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for (&(i, j), c) in &self.terms {
            let m = &(&x[0].pow(i as u64) * &x[1].pow((self.a - i) as u64))
                * &(&y[0].pow(j as u64) * &y[1].pow((self.b - j) as u64));
            acc += &(c * &m);
        }
        acc
    }

    /// `(g^* F)(p) = F(g(p))`.
    pub fn pullback(&self, g: &SurfaceAut) -> BiPoly {
        if g.swap() {
            self.transpose().substitute(g.a(), g.b())
        } else {
            self.substitute(g.a(), g.b())
        }
    }

    /// `F(A X, B Y)` by expanding every linear form power.
    pub fn substitute(&self, a_mat: &Mat2, b_mat: &Mat2) -> BiPoly {
        let (a, b) = (self.a, self.b);
        let xs = form_products(a_mat, a);
        let ys = form_products(b_mat, b);
        let mut out: Vec<Vec<CycloScalar>> = vec![vec![CycloScalar::zero(); b as usize + 1]; a as usize + 1];
        for (&(i, j), c) in &self.terms {
            let px = &xs[i as usize];
            let py = &ys[j as usize];
            for (u, cx) in px.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                let cc = c * cx;
                for (v, cy) in py.iter().enumerate() {
                    if !cy.is_zero() {
                        out[u][v] += &(&cc * cy);
                    }
                }
            }
        }
        let mut p = BiPoly::zero(a, b);
        for (u, row) in out.into_iter().enumerate() {
            for (v, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    p.terms.insert((u as u32, v as u32), c);
                }
            }
        }
        p
    }

    /// Pullback by a diagonal automorphism computed from weights alone: term
    /// `(i, j)` is multiplied by `z_N^(i r1 + j r2)`.
    pub fn scale_by_weights(&self, d: &DiagonalAut) -> BiPoly {
        BiPoly {
            a: self.a,
            b: self.b,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    let w = d.weight(i, j);
                    ((i, j), c * &CycloScalar::zeta_pow(d.n, w as i64))
                })
                .collect(),
        }
    }

    /// Affine restriction to a chart. In chart `11`, `x = X1/X0` and
    /// `y = Y1/Y0`; in chart `22`, `x = X0/X1` and `y = Y0/Y1`.
    pub fn dehomogenize(&self, chart: Chart) -> BiVarPoly {
        let (a, b) = (self.a, self.b);
        let mut out = BiVarPoly::zero();
        for (&(i, j), c) in &self.terms {
            let e = match chart {
                Chart::C11 => (a - i, b - j),
                Chart::C12 => (a - i, j),
                Chart::C21 => (i, b - j),
                Chart::C22 => (i, j),
            };
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// The binary form obtained on a fiber of the first projection
    /// (`X = [x0:x1]` fixed), as a polynomial in `t = Y0/Y1` of degree
    /// at most `b`.
    pub fn restrict_first(&self, x: &[CycloScalar; 2]) -> UniPoly {
        let mut v = vec![CycloScalar::zero(); self.b as usize + 1];
        for (&(i, j), c) in &self.terms {
            let w = &x[0].pow(i as u64) * &x[1].pow((self.a - i) as u64);
            v[j as usize] += &(c * &w);
        }
        UniPoly::new(v)
    }

    /// As [`BiPoly::restrict_first`] for the second projection, in `t = X0/X1`.
    pub fn restrict_second(&self, y: &[CycloScalar; 2]) -> UniPoly {
        self.transpose().restrict_first(y)
    }
}

/// Coefficient lists of `L0^i L1^(d-i)` for `i = 0..=d`, where `L0, L1` are
/// the rows of `m` read as linear forms; index `u` is the power of `X0`.
fn form_products(m: &Mat2, d: u32) -> Vec<Vec<CycloScalar>> {
    let l0 = [m.get(0, 1).clone(), m.get(0, 0).clone()];
    let l1 = [m.get(1, 1).clone(), m.get(1, 0).clone()];
    let p0 = UniPoly::new(l0.to_vec());
    let p1 = UniPoly::new(l1.to_vec());
    let pow0: Vec<UniPoly> = (0..=d).map(|k| p0.pow(k)).collect();
    let pow1: Vec<UniPoly> = (0..=d).map(|k| p1.pow(k)).collect();
    (0..=d)
        .map(|i| {
            let prod = pow0[i as usize].mul(&pow1[(d - i) as usize]);
            (0..=d as usize).map(|u| prod.coeff(u)).collect()
        })
        .collect()
}

fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    c: &CycloScalar,
    mono: &str,
    first: bool,
) -> fmt::Result {
    let compound = c.is_compound();
    let negative = !compound && c.coeffs().iter().any(Signed::is_negative);
    let abs = if negative { -c } else { c.clone() };
    if first {
        if negative {
            f.write_str("-")?;
        }
    } else if negative {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let text = if compound {
        alloc::format!("({})", abs)
    } else {
        alloc::format!("{}", abs)
    };
    if mono.is_empty() {
        f.write_str(&text)
    } else if abs.is_one() {
        f.write_str(mono)
    } else {
        write!(f, "{}*{}", text, mono)
    }
}

fn monomial_text(vars: [(&str, u32); 4]) -> alloc::string::String {
    let mut parts = Vec::new();
    for (name, e) in vars {
        match e {
            0 => {}
            1 => parts.push(alloc::string::String::from(name)),
            _ => parts.push(alloc::format!("{}^{}", name, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.a, self.b);
        if self.terms.is_empty() {
            let mono = monomial_text([("X0", a), ("X1", 0), ("Y0", b), ("Y1", 0)]);
            return if mono.is_empty() {
                f.write_str("0")
            } else {
                write!(f, "0*{}", mono)
            };
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_text([("X0", i), ("X1", a - i), ("Y0", j), ("Y1", b - j)]);
            write_coeff_term(f, c, &mono, n == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[({},{})] {}", self.a, self.b, self)
    }
}

/// Sparse polynomial in two affine variables `x`, `y`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiVarPoly {
    terms: BTreeMap<(u32, u32), CycloScalar>,
}

impl BiVarPoly {
    pub fn zero() -> Self {
        BiVarPoly::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), CycloScalar)>,
    {
        let mut p = BiVarPoly::zero();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let slot = p.terms.entry(e).or_insert_with(CycloScalar::zero);
            *slot += &c;
            if slot.is_zero() {
                p.terms.remove(&e);
            }
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), CycloScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
    }

    pub fn partial_derivative(&self, v: Var) -> BiVarPoly {
        let mut out = BiVarPoly::zero();
        for (&(i, j), c) in &self.terms {
            let (k, e) = match v {
                Var::X if i > 0 => (i, (i - 1, j)),
                Var::Y if j > 0 => (j, (i, j - 1)),
                _ => continue,
            };
            out.terms.insert(e, c * &CycloScalar::from_integer(k as i64));
        }
        out
    }

    pub fn swap_vars(&self) -> BiVarPoly {
        BiVarPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &CycloScalar, y: &CycloScalar) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(c * &(&x.pow(i as u64) * &y.pow(j as u64)));
        }
        acc
    }

    /// View as a polynomial in `y` with coefficients in `K[x]`.
    pub fn to_rec(&self) -> RecPoly {
        let dy = match self.degree_in(Var::Y) {
            Some(d) => d as usize,
            None => return RecPoly::zero(),
        };
        let dx = self.degree_in(Var::X).unwrap() as usize;
        let mut rows = vec![vec![CycloScalar::zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        RecPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    /// The polynomial in `x` when `y` does not occur.
    pub fn to_uni_x(&self) -> UniPoly {
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let mut v = vec![CycloScalar::zero(); dx + 1];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                v[i as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }
}

impl fmt::Debug for BiVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_text([("x", i), ("y", j), ("", 0), ("", 0)]);
            write_coeff_term(f, c, &mono, n == 0)?;
        }
        Ok(())
    }
}
