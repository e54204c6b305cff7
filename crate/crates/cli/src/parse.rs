//! Recursive descent parser for bihomogeneous polynomials and automorphism
//! specs.
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := factor (('*'|'/') factor)*
//! factor     := integer | zN ['^' ['-'] integer] | variable ['^' integer]
//!             | '(' expression ')' ['^' integer]
//! variable   := X0 | X1 | Y0 | Y1
//! ```
//!
//! Parenthesized groups and divisors must be free of variables.

use std::collections::BTreeMap;
use std::fmt;

use biquad_core::{BiPoly, CycloScalar, DiagonalAut, Mat2, SurfaceAut};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not bihomogeneous: expected bidegree ({},{}) from the first term, but {}", .expected.0, .expected.1, render_offenders(.offenders))]
    NotBihomogeneous {
        expected: (u32, u32),
        offenders: Vec<(String, (u32, u32))>,
    },
}

fn render_offenders(v: &[(String, (u32, u32))]) -> String {
    v.iter()
        .map(|(m, (a, b))| format!("{} has ({},{})", m, a, b))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedExpression {
    pub source: String,
    pub poly: BiPoly,
    pub bidegree: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Zeta(u32),
    Var(usize),
    Word(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{}", n),
            Tok::Zeta(n) => write!(f, "z{}", n),
            Tok::Var(k) => f.write_str(VARS[*k]),
            Tok::Word(w) => f.write_str(w),
            Tok::Sym(c) => write!(f, "'{}'", c),
        }
    }
}

const VARS: [&str; 4] = ["X0", "X1", "Y0", "Y1"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            let tok = if let Some(k) = VARS.iter().position(|v| *v == word) {
                Tok::Var(k)
            } else if let Some(n) = word.strip_prefix('z').and_then(|d| d.parse::<u32>().ok()) {
                if n == 0 {
                    return Err(syntax(start, "z0 is not a root of unity"));
                }
                Tok::Zeta(n)
            } else {
                Tok::Word(word.to_string())
            };
            out.push((start, tok));
        } else if "+-*/^()[],;=".contains(c) {
            out.push((start, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(syntax(start, &format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

fn syntax(pos: usize, msg: &str) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

/// Exponents of `X0, X1, Y0, Y1`.
type Mono = [u32; 4];

#[derive(Clone, Debug)]
struct Term {
    coeff: CycloScalar,
    mono: Mono,
    pos: usize,
}

impl Term {
    fn scalar(coeff: CycloScalar, pos: usize) -> Self {
        Term {
            coeff,
            mono: [0; 4],
            pos,
        }
    }

    fn is_scalar(&self) -> bool {
        self.mono == [0; 4]
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            at: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{}'", c)))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Word(x)) if x == w => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.unexpected(w)),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = self.peek().map_or("end of input".to_string(), |t| t.to_string());
        syntax(self.pos(), &format!("expected {}, found {}", wanted, found))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| syntax(pos, "integer too large"))
    }

    fn signed_small(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let v = self.small()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn expression(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut out = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let mut t = self.term()?;
            if neg {
                t.coeff = -t.coeff;
            }
            out.push(t);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.factor()?;
        loop {
            if self.eat('*') {
                let u = self.factor()?;
                t.coeff = &t.coeff * &u.coeff;
                for k in 0..4 {
                    t.mono[k] += u.mono[k];
                }
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                let u = self.factor()?;
                if !u.is_scalar() {
                    return Err(syntax(u.pos, "cannot divide by a variable"));
                }
                t.coeff = t
                    .coeff
                    .checked_div(&u.coeff)
                    .map_err(|_| syntax(pos, "division by zero"))?;
            } else {
                return Ok(t);
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.eat('^') {
            Ok(Some(self.small()?))
        } else {
            Ok(None)
        }
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Term::scalar(BigRational::from_integer(n).into(), pos)),
            Some(Tok::Zeta(n)) => {
                let k = if self.eat('^') { self.signed_small()? } else { 1 };
                Ok(Term::scalar(CycloScalar::zeta_pow(n, k), pos))
            }
            Some(Tok::Var(v)) => {
                let mut mono = [0; 4];
                mono[v] = self.exponent()?.unwrap_or(1);
                Ok(Term {
                    coeff: CycloScalar::one(),
                    mono,
                    pos,
                })
            }
            Some(Tok::Sym('(')) => {
                let inner = self.expression()?;
                self.expect(')')?;
                let mut c = CycloScalar::zero();
                for t in inner {
                    if !t.is_scalar() {
                        return Err(syntax(t.pos, "variables are not allowed inside parentheses"));
                    }
                    c += &t.coeff;
                }
                if let Some(e) = self.exponent()? {
                    c = c.pow(e as u64);
                }
                Ok(Term::scalar(c, pos))
            }
            Some(t) => {
                self.at -= 1;
                Err(syntax(pos, &format!("expected a number, z<N>, a variable or '(', found {}", t)))
            }
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }

    fn scalar(&mut self) -> Result<CycloScalar, ParseError> {
        let mut c = CycloScalar::zero();
        for t in self.expression()? {
            if !t.is_scalar() {
                return Err(syntax(t.pos, "expected a scalar"));
            }
            c += &t.coeff;
        }
        Ok(c)
    }

    fn matrix(&mut self) -> Result<Mat2, ParseError> {
        let pos = self.pos();
        self.expect('[')?;
        let mut e = Vec::new();
        for row in 0..2 {
            if row > 0 {
                self.expect(',')?;
            }
            self.expect('[')?;
            e.push(self.scalar()?);
            self.expect(',')?;
            e.push(self.scalar()?);
            self.expect(']')?;
        }
        self.expect(']')?;
        let [a, b, c, d]: [CycloScalar; 4] = e.try_into().expect("four entries");
        let m = Mat2::new(a, b, c, d);
        if m.det().is_zero() {
            return Err(syntax(pos, "matrix is singular"));
        }
        Ok(m)
    }
}

fn monomial_text(m: &Mono) -> String {
    let parts: Vec<String> = (0..4)
        .filter(|&k| m[k] > 0)
        .map(|k| match m[k] {
            1 => VARS[k].to_string(),
            e => format!("{}^{}", VARS[k], e),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn parse_bipoly(text: &str) -> Result<ParsedExpression, ParseError> {
    let mut p = Parser::new(text)?;
    if p.peek().is_none() {
        return Err(syntax(0, "empty input"));
    }
    let terms = p.expression()?;
    p.finish()?;
    let bideg = |m: &Mono| (m[0] + m[1], m[2] + m[3]);
    let expected = bideg(&terms[0].mono);
    let mut offenders: Vec<(String, (u32, u32))> = Vec::new();
    for t in &terms {
        let d = bideg(&t.mono);
        let text = monomial_text(&t.mono);
        if d != expected && !offenders.iter().any(|(m, _)| *m == text) {
            offenders.push((text, d));
        }
    }
    if !offenders.is_empty() {
        return Err(ParseError::NotBihomogeneous { expected, offenders });
    }
    let mut collected: BTreeMap<(u32, u32), CycloScalar> = BTreeMap::new();
    for t in terms {
        let slot = collected.entry((t.mono[0], t.mono[2])).or_insert_with(CycloScalar::zero);
        *slot += &t.coeff;
    }
    let (a, b) = expected;
    let poly = BiPoly::from_terms(a, b, collected.into_iter().map(|(k, c)| (k, c.minimize())));
    Ok(ParsedExpression {
        source: text.to_string(),
        poly,
        bidegree: expected,
    })
}

pub fn parse_scalar(text: &str) -> Result<CycloScalar, ParseError> {
    let mut p = Parser::new(text)?;
    let c = p.scalar()?;
    p.finish()?;
    Ok(c.minimize())
}

/// `diag(N; r1, r2)`, `mat([[a, b], [c, d]], [[e, f], [g, h]], swap=true)`,
/// `id` or `swap`.
pub fn parse_aut(text: &str) -> Result<SurfaceAut, ParseError> {
    let mut p = Parser::new(text)?;
    let pos = p.pos();
    let g = match p.bump() {
        Some(Tok::Word(w)) if w == "id" => SurfaceAut::identity(),
        Some(Tok::Word(w)) if w == "swap" => SurfaceAut::swap_only(),
        Some(Tok::Word(w)) if w == "diag" => {
            p.expect('(')?;
            let npos = p.pos();
            let n = p.small()?;
            if n == 0 {
                return Err(syntax(npos, "N must be positive"));
            }
            p.expect(';')?;
            let r1 = p.signed_small()?;
            p.expect(',')?;
            let r2 = p.signed_small()?;
            p.expect(')')?;
            DiagonalAut::new(n, r1, r2).to_aut()
        }
        Some(Tok::Word(w)) if w == "mat" => {
            p.expect('(')?;
            let a = p.matrix()?;
            p.expect(',')?;
            let b = p.matrix()?;
            let mut swap = false;
            if p.eat(',') {
                p.expect_word("swap")?;
                p.expect('=')?;
                swap = match p.bump() {
                    Some(Tok::Word(w)) if w == "true" => true,
                    Some(Tok::Word(w)) if w == "false" => false,
                    _ => {
                        p.at -= 1;
                        return Err(p.unexpected("true or false"));
                    }
                };
            }
            p.expect(')')?;
            SurfaceAut::new(swap, a, b).map_err(|e| syntax(pos, &e.to_string()))?
        }
        _ => {
            p.at = 0;
            return Err(p.unexpected("diag(..), mat(..), id or swap"));
        }
    };
    p.finish()?;
    Ok(g)
}
