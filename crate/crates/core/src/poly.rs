//! Dense univariate polynomials over a [`FieldDesc`](crate::gf::FieldDesc),
//! little-endian coefficients, plus the text / coefficient-list formats.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Arc<FieldDesc>,
    coeffs: Vec<FieldElem>, // normalized: no trailing zeros
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Poly {
    pub fn zero(field: &Arc<FieldDesc>) -> Poly {
        Poly {
            field: Arc::clone(field),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<FieldDesc>) -> Poly {
        Poly::constant(field.one())
    }

    pub fn x(field: &Arc<FieldDesc>) -> Poly {
        Poly {
            field: Arc::clone(field),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn constant(c: FieldElem) -> Poly {
        let field = Arc::clone(c.field());
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly { field, coeffs }
    }

    pub fn monomial(c: FieldElem, deg: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(&Arc::clone(c.field()));
        }
        let field = Arc::clone(c.field());
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly { field, coeffs }
    }

    pub fn from_coeffs(field: &Arc<FieldDesc>, coeffs: Vec<FieldElem>) -> Poly {
        let mut p = Poly {
            field: Arc::clone(field),
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn from_ints(field: &Arc<FieldDesc>, ints: &[i64]) -> Poly {
        let coeffs = ints.iter().map(|&v| field.from_int(v)).collect();
        Poly::from_coeffs(field, coeffs)
    }

    /// x^n - 1 over the given field.
    pub fn xn_minus_1(field: &Arc<FieldDesc>, n: usize) -> Poly {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = -&field.one();
        coeffs[n] = field.one();
        Poly::from_coeffs(field, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(FieldElem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElem::is_one)
    }

    /// k-th coefficient, zero-padded past the degree.
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn mul_scalar(&self, c: &FieldElem) -> Poly {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Division with remainder; divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let db = divisor.deg().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[db]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let da = rem.len() - 1;
            let c = &rem[da] * &lead_inv;
            quot[da - db] = c.clone();
            for j in 0..db {
                rem[da - db + j] = &rem[da - db + j] - &(&c * &divisor.coeffs[j]);
            }
            rem.pop(); // the top coefficient cancels exactly
            while rem.last().is_some_and(FieldElem::is_zero) {
                rem.pop();
            }
        }
        (
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.mul_scalar(&l.inv().expect("nonzero leading")),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Returns (g, u, v) with u·self + v·other = g = gcd (monic).
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let field = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if let Some(l) = r0.leading() {
            let inv = l.inv().expect("nonzero leading");
            return (
                r0.mul_scalar(&inv),
                s0.mul_scalar(&inv),
                t0.mul_scalar(&inv),
            );
        }
        (r0, s0, t0)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluates at a point of an extension field, embedding the coefficients.
    pub fn eval_embedded(&self, ext: &Arc<FieldDesc>, x: &FieldElem) -> FieldElem {
        let mut acc = ext.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &ext.embed(c);
        }
        acc
    }

    /// x^(|F|^k) mod self, where |F| is the size of the coefficient field.
    fn frob_x(&self, k: usize) -> Poly {
        let qsize = self.field.size();
        let mut y = Poly::x(&self.field).rem(self);
        for _ in 0..k {
            let mut acc = Poly::one(&self.field);
            let mut base = y.clone();
            let mut e = qsize;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&base).rem(self);
                }
                base = base.mul(&base).rem(self);
                e >>= 1;
            }
            y = acc;
        }
        y
    }

    /// Rabin irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.deg() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let x = Poly::x(&self.field).rem(self);
        if self.frob_x(d) != x {
            return false;
        }
        for (l, _) in crate::arith::factor(d as u64) {
            let diff = self.frob_x(d / l as usize).sub(&x);
            let g = self.gcd(&diff);
            if g.deg() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Renders with `x` as the variable; base-field coefficients appear as
    /// integers (prime fields) or parenthesized polynomials in `c`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = elem_text(c);
            let term = if i == 0 {
                cs
            } else {
                let xs = if i == 1 {
                    "x".to_string()
                } else {
                    format!("x^{i}")
                };
                if c.is_one() {
                    xs
                } else {
                    format!("{cs}*{xs}")
                }
            };
            parts.push(term);
        }
        parts.join("+")
    }
}

/// Base-field element as text: an integer for prime fields, otherwise a
/// polynomial in `c` (parenthesized when it has several terms).
pub fn elem_text(e: &FieldElem) -> String {
    let coeffs = e.coeffs();
    if coeffs.len() == 1 {
        return format!("{}", coeffs[0]);
    }
    let mut parts = Vec::new();
    for (i, &v) in coeffs.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let term = match (i, v) {
            (0, v) => format!("{v}"),
            (1, 1) => "c".to_string(),
            (1, v) => format!("{v}*c"),
            (i, 1) => format!("c^{i}"),
            (i, v) => format!("{v}*c^{i}"),
        };
        parts.push(term);
    }
    match parts.len() {
        0 => "0".to_string(),
        1 => parts.pop().unwrap(),
        _ => format!("({})", parts.join("+")),
    }
}

/// First monic irreducible of the given degree over `field`, enumerating the
/// lower coefficients canonically.
pub fn first_irreducible_over(field: &Arc<FieldDesc>, deg: usize) -> Poly {
    let qsize = field.size() as u128;
    let total = qsize.pow(deg as u32);
    let mut v: u128 = 0;
    while v < total {
        let mut idx = v;
        let mut coeffs: Vec<FieldElem> = (0..deg)
            .map(|_| {
                let c = field.element_at((idx % qsize) as u64);
                idx /= qsize;
                c
            })
            .collect();
        coeffs.push(field.one());
        let f = Poly::from_coeffs(field, coeffs);
        if f.is_irreducible() {
            return f;
        }
        v += 1;
    }
    unreachable!("irreducible polynomial of degree {deg} exists")
}

// ---------------------------------------------------------------------------
// parsing: "x^3+x+1" text form and [1,1,0,1] coefficient-list JSON form
// ---------------------------------------------------------------------------

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    field: Arc<FieldDesc>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut neg = false;
        if self.chars.peek() == Some(&'-') {
            self.chars.next();
            neg = true;
        } else if self.chars.peek() == Some(&'+') {
            self.chars.next();
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('*') => {
                    self.chars.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // juxtaposition like "2x" or "(c+1)x"
                Some('x') | Some('c') | Some('(') => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        self.skip_ws();
        let base = match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let inner = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                inner
            }
            Some('x') => {
                self.chars.next();
                Poly::x(&self.field)
            }
            Some('c') => {
                self.chars.next();
                Poly::constant(self.field.gen())
            }
            Some(d) if d.is_ascii_digit() => {
                let mut v: i64 = 0;
                while let Some(d) = self.chars.peek().filter(|c| c.is_ascii_digit()) {
                    v = v * 10 + (*d as u8 - b'0') as i64;
                    self.chars.next();
                }
                Poly::constant(self.field.from_int(v))
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        self.skip_ws();
        if self.chars.peek() == Some(&'^') {
            self.chars.next();
            self.skip_ws();
            let mut e: u32 = 0;
            let mut any = false;
            while let Some(d) = self.chars.peek().filter(|c| c.is_ascii_digit()) {
                e = e * 10 + (*d as u8 - b'0') as u32;
                self.chars.next();
                any = true;
            }
            if !any {
                return Err(Error::Parse("expected exponent after '^'".into()));
            }
            let mut acc = Poly::one(&self.field);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

/// Parses the text polynomial format, e.g. "x^3+x+1" or "(c+1)*x^2+c".
pub fn parse_poly(field: &Arc<FieldDesc>, text: &str) -> Result<Poly> {
    let mut p = Parser {
        chars: text.chars().peekable(),
        field: Arc::clone(field),
    };
    let poly = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.chars.next() {
        return Err(Error::Parse(format!("trailing input at '{c}'")));
    }
    Ok(poly)
}

/// Parses the little-endian coefficient-list JSON form: `[1,1,0,1]`, where an
/// entry is an integer or (for non-prime base fields) a list of F_p residues.
pub fn poly_from_json(field: &Arc<FieldDesc>, v: &serde_json::Value) -> Result<Poly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected coefficient array".into()))?;
    let coeffs = arr
        .iter()
        .map(|c| elem_from_json(field, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(field, coeffs))
}

pub fn poly_to_json(p: &Poly) -> serde_json::Value {
    serde_json::Value::Array(p.coeffs.iter().map(elem_to_json).collect())
}

pub fn elem_from_json(field: &Arc<FieldDesc>, v: &serde_json::Value) -> Result<FieldElem> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?;
            Ok(field.from_int(i))
        }
        serde_json::Value::Array(a) => {
            let digits = a
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| Error::Parse(format!("bad residue {x}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(field.from_flat(digits))
        }
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

pub fn elem_to_json(e: &FieldElem) -> serde_json::Value {
    let coeffs = e.coeffs();
    if coeffs.len() == 1 {
        serde_json::json!(coeffs[0])
    } else {
        serde_json::json!(coeffs)
    }
}
