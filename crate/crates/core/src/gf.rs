//! Exact arithmetic in F_q (q = p^s) and in extensions F_q[α] cut out by an
//! irreducible polynomial over F_q.
//!
//! Towers F_p ⊂ F_q ⊂ F_q[α] are flattened to a single modulus over F_p:
//! every element is a little-endian coefficient vector over the prime field,
//! and the F_q-subfield embedding is stored explicitly on the descriptor.
//! This keeps element arithmetic one-level (never nested moduli) and makes
//! serialization bit-exact.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

// ---------------------------------------------------------------------------
// raw polynomial arithmetic over F_p (little-endian Vec<u64>)
// ---------------------------------------------------------------------------

fn pnormalize(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pdeg(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    pnormalize(&mut out);
    out
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pnormalize(&mut out);
    out
}

/// Division with remainder by a monic-or-invertible-lead divisor.
fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = pdeg(b).expect("division by zero polynomial");
    let lead_inv = arith::mod_inv(b[db], p).expect("leading coefficient not invertible");
    let mut rem: Vec<u64> = a.to_vec();
    pnormalize(&mut rem);
    if pdeg(&rem).map_or(true, |da| da < db) {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while let Some(da) = pdeg(&rem) {
        if da < db {
            break;
        }
        let c = rem[da] * lead_inv % p;
        quot[da - db] = c;
        for j in 0..=db {
            rem[da - db + j] = (rem[da - db + j] + p - c * b[j] % p) % p;
        }
        pnormalize(&mut rem);
    }
    pnormalize(&mut quot);
    (quot, rem)
}

fn pmulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    pdivrem(&pmul(a, b, p), m, p).1
}

/// Inverse of `a` modulo the monic polynomial `m`, if gcd(a, m) = 1.
fn pinvmod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // extended Euclid
    let (mut r0, mut r1) = (m.to_vec(), pdivrem(a, m, p).1);
    let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s = psub(&s0, &pmul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if pdeg(&r0) != Some(0) {
        return None;
    }
    let c = arith::mod_inv(r0[0], p).unwrap();
    Some(pmul(&s0, &[c], p))
}

/// x^(p^k) mod m, by applying the p-power map k times.
fn pfrob_x(k: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut y = pdivrem(&[0, 1], m, p).1; // x mod m
    for _ in 0..k {
        let mut acc = vec![1u64];
        let mut base = y.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = pmulmod(&acc, &base, m, p);
            }
            base = pmulmod(&base, &base, m, p);
            e >>= 1;
        }
        y = acc;
    }
    y
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    pnormalize(&mut a);
    pnormalize(&mut b);
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// Rabin irreducibility test for a monic polynomial over F_p.
fn pirreducible(f: &[u64], p: u64) -> bool {
    let d = match pdeg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    // x^(p^d) ≡ x (mod f)
    let xq = pfrob_x(d, f, p);
    if xq != pdivrem(&[0, 1], f, p).1 {
        return false;
    }
    // gcd(x^(p^(d/l)) - x, f) = 1 for every prime l | d
    for (l, _) in arith::factor(d as u64) {
        let k = d / l as usize;
        let xk = pfrob_x(k, f, p);
        let diff = psub(&xk, &[0, 1], p);
        let g = pgcd(&diff, f, p);
        if pdeg(&g) != Some(0) && !g.is_empty() {
            return false;
        }
        if g.is_empty() {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `d` over F_p, enumerating
/// lower coefficients as little-endian base-p digits of 0, 1, 2, ...
fn first_irreducible(p: u64, d: usize) -> Vec<u64> {
    let total = (p as u128).pow(d as u32);
    let mut v: u128 = 0;
    while v < total {
        let mut f = vec![0u64; d + 1];
        let mut t = v;
        for c in f.iter_mut().take(d) {
            *c = (t % p as u128) as u64;
            t /= p as u128;
        }
        f[d] = 1;
        if pirreducible(&f, p) {
            return f;
        }
        v += 1;
    }
    unreachable!("irreducible polynomial of degree {d} over F_{p} exists");
}

// ---------------------------------------------------------------------------
// dense linear algebra over F_p, used only for descriptor construction
// ---------------------------------------------------------------------------

/// Row-reduces `rows` in place; returns pivot column per row.
fn fp_rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = arith::mod_inv(rows[r][c], p).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let mul = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + (p - mul) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves M x = v for square-or-tall M (columns given); None if inconsistent.
fn fp_solve(columns: &[Vec<u64>], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let nrows = v.len();
    let ncols = columns.len();
    let mut aug: Vec<Vec<u64>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let pivots = fp_rref(&mut aug, p);
    let mut x = vec![0u64; ncols];
    for (row, &pc) in aug.iter().zip(pivots.iter()) {
        if pc == ncols {
            return None; // pivot in augmented column
        }
        x[pc] = row[ncols];
    }
    // consistency of remaining rows
    for row in aug.iter().skip(pivots.len()) {
        if row[ncols] != 0 {
            return None;
        }
    }
    Some(x)
}

/// Inverts a square matrix given by columns; panics if singular.
fn fp_invert(columns: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = columns.len();
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[i]).collect();
            let mut id = vec![0u64; n];
            id[i] = 1;
            row.extend(id);
            row
        })
        .collect();
    let pivots = fp_rref(&mut aug, p);
    assert_eq!(pivots.len(), n, "singular matrix");
    let mut inv_cols = vec![vec![0u64; n]; n];
    for (r, row) in aug.iter().enumerate() {
        for c in 0..n {
            inv_cols[c][r] = row[n + c];
        }
    }
    inv_cols
}

fn fp_mat_vec(columns: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    let nrows = columns.first().map_or(0, Vec::len);
    let mut out = vec![0u64; nrows];
    for (c, col) in columns.iter().enumerate() {
        if v[c] == 0 {
            continue;
        }
        for (o, &m) in out.iter_mut().zip(col.iter()) {
            *o = (*o + v[c] * m) % p;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// field descriptors
// ---------------------------------------------------------------------------

/// A finite field F_q (q = p^s) or an extension F_q[α], with all arithmetic
/// flattened over the prime field.
pub struct FieldDesc {
    p: u64,
    base_degree: usize,
    base_modulus: Vec<u64>,
    /// Modulus of the extension step, as little-endian F_q coefficient vectors.
    ext_modulus: Option<Vec<Vec<u64>>>,
    base: Option<Arc<FieldDesc>>,
    /// Flattened degree over F_p.
    degree: usize,
    /// Flattened monic irreducible modulus over F_p.
    modulus: Vec<u64>,
    /// Image of the base-field generator c in flattened coordinates.
    fq_gen: Vec<u64>,
    /// Image of α (root of ext_modulus), when this is an extension.
    alpha_img: Option<Vec<u64>>,
    /// Columns: flattened coordinates of c^i (i < s); the subfield embedding.
    embed_cols: Vec<Vec<u64>>,
    /// Columns: flattened coordinates of the tower basis c^i·α^k (index k·s+i).
    tower_cols: Option<Vec<Vec<u64>>>,
    /// Inverse of `tower_cols`.
    flat_to_tower: Option<Vec<Vec<u64>>>,
    /// Prime factorization of p^degree - 1.
    order_factors: Vec<(u64, u32)>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ext_modulus.is_some() {
            write!(f, "F_{}[α] (degree {} over F_p)", self.q(), self.degree)
        } else {
            write!(f, "F_{}", self.q())
        }
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.fq_gen == other.fq_gen
    }
}
impl Eq for FieldDesc {}

impl FieldDesc {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Arc<FieldDesc>> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::ground(p, 1, vec![0, 1]))
    }

    /// F_q for a prime power q, with the canonical (first-in-enumeration)
    /// irreducible base modulus.
    pub fn prime_power(q: u64) -> Result<Arc<FieldDesc>> {
        let (p, s) = arith::prime_power_split(q).ok_or(Error::NotPrimePower(q))?;
        if s == 1 {
            return Self::prime(p);
        }
        Ok(Self::ground(p, s, first_irreducible(p, s)))
    }

    /// F_{p^s} with an explicit monic irreducible modulus over F_p.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<FieldDesc>> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m = modulus;
        pnormalize(&mut m);
        let d = pdeg(&m).ok_or(Error::NotMonic)?;
        if m[d] != 1 {
            return Err(Error::NotMonic);
        }
        if d == 0 {
            return Err(Error::NotMonic);
        }
        if !pirreducible(&m, p) {
            return Err(Error::ReducibleModulus(poly_text(&m, p)));
        }
        Ok(Self::ground(p, d, m))
    }

    fn ground(p: u64, s: usize, modulus: Vec<u64>) -> Arc<FieldDesc> {
        let fq_gen = if s == 1 {
            vec![0]
        } else {
            let mut g = vec![0; s];
            g[1] = 1;
            g
        };
        let embed_cols = (0..s)
            .map(|i| {
                let mut e = vec![0; s];
                e[i] = 1;
                e
            })
            .collect();
        let size_minus_1 = (p as u64).pow(s as u32) - 1;
        Arc::new(FieldDesc {
            p,
            base_degree: s,
            base_modulus: modulus.clone(),
            ext_modulus: None,
            base: None,
            degree: s,
            modulus,
            fq_gen,
            alpha_img: None,
            embed_cols,
            tower_cols: None,
            flat_to_tower: None,
            order_factors: arith::factor(size_minus_1),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Size of the base field F_q.
    pub fn q(&self) -> u64 {
        self.p.pow(self.base_degree as u32)
    }

    /// Total number of elements.
    pub fn size(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    /// Flattened degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Degree of the extension step over F_q (1 for ground fields).
    pub fn ext_degree(&self) -> usize {
        self.degree / self.base_degree
    }

    pub fn base_field(&self) -> Option<&Arc<FieldDesc>> {
        self.base.as_ref()
    }

    /// Same flattened arithmetic: elements are freely interchangeable.
    pub fn compat(&self, other: &FieldDesc) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            field: Arc::clone(self),
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.from_int(1)
    }

    /// The residue of an integer, embedded through F_p.
    pub fn from_int(self: &Arc<Self>, v: i64) -> FieldElem {
        let mut coeffs = vec![0; self.degree];
        coeffs[0] = v.rem_euclid(self.p as i64) as u64;
        FieldElem {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// Element from flattened little-endian coordinates (length ≤ degree).
    pub fn from_flat(self: &Arc<Self>, mut coeffs: Vec<u64>) -> FieldElem {
        assert!(coeffs.len() <= self.degree, "coordinate vector too long");
        coeffs.resize(self.degree, 0);
        for c in coeffs.iter_mut() {
            *c %= self.p;
        }
        FieldElem {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// The generator: α for extensions, the class of the base generator c
    /// for ground fields (0 for F_p itself).
    pub fn gen(self: &Arc<Self>) -> FieldElem {
        match &self.alpha_img {
            Some(a) => FieldElem {
                field: Arc::clone(self),
                coeffs: a.clone(),
            },
            None => FieldElem {
                field: Arc::clone(self),
                coeffs: self.fq_gen.clone(),
            },
        }
    }

    /// Canonical enumeration: index written in base p, little-endian.
    pub fn element_at(self: &Arc<Self>, idx: u64) -> FieldElem {
        debug_assert!(idx < self.size());
        let mut coeffs = vec![0; self.degree];
        let mut t = idx;
        for c in coeffs.iter_mut() {
            *c = t % self.p;
            t /= self.p;
        }
        FieldElem {
            field: Arc::clone(self),
            coeffs,
        }
    }

    pub fn index_of(&self, e: &FieldElem) -> u64 {
        let mut idx = 0u64;
        for &c in e.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    /// Embeds a base-field (F_q) element into this field.
    pub fn embed(self: &Arc<Self>, a: &FieldElem) -> FieldElem {
        assert_eq!(
            a.coeffs.len(),
            self.base_degree,
            "embed: element is not in the base field"
        );
        let coeffs = fp_mat_vec(&self.embed_cols, &a.coeffs, self.p);
        FieldElem {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// Expresses an element in the F_q-subfield, if it lies there.
    pub fn try_to_base(&self, e: &FieldElem) -> Option<Vec<u64>> {
        fp_solve(&self.embed_cols, &e.coeffs, self.p)
    }

    /// Coordinates in the tower basis {c^i α^k}: a length-ext_degree vector of
    /// F_q coefficient vectors (the α-power coordinates over F_q).
    pub fn fq_coords(&self, e: &FieldElem) -> Vec<Vec<u64>> {
        let s = self.base_degree;
        let t = self.ext_degree();
        let tower = match &self.flat_to_tower {
            Some(m) => fp_mat_vec(m, &e.coeffs, self.p),
            None => e.coeffs.clone(),
        };
        (0..t).map(|k| tower[k * s..(k + 1) * s].to_vec()).collect()
    }

    /// Inverse of [`Self::fq_coords`].
    pub fn from_fq_coords(self: &Arc<Self>, coords: &[Vec<u64>]) -> FieldElem {
        let s = self.base_degree;
        let t = self.ext_degree();
        assert_eq!(coords.len(), t);
        let mut tower = vec![0u64; self.degree];
        for (k, c) in coords.iter().enumerate() {
            assert_eq!(c.len(), s);
            tower[k * s..(k + 1) * s].copy_from_slice(c);
        }
        let flat = match &self.tower_cols {
            Some(m) => fp_mat_vec(m, &tower, self.p),
            None => tower,
        };
        FieldElem {
            field: Arc::clone(self),
            coeffs: flat,
        }
    }

    pub fn base_modulus(&self) -> &[u64] {
        &self.base_modulus
    }

    pub fn ext_modulus(&self) -> Option<&[Vec<u64>]> {
        self.ext_modulus.as_deref()
    }

    fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if self.degree == 1 {
            return vec![a[0] * b[0] % self.p];
        }
        let mut r = pmulmod(a, b, &self.modulus, self.p);
        r.resize(self.degree, 0);
        r
    }
}

/// Builds F_q[x]/(f(x)) for `f` monic irreducible over the ground field of
/// `f`'s coefficients; α is the residue class of x.
pub fn extension(base: &Arc<FieldDesc>, f: &Poly) -> Result<Arc<FieldDesc>> {
    assert!(
        base.ext_modulus.is_none(),
        "towers beyond F_q[α] are not supported; flatten the base first"
    );
    assert!(f.field().compat(base), "modulus is not over the base field");
    let t = match f.deg() {
        Some(t) if t >= 1 => t,
        _ => return Err(Error::NotMonic),
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_irreducible() {
        return Err(Error::ReducibleModulus(f.to_text()));
    }
    let p = base.p;
    let s = base.base_degree;
    let d_total = s * t;

    // Tower arithmetic: residues mod f with F_q coefficients. The flattened
    // field is F_p(β) for the first enumerated β with a degree-D minimal
    // polynomial; α itself works whenever s = 1.
    let tower_of = |e: &Poly| -> Vec<u64> {
        let mut v = vec![0u64; d_total];
        for k in 0..t {
            let c = e.coeff(k);
            v[k * s..(k + 1) * s].copy_from_slice(c.coeffs());
        }
        v
    };
    let alpha_tower = Poly::x(base).rem(f);

    // Accepts a candidate β if its powers span the tower over F_p; returns the
    // power-column matrix and the minimal polynomial of β.
    let try_candidate = |beta: &Poly| -> Option<(Vec<Vec<u64>>, Vec<u64>)> {
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d_total);
        let mut pw = Poly::one(base);
        for _ in 0..d_total {
            cols.push(tower_of(&pw));
            pw = pw.mul(beta).rem(f);
        }
        let rank = {
            let mut m: Vec<Vec<u64>> = (0..d_total)
                .map(|i| (0..d_total).map(|j| cols[j][i]).collect())
                .collect();
            fp_rref(&mut m, p).len()
        };
        if rank < d_total {
            return None;
        }
        let beta_d = tower_of(&pw); // β^D
        let lam = fp_solve(&cols, &beta_d, p).expect("powers span the field");
        let mut m = vec![0u64; d_total + 1];
        for (j, &l) in lam.iter().enumerate() {
            m[j] = (p - l % p) % p;
        }
        m[d_total] = 1;
        Some((cols, m))
    };

    let mut chosen: Option<(Vec<Vec<u64>>, Vec<u64>)> = None;
    'search: for mul_idx in 1..base.size() {
        for add_idx in 0..base.size() {
            let beta = alpha_tower
                .mul_scalar(&base.element_at(mul_idx))
                .add(&Poly::constant(base.element_at(add_idx)));
            if let Some(found) = try_candidate(&beta) {
                chosen = Some(found);
                break 'search;
            }
        }
    }
    if chosen.is_none() {
        // exhaustive fallback over all residues mod f
        let qsize = base.size();
        let total = (qsize as u128).pow(t as u32);
        let mut v: u128 = 1;
        while v < total {
            let mut idx = v;
            let coeffs: Vec<FieldElem> = (0..t)
                .map(|_| {
                    let c = base.element_at((idx % qsize as u128) as u64);
                    idx /= qsize as u128;
                    c
                })
                .collect();
            let beta = Poly::from_coeffs(base, coeffs);
            if let Some(found) = try_candidate(&beta) {
                chosen = Some(found);
                break;
            }
            v += 1;
        }
    }
    let (tower_cols_inv_src, modulus) = chosen.expect("primitive element exists");

    // tower_cols_inv_src: columns = tower coords of β^j  (maps flat -> tower)
    let flat_to_tower = tower_cols_inv_src;
    let tower_cols = fp_invert(&flat_to_tower, p);

    let to_flat = |tower: &[u64]| fp_mat_vec(&tower_cols, tower, p);

    // image of the base generator c
    let fq_gen = if s == 1 {
        vec![0; d_total]
    } else {
        let mut ct = vec![0u64; d_total];
        ct[1] = 1;
        to_flat(&ct)
    };
    // image of α
    let alpha_img = to_flat(&tower_of(&alpha_tower));

    let mut embed_cols = Vec::with_capacity(s);
    let mut acc = {
        let mut one = vec![0u64; d_total];
        one[0] = 1;
        to_flat(&one)
    };
    for _ in 0..s {
        embed_cols.push(acc.clone());
        acc = pmulmod(&acc, &fq_gen, &modulus, p);
        acc.resize(d_total, 0);
    }

    let ext_modulus: Vec<Vec<u64>> = (0..=t).map(|k| f.coeff(k).coeffs.clone()).collect();
    let size_minus_1 = p.pow(d_total as u32) - 1;
    let field = Arc::new(FieldDesc {
        p,
        base_degree: s,
        base_modulus: base.base_modulus.clone(),
        ext_modulus: Some(ext_modulus),
        base: Some(Arc::clone(base)),
        degree: d_total,
        modulus,
        fq_gen,
        alpha_img: Some(alpha_img),
        embed_cols,
        tower_cols: Some(tower_cols),
        flat_to_tower: Some(flat_to_tower),
        order_factors: arith::factor(size_minus_1),
    });

    // construction invariants: the moduli vanish on the stored images
    {
        let alpha = field.gen();
        let fval = f.eval_embedded(&field, &alpha);
        assert!(fval.is_zero(), "designated root fails its modulus");
        if s > 1 {
            let c_img = FieldElem {
                field: Arc::clone(&field),
                coeffs: field.fq_gen.clone(),
            };
            let mut acc = field.zero();
            for (i, &bc) in base.base_modulus.iter().enumerate() {
                acc = &acc + &(&c_img.pow(i as u128) * &field.from_int(bc as i64));
            }
            assert!(acc.is_zero(), "base generator image fails base modulus");
        }
    }
    Ok(field)
}

// ---------------------------------------------------------------------------
// field elements
// ---------------------------------------------------------------------------

/// An element of a [`FieldDesc`]: flattened little-endian coordinates over F_p.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<FieldDesc>,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.compat(&other.field)
    }
}
impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

impl FieldElem {
    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn assert_compat(&self, other: &FieldElem) {
        assert!(
            self.field.compat(&other.field),
            "elements from different fields"
        );
    }

    /// self -= c·y, avoiding allocation for degree-1 fields.
    pub fn sub_mul_assign(&mut self, c: &FieldElem, y: &FieldElem) {
        let p = self.field.p;
        if self.coeffs.len() == 1 {
            self.coeffs[0] = (self.coeffs[0] + p - c.coeffs[0] * y.coeffs[0] % p) % p;
            return;
        }
        let prod = self.field.raw_mul(&c.coeffs, &y.coeffs);
        for (x, t) in self.coeffs.iter_mut().zip(prod.iter()) {
            *x = (*x + p - t) % p;
        }
    }

    /// self += c·y, avoiding allocation for degree-1 fields.
    pub fn add_mul_assign(&mut self, c: &FieldElem, y: &FieldElem) {
        let p = self.field.p;
        if self.coeffs.len() == 1 {
            self.coeffs[0] = (self.coeffs[0] + c.coeffs[0] * y.coeffs[0]) % p;
            return;
        }
        let prod = self.field.raw_mul(&c.coeffs, &y.coeffs);
        for (x, t) in self.coeffs.iter_mut().zip(prod.iter()) {
            *x = (*x + t) % p;
        }
    }

    pub fn pow(&self, mut e: u128) -> FieldElem {
        if self.is_zero() {
            return if e == 0 {
                self.field.one()
            } else {
                self.clone()
            };
        }
        let order = self.field.size() as u128 - 1;
        if order > 0 {
            e %= order;
        }
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = pinvmod(&self.coeffs, &self.field.modulus, self.field.p)
            .expect("nonzero element invertible");
        Ok(self.field.from_flat(inv))
    }

    /// ξ ↦ ξ^(q^e), the e-th power of the F_q-Frobenius.
    pub fn frobenius(&self, e: usize) -> FieldElem {
        if self.is_zero() {
            return self.clone();
        }
        let size_minus_1 = self.field.size() - 1;
        if size_minus_1 == 0 {
            return self.clone();
        }
        let exp = arith::mod_pow(self.field.q() % size_minus_1.max(1), e as u64, size_minus_1);
        // q^e ≡ 0 mod (size-1) means exponent size-1, i.e. identity on units
        let exp = if exp == 0 { size_minus_1 } else { exp };
        self.pow(exp as u128)
    }

    /// Least t ≥ 1 with self^t = 1.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut t = self.field.size() - 1;
        for &(prime, _) in &self.field.order_factors {
            while t % prime == 0 && self.pow((t / prime) as u128).is_one() {
                t /= prime;
            }
        }
        Ok(t)
    }
}

impl std::ops::Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.assert_compat(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| (a + b) % p)
            .collect();
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl std::ops::Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.assert_compat(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|a| (p - a) % p).collect();
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl std::ops::Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.assert_compat(rhs);
        let coeffs = self.field.raw_mul(&self.coeffs, &rhs.coeffs);
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

/// Little-endian F_p coefficient vector rendered as a polynomial in x.
fn poly_text(coeffs: &[u64], _p: u64) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}*x^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn raw_irreducibility() {
        assert!(pirreducible(&[1, 1, 0, 1], 2)); // x^3+x+1
        assert!(pirreducible(&[1, 1, 1], 2)); // x^2+x+1
        assert!(!pirreducible(&[1, 0, 1], 2)); // x^2+1 = (x+1)^2
        assert!(pirreducible(&[1, 0, 1], 3)); // x^2+1 over F_3
        assert!(!pirreducible(&[2, 0, 1], 3)); // x^2+2 = (x+1)(x+2)
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn f8_alpha_order() {
        let f2 = FieldDesc::prime(2).unwrap();
        let f = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        let f8 = extension(&f2, &f).unwrap();
        assert_eq!(f8.size(), 8);
        let a = f8.gen();
        assert_eq!(a.order().unwrap(), 7);
        // exhaustive field axioms on all 8 elements
        for i in 0..8 {
            for j in 0..8 {
                let x = f8.element_at(i);
                let y = f8.element_at(j);
                assert_eq!(&(&x * &y) * &x, &x * &(&y * &x));
            }
        }
        for i in 1..8 {
            let x = f8.element_at(i);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn degree_one_extension_is_identity() {
        let f3 = FieldDesc::prime(3).unwrap();
        let f = Poly::from_ints(&f3, &[1, 1]); // x + 1
        let e = extension(&f3, &f).unwrap();
        assert_eq!(e.size(), 3);
        // α = -1 = 2
        assert_eq!(e.gen(), e.from_int(2));
    }

    #[test]
    fn f4_relation() {
        let f2 = FieldDesc::prime(2).unwrap();
        let f = Poly::from_ints(&f2, &[1, 1, 1]);
        let f4 = extension(&f2, &f).unwrap();
        let a = f4.gen();
        // α^2 = α + 1
        assert_eq!(&a * &a, &a + &f4.one());
        assert_eq!(a.order().unwrap(), 3);
    }

    #[test]
    fn frobenius_basics() {
        let f2 = FieldDesc::prime(2).unwrap();
        let f8 = extension(&f2, &Poly::from_ints(&f2, &[1, 1, 0, 1])).unwrap();
        let a = f8.gen();
        assert_eq!(a.frobenius(1), &a * &a);
        assert_eq!(a.frobenius(3), a);
        assert_eq!(f8.one().frobenius(5), f8.one());
        // ring homomorphism on all pairs
        for i in 0..8 {
            for j in 0..8 {
                let x = f8.element_at(i);
                let y = f8.element_at(j);
                assert_eq!((&x + &y).frobenius(1), &x.frobenius(1) + &y.frobenius(1));
                assert_eq!((&x * &y).frobenius(1), &x.frobenius(1) * &y.frobenius(1));
            }
        }
    }

    #[test]
    fn flattened_tower_f4_over_f2() {
        // F_4[α] with α a root of a degree-3 irreducible over F_4: 64 elements
        let f4 = FieldDesc::prime_power(4).unwrap();
        // find an irreducible cubic over F_4
        let mut ext_field = None;
        for v in 0..64u64 {
            let coeffs: Vec<FieldElem> = (0..3)
                .map(|k| f4.element_at((v >> (2 * k)) & 3))
                .chain(std::iter::once(f4.one()))
                .collect();
            let f = Poly::from_coeffs(&f4, coeffs);
            if f.is_irreducible() {
                ext_field = Some(extension(&f4, &f).unwrap());
                break;
            }
        }
        let k = ext_field.expect("cubic over F_4 exists");
        assert_eq!(k.size(), 64);
        assert_eq!(k.ext_degree(), 3);
        // subfield embedding is a ring homomorphism
        for i in 0..4 {
            for j in 0..4 {
                let x = f4.element_at(i);
                let y = f4.element_at(j);
                assert_eq!(k.embed(&(&x * &y)), &k.embed(&x) * &k.embed(&y));
                assert_eq!(k.embed(&(&x + &y)), &k.embed(&x) + &k.embed(&y));
            }
        }
        // round-trip through F_q coordinates
        for idx in [0u64, 1, 5, 17, 63, 40] {
            let x = k.element_at(idx);
            let coords = k.fq_coords(&x);
            assert_eq!(k.from_fq_coords(&coords), x);
        }
        // pullback detects subfield membership
        let a = f4.element_at(2);
        assert_eq!(k.try_to_base(&k.embed(&a)), Some(a.coeffs().to_vec()));
        assert_eq!(k.try_to_base(&k.gen()), None);
    }

    #[test]
    fn frobenius_fixes_whole_field_exhaustively() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let fq = FieldDesc::prime_power(q).unwrap();
            let f = crate::poly::first_irreducible_over(&fq, 2);
            let k = extension(&fq, &f).unwrap();
            assert!(k.size() <= 81);
            for i in 0..k.size() {
                let x = k.element_at(i);
                assert_eq!(x.frobenius(k.ext_degree()), x, "q={q} idx={i}");
            }
        }
    }
}
