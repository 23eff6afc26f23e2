//! Arithmetic in the split metacyclic group algebra F_q G_{n,m,r}, in the
//! skew group algebras F_q[α] ∗_θ B_i, and in the block algebras
//! M_s(F_q[α] ∗_θ B_i) that appear as decomposition summands.
//!
//! Elements of F_q G_{n,m,r} are stored in the canonical form Σ_j b^j P_j(a)
//! (b-powers on the left): an m×n coefficient array, row j giving P_j.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldElem};
use crate::poly::Poly;
use crate::polyfact::check_group_params;

/// Parameters of G_{n,m,r} = <a, b | a^n = b^m = e, ba = a^r b> together with
/// the coefficient field F_q.
#[derive(Debug)]
pub struct GroupParams {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub field: Arc<FieldDesc>,
    r_inv: usize,
    /// r^j mod n for j < m.
    r_pows: Vec<usize>,
    /// r^(-j) mod n for j < m.
    r_inv_pows: Vec<usize>,
}

impl PartialEq for GroupParams {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.r == other.r && self.field == other.field
    }
}
impl Eq for GroupParams {}

impl GroupParams {
    pub fn new(field: &Arc<FieldDesc>, n: usize, m: usize, r: usize) -> Result<Arc<GroupParams>> {
        check_group_params(n, m, r)?;
        let q = field.size();
        if arith::gcd(q, n as u64) != 1 {
            return Err(Error::NonCoprime { n, q });
        }
        let r = r % n;
        let r_inv = arith::mod_inv(r as u64, n as u64).expect("gcd(r,n)=1") as usize;
        let pows = |base: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(m);
            let mut x = 1usize;
            for _ in 0..m {
                v.push(x);
                x = x * base % n;
            }
            v
        };
        Ok(Arc::new(GroupParams {
            n,
            m,
            r,
            field: Arc::clone(field),
            r_inv,
            r_pows: pows(r),
            r_inv_pows: pows(r_inv),
        }))
    }

    /// Group order nm = F_q-dimension of the algebra.
    pub fn order(&self) -> usize {
        self.n * self.m
    }

    pub fn r_inv(&self) -> usize {
        self.r_inv
    }

    pub fn r_pow(&self, j: usize) -> usize {
        self.r_pows[j % self.m]
    }

    pub fn r_inv_pow(&self, j: usize) -> usize {
        self.r_inv_pows[j % self.m]
    }

    /// All r with r^m ≡ 1 (mod n), r ≢ 1: the admissible twists for (n, m).
    pub fn admissible_r(n: usize, m: usize) -> Vec<usize> {
        (2..n)
            .filter(|&r| {
                arith::gcd(r as u64, n as u64) == 1
                    && arith::mod_pow(r as u64, m as u64, n as u64) == 1
            })
            .collect()
    }

    /// Product of basis group elements, b-left exponents:
    /// (b^j a^i)(b^j' a^i') = b^(j+j') a^(i·r^(-j') + i').
    pub fn compose(&self, (j, i): (usize, usize), (j2, i2): (usize, usize)) -> (usize, usize) {
        ((j + j2) % self.m, (i * self.r_inv_pow(j2) + i2) % self.n)
    }

    /// Inverse of the basis group element b^j a^i.
    pub fn inverse(&self, (j, i): (usize, usize)) -> (usize, usize) {
        let jj = (self.m - j) % self.m;
        let ii = (self.n - i * self.r_pow(j) % self.n) % self.n;
        (jj, ii)
    }
}

/// An element of F_q G_{n,m,r} in canonical form Σ_j b^j P_j(a).
#[derive(Clone)]
pub struct AlgebraElement {
    params: Arc<GroupParams>,
    /// m×n row-major: coeffs[j*n + i] multiplies b^j a^i.
    coeffs: Vec<FieldElem>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.coeffs == other.coeffs
    }
}
impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for j in 0..self.params.m {
            for i in 0..self.params.n {
                let c = &self.coeffs[j * self.params.n + i];
                if c.is_zero() {
                    continue;
                }
                let mono = match (j, i) {
                    (0, 0) => "e".to_string(),
                    (0, i) => format!("a^{i}"),
                    (j, 0) => format!("b^{j}"),
                    (j, i) => format!("b^{j}*a^{i}"),
                };
                if c.is_one() {
                    terms.push(mono);
                } else {
                    terms.push(format!("{:?}*{}", c, mono));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl AlgebraElement {
    pub fn zero(params: &Arc<GroupParams>) -> AlgebraElement {
        AlgebraElement {
            params: Arc::clone(params),
            coeffs: vec![params.field.zero(); params.order()],
        }
    }

    pub fn one(params: &Arc<GroupParams>) -> AlgebraElement {
        Self::basis(params, 0, 0)
    }

    /// The basis group element b^j a^i.
    pub fn basis(params: &Arc<GroupParams>, j: usize, i: usize) -> AlgebraElement {
        let mut e = Self::zero(params);
        e.coeffs[(j % params.m) * params.n + (i % params.n)] = params.field.one();
        e
    }

    pub fn params(&self) -> &Arc<GroupParams> {
        &self.params
    }

    pub fn coeff(&self, j: usize, i: usize) -> &FieldElem {
        &self.coeffs[j * self.params.n + i]
    }

    pub fn set_coeff(&mut self, j: usize, i: usize, v: FieldElem) {
        self.coeffs[j * self.params.n + i] = v;
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Builds Σ_j b^j P_j(a) from the rows P_j (deg < n each).
    pub fn from_rows(params: &Arc<GroupParams>, rows: &[Poly]) -> AlgebraElement {
        assert_eq!(rows.len(), params.m);
        let mut e = Self::zero(params);
        for (j, p) in rows.iter().enumerate() {
            assert!(p.deg().map_or(true, |d| d < params.n));
            for i in 0..params.n {
                e.coeffs[j * params.n + i] = p.coeff(i);
            }
        }
        e
    }

    /// Row j as the polynomial P_j(x).
    pub fn row(&self, j: usize) -> Poly {
        Poly::from_coeffs(
            &self.params.field,
            self.coeffs[j * self.params.n..(j + 1) * self.params.n].to_vec(),
        )
    }

    /// Builds from the other canonical form Σ_j R_j(a) b^j (b-powers right).
    pub fn from_a_left_rows(params: &Arc<GroupParams>, rows: &[Poly]) -> AlgebraElement {
        assert_eq!(rows.len(), params.m);
        let mut e = Self::zero(params);
        for (j, p) in rows.iter().enumerate() {
            // R_j(a) b^j = b^j R_j(a^(r^(-j)))
            let twist = params.r_inv_pow(j);
            for i in 0..params.n {
                let c = p.coeff(i);
                if c.is_zero() {
                    continue;
                }
                let target = i * twist % params.n;
                e.coeffs[j * params.n + target] = &e.coeffs[j * params.n + target] + &c;
            }
        }
        e
    }

    /// Reads off the rows of the form Σ_j R_j(a) b^j.
    pub fn to_a_left_rows(&self) -> Vec<Poly> {
        let params = &self.params;
        (0..params.m)
            .map(|j| {
                let twist = params.r_pow(j);
                let mut coeffs = vec![params.field.zero(); params.n];
                for i in 0..params.n {
                    let c = &self.coeffs[j * params.n + i];
                    if !c.is_zero() {
                        coeffs[i * twist % params.n] = c.clone();
                    }
                }
                Poly::from_coeffs(&params.field, coeffs)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    /// Hamming weight: |supp(u)|.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn assert_same(&self, other: &AlgebraElement) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self.assert_same(rhs).expect("params mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a + b)
            .collect();
        AlgebraElement {
            params: Arc::clone(&self.params),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self.assert_same(rhs).expect("params mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a - b)
            .collect();
        AlgebraElement {
            params: Arc::clone(&self.params),
            coeffs,
        }
    }

    pub fn scale(&self, c: &FieldElem) -> AlgebraElement {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        AlgebraElement {
            params: Arc::clone(&self.params),
            coeffs,
        }
    }

    /// Product in F_q G_{n,m,r}, distributing
    /// (b^j a^i)(b^j' a^i') = b^(j+j') a^(i·r^(-j') + i').
    pub fn mul(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        self.assert_same(rhs)?;
        let params = &self.params;
        let (n, m) = (params.n, params.m);
        let mut out = Self::zero(params);
        for j2 in 0..m {
            let twist = params.r_inv_pow(j2);
            // does row j' of rhs contribute at all?
            let rhs_row = &rhs.coeffs[j2 * n..(j2 + 1) * n];
            if rhs_row.iter().all(FieldElem::is_zero) {
                continue;
            }
            for j in 0..m {
                let out_row = (j + j2) % m;
                for i in 0..n {
                    let c1 = &self.coeffs[j * n + i];
                    if c1.is_zero() {
                        continue;
                    }
                    let shifted = i * twist % n;
                    for (i2, c2) in rhs_row.iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        let col = (shifted + i2) % n;
                        let idx = out_row * n + col;
                        out.coeffs[idx] = &out.coeffs[idx] + &(c1 * c2);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Left multiplication by the generator a.
    pub fn left_mul_a(&self) -> AlgebraElement {
        let params = &self.params;
        let (n, m) = (params.n, params.m);
        let mut out = Self::zero(params);
        for j in 0..m {
            // a b^j = b^j a^(r^(-j)): row j shifts by r^(-j)
            let shift = params.r_inv_pow(j);
            for i in 0..n {
                let c = &self.coeffs[j * n + i];
                if !c.is_zero() {
                    out.coeffs[j * n + (i + shift) % n] = c.clone();
                }
            }
        }
        out
    }

    /// Left multiplication by the basis group element b^j2 a^i2.
    pub fn left_mul_basis(&self, (j2, i2): (usize, usize)) -> AlgebraElement {
        let params = &self.params;
        let (n, m) = (params.n, params.m);
        let mut out = Self::zero(params);
        for j in 0..m {
            // b^j2 a^i2 b^j = b^(j2+j) a^(i2·r^(-j))
            let shift = i2 * params.r_inv_pow(j) % n;
            let tj = (j2 + j) % m;
            for i in 0..n {
                let c = &self.coeffs[j * n + i];
                if !c.is_zero() {
                    out.coeffs[tj * n + (shift + i) % n] = c.clone();
                }
            }
        }
        out
    }

    /// Left multiplication by the generator b.
    pub fn left_mul_b(&self) -> AlgebraElement {
        let params = &self.params;
        let (n, m) = (params.n, params.m);
        let mut out = Self::zero(params);
        for j in 0..m {
            let target = (j + 1) % m;
            for i in 0..n {
                out.coeffs[target * n + i] = self.coeffs[j * n + i].clone();
            }
        }
        out
    }

    /// The star anti-automorphism u ↦ Σ u_{g^(-1)} g.
    pub fn star(&self) -> AlgebraElement {
        let params = &self.params;
        let mut out = Self::zero(params);
        for j in 0..params.m {
            for i in 0..params.n {
                let (jj, ii) = params.inverse((j, i));
                out.coeffs[j * params.n + i] = self.coeffs[jj * params.n + ii].clone();
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// skew group algebra K ∗_θ B_i and the block algebras M_s(K ∗_θ B_i)
// ---------------------------------------------------------------------------

/// Shape shared by all elements of one summand algebra M_s(F_q[α] ∗_θ B_i):
/// block side s, stabilizer order u, twist exponent k (θ(h): x ↦ x^(q^k)).
#[derive(Debug)]
pub struct BlockShape {
    pub s: usize,
    pub u: usize,
    pub theta_exponent: usize,
    pub field: Arc<FieldDesc>,
}

impl PartialEq for BlockShape {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s
            && self.u == other.u
            && self.theta_exponent == other.theta_exponent
            && self.field == other.field
    }
}
impl Eq for BlockShape {}

/// Element Σ_z x_z h^z of the skew group algebra F_q[α] ∗_θ B_i, with
/// h λ = λ^(q^k) h.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewElement {
    shape: Arc<BlockShape>,
    coeffs: Vec<FieldElem>, // length u, entry z multiplies h^z
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(z, c)| format!("{c:?}·h^{z}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl SkewElement {
    pub fn zero(shape: &Arc<BlockShape>) -> SkewElement {
        SkewElement {
            shape: Arc::clone(shape),
            coeffs: vec![shape.field.zero(); shape.u],
        }
    }

    pub fn one(shape: &Arc<BlockShape>) -> SkewElement {
        let mut e = Self::zero(shape);
        e.coeffs[0] = shape.field.one();
        e
    }

    /// The generator h (equals 1 when the stabilizer is trivial).
    pub fn h(shape: &Arc<BlockShape>) -> SkewElement {
        let mut e = Self::zero(shape);
        e.coeffs[1 % shape.u] = shape.field.one();
        e
    }

    /// A scalar λ ∈ F_q[α], sitting at h^0.
    pub fn scalar(shape: &Arc<BlockShape>, lambda: FieldElem) -> SkewElement {
        assert!(lambda.field().compat(&shape.field));
        let mut e = Self::zero(shape);
        e.coeffs[0] = lambda;
        e
    }

    pub fn from_coeffs(shape: &Arc<BlockShape>, coeffs: Vec<FieldElem>) -> SkewElement {
        assert_eq!(coeffs.len(), shape.u);
        SkewElement {
            shape: Arc::clone(shape),
            coeffs,
        }
    }

    pub fn shape(&self) -> &Arc<BlockShape> {
        &self.shape
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, z: usize) -> &FieldElem {
        &self.coeffs[z]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(FieldElem::is_zero)
    }

    fn check(&self, rhs: &SkewElement) -> Result<()> {
        if self.shape == rhs.shape || Arc::ptr_eq(&self.shape, &rhs.shape) {
            Ok(())
        } else {
            Err(Error::TwistMismatch)
        }
    }

    pub fn add(&self, rhs: &SkewElement) -> SkewElement {
        self.check(rhs).expect("twist mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a + b)
            .collect();
        SkewElement {
            shape: Arc::clone(&self.shape),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &SkewElement) -> SkewElement {
        self.check(rhs).expect("twist mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a - b)
            .collect();
        SkewElement {
            shape: Arc::clone(&self.shape),
            coeffs,
        }
    }

    /// Product under h^z λ = λ^(q^(kz)) h^z.
    pub fn mul(&self, rhs: &SkewElement) -> Result<SkewElement> {
        self.check(rhs)?;
        let u = self.shape.u;
        let k = self.shape.theta_exponent;
        let mut out = Self::zero(&self.shape);
        for (z, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (w, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let tw = b.frobenius(k * z);
                let idx = (z + w) % u;
                out.coeffs[idx] = &out.coeffs[idx] + &(a * &tw);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a scalar λ ∈ F_q[α].
    pub fn scale_left(&self, lambda: &FieldElem) -> SkewElement {
        let coeffs = self.coeffs.iter().map(|c| lambda * c).collect();
        SkewElement {
            shape: Arc::clone(&self.shape),
            coeffs,
        }
    }

    /// self += λ·other, coefficientwise.
    pub fn add_scaled_assign(&mut self, other: &SkewElement, lambda: &FieldElem) {
        for (x, y) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            if !y.is_zero() {
                x.add_mul_assign(lambda, y);
            }
        }
    }

    /// Left multiplication by h: coefficients twist and shift one slot.
    pub fn h_mul_left(&self) -> SkewElement {
        let u = self.shape.u;
        let k = self.shape.theta_exponent;
        let mut out = Self::zero(&self.shape);
        for (z, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[(z + 1) % u] = c.frobenius(k);
            }
        }
        out
    }
}

/// An s×s matrix over the skew group algebra: one summand's element.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockElement {
    shape: Arc<BlockShape>,
    entries: Vec<SkewElement>, // s×s row-major
}

impl fmt::Debug for BlockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.shape.s {
            let row: Vec<String> = (0..self.shape.s)
                .map(|c| format!("{:?}", self.entry(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl BlockElement {
    pub fn zero(shape: &Arc<BlockShape>) -> BlockElement {
        BlockElement {
            shape: Arc::clone(shape),
            entries: vec![SkewElement::zero(shape); shape.s * shape.s],
        }
    }

    pub fn identity(shape: &Arc<BlockShape>) -> BlockElement {
        let mut e = Self::zero(shape);
        for i in 0..shape.s {
            e.entries[i * shape.s + i] = SkewElement::one(shape);
        }
        e
    }

    pub fn from_entries(shape: &Arc<BlockShape>, entries: Vec<SkewElement>) -> BlockElement {
        assert_eq!(entries.len(), shape.s * shape.s);
        BlockElement {
            shape: Arc::clone(shape),
            entries,
        }
    }

    pub fn shape(&self) -> &Arc<BlockShape> {
        &self.shape
    }

    pub fn entry(&self, row: usize, col: usize) -> &SkewElement {
        &self.entries[row * self.shape.s + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, v: SkewElement) {
        self.entries[row * self.shape.s + col] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SkewElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        let s = self.shape.s;
        self.entries.iter().enumerate().all(|(idx, e)| {
            if idx / s == idx % s {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    fn check(&self, rhs: &BlockElement) -> Result<()> {
        if self.shape == rhs.shape || Arc::ptr_eq(&self.shape, &rhs.shape) {
            Ok(())
        } else {
            Err(Error::OrbitMismatch)
        }
    }

    pub fn add(&self, rhs: &BlockElement) -> BlockElement {
        self.check(rhs).expect("orbit mismatch");
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        BlockElement {
            shape: Arc::clone(&self.shape),
            entries,
        }
    }

    pub fn sub(&self, rhs: &BlockElement) -> BlockElement {
        self.check(rhs).expect("orbit mismatch");
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        BlockElement {
            shape: Arc::clone(&self.shape),
            entries,
        }
    }

    /// Matrix product with skew entrywise arithmetic.
    pub fn mul(&self, rhs: &BlockElement) -> Result<BlockElement> {
        self.check(rhs)?;
        let s = self.shape.s;
        let mut out = Self::zero(&self.shape);
        for i in 0..s {
            for t in 0..s {
                let a = self.entry(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = rhs.entry(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    out.entries[i * s + j] = out.entries[i * s + j].add(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<BlockElement> {
        let mut acc = Self::identity(&self.shape);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Scales every entry on the left by λ ∈ F_q[α].
    pub fn scale_left(&self, lambda: &FieldElem) -> BlockElement {
        let entries = self.entries.iter().map(|e| e.scale_left(lambda)).collect();
        BlockElement {
            shape: Arc::clone(&self.shape),
            entries,
        }
    }

    /// self += λ·other, entrywise.
    pub fn add_scaled_assign(&mut self, other: &BlockElement, lambda: &FieldElem) {
        for (x, y) in self.entries.iter_mut().zip(other.entries.iter()) {
            if !y.is_zero() {
                x.add_scaled_assign(y, lambda);
            }
        }
    }
}
