//! Metacyclic codes as left ideals of F_q G_{n,m,r}: construction by closure,
//! the ideal ↔ submodule-tuple correspondence, exact and bounded minimum
//! distance, the generalized-concatenated view, and the dual low-weight
//! census behind the key-recovery feasibility check.

use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::algebra::{AlgebraElement, BlockElement, BlockShape, GroupParams, SkewElement};
use crate::distance;
use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldElem};
use crate::linalg::{self, Echelon};
use crate::poly::Poly;
use crate::wedderburn::Decomposition;

/// Default enumeration budget: number of codewords visited by exact searches.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// A left ideal of F_q G_{n,m,r}, held as a canonical reduced-echelon
/// F_q-basis of mn-vectors.
pub struct MetacyclicCode {
    params: Arc<GroupParams>,
    basis: Vec<AlgebraElement>,
    decomp_cache: OnceLock<Vec<SubmoduleCode>>,
}

impl Clone for MetacyclicCode {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(d) = self.decomp_cache.get() {
            let _ = cache.set(d.clone());
        }
        MetacyclicCode {
            params: Arc::clone(&self.params),
            basis: self.basis.clone(),
            decomp_cache: cache,
        }
    }
}

impl PartialEq for MetacyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.basis == other.basis
    }
}
impl Eq for MetacyclicCode {}

impl std::fmt::Debug for MetacyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MetacyclicCode[{},{}]",
            self.params.order(),
            self.basis.len()
        )
    }
}

pub fn elem_to_vec(e: &AlgebraElement) -> Vec<FieldElem> {
    e.coeffs().to_vec()
}

pub fn vec_to_elem(params: &Arc<GroupParams>, v: &[FieldElem]) -> AlgebraElement {
    let mut e = AlgebraElement::zero(params);
    for j in 0..params.m {
        for i in 0..params.n {
            e.set_coeff(j, i, v[j * params.n + i].clone());
        }
    }
    e
}

impl MetacyclicCode {
    /// Wraps a canonical echelon basis known (or required later) to span a
    /// left ideal.
    pub(crate) fn from_basis_rows(params: &Arc<GroupParams>, ech: Echelon) -> MetacyclicCode {
        Self::from_echelon(params, ech)
    }

    fn from_echelon(params: &Arc<GroupParams>, ech: Echelon) -> MetacyclicCode {
        let basis = ech
            .into_rows()
            .into_iter()
            .map(|v| vec_to_elem(params, &v))
            .collect();
        MetacyclicCode {
            params: Arc::clone(params),
            basis,
            decomp_cache: OnceLock::new(),
        }
    }

    pub fn zero(params: &Arc<GroupParams>) -> MetacyclicCode {
        MetacyclicCode {
            params: Arc::clone(params),
            basis: Vec::new(),
            decomp_cache: OnceLock::new(),
        }
    }

    /// Canonicalizes a spanning set into a code. The ideal property is not
    /// assumed; operations that need it verify and err with `NotAnIdeal`.
    pub fn from_span(params: &Arc<GroupParams>, span: Vec<AlgebraElement>) -> MetacyclicCode {
        let mut ech = Echelon::new(&params.field, params.order());
        for e in span {
            ech.insert(elem_to_vec(&e));
        }
        Self::from_echelon(params, ech)
    }

    /// The full algebra as a code.
    pub fn full(params: &Arc<GroupParams>) -> MetacyclicCode {
        let mut ech = Echelon::new(&params.field, params.order());
        for j in 0..params.m {
            for i in 0..params.n {
                ech.insert(elem_to_vec(&AlgebraElement::basis(params, j, i)));
            }
        }
        Self::from_echelon(params, ech)
    }

    pub fn params(&self) -> &Arc<GroupParams> {
        &self.params
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        self.basis.iter().map(elem_to_vec).collect()
    }

    pub fn contains(&self, e: &AlgebraElement) -> bool {
        let ech = self.echelon();
        ech.contains(&elem_to_vec(e))
    }

    pub fn contains_code(&self, other: &MetacyclicCode) -> bool {
        let ech = self.echelon();
        other.basis.iter().all(|b| ech.contains(&elem_to_vec(b)))
    }

    fn echelon(&self) -> Echelon {
        linalg::echelon_from(
            &self.params.field,
            self.params.order(),
            self.basis.iter().map(elem_to_vec),
        )
    }

    /// Left-ideal property: a·c and b·c stay inside, for every basis c.
    pub fn is_left_ideal(&self) -> bool {
        let ech = self.echelon();
        self.basis.iter().all(|c| {
            ech.contains(&elem_to_vec(&c.left_mul_a()))
                && ech.contains(&elem_to_vec(&c.left_mul_b()))
        })
    }

    /// Canonical basis of the dual code (F_q-linear, length mn).
    pub fn dual_basis(&self) -> Vec<Vec<FieldElem>> {
        let rows = self.basis_vectors();
        let ns = linalg::nullspace(&self.params.field, self.params.order(), &rows);
        linalg::echelon_from(&self.params.field, self.params.order(), ns).into_rows()
    }

    /// Exact minimum distance. `budget` caps the number of words the search
    /// may visit; on exhaustion the error carries the best upper bound found.
    pub fn min_distance_exact(&self, budget: u64) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        distance::min_weight(&self.params.field, &self.basis_vectors(), 1, budget)
    }
}

/// Smallest left ideal containing the generators: closure under left
/// multiplication by the group generators, with an incremental echelon basis.
pub fn ideal_from_generators(
    params: &Arc<GroupParams>,
    gens: &[AlgebraElement],
) -> Result<MetacyclicCode> {
    for g in gens {
        if g.params() != params {
            return Err(Error::ParamMismatch);
        }
    }
    let mut ech = Echelon::new(&params.field, params.order());
    let mut queue: Vec<AlgebraElement> = Vec::new();
    for g in gens {
        if ech.insert(elem_to_vec(g)) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for w in [v.left_mul_a(), v.left_mul_b()] {
            if ech.insert(elem_to_vec(&w)) {
                queue.push(w);
            }
        }
    }
    Ok(MetacyclicCode::from_echelon(params, ech))
}

// ---------------------------------------------------------------------------
// submodule tuples (the module side of the ideal correspondence)
// ---------------------------------------------------------------------------

/// A left R_i-submodule L_i of R_i^(s_i), held as a canonical F_q-reduced
/// echelon basis in flattened coordinates (position j, then h-power z, then
/// the α-power coordinate over F_q).
#[derive(Clone)]
pub struct SubmoduleCode {
    pub orbit: usize,
    shape: Arc<BlockShape>,
    rows: Vec<Vec<FieldElem>>,
    /// Union of position supports of all rows (0-based, ⊆ 0..s).
    pub support: Vec<usize>,
}

impl PartialEq for SubmoduleCode {
    fn eq(&self, other: &Self) -> bool {
        self.orbit == other.orbit && self.rows == other.rows
    }
}
impl Eq for SubmoduleCode {}

impl std::fmt::Debug for SubmoduleCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubmoduleCode[orbit {}, dim {}, support {:?}]",
            self.orbit,
            self.rows.len(),
            self.support
        )
    }
}

impl SubmoduleCode {
    /// Width of one flattened row: s·u·t F_q coordinates.
    fn row_width(shape: &BlockShape) -> usize {
        shape.s * shape.u * shape.field.ext_degree()
    }

    /// F_q-dimension of the module.
    pub fn dim_fq(&self) -> usize {
        self.rows.len()
    }

    pub fn shape(&self) -> &Arc<BlockShape> {
        &self.shape
    }

    /// Canonical flattened rows (coord map applied, α-power coordinates).
    pub fn flattened_rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows as tuples of skew elements.
    pub fn module_rows(&self, base: &Arc<FieldDesc>) -> Vec<Vec<SkewElement>> {
        self.rows
            .iter()
            .map(|r| unflatten_row(&self.shape, base, r))
            .collect()
    }

    /// Builds the canonical closure of arbitrary generating rows: the left
    /// R_i-span, generated by repeated left multiplication with α and h.
    pub fn closure(
        orbit: usize,
        shape: &Arc<BlockShape>,
        base: &Arc<FieldDesc>,
        gens: &[Vec<SkewElement>],
    ) -> SubmoduleCode {
        let width = Self::row_width(shape);
        let alpha = shape.field.gen();
        let mut ech = Echelon::new(base, width);
        let mut queue: Vec<Vec<SkewElement>> = Vec::new();
        for row in gens {
            assert_eq!(row.len(), shape.s);
            if ech.insert(flatten_row(shape, base, row)) {
                queue.push(row.clone());
            }
        }
        while let Some(row) = queue.pop() {
            let by_alpha: Vec<SkewElement> = row.iter().map(|x| x.scale_left(&alpha)).collect();
            let by_h: Vec<SkewElement> = row.iter().map(SkewElement::h_mul_left).collect();
            for next in [by_alpha, by_h] {
                if ech.insert(flatten_row(shape, base, &next)) {
                    queue.push(next);
                }
            }
        }
        Self::from_echelon(orbit, shape, ech)
    }

    fn from_echelon(orbit: usize, shape: &Arc<BlockShape>, ech: Echelon) -> SubmoduleCode {
        let t = shape.field.ext_degree();
        let rows = ech.into_rows();
        let mut support = Vec::new();
        for j in 0..shape.s {
            let lo = j * shape.u * t;
            let hi = (j + 1) * shape.u * t;
            if rows.iter().any(|r| r[lo..hi].iter().any(|c| !c.is_zero())) {
                support.push(j);
            }
        }
        SubmoduleCode {
            orbit,
            shape: Arc::clone(shape),
            rows,
            support,
        }
    }

    /// The full module R_i^(s_i).
    pub fn full(orbit: usize, shape: &Arc<BlockShape>, base: &Arc<FieldDesc>) -> SubmoduleCode {
        let width = Self::row_width(shape);
        let mut ech = Echelon::new(base, width);
        for i in 0..width {
            let mut v = vec![base.zero(); width];
            v[i] = base.one();
            ech.insert(v);
        }
        Self::from_echelon(orbit, shape, ech)
    }

    pub fn zero(orbit: usize, shape: &Arc<BlockShape>, base: &Arc<FieldDesc>) -> SubmoduleCode {
        Self::from_echelon(orbit, shape, Echelon::new(base, Self::row_width(shape)))
    }
}

/// coord map: tuple of skew elements -> flattened F_q coordinates, positions
/// left to right, stabilizer elements enumerated h^0, h^1, ..., h^(u-1).
pub fn flatten_row(
    shape: &Arc<BlockShape>,
    base: &Arc<FieldDesc>,
    row: &[SkewElement],
) -> Vec<FieldElem> {
    let t = shape.field.ext_degree();
    let mut out = Vec::with_capacity(shape.s * shape.u * t);
    for x in row {
        for z in 0..shape.u {
            for raw in shape.field.fq_coords(x.coeff(z)) {
                out.push(base.from_flat(raw));
            }
        }
    }
    out
}

pub fn unflatten_row(
    shape: &Arc<BlockShape>,
    _base: &Arc<FieldDesc>,
    flat: &[FieldElem],
) -> Vec<SkewElement> {
    let t = shape.field.ext_degree();
    let mut out = Vec::with_capacity(shape.s);
    let mut idx = 0;
    for _ in 0..shape.s {
        let mut coeffs = Vec::with_capacity(shape.u);
        for _ in 0..shape.u {
            let coords: Vec<Vec<u64>> = (0..t).map(|e| flat[idx + e].coeffs().to_vec()).collect();
            coeffs.push(shape.field.from_fq_coords(&coords));
            idx += t;
        }
        out.push(SkewElement::from_coeffs(shape, coeffs));
    }
    out
}

impl MetacyclicCode {
    /// Submodule decomposition: the tuple (L_1, ..., L_ω) of left
    /// R_i-submodules whose ideal reconstruction is this code.
    pub fn decompose(&self, dec: &Decomposition) -> Result<&[SubmoduleCode]> {
        if self.params != *dec.params() {
            return Err(Error::ParamMismatch);
        }
        if !self.is_left_ideal() {
            return Err(Error::NotAnIdeal);
        }
        if let Some(cached) = self.decomp_cache.get() {
            return Ok(cached);
        }
        let base = &self.params.field;
        let mut mods = Vec::with_capacity(dec.block_count());
        for (oi, shape) in dec.shapes().iter().enumerate() {
            let mut gens: Vec<Vec<SkewElement>> = Vec::new();
            for b in &self.basis {
                let blocks = dec.apply(b)?;
                let blk = &blocks[oi];
                for row in 0..shape.s {
                    let tuple: Vec<SkewElement> =
                        (0..shape.s).map(|c| blk.entry(row, c).clone()).collect();
                    gens.push(tuple);
                }
            }
            mods.push(SubmoduleCode::closure(oi, shape, base, &gens));
        }
        let _ = self.decomp_cache.set(mods);
        Ok(self.decomp_cache.get().unwrap())
    }
}

/// Rebuilds the left ideal τ^(-1)(⊕ I_{s_i}(L_i)) from submodule tuples.
/// Each module is re-closed before use rather than trusted.
pub fn code_from_submodules(dec: &Decomposition, mods: &[SubmoduleCode]) -> Result<MetacyclicCode> {
    let params = dec.params();
    if mods.len() != dec.block_count() {
        return Err(Error::ShapeMismatch);
    }
    for (oi, m) in mods.iter().enumerate() {
        if m.orbit != oi || m.shape != dec.shapes()[oi] {
            return Err(Error::ShapeMismatch);
        }
    }
    let base = &params.field;
    let preimages = dec.unit_preimages();
    let mut ech = Echelon::new(base, params.order());
    let mut expected_dim = 0usize;
    for (oi, m) in mods.iter().enumerate() {
        let shape = &dec.shapes()[oi];
        let t = shape.field.ext_degree();
        let offset = dec.slot_offset(oi);
        let closed = SubmoduleCode::closure(oi, shape, base, &m.module_rows(base));
        expected_dim += shape.s * closed.dim_fq();
        for row in closed.flattened_rows() {
            // the flat row holds coordinates (col c, h-power z, α-power e);
            // placing it at block row l combines the cached unit preimages
            for placement in 0..shape.s {
                let mut v = vec![base.zero(); params.order()];
                for (ci, coeff) in row.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let slot = offset + placement * shape.s * shape.u * t + ci;
                    for (x, y) in v.iter_mut().zip(preimages[slot].iter()) {
                        if !y.is_zero() {
                            x.add_mul_assign(coeff, y);
                        }
                    }
                }
                ech.insert(v);
            }
        }
    }
    assert_eq!(ech.rank(), expected_dim, "dim(C) = Σ s_i · dim L_i");
    Ok(MetacyclicCode::from_echelon(params, ech))
}

// ---------------------------------------------------------------------------
// minimum-distance bound (sorted summand distances times inner distances)
// ---------------------------------------------------------------------------

/// One row of the bound certificate.
#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub orbit: usize,
    /// Minimum distance of coord(L_i) over F_q[α_i]-symbols.
    pub d_symbol: usize,
    /// Minimum distance of coord(L_i) over expanded F_q coordinates (the
    /// alternative reading; reported, not used for the official bound).
    pub d_expanded: usize,
    /// d(V_{i_1} ∔ ... ∔ V_{i_j}) for the prefix ending at this entry.
    pub v_sum_distance: usize,
    /// d_symbol · v_sum_distance.
    pub product: usize,
}

#[derive(Debug, Clone)]
pub struct BoundCertificate {
    /// The bound: min over the certificate rows of `product`.
    pub bound: usize,
    /// Same minimum computed with the expanded-coordinate reading of d_i.
    pub bound_expanded: usize,
    pub entries: Vec<BoundEntry>,
}

impl MetacyclicCode {
    /// Lower bound on the minimum distance from the submodule decomposition:
    /// sorts the nonzero blocks by their outer distance d_i and takes
    /// min_j d_{i_j} · d(V_{i_1} ∔ ... ∔ V_{i_j}).
    pub fn min_distance_bound(&self, dec: &Decomposition, budget: u64) -> Result<BoundCertificate> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let mods = self.decompose(dec)?;
        let base = &self.params.field;
        let n = self.params.n;
        let xn1 = Poly::xn_minus_1(base, n);

        struct Item {
            orbit: usize,
            d_symbol: usize,
            d_expanded: usize,
            v_gen: Poly,
        }
        let mut items = Vec::new();
        for m in mods.iter().filter(|m| !m.is_zero()) {
            let shape = &dec.shapes()[m.orbit];
            let t = shape.field.ext_degree();
            let d_symbol = distance::min_weight(base, &m.rows, t, budget)?;
            // the expanded-coordinate reading is reported alongside; an upper
            // bound is acceptable for it when enumeration exceeds the budget
            let d_expanded =
                distance::min_weight_bounded(base, &m.rows, 1, budget).map_or(d_symbol, |(d, _)| d);
            // V_i generator: (x^n - 1) / Π_{j ∈ K_i} f_i^(r^(j-1))
            let mut denom = Poly::one(base);
            for &l in &m.support {
                let fidx = dec.orbits()[m.orbit].orbit[l];
                denom = denom.mul(&dec.factorization().factors[fidx].f);
            }
            let v_gen = xn1.exact_div(&denom);
            items.push(Item {
                orbit: m.orbit,
                d_symbol,
                d_expanded,
                v_gen,
            });
        }
        if items.is_empty() {
            return Err(Error::ZeroCode);
        }
        items.sort_by_key(|it| (it.d_symbol, it.orbit));

        let mut entries = Vec::with_capacity(items.len());
        let mut running_gen = xn1.clone(); // generator of the zero code
        let mut bound = usize::MAX;
        let mut bound_expanded = usize::MAX;
        for it in &items {
            // V-sum of cyclic codes: generator is the gcd of the generators
            running_gen = running_gen.gcd(&it.v_gen);
            let v_dist = cyclic_distance(base, n, &running_gen, budget)?;
            let product = it.d_symbol * v_dist;
            bound = bound.min(product);
            bound_expanded = bound_expanded.min(it.d_expanded * v_dist);
            entries.push(BoundEntry {
                orbit: it.orbit,
                d_symbol: it.d_symbol,
                d_expanded: it.d_expanded,
                v_sum_distance: v_dist,
                product,
            });
        }
        Ok(BoundCertificate {
            bound,
            bound_expanded,
            entries,
        })
    }
}

/// Exact minimum distance of the cyclic code of length n generated by `gen`.
pub fn cyclic_distance(base: &Arc<FieldDesc>, n: usize, gen: &Poly, budget: u64) -> Result<usize> {
    let deg = gen.deg().ok_or(Error::ZeroCode)?;
    if deg >= n {
        return Err(Error::ZeroCode);
    }
    let rows: Vec<Vec<FieldElem>> = (0..n - deg)
        .map(|shift| {
            let mut row = vec![base.zero(); n];
            for k in 0..=deg {
                row[shift + k] = gen.coeff(k);
            }
            row
        })
        .collect();
    distance::min_weight(base, &rows, 1, budget)
}

// ---------------------------------------------------------------------------
// generalized concatenated view
// ---------------------------------------------------------------------------

/// Outer-code description for one nonzero block.
#[derive(Debug, Clone)]
pub struct OuterCode {
    pub orbit: usize,
    /// Length in F_q[α_i] symbols: s_i · u_i.
    pub length: usize,
    /// Dimension of coord(L_i) over F_q[α_i].
    pub dim_symbol: usize,
    pub dim_fq: usize,
}

/// The two-step encoder data: inner cyclic code V plus the outer codes.
pub struct GCView {
    pub inner_generator: Poly,
    pub inner_dim: usize,
    pub inner_distance: usize,
    pub outer: Vec<OuterCode>,
}

impl MetacyclicCode {
    pub fn gc_view(&self, dec: &Decomposition, budget: u64) -> Result<GCView> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let mods = self.decompose(dec)?;
        let base = &self.params.field;
        let n = self.params.n;
        let xn1 = Poly::xn_minus_1(base, n);
        let mut inner_gen = xn1.clone();
        let mut outer = Vec::new();
        for m in mods.iter().filter(|m| !m.is_zero()) {
            let shape = &dec.shapes()[m.orbit];
            let t = shape.field.ext_degree();
            let mut denom = Poly::one(base);
            for &l in &m.support {
                let fidx = dec.orbits()[m.orbit].orbit[l];
                denom = denom.mul(&dec.factorization().factors[fidx].f);
            }
            inner_gen = inner_gen.gcd(&xn1.exact_div(&denom));
            assert_eq!(m.dim_fq() % t, 0, "coord(L_i) is F_q[α_i]-linear");
            outer.push(OuterCode {
                orbit: m.orbit,
                length: shape.s * shape.u,
                dim_symbol: m.dim_fq() / t,
                dim_fq: m.dim_fq(),
            });
        }
        let inner_dim = n - inner_gen.deg().unwrap_or(n);
        let inner_distance = cyclic_distance(base, n, &inner_gen, budget)?;
        Ok(GCView {
            inner_generator: inner_gen,
            inner_dim,
            inner_distance,
            outer,
        })
    }
}

/// Slot layout of the rearranged evaluation matrix: for row k and rearranged
/// column ℓ, the value P_k(γ_c) with c = (ℓ+k) mod s lives in block entry
/// (ℓ, c) at h-power (k div s + wrap) mod u, Frobenius-twisted k·zw times.
pub fn evaluation_layout(dec: &Decomposition, orbit: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let o = &dec.orbits()[orbit];
    let (s, u) = (o.s, o.u);
    let m = dec.params().m;
    (0..m)
        .map(|k| {
            (0..s)
                .map(|l| {
                    let c = (l + k) % s;
                    let wrap = usize::from(c < l);
                    let zw = k / s + wrap;
                    (l, c, zw % u)
                })
                .collect()
        })
        .collect()
}

/// The m×s rearranged matrix for one block, extracted from the block slots:
/// row k holds the evaluations of P_k at γ_((ℓ+k) mod s) per column ℓ.
pub fn rearranged_matrix(
    dec: &Decomposition,
    orbit: usize,
    block: &BlockElement,
) -> Vec<Vec<FieldElem>> {
    let evals = dec.read_evaluations(orbit, block);
    let o = &dec.orbits()[orbit];
    let m = dec.params().m;
    (0..m)
        .map(|k| (0..o.s).map(|l| evals[k][(l + k) % o.s].clone()).collect())
        .collect()
}

/// The same matrix computed directly: P_k evaluated at the conjugate roots.
pub fn rearranged_matrix_direct(
    dec: &Decomposition,
    orbit: usize,
    elem: &AlgebraElement,
) -> Vec<Vec<FieldElem>> {
    let o = &dec.orbits()[orbit];
    let kfield = &dec.shapes()[orbit].field;
    let m = dec.params().m;
    (0..m)
        .map(|k| {
            let row = elem.row(k);
            (0..o.s)
                .map(|l| row.eval_embedded(kfield, &dec.gamma(orbit)[(l + k) % o.s]))
                .collect()
        })
        .collect()
}

/// Two-step GC decoding of a codeword: the per-block rearranged matrices
/// (outer step), whose columns are outer-code words.
pub fn gc_outer_matrices(
    dec: &Decomposition,
    elem: &AlgebraElement,
) -> Result<Vec<Vec<Vec<FieldElem>>>> {
    let blocks = dec.apply(elem)?;
    Ok((0..dec.block_count())
        .map(|oi| rearranged_matrix(dec, oi, &blocks[oi]))
        .collect())
}

/// Two-step GC encoding: reassembles the codeword from the rearranged
/// matrices by inverting the layout and running the CRT reconstruction.
pub fn gc_encode(dec: &Decomposition, matrices: &[Vec<Vec<FieldElem>>]) -> Result<AlgebraElement> {
    if matrices.len() != dec.block_count() {
        return Err(Error::ShapeMismatch);
    }
    let m = dec.params().m;
    let mut blocks = Vec::with_capacity(dec.block_count());
    for (oi, mat) in matrices.iter().enumerate() {
        let s = dec.orbits()[oi].s;
        if mat.len() != m || mat.iter().any(|r| r.len() != s) {
            return Err(Error::ShapeMismatch);
        }
        // undo the column rotation: evals[k][c] = mat[k][(c - k) mod s]
        let evals: Vec<Vec<FieldElem>> = (0..m)
            .map(|k| {
                (0..s)
                    .map(|c| mat[k][(c + s - (k % s)) % s].clone())
                    .collect()
            })
            .collect();
        blocks.push(dec.blocks_from_evaluations(oi, &evals));
    }
    dec.invert(&blocks)
}

// ---------------------------------------------------------------------------
// attack-feasibility census
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttackVerdict {
    Met,
    NotMet,
    Inconclusive,
}

impl AttackVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            AttackVerdict::Met => "condition met",
            AttackVerdict::NotMet => "condition not met",
            AttackVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AttackReport {
    /// min_i { d(coord(L_i)^⊥), 2 d(V^⊥) }; None when every dual involved is
    /// the zero code (no finite threshold).
    pub threshold: Option<usize>,
    /// Number of dual codewords of weight below the threshold.
    pub count: u64,
    /// Whether the census enumerated the whole dual.
    pub exact: bool,
    pub dual_dim: usize,
    pub verdict: AttackVerdict,
}

impl MetacyclicCode {
    /// Census of low-weight words in C^⊥ against the GC-structure threshold.
    pub fn attack_feasibility(
        &self,
        dec: &Decomposition,
        budget: u64,
        seed: u64,
    ) -> Result<AttackReport> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let mods = self.decompose(dec)?;
        let base = &self.params.field;
        let mut threshold: Option<usize> = None;
        let fold = |t: usize, cur: &mut Option<usize>| {
            *cur = Some(cur.map_or(t, |c| c.min(t)));
        };

        // per-block outer duals over the F_q[α_i] alphabet
        for m in mods.iter().filter(|m| !m.is_zero()) {
            let shape = &dec.shapes()[m.orbit];
            let kfield = &shape.field;
            let t = kfield.ext_degree();
            let len = shape.s * shape.u;
            // K_i-basis of coord(L_i)
            let mut kech = Echelon::new(kfield, len);
            for row in m.flattened_rows() {
                let kv: Vec<FieldElem> = (0..len)
                    .map(|sym| {
                        let coords: Vec<Vec<u64>> =
                            (0..t).map(|e| row[sym * t + e].coeffs().to_vec()).collect();
                        kfield.from_fq_coords(&coords)
                    })
                    .collect();
                kech.insert(kv);
            }
            let dual = linalg::nullspace(kfield, len, kech.rows());
            if dual.is_empty() {
                continue; // dual of the full module is zero: no constraint
            }
            let d = distance::min_weight(kfield, &dual, 1, budget)?;
            fold(d, &mut threshold);
        }
        // inner cyclic code V and its dual
        let gc = self.gc_view(dec, budget)?;
        let n = self.params.n;
        if gc.inner_dim < n {
            let rows: Vec<Vec<FieldElem>> = (0..gc.inner_dim)
                .map(|shift| {
                    let mut row = vec![base.zero(); n];
                    for k in 0..=gc.inner_generator.deg().unwrap() {
                        row[shift + k] = gc.inner_generator.coeff(k);
                    }
                    row
                })
                .collect();
            let vdual = linalg::nullspace(base, n, &rows);
            let d = distance::min_weight(base, &vdual, 1, budget)?;
            fold(2 * d, &mut threshold);
        }

        let dual = self.dual_basis();
        let dual_dim = dual.len();
        let Some(thr) = threshold else {
            return Ok(AttackReport {
                threshold: None,
                count: 0,
                exact: true,
                dual_dim,
                verdict: AttackVerdict::NotMet,
            });
        };
        let (count, exact) = census_below(base, &dual, thr, budget, seed);
        let verdict = if count > 0 {
            AttackVerdict::Met
        } else if exact {
            AttackVerdict::NotMet
        } else {
            AttackVerdict::Inconclusive
        };
        Ok(AttackReport {
            threshold: Some(thr),
            count,
            exact,
            dual_dim,
            verdict,
        })
    }
}

/// Counts codewords of weight in (0, below): exhaustively when the span fits
/// the budget, otherwise by seeded random sampling (count is a lower bound).
fn census_below(
    field: &Arc<FieldDesc>,
    rows: &[Vec<FieldElem>],
    below: usize,
    budget: u64,
    seed: u64,
) -> (u64, bool) {
    if rows.is_empty() {
        return (0, true);
    }
    let q = field.size();
    let k = rows.len();
    let fits = {
        let mut acc: u128 = 1;
        let mut ok = true;
        for _ in 0..k {
            acc *= q as u128;
            if acc > budget as u128 {
                ok = false;
                break;
            }
        }
        ok
    };
    if fits {
        (census_exhaustive(field, rows, below), true)
    } else {
        (census_sampled(field, rows, below, budget, seed), false)
    }
}

fn census_exhaustive(field: &Arc<FieldDesc>, rows: &[Vec<FieldElem>], below: usize) -> u64 {
    let p = field.characteristic();
    let deg = field.degree();
    let fp_rows: Vec<Vec<u64>> = {
        let mut out = Vec::new();
        for row in rows {
            for e in 0..deg {
                let mult = field.element_at(p.pow(e as u32));
                let mut raw = Vec::with_capacity(row.len() * deg);
                for x in row {
                    raw.extend_from_slice((x * &mult).coeffs());
                }
                out.push(raw);
            }
        }
        out
    };
    let kk = fp_rows.len();
    let len = fp_rows[0].len();
    let mut digits = vec![0u64; kk];
    let mut current = vec![0u64; len];
    let mut count = 0u64;
    loop {
        let mut pos = 0;
        loop {
            if pos == kk {
                return count;
            }
            for (c, r) in current.iter_mut().zip(&fp_rows[pos]) {
                *c = (*c + *r) % p;
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        let w = current
            .chunks(deg)
            .filter(|c| c.iter().any(|&x| x != 0))
            .count();
        if w > 0 && w < below {
            count += 1;
        }
    }
}

/// Information-set sampling: repeatedly row-reduce on a random column order
/// and enumerate the weight-1 and weight-2 message patterns of the resulting
/// quasi-systematic basis. Distinct low-weight words found are a lower bound
/// on the census.
fn census_sampled(
    field: &Arc<FieldDesc>,
    rows: &[Vec<FieldElem>],
    below: usize,
    budget: u64,
    seed: u64,
) -> u64 {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = field.size();
    let ncols = rows[0].len();
    let mut seen = std::collections::HashSet::new();
    let mut work: u64 = 0;
    let record = |v: &[FieldElem], seen: &mut std::collections::HashSet<Vec<u64>>| {
        let w = v.iter().filter(|x| !x.is_zero()).count();
        if w > 0 && w < below {
            seen.insert(v.iter().flat_map(|x| x.coeffs().to_vec()).collect());
        }
    };
    while work < budget {
        let mut order: Vec<usize> = (0..ncols).collect();
        order.shuffle(&mut rng);
        let permuted = rows
            .iter()
            .map(|r| order.iter().map(|&c| r[c].clone()).collect());
        let ech = linalg::echelon_from(field, ncols, permuted);
        let basis: Vec<Vec<FieldElem>> = ech
            .rows()
            .iter()
            .map(|r| {
                let mut v = vec![field.zero(); ncols];
                for (j, &c) in order.iter().enumerate() {
                    v[c] = r[j].clone();
                }
                v
            })
            .collect();
        for (i, bi) in basis.iter().enumerate() {
            for ci in 1..q {
                let ce = field.element_at(ci);
                let vi: Vec<FieldElem> = bi.iter().map(|x| x * &ce).collect();
                record(&vi, &mut seen);
                work += 1;
                for bj in basis.iter().skip(i + 1) {
                    for cj in 1..q {
                        let cj = field.element_at(cj);
                        let v: Vec<FieldElem> = vi
                            .iter()
                            .zip(bj.iter())
                            .map(|(x, y)| x + &(&cj * y))
                            .collect();
                        record(&v, &mut seen);
                        work += 1;
                        if work >= budget {
                            return seen.len() as u64;
                        }
                    }
                }
            }
        }
    }
    seen.len() as u64
}

// ---------------------------------------------------------------------------
// random samplers (tests, search)
// ---------------------------------------------------------------------------

/// Random element of the group algebra.
pub fn random_element<R: Rng>(params: &Arc<GroupParams>, rng: &mut R) -> AlgebraElement {
    let mut e = AlgebraElement::zero(params);
    let q = params.field.size();
    for j in 0..params.m {
        for i in 0..params.n {
            e.set_coeff(j, i, params.field.element_at(rng.random_range(0..q)));
        }
    }
    e
}

/// Random submodule of R_i^(s_i): random row count, random rows, closure.
pub fn random_submodule<R: Rng>(dec: &Decomposition, orbit: usize, rng: &mut R) -> SubmoduleCode {
    let shape = &dec.shapes()[orbit];
    let base = &dec.params().field;
    let kfield = &shape.field;
    let nrows = rng.random_range(0..=shape.s);
    let gens: Vec<Vec<SkewElement>> = (0..nrows)
        .map(|_| {
            (0..shape.s)
                .map(|_| {
                    let coeffs = (0..shape.u)
                        .map(|_| kfield.element_at(rng.random_range(0..kfield.size())))
                        .collect();
                    SkewElement::from_coeffs(shape, coeffs)
                })
                .collect()
        })
        .collect();
    SubmoduleCode::closure(orbit, shape, base, &gens)
}

/// Random left ideal, sampled through the submodule correspondence so that
/// non-principal ideals are reachable.
pub fn random_ideal<R: Rng>(dec: &Decomposition, rng: &mut R) -> MetacyclicCode {
    let mods: Vec<SubmoduleCode> = (0..dec.block_count())
        .map(|oi| random_submodule(dec, oi, rng))
        .collect();
    code_from_submodules(dec, &mods).expect("sampled tuple matches the decomposition")
}
