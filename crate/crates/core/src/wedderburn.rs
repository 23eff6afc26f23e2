//! The explicit isomorphism τ = ⊕ τ_i from F_q G_{n,m,r} onto the direct sum
//! of block algebras M_{s_i}(F_q[α_i] ∗_θ B_i), its inverse (by reading off
//! root evaluations and Chinese-remainder reconstruction), the σ realization
//! of skew group algebras as matrix algebras over the fixed field, and the
//! summand classification.

use std::sync::Arc;

use crate::algebra::{AlgebraElement, BlockElement, BlockShape, GroupParams, SkewElement};
use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldElem};
use crate::linalg;
use crate::poly::Poly;
use crate::polyfact::{self, Factorization, OrbitData, SummandKind};

/// The decomposition of one group algebra: orbit data, block shapes, the
/// images of the generators, and the precomputed reconstruction data.
pub struct Decomposition {
    params: Arc<GroupParams>,
    fact: Factorization,
    orbits: Vec<OrbitData>,
    shapes: Vec<Arc<BlockShape>>,
    /// gamma[i][l] = α_i^(r^l) in K_i, l < s_i.
    gamma: Vec<Vec<FieldElem>>,
    /// (τ_i(a), τ_i(b)) per orbit.
    gen_images: Vec<(BlockElement, BlockElement)>,
    /// CRT combinator per (orbit, conjugate): ≡ 1 mod f_i^(r^l), ≡ 0 mod the rest.
    combinators: Vec<Vec<Poly>>,
    /// Per (orbit, conjugate): columns of the inverse of the γ-power basis
    /// matrix, mapping F_q coordinates of a K_i element onto the coefficients
    /// of the unique polynomial of degree < deg f_i taking that value at γ_l.
    gamma_solver: Vec<Vec<Vec<Vec<FieldElem>>>>,
    /// τ images of the standard basis b^j a^i (built on first use), plus the
    /// per-orbit embedding table of the q base-field elements.
    unit_images: std::sync::OnceLock<(Vec<Vec<BlockElement>>, Vec<Vec<FieldElem>>)>,
    /// τ^(-1) of the block coordinate unit vectors, as mn-vectors over F_q.
    unit_preimages: std::sync::OnceLock<Vec<Vec<FieldElem>>>,
}

impl Decomposition {
    pub fn build(params: &Arc<GroupParams>) -> Result<Decomposition> {
        let fact = polyfact::factor_xn_minus_1(&params.field, params.n)?;
        let orbits = polyfact::orbits(&fact, params.m, params.r)?;

        let mut shapes = Vec::with_capacity(orbits.len());
        let mut gamma = Vec::with_capacity(orbits.len());
        let mut gen_images = Vec::with_capacity(orbits.len());
        for o in &orbits {
            let kfield = Arc::clone(&fact.factors[o.rep()].field);
            let alpha = fact.factors[o.rep()].alpha.clone();
            let shape = Arc::new(BlockShape {
                s: o.s,
                u: o.u,
                theta_exponent: o.theta_exponent,
                field: Arc::clone(&kfield),
            });
            let gammas: Vec<FieldElem> = (0..o.s)
                .map(|l| alpha.pow(params.r_pow(l) as u128))
                .collect();

            // τ_i(a) = diag(α, α^r, ..., α^(r^(s-1)))
            let mut ta = BlockElement::zero(&shape);
            for (l, g) in gammas.iter().enumerate() {
                ta.set_entry(l, l, SkewElement::scalar(&shape, g.clone()));
            }
            // τ_i(b): shift matrix with h in the lower-left corner
            let mut tb = BlockElement::zero(&shape);
            if o.s == 1 {
                tb.set_entry(0, 0, SkewElement::h(&shape));
            } else {
                for l in 0..o.s - 1 {
                    tb.set_entry(l, l + 1, SkewElement::one(&shape));
                }
                tb.set_entry(o.s - 1, 0, SkewElement::h(&shape));
            }

            // defining relations hold in every block
            let (n, m, r) = (params.n, params.m, params.r);
            assert!(ta.pow(n)?.is_identity(), "τ(a)^n ≠ 1 in orbit {}", o.index);
            assert!(tb.pow(m)?.is_identity(), "τ(b)^m ≠ 1 in orbit {}", o.index);
            assert_eq!(
                tb.mul(&ta)?,
                ta.pow(r)?.mul(&tb)?,
                "τ(b)τ(a) ≠ τ(a)^r τ(b) in orbit {}",
                o.index
            );

            shapes.push(shape);
            gamma.push(gammas);
            gen_images.push((ta, tb));
        }

        // CRT data: per conjugate factor, the combinator and the γ-basis solver
        let xn1 = Poly::xn_minus_1(&params.field, params.n);
        let mut combinators = Vec::with_capacity(orbits.len());
        let mut gamma_solver = Vec::with_capacity(orbits.len());
        for (oi, o) in orbits.iter().enumerate() {
            let kfield = &fact.factors[o.rep()].field;
            let deg = kfield.ext_degree();
            let mut combs = Vec::with_capacity(o.s);
            let mut solvers = Vec::with_capacity(o.s);
            for (l, &fidx) in o.orbit.iter().enumerate() {
                let g = &fact.factors[fidx].f;
                let cofactor = xn1.exact_div(g);
                let (one, inv, _) = cofactor.ext_gcd(g);
                assert_eq!(one.deg(), Some(0), "factors of x^n-1 are coprime");
                let comb = inv.mul(&cofactor);
                debug_assert!(comb.rem(g).sub(&Poly::one(&params.field)).is_zero());
                combs.push(comb);

                // columns: F_q coordinates of γ_l^k, k < deg
                let cols: Vec<Vec<FieldElem>> = (0..deg)
                    .map(|k| {
                        let pw = gamma[oi][l].pow(k as u128);
                        fq_coord_elems(&params.field, kfield, &pw)
                    })
                    .collect();
                let inv_cols = linalg::invert_columns(&params.field, &cols)
                    .expect("γ-powers form an F_q basis");
                solvers.push(inv_cols);
            }
            combinators.push(combs);
            gamma_solver.push(solvers);
        }

        let dec = Decomposition {
            params: Arc::clone(params),
            fact,
            orbits,
            shapes,
            gamma,
            gen_images,
            combinators,
            gamma_solver,
            unit_images: std::sync::OnceLock::new(),
            unit_preimages: std::sync::OnceLock::new(),
        };
        debug_assert_eq!(dec.dimension_sum(), params.order());
        Ok(dec)
    }

    pub fn params(&self) -> &Arc<GroupParams> {
        &self.params
    }

    pub fn factorization(&self) -> &Factorization {
        &self.fact
    }

    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    pub fn shapes(&self) -> &[Arc<BlockShape>] {
        &self.shapes
    }

    pub fn block_count(&self) -> usize {
        self.orbits.len()
    }

    /// γ_l = α_i^(r^l) for orbit i.
    pub fn gamma(&self, orbit: usize) -> &[FieldElem] {
        &self.gamma[orbit]
    }

    pub fn gen_images(&self, orbit: usize) -> &(BlockElement, BlockElement) {
        &self.gen_images[orbit]
    }

    /// Σ_i s_i^2 u_i deg(f_i); equals nm.
    pub fn dimension_sum(&self) -> usize {
        self.orbits
            .iter()
            .map(|o| {
                let deg = self.fact.factors[o.rep()].f.deg().unwrap();
                o.s * o.s * o.u * deg
            })
            .sum()
    }

    /// The all-zero block tuple.
    pub fn zero_blocks(&self) -> Vec<BlockElement> {
        self.shapes.iter().map(BlockElement::zero).collect()
    }

    /// τ(P): one block per orbit. Linear in P, so images of the standard
    /// basis (built once by generator substitution) are combined.
    pub fn apply(&self, p: &AlgebraElement) -> Result<Vec<BlockElement>> {
        if p.params() != &self.params {
            return Err(Error::ParamMismatch);
        }
        let (units, embed_tables) = self.unit_images.get_or_init(|| {
            let (n, m) = (self.params.n, self.params.m);
            let images = (0..m * n)
                .map(|idx| {
                    let unit = AlgebraElement::basis(&self.params, idx / n, idx % n);
                    self.apply_substitution(&unit).expect("params match")
                })
                .collect();
            let q = self.params.field.size();
            let tables = self
                .shapes
                .iter()
                .map(|shape| {
                    (0..q)
                        .map(|ci| shape.field.embed(&self.params.field.element_at(ci)))
                        .collect()
                })
                .collect();
            (images, tables)
        });
        let mut out = self.zero_blocks();
        let base = &self.params.field;
        for (idx, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ci = base.index_of(c);
            for (oi, blk) in out.iter_mut().enumerate() {
                blk.add_scaled_assign(&units[idx][oi], &embed_tables[oi][ci as usize]);
            }
        }
        Ok(out)
    }

    /// τ(P) computed directly by substituting the generator images into the
    /// canonical form Σ_j b^j P_j(a) with block arithmetic.
    pub fn apply_substitution(&self, p: &AlgebraElement) -> Result<Vec<BlockElement>> {
        if p.params() != &self.params {
            return Err(Error::ParamMismatch);
        }
        let (n, m) = (self.params.n, self.params.m);
        let mut out = Vec::with_capacity(self.orbits.len());
        for (oi, shape) in self.shapes.iter().enumerate() {
            let (ta, tb) = &self.gen_images[oi];
            let kfield = &shape.field;
            let mut img = BlockElement::zero(shape);
            let mut bpow = BlockElement::identity(shape);
            for j in 0..m {
                let row_zero = (0..n).all(|i| p.coeff(j, i).is_zero());
                if !row_zero {
                    // P_j(τ(a)) by Horner; stays diagonal throughout
                    let mut pj = BlockElement::zero(shape);
                    for k in (0..n).rev() {
                        pj = pj.mul(ta)?;
                        let c = p.coeff(j, k);
                        if !c.is_zero() {
                            let lam = kfield.embed(c);
                            for l in 0..shape.s {
                                let mut d = pj.entry(l, l).clone();
                                d = d.add(&SkewElement::scalar(shape, lam.clone()));
                                pj.set_entry(l, l, d);
                            }
                        }
                    }
                    img = img.add(&bpow.mul(&pj)?);
                }
                if j + 1 < m {
                    bpow = bpow.mul(tb)?;
                }
            }
            out.push(img);
        }
        Ok(out)
    }

    /// Evaluations P_j(γ_c) for all j < m, c < s, read structurally off one
    /// block: the entry/coefficient layout of τ_i with the twist removed.
    pub fn read_evaluations(&self, orbit: usize, block: &BlockElement) -> Vec<Vec<FieldElem>> {
        let o = &self.orbits[orbit];
        let (s, u, k) = (o.s, o.u, o.theta_exponent);
        let m = self.params.m;
        let t = self.shapes[orbit].field.ext_degree();
        let mut evals = vec![vec![self.shapes[orbit].field.zero(); s]; m];
        for j in 0..m {
            let (z, w) = (j / s, j % s);
            for c in 0..s {
                let l = (c + s - w) % s;
                let wrap = usize::from(c < l);
                let zw = z + wrap;
                let raw = block.entry(l, c).coeff(zw % u);
                // slot holds P_j(γ_c)^(q^(k·zw)); undo the twist
                let e = (t - (k * zw) % t) % t;
                evals[j][c] = raw.frobenius(e);
            }
        }
        evals
    }

    /// Writes evaluations into block-slot form: the exact inverse of
    /// [`Self::read_evaluations`].
    pub fn blocks_from_evaluations(&self, orbit: usize, evals: &[Vec<FieldElem>]) -> BlockElement {
        let o = &self.orbits[orbit];
        let (s, u, k) = (o.s, o.u, o.theta_exponent);
        let m = self.params.m;
        let shape = &self.shapes[orbit];
        let mut entries: Vec<Vec<FieldElem>> = vec![vec![shape.field.zero(); u]; s * s];
        for j in 0..m {
            let (z, w) = (j / s, j % s);
            for c in 0..s {
                let l = (c + s - w) % s;
                let wrap = usize::from(c < l);
                let zw = z + wrap;
                entries[l * s + c][zw % u] = evals[j][c].frobenius(k * zw);
            }
        }
        let skew = entries
            .into_iter()
            .map(|coeffs| SkewElement::from_coeffs(shape, coeffs))
            .collect();
        BlockElement::from_entries(shape, skew)
    }

    /// τ^(-1): recovers the unique preimage by Chinese-remainder
    /// reconstruction of each P_j from its values at the conjugate roots.
    pub fn invert(&self, blocks: &[BlockElement]) -> Result<AlgebraElement> {
        if blocks.len() != self.orbits.len() {
            return Err(Error::ShapeMismatch);
        }
        for (b, shape) in blocks.iter().zip(self.shapes.iter()) {
            if b.shape() != shape {
                return Err(Error::ShapeMismatch);
            }
        }
        let (n, m) = (self.params.n, self.params.m);
        let base = &self.params.field;
        let xn1 = Poly::xn_minus_1(base, n);
        let mut rows = Vec::with_capacity(m);
        let all_evals: Vec<Vec<Vec<FieldElem>>> = (0..self.orbits.len())
            .map(|oi| self.read_evaluations(oi, &blocks[oi]))
            .collect();
        for j in 0..m {
            let mut pj = Poly::zero(base);
            for (oi, o) in self.orbits.iter().enumerate() {
                let kfield = &self.shapes[oi].field;
                for l in 0..o.s {
                    let val = &all_evals[oi][j][l];
                    if val.is_zero() {
                        continue;
                    }
                    // residue mod f_i^(r^l): value coordinates through the
                    // γ-power basis solver
                    let coords = fq_coord_elems(base, kfield, val);
                    let res_coeffs = linalg::mat_vec(base, &self.gamma_solver[oi][l], &coords);
                    let res = Poly::from_coeffs(base, res_coeffs);
                    pj = pj.add(&res.mul(&self.combinators[oi][l]));
                }
            }
            rows.push(pj.rem(&xn1));
        }
        Ok(AlgebraElement::from_rows(&self.params, &rows))
    }

    /// Width of one orbit's flat block-coordinate segment: s²·u·t.
    pub fn slot_width(&self, orbit: usize) -> usize {
        let o = &self.orbits[orbit];
        o.s * o.s * o.u * self.shapes[orbit].field.ext_degree()
    }

    /// Offset of an orbit's segment in the global block coordinates.
    pub fn slot_offset(&self, orbit: usize) -> usize {
        (0..orbit).map(|i| self.slot_width(i)).sum()
    }

    /// τ^(-1) of the block coordinate unit vectors, as mn-vectors over F_q.
    /// The slot order inside orbit i is (row l, col c, h-power z, α-power e).
    pub fn unit_preimages(&self) -> &[Vec<FieldElem>] {
        self.unit_preimages.get_or_init(|| {
            let mut out = Vec::with_capacity(self.params.order());
            for (oi, shape) in self.shapes.iter().enumerate() {
                let t = shape.field.ext_degree();
                let alpha = shape.field.gen();
                for l in 0..shape.s {
                    for c in 0..shape.s {
                        for z in 0..shape.u {
                            for e in 0..t {
                                let mut blocks = self.zero_blocks();
                                let mut coeffs = vec![shape.field.zero(); shape.u];
                                coeffs[z] = alpha.pow(e as u128);
                                blocks[oi].set_entry(l, c, SkewElement::from_coeffs(shape, coeffs));
                                let pre = self.invert(&blocks).expect("unit block shape");
                                out.push(pre.coeffs().to_vec());
                            }
                        }
                    }
                }
            }
            out
        })
    }

    /// The central idempotent ε_i = τ^(-1)(identity in block i, zero elsewhere).
    pub fn idempotent(&self, orbit: usize) -> Result<AlgebraElement> {
        let mut blocks = self.zero_blocks();
        blocks[orbit] = BlockElement::identity(&self.shapes[orbit]);
        self.invert(&blocks)
    }

    /// Summand classification: the four-way shape split, the σ refinement
    /// where θ is injective, and the three-way refinement when m is prime.
    pub fn classify(&self) -> Vec<SummandReport> {
        let m = self.params.m;
        let m_prime = arith::is_prime(m as u64);
        let r = self.params.r;
        self.orbits
            .iter()
            .map(|o| {
                let fd = &self.fact.factors[o.rep()];
                let t = fd.field.ext_degree();
                let q = self.params.field.size();
                // injectivity of θ on B_i: order of q^k mod d equals u
                let theta_order = if o.d <= 1 {
                    1
                } else {
                    arith::mult_order(
                        arith::mod_pow(q, o.theta_exponent as u64, o.d as u64),
                        o.d as u64,
                    ) as usize
                };
                let refined = if theta_order == o.u {
                    Some(MatrixShape {
                        size: o.s * o.u,
                        field_order: q.pow((t / o.u) as u32),
                    })
                } else {
                    None
                };
                // mixed split of B_i = H1 × H2 with θ injective on H1 and
                // trivial on H2, available when the two orders are coprime
                let mixed = if refined.is_none() && theta_order > 1 {
                    let h2 = o.u / theta_order;
                    (arith::gcd(theta_order as u64, h2 as u64) == 1).then_some((theta_order, h2))
                } else {
                    None
                };
                let prime_m_class = if m_prime {
                    let alpha = &fd.alpha;
                    let alpha_r = alpha.pow(r as u128);
                    Some(if *alpha == alpha_r {
                        PrimeMClass::RootFixed
                    } else if o.s == 1 {
                        PrimeMClass::SelfReciprocal
                    } else {
                        PrimeMClass::Moved
                    })
                } else {
                    None
                };
                SummandReport {
                    orbit: o.index,
                    kind: o.kind,
                    s: o.s,
                    u: o.u,
                    theta_exponent: o.theta_exponent,
                    factor_degree: t,
                    refined,
                    mixed_split: mixed,
                    prime_m_class,
                }
            })
            .collect()
    }

    /// σ for one orbit: realizes F_q[α_i] ∗_θ B_i as u×u matrices over the
    /// fixed field of θ.
    pub fn sigma_matrix(&self, orbit: usize) -> Result<SigmaMap> {
        SigmaMap::build(self, orbit)
    }
}

/// Helper: F_q coordinates of a K element, as base-field elements.
fn fq_coord_elems(base: &Arc<FieldDesc>, kfield: &Arc<FieldDesc>, v: &FieldElem) -> Vec<FieldElem> {
    kfield
        .fq_coords(v)
        .into_iter()
        .map(|raw| base.from_flat(raw))
        .collect()
}

/// M_size(F_field_order), the shape of a σ-refined summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixShape {
    pub size: usize,
    pub field_order: u64,
}

/// Three-way classification of a summand when m is prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeMClass {
    /// α = α^r: a commutative group-algebra summand.
    RootFixed,
    /// α ≠ α^r but f = f^(r): a skew summand that σ turns into M_m over the
    /// fixed field.
    SelfReciprocal,
    /// f ≠ f^(r): a full matrix-algebra summand M_m(F_q[α]).
    Moved,
}

/// Classification record for one summand.
#[derive(Debug, Clone)]
pub struct SummandReport {
    pub orbit: usize,
    pub kind: SummandKind,
    pub s: usize,
    pub u: usize,
    pub theta_exponent: usize,
    pub factor_degree: usize,
    /// M_{s·u}(F_{q^(t/u)}) when θ is injective on the stabilizer.
    pub refined: Option<MatrixShape>,
    /// (|H1|, |H2|) when B_i splits as H1 × H2 with θ injective on H1 only.
    pub mixed_split: Option<(usize, usize)>,
    /// Classification used by the prime-m refinement; None when m is not prime.
    pub prime_m_class: Option<PrimeMClass>,
}

impl SummandReport {
    /// Human-readable shape, e.g. "M_3(F_2)" or "F_4 ∗ C_3".
    pub fn shape_text(&self, q: u64) -> String {
        if let Some(ms) = &self.refined {
            if ms.size == 1 {
                return format!("F_{}", ms.field_order);
            }
            return format!("M_{}(F_{})", ms.size, ms.field_order);
        }
        let qt = q.pow(self.factor_degree as u32);
        let inner = match self.kind {
            SummandKind::GroupAlgebra | SummandKind::MatrixGroupAlgebra => {
                format!("F_{}C_{}", qt, self.u)
            }
            SummandKind::SkewAlgebra | SummandKind::MatrixSkewAlgebra => {
                format!("F_{} *_θ C_{}", qt, self.u)
            }
        };
        if self.s == 1 {
            inner
        } else {
            format!("M_{}({})", self.s, inner)
        }
    }
}

/// The σ realization for one orbit: F_q[α] ∗_θ B_i ≅ M_u(k), k the fixed
/// field of θ, in a greedily chosen α-power basis of F_q[α] over k.
pub struct SigmaMap {
    shape: Arc<BlockShape>,
    /// k-basis of K (α-powers), length u.
    basis: Vec<FieldElem>,
    /// F_p-basis of the fixed field k inside K.
    k_basis: Vec<FieldElem>,
    /// Inverted solver columns over F_p: expresses a K element in the basis
    /// {κ_a · v_j}; unknown index = j * k_dim + a.
    solver: Vec<Vec<FieldElem>>,
    /// |k| and its degree over F_q.
    pub fixed_field_order: u64,
    pub fixed_degree_over_fq: usize,
}

impl SigmaMap {
    fn build(dec: &Decomposition, orbit: usize) -> Result<SigmaMap> {
        let o = &dec.orbits[orbit];
        let shape = Arc::clone(&dec.shapes[orbit]);
        let kfield = &shape.field;
        let t = kfield.ext_degree();
        let q = dec.params.field.size();
        let u = o.u;
        let theta_order = if o.d <= 1 {
            1
        } else {
            arith::mult_order(
                arith::mod_pow(q, o.theta_exponent as u64, o.d as u64),
                o.d as u64,
            ) as usize
        };
        if theta_order != u {
            return Err(Error::ThetaNotInjective {
                got: theta_order,
                need: u,
            });
        }
        // fixed field k = { x : x^(q^k_exp) = x }, an F_q-subfield of degree t/u
        let fixed_deg = t / u;
        let k_basis = fixed_field_basis(kfield, o.theta_exponent, fixed_deg * basedeg(kfield));
        let fixed_field_order = q.pow(fixed_deg as u32);

        // greedy α-power basis of K over k
        let alpha = kfield.gen();
        let mut basis: Vec<FieldElem> = Vec::new();
        let mut span = crate::linalg::Echelon::new(&fp_field(kfield), kfield.degree());
        let mut pw = kfield.one();
        for _ in 0..kfield.size() {
            let candidate = pw.clone();
            let flat = |e: &FieldElem| -> Vec<FieldElem> {
                let fp = fp_field(kfield);
                e.coeffs().iter().map(|&c| fp.from_int(c as i64)).collect()
            };
            if !span.contains(&flat(&candidate)) {
                // extend the k-span by candidate
                for kb in &k_basis {
                    span.insert(flat(&(kb * &candidate)));
                }
                basis.push(candidate);
                if basis.len() == u {
                    break;
                }
            }
            pw = &pw * &alpha;
        }
        assert_eq!(basis.len(), u, "α-powers span K over k");

        // solver: columns κ_a · v_j as F_p vectors, inverted
        let fp = fp_field(kfield);
        let mut cols = Vec::with_capacity(u * k_basis.len());
        for v in &basis {
            for kb in &k_basis {
                let prod = kb * v;
                cols.push(
                    prod.coeffs()
                        .iter()
                        .map(|&c| fp.from_int(c as i64))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let solver = linalg::invert_columns(&fp, &cols).expect("basis products span K over F_p");

        let map = SigmaMap {
            shape,
            basis,
            k_basis,
            solver,
            fixed_field_order,
            fixed_degree_over_fq: fixed_deg,
        };

        // verification: multiplicative on a deterministic sample, injective
        // on the natural basis
        map.verify(dec, orbit)?;
        Ok(map)
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn matrix_size(&self) -> usize {
        self.shape.u
    }

    /// Coordinates of w in the k-basis {v_j}: returns u elements of k ⊂ K.
    fn k_coords(&self, w: &FieldElem) -> Vec<FieldElem> {
        let kfield = &self.shape.field;
        let fp = fp_field(kfield);
        let vec: Vec<FieldElem> = w.coeffs().iter().map(|&c| fp.from_int(c as i64)).collect();
        let x = linalg::mat_vec(&fp, &self.solver, &vec);
        let kd = self.k_basis.len();
        (0..self.shape.u)
            .map(|j| {
                let mut acc = kfield.zero();
                for (a, kb) in self.k_basis.iter().enumerate() {
                    let c = x[j * kd + a].coeffs()[0];
                    if c != 0 {
                        acc = &acc + &(kb * &kfield.from_int(c as i64));
                    }
                }
                acc
            })
            .collect()
    }

    /// σ(x) as a u×u matrix over k (entries are K elements lying in k),
    /// row-major: column j holds the coordinates of x acting on basis v_j.
    pub fn apply(&self, x: &SkewElement) -> Result<Vec<FieldElem>> {
        if x.shape() != &self.shape {
            return Err(Error::TwistMismatch);
        }
        let u = self.shape.u;
        let k_exp = self.shape.theta_exponent;
        let mut out = vec![self.shape.field.zero(); u * u];
        for (j, v) in self.basis.iter().enumerate() {
            // image of v_j under Σ_z λ_z θ^z
            let mut img = self.shape.field.zero();
            for (z, lam) in x.coeffs().iter().enumerate() {
                if lam.is_zero() {
                    continue;
                }
                img = &img + &(lam * &v.frobenius(k_exp * z));
            }
            for (i, c) in self.k_coords(&img).into_iter().enumerate() {
                out[i * u + j] = c;
            }
        }
        Ok(out)
    }

    /// σ̃(α): the image of the scalar α.
    pub fn image_alpha(&self) -> Vec<FieldElem> {
        let alpha = self.shape.field.gen();
        self.apply(&SkewElement::scalar(&self.shape, alpha))
            .unwrap()
    }

    /// σ̃(h): the image of the stabilizer generator.
    pub fn image_h(&self) -> Vec<FieldElem> {
        self.apply(&SkewElement::h(&self.shape)).unwrap()
    }

    fn verify(&self, _dec: &Decomposition, _orbit: usize) -> Result<()> {
        let shape = &self.shape;
        let kfield = &shape.field;
        let u = shape.u;
        // homomorphism on a deterministic sample of pairs
        let sample: Vec<SkewElement> = (0..4u64)
            .map(|i| {
                let coeffs = (0..u)
                    .map(|z| kfield.element_at((i * 7 + 3 * z as u64 + 1) % kfield.size()))
                    .collect();
                SkewElement::from_coeffs(shape, coeffs)
            })
            .collect();
        for x in &sample {
            for y in &sample {
                let lhs = self.apply(&x.mul(y)?)?;
                let rhs = mat_mul(kfield, u, &self.apply(x)?, &self.apply(y)?);
                if lhs != rhs {
                    panic!("σ is not multiplicative");
                }
                let sum = self.apply(&x.add(y))?;
                let sum2: Vec<FieldElem> = self
                    .apply(x)?
                    .iter()
                    .zip(self.apply(y)?.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                if sum != sum2 {
                    panic!("σ is not additive");
                }
            }
        }
        // injectivity: images of the natural basis {α^e h^z} are F_p-independent
        let fp = fp_field(kfield);
        let mut span = linalg::Echelon::new(&fp, u * u * kfield.degree());
        let alpha = kfield.gen();
        let t = kfield.ext_degree();
        for e in 0..t {
            for z in 0..u {
                let mut coeffs = vec![kfield.zero(); u];
                coeffs[z] = alpha.pow(e as u128);
                let x = SkewElement::from_coeffs(shape, coeffs);
                let img = self.apply(&x)?;
                let flat: Vec<FieldElem> = img
                    .iter()
                    .flat_map(|m| m.coeffs().iter().map(|&c| fp.from_int(c as i64)))
                    .collect();
                assert!(span.insert(flat), "σ image of basis element is dependent");
            }
        }
        Ok(())
    }
}

/// F_p as a field object for flattened-coordinate linear algebra.
fn fp_field(k: &Arc<FieldDesc>) -> Arc<FieldDesc> {
    FieldDesc::prime(k.characteristic()).unwrap()
}

fn basedeg(k: &Arc<FieldDesc>) -> usize {
    k.degree() / k.ext_degree()
}

/// F_p-basis of the subfield fixed by x ↦ x^(q^k_exp): kernel of Frob - id.
fn fixed_field_basis(kfield: &Arc<FieldDesc>, k_exp: usize, expect_dim: usize) -> Vec<FieldElem> {
    let fp = fp_field(kfield);
    let d = kfield.degree();
    // rows of (M - I) where M is the matrix of Frobenius on the flat basis
    let mut rows = Vec::with_capacity(d);
    let cols: Vec<FieldElem> = (0..d)
        .map(|i| {
            let mut v = vec![0u64; d];
            v[i] = 1;
            kfield.from_flat(v).frobenius(k_exp)
        })
        .collect();
    for i in 0..d {
        let row: Vec<FieldElem> = (0..d)
            .map(|j| {
                let mut v = fp.from_int(cols[j].coeffs()[i] as i64);
                if i == j {
                    v = &v - &fp.one();
                }
                v
            })
            .collect();
        rows.push(row);
    }
    let kernel = linalg::nullspace(&fp, d, &rows);
    assert_eq!(kernel.len(), expect_dim, "fixed field has expected size");
    kernel
        .into_iter()
        .map(|v| {
            let raw: Vec<u64> = v.iter().map(|c| c.coeffs()[0]).collect();
            kfield.from_flat(raw)
        })
        .collect()
}

/// Plain matrix product over a field, row-major square matrices.
pub fn mat_mul(
    field: &Arc<FieldDesc>,
    n: usize,
    a: &[FieldElem],
    b: &[FieldElem],
) -> Vec<FieldElem> {
    let mut out = vec![field.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = &out[i * n + j] + &(&a[i * n + k] * &b[k * n + j]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomp(n: usize, m: usize, r: usize, q: u64) -> Decomposition {
        let f = FieldDesc::prime_power(q).unwrap();
        let params = GroupParams::new(&f, n, m, r).unwrap();
        Decomposition::build(&params).unwrap()
    }

    fn random_elem(p: &Arc<GroupParams>, seed: &mut u64) -> AlgebraElement {
        let mut e = AlgebraElement::zero(p);
        for j in 0..p.m {
            for i in 0..p.n {
                *seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let idx = (*seed >> 33) % p.field.size();
                e.set_coeff(j, i, p.field.element_at(idx));
            }
        }
        e
    }

    #[test]
    fn dimension_identity() {
        for (n, m, r, q) in [
            (7usize, 3usize, 2usize, 2u64),
            (7, 6, 3, 2),
            (5, 2, 4, 3),
            (9, 6, 2, 2),
            (15, 4, 2, 2),
            (13, 6, 4, 3),
        ] {
            let d = decomp(n, m, r, q);
            assert_eq!(d.dimension_sum(), n * m);
        }
    }

    #[test]
    fn worked_decomposition_7_3_2_2() {
        let d = decomp(7, 3, 2, 2);
        let reports = d.classify();
        assert_eq!(reports.len(), 3);
        assert_eq!(reports[0].kind, SummandKind::GroupAlgebra);
        assert_eq!(reports[0].prime_m_class, Some(PrimeMClass::RootFixed));
        for r in &reports[1..] {
            assert_eq!(r.kind, SummandKind::SkewAlgebra);
            assert_eq!(r.prime_m_class, Some(PrimeMClass::SelfReciprocal));
            assert_eq!(
                r.refined,
                Some(MatrixShape {
                    size: 3,
                    field_order: 2
                })
            );
        }
        // F_2C_3 ⊕ M_3(F_2) ⊕ M_3(F_2): dims 3 + 9 + 9 = 21
        assert_eq!(d.dimension_sum(), 21);
    }

    #[test]
    fn worked_decomposition_5_2_4_3() {
        let d = decomp(5, 2, 4, 3);
        let reports = d.classify();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].prime_m_class, Some(PrimeMClass::RootFixed));
        assert_eq!(reports[1].prime_m_class, Some(PrimeMClass::SelfReciprocal));
        assert_eq!(
            reports[1].refined,
            Some(MatrixShape {
                size: 2,
                field_order: 9
            })
        );
        assert_eq!(reports[1].shape_text(3), "M_2(F_9)");
    }

    #[test]
    fn worked_decomposition_7_6_3_2() {
        let d = decomp(7, 6, 3, 2);
        let reports = d.classify();
        assert_eq!(reports.len(), 2);
        // second summand M_2(F_8 ∗_θ C_3) refines to M_6(F_2)
        assert_eq!(reports[1].kind, SummandKind::MatrixSkewAlgebra);
        assert_eq!((reports[1].s, reports[1].u), (2, 3));
        assert_eq!(
            reports[1].refined,
            Some(MatrixShape {
                size: 6,
                field_order: 2
            })
        );
        assert!(reports.iter().all(|r| r.prime_m_class.is_none())); // m = 6 not prime
    }

    #[test]
    fn tau_identity_and_zero() {
        let d = decomp(7, 6, 3, 2);
        let params = d.params().clone();
        let blocks = d.apply(&AlgebraElement::one(&params)).unwrap();
        assert!(blocks.iter().all(BlockElement::is_identity));
        let blocks = d.apply(&AlgebraElement::zero(&params)).unwrap();
        assert!(blocks.iter().all(BlockElement::is_zero));
    }

    #[test]
    fn tau_homomorphism_random() {
        for (n, m, r, q) in [
            (7usize, 3usize, 2usize, 2u64),
            (7, 6, 3, 2),
            (5, 2, 4, 3),
            (9, 6, 2, 4),
        ] {
            let d = decomp(n, m, r, q);
            let params = d.params().clone();
            let mut seed = 11u64 + (n * m) as u64;
            for _ in 0..10 {
                let u = random_elem(&params, &mut seed);
                let v = random_elem(&params, &mut seed);
                let tu = d.apply(&u).unwrap();
                let tv = d.apply(&v).unwrap();
                let sum = d.apply(&u.add(&v)).unwrap();
                let prod = d.apply(&u.mul(&v).unwrap()).unwrap();
                for i in 0..d.block_count() {
                    assert_eq!(sum[i], tu[i].add(&tv[i]), "additivity ({n},{m},{r},{q})");
                    assert_eq!(
                        prod[i],
                        tu[i].mul(&tv[i]).unwrap(),
                        "multiplicativity ({n},{m},{r},{q})"
                    );
                }
            }
        }
    }

    #[test]
    fn tau_roundtrip_random() {
        for (n, m, r, q) in [
            (7usize, 3usize, 2usize, 2u64),
            (7, 6, 3, 2),
            (5, 4, 2, 3),
            (9, 6, 2, 2),
            (15, 2, 4, 2),
        ] {
            let d = decomp(n, m, r, q);
            let params = d.params().clone();
            let mut seed = 3u64 + (n + m + r) as u64;
            for _ in 0..20 {
                let u = random_elem(&params, &mut seed);
                let blocks = d.apply(&u).unwrap();
                assert_eq!(d.invert(&blocks).unwrap(), u, "({n},{m},{r},{q})");
            }
        }
    }

    #[test]
    fn central_idempotents() {
        let d = decomp(7, 3, 2, 2);
        let mut eps = Vec::new();
        for i in 0..d.block_count() {
            eps.push(d.idempotent(i).unwrap());
        }
        let mut total = AlgebraElement::zero(d.params());
        for (i, e) in eps.iter().enumerate() {
            assert_eq!(e.mul(e).unwrap(), *e, "ε_{i} idempotent");
            total = total.add(e);
            for (j, f) in eps.iter().enumerate() {
                if i != j {
                    assert!(e.mul(f).unwrap().is_zero(), "ε_{i}ε_{j} = 0");
                }
            }
        }
        assert_eq!(total, AlgebraElement::one(d.params()));
    }

    #[test]
    fn block_layout_transcription_oracle() {
        // the s_i = 2 block of (7,6,3,2): the displayed matrix layout, with
        // the z-sum running over 0..u-1, must match τ entry-by-entry
        let d = decomp(7, 6, 3, 2);
        let params = d.params().clone();
        let oi = 1; // the s=2 orbit
        let o = &d.orbits()[oi];
        assert_eq!(o.s, 2);
        let shape = &d.shapes()[oi];
        let kfield = &shape.field;
        let mut seed = 77u64;
        for _ in 0..10 {
            let p = random_elem(&params, &mut seed);
            let block = &d.apply(&p).unwrap()[oi];
            // independent transcription: entry (l,c) = Σ_z h^z ·(h if wrap)· P_{zs+w}(γ_c)
            let (s, u, k) = (o.s, o.u, o.theta_exponent);
            for l in 0..s {
                for c in 0..s {
                    let w = (c + s - l) % s;
                    let wrap = usize::from(c < l);
                    let mut expected = vec![kfield.zero(); u];
                    for z in 0..u {
                        let j = z * s + w;
                        let val = p.row(j).eval_embedded(kfield, &d.gamma(oi)[c]);
                        let zw = z + wrap;
                        expected[zw % u] = &expected[zw % u] + &val.frobenius(k * zw);
                    }
                    assert_eq!(block.entry(l, c).coeffs(), &expected[..]);
                }
            }
        }
    }

    #[test]
    fn sigma_dihedral_example_oracle() {
        // (5,2,4,3): Ω_2 quartic, σ̃ in basis {1, α} must reproduce the
        // matrices with entries -αα^r, α+α^r, ±1
        let d = decomp(5, 2, 4, 3);
        let oi = 1;
        let sigma = d.sigma_matrix(oi).unwrap();
        let kfield = &d.shapes()[oi].field;
        let alpha = kfield.gen();
        let r = 4u128;
        let alpha_r = alpha.pow(r);
        assert_eq!(sigma.basis(), &[kfield.one(), alpha.clone()]);
        let sa = sigma.image_alpha();
        // [[0, -αα^r],[1, α+α^r]]
        assert!(sa[0].is_zero());
        assert_eq!(sa[1], -&(&alpha * &alpha_r));
        assert!(sa[2].is_one());
        assert_eq!(sa[3], &alpha + &alpha_r);
        let sh = sigma.image_h();
        // [[1, α+α^r],[0, -1]]
        assert!(sh[0].is_one());
        assert_eq!(sh[1], &alpha + &alpha_r);
        assert!(sh[2].is_zero());
        assert_eq!(sh[3], -&kfield.one());
    }

    #[test]
    fn sigma_7_3_2_2_cubic_orbit() {
        // F_8 ∗_θ C_3 → M_3(F_2): dimension 9 over F_2 on both sides
        let d = decomp(7, 3, 2, 2);
        let sigma = d.sigma_matrix(1).unwrap();
        assert_eq!(sigma.matrix_size(), 3);
        assert_eq!(sigma.fixed_field_order, 2);
    }

    #[test]
    fn sigma_with_trivial_stabilizer_is_identity() {
        // s = m, u = 1: σ maps scalars onto 1×1 matrices unchanged
        let d = decomp(13, 3, 3, 5);
        let oi = d
            .orbits()
            .iter()
            .position(|o| o.s == 3 && o.u == 1)
            .expect("a full-length orbit");
        let sigma = d.sigma_matrix(oi).unwrap();
        assert_eq!(sigma.matrix_size(), 1);
        let kfield = &d.shapes()[oi].field;
        assert_eq!(sigma.image_alpha(), vec![kfield.gen()]);
    }

    #[test]
    fn sigma_rejects_trivial_twist() {
        let d = decomp(7, 3, 2, 2);
        // orbit 0 is the group-algebra summand: θ trivial on C_3, not injective
        assert!(matches!(
            d.sigma_matrix(0),
            Err(Error::ThetaNotInjective { .. })
        ));
    }
}
