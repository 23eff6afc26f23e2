//! Subgroup machinery and induced codes: C ↦ C^G from a left transversal,
//! projections pr_H, the exterior/interior induced codes, the block
//! description of codes induced from cyclic codes, and intersections of
//! induced codes with their distance/dimension bounds.

use std::sync::Arc;

use crate::algebra::{AlgebraElement, GroupParams, SkewElement};
use crate::codes::{elem_to_vec, vec_to_elem, MetacyclicCode, SubmoduleCode};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::linalg::{self, Echelon};
use crate::poly::Poly;
use crate::wedderburn::Decomposition;

/// A subgroup of G_{n,m,r} as an explicit element set, with a deterministic
/// left transversal. Elements are b-left exponent pairs (j, i) = b^j a^i.
#[derive(Clone)]
pub struct SubgroupSpec {
    params: Arc<GroupParams>,
    elements: Vec<(usize, usize)>,
    member: Vec<bool>,
    transversal: Vec<(usize, usize)>,
}

impl std::fmt::Debug for SubgroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupSpec[order {}, index {}]",
            self.order(),
            self.index()
        )
    }
}

impl PartialEq for SubgroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.elements == other.elements
    }
}
impl Eq for SubgroupSpec {}

impl SubgroupSpec {
    /// Closure of the generators, plus the greedy transversal: scanning the
    /// fixed enumeration a^i b^j (lexicographic in (j, i)) and taking the
    /// first element of each uncovered left coset.
    pub fn from_generators(params: &Arc<GroupParams>, gens: &[(usize, usize)]) -> SubgroupSpec {
        let (n, m) = (params.n, params.m);
        let mut member = vec![false; n * m];
        let idx = |(j, i): (usize, usize)| j * n + i;
        member[0] = true; // identity
        let mut queue = vec![(0usize, 0usize)];
        let gens: Vec<(usize, usize)> = gens.iter().map(|&(j, i)| (j % m, i % n)).collect();
        while let Some(x) = queue.pop() {
            for g in &gens {
                let y = params.compose(x, *g);
                if !member[idx(y)] {
                    member[idx(y)] = true;
                    queue.push(y);
                }
            }
        }
        let mut elements: Vec<(usize, usize)> = (0..m)
            .flat_map(|j| (0..n).map(move |i| (j, i)))
            .filter(|&e| member[idx(e)])
            .collect();
        elements.sort_unstable();

        // greedy left transversal over the a^i b^j enumeration
        let mut covered = vec![false; n * m];
        let mut transversal = Vec::new();
        for j in 0..m {
            for i in 0..n {
                // a^i b^j = b^j a^(i·r^(-j))
                let g = (j, i * params.r_inv_pow(j) % n);
                if covered[idx(g)] {
                    continue;
                }
                transversal.push(g);
                for h in &elements {
                    covered[idx(params.compose(g, *h))] = true;
                }
            }
        }
        SubgroupSpec {
            params: Arc::clone(params),
            elements,
            member,
            transversal,
        }
    }

    /// The cyclic subgroup A = <a>.
    pub fn subgroup_a(params: &Arc<GroupParams>) -> SubgroupSpec {
        Self::from_generators(params, &[(0, 1)])
    }

    /// The cyclic subgroup B = <b>.
    pub fn subgroup_b(params: &Arc<GroupParams>) -> SubgroupSpec {
        Self::from_generators(params, &[(1, 0)])
    }

    pub fn params(&self) -> &Arc<GroupParams> {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.params.order() / self.order()
    }

    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    pub fn transversal(&self) -> &[(usize, usize)] {
        &self.transversal
    }

    pub fn contains(&self, (j, i): (usize, usize)) -> bool {
        self.member[(j % self.params.m) * self.params.n + (i % self.params.n)]
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.params.order()
    }

    /// True when H1·H2 = G and H1 ∩ H2 = {e}.
    pub fn factors_group_with(&self, other: &SubgroupSpec) -> bool {
        if self.order() * other.order() != self.params.order() {
            return false;
        }
        let common = self.elements.iter().filter(|e| other.contains(**e)).count();
        common == 1
    }
}

/// A left ideal of F_q H, stored as elements of F_q G supported inside H.
#[derive(Clone, PartialEq, Eq)]
pub struct SubgroupCode {
    subgroup: Arc<SubgroupSpec>,
    basis: Vec<AlgebraElement>,
}

impl std::fmt::Debug for SubgroupCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupCode[|H|={}, dim {}]",
            self.subgroup.order(),
            self.dim()
        )
    }
}

impl SubgroupCode {
    /// Wraps a spanning set supported in H; closes it into a left ideal of
    /// F_q H and canonicalizes.
    pub fn from_generators(
        subgroup: &Arc<SubgroupSpec>,
        gens: &[AlgebraElement],
    ) -> Result<SubgroupCode> {
        let params = subgroup.params();
        for g in gens {
            if g.params() != params {
                return Err(Error::ParamMismatch);
            }
            if !supported_in(g, subgroup) {
                return Err(Error::NotAnHCode);
            }
        }
        let mut ech = Echelon::new(&params.field, params.order());
        let mut queue: Vec<AlgebraElement> = Vec::new();
        for g in gens {
            if ech.insert(elem_to_vec(g)) {
                queue.push(g.clone());
            }
        }
        // close under left multiplication by the subgroup elements
        while let Some(v) = queue.pop() {
            for h in subgroup.elements() {
                let w = v.left_mul_basis(*h);
                if ech.insert(elem_to_vec(&w)) {
                    queue.push(w);
                }
            }
        }
        let basis = ech
            .into_rows()
            .into_iter()
            .map(|v| vec_to_elem(params, &v))
            .collect();
        Ok(SubgroupCode {
            subgroup: Arc::clone(subgroup),
            basis,
        })
    }

    /// The repetition code: the span of Σ_{h ∈ H} h.
    pub fn repetition(subgroup: &Arc<SubgroupSpec>) -> SubgroupCode {
        let params = subgroup.params();
        let mut e = AlgebraElement::zero(params);
        for &(j, i) in subgroup.elements() {
            e.set_coeff(j, i, params.field.one());
        }
        Self::from_generators(subgroup, &[e]).expect("supported in H")
    }

    /// The full subgroup algebra F_q H.
    pub fn full(subgroup: &Arc<SubgroupSpec>) -> SubgroupCode {
        let params = subgroup.params();
        let gens: Vec<AlgebraElement> = subgroup
            .elements()
            .iter()
            .map(|&(j, i)| AlgebraElement::basis(params, j, i))
            .collect();
        Self::from_generators(subgroup, &gens).expect("supported in H")
    }

    pub fn subgroup(&self) -> &Arc<SubgroupSpec> {
        &self.subgroup
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

    /// Verifies the left-ideal property over F_q H.
    pub fn is_h_code(&self) -> bool {
        let params = self.subgroup.params();
        let ech = linalg::echelon_from(
            &params.field,
            params.order(),
            self.basis.iter().map(elem_to_vec),
        );
        self.basis.iter().all(|v| {
            self.subgroup
                .elements()
                .iter()
                .all(|h| ech.contains(&elem_to_vec(&v.left_mul_basis(*h))))
        }) && self.basis.iter().all(|v| supported_in(v, &self.subgroup))
    }

    pub fn min_distance_exact(&self, budget: u64) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let params = self.subgroup.params();
        let rows: Vec<Vec<FieldElem>> = self.basis.iter().map(elem_to_vec).collect();
        crate::distance::min_weight(&params.field, &rows, 1, budget)
    }
}

fn supported_in(e: &AlgebraElement, h: &SubgroupSpec) -> bool {
    let params = e.params();
    (0..params.m).all(|j| (0..params.n).all(|i| e.coeff(j, i).is_zero() || h.contains((j, i))))
}

/// pr_H: coordinate restriction to the subgroup, row-reduced. The image of a
/// left ideal is a left ideal of F_q H.
pub fn project(code: &MetacyclicCode, h: &Arc<SubgroupSpec>) -> SubgroupCode {
    let params = h.params();
    assert!(code.params() == params, "params mismatch");
    let mut ech = Echelon::new(&params.field, params.order());
    for b in code.basis() {
        let mut p = AlgebraElement::zero(params);
        for &(j, i) in h.elements() {
            p.set_coeff(j, i, b.coeff(j, i).clone());
        }
        ech.insert(elem_to_vec(&p));
    }
    let basis: Vec<AlgebraElement> = ech
        .into_rows()
        .into_iter()
        .map(|v| vec_to_elem(params, &v))
        .collect();
    let out = SubgroupCode {
        subgroup: Arc::clone(h),
        basis,
    };
    // pr_H carries left ideals to left ideals; plain spans need not close
    debug_assert!(
        !code.is_left_ideal() || out.is_h_code(),
        "projection of an ideal is an H-code"
    );
    out
}

/// C^G = g_1 C ∔ ... ∔ g_(|G:H|) C over the left transversal.
pub fn induce(d: &SubgroupCode) -> Result<MetacyclicCode> {
    if !d.is_h_code() {
        return Err(Error::NotAnHCode);
    }
    let h = d.subgroup();
    let params = h.params();
    let mut ech = Echelon::new(&params.field, params.order());
    for g in h.transversal() {
        for b in d.basis() {
            ech.insert(elem_to_vec(&b.left_mul_basis(*g)));
        }
    }
    assert_eq!(ech.rank(), d.dim() * h.index(), "dim(C^G) = dim(C) · |G:H|");
    let code = MetacyclicCode::from_basis_rows(params, ech);
    debug_assert!(code.is_left_ideal(), "induced code is a left ideal");
    Ok(code)
}

/// Ext_H(C) = (pr_H(C))^G, the smallest induced code containing C.
pub fn ext_code(code: &MetacyclicCode, h: &Arc<SubgroupSpec>) -> MetacyclicCode {
    let projected = project(code, h);
    let out = induce(&projected).expect("projection is an H-code");
    debug_assert!(out.contains_code(code), "Ext contains the code");
    out
}

/// Int_H(C) = (C|_H)^G with C|_H = pr_H(C ∩ F_qH): the largest induced
/// subcode of C.
pub fn int_code(code: &MetacyclicCode, h: &Arc<SubgroupSpec>) -> MetacyclicCode {
    let out = induce(&restriction(code, h)).expect("restriction is an H-code");
    debug_assert!(code.contains_code(&out), "Int is contained in the code");
    out
}

/// C|_H = pr_H(C ∩ F_qH): the H-code of the codewords of C supported in H,
/// found as the nullspace of the outside-H coordinate restriction.
pub fn restriction(code: &MetacyclicCode, h: &Arc<SubgroupSpec>) -> SubgroupCode {
    let params = h.params();
    let outside: Vec<usize> = (0..params.m)
        .flat_map(|j| (0..params.n).map(move |i| (j, i)))
        .filter(|&e| !h.contains(e))
        .map(|(j, i)| j * params.n + i)
        .collect();
    let rows: Vec<Vec<FieldElem>> = code
        .basis()
        .iter()
        .map(|b| {
            let v = elem_to_vec(b);
            outside.iter().map(|&c| v[c].clone()).collect()
        })
        .collect();
    let kernel = linalg::nullspace(
        &params.field,
        code.dim(),
        &transpose_rows(&rows, outside.len()),
    );
    let mut ech = Echelon::new(&params.field, params.order());
    for coefs in kernel {
        let mut v = vec![params.field.zero(); params.order()];
        for (bi, b) in code.basis().iter().enumerate() {
            if coefs[bi].is_zero() {
                continue;
            }
            let bv = elem_to_vec(b);
            for (x, y) in v.iter_mut().zip(bv.iter()) {
                *x = &*x + &(&coefs[bi] * y);
            }
        }
        ech.insert(v);
    }
    let restricted: Vec<AlgebraElement> = ech
        .into_rows()
        .into_iter()
        .map(|v| vec_to_elem(params, &v))
        .collect();
    SubgroupCode::from_generators(h, &restricted).expect("restriction lies in F_qH")
}

/// Rows of the matrix whose kernel gives combinations vanishing outside H:
/// transpose of (basis × outside-coordinates).
fn transpose_rows(rows: &[Vec<FieldElem>], ncols: usize) -> Vec<Vec<FieldElem>> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Block description of the code induced from the cyclic code (F_qA)·g(a):
/// in each block, positions j with g(α_i^(r^j)) = 0 vanish and the others are
/// free.
pub fn induced_cyclic_structure(dec: &Decomposition, g: &Poly) -> Result<Vec<SubmoduleCode>> {
    let params = dec.params();
    let base = &params.field;
    let xn1 = Poly::xn_minus_1(base, params.n);
    if g.is_zero() || !xn1.rem(g).is_zero() {
        return Err(Error::NotADivisor);
    }
    let mut out = Vec::with_capacity(dec.block_count());
    for (oi, shape) in dec.shapes().iter().enumerate() {
        let kfield = &shape.field;
        let t = kfield.ext_degree();
        let alpha = kfield.gen();
        let free: Vec<usize> = (0..shape.s)
            .filter(|&l| !g.eval_embedded(kfield, &dec.gamma(oi)[l]).is_zero())
            .collect();
        let mut gens: Vec<Vec<SkewElement>> = Vec::new();
        for &l in &free {
            for e in 0..t {
                for z in 0..shape.u {
                    let mut row = vec![SkewElement::zero(shape); shape.s];
                    let mut coeffs = vec![kfield.zero(); shape.u];
                    coeffs[z] = alpha.pow(e as u128);
                    row[l] = SkewElement::from_coeffs(shape, coeffs);
                    gens.push(row);
                }
            }
        }
        out.push(SubmoduleCode::closure(oi, shape, base, &gens));
    }
    Ok(out)
}

/// Certificate for the intersection of two induced codes.
#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub d1: usize,
    pub d2: usize,
    /// d(C) ≥ d1 · d2.
    pub product_bound: usize,
    /// dim(C) ≥ |H1|·dim(C2) + |H2|·dim(C1) − |G| (may be negative).
    pub dim_bound: isize,
    pub dim: usize,
}

/// C = C1^G ∩ C2^G for H1·H2 = G with trivial intersection, plus the distance
/// and dimension bounds.
pub fn intersect_induced(
    d1: &SubgroupCode,
    d2: &SubgroupCode,
    budget: u64,
) -> Result<(MetacyclicCode, IntersectionReport)> {
    let h1 = d1.subgroup();
    let h2 = d2.subgroup();
    let params = h1.params();
    if h2.params() != params {
        return Err(Error::ParamMismatch);
    }
    if !h1.factors_group_with(h2) {
        return Err(Error::BadSubgroupPair);
    }
    let c1 = induce(d1)?;
    let c2 = induce(d2)?;
    let inter = linalg::row_space_intersection(
        &params.field,
        params.order(),
        &c1.basis_vectors(),
        &c2.basis_vectors(),
    );
    let ech = linalg::echelon_from(&params.field, params.order(), inter);
    let code = MetacyclicCode::from_basis_rows(params, ech);
    let dist1 = d1.min_distance_exact(budget)?;
    let dist2 = d2.min_distance_exact(budget)?;
    let dim_bound =
        (h1.order() * d2.dim() + h2.order() * d1.dim()) as isize - params.order() as isize;
    let report = IntersectionReport {
        d1: dist1,
        d2: dist2,
        product_bound: dist1 * dist2,
        dim_bound,
        dim: code.dim(),
    };
    Ok((code, report))
}

/// Random left ideal of F_q H (for the test grids): a random H-element span,
/// closed.
pub fn random_subgroup_code<R: rand::Rng>(
    subgroup: &Arc<SubgroupSpec>,
    rng: &mut R,
) -> SubgroupCode {
    let params = subgroup.params();
    let q = params.field.size();
    let count = rng.random_range(1..=2.max(subgroup.order() / 2));
    let gens: Vec<AlgebraElement> = (0..count)
        .map(|_| {
            let mut e = AlgebraElement::zero(params);
            for &(j, i) in subgroup.elements() {
                e.set_coeff(j, i, params.field.element_at(rng.random_range(0..q)));
            }
            e
        })
        .collect();
    SubgroupCode::from_generators(subgroup, &gens).expect("supported in H")
}
