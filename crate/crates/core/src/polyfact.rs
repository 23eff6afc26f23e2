//! Factorization of x^n - 1 over F_q via q-cyclotomic cosets, r-reciprocal
//! polynomials, and the orbit/stabilizer data of the action b^j.f = f^(r^j)
//! on the irreducible factors.

use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{self, FieldDesc, FieldElem};
use crate::poly::{first_irreducible_over, Poly};

/// A q-cyclotomic coset modulo n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    /// Sorted residues, closed under multiplication by q mod n.
    pub members: Vec<usize>,
    /// Smallest member.
    pub representative: usize,
    /// Multiplicative order of the attached root: d = n / gcd(n, representative).
    pub d: usize,
    /// Least positive t with q^t ≡ 1 (mod d).
    pub t_d: usize,
}

/// Computes the q-cyclotomic cosets modulo n, ordered by representative.
pub fn cyclotomic_cosets(n: usize, q: u64) -> Result<Vec<CyclotomicCoset>> {
    if n == 0 || arith::gcd(q, n as u64) != 1 {
        return Err(Error::NonCoprime { n, q });
    }
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            members.push(c);
            c = (c * (q as usize % n)) % n;
        }
        members.sort_unstable();
        let d = n / gcd_usize(n, start);
        let t_d = arith::mult_order(q % d.max(1) as u64, d as u64) as usize;
        cosets.push(CyclotomicCoset {
            representative: members[0],
            members,
            d,
            t_d,
        });
    }
    Ok(cosets)
}

fn gcd_usize(a: usize, b: usize) -> usize {
    arith::gcd(a as u64, b as u64) as usize
}

/// One irreducible factor of x^n - 1 over F_q, with a designated root α in
/// its own extension field F_q[x]/(f).
#[derive(Debug, Clone)]
pub struct FactorData {
    pub f: Poly,
    pub coset: CyclotomicCoset,
    /// F_q[x]/(f), the field the designated root lives in.
    pub field: Arc<FieldDesc>,
    /// The designated root α = class of x.
    pub alpha: FieldElem,
}

/// The full factorization of x^n - 1 over F_q, factor list ordered by coset
/// representative.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub n: usize,
    pub base: Arc<FieldDesc>,
    pub factors: Vec<FactorData>,
    /// index of the coset containing a residue -> factor index
    residue_to_factor: Vec<usize>,
}

/// Factors x^n - 1 over the base field of `field` by expanding each coset's
/// linear factors over the splitting field F_{q^ord_n(q)} and pulling the
/// coefficients back to F_q.
pub fn factor_xn_minus_1(field: &Arc<FieldDesc>, n: usize) -> Result<Factorization> {
    let q = field.size();
    let cosets = cyclotomic_cosets(n, q)?;

    // splitting field E = F_q[x]/(h), deg h = ord_n(q)
    let t = arith::mult_order(q % n as u64, n as u64) as usize;
    let h = first_irreducible_over(field, t);
    let splitting = gf::extension(field, &h)?;

    // primitive n-th root of unity in E, found by a deterministic scan
    let cofactor = (splitting.size() - 1) / n as u64;
    let mut zeta = None;
    for idx in 1..splitting.size() {
        let cand = splitting.element_at(idx).pow(cofactor as u128);
        if cand.is_zero() {
            continue;
        }
        if cand.order().unwrap() == n as u64 {
            zeta = Some(cand);
            break;
        }
    }
    let zeta = zeta.expect("E contains a primitive n-th root of unity");

    let mut factors = Vec::with_capacity(cosets.len());
    let mut residue_to_factor = vec![0usize; n];
    for (fi, coset) in cosets.iter().enumerate() {
        // f_C(x) = ∏_{c in C} (x - ζ^c) over E
        let mut prod = Poly::one(&splitting);
        for &c in &coset.members {
            let root = zeta.pow(c as u128);
            let lin = Poly::from_coeffs(&splitting, vec![-&root, splitting.one()]);
            prod = prod.mul(&lin);
        }
        // pull the coefficients back to F_q
        let coeffs = prod
            .coeffs()
            .iter()
            .map(|c| {
                let back = splitting
                    .try_to_base(c)
                    .expect("coset product has base-field coefficients");
                field.from_flat(back)
            })
            .collect();
        let f = Poly::from_coeffs(field, coeffs);
        debug_assert_eq!(f.deg(), Some(coset.members.len()));
        let ext = gf::extension(field, &f)?;
        let alpha = ext.gen();
        for &c in &coset.members {
            residue_to_factor[c] = fi;
        }
        factors.push(FactorData {
            f,
            coset: coset.clone(),
            field: ext,
            alpha,
        });
    }
    Ok(Factorization {
        n,
        base: Arc::clone(field),
        factors,
        residue_to_factor,
    })
}

impl Factorization {
    /// Index of the factor whose coset contains the given residue.
    pub fn factor_of_residue(&self, residue: usize) -> usize {
        self.residue_to_factor[residue % self.n]
    }

    /// Index of the r-reciprocal of factor `idx`: the factor whose coset is
    /// r times the coset of `idx` (mod n).
    pub fn r_reciprocal_idx(&self, idx: usize, r: usize) -> Result<usize> {
        if gcd_usize(r % self.n, self.n) != 1 {
            return Err(Error::NonCoprimeR { n: self.n, r });
        }
        let rep = self.factors[idx].coset.representative;
        Ok(self.factor_of_residue(rep * (r % self.n) % self.n))
    }

    /// The r-reciprocal factor itself: the minimal polynomial of β^r for β a
    /// root of factor `idx`.
    pub fn r_reciprocal(&self, idx: usize, r: usize) -> Result<&FactorData> {
        Ok(&self.factors[self.r_reciprocal_idx(idx, r)?])
    }

    /// Product of all factors; equals x^n - 1 (used as a self-check in tests).
    pub fn product(&self) -> Poly {
        let mut acc = Poly::one(&self.base);
        for fd in &self.factors {
            acc = acc.mul(&fd.f);
        }
        acc
    }
}

/// Which of the four summand shapes an orbit produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummandKind {
    /// s = 1 and α = α^r: the commutative group algebra F_q[α]B.
    GroupAlgebra,
    /// s = 1 and α ≠ α^r: the skew group algebra F_q[α] ∗_θ B.
    SkewAlgebra,
    /// s > 1 and α = α^(r^s): matrices over the group algebra F_q[α]B_i.
    MatrixGroupAlgebra,
    /// s > 1 and α ≠ α^(r^s): matrices over the skew group algebra.
    MatrixSkewAlgebra,
}

impl SummandKind {
    pub fn label(self) -> &'static str {
        match self {
            SummandKind::GroupAlgebra => "group algebra",
            SummandKind::SkewAlgebra => "skew",
            SummandKind::MatrixGroupAlgebra => "matrix group algebra",
            SummandKind::MatrixSkewAlgebra => "matrix skew",
        }
    }
}

/// Orbit of the b-action on factors, with its stabilizer data: the complete
/// combinatorial skeleton of one summand M_s(F_q[α] ∗_θ B_i).
#[derive(Debug, Clone)]
pub struct OrbitData {
    /// Position in the orbit list (0-based).
    pub index: usize,
    /// Factor indices [f, f^(r), ..., f^(r^(s-1))] into the factorization.
    pub orbit: Vec<usize>,
    /// Orbit size s.
    pub s: usize,
    /// Stabilizer order u = m / s.
    pub u: usize,
    /// Order d of the designated root of the representative factor.
    pub d: usize,
    /// Least k ≥ 0 with q^k ≡ r^s (mod d); k = 0 encodes the trivial twist.
    pub theta_exponent: usize,
    pub kind: SummandKind,
}

impl OrbitData {
    /// Index of the representative factor f_i.
    pub fn rep(&self) -> usize {
        self.orbit[0]
    }
}

/// Checks the group-parameter invariants: r^m ≡ 1 (mod n), r ≢ 1 (mod n).
pub fn check_group_params(n: usize, m: usize, r: usize) -> Result<()> {
    let bad = |reason: &str| Error::BadGroupParams {
        n,
        m,
        r,
        reason: reason.to_string(),
    };
    if n == 0 || m == 0 {
        return Err(bad("n and m must be positive"));
    }
    let r = r % n;
    if gcd_usize(r, n) != 1 {
        return Err(bad("gcd(r, n) must be 1"));
    }
    if arith::mod_pow(r as u64, m as u64, n as u64) != 1 % n as u64 {
        return Err(bad("r^m must be 1 mod n"));
    }
    if r == 1 % n {
        return Err(bad("r must not be 1 mod n"));
    }
    Ok(())
}

/// Orbits of the action b.f = f^(r) on the factors of x^n - 1, ordered by the
/// representative of the representative factor's coset.
pub fn orbits(fact: &Factorization, m: usize, r: usize) -> Result<Vec<OrbitData>> {
    let n = fact.n;
    check_group_params(n, m, r)?;
    let r = r % n;
    let q = fact.base.size();

    let mut assigned = vec![false; fact.factors.len()];
    let mut out = Vec::new();
    for start in 0..fact.factors.len() {
        if assigned[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = start;
        loop {
            assigned[cur] = true;
            orbit.push(cur);
            cur = fact.r_reciprocal_idx(cur, r)?;
            if cur == start {
                break;
            }
        }
        let s = orbit.len();
        if m % s != 0 {
            return Err(Error::BadGroupParams {
                n,
                m,
                r,
                reason: format!("orbit size {s} does not divide m"),
            });
        }
        let u = m / s;
        let d = fact.factors[start].coset.d;
        // least k ≥ 0 with q^k ≡ r^s (mod d)
        let rs = arith::mod_pow(r as u64, s as u64, d.max(1) as u64);
        let mut k = 0usize;
        let mut qk = 1 % d.max(1) as u64;
        while qk != rs {
            qk = qk * (q % d as u64) % d as u64;
            k += 1;
            assert!(k <= d, "no k with q^k = r^s mod d; factorization broken");
        }
        // the twist must generate a subgroup of Aut of order dividing u
        debug_assert_eq!(
            arith::mod_pow(qk.max(1), u as u64, d.max(1) as u64),
            1 % d.max(1) as u64
        );
        let kind = match (s, k) {
            (1, 0) => SummandKind::GroupAlgebra,
            (1, _) => SummandKind::SkewAlgebra,
            (_, 0) => SummandKind::MatrixGroupAlgebra,
            (_, _) => SummandKind::MatrixSkewAlgebra,
        };
        out.push(OrbitData {
            index: 0,
            orbit,
            s,
            u,
            d,
            theta_exponent: k,
            kind,
        });
    }
    out.sort_by_key(|o| fact.factors[o.rep()].coset.representative);
    for (i, o) in out.iter_mut().enumerate() {
        o.index = i;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u64) -> Arc<FieldDesc> {
        FieldDesc::prime_power(q).unwrap()
    }

    #[test]
    fn cosets_mod_7_over_f2() {
        let cs = cyclotomic_cosets(7, 2).unwrap();
        let members: Vec<Vec<usize>> = cs.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
    }

    #[test]
    fn cosets_mod_5_over_f3() {
        let cs = cyclotomic_cosets(5, 3).unwrap();
        let members: Vec<Vec<usize>> = cs.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn singleton_cosets_when_q_is_1_mod_n() {
        let cs = cyclotomic_cosets(5, 11).unwrap();
        assert_eq!(cs.len(), 5);
        assert!(cs.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn non_coprime_rejected() {
        assert!(matches!(
            cyclotomic_cosets(6, 2),
            Err(Error::NonCoprime { .. })
        ));
    }

    #[test]
    fn factor_x7_minus_1_over_f2() {
        let f2 = fq(2);
        let fact = factor_xn_minus_1(&f2, 7).unwrap();
        let texts: Vec<String> = fact.factors.iter().map(|f| f.f.to_text()).collect();
        assert_eq!(texts, vec!["x+1", "x^3+x+1", "x^3+x^2+1"]);
        assert_eq!(fact.product(), Poly::xn_minus_1(&f2, 7));
    }

    #[test]
    fn factor_x2_minus_1_over_f3() {
        let f3 = fq(3);
        let fact = factor_xn_minus_1(&f3, 2).unwrap();
        let texts: Vec<String> = fact.factors.iter().map(|f| f.f.to_text()).collect();
        // x - 1 = x + 2 and x + 1
        assert_eq!(texts, vec!["x+2", "x+1"]);
    }

    #[test]
    fn factor_x3_minus_1_over_f2() {
        let f2 = fq(2);
        let fact = factor_xn_minus_1(&f2, 3).unwrap();
        assert_eq!(fact.product(), Poly::xn_minus_1(&f2, 3));
        let texts: Vec<String> = fact.factors.iter().map(|f| f.f.to_text()).collect();
        assert_eq!(texts, vec!["x+1", "x^2+x+1"]);
    }

    #[test]
    fn r_reciprocal_examples() {
        let f2 = fq(2);
        let fact = factor_xn_minus_1(&f2, 7).unwrap();
        // coset {1,2,4}·3 = {3,6,12 mod 7 = 5}
        let cubic = 1; // x^3+x+1
        let rec = fact.r_reciprocal(cubic, 3).unwrap();
        assert_eq!(rec.f.to_text(), "x^3+x^2+1");
        // r = 1 is the identity
        assert_eq!(fact.r_reciprocal_idx(cubic, 1).unwrap(), cubic);
        // x^3+x+1 is 2-self-reciprocal
        assert_eq!(fact.r_reciprocal_idx(cubic, 2).unwrap(), cubic);
        // the reciprocal is the minimal polynomial of β^r: applying m times
        // with r^m ≡ 1 returns the factor
        let mut idx = cubic;
        for _ in 0..6 {
            idx = fact.r_reciprocal_idx(idx, 3).unwrap();
        }
        assert_eq!(idx, cubic);
    }

    #[test]
    fn orbits_7_3_2_2() {
        let f2 = fq(2);
        let fact = factor_xn_minus_1(&f2, 7).unwrap();
        let os = orbits(&fact, 3, 2).unwrap();
        assert_eq!(os.len(), 3);
        for o in &os {
            assert_eq!(o.s, 1);
            assert_eq!(o.u, 3);
        }
        assert_eq!(os[0].kind, SummandKind::GroupAlgebra);
        assert_eq!(os[0].theta_exponent, 0);
        assert_eq!(os[1].kind, SummandKind::SkewAlgebra);
        assert_eq!(os[1].theta_exponent, 1);
        assert_eq!(os[2].kind, SummandKind::SkewAlgebra);
        assert_eq!(os[2].theta_exponent, 1);
    }

    #[test]
    fn orbits_7_6_3_2() {
        let f2 = fq(2);
        let fact = factor_xn_minus_1(&f2, 7).unwrap();
        let os = orbits(&fact, 6, 3).unwrap();
        assert_eq!(os.len(), 2);
        assert_eq!((os[0].s, os[0].u), (1, 6));
        assert_eq!(os[0].kind, SummandKind::GroupAlgebra);
        assert_eq!((os[1].s, os[1].u), (2, 3));
        assert_eq!(os[1].theta_exponent, 1); // 2 ≡ 3^2 mod 7
        assert_eq!(os[1].kind, SummandKind::MatrixSkewAlgebra);
    }

    #[test]
    fn orbits_5_2_4_3() {
        let f3 = fq(3);
        let fact = factor_xn_minus_1(&f3, 5).unwrap();
        let os = orbits(&fact, 2, 4).unwrap();
        assert_eq!(os.len(), 2);
        assert_eq!((os[0].s, os[0].u), (1, 2));
        assert_eq!(os[0].kind, SummandKind::GroupAlgebra);
        assert_eq!((os[1].s, os[1].u), (1, 2));
        assert_eq!(os[1].theta_exponent, 2); // 3^2 = 9 ≡ 4 mod 5
        assert_eq!(os[1].kind, SummandKind::SkewAlgebra);
    }

    #[test]
    fn bad_group_params() {
        let f2 = fq(2);
        let fact = factor_xn_minus_1(&f2, 7).unwrap();
        assert!(matches!(
            orbits(&fact, 3, 3),
            Err(Error::BadGroupParams { .. })
        )); // 3^3 = 27 ≢ 1 mod 7
        assert!(matches!(
            orbits(&fact, 3, 1),
            Err(Error::BadGroupParams { .. })
        ));
    }

    #[test]
    fn alpha_qk_equals_alpha_rs() {
        // α^(q^k) = α^(r^s) for the stored twist exponent, by field exponentiation
        for (n, m, r, q) in [
            (7usize, 3usize, 2usize, 2u64),
            (7, 6, 3, 2),
            (5, 2, 4, 3),
            (9, 6, 2, 2),
        ] {
            let f = fq(q);
            let fact = factor_xn_minus_1(&f, n).unwrap();
            for o in orbits(&fact, m, r).unwrap() {
                let fd = &fact.factors[o.rep()];
                let alpha = &fd.alpha;
                let qk = arith::mod_pow(q, o.theta_exponent as u64, u64::MAX);
                let rs = arith::mod_pow(r as u64, o.s as u64, u64::MAX);
                assert_eq!(
                    alpha.pow(qk as u128),
                    alpha.pow(rs as u128),
                    "n={n} m={m} r={r} q={q} orbit {}",
                    o.index
                );
            }
        }
    }

    #[test]
    fn orbit_size_is_minimal() {
        // r_reciprocal applied s times returns f; fewer applications never do
        for (n, m, r, q) in [(7usize, 6usize, 3usize, 2u64), (15, 4, 7, 2), (13, 3, 3, 5)] {
            let f = fq(q);
            let fact = factor_xn_minus_1(&f, n).unwrap();
            for o in orbits(&fact, m, r).unwrap() {
                let mut idx = o.rep();
                for step in 1..o.s {
                    idx = fact.r_reciprocal_idx(idx, r).unwrap();
                    assert_ne!(idx, o.rep(), "orbit returned after {step} < s steps");
                }
                idx = fact.r_reciprocal_idx(idx, r).unwrap();
                assert_eq!(idx, o.rep(), "orbit closes after s steps");
            }
        }
    }

    #[test]
    fn summand_kind_recomputed_independently() {
        // the four-way split, re-derived from s and the α^(r^s) = α test by
        // field exponentiation rather than from the stored twist exponent
        for (n, m, r, q) in [
            (7usize, 3usize, 2usize, 2u64),
            (7, 6, 3, 2),
            (5, 2, 4, 3),
            (9, 6, 2, 4),
            (13, 4, 5, 3),
        ] {
            let f = fq(q);
            let fact = factor_xn_minus_1(&f, n).unwrap();
            for o in orbits(&fact, m, r).unwrap() {
                let alpha = &fact.factors[o.rep()].alpha;
                let rs = arith::mod_pow(r as u64, o.s as u64, u64::MAX);
                let fixed = alpha.pow(rs as u128) == *alpha;
                let expected = match (o.s, fixed) {
                    (1, true) => SummandKind::GroupAlgebra,
                    (1, false) => SummandKind::SkewAlgebra,
                    (_, true) => SummandKind::MatrixGroupAlgebra,
                    (_, false) => SummandKind::MatrixSkewAlgebra,
                };
                assert_eq!(o.kind, expected, "({n},{m},{r},{q}) orbit {}", o.index);
            }
        }
    }

    #[test]
    fn degree_sum_is_n() {
        for (n, m, r, q) in [(7usize, 6usize, 3usize, 2u64), (15, 4, 2, 2), (13, 6, 4, 3)] {
            let f = fq(q);
            let fact = factor_xn_minus_1(&f, n).unwrap();
            let os = orbits(&fact, m, r).unwrap();
            let total: usize = os
                .iter()
                .flat_map(|o| o.orbit.iter())
                .map(|&fi| fact.factors[fi].f.deg().unwrap())
                .sum();
            assert_eq!(total, n);
        }
    }
}
