//! Exact minimum-weight computation for F_q-linear codes: full enumeration,
//! a support-rank method for short lengths, and an information-set
//! (Brouwer–Zimmermann style) search with a work budget.
//!
//! Weights can be counted over symbols grouped from several consecutive F_q
//! coordinates, which covers codes over extension alphabets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldElem};
use crate::linalg::{echelon_from, Echelon};

/// Minimum symbol weight of the span of `rows` (each of length `ncols` over
/// the coordinate field), where a symbol is `sym` consecutive coordinates.
///
/// Returns `BudgetExceeded { best_found }` when only an upper bound was
/// established within the work budget (a count of enumerated codewords).
pub fn min_weight(
    field: &Arc<FieldDesc>,
    rows: &[Vec<FieldElem>],
    sym: usize,
    budget: u64,
) -> Result<usize> {
    let basis = echelon_from(
        field,
        rows.first().map_or(0, Vec::len),
        rows.iter().cloned(),
    );
    if basis.rank() == 0 {
        return Err(Error::ZeroCode);
    }
    let ncols = basis.ncols();
    assert_eq!(
        ncols % sym,
        0,
        "column count must be a multiple of the symbol size"
    );
    let k = basis.rank();
    let q = field.size();

    // full enumeration when q^k fits the budget
    if pow_fits(q, k as u32, budget) {
        return Ok(enumerate_full(field, basis.rows(), sym));
    }
    // support-rank method for short symbol lengths
    if ncols / sym <= 16 {
        return Ok(support_rank(field, &basis, sym));
    }
    if sym == 1 {
        return info_set_search(field, &basis, budget);
    }
    Err(Error::BudgetExceeded { best_found: None })
}

/// Like [`min_weight`] but never errs on budget: returns (weight, exact?).
pub fn min_weight_bounded(
    field: &Arc<FieldDesc>,
    rows: &[Vec<FieldElem>],
    sym: usize,
    budget: u64,
) -> Option<(usize, bool)> {
    match min_weight(field, rows, sym, budget) {
        Ok(d) => Some((d, true)),
        Err(Error::BudgetExceeded {
            best_found: Some(ub),
        }) => Some((ub, false)),
        _ => None,
    }
}

fn pow_fits(q: u64, k: u32, budget: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc *= q as u128;
        if acc > budget as u128 {
            return false;
        }
    }
    true
}

fn sym_weight_raw(v: &[u64], sym_units: usize) -> usize {
    v.chunks(sym_units)
        .filter(|c| c.iter().any(|&x| x != 0))
        .count()
}

/// Expands an F_q-basis into an F_p-basis of the same span, as raw flattened
/// coordinate arrays (each F_q symbol contributes `deg` prime-field slots).
/// The flat coordinate unit vectors serve as the F_p-basis of the field.
fn expand_fp(field: &Arc<FieldDesc>, rows: &[Vec<FieldElem>]) -> (Vec<Vec<u64>>, usize) {
    let deg = field.degree();
    let p = field.characteristic();
    let mut out = Vec::with_capacity(rows.len() * deg);
    for row in rows {
        for e in 0..deg {
            let mut scaled = Vec::with_capacity(row.len() * deg);
            let mult = field.element_at(p.pow(e as u32));
            for x in row {
                let prod = x * &mult;
                scaled.extend_from_slice(prod.coeffs());
            }
            out.push(scaled);
        }
    }
    (out, deg)
}

/// Advances `combo` to the next w-combination of 0..n; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let w = combo.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - w {
            combo[i] += 1;
            for j in i + 1..w {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive odometer over all p^(k·deg) combinations of the expanded basis.
fn enumerate_full(field: &Arc<FieldDesc>, rows: &[Vec<FieldElem>], sym: usize) -> usize {
    let p = field.characteristic();
    let (fp_rows, deg) = expand_fp(field, rows);
    let sym_units = sym * deg;
    let len = fp_rows[0].len();
    let k = fp_rows.len();
    let mut digits = vec![0u64; k];
    let mut current = vec![0u64; len];
    let mut best = usize::MAX;
    loop {
        // ripple increment; every touched digit adds its row once
        let mut pos = 0;
        loop {
            if pos == k {
                return best;
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
        let w = sym_weight_raw(&current, sym_units);
        if w > 0 && w < best {
            best = w;
            if best == 1 {
                return 1;
            }
        }
    }
}

/// For ascending w, tests whether some nonzero codeword is supported inside a
/// symbol set of size w: rank of the basis restricted to the complement drops.
fn support_rank(field: &Arc<FieldDesc>, basis: &Echelon, sym: usize) -> usize {
    let nsym = basis.ncols() / sym;
    let k = basis.rank();
    for w in 1..=nsym {
        let mut combo: Vec<usize> = (0..w).collect();
        loop {
            // rank of rows restricted to the complement of `combo`: a drop
            // means some nonzero codeword is supported inside the w symbols
            let mut ech = Echelon::new(field, basis.ncols() - w * sym);
            let mut rank = 0;
            for row in basis.rows() {
                let mut restricted = Vec::with_capacity(basis.ncols() - w * sym);
                let mut ci = 0;
                for s in 0..nsym {
                    if ci < w && combo[ci] == s {
                        ci += 1;
                        continue;
                    }
                    restricted.extend_from_slice(&row[s * sym..(s + 1) * sym]);
                }
                if ech.insert(restricted) {
                    rank += 1;
                }
            }
            if rank < k {
                return w;
            }
            if !next_combination(&mut combo, nsym) {
                break;
            }
        }
    }
    unreachable!("nonzero code has a minimum-weight word")
}

/// One systematic generator matrix for an information set.
struct InfoSet {
    /// expanded F_p rows of all q-1 nonzero multiples per basis row:
    /// indexed [row][scalar-1] -> raw array
    multiples: Vec<Vec<Vec<u64>>>,
    /// rank deficit: k - (pivots in fresh columns)
    deficit: usize,
}

/// Exact Brouwer–Zimmermann style search over F_q coordinates (sym = 1).
fn info_set_search(field: &Arc<FieldDesc>, basis: &Echelon, budget: u64) -> Result<usize> {
    let p = field.characteristic();
    let q = field.size();
    let ncols = basis.ncols();
    let k = basis.rank();
    let deg = field.degree();

    // build disjoint(ish) information sets greedily
    let mut used = vec![false; ncols];
    let mut sets: Vec<InfoSet> = Vec::new();
    loop {
        // re-reduce with fresh columns first
        let order: Vec<usize> = (0..ncols)
            .filter(|&c| !used[c])
            .chain((0..ncols).filter(|&c| used[c]))
            .collect();
        let permuted: Vec<Vec<FieldElem>> = basis
            .rows()
            .iter()
            .map(|r| order.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let ech = echelon_from(field, ncols, permuted.iter().cloned());
        let fresh = (0..ncols).filter(|&c| !used[c]).count();
        let fresh_pivots: Vec<usize> = ech
            .pivots()
            .iter()
            .copied()
            .filter(|&pc| pc < fresh)
            .collect();
        if fresh_pivots.is_empty() {
            break;
        }
        for &pc in &fresh_pivots {
            used[order[pc]] = true;
        }
        // un-permute rows back to original column order
        let rows_back: Vec<Vec<FieldElem>> = ech
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
        let mut multiples = Vec::with_capacity(rows_back.len());
        for r in &rows_back {
            let mut ms = Vec::with_capacity(q as usize - 1);
            for scalar_idx in 1..q {
                let scl = field.element_at(scalar_idx);
                let mut raw = Vec::with_capacity(ncols * deg);
                for x in r {
                    raw.extend_from_slice((x * &scl).coeffs());
                }
                ms.push(raw);
            }
            multiples.push(ms);
        }
        sets.push(InfoSet {
            multiples,
            deficit: k - fresh_pivots.len(),
        });
        if used.iter().all(|&u| u) {
            break;
        }
    }

    let mut upper = usize::MAX;
    let mut work: u64 = 0;
    for w in 1..=k {
        for set in &sets {
            let mut combo: Vec<usize> = (0..w).collect();
            let mut scalars = vec![0usize; w]; // indices into multiples (0..q-1)
            loop {
                // sum the selected rows
                work += 1;
                if work > budget {
                    return Err(Error::BudgetExceeded {
                        best_found: (upper != usize::MAX).then_some(upper),
                    });
                }
                let mut current = vec![0u64; ncols * deg];
                for (slot, &row) in combo.iter().enumerate() {
                    let m = &set.multiples[row][scalars[slot]];
                    for (c, x) in current.iter_mut().zip(m.iter()) {
                        *c = (*c + *x) % p;
                    }
                }
                let wt = sym_weight_raw(&current, deg);
                if wt > 0 && wt < upper {
                    upper = wt;
                }
                // advance scalar odometer, then the combination
                let mut si = 0;
                loop {
                    if si == w {
                        break;
                    }
                    scalars[si] += 1;
                    if scalars[si] < (q - 1) as usize {
                        break;
                    }
                    scalars[si] = 0;
                    si += 1;
                }
                if si < w {
                    continue;
                }
                if !next_combination(&mut combo, k) {
                    break;
                }
            }
        }
        let lower: usize = sets.iter().map(|s| (w + 1).saturating_sub(s.deficit)).sum();
        if lower >= upper {
            return Ok(upper);
        }
    }
    Ok(upper)
}
