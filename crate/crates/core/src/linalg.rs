//! Exact row-reduction linear algebra over a finite field, shared by the code
//! machinery: incremental reduced echelon bases, nullspaces, row-space
//! intersections.

use std::sync::Arc;

use crate::gf::{FieldDesc, FieldElem};

/// An incrementally maintained reduced-row-echelon basis of a subspace of
/// F_q^ncols. Rows are kept fully reduced and ordered by pivot column, so two
/// equal subspaces always produce identical bases.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Arc<FieldDesc>,
    ncols: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Arc<FieldDesc>, ncols: usize) -> Echelon {
        Echelon {
            field: Arc::clone(field),
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis (returns the residual).
    pub fn reduce(&self, mut v: Vec<FieldElem>) -> Vec<FieldElem> {
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row.iter()) {
                if !y.is_zero() {
                    x.sub_mul_assign(&c, y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v.to_vec()).iter().all(FieldElem::is_zero)
    }

    /// Inserts a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<FieldElem>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(v.iter()) {
                if !y.is_zero() {
                    x.sub_mul_assign(&c, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// The canonical basis rows (reduced echelon, pivot-ordered).
    pub fn into_rows(self) -> Vec<Vec<FieldElem>> {
        self.rows
    }

    pub fn is_same_space(&self, other: &Echelon) -> bool {
        self.pivots == other.pivots && self.rows == other.rows
    }
}

/// Builds an echelon basis from an iterator of rows.
pub fn echelon_from<I: IntoIterator<Item = Vec<FieldElem>>>(
    field: &Arc<FieldDesc>,
    ncols: usize,
    rows: I,
) -> Echelon {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e
}

/// Basis of the right nullspace { x : R x = 0 } of the span of `rows`.
pub fn nullspace(
    field: &Arc<FieldDesc>,
    ncols: usize,
    rows: &[Vec<FieldElem>],
) -> Vec<Vec<FieldElem>> {
    let ech = echelon_from(field, ncols, rows.iter().cloned());
    let pivots = ech.pivots().to_vec();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in ech.rows().iter().zip(pivots.iter()) {
            v[p] = -&row[free];
        }
        out.push(v);
    }
    out
}

/// Canonical basis of rowspace(A) ∩ rowspace(B).
pub fn row_space_intersection(
    field: &Arc<FieldDesc>,
    ncols: usize,
    a: &[Vec<FieldElem>],
    b: &[Vec<FieldElem>],
) -> Vec<Vec<FieldElem>> {
    // left-kernel of the stacked matrix [A; B]: coefficients (u | w) with
    // u·A + w·B = 0 give intersection vectors u·A = -(w·B)
    let stacked: Vec<&Vec<FieldElem>> = a.iter().chain(b.iter()).collect();
    let nrows = stacked.len();
    // transpose: columns become rows so the right-nullspace is the left-kernel
    let transpose: Vec<Vec<FieldElem>> = (0..ncols)
        .map(|c| stacked.iter().map(|r| r[c].clone()).collect())
        .collect();
    let kernel = nullspace(field, nrows, &transpose);
    let mut out = Echelon::new(field, ncols);
    for coefs in kernel {
        let mut v = vec![field.zero(); ncols];
        for (ri, row) in a.iter().enumerate() {
            if coefs[ri].is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row.iter()) {
                *x = &*x + &(&coefs[ri] * y);
            }
        }
        out.insert(v);
    }
    out.into_rows()
}

/// Inverts the square matrix with the given columns; None if singular.
pub fn invert_columns(
    field: &Arc<FieldDesc>,
    columns: &[Vec<FieldElem>],
) -> Option<Vec<Vec<FieldElem>>> {
    let n = columns.len();
    let mut aug = Echelon::new(field, 2 * n);
    for i in 0..n {
        let mut row: Vec<FieldElem> = columns.iter().map(|c| c[i].clone()).collect();
        let mut id = vec![field.zero(); n];
        id[i] = field.one();
        row.extend(id);
        aug.insert(row);
    }
    if aug.pivots().iter().take(n).copied().ne(0..n) {
        return None;
    }
    // rows are [I | M^{-1}] in pivot order
    let inv_rows: Vec<Vec<FieldElem>> = aug.rows().iter().map(|r| r[n..].to_vec()).collect();
    // return as columns
    Some(
        (0..n)
            .map(|c| (0..n).map(|r| inv_rows[r][c].clone()).collect())
            .collect(),
    )
}

/// Matrix–vector product for a matrix given by columns.
pub fn mat_vec(
    field: &Arc<FieldDesc>,
    columns: &[Vec<FieldElem>],
    v: &[FieldElem],
) -> Vec<FieldElem> {
    let nrows = columns.first().map_or(0, Vec::len);
    let mut out = vec![field.zero(); nrows];
    for (c, col) in columns.iter().enumerate() {
        if v[c].is_zero() {
            continue;
        }
        for (o, m) in out.iter_mut().zip(col.iter()) {
            *o = &*o + &(&v[c] * m);
        }
    }
    out
}
