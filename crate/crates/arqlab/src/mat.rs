//! Dense exact matrices and row-space subspaces.
//!
//! Everything at desk scale: matrices are dense `Vec<Scalar>` with explicit
//! row and column counts, elimination is plain Gauss-Jordan with the first
//! nonzero entry as pivot. That keeps results deterministic across runs,
//! which the rest of the crate relies on for stable bases and stable output.

use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

/// Result of reduced row echelon form: the reduced matrix plus the pivot
/// column of every pivot row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        Mat {
            field,
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Convenience constructor from integer literals, mostly for tests.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&n| field.from_i64(n)).collect())
                .collect(),
        )
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = self.field.add(a, b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = self.field.sub(a, b);
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.field.neg(a);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.field.mul(a, c);
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let f = self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row counts");
        let mut out = Mat::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column counts");
        let mut m = self.clone();
        m.entries.extend(other.entries.iter().cloned());
        m.rows += other.rows;
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zero(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Mat {
        assert_eq!(self.rows, self.cols, "square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Gauss-Jordan with deterministic pivoting: scan columns left to right
    /// and take the first row with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(p, j).clone();
                    let b = m.get(r, j).clone();
                    m.set(p, j, b);
                    m.set(r, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel {x : self * x = 0}, returned as columns.
    /// Each basis vector has a single free coordinate set to one, in
    /// increasing order of the free column, so the result is canonical.
    pub fn kernel(&self) -> Vec<Mat> {
        let f = self.field;
        let Rref { mat, pivots } = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = Mat::zero(f, self.cols, 1);
            vec.set(free, 0, f.one());
            for (row, &col) in pivots.iter().enumerate() {
                let v = f.neg(mat.get(row, free));
                vec.set(col, 0, v);
            }
            basis.push(vec);
        }
        basis
    }

    /// Basis of the left kernel {x : x * self = 0}, returned as rows.
    pub fn left_kernel(&self) -> Vec<Mat> {
        self.transpose()
            .kernel()
            .into_iter()
            .map(|c| c.transpose())
            .collect()
    }

    /// Solve self * x = target for each target column. Returns the particular
    /// solution (free variables zero) per target, or None when inconsistent.
    pub fn solve(&self, targets: &[Mat]) -> Vec<Option<Mat>> {
        let f = self.field;
        let mut aug = self.clone();
        for t in targets {
            assert_eq!(t.rows, self.rows, "target length");
            assert_eq!(t.cols, 1, "targets are columns");
            aug = aug.hstack(t);
        }
        let Rref { mat, pivots } = aug.rref();
        let n = self.cols;
        targets
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let tcol = n + k;
                // Inconsistent iff some pivot row has zero in all original
                // columns but a nonzero entry in this target column.
                for row in 0..mat.rows {
                    let orig_zero = (0..n).all(|c| f.is_zero(mat.get(row, c)));
                    if orig_zero && !f.is_zero(mat.get(row, tcol)) {
                        return None;
                    }
                }
                let mut x = Mat::zero(f, n, 1);
                for (row, &col) in pivots.iter().enumerate() {
                    if col < n {
                        x.set(col, 0, mat.get(row, tcol).clone());
                    }
                }
                Some(x)
            })
            .collect()
    }

    /// Solve x * self = target (row conventions).
    pub fn solve_left(&self, target: &Mat) -> Option<Mat> {
        assert_eq!(target.cols, self.cols, "target width");
        assert_eq!(target.rows, 1, "target is a row");
        self.transpose()
            .solve(&[target.transpose()])
            .pop()
            .unwrap()
            .map(|c| c.transpose())
    }

    /// Coordinates C with C * basis = self, when every row of self lies in
    /// the row space of `basis`; None otherwise.
    pub fn in_terms_of_rows(&self, basis: &Mat) -> Option<Mat> {
        if self.rows == 0 {
            return Some(Mat::zero(self.field, 0, basis.rows));
        }
        assert_eq!(self.cols, basis.cols, "ambient dimension");
        let bt = basis.transpose();
        let targets: Vec<Mat> = (0..self.rows)
            .map(|r| Mat::from_rows(self.field, vec![self.row(r).to_vec()]).transpose())
            .collect();
        let sols = bt.solve(&targets);
        let mut rows = Vec::with_capacity(self.rows);
        for (r, s) in sols.into_iter().enumerate() {
            let x = s?;
            // solve() ignores inconsistencies only when reporting None;
            // double-check the reconstruction to be safe.
            let back = x.transpose().mul(basis);
            if back.row(0) != self.row(r) {
                return None;
            }
            rows.push(x.transpose().row(0).to_vec());
        }
        Some(Mat::from_rows(self.field, rows))
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n));
        let Rref { mat, pivots } = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(mat.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(n..2 * n).collect::<Vec<_>>(),
        ))
    }

    /// Minimal polynomial via Krylov iteration on the flattened powers:
    /// reduce I, M, M^2, ... against the span of the earlier powers until a
    /// dependency appears. The dependency coefficients are the (monic)
    /// minimal polynomial.
    pub fn minpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "square matrix");
        let f = self.field;
        let n = self.rows;
        if n == 0 {
            return Poly::one(f);
        }
        // Echelon basis of flattened powers with their polynomial witnesses.
        let mut reducers: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
        let mut power = Mat::identity(f, n);
        for k in 0..=n {
            let mut vec = power.entries.clone();
            let mut coeffs = vec![f.zero(); k + 1];
            coeffs[k] = f.one();
            for (rvec, pivot, rcoeffs) in &reducers {
                let factor = vec[*pivot].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (a, b) in vec.iter_mut().zip(rvec) {
                    *a = f.sub(a, &f.mul(&factor, b));
                }
                for (i, b) in rcoeffs.iter().enumerate() {
                    coeffs[i] = f.sub(&coeffs[i], &f.mul(&factor, b));
                }
            }
            match vec.iter().position(|e| !f.is_zero(e)) {
                None => return Poly::new(f, coeffs),
                Some(p) => {
                    let inv = f.inv(&vec[p]);
                    for a in vec.iter_mut() {
                        *a = f.mul(a, &inv);
                    }
                    for a in coeffs.iter_mut() {
                        *a = f.mul(a, &inv);
                    }
                    reducers.push((vec, p, coeffs));
                }
            }
            power = power.mul(self);
        }
        unreachable!("minimal polynomial has degree at most n");
    }
}

/// A subspace of K^n stored as a reduced row echelon basis with zero rows
/// dropped. Equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub field: FieldSpec,
    pub ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Mat::zero(field, 0, ambient),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace::from_rows(&Mat::identity(field, ambient))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Mat) -> Subspace {
        let Rref { mat, pivots } = m.rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..m.cols).collect();
        Subspace {
            field: m.field,
            ambient: m.cols,
            basis: mat.submatrix(&rows, &cols),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis_rows(&self) -> &Mat {
        &self.basis
    }

    pub fn contains_row(&self, v: &Mat) -> bool {
        assert_eq!(v.cols, self.ambient, "ambient dimension");
        self.basis.vstack(v).rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        self.basis.vstack(&other.basis).rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    /// Intersection of two row spaces: combinations a*U = b*V found through
    /// the left kernel of the stacked matrix [U; V].
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        let f = self.field;
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(f, self.ambient);
        }
        let stacked = self.basis.vstack(&other.basis);
        let kernels = stacked.left_kernel();
        let mut rows = Vec::new();
        for k in kernels {
            let a = k.submatrix(&[0], &(0..self.dim()).collect::<Vec<_>>());
            rows.push(a.mul(&self.basis).row(0).to_vec());
        }
        if rows.is_empty() {
            return Subspace::zero(f, self.ambient);
        }
        Subspace::from_rows(&Mat::from_rows(f, rows))
    }

    /// Coordinates of `v` relative to the echelon basis, or None if outside.
    pub fn coordinates(&self, v: &Mat) -> Option<Mat> {
        self.basis.solve_left(v).filter(|x| {
            // solve_left gives x with x * basis = v when consistent.
            x.mul(&self.basis) == *v
        })
    }
}
