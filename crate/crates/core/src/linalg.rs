//! Dense linear algebra over F_{q^m} and the rank-metric quantities built on
//! top of it: rank weight (support dimension over F_q), base-field column
//! rank, and row-space algebra for codes (sum, intersection, dual, Frobenius
//! image). Everything is exact; all parameters of interest fit in n ≤ 64, so
//! cubic algorithms are plenty.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::rng::DetRng;

pub type FieldVector = Vec<FieldElement>;

// ---------------------------------------------------------------------------
// matrices over F_{q^m}
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: ExtField,
    entries: Vec<FieldElement>, // row-major
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FieldMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }
}

impl FieldMatrix {
    pub fn zero(field: &ExtField, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix {
            rows,
            cols,
            field: field.clone(),
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &ExtField, n: usize) -> FieldMatrix {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<FieldVector>) -> Result<FieldMatrix> {
        let first = rows
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::DimensionMismatch("matrix needs at least one entry".into()))?;
        let field = first.field().clone();
        let cols = rows[0].len();
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in r {
                if e.field() != &field {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        Ok(FieldMatrix {
            rows: rows.len(),
            cols,
            field,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        field: &ExtField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> FieldMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FieldMatrix {
            rows,
            cols,
            field: field.clone(),
            entries,
        }
    }

    pub fn random(field: &ExtField, rows: usize, cols: usize, rng: &mut DetRng) -> FieldMatrix {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> FieldVector {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> FieldMatrix {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    /// Entry-wise Frobenius power (rows span the [s]-power of the row space).
    pub fn frobenius(&self, s: i64) -> FieldMatrix {
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self[(i, j)].frobenius(s)
        })
    }

    pub fn hstack(&self, right: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, right.rows, "hstack: row count mismatch");
        Self::from_fn(&self.field, self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                right[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, below: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, below.cols, "vstack: column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        FieldMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries,
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FieldMatrix {
        Self::from_fn(&self.field, r1 - r0, c1 - c0, |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    /// v·M for a row vector v of length rows().
    pub fn left_mul_vec(&self, v: &[FieldElement]) -> FieldVector {
        assert_eq!(v.len(), self.rows, "left_mul_vec: length mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let row = self.row(i);
            for (o, e) in out.iter_mut().zip(row) {
                o.mul_acc(vi, e);
            }
        }
        out
    }

    /// M·vᵀ for a vector v of length cols().
    pub fn right_mul_vec(&self, v: &[FieldElement]) -> FieldVector {
        assert_eq!(v.len(), self.cols, "right_mul_vec: length mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            for (e, vj) in row.iter().zip(v) {
                out[i].mul_acc(e, vj);
            }
        }
        out
    }

    /// Row-reduced echelon form with rank and pivot columns.
    pub fn rref(&self) -> (FieldMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let (rank, pivots) = m.rref_in_place();
        (m, rank, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // find a row with a nonzero entry in this column
            let found = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(pivot_row, r);
            // normalize the pivot row
            let inv = self[(pivot_row, col)].inv().expect("pivot is nonzero");
            for j in col..self.cols {
                let v = &self[(pivot_row, j)] * &inv;
                self[(pivot_row, j)] = v;
            }
            // eliminate everywhere else
            let prow = self.row(pivot_row).to_vec();
            for r in 0..self.rows {
                if r == pivot_row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let base = r * self.cols + j;
                    self.entries[base].mul_sub(&factor, &prow[j]);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (pivot_row, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn inverse(&self) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&FieldMatrix::identity(&self.field, n));
        let (red, _, pivots) = aug.rref();
        // invertible iff the left block carries all n pivots
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(red.submatrix(0, n, n, 2 * n))
    }

    /// Rows spanning the right kernel {x : M·xᵀ = 0}; cols − rank of them.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let (red, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FieldMatrix::zero(&self.field, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis[(bi, fc)] = self.field.one();
            for (pr, &pc) in pivots.iter().enumerate().take(rank) {
                basis[(bi, pc)] = -&red[(pr, fc)];
            }
        }
        basis
    }
}

impl Mul for &FieldMatrix {
    type Output = FieldMatrix;
    fn mul(self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product: inner dim mismatch");
        assert!(self.field == rhs.field, "matrix product: field mismatch");
        let mut out = FieldMatrix::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self.entries[i * self.cols + t];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(t);
                let orow = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    o.mul_acc(a, b);
                }
            }
        }
        out
    }
}

/// Solve x·A = b. Returns any solution; NoSolution when b is outside the
/// row space of A.
pub fn solve_right(a: &FieldMatrix, b: &[FieldElement]) -> Result<FieldVector> {
    if b.len() != a.cols() {
        return Err(Error::DimensionMismatch("solve_right: rhs length".into()));
    }
    // transpose to Aᵀ·xᵀ = bᵀ and reduce the augmented system
    let at = a.transpose();
    let bt = FieldMatrix::from_fn(a.field(), b.len(), 1, |i, _| b[i].clone());
    let aug = at.hstack(&bt);
    let (red, _, pivots) = aug.rref();
    if pivots.contains(&a.rows()) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![a.field().zero(); a.rows()];
    for (pr, &pc) in pivots.iter().enumerate() {
        x[pc] = red[(pr, a.rows())].clone();
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// vector helpers
// ---------------------------------------------------------------------------

pub fn vec_add(u: &[FieldElement], v: &[FieldElement]) -> FieldVector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[FieldElement], v: &[FieldElement]) -> FieldVector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_frobenius(v: &[FieldElement], s: i64) -> FieldVector {
    v.iter().map(|e| e.frobenius(s)).collect()
}

pub fn dot(u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    assert_eq!(u.len(), v.len(), "dot: length mismatch");
    let mut acc = u[0].field().zero();
    for (a, b) in u.iter().zip(v) {
        acc.mul_acc(a, b);
    }
    acc
}

// ---------------------------------------------------------------------------
// base-field expansion and rank-metric quantities
// ---------------------------------------------------------------------------

/// Gaussian elimination rank of a digit matrix over F_q.
pub fn rank_q(mut mat: Vec<Vec<u8>>, q: u8) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = {
            // Fermat inverse is overkill; small extended Euclid
            let mut t = (0i32, 1i32);
            let mut r = (q as i32, mat[rank][col] as i32);
            while r.1 != 0 {
                let quot = r.0 / r.1;
                t = (t.1, t.0 - quot * t.1);
                r = (r.1, r.0 - quot * r.1);
            }
            t.0.rem_euclid(q as i32) as u16
        };
        for j in col..cols {
            mat[rank][j] = ((mat[rank][j] as u16 * inv) % q as u16) as u8;
        }
        for r in 0..rows {
            if r == rank || mat[r][col] == 0 {
                continue;
            }
            let f = mat[r][col] as u16;
            for j in col..cols {
                let v = (mat[r][j] as u16 + (q as u16 - 1) * f * mat[rank][j] as u16) % q as u16;
                mat[r][j] = v as u8;
            }
        }
        rank += 1;
    }
    rank
}

/// m×n digit matrix over F_q; column j holds the coefficients of v[j].
pub fn expand_to_base(v: &[FieldElement]) -> Vec<Vec<u8>> {
    assert!(!v.is_empty(), "expand_to_base: empty vector");
    let m = v[0].field().m();
    let mut out = vec![vec![0u8; v.len()]; m];
    for (j, e) in v.iter().enumerate() {
        for (i, &d) in e.coeffs().iter().enumerate() {
            out[i][j] = d;
        }
    }
    out
}

/// dim over F_q of the span of the coordinates (the support).
pub fn rank_weight(v: &[FieldElement]) -> usize {
    if v.is_empty() {
        return 0;
    }
    let q = v[0].field().q();
    rank_q(expand_to_base(v), q)
}

/// Largest number of matrix columns linearly independent over F_q: the rank
/// of the (rows·m)×n expansion. Can exceed the rank over F_{q^m}.
pub fn column_rank_q(mat: &FieldMatrix) -> usize {
    let m = mat.field().m();
    let q = mat.field().q();
    let mut big = vec![vec![0u8; mat.cols()]; mat.rows() * m];
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            for (d, &c) in mat[(i, j)].coeffs().iter().enumerate() {
                big[i * m + d][j] = c;
            }
        }
    }
    rank_q(big, q)
}

// ---------------------------------------------------------------------------
// linear codes as row spaces
// ---------------------------------------------------------------------------

/// A subspace of F_{q^m}^n held as a row-reduced basis, so equal codes are
/// structurally equal matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    n: usize,
    basis: FieldMatrix, // RREF, full row rank (possibly 0 rows)
}

impl LinearCode {
    pub fn from_generators(gen: &FieldMatrix) -> LinearCode {
        let (red, rank, _) = gen.rref();
        LinearCode {
            n: gen.cols(),
            basis: red.submatrix(0, rank, 0, gen.cols()),
        }
    }

    pub fn zero_code(field: &ExtField, n: usize) -> LinearCode {
        LinearCode {
            n,
            basis: FieldMatrix::zero(field, 0, n),
        }
    }

    pub fn full_space(field: &ExtField, n: usize) -> LinearCode {
        LinearCode {
            n,
            basis: FieldMatrix::identity(field, n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> &ExtField {
        self.basis.field()
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if self.dim() == 0 {
            return v.iter().all(|e| e.is_zero());
        }
        solve_right(&self.basis, v).is_ok()
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("codes of different length".into()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        Ok(LinearCode::from_generators(
            &self.basis.vstack(&other.basis),
        ))
    }

    /// Dual under the Euclidean pairing: the right kernel of the basis.
    pub fn dual(&self) -> LinearCode {
        if self.dim() == 0 {
            return LinearCode::full_space(self.field(), self.n);
        }
        LinearCode::from_generators(&self.basis.kernel_basis())
    }

    /// A ∩ B computed through duality: (A^⊥ + B^⊥)^⊥.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// {x^[s] : x ∈ C}; a code of the same dimension.
    pub fn frobenius(&self, s: i64) -> LinearCode {
        if self.dim() == 0 {
            return self.clone();
        }
        LinearCode::from_generators(&self.basis.frobenius(s))
    }
}

// ---------------------------------------------------------------------------
// F_q-subspaces of the big field
// ---------------------------------------------------------------------------

/// A few elements of F_{q^m} that are linearly independent over F_q; spans
/// the small subspace V the column scrambler draws its entries from, and
/// error supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasisQ {
    elements: Vec<FieldElement>,
}

impl SubspaceBasisQ {
    pub fn from_elements(elements: Vec<FieldElement>) -> Result<SubspaceBasisQ> {
        if elements.is_empty() {
            return Err(Error::InvalidParams("empty basis".into()));
        }
        let q = elements[0].field().q();
        if rank_q(expand_to_base(&elements), q) != elements.len() {
            return Err(Error::InvalidParams(
                "elements are dependent over the base field".into(),
            ));
        }
        Ok(SubspaceBasisQ { elements })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn field(&self) -> &ExtField {
        self.elements[0].field()
    }

    /// Membership in the F_q-span.
    pub fn contains(&self, x: &FieldElement) -> bool {
        let q = self.field().q();
        let mut all = self.elements.clone();
        all.push(x.clone());
        rank_q(expand_to_base(&all), q) == self.elements.len()
    }

    /// Random element of the span (uniform over q^dim combinations).
    pub fn random_member(&self, rng: &mut DetRng) -> FieldElement {
        let field = self.field();
        let q = field.q();
        let mut acc = field.zero();
        for e in &self.elements {
            let c = field.from_base(rng.digit(q));
            acc.mul_acc(&c, e);
        }
        acc
    }
}

pub const SAMPLING_CAP: u32 = 100;

/// dim elements of F_{q^m} independent over F_q, by rejection.
pub fn sample_subspace(field: &ExtField, dim: usize, rng: &mut DetRng) -> Result<SubspaceBasisQ> {
    if dim == 0 || dim > field.m() {
        return Err(Error::InvalidParams(format!(
            "subspace dimension {dim} out of range 1..={}",
            field.m()
        )));
    }
    for _ in 0..SAMPLING_CAP {
        let cand: Vec<FieldElement> = (0..dim).map(|_| field.random(rng)).collect();
        if rank_q(expand_to_base(&cand), field.q()) == dim {
            return Ok(SubspaceBasisQ { elements: cand });
        }
    }
    Err(Error::SamplingFailure(SAMPLING_CAP))
}
