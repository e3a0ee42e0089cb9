//! Exact integer linear algebra.
//!
//! Lattices are always column spans: a `LatticeMatrix` with `n` rows and `k`
//! columns describes the sublattice of `Z^n` generated by its columns. All
//! arithmetic is done with arbitrary precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix data has {found} entries, expected {expected}")]
    BadShape { expected: usize, found: usize },
    #[error("radius bound {bound} is below the l1 norm {norm} of the target")]
    RadiusBelowTarget { bound: BigInt, norm: BigInt },
    #[error("optimality certificate needs coefficient radius {needed}, bound is {bound}")]
    RadiusExceeded { needed: BigInt, bound: BigInt },
}

/// A vector of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [BigInt] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn l1(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }

    /// Gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * k;
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// A dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl LatticeMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LatticeError> {
        if data.len() != rows * cols {
            return Err(LatticeError::BadShape { expected: rows * cols, found: data.len() });
        }
        Ok(LatticeMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LatticeMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        LatticeMatrix { rows: r, cols: c, data }
    }

    pub fn from_columns(dim: usize, columns: &[LatticeVector]) -> Result<Self, LatticeError> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.dim() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, found: col.dim() });
            }
            for i in 0..dim {
                m.data[i * m.cols + j] = col.0[i].clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn columns(&self) -> Vec<LatticeVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> LatticeVector {
        LatticeVector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        if self.cols != v.dim() {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        Ok(LatticeVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v.0[j]).sum())
                .collect(),
        ))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.rows != other.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.rows, &cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols: Vec<LatticeVector> = idx.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(self.rows, &cols).expect("columns share the row count")
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).0).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Some(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Some(d) if d.abs().is_one())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Column-style Hermite normal form: returns `(h, u)` with `m·u = h`, `u`
/// unimodular, `h` in column echelon form with positive pivots and the
/// entries to the left of each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &LatticeMatrix) -> (LatticeMatrix, LatticeMatrix) {
    let mut h = m.clone();
    let mut u = LatticeMatrix::identity(m.cols);
    let mut pivot_col = 0;
    for r in 0..h.rows {
        if pivot_col >= h.cols {
            break;
        }
        loop {
            // smallest nonzero entry in this row among the unfinished columns
            let best = (pivot_col..h.cols)
                .filter(|&c| !h.get(r, c).is_zero())
                .min_by(|&a, &b| h.get(r, a).abs().cmp(&h.get(r, b).abs()));
            let Some(best) = best else { break };
            h.swap_cols(pivot_col, best);
            u.swap_cols(pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..h.cols {
                if h.get(r, c).is_zero() {
                    continue;
                }
                let q = -h.get(r, c).div_floor(h.get(r, pivot_col));
                h.add_col(c, pivot_col, &q);
                u.add_col(c, pivot_col, &q);
                if !h.get(r, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, pivot_col).is_zero() {
            continue;
        }
        if h.get(r, pivot_col).is_negative() {
            h.negate_col(pivot_col);
            u.negate_col(pivot_col);
        }
        let p = h.get(r, pivot_col).clone();
        for c in 0..pivot_col {
            let q = -h.get(r, c).div_floor(&p);
            if !q.is_zero() {
                h.add_col(c, pivot_col, &q);
                u.add_col(c, pivot_col, &q);
            }
        }
        pivot_col += 1;
    }
    (h, u)
}

/// Number of nonzero columns of a column echelon form.
fn echelon_rank(h: &LatticeMatrix) -> usize {
    (0..h.cols).filter(|&c| !h.column(c).is_zero()).count()
}

pub fn rank(m: &LatticeMatrix) -> usize {
    echelon_rank(&hnf(m).0)
}

/// Basis (as columns) of the integer kernel `{x : m·x = 0}`. The kernel is
/// always a saturated sublattice.
pub fn kernel(m: &LatticeMatrix) -> LatticeMatrix {
    let (h, u) = hnf(m);
    let zero_cols: Vec<usize> = (0..h.cols).filter(|&c| h.column(c).is_zero()).collect();
    u.select_columns(&zero_cols)
}

/// A basis for the column span of `m` (the nonzero columns of its HNF).
pub fn column_basis(m: &LatticeMatrix) -> LatticeMatrix {
    let (h, _) = hnf(m);
    let nz: Vec<usize> = (0..h.cols).filter(|&c| !h.column(c).is_zero()).collect();
    h.select_columns(&nz)
}

/// Smith normal form: returns `(d, u, v)` with `u·m·v = d`, `u` and `v`
/// unimodular and `d` diagonal with `d₁ | d₂ | …` and nonnegative entries.
pub fn snf(m: &LatticeMatrix) -> (LatticeMatrix, LatticeMatrix, LatticeMatrix) {
    let mut d = m.clone();
    let mut u = LatticeMatrix::identity(m.rows);
    let mut v = LatticeMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        let pivot = (t..d.rows)
            .flat_map(|r| (t..d.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !d.get(r, c).is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| d.get(r1, c1).abs().cmp(&d.get(r2, c2).abs()));
        let Some((pr, pc)) = pivot else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        let mut clean = true;
        for r in t + 1..d.rows {
            if d.get(r, t).is_zero() {
                continue;
            }
            let q = -d.get(r, t).div_floor(d.get(t, t));
            d.add_row(r, t, &q);
            u.add_row(r, t, &q);
            if !d.get(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..d.cols {
            if d.get(t, c).is_zero() {
                continue;
            }
            let q = -d.get(t, c).div_floor(d.get(t, t));
            d.add_col(c, t, &q);
            v.add_col(c, t, &q);
            if !d.get(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the remaining block
        let p = d.get(t, t).clone();
        let offender = (t + 1..d.rows)
            .flat_map(|r| (t + 1..d.cols).map(move |c| (r, c)))
            .find(|&(r, c)| !d.get(r, c).is_multiple_of(&p));
        if let Some((r, _)) = offender {
            let one = BigInt::one();
            d.add_row(t, r, &one);
            u.add_row(t, r, &one);
            continue;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (d, u, v)
}

/// The nonzero diagonal entries of the Smith normal form.
pub fn invariant_factors(m: &LatticeMatrix) -> Vec<BigInt> {
    let (d, _, _) = snf(m);
    (0..d.rows.min(d.cols)).map(|i| d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
}

/// Solves `a·x = b` over the integers.
pub fn solve_integer(a: &LatticeMatrix, b: &LatticeVector) -> Result<Option<LatticeVector>, LatticeError> {
    if b.dim() != a.rows {
        return Err(LatticeError::DimensionMismatch { expected: a.rows, found: b.dim() });
    }
    let (d, u, v) = snf(a);
    let c = u.mul_vec(b)?;
    let mut y = LatticeVector::zeros(a.cols);
    for i in 0..a.rows {
        let di = if i < a.cols { d.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !c.0[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = c.0[i].div_rem(&di);
            if !r.is_zero() {
                return Ok(None);
            }
            y.0[i] = q;
        }
    }
    let x = v.mul_vec(&y)?;
    debug_assert_eq!(&a.mul_vec(&x)?, b);
    Ok(Some(x))
}

/// A basis of `span(a) ∩ span(b)`.
pub fn lattice_intersection(a: &LatticeMatrix, b: &LatticeMatrix) -> Result<LatticeMatrix, LatticeError> {
    if a.rows != b.rows {
        return Err(LatticeError::DimensionMismatch { expected: a.rows, found: b.rows });
    }
    let mut neg_b = b.clone();
    for x in neg_b.data.iter_mut() {
        *x = -&*x;
    }
    let stacked = a.hstack(&neg_b)?;
    let ker = kernel(&stacked);
    // keep the coefficients on `a`
    let mut top = LatticeMatrix::zeros(a.cols, ker.cols);
    for i in 0..a.cols {
        for j in 0..ker.cols {
            top.set(i, j, ker.get(i, j).clone());
        }
    }
    let span = a.mul(&top)?;
    Ok(column_basis(&span))
}

/// Coordinates of a coset in `Z^n / L`: free coordinates followed by torsion
/// coordinates reduced into `[0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientCoords {
    pub free: LatticeVector,
    pub torsion: LatticeVector,
}

impl QuotientCoords {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.torsion.is_zero()
    }
}

impl fmt::Display for QuotientCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free=[{}] torsion=[{}]", self.free, self.torsion)
    }
}

/// The quotient `Z^n / span(sub)`, presented through the Smith normal form
/// of `sub`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub ambient_dim: usize,
    pub sublattice_basis: LatticeMatrix,
    /// Nonzero invariant factors of the sublattice, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    /// Rows of the left Smith transform; `projection·x` gives the quotient
    /// coordinates (first the nontrivial torsion rows, then the free rows).
    pub projection: LatticeMatrix,
    /// Modulus for each torsion row of `projection`.
    pub torsion_moduli: Vec<BigInt>,
}

impl QuotientStructure {
    pub fn free_rank(&self) -> usize {
        self.ambient_dim - self.invariant_factors.len()
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion_moduli
    }

    pub fn project(&self, x: &LatticeVector) -> Result<QuotientCoords, LatticeError> {
        let y = self.projection.mul_vec(x)?;
        let nt = self.torsion_moduli.len();
        let torsion = LatticeVector(
            y.0[..nt].iter().zip(&self.torsion_moduli).map(|(c, m)| c.mod_floor(m)).collect(),
        );
        let free = LatticeVector(y.0[nt..].to_vec());
        Ok(QuotientCoords { free, torsion })
    }

    /// Whether `x` lies in the sublattice.
    pub fn contains(&self, x: &LatticeVector) -> Result<bool, LatticeError> {
        Ok(self.project(x)?.is_zero())
    }
}

pub fn quotient_structure(sub: &LatticeMatrix, ambient_dim: usize) -> Result<QuotientStructure, LatticeError> {
    if sub.rows != ambient_dim {
        return Err(LatticeError::DimensionMismatch { expected: ambient_dim, found: sub.rows });
    }
    let (d, u, _) = snf(sub);
    let diag: Vec<BigInt> = (0..d.rows.min(d.cols)).map(|i| d.get(i, i).clone()).collect();
    let r = diag.iter().filter(|x| !x.is_zero()).count();
    let mut rows = Vec::new();
    let mut torsion_moduli = Vec::new();
    for (i, di) in diag.iter().enumerate().take(r) {
        if !di.is_one() {
            rows.push(u.row(i));
            torsion_moduli.push(di.clone());
        }
    }
    for i in r..ambient_dim {
        rows.push(u.row(i));
    }
    let projection = LatticeMatrix::from_columns(ambient_dim, &rows)?.transpose();
    Ok(QuotientStructure {
        ambient_dim,
        sublattice_basis: sub.clone(),
        invariant_factors: diag.into_iter().take(r).collect(),
        projection,
        torsion_moduli,
    })
}

fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Rational left inverse `(EᵀE)⁻¹Eᵀ` of a full column rank matrix.
fn rational_left_inverse(e: &LatticeMatrix) -> Vec<Vec<BigRational>> {
    let r = e.cols;
    let n = e.rows;
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let et = e.transpose();
    let gram = et.mul(e).expect("shapes agree");
    // Gauss-Jordan on [gram | Eᵀ]
    let mut aug: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..r).map(|j| q(gram.get(i, j))).collect();
            row.extend((0..n).map(|j| q(et.get(i, j))));
            row
        })
        .collect();
    for col in 0..r {
        let p = (col..r).find(|&i| !aug[i][col].is_zero()).expect("full column rank");
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..r {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[col].clone();
                for (x, p) in aug[i].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[r..].to_vec()).collect()
}

struct CosetSearch<'a> {
    basis: &'a [LatticeVector],
    /// rows whose value is final once columns `0..k` are fixed
    closed_after: Vec<Vec<usize>>,
    bounds: Vec<BigInt>,
    best_cost: BigInt,
    best: LatticeVector,
}

impl CosetSearch<'_> {
    fn run(&mut self, k: usize, residual: &mut LatticeVector, partial_cost: BigInt) {
        if partial_cost > self.best_cost {
            return;
        }
        if k == self.basis.len() {
            let cost = residual.l1();
            let better = match cost.cmp(&self.best_cost) {
                Ordering::Less => true,
                Ordering::Equal => lex_cmp(residual.coords(), self.best.coords()) == Ordering::Less,
                Ordering::Greater => false,
            };
            if better {
                self.best_cost = cost;
                self.best = residual.clone();
            }
            return;
        }
        let bound = self.bounds[k].clone();
        let col = self.basis[k].clone();
        let one = BigInt::one();
        // residual = t - E·λ; start at λ_k = -bound
        residual.add_scaled(&col, &bound);
        let mut lambda = -&bound;
        while lambda <= bound {
            let extra: BigInt = self.closed_after[k].iter().map(|&i| residual.coords()[i].abs()).sum();
            self.run(k + 1, residual, &partial_cost + extra);
            residual.add_scaled(&col, &-&one);
            lambda += &one;
        }
        // undo: we subtracted (2·bound + 1) copies after adding `bound`
        residual.add_scaled(&col, &(&bound + &one));
    }
}

/// The ℓ1-minimal representative of `target + span(sub)`, ties broken by the
/// lexicographically smallest coordinate vector.
///
/// The search enumerates sublattice coefficients inside a box that provably
/// contains every improving coefficient vector (derived from a rational left
/// inverse of the sublattice basis). `radius_bound` caps the box; if the
/// certificate needs a larger box the call fails with
/// [`LatticeError::RadiusExceeded`].
pub fn min_l1_coset_rep(
    target: &LatticeVector,
    sub: &LatticeMatrix,
    radius_bound: &BigInt,
) -> Result<LatticeVector, LatticeError> {
    if target.dim() != sub.rows {
        return Err(LatticeError::DimensionMismatch { expected: sub.rows, found: target.dim() });
    }
    let norm = target.l1();
    if radius_bound < &norm {
        return Err(LatticeError::RadiusBelowTarget { bound: radius_bound.clone(), norm });
    }
    let basis_m = column_basis(sub);
    if basis_m.cols == 0 {
        return Ok(target.clone());
    }
    // Any improving λ has ‖Eλ‖₁ ≤ ‖t‖₁ + ‖t − Eλ‖₁ ≤ 2‖t‖₁, hence
    // |λ_k| ≤ max_j |L_kj| · 2‖t‖₁ for a left inverse L.
    let left = rational_left_inverse(&basis_m);
    let two_norm = BigRational::from_integer(&norm * 2);
    let bounds: Vec<BigInt> = left
        .iter()
        .map(|row| {
            let m = row.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero);
            (m * &two_norm).floor().to_integer()
        })
        .collect();
    if let Some(needed) = bounds.iter().max() {
        if needed > radius_bound {
            return Err(LatticeError::RadiusExceeded { needed: needed.clone(), bound: radius_bound.clone() });
        }
    }
    let basis = basis_m.columns();
    let n = target.dim();
    let last_col: Vec<Option<usize>> = (0..n)
        .map(|i| (0..basis.len()).rev().find(|&c| !basis[c].coords()[i].is_zero()))
        .collect();
    let mut closed_after = vec![Vec::new(); basis.len()];
    let mut untouched_cost = BigInt::zero();
    for (i, lc) in last_col.iter().enumerate() {
        match lc {
            Some(c) => closed_after[*c].push(i),
            None => untouched_cost += target.coords()[i].abs(),
        }
    }
    let mut search = CosetSearch {
        basis: &basis,
        closed_after,
        bounds,
        best_cost: norm,
        best: target.clone(),
    };
    let mut residual = target.clone();
    search.run(0, &mut residual, untouched_cost);
    Ok(search.best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn hnf_examples() {
        let id = LatticeMatrix::identity(3);
        let (h, u) = hnf(&id);
        assert!(h.is_identity());
        assert!(u.is_identity());

        let m = LatticeMatrix::from_rows(&[vec![2, 4], vec![0, 2]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, LatticeMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(m.mul(&u).unwrap(), h);
        assert!(u.is_unimodular());

        let z = LatticeMatrix::from_rows(&[vec![0]]);
        assert!(hnf(&z).0.is_zero());

        let empty = LatticeMatrix::zeros(0, 0);
        let (h, u) = hnf(&empty);
        assert_eq!((h.rows(), h.cols(), u.rows()), (0, 0, 0));
    }

    #[test]
    fn snf_examples() {
        let m = LatticeMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let (d, u, w) = snf(&m);
        assert_eq!(d, LatticeMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(u.mul(&m).unwrap().mul(&w).unwrap(), d);
        assert!(snf(&LatticeMatrix::identity(4)).0.is_identity());
        assert!(snf(&LatticeMatrix::zeros(2, 3)).0.is_zero());
    }

    #[test]
    fn solve_examples() {
        let id = LatticeMatrix::identity(2);
        assert_eq!(solve_integer(&id, &v(&[5, -2])).unwrap(), Some(v(&[5, -2])));
        let two = LatticeMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_integer(&two, &v(&[3])).unwrap(), None);
        let a = LatticeMatrix::from_rows(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(solve_integer(&a, &v(&[3, 4])).unwrap(), Some(v(&[1, 2])));
        assert!(matches!(solve_integer(&a, &v(&[1])), Err(LatticeError::DimensionMismatch { .. })));
    }

    #[test]
    fn intersection_examples() {
        let a = LatticeMatrix::from_rows(&[vec![1], vec![0]]);
        let b = LatticeMatrix::from_rows(&[vec![1, 0], vec![2, 1]]);
        let i = lattice_intersection(&a, &b).unwrap();
        assert_eq!(i.columns(), vec![v(&[1, 0])]);

        let id = LatticeMatrix::identity(2);
        let i = lattice_intersection(&id, &id).unwrap();
        assert!(i.is_identity());

        let e2 = LatticeMatrix::from_rows(&[vec![0], vec![1]]);
        assert_eq!(lattice_intersection(&a, &e2).unwrap().cols(), 0);

        let bad = LatticeMatrix::identity(3);
        assert!(lattice_intersection(&a, &bad).is_err());
    }

    #[test]
    fn quotient_examples() {
        let two = LatticeMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let q = quotient_structure(&two, 2).unwrap();
        assert_eq!(q.invariant_factors, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(q.free_rank(), 0);
        assert!(q.contains(&v(&[2, -4])).unwrap());
        assert!(!q.contains(&v(&[1, 0])).unwrap());

        let empty = LatticeMatrix::zeros(3, 0);
        let q = quotient_structure(&empty, 3).unwrap();
        assert_eq!(q.free_rank(), 3);
        assert!(q.projection.is_identity());

        let e1 = LatticeMatrix::from_rows(&[vec![1], vec![0]]);
        assert_eq!(quotient_structure(&e1, 2).unwrap().free_rank(), 1);
    }

    #[test]
    fn quotient_projection_kills_sublattice() {
        let sub = LatticeMatrix::from_rows(&[vec![2, 4, 0], vec![0, 6, 3], vec![4, 0, 9]]);
        let q = quotient_structure(&sub, 3).unwrap();
        for col in sub.columns() {
            assert!(q.contains(&col).unwrap());
        }
    }

    #[test]
    fn min_l1_examples() {
        let bound = BigInt::from(10);
        let empty = LatticeMatrix::zeros(2, 0);
        assert_eq!(min_l1_coset_rep(&v(&[3, 1]), &empty, &bound).unwrap(), v(&[3, 1]));

        let diag = LatticeMatrix::from_rows(&[vec![1], vec![1]]);
        let rep = min_l1_coset_rep(&v(&[3, 0]), &diag, &bound).unwrap();
        // exhaustive: (3 - k, -k) for |k| <= 3
        let brute = (-3i64..=3)
            .map(|k| v(&[3 - k, -k]))
            .min_by(|a, b| a.l1().cmp(&b.l1()).then(lex_cmp(a.coords(), b.coords())))
            .unwrap();
        assert_eq!(rep, brute);
        assert_eq!(rep, v(&[0, -3]));

        let rep = min_l1_coset_rep(&v(&[2, 2]), &diag, &bound).unwrap();
        assert!(rep.is_zero());
    }

    #[test]
    fn min_l1_errors() {
        let diag = LatticeMatrix::from_rows(&[vec![1], vec![1]]);
        assert!(matches!(
            min_l1_coset_rep(&v(&[3, 0]), &diag, &BigInt::from(2)),
            Err(LatticeError::RadiusBelowTarget { .. })
        ));
        // left inverse (1, 0): the certificate box is |λ| <= 1 * 2 * 5 = 10
        let long = LatticeMatrix::from_rows(&[vec![1], vec![0]]);
        assert!(matches!(
            min_l1_coset_rep(&v(&[5, 0]), &long, &BigInt::from(5)),
            Err(LatticeError::RadiusExceeded { .. })
        ));
    }

    #[test]
    fn determinant_small() {
        let m = LatticeMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), Some(BigInt::from(18)));
        let s = LatticeMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.determinant(), Some(BigInt::from(-1)));
    }
}
