//! Exact dense linear algebra over the prime field F_p.
//!
//! Residues are stored canonically in `[0, p)` and the modulus fits in a
//! machine word, so products never overflow a `u64`. Elimination uses
//! first-nonzero pivoting; arithmetic is exact, so there is no pivot-size
//! heuristic.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range (need 2 <= p <= 2^31)")]
    OutOfRange(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_p, passed around by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FpError> {
        if !(2..=(1 << 31)).contains(&p) {
            return Err(FpError::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FpError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Order of a nonzero residue in the unit group.
    pub fn element_order(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p));
        let mut x = a % self.p;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Smallest generator of the unit group F_p^×.
    pub fn smallest_primitive(&self) -> u64 {
        (2..self.p)
            .find(|&a| self.element_order(a) == self.p - 1)
            .expect("unit group of a prime field is cyclic")
    }
}

/// A dense matrix over F_p, entries row-major and canonical in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: MatFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Self {
            field,
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, field.reduce(f(i, j)));
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn col_vec(field: PrimeField, v: &[u64]) -> Self {
        Self::from_fn(field, v.len(), 1, |i, _| v[i])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *a = self.field.add(*a, b);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *a = self.field.sub(*a, b);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.field.reduce(c);
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let f = self.field;
        let p = f.p();
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let src = k * rhs.cols;
                let dst = i * rhs.cols;
                for j in 0..rhs.cols {
                    let v = out.entries[dst + j] + a * rhs.entries[src + j] % p;
                    out.entries[dst + j] = if v >= p { v - p } else { v };
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), f.reduce(v[j])));
                }
                acc
            })
            .collect()
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn hstack(mats: &[&MatFp]) -> Self {
        assert!(!mats.is_empty());
        let field = mats[0].field;
        let rows = mats[0].rows;
        assert!(mats.iter().all(|m| m.rows == rows && m.field == field));
        let cols = mats.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for m in mats {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j));
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(mats: &[&MatFp]) -> Self {
        assert!(!mats.is_empty());
        let field = mats[0].field;
        let cols = mats[0].cols;
        assert!(mats.iter().all(|m| m.cols == cols && m.field == field));
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for m in mats {
            for i in 0..m.rows {
                out.entries[(off + i) * cols..(off + i + 1) * cols].copy_from_slice(m.row(i));
            }
            off += m.rows;
        }
        out
    }

    /// Kronecker product, blocks of `rhs` scaled by entries of `self`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zeros(f, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, f.mul(a, rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(mats: &[&MatFp]) -> Self {
        assert!(!mats.is_empty());
        let field = mats[0].field;
        let rows = mats.iter().map(|m| m.rows).sum();
        let cols = mats.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in mats {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j));
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let p = f.p();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, j) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..m.cols {
                    m.entries.swap(r * m.cols + k, pr * m.cols + k);
                }
            }
            let inv = f.inv(m.get(r, j));
            for k in j..m.cols {
                let v = m.get(r, k);
                m.set(r, k, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let c = m.get(i, j);
                if c == 0 {
                    continue;
                }
                let neg = f.neg(c);
                let (dst, src) = (i * m.cols, r * m.cols);
                for k in j..m.cols {
                    let v = (m.entries[dst + k] + neg * m.entries[src + k] % p) % p;
                    m.entries[dst + k] = v;
                }
            }
            pivots.push(j);
            r += 1;
        }
        Rref {
            mat: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space; `cols - rank` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let Rref { mat, pivots, .. } = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &j) in pivots.iter().enumerate() {
                v[j] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set[j].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[j] = 1;
            for (k, slot) in pivot_set.iter().enumerate() {
                if let Some(r) = slot {
                    vec[k] = f.neg(mat.get(*r, j));
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = self.field;
        let aug = MatFp::hstack(&[self, &MatFp::col_vec(f, b)]);
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &j) in pivots.iter().enumerate() {
            x[j] = mat.get(r, self.cols);
        }
        Some(x)
    }

    /// Determinant of a square matrix by elimination.
    pub fn determinant(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for j in 0..n {
            let Some(pr) = (j..n).find(|&i| m.get(i, j) != 0) else {
                return 0;
            };
            if pr != j {
                for k in 0..n {
                    m.entries.swap(j * n + k, pr * n + k);
                }
                det = f.neg(det);
            }
            let pivot = m.get(j, j);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for i in (j + 1)..n {
                let c = f.mul(m.get(i, j), inv);
                if c == 0 {
                    continue;
                }
                let neg = f.neg(c);
                for k in j..n {
                    let v = f.add(m.get(i, k), f.mul(neg, m.get(j, k)));
                    m.set(i, k, v);
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = MatFp::hstack(&[self, &MatFp::identity(self.field, n)]);
        let Rref { mat, pivots, .. } = aug.rref();
        // invertible exactly when the left block owns the first n pivots
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(self.field, n, n, |i, j| mat.get(i, j + n)))
    }

    /// Express each column of `vecs` in the column basis `basis`;
    /// returns `X` with `basis · X = vecs`, or `None` if some column
    /// falls outside the span.
    pub fn express_in_col_basis(basis: &MatFp, vecs: &MatFp) -> Option<MatFp> {
        assert_eq!(basis.rows, vecs.rows);
        let f = basis.field;
        let aug = MatFp::hstack(&[basis, vecs]);
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.iter().any(|&j| j >= basis.cols) {
            return None;
        }
        let mut x = MatFp::zeros(f, basis.cols, vecs.cols);
        for (r, &j) in pivots.iter().enumerate() {
            for c in 0..vecs.cols {
                x.set(j, c, mat.get(r, basis.cols + c));
            }
        }
        Some(x)
    }
}

/// Representatives completing `sub` to a basis of F_p^ambient, and the
/// projection onto quotient coordinates vanishing exactly on span(sub).
pub fn quotient_basis(field: PrimeField, ambient: usize, sub: &[Vec<u64>]) -> (Vec<Vec<u64>>, MatFp) {
    for v in sub {
        assert_eq!(v.len(), ambient, "sub vector outside the ambient space");
    }
    let sub_mat = if sub.is_empty() {
        MatFp::zeros(field, 1, ambient)
    } else {
        MatFp::from_rows(field, sub.to_vec())
    };
    let Rref { mat, rank, pivots } = sub_mat.rref();

    let reps: Vec<Vec<u64>> = (0..ambient)
        .filter(|j| !pivots.contains(j))
        .map(|j| {
            let mut e = vec![0u64; ambient];
            e[j] = 1;
            e
        })
        .collect();

    // Columns of `basis` are the echelonized sub basis followed by the
    // representatives; the projection is the bottom block of its inverse.
    let mut cols: Vec<Vec<u64>> = (0..rank).map(|i| mat.row(i).to_vec()).collect();
    cols.extend(reps.iter().cloned());
    let basis = MatFp::from_rows(field, cols).transpose();
    let q = reps.len();
    let proj = if ambient == 0 {
        MatFp::zeros(field, 0, 0)
    } else {
        let inv = basis.inverse().expect("completed set is a basis");
        MatFp::from_fn(field, q, ambient, |i, j| inv.get(rank + i, j))
    };
    (reps, proj)
}

/// Incrementally maintained row echelon basis of a subspace of F_p^cols.
/// Optionally carries `aug` bookkeeping coordinates per row (pivot search is
/// restricted to the first `cols` coordinates).
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    aug: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self::with_aug(field, cols, 0)
    }

    pub fn with_aug(field: PrimeField, cols: usize, aug: usize) -> Self {
        Self {
            field,
            cols,
            aug,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce_inplace(&self, v: &mut [u64]) {
        let f = self.field;
        for (row, &piv) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[piv];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &y) in v.iter_mut().zip(row.iter()) {
                *x = f.add(*x, f.mul(neg, y));
            }
        }
    }

    /// Insert a vector (length `cols + aug`); returns true if the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols + self.aug);
        let f = self.field;
        for x in v.iter_mut() {
            *x %= f.p();
        }
        self.reduce_inplace(&mut v);
        let Some(piv) = (0..self.cols).find(|&j| v[j] != 0) else {
            return false;
        };
        let inv = f.inv(v[piv]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // back-substitute into existing rows to keep the basis reduced
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in row.iter_mut().zip(v.iter()) {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > piv).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, piv);
        true
    }

    /// Would inserting `v` grow the rank? Non-destructive membership test.
    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.cols + self.aug);
        let mut w = v.to_vec();
        self.reduce_inplace(&mut w);
        w[..self.cols].iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn primality_is_checked() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(31).is_ok());
        assert_eq!(PrimeField::new(6), Err(FpError::NotPrime(6)));
        assert_eq!(PrimeField::new(1), Err(FpError::OutOfRange(1)));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(f(5).smallest_primitive(), 2);
        assert_eq!(f(7).smallest_primitive(), 3);
        assert_eq!(f(3).smallest_primitive(), 2);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = MatFp::identity(f(5), 3);
        let r = id.rref();
        assert_eq!(r.mat, id);
        assert_eq!(r.rank, 3);

        let z = MatFp::zeros(f(3), 2, 4);
        let r = z.rref();
        assert_eq!(r.mat, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_example() {
        // second row is 2 times the first over F_5
        let m = MatFp::from_rows(f(5), vec![vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        // hand row-reduction: R2 -= 2 R1 leaves [[1,2],[0,0]]
        assert_eq!(r.mat, MatFp::from_rows(f(5), vec![vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn rref_is_idempotent() {
        let m = MatFp::from_rows(f(7), vec![vec![3, 1, 4], vec![1, 5, 2], vec![4, 6, 6]]);
        let once = m.rref().mat;
        let twice = once.rref().mat;
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_examples() {
        assert!(MatFp::identity(f(5), 4).kernel_basis().is_empty());
        assert_eq!(MatFp::zeros(f(2), 1, 3).kernel_basis().len(), 3);

        let m = MatFp::from_rows(f(5), vec![vec![1, 2], vec![2, 4]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        // substitute back
        assert!(m.mul_vec(&ker[0]).iter().all(|&x| x == 0));
        // (3, 1) spans the same line
        let v = &ker[0];
        assert_eq!(f(5).mul(v[0], 1), f(5).mul(v[1], 3));
    }

    #[test]
    fn solve_examples() {
        let id = MatFp::identity(f(7), 3);
        assert_eq!(id.solve(&[4, 0, 6]), Some(vec![4, 0, 6]));

        let z = MatFp::zeros(f(3), 2, 2);
        assert_eq!(z.solve(&[1, 0]), None);

        let m = MatFp::from_rows(f(3), vec![vec![1, 1], vec![0, 1]]);
        let x = m.solve(&[2, 1]).unwrap();
        assert_eq!(x, vec![1, 1]);
        assert_eq!(m.mul_vec(&x), vec![2, 1]);
    }

    #[test]
    fn quotient_basis_examples() {
        // full sub basis: no representatives
        let (reps, proj) = quotient_basis(f(2), 2, &[vec![1, 0], vec![0, 1]]);
        assert!(reps.is_empty());
        assert_eq!(proj.rows(), 0);

        // empty sub: identity projection
        let (reps, proj) = quotient_basis(f(3), 2, &[]);
        assert_eq!(reps.len(), 2);
        assert!(proj.is_identity());

        // one line in F_2^2
        let (reps, proj) = quotient_basis(f(2), 2, &[vec![1, 1]]);
        assert_eq!(reps.len(), 1);
        assert_eq!(proj.mul_vec(&[1, 1]), vec![0]);
        assert_eq!(proj.rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = MatFp::from_rows(f(5), vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 2]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert!(MatFp::from_rows(f(5), vec![vec![1, 2], vec![2, 4]])
            .inverse()
            .is_none());
    }

    #[test]
    fn echelon_tracks_rank() {
        let mut e = Echelon::new(f(2), 3);
        assert!(e.insert(vec![1, 1, 0]));
        assert!(!e.insert(vec![1, 1, 0]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(e.contains(&[1, 0, 1]));
        assert!(!e.contains(&[1, 0, 0]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kron_shape_and_values() {
        let a = MatFp::from_rows(f(5), vec![vec![1, 2]]);
        let b = MatFp::from_rows(f(5), vec![vec![3], vec![4]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, MatFp::from_rows(f(5), vec![vec![3, 6 % 5], vec![4, 8 % 5]]));
    }
}
