//! Exact arithmetic over a prime field and dense matrix rank computation.
//!
//! Everything downstream (interpolation, rank verdicts, curve sampling)
//! reduces to arithmetic in `F_p` and Gaussian elimination, so this module
//! keeps both fully deterministic: elimination picks the first nonzero
//! pivot in row order, no randomization anywhere.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero modulo {0}")]
    DivisionByZero(u64),
    #[error("matrix shape {rows}x{cols} does not match {got} entries")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },
}

/// A prime field `F_p` for a machine-word prime `p`.
///
/// Elements are plain `u64` values in `[0, p)`; the field is just the
/// modulus plus the arithmetic on those representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_u64(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        let m = self.p as i64;
        (((x % m) + m) % m) as u64
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, x: u64) -> Result<u64, AlgebraError> {
        let x = x % self.p;
        if x == 0 {
            return Err(AlgebraError::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        let m = self.p as i128;
        Ok((((t0 % m) + m) % m) as u64)
    }

    pub fn div(&self, x: u64, y: u64) -> Result<u64, AlgebraError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Euler's criterion; 0 counts as a square.
    pub fn is_square(&self, x: u64) -> bool {
        let x = x % self.p;
        if x == 0 || self.p == 2 {
            return true;
        }
        self.pow(x, (self.p - 1) / 2) == 1
    }

    /// A square root of `x`, if one exists (Tonelli–Shanks).
    pub fn sqrt(&self, x: u64) -> Option<u64> {
        let x = x % self.p;
        if x == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(x);
        }
        if !self.is_square(x) {
            return None;
        }
        if self.p % 4 == 3 {
            return Some(self.pow(x, (self.p + 1) / 4));
        }
        // Tonelli–Shanks for p ≡ 1 (mod 4).
        let mut q = self.p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(x, q);
        let mut r = self.pow(x, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

/// Inverse of `x` modulo `p`; the free-function form used at call sites that
/// do not hold a [`PrimeField`].
pub fn field_inv(x: u64, p: u64) -> Result<u64, AlgebraError> {
    PrimeField::new(p)?.inv(x)
}

/// A dense matrix over a prime field, entries in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn new(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: Vec<u64>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch {
                rows,
                cols,
                got: entries.len(),
            });
        }
        let entries = entries.into_iter().map(|e| field.reduce_u64(e)).collect();
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = self.field.reduce_u64(v);
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn stack(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.cols != other.cols {
            return Err(AlgebraError::ShapeMismatch {
                rows: other.rows,
                cols: self.cols,
                got: other.entries.len(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix::new(self.field, self.rows + other.rows, self.cols, entries)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // First row with a nonzero entry in this column.
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    let a = self.get(row, j);
                    let b = self.get(pr, j);
                    self.set(row, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for j in 0..self.cols {
                        let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank over the prime field by exact elimination. Deterministic: the
    /// pivot search always takes the first nonzero entry in row order.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// A basis of the right nullspace, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut work = self.clone();
        let pivots = work.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (col, &pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    vec[col] = f.neg(work.get(r, free));
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }
}

/// Rank of a matrix; thin wrapper over [`Matrix::rank`].
pub fn mat_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Univariate polynomials over `F_p`, coefficients ascending. Only the small
/// toolbox the geometry layer needs: degree, evaluation, derivative, gcd.
pub mod poly {
    use super::PrimeField;

    pub fn deg(c: &[u64]) -> Option<usize> {
        c.iter().rposition(|&x| x != 0)
    }

    pub fn eval(f: PrimeField, c: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &ci in c.iter().rev() {
            acc = f.add(f.mul(acc, x), ci);
        }
        acc
    }

    pub fn deriv(f: PrimeField, c: &[u64]) -> Vec<u64> {
        if c.len() <= 1 {
            return vec![0];
        }
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &ci)| f.mul(f.reduce_u64(i as u64), ci))
            .collect()
    }

    fn trim(mut c: Vec<u64>) -> Vec<u64> {
        while c.len() > 1 && *c.last().unwrap() == 0 {
            c.pop();
        }
        c
    }

    fn rem(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let db = deg(b).expect("division by zero polynomial");
        let mut r = a.to_vec();
        let lead_inv = f.inv(b[db]).unwrap();
        while let Some(dr) = deg(&r) {
            if dr < db {
                break;
            }
            let coef = f.mul(r[dr], lead_inv);
            for i in 0..=db {
                let v = f.sub(r[dr - db + i], f.mul(coef, b[i]));
                r[dr - db + i] = v;
            }
        }
        trim(r)
    }

    pub fn gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while deg(&b).is_some() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// True when the polynomial has no repeated roots (gcd with derivative
    /// is constant). Constant inputs count as squarefree.
    pub fn is_squarefree(f: PrimeField, c: &[u64]) -> bool {
        match deg(c) {
            None | Some(0) => true,
            Some(_) => {
                let d = deriv(f, c);
                if deg(&d).is_none() {
                    // Derivative vanished identically: p divides every
                    // exponent, so the polynomial is a p-th power.
                    return false;
                }
                deg(&gcd(f, c, &d)) == Some(0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    // Independent inverse oracle: Fermat's little theorem.
    fn inv_oracle(field: PrimeField, x: u64) -> u64 {
        field.pow(x, field.modulus() - 2)
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(10006), Err(AlgebraError::NotPrime(10006)));
        assert_eq!(PrimeField::new(1), Err(AlgebraError::NotPrime(1)));
        assert!(PrimeField::new(10007).is_ok());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f(7).inv(1).unwrap(), 1);
        assert_eq!(f(5).inv(2).unwrap(), 3);
        let field = f(10007);
        let y = field.inv(3).unwrap();
        assert_eq!(field.mul(3, y), 1);
        assert_eq!(y, inv_oracle(field, 3));
        assert_eq!(y, 3336);
        assert_eq!(
            field.inv(0),
            Err(AlgebraError::DivisionByZero(10007))
        );
        assert_eq!(field_inv(2, 5).unwrap(), 3);
    }

    #[test]
    fn sqrt_roundtrip() {
        for p in [10007u64, 32003, 101, 13] {
            let field = f(p);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..200 {
                let x: u64 = rng.random_range(0..p);
                let sq = field.mul(x, x);
                let r = field.sqrt(sq).expect("square must have a root");
                assert_eq!(field.mul(r, r), sq);
            }
            // Non-squares have no root.
            let mut non_square = None;
            for x in 2..p {
                if !field.is_square(x) {
                    non_square = Some(x);
                    break;
                }
            }
            assert_eq!(field.sqrt(non_square.unwrap()), None);
        }
    }

    #[test]
    fn rank_identity_and_zero() {
        let field = f(10007);
        assert_eq!(Matrix::identity(field, 3).rank(), 3);
        assert_eq!(Matrix::zeros(field, 4, 7).rank(), 0);
        assert_eq!(Matrix::zeros(field, 0, 0).rank(), 0);
    }

    // 4x4 determinant by cofactor expansion, independent of elimination.
    fn det4(field: PrimeField, m: &Matrix) -> u64 {
        fn det_rec(field: PrimeField, rows: &[Vec<u64>]) -> u64 {
            let n = rows.len();
            if n == 1 {
                return rows[0][0];
            }
            let mut acc = 0u64;
            for (j, &top) in rows[0].iter().enumerate() {
                if top == 0 {
                    continue;
                }
                let minor: Vec<Vec<u64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = field.mul(top, det_rec(field, &minor));
                acc = if j % 2 == 0 {
                    field.add(acc, term)
                } else {
                    field.sub(acc, term)
                };
            }
            acc
        }
        let rows: Vec<Vec<u64>> = (0..4).map(|i| (0..4).map(|j| m.get(i, j)).collect()).collect();
        det_rec(field, &rows)
    }

    #[test]
    fn vandermonde_rank_matches_determinant_oracle() {
        let field = f(10007);
        let nodes = [2u64, 3, 5, 11];
        let mut entries = Vec::new();
        for &x in &nodes {
            for k in 0..4u64 {
                entries.push(field.pow(x, k));
            }
        }
        let m = Matrix::new(field, 4, 4, entries).unwrap();
        assert_ne!(det4(field, &m), 0);
        assert_eq!(m.rank(), 4);
        assert_eq!(mat_rank(&m), 4);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let field = f(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rows = rng.random_range(1..6usize);
            let cols = rng.random_range(1..8usize);
            let entries: Vec<u64> = (0..rows * cols).map(|_| rng.random_range(0..10007)).collect();
            let m = Matrix::new(field, rows, cols, entries).unwrap();
            let ns = m.nullspace();
            assert_eq!(m.rank() + ns.len(), cols);
            for v in &ns {
                assert!(m.apply(v).iter().all(|&x| x == 0));
            }
        }
    }

    proptest! {
        #[test]
        fn rank_bounded_and_permutation_invariant(seed in 0u64..500) {
            let field = f(101);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = rng.random_range(1..7usize);
            let cols = rng.random_range(1..7usize);
            let entries: Vec<u64> = (0..rows*cols).map(|_| rng.random_range(0..101)).collect();
            let m = Matrix::new(field, rows, cols, entries.clone()).unwrap();
            let r = m.rank();
            prop_assert!(r <= rows.min(cols));

            // Permute rows and columns; rank must not move.
            let mut row_perm: Vec<usize> = (0..rows).collect();
            let mut col_perm: Vec<usize> = (0..cols).collect();
            for i in (1..rows).rev() {
                row_perm.swap(i, rng.random_range(0..=i));
            }
            for j in (1..cols).rev() {
                col_perm.swap(j, rng.random_range(0..=j));
            }
            let mut permuted = Matrix::zeros(field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    permuted.set(i, j, m.get(row_perm[i], col_perm[j]));
                }
            }
            prop_assert_eq!(permuted.rank(), r);
        }

        #[test]
        fn stacked_rank_subadditive(seed in 0u64..200) {
            let field = f(101);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cols = rng.random_range(1..6usize);
            let ra = rng.random_range(1..5usize);
            let rb = rng.random_range(1..5usize);
            let ea: Vec<u64> = (0..ra*cols).map(|_| rng.random_range(0..101)).collect();
            let eb: Vec<u64> = (0..rb*cols).map(|_| rng.random_range(0..101)).collect();
            let a = Matrix::new(field, ra, cols, ea).unwrap();
            let b = Matrix::new(field, rb, cols, eb).unwrap();
            let stacked = a.stack(&b).unwrap();
            prop_assert!(a.rank() + b.rank() >= stacked.rank());
        }
    }

    #[test]
    fn poly_squarefree_detection() {
        let field = f(10007);
        // (x-1)(x-2) squarefree; (x-1)^2 not.
        let sf = vec![2, field.neg(3), 1];
        let nsf = vec![1, field.neg(2), 1];
        assert!(poly::is_squarefree(field, &sf));
        assert!(!poly::is_squarefree(field, &nsf));
        assert!(poly::is_squarefree(field, &[5]));
    }
}
