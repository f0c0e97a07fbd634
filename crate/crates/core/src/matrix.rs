//! Dense matrices over exact rings.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNum;

/// Exact commutative ring with cloned, by-reference arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn try_inv(&self) -> Option<Self>;
    /// Heuristic cost of inverting; elimination prefers cheap pivots.
    fn pivot_cost(&self) -> usize {
        1
    }
}

impl Ring for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Field for CycNum {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn pivot_cost(&self) -> usize {
        self.inversion_cost()
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows.start + r, cols.start + c)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        *x == T::one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::<T>::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = out[(r, c)].add_ref(&a.mul_ref(b));
                    out[(r, c)] = t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Matrix::<T>::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination. Requires exact
    /// division, so it is only offered for integral domains whose division
    /// is supplied by `div_exact`.
    pub fn det_bareiss(&self, div_exact: impl Fn(&T, &T) -> T) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[(i, j)].mul_ref(&a[(k, k)]).sub_ref(&a[(i, k)].mul_ref(&a[(k, j)]));
                    a[(i, j)] = div_exact(&t, &prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_flip {
            d.neg_ref()
        } else {
            d
        }
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
    /// Parity of row swaps.
    pub swaps: usize,
    /// Product of the raw pivots (determinant up to swap sign, square case).
    pub pivot_product: T,
}

impl<T: Field> Matrix<T> {
    /// Gauss–Jordan elimination choosing the cheapest available pivot.
    pub fn echelon(&self) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prod = T::one();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let best = (row..a.rows)
                .filter(|&r| !a[(r, col)].is_zero())
                .min_by_key(|&r| a[(r, col)].pivot_cost());
            let Some(p) = best else { continue };
            if p != row {
                a.swap_rows(p, row);
                swaps += 1;
            }
            let piv = a[(row, col)].clone();
            prod = prod.mul_ref(&piv);
            let inv = piv.try_inv().expect("nonzero pivot is invertible");
            for c in col..a.cols {
                let v = a[(row, c)].mul_ref(&inv);
                a[(row, c)] = v;
            }
            for r in 0..a.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in col..a.cols {
                    if a[(row, c)].is_zero() {
                        continue;
                    }
                    let v = a[(r, c)].sub_ref(&f.mul_ref(&a[(row, c)]));
                    a[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: a, pivots, swaps, pivot_product: prod }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let e = self.echelon();
        if e.pivots.len() < self.rows {
            return T::zero();
        }
        if e.swaps % 2 == 1 {
            e.pivot_product.neg_ref()
        } else {
            e.pivot_product
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::<T>::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = T::one();
        }
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(e.reduced.submatrix(0..n, n..2 * n))
    }

    /// A basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in e.pivots.iter().enumerate() {
                    v[p] = e.reduced[(i, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Some solution `x` of `self·x = b` (columns of `b`), if consistent.
    pub fn solve(&self, b: &Matrix<T>) -> Option<Matrix<T>> {
        assert_eq!(self.rows, b.rows);
        let (n, k) = (self.cols, b.cols);
        let mut aug = Matrix::<T>::zeros(self.rows, n + k);
        for r in 0..self.rows {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..k {
                aug[(r, n + c)] = b[(r, c)].clone();
            }
        }
        let e = aug.echelon();
        if e.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::<T>::zeros(n, k);
        for (i, &p) in e.pivots.iter().enumerate() {
            for c in 0..k {
                x[(p, c)] = e.reduced[(i, n + c)].clone();
            }
        }
        Some(x)
    }
}

impl Matrix<CycNum> {
    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(CycNum::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor(&self) -> u32 {
        self.entries().fold(1, |acc, x| crate::cyclotomic::lcm_u32(acc, x.conductor()))
    }
}
