//! Generic dense kernels shared by the rational and prime-field backends.
//!
//! Everything here works on row-major `Vec<T>` buffers; `matrix.rs` owns the
//! public, field-dispatching surface.

use num::rational::BigRational;
use num::{One, Zero};

pub(crate) trait El: Clone + PartialEq + std::fmt::Debug {
    type Ctx: Copy;
    fn zero(c: Self::Ctx) -> Self;
    fn one(c: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self, c: Self::Ctx) -> Self;
    fn sub(&self, o: &Self, c: Self::Ctx) -> Self;
    fn mul(&self, o: &Self, c: Self::Ctx) -> Self;
    fn neg(&self, c: Self::Ctx) -> Self;
    /// Multiplicative inverse; caller guarantees nonzero.
    fn inv(&self, c: Self::Ctx) -> Self;
}

impl El for BigRational {
    type Ctx = ();
    fn zero(_: ()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: ()) -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self, _: ()) -> Self {
        self + o
    }
    fn sub(&self, o: &Self, _: ()) -> Self {
        self - o
    }
    fn mul(&self, o: &Self, _: ()) -> Self {
        self * o
    }
    fn neg(&self, _: ()) -> Self {
        -self
    }
    fn inv(&self, _: ()) -> Self {
        self.recip()
    }
}

impl El for u64 {
    type Ctx = u64; // the prime p
    fn zero(_: u64) -> Self {
        0
    }
    fn one(_: u64) -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self, p: u64) -> Self {
        (self + o) % p
    }
    fn sub(&self, o: &Self, p: u64) -> Self {
        (self + p - o) % p
    }
    fn mul(&self, o: &Self, p: u64) -> Self {
        ((*self as u128 * *o as u128) % p as u128) as u64
    }
    fn neg(&self, p: u64) -> Self {
        (p - self) % p
    }
    fn inv(&self, p: u64) -> Self {
        crate::field::fp_pow(*self, p - 2, p)
    }
}

pub(crate) fn matmul<T: El>(
    c: T::Ctx,
    a: &[T],
    ar: usize,
    ac: usize,
    b: &[T],
    bc: usize,
) -> Vec<T> {
    let mut out = vec![T::zero(c); ar * bc];
    for i in 0..ar {
        for k in 0..ac {
            let aik = &a[i * ac + k];
            if aik.is_zero() {
                continue;
            }
            let brow = &b[k * bc..(k + 1) * bc];
            let orow = &mut out[i * bc..(i + 1) * bc];
            for j in 0..bc {
                if !brow[j].is_zero() {
                    orow[j] = orow[j].add(&aik.mul(&brow[j], c), c);
                }
            }
        }
    }
    out
}

/// In-place reduced row echelon form; returns the pivot columns.
pub(crate) fn rref<T: El>(c: T::Ctx, m: &mut [T], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        // find pivot
        let mut piv = None;
        for i in r..rows {
            if !m[i * cols + col].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        if piv != r {
            for j in 0..cols {
                m.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = m[r * cols + col].inv(c);
        for j in col..cols {
            m[r * cols + j] = m[r * cols + j].mul(&inv, c);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + col].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..cols {
                let t = f.mul(&m[r * cols + j], c);
                m[i * cols + j] = m[i * cols + j].sub(&t, c);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank only: forward elimination without back-substitution.
pub(crate) fn rank<T: El>(c: T::Ctx, m: &mut [T], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let mut piv = None;
        for i in r..rows {
            if !m[i * cols + col].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        if piv != r {
            for j in col..cols {
                m.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = m[r * cols + col].inv(c);
        for i in (r + 1)..rows {
            let f = m[i * cols + col].mul(&inv, c);
            if f.is_zero() {
                continue;
            }
            for j in col..cols {
                let t = f.mul(&m[r * cols + j], c);
                m[i * cols + j] = m[i * cols + j].sub(&t, c);
            }
        }
        r += 1;
    }
    r
}

/// Kernel of the linear map given by `m` (columns are inputs); rows of the
/// result span `{x : m x = 0}`.
pub(crate) fn kernel<T: El>(c: T::Ctx, m: &[T], rows: usize, cols: usize) -> Vec<Vec<T>> {
    let mut work = m.to_vec();
    let pivots = rref::<T>(c, &mut work, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![T::zero(c); cols];
        v[f] = T::one(c);
        for (t, &p) in pivots.iter().enumerate() {
            v[p] = work[t * cols + f].neg(c);
        }
        basis.push(v);
    }
    basis
}

/// Solves `m x = b` for each column of `b`; `None` if any column is outside
/// the column space.
pub(crate) fn solve<T: El>(
    c: T::Ctx,
    m: &[T],
    rows: usize,
    cols: usize,
    b: &[T],
    bcols: usize,
) -> Option<Vec<T>> {
    let aug_cols = cols + bcols;
    let mut aug = vec![T::zero(c); rows * aug_cols];
    for i in 0..rows {
        aug[i * aug_cols..i * aug_cols + cols].clone_from_slice(&m[i * cols..(i + 1) * cols]);
        aug[i * aug_cols + cols..(i + 1) * aug_cols]
            .clone_from_slice(&b[i * bcols..(i + 1) * bcols]);
    }
    let pivots = rref::<T>(c, &mut aug, rows, aug_cols);
    if pivots.iter().any(|&p| p >= cols) {
        return None;
    }
    let mut x = vec![T::zero(c); cols * bcols];
    for (t, &p) in pivots.iter().enumerate() {
        for j in 0..bcols {
            x[p * bcols + j] = aug[t * aug_cols + cols + j].clone();
        }
    }
    Some(x)
}

/// Incremental echelon basis of a row span.
pub(crate) struct Echelon<T: El> {
    pub ctx: T::Ctx,
    pub cols: usize,
    /// Rows normalized to leading coefficient 1, kept mutually reduced.
    pub rows: Vec<Vec<T>>,
    /// Pivot column of each stored row (not necessarily sorted).
    pub pivots: Vec<usize>,
}

impl<T: El> Echelon<T> {
    pub fn new(ctx: T::Ctx, cols: usize) -> Self {
        Echelon {
            ctx,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [T]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !row[j].is_zero() {
                    let t = f.mul(&row[j], self.ctx);
                    v[j] = v[j].sub(&t, self.ctx);
                }
            }
        }
    }

    /// Adds a vector to the span; returns true if it was novel.
    pub fn push(&mut self, mut v: Vec<T>) -> bool {
        self.reduce(&mut v);
        let piv = v.iter().position(|x| !x.is_zero());
        let Some(piv) = piv else { return false };
        let inv = v[piv].inv(self.ctx);
        for x in v.iter_mut() {
            *x = x.mul(&inv, self.ctx);
        }
        // keep existing rows reduced against the new one
        for row in self.rows.iter_mut() {
            let f = row[piv].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !v[j].is_zero() {
                    let t = f.mul(&v[j], self.ctx);
                    row[j] = row[j].sub(&t, self.ctx);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot column (reduced echelon form).
    pub fn sorted_rows(&self) -> Vec<Vec<T>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }
}
