//! Dense matrices over an exact field, with subspaces and quotient spaces.
//!
//! Conventions: vectors are column matrices (`n x 1`); subspace bases are
//! stored as matrix *rows* in reduced echelon form, so two subspaces are equal
//! iff their basis matrices are entry-wise equal.

use crate::dense::{self, Echelon};
use crate::field::{FieldSpec, Scalar};
use num::rational::BigRational;
use num::Zero;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
enum Store {
    Q(Vec<BigRational>),
    Fp(Vec<u64>),
}

/// A dense matrix over Q or GF(p).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    store: Store,
}

macro_rules! unary {
    ($self:expr, |$v:ident, $c:ident| $body:expr) => {
        match (&$self.field, &$self.store) {
            (FieldSpec::Rationals, Store::Q($v)) => {
                let $c = ();
                Store::Q($body)
            }
            (FieldSpec::PrimeField(p), Store::Fp($v)) => {
                let $c = *p;
                Store::Fp($body)
            }
            _ => unreachable!("store/field mismatch"),
        }
    };
}

macro_rules! binary {
    ($a:expr, $b:expr, |$x:ident, $y:ident, $c:ident| $body:expr) => {{
        assert_eq!($a.field, $b.field, "field mismatch");
        match (&$a.field, &$a.store, &$b.store) {
            (FieldSpec::Rationals, Store::Q($x), Store::Q($y)) => {
                let $c = ();
                Store::Q($body)
            }
            (FieldSpec::PrimeField(p), Store::Fp($x), Store::Fp($y)) => {
                let $c = *p;
                Store::Fp($body)
            }
            _ => unreachable!("store/field mismatch"),
        }
    }};
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let store = match field {
            FieldSpec::Rationals => Store::Q(vec![BigRational::zero(); rows * cols]),
            FieldSpec::PrimeField(_) => Store::Fp(vec![0; rows * cols]),
        };
        ExactMatrix {
            field,
            rows,
            cols,
            store,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Test/fixture helper: build from integer rows.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn column_from_i64(field: FieldSpec, entries: &[i64]) -> Self {
        Self::from_fn(field, entries.len(), 1, |i, _| field.from_i64(entries[i]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        match &self.store {
            Store::Q(v) => Scalar::Q(v[i * self.cols + j].clone()),
            Store::Fp(v) => Scalar::Fp(v[i * self.cols + j]),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols);
        let cols = self.cols;
        match (&mut self.store, s) {
            (Store::Q(v), Scalar::Q(x)) => v[i * cols + j] = x,
            (Store::Fp(v), Scalar::Fp(x)) => {
                if let FieldSpec::PrimeField(p) = self.field {
                    v[i * cols + j] = x % p
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Q(v) => v.iter().all(|x| x.is_zero()),
            Store::Fp(v) => v.iter().all(|x| *x == 0),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let store = binary!(self, o, |x, y, c| {
            use crate::dense::El;
            x.iter().zip(y).map(|(a, b)| a.add(b, c)).collect()
        });
        ExactMatrix {
            store,
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let store = binary!(self, o, |x, y, c| {
            use crate::dense::El;
            x.iter().zip(y).map(|(a, b)| a.sub(b, c)).collect()
        });
        ExactMatrix {
            store,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        let store = unary!(self, |v, c| {
            use crate::dense::El;
            v.iter().map(|a| a.neg(c)).collect()
        });
        ExactMatrix {
            store,
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let store = match (&self.store, s) {
            (Store::Q(v), Scalar::Q(x)) => Store::Q(v.iter().map(|a| a * x).collect()),
            (Store::Fp(v), Scalar::Fp(x)) => {
                let FieldSpec::PrimeField(p) = self.field else {
                    unreachable!()
                };
                Store::Fp(
                    v.iter()
                        .map(|a| ((*a as u128 * *x as u128) % p as u128) as u64)
                        .collect(),
                )
            }
            _ => panic!("scalar/field mismatch"),
        };
        ExactMatrix {
            store,
            ..self.clone()
        }
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matmul shape mismatch");
        let store = binary!(self, o, |x, y, c| dense::matmul(
            c, x, self.rows, self.cols, y, o.cols
        ));
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: o.cols,
            store,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn hstack(mats: &[&Self]) -> Self {
        assert!(!mats.is_empty());
        let rows = mats[0].rows;
        let cols: usize = mats.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(mats[0].field, rows, cols);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.rows, rows);
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(mats: &[&Self]) -> Self {
        assert!(!mats.is_empty());
        let cols = mats[0].cols;
        let rows: usize = mats.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(mats[0].field, rows, cols);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.cols, cols);
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, m: &Self) {
        assert!(i0 + m.rows <= self.rows && j0 + m.cols <= self.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(i0 + i, j0 + j, m.get(i, j));
            }
        }
    }

    pub fn block(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Self {
        assert!(i0 + rows <= self.rows && j0 + cols <= self.cols);
        Self::from_fn(self.field, rows, cols, |i, j| self.get(i0 + i, j0 + j))
    }

    pub fn col(&self, j: usize) -> Self {
        self.block(0, j, self.rows, 1)
    }

    pub fn row(&self, i: usize) -> Self {
        self.block(i, 0, 1, self.cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, idx.len(), self.cols, |i, j| {
            self.get(idx[i], j)
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j])
        })
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = self.get(i, j);
                if s.is_zero() {
                    continue;
                }
                out.set_block(i * o.rows, j * o.cols, &o.scale(&s));
            }
        }
        out
    }

    /// Reduced row-echelon form and pivot columns (strictly increasing).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut out = self.clone();
        let cols = self.cols;
        let rows = self.rows;
        let pivots = match (&mut out.store, self.field) {
            (Store::Q(v), _) => dense::rref::<BigRational>((), v, rows, cols),
            (Store::Fp(v), FieldSpec::PrimeField(p)) => dense::rref::<u64>(p, v, rows, cols),
            _ => unreachable!(),
        };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        match (&mut work.store, self.field) {
            (Store::Q(v), _) => dense::rank::<BigRational>((), v, rows, cols),
            (Store::Fp(v), FieldSpec::PrimeField(p)) => dense::rank::<u64>(p, v, rows, cols),
            _ => unreachable!(),
        }
    }

    /// Rows of the result span `{x : self * x = 0}` (reduced echelon form).
    pub fn kernel_matrix(&self) -> Self {
        let (rows, cols) = (self.rows, self.cols);
        let raw = match (&self.store, self.field) {
            (Store::Q(v), _) => {
                let rs = dense::kernel::<BigRational>((), v, rows, cols);
                Store::Q(rs.into_iter().flatten().collect())
            }
            (Store::Fp(v), FieldSpec::PrimeField(p)) => {
                let rs = dense::kernel::<u64>(p, v, rows, cols);
                Store::Fp(rs.into_iter().flatten().collect())
            }
            _ => unreachable!(),
        };
        let n = match &raw {
            Store::Q(v) => v.len(),
            Store::Fp(v) => v.len(),
        };
        let krows = if cols == 0 { 0 } else { n / cols };
        let m = ExactMatrix {
            field: self.field,
            rows: krows,
            cols,
            store: raw,
        };
        m.rref().0
    }

    /// Solves `self * x = rhs` (columns independently). `None` iff some column
    /// of `rhs` is outside the column space.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let store = match (&self.field, &self.store, &rhs.store) {
            (FieldSpec::Rationals, Store::Q(a), Store::Q(b)) => Store::Q(dense::solve::<
                BigRational,
            >(
                (), a, self.rows, self.cols, b, rhs.cols
            )?),
            (FieldSpec::PrimeField(p), Store::Fp(a), Store::Fp(b)) => Store::Fp(dense::solve::<
                u64,
            >(
                *p, a, self.rows, self.cols, b, rhs.cols,
            )?),
            _ => unreachable!(),
        };
        Some(ExactMatrix {
            field: self.field,
            rows: self.cols,
            cols: rhs.cols,
            store,
        })
    }

    /// Is `self * x = rhs` solvable and `self` injective? Then the solution is
    /// an isomorphism witness candidate.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Incremental row-span accumulator.
pub struct RowSpace {
    field: FieldSpec,
    inner: RowSpaceInner,
}

enum RowSpaceInner {
    Q(Echelon<BigRational>),
    Fp(Echelon<u64>),
}

impl RowSpace {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        let inner = match field {
            FieldSpec::Rationals => RowSpaceInner::Q(Echelon::new((), cols)),
            FieldSpec::PrimeField(p) => RowSpaceInner::Fp(Echelon::new(p, cols)),
        };
        RowSpace { field, inner }
    }

    fn to_raw(&self, row: &ExactMatrix) -> Vec<Scalar> {
        let v = if row.rows() == 1 {
            (0..row.cols()).map(|j| row.get(0, j)).collect::<Vec<_>>()
        } else {
            assert_eq!(row.cols(), 1, "expected a row or column vector");
            (0..row.rows()).map(|i| row.get(i, 0)).collect::<Vec<_>>()
        };
        v
    }

    /// Adds a vector (row or column shaped); returns true if novel.
    pub fn push(&mut self, v: &ExactMatrix) -> bool {
        let raw = self.to_raw(v);
        match &mut self.inner {
            RowSpaceInner::Q(e) => e.push(
                raw.into_iter()
                    .map(|s| match s {
                        Scalar::Q(x) => x,
                        _ => panic!("field mismatch"),
                    })
                    .collect(),
            ),
            RowSpaceInner::Fp(e) => e.push(
                raw.into_iter()
                    .map(|s| match s {
                        Scalar::Fp(x) => x,
                        _ => panic!("field mismatch"),
                    })
                    .collect(),
            ),
        }
    }

    pub fn contains(&self, v: &ExactMatrix) -> bool {
        let raw = self.to_raw(v);
        match &self.inner {
            RowSpaceInner::Q(e) => e.contains(
                &raw.into_iter()
                    .map(|s| match s {
                        Scalar::Q(x) => x,
                        _ => panic!("field mismatch"),
                    })
                    .collect::<Vec<_>>(),
            ),
            RowSpaceInner::Fp(e) => e.contains(
                &raw.into_iter()
                    .map(|s| match s {
                        Scalar::Fp(x) => x,
                        _ => panic!("field mismatch"),
                    })
                    .collect::<Vec<_>>(),
            ),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            RowSpaceInner::Q(e) => e.rank(),
            RowSpaceInner::Fp(e) => e.rank(),
        }
    }

    pub fn cols(&self) -> usize {
        match &self.inner {
            RowSpaceInner::Q(e) => e.cols,
            RowSpaceInner::Fp(e) => e.cols,
        }
    }

    /// Basis rows in reduced echelon form.
    pub fn basis_matrix(&self) -> ExactMatrix {
        let cols = self.cols();
        match &self.inner {
            RowSpaceInner::Q(e) => {
                let rows = e.sorted_rows();
                let n = rows.len();
                ExactMatrix {
                    field: self.field,
                    rows: n,
                    cols,
                    store: Store::Q(rows.into_iter().flatten().collect()),
                }
            }
            RowSpaceInner::Fp(e) => {
                let rows = e.sorted_rows();
                let n = rows.len();
                ExactMatrix {
                    field: self.field,
                    rows: n,
                    cols,
                    store: Store::Fp(rows.into_iter().flatten().collect()),
                }
            }
        }
    }
}

/// A subspace of K^n with canonical (reduced echelon) row basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    /// Canonicalizes arbitrary spanning rows.
    pub fn from_rows(rows: &ExactMatrix) -> Self {
        let (r, pivots) = rows.rref();
        let basis = r.block(0, 0, pivots.len(), rows.cols());
        Subspace {
            ambient_dim: rows.cols(),
            basis,
        }
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ExactMatrix::zeros(field, 0, ambient_dim),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ExactMatrix::identity(field, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis rows, reduced echelon form.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &ExactMatrix) -> bool {
        let mut rs = RowSpace::new(self.basis.field(), self.ambient_dim);
        for i in 0..self.basis.rows() {
            rs.push(&self.basis.row(i));
        }
        rs.contains(v)
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, o.ambient_dim);
        if self.dim() == 0 {
            return o.clone();
        }
        if o.dim() == 0 {
            return self.clone();
        }
        Subspace::from_rows(&ExactMatrix::vstack(&[&self.basis, &o.basis]))
    }
}

/// A quotient K^n / W with a chosen linear section.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    pub dim: usize,
    /// dim x ambient_dim
    pub projection: ExactMatrix,
    /// ambient_dim x dim; projection * section = identity.
    pub section: ExactMatrix,
}

impl QuotientSpace {
    pub fn quotient_by(sub: &Subspace) -> QuotientSpace {
        let field = sub.basis().field();
        let n = sub.ambient_dim();
        let k = sub.dim();
        let basis = sub.basis();
        let mut is_pivot = vec![false; n];
        let mut pivots = Vec::with_capacity(k);
        for t in 0..k {
            let mut p = None;
            for j in 0..n {
                if !basis.get(t, j).is_zero() {
                    p = Some(j);
                    break;
                }
            }
            let p = p.expect("subspace basis has a zero row");
            is_pivot[p] = true;
            pivots.push(p);
        }
        let free: Vec<usize> = (0..n).filter(|j| !is_pivot[*j]).collect();
        let dim = free.len();
        // projection row f, column j: delta(j, free_f) - basis[t][free_f] when j = pivot_t
        let mut projection = ExactMatrix::zeros(field, dim, n);
        for (fi, &f) in free.iter().enumerate() {
            projection.set(fi, f, field.one());
            for (t, &p) in pivots.iter().enumerate() {
                let v = basis.get(t, f);
                if !v.is_zero() {
                    projection.set(fi, p, field.neg(&v));
                }
            }
        }
        let mut section = ExactMatrix::zeros(field, n, dim);
        for (fi, &f) in free.iter().enumerate() {
            section.set(f, fi, field.one());
        }
        QuotientSpace {
            ambient_dim: n,
            dim,
            projection,
            section,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> QuotientSpace {
        QuotientSpace {
            ambient_dim: n,
            dim: n,
            projection: ExactMatrix::identity(field, n),
            section: ExactMatrix::identity(field, n),
        }
    }

    /// The map induced on the quotient by an ambient map that preserves the
    /// modded-out subspace: projection . f . section.
    pub fn induced(&self, ambient_map: &ExactMatrix) -> ExactMatrix {
        self.projection.matmul(ambient_map).matmul(&self.section)
    }
}
