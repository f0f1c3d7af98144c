//! Finite-dimensional associative algebras given by structure constants, and
//! their one-sided modules and bimodules.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use std::rc::Rc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An algebra with a distinguished basis: `left[i]` is the matrix of
/// left multiplication by basis vector `i`, so column `j` of `left[i]` holds
/// the structure constants of `b_i * b_j`.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    pub field: FieldSpec,
    pub dim: usize,
    left: Vec<ExactMatrix>,
    right: Vec<ExactMatrix>,
    pub unit: ExactMatrix,
    /// Coefficient vectors of a unital generating set (defaults to the basis).
    /// Smaller sets make submodule closures and coequalizers cheaper.
    pub generators: Vec<ExactMatrix>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AlgebraViolation {
    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("unit is not a two-sided identity")]
    Unit,
}

impl FinDimAlgebra {
    /// Builds from the products of basis vectors; `prod(i, j)` is the
    /// coefficient column of `b_i * b_j`.
    pub fn from_products(
        field: FieldSpec,
        dim: usize,
        unit: ExactMatrix,
        prod: impl Fn(usize, usize) -> ExactMatrix,
    ) -> Self {
        let mut left = Vec::with_capacity(dim);
        for i in 0..dim {
            let cols: Vec<ExactMatrix> = (0..dim).map(|j| prod(i, j)).collect();
            let refs: Vec<&ExactMatrix> = cols.iter().collect();
            left.push(if dim == 0 {
                ExactMatrix::zeros(field, 0, 0)
            } else {
                ExactMatrix::hstack(&refs)
            });
        }
        let right: Vec<ExactMatrix> = (0..dim)
            .map(|j| {
                ExactMatrix::from_fn(field, dim, dim, |k, i| left[i].get(k, j))
            })
            .collect();
        let generators = (0..dim)
            .map(|i| basis_column(field, dim, i))
            .collect();
        FinDimAlgebra {
            field,
            dim,
            left,
            right,
            unit,
            generators,
        }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground_field(field: FieldSpec) -> Self {
        Self::from_products(field, 1, ExactMatrix::identity(field, 1), |_, _| {
            ExactMatrix::identity(field, 1).col(0)
        })
    }

    pub fn basis_vec(&self, i: usize) -> ExactMatrix {
        basis_column(self.field, self.dim, i)
    }

    pub fn left_mat(&self, i: usize) -> &ExactMatrix {
        &self.left[i]
    }

    pub fn right_mat(&self, i: usize) -> &ExactMatrix {
        &self.right[i]
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mul_matrix(&self, a: &ExactMatrix) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let c = a.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.left[i].scale(&c));
            }
        }
        m
    }

    pub fn right_mul_matrix(&self, a: &ExactMatrix) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let c = a.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.right[i].scale(&c));
            }
        }
        m
    }

    pub fn mul(&self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.field, self.dim, 1);
        for i in 0..self.dim {
            let c = a.get(i, 0);
            if !c.is_zero() {
                out = out.add(&self.left[i].matmul(b).scale(&c));
            }
        }
        out
    }

    /// Verifies associativity on all basis triples and the unit laws;
    /// reports the first failing triple. Cost is dim^3 vector operations.
    pub fn check_algebra(&self) -> Result<(), AlgebraViolation> {
        if self.left_mul_matrix(&self.unit) != ExactMatrix::identity(self.field, self.dim)
            || self.right_mul_matrix(&self.unit) != ExactMatrix::identity(self.field, self.dim)
        {
            return Err(AlgebraViolation::Unit);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let pij = self.left[i].col(j);
                for k in 0..self.dim {
                    let lhs = self.right[k].matmul(&pij); // (b_i b_j) b_k
                    let rhs = self.left[i].matmul(&self.left[j].col(k)); // b_i (b_j b_k)
                    if lhs != rhs {
                        return Err(AlgebraViolation::Associativity(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The enveloping algebra `A (x) A^op`; basis `(i, j) -> i*dim + j`.
    pub fn enveloping(self: &Rc<Self>) -> Rc<FinDimAlgebra> {
        let d = self.dim;
        let field = self.field;
        let unit = self.unit.kron(&self.unit);
        let mut alg = FinDimAlgebra::from_products(field, d * d, unit, |ij, kl| {
            let (i, j) = (ij / d, ij % d);
            let (k, l) = (kl / d, kl % d);
            // (b_i (x) b_j^op)(b_k (x) b_l^op) = b_i b_k (x) (b_l b_j)^op
            self.left[i].col(k).kron(&self.left[l].col(j))
        });
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(g.kron(&self.unit));
            gens.push(self.unit.kron(g));
        }
        alg.generators = gens;
        Rc::new(alg)
    }
}

pub(crate) fn basis_column(field: FieldSpec, dim: usize, i: usize) -> ExactMatrix {
    let mut v = ExactMatrix::zeros(field, dim, 1);
    v.set(i, 0, field.one());
    v
}

/// A one-sided module given by one action matrix per algebra basis vector.
/// For a left module `act(b_i) act(b_j) = act(b_i b_j)`; mirrored on the right.
#[derive(Clone, Debug)]
pub struct AlgModule {
    pub algebra: Rc<FinDimAlgebra>,
    pub dim: usize,
    pub side: Side,
    pub action: Vec<ExactMatrix>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ModuleViolation {
    #[error("unit does not act as the identity")]
    Unit,
    #[error("action does not respect structure constants at basis pair ({0}, {1})")]
    Law(usize, usize),
}

impl AlgModule {
    pub fn new(
        algebra: Rc<FinDimAlgebra>,
        side: Side,
        action: Vec<ExactMatrix>,
    ) -> Self {
        let dim = if action.is_empty() {
            0
        } else {
            action[0].rows()
        };
        AlgModule {
            algebra,
            dim,
            side,
            action,
        }
    }

    pub fn zero(algebra: Rc<FinDimAlgebra>, side: Side) -> Self {
        let d = algebra.dim;
        let field = algebra.field;
        AlgModule {
            algebra,
            dim: 0,
            side,
            action: (0..d).map(|_| ExactMatrix::zeros(field, 0, 0)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn left_regular(algebra: &Rc<FinDimAlgebra>) -> Self {
        AlgModule {
            algebra: algebra.clone(),
            dim: algebra.dim,
            side: Side::Left,
            action: (0..algebra.dim).map(|i| algebra.left_mat(i).clone()).collect(),
        }
    }

    pub fn right_regular(algebra: &Rc<FinDimAlgebra>) -> Self {
        AlgModule {
            algebra: algebra.clone(),
            dim: algebra.dim,
            side: Side::Right,
            action: (0..algebra.dim).map(|i| algebra.right_mat(i).clone()).collect(),
        }
    }

    pub fn act_basis(&self, i: usize) -> &ExactMatrix {
        &self.action[i]
    }

    pub fn act_elem(&self, a: &ExactMatrix) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field(), self.dim, self.dim);
        for i in 0..self.algebra.dim {
            let c = a.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.action[i].scale(&c));
            }
        }
        m
    }

    pub fn validate(&self) -> Result<(), ModuleViolation> {
        let id = ExactMatrix::identity(self.field(), self.dim);
        if self.act_elem(&self.algebra.unit) != id {
            return Err(ModuleViolation::Unit);
        }
        for i in 0..self.algebra.dim {
            for j in 0..self.algebra.dim {
                let prod = self.act_elem(&self.algebra.left_mat(i).col(j));
                let comp = match self.side {
                    Side::Left => self.action[i].matmul(&self.action[j]),
                    Side::Right => self.action[j].matmul(&self.action[i]),
                };
                if prod != comp {
                    return Err(ModuleViolation::Law(i, j));
                }
            }
        }
        Ok(())
    }

    /// The module carried by a subspace closed under the action; rows of
    /// `basis` (in reduced echelon form) become the new coordinate system.
    pub fn submodule(&self, basis: &ExactMatrix) -> AlgModule {
        let bt = basis.transpose(); // ambient x k
        let action = self
            .action
            .iter()
            .map(|m| {
                let img = m.matmul(&bt);
                bt.solve(&img)
                    .expect("subspace not closed under the action")
            })
            .collect();
        AlgModule {
            algebra: self.algebra.clone(),
            dim: basis.rows(),
            side: self.side,
            action,
        }
    }

    /// Direct sum with another module over the same algebra and side.
    pub fn direct_sum(&self, o: &AlgModule) -> AlgModule {
        assert_eq!(self.side, o.side);
        let field = self.field();
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| {
                let mut m = ExactMatrix::zeros(field, self.dim + o.dim, self.dim + o.dim);
                m.set_block(0, 0, a);
                m.set_block(self.dim, self.dim, b);
                m
            })
            .collect();
        AlgModule {
            algebra: self.algebra.clone(),
            dim: self.dim + o.dim,
            side: self.side,
            action,
        }
    }

    /// Dual module: a left module becomes a right module with transposed
    /// action matrices, and vice versa.
    pub fn dual(&self) -> AlgModule {
        AlgModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            side: match self.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
            action: self.action.iter().map(|m| m.transpose()).collect(),
        }
    }
}

/// An `S`-bimodule; equivalently a left module over the enveloping algebra.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub algebra: Rc<FinDimAlgebra>,
    pub dim: usize,
    pub left_action: Vec<ExactMatrix>,
    pub right_action: Vec<ExactMatrix>,
}

impl Bimodule {
    pub fn regular(algebra: &Rc<FinDimAlgebra>) -> Self {
        Bimodule {
            algebra: algebra.clone(),
            dim: algebra.dim,
            left_action: (0..algebra.dim).map(|i| algebra.left_mat(i).clone()).collect(),
            right_action: (0..algebra.dim).map(|i| algebra.right_mat(i).clone()).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn left_elem(&self, a: &ExactMatrix) -> ExactMatrix {
        elem_comb(self.field(), self.dim, &self.left_action, a)
    }

    pub fn right_elem(&self, a: &ExactMatrix) -> ExactMatrix {
        elem_comb(self.field(), self.dim, &self.right_action, a)
    }

    pub fn validate(&self) -> Result<(), ModuleViolation> {
        let as_left = AlgModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            side: Side::Left,
            action: self.left_action.clone(),
        };
        as_left.validate()?;
        let as_right = AlgModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            side: Side::Right,
            action: self.right_action.clone(),
        };
        as_right.validate()?;
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.matmul(r) != r.matmul(l) {
                    return Err(ModuleViolation::Law(i, j));
                }
            }
        }
        Ok(())
    }

    /// Left module over the enveloping algebra: `(b_i (x) b_j^op)` acts as
    /// `left(b_i) right(b_j)`.
    pub fn to_env_module(&self, env: &Rc<FinDimAlgebra>) -> AlgModule {
        let d = self.algebra.dim;
        assert_eq!(env.dim, d * d);
        let action = (0..d * d)
            .map(|ij| self.left_action[ij / d].matmul(&self.right_action[ij % d]))
            .collect();
        AlgModule {
            algebra: env.clone(),
            dim: self.dim,
            side: Side::Left,
            action,
        }
    }

    /// Recovers the bimodule from its enveloping-module form (lossless).
    pub fn from_env_module(algebra: &Rc<FinDimAlgebra>, m: &AlgModule) -> Bimodule {
        let d = algebra.dim;
        assert_eq!(m.algebra.dim, d * d);
        let left_action = (0..d)
            .map(|i| m.act_elem(&algebra.basis_vec(i).kron(&algebra.unit)))
            .collect();
        let right_action = (0..d)
            .map(|j| m.act_elem(&algebra.unit.kron(&algebra.basis_vec(j))))
            .collect();
        Bimodule {
            algebra: algebra.clone(),
            dim: m.dim,
            left_action,
            right_action,
        }
    }
}

fn elem_comb(
    field: FieldSpec,
    dim: usize,
    mats: &[ExactMatrix],
    a: &ExactMatrix,
) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, dim, dim);
    for (i, mat) in mats.iter().enumerate() {
        let c = a.get(i, 0);
        if !c.is_zero() {
            m = m.add(&mat.scale(&c));
        }
    }
    m
}

/// Scalar helper used by fixture constructors: product column from an
/// explicit structure-constant table.
pub fn products_from_table(
    field: FieldSpec,
    table: &[Vec<Vec<Scalar>>],
) -> impl Fn(usize, usize) -> ExactMatrix + '_ {
    move |i, j| {
        let c = &table[i][j];
        ExactMatrix::from_fn(field, c.len(), 1, |k, _| c[k].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// Group algebra of Z/2 built by hand.
    fn qz2() -> Rc<FinDimAlgebra> {
        let f = q();
        Rc::new(FinDimAlgebra::from_products(
            f,
            2,
            ExactMatrix::column_from_i64(f, &[1, 0]),
            |i, j| {
                let k = (i + j) % 2;
                basis_column(f, 2, k)
            },
        ))
    }

    #[test]
    fn ground_field_ok() {
        let k = FinDimAlgebra::ground_field(q());
        assert_eq!(k.check_algebra(), Ok(()));
    }

    #[test]
    fn z2_group_algebra_ok() {
        assert_eq!(qz2().check_algebra(), Ok(()));
    }

    #[test]
    fn perturbed_constants_rejected() {
        let f = q();
        // dim-2 algebra: K[x]/(x^2) with c[0][0][0] perturbed from 1 to 2
        let bad = FinDimAlgebra::from_products(
            f,
            2,
            ExactMatrix::column_from_i64(f, &[1, 0]),
            |i, j| match (i, j) {
                (0, 0) => ExactMatrix::column_from_i64(f, &[2, 0]),
                (0, 1) | (1, 0) => ExactMatrix::column_from_i64(f, &[0, 1]),
                _ => ExactMatrix::column_from_i64(f, &[0, 0]),
            },
        );
        assert!(matches!(
            bad.check_algebra(),
            Err(AlgebraViolation::Unit) | Err(AlgebraViolation::Associativity(0, 0, 0))
        ));
    }

    #[test]
    fn enveloping_of_dim2_commutative() {
        let a = qz2();
        let e = a.enveloping();
        assert_eq!(e.dim, 4);
        assert_eq!(e.check_algebra(), Ok(()));
    }

    #[test]
    fn enveloping_of_field_is_field() {
        let k = Rc::new(FinDimAlgebra::ground_field(q()));
        let e = k.enveloping();
        assert_eq!(e.dim, 1);
        assert_eq!(e.check_algebra(), Ok(()));
    }

    #[test]
    fn bimodule_env_roundtrip() {
        let a = qz2();
        let e = a.enveloping();
        let s = Bimodule::regular(&a);
        let m = s.to_env_module(&e);
        // action of 1 (x) 1 is the identity
        assert_eq!(
            m.act_elem(&e.unit),
            ExactMatrix::identity(q(), 2)
        );
        assert_eq!(m.validate(), Ok(()));
        let back = Bimodule::from_env_module(&a, &m);
        assert_eq!(back.left_action, s.left_action);
        assert_eq!(back.right_action, s.right_action);
    }

    #[test]
    fn regular_modules_validate() {
        let a = qz2();
        assert_eq!(AlgModule::left_regular(&a).validate(), Ok(()));
        assert_eq!(AlgModule::right_regular(&a).validate(), Ok(()));
    }
}
