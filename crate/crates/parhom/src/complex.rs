//! Chain and cochain complexes of finite-dimensional vector spaces, homology
//! dimensions, and induced operators on homology.

use crate::field::FieldSpec;
use crate::matrix::{ExactMatrix, QuotientSpace, Subspace};

/// A chain complex `C_0 <- C_1 <- ... <- C_n`; `d[i]` maps `C_{i+1}` to `C_i`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub d: Vec<ExactMatrix>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ComplexError {
    #[error("differential {0} has shape {1}x{2}, expected {3}x{4}")]
    Shape(usize, usize, usize, usize, usize),
    #[error("d.d != 0 between degrees {0} and {1}")]
    NotComplex(usize, usize),
    #[error("operator at degree {0} does not commute with the differential")]
    NotEquivariant(usize),
}

impl ChainComplex {
    pub fn validate(&self) -> Result<(), ComplexError> {
        assert_eq!(self.d.len() + 1, self.dims.len());
        for (i, m) in self.d.iter().enumerate() {
            if m.rows() != self.dims[i] || m.cols() != self.dims[i + 1] {
                return Err(ComplexError::Shape(
                    i,
                    m.rows(),
                    m.cols(),
                    self.dims[i],
                    self.dims[i + 1],
                ));
            }
        }
        for i in 0..self.d.len().saturating_sub(1) {
            if !self.d[i].matmul(&self.d[i + 1]).is_zero() {
                return Err(ComplexError::NotComplex(i + 2, i));
            }
        }
        Ok(())
    }

    /// Homology dimensions `H_0 .. H_{n-1}` where `n = d.len()`; `H_p` for
    /// `p = d.len()` is not certified (no incoming boundary) and is omitted.
    pub fn homology_dims(&self) -> Vec<usize> {
        let out_ranks: Vec<usize> = self.d.iter().map(|m| m.rank()).collect();
        (0..self.d.len())
            .map(|p| {
                let cycles = if p == 0 {
                    self.dims[0]
                } else {
                    self.dims[p] - out_ranks[p - 1]
                };
                cycles - out_ranks[p]
            })
            .collect()
    }

    /// Homology with full cycle/boundary data at degrees `0..d.len()`.
    pub fn homology_spaces(&self) -> Vec<Subquotient> {
        (0..self.d.len())
            .map(|p| {
                let outgoing = if p == 0 { None } else { Some(&self.d[p - 1]) };
                Subquotient::new(self.field, self.dims[p], outgoing, Some(&self.d[p]))
            })
            .collect()
    }

    /// Induced operators on homology. `ops[p]` is a family of commuting-with-d
    /// endomorphisms of `C_p`; equivariance is checked, not assumed.
    pub fn homology_with_action(
        &self,
        ops: &[Vec<ExactMatrix>],
    ) -> Result<Vec<(Subquotient, Vec<ExactMatrix>)>, ComplexError> {
        assert_eq!(ops.len(), self.dims.len());
        for (i, d) in self.d.iter().enumerate() {
            for (a, b) in ops[i].iter().zip(&ops[i + 1]) {
                if a.matmul(d) != d.matmul(b) {
                    return Err(ComplexError::NotEquivariant(i));
                }
            }
        }
        Ok(self
            .homology_spaces()
            .into_iter()
            .enumerate()
            .map(|(p, h)| {
                let induced = ops[p].iter().map(|t| h.induced(t)).collect();
                (h, induced)
            })
            .collect())
    }
}

/// A cochain complex `C^0 -> C^1 -> ... -> C^n`; `d[i]` maps `C^i` to
/// `C^{i+1}`. Cohomology is certified at degrees `0..d.len()`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub d: Vec<ExactMatrix>,
}

impl CochainComplex {
    pub fn validate(&self) -> Result<(), ComplexError> {
        assert_eq!(self.d.len() + 1, self.dims.len());
        for (i, m) in self.d.iter().enumerate() {
            if m.rows() != self.dims[i + 1] || m.cols() != self.dims[i] {
                return Err(ComplexError::Shape(
                    i,
                    m.rows(),
                    m.cols(),
                    self.dims[i + 1],
                    self.dims[i],
                ));
            }
        }
        for i in 0..self.d.len().saturating_sub(1) {
            if !self.d[i + 1].matmul(&self.d[i]).is_zero() {
                return Err(ComplexError::NotComplex(i, i + 2));
            }
        }
        Ok(())
    }

    /// Cohomology dimensions `H^0 .. H^{n-1}` where `n = d.len()`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.d.iter().map(|m| m.rank()).collect();
        (0..self.d.len())
            .map(|p| {
                let cocycles = self.dims[p] - ranks[p];
                let cobound = if p == 0 { 0 } else { ranks[p - 1] };
                cocycles - cobound
            })
            .collect()
    }

    pub fn cohomology_spaces(&self) -> Vec<Subquotient> {
        (0..self.d.len())
            .map(|p| {
                let incoming = if p == 0 { None } else { Some(&self.d[p - 1]) };
                Subquotient::new(self.field, self.dims[p], Some(&self.d[p]), incoming)
            })
            .collect()
    }

    pub fn cohomology_with_action(
        &self,
        ops: &[Vec<ExactMatrix>],
    ) -> Result<Vec<(Subquotient, Vec<ExactMatrix>)>, ComplexError> {
        assert_eq!(ops.len(), self.dims.len());
        for (i, d) in self.d.iter().enumerate() {
            for (a, b) in ops[i].iter().zip(&ops[i + 1]) {
                if d.matmul(a) != b.matmul(d) {
                    return Err(ComplexError::NotEquivariant(i));
                }
            }
        }
        Ok(self
            .cohomology_spaces()
            .into_iter()
            .enumerate()
            .map(|(p, h)| {
                let induced = ops[p].iter().map(|t| h.induced(t)).collect();
                (h, induced)
            })
            .collect())
    }
}

/// The subquotient `ker(outgoing) / im(incoming)` of an ambient space, with
/// explicit projection and section maps.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub field: FieldSpec,
    pub ambient_dim: usize,
    /// Rows span the cycle space (reduced echelon form).
    pub cycles: ExactMatrix,
    /// Quotient of the cycle coordinate space by the boundary image.
    pub quot: QuotientSpace,
}

impl Subquotient {
    /// `outgoing` maps FROM the ambient space (its kernel is the cycles);
    /// `incoming` maps INTO it (its image is the boundaries).
    pub fn new(
        field: FieldSpec,
        ambient_dim: usize,
        outgoing: Option<&ExactMatrix>,
        incoming: Option<&ExactMatrix>,
    ) -> Self {
        let cycles = match outgoing {
            Some(m) => m.kernel_matrix(),
            None => ExactMatrix::identity(field, ambient_dim),
        };
        let k = cycles.rows();
        let ct = cycles.transpose();
        let boundary_sub = match incoming {
            Some(m) => {
                // coordinates of each boundary generator in the cycle basis
                let coords = ct
                    .solve(m)
                    .expect("boundaries do not land in the cycle space");
                Subspace::from_rows(&coords.transpose())
            }
            None => Subspace::zero(field, k),
        };
        let quot = QuotientSpace::quotient_by(&boundary_sub);
        Subquotient {
            field,
            ambient_dim,
            cycles,
            quot,
        }
    }

    pub fn dim(&self) -> usize {
        self.quot.dim
    }

    /// Homology class of an ambient cycle (panics if `v` is not a cycle).
    pub fn project(&self, v: &ExactMatrix) -> ExactMatrix {
        let coords = self
            .cycles
            .transpose()
            .solve(v)
            .expect("vector is not a cycle");
        self.quot.projection.matmul(&coords)
    }

    /// An ambient representative of a homology class.
    pub fn rep(&self, h: &ExactMatrix) -> ExactMatrix {
        self.cycles.transpose().matmul(&self.quot.section.matmul(h))
    }

    /// Matrix induced on the subquotient by an ambient operator that
    /// preserves cycles and boundaries.
    pub fn induced(&self, t: &ExactMatrix) -> ExactMatrix {
        let mut cols = Vec::new();
        for j in 0..self.dim() {
            let h = crate::algebra::basis_column(self.field, self.dim(), j);
            cols.push(self.project(&t.matmul(&self.rep(&h))));
        }
        if cols.is_empty() {
            ExactMatrix::zeros(self.field, self.dim(), 0)
        } else {
            let refs: Vec<&ExactMatrix> = cols.iter().collect();
            ExactMatrix::hstack(&refs)
        }
    }
}
