//! Free resolutions of finite-dimensional modules, with the derived functors
//! Tor and Ext computed from them.
//!
//! Free covers pick generators greedily: a basis vector is skipped whenever it
//! already lies in the submodule generated by the vectors chosen so far, so
//! the cover `R^k -> M` is usually much smaller than the generic `k = dim M`.
//! Any surjective cover yields the same derived functors, which the tests
//! confirm against bar-complex oracles.

use crate::algebra::{basis_column, AlgModule, FinDimAlgebra, Side};
use crate::complex::{ChainComplex, CochainComplex};
use crate::field::FieldSpec;
use crate::matrix::{ExactMatrix, QuotientSpace, RowSpace, Subspace};
use std::rc::Rc;

/// Minimal interface the resolution engine needs from a module: a dimension
/// and the action of algebra basis vectors on coordinate columns. Implementors
/// may realize the action lazily (see the partial-representation modules).
pub trait ModuleOps {
    fn algebra(&self) -> &Rc<FinDimAlgebra>;
    fn dim(&self) -> usize;
    fn side(&self) -> Side;
    /// Image of the column vector `v` under the action of algebra basis
    /// vector `i` (for a right module, `v . b_i`).
    fn apply_basis(&self, i: usize, v: &ExactMatrix) -> ExactMatrix;

    fn field(&self) -> FieldSpec {
        self.algebra().field
    }

    /// Image of `v` under an arbitrary algebra element `a`.
    fn apply_elem(&self, a: &ExactMatrix, v: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.field(), self.dim(), 1);
        for i in 0..self.algebra().dim {
            let c = a.get(i, 0);
            if !c.is_zero() {
                out = out.add(&self.apply_basis(i, v).scale(&c));
            }
        }
        out
    }

    /// Dense matrix of the action of algebra element `a`.
    fn act_elem_matrix(&self, a: &ExactMatrix) -> ExactMatrix {
        let cols: Vec<ExactMatrix> = (0..self.dim())
            .map(|j| self.apply_elem(a, &basis_column(self.field(), self.dim(), j)))
            .collect();
        if cols.is_empty() {
            ExactMatrix::zeros(self.field(), 0, 0)
        } else {
            let refs: Vec<&ExactMatrix> = cols.iter().collect();
            ExactMatrix::hstack(&refs)
        }
    }
}

impl ModuleOps for AlgModule {
    fn algebra(&self) -> &Rc<FinDimAlgebra> {
        &self.algebra
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn side(&self) -> Side {
        self.side
    }
    fn apply_basis(&self, i: usize, v: &ExactMatrix) -> ExactMatrix {
        self.act_basis(i).matmul(v)
    }
    fn act_elem_matrix(&self, a: &ExactMatrix) -> ExactMatrix {
        self.act_elem(a)
    }
}

/// The free module `R^rank` with ambient coordinates `(slot, algebra basis)`;
/// slot-major, so slot `s` occupies rows `s*d .. (s+1)*d`.
struct FreeAmbient {
    algebra: Rc<FinDimAlgebra>,
    rank: usize,
    side: Side,
}

impl ModuleOps for FreeAmbient {
    fn algebra(&self) -> &Rc<FinDimAlgebra> {
        &self.algebra
    }
    fn dim(&self) -> usize {
        self.rank * self.algebra.dim
    }
    fn side(&self) -> Side {
        self.side
    }
    fn apply_basis(&self, i: usize, v: &ExactMatrix) -> ExactMatrix {
        let d = self.algebra.dim;
        let mat = match self.side {
            Side::Left => self.algebra.left_mat(i),
            Side::Right => self.algebra.right_mat(i),
        };
        let mut out = ExactMatrix::zeros(self.field(), self.dim(), 1);
        for s in 0..self.rank {
            let block = v.block(s * d, 0, d, 1);
            if !block.is_zero() {
                out.set_block(s * d, 0, &mat.matmul(&block));
            }
        }
        out
    }
    fn apply_elem(&self, a: &ExactMatrix, v: &ExactMatrix) -> ExactMatrix {
        let d = self.algebra.dim;
        let mat = match self.side {
            Side::Left => self.algebra.left_mul_matrix(a),
            Side::Right => self.algebra.right_mul_matrix(a),
        };
        let mut out = ExactMatrix::zeros(self.field(), self.dim(), 1);
        for s in 0..self.rank {
            let block = v.block(s * d, 0, d, 1);
            if !block.is_zero() {
                out.set_block(s * d, 0, &mat.matmul(&block));
            }
        }
        out
    }
}

/// Greedy generating set for the submodule spanned (as a module) by
/// `candidates`: a candidate is kept only if it is not yet in the closure of
/// the previous picks under the algebra generators.
pub(crate) fn greedy_generators(
    module: &dyn ModuleOps,
    candidates: &[ExactMatrix],
) -> Vec<ExactMatrix> {
    let field = module.field();
    let gens = &module.algebra().generators;
    let mut span = RowSpace::new(field, module.dim());
    let mut picked = Vec::new();
    for v in candidates {
        if v.is_zero() || span.contains(v) {
            continue;
        }
        picked.push(v.clone());
        // close the span under the algebra generators
        let mut frontier = vec![v.clone()];
        span.push(v);
        while let Some(w) = frontier.pop() {
            for a in gens {
                let u = module.apply_elem(a, &w);
                if span.push(&u) {
                    frontier.push(u);
                }
            }
        }
    }
    picked
}

/// A length-`L` complex of free modules `R^{r_L} -> ... -> R^{r_0} -> M -> 0`,
/// exact by construction.
pub struct FreeResolution {
    pub algebra: Rc<FinDimAlgebra>,
    pub side: Side,
    /// Ranks `r_0 .. r_L`.
    pub ranks: Vec<usize>,
    /// `gens0` columns are the module elements the cover `P_0` maps onto.
    pub gens0: Vec<ExactMatrix>,
    /// `gen_images[i]` (shape `r_i * d  x  r_{i+1}`): column `t` is the image
    /// in `P_i` of generator `t` of `P_{i+1}`; its slot-`s` block is the
    /// matrix entry of the differential as an element of `R`.
    pub gen_images: Vec<ExactMatrix>,
    /// Full ambient differentials `d_i : P_{i+1} -> P_i`.
    pub diffs: Vec<ExactMatrix>,
    /// Full ambient augmentation `P_0 -> M`.
    pub aug: ExactMatrix,
}

impl FreeResolution {
    /// The `(s, t)` entry of differential `i` as an algebra element.
    pub fn entry(&self, i: usize, s: usize, t: usize) -> ExactMatrix {
        let d = self.algebra.dim;
        self.gen_images[i].block(s * d, t, d, 1)
    }

    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    /// Consistency check: a complex, exact at every inner stage, surjective
    /// augmentation.
    pub fn validate(&self, module_dim: usize) -> bool {
        let d = self.algebra.dim;
        if self.ranks.len() != self.diffs.len() + 1 {
            return false;
        }
        if self.aug.rows() != module_dim || self.aug.cols() != self.ranks[0] * d {
            return false;
        }
        if self.aug.rank() != module_dim {
            return false;
        }
        let mut prev: &ExactMatrix = &self.aug;
        for dm in &self.diffs {
            if !prev.matmul(dm).is_zero() {
                return false;
            }
            let ker_dim = prev.cols() - prev.rank();
            if dm.rank() != ker_dim {
                return false;
            }
            prev = dm;
        }
        true
    }
}

/// Resolves `module` by free modules on the same side, producing `length`
/// differentials (so homology of a tensored complex is certified in degrees
/// `0 .. length-1`).
pub fn resolve(module: &dyn ModuleOps, length: usize) -> FreeResolution {
    let algebra = module.algebra().clone();
    let side = module.side();
    let d = algebra.dim;
    let field = module.field();

    // level 0: cover the module itself
    let candidates: Vec<ExactMatrix> = (0..module.dim())
        .map(|t| basis_column(field, module.dim(), t))
        .collect();
    let gens0 = greedy_generators(module, &candidates);
    let r0 = gens0.len();
    let mut aug = ExactMatrix::zeros(field, module.dim(), r0 * d);
    for (t, g) in gens0.iter().enumerate() {
        for j in 0..d {
            let col = module.apply_basis(j, g);
            aug.set_block(0, t * d + j, &col);
        }
    }

    let mut ranks = vec![r0];
    let mut gen_images = Vec::new();
    let mut diffs = Vec::new();
    let mut boundary: ExactMatrix = aug.clone(); // map whose kernel we cover next

    for _ in 0..length {
        let rank_here = *ranks.last().unwrap();
        let ambient = FreeAmbient {
            algebra: algebra.clone(),
            rank: rank_here,
            side,
        };
        let ker = boundary.kernel_matrix(); // rows span the kernel
        let cand: Vec<ExactMatrix> = (0..ker.rows())
            .map(|i| ker.row(i).transpose())
            .collect();
        let gens = greedy_generators(&ambient, &cand);
        let r = gens.len();
        let mut gi = ExactMatrix::zeros(field, rank_here * d, r);
        for (t, g) in gens.iter().enumerate() {
            gi.set_block(0, t, g);
        }
        let mut dm = ExactMatrix::zeros(field, rank_here * d, r * d);
        for (t, g) in gens.iter().enumerate() {
            for j in 0..d {
                dm.set_block(0, t * d + j, &ambient.apply_basis(j, g));
            }
        }
        ranks.push(r);
        gen_images.push(gi);
        boundary = dm.clone();
        diffs.push(dm);
    }

    FreeResolution {
        algebra,
        side,
        ranks,
        gens0,
        gen_images,
        diffs,
        aug,
    }
}

/// The complex `X (x)_R P_*` for `res` a resolution of a left module and `X`
/// a right module; `H_p` of it is `Tor_p(X, N)`.
pub fn tensor_with_right(x: &dyn ModuleOps, res: &FreeResolution) -> ChainComplex {
    assert_eq!(x.side(), Side::Right);
    assert_eq!(res.side, Side::Left);
    tensor_complex(x, res)
}

/// The complex `P_* (x)_R N` for `res` a resolution of a right module and `N`
/// a left module; `H_p` of it is `Tor_p(X, N)`.
pub fn tensor_with_left(res: &FreeResolution, n: &dyn ModuleOps) -> ChainComplex {
    assert_eq!(n.side(), Side::Left);
    assert_eq!(res.side, Side::Right);
    tensor_complex(n, res)
}

// In both orientations the tensored differential has block `(s, t)` equal to
// the action of the resolution entry `(s, t)` on the outer module.
fn tensor_complex(outer: &dyn ModuleOps, res: &FreeResolution) -> ChainComplex {
    let field = outer.field();
    let m = outer.dim();
    let dims: Vec<usize> = res.ranks.iter().map(|r| r * m).collect();
    let mut d = Vec::new();
    for i in 0..res.length() {
        let (ri, rn) = (res.ranks[i], res.ranks[i + 1]);
        let mut dm = ExactMatrix::zeros(field, ri * m, rn * m);
        for s in 0..ri {
            for t in 0..rn {
                let e = res.entry(i, s, t);
                if !e.is_zero() {
                    dm.set_block(s * m, t * m, &outer.act_elem_matrix(&e));
                }
            }
        }
        d.push(dm);
    }
    ChainComplex { field, dims, d }
}

/// `Tor_p(X, N)` dimensions for `p = 0 .. n_max`, resolving the left module.
pub fn tor_dims(x: &dyn ModuleOps, n: &dyn ModuleOps, n_max: usize) -> Vec<usize> {
    let res = resolve(n, n_max + 1);
    tensor_with_right(x, &res).homology_dims()
}

/// Same Tor, but resolving the right module instead; used both as a cheaper
/// route when `x` has small resolutions and as a balance cross-check.
pub fn tor_dims_via_first(x: &dyn ModuleOps, n: &dyn ModuleOps, n_max: usize) -> Vec<usize> {
    let res = resolve(x, n_max + 1);
    tensor_with_left(&res, n).homology_dims()
}

/// The cochain complex `Hom_R(P_*, M)` for `res` a resolution of a left
/// module and `M` a left module; `H^p` of it is `Ext^p(N, M)`.
pub fn hom_complex(res: &FreeResolution, m: &dyn ModuleOps) -> CochainComplex {
    assert_eq!(res.side, m.side());
    let field = m.field();
    let md = m.dim();
    let dims: Vec<usize> = res.ranks.iter().map(|r| r * md).collect();
    let mut d = Vec::new();
    for i in 0..res.length() {
        let (ri, rn) = (res.ranks[i], res.ranks[i + 1]);
        // (delta phi)(gen t of P_{i+1}) = sum_s entry(s,t) . phi(gen s)
        let mut dm = ExactMatrix::zeros(field, rn * md, ri * md);
        for t in 0..rn {
            for s in 0..ri {
                let e = res.entry(i, s, t);
                if !e.is_zero() {
                    dm.set_block(t * md, s * md, &m.act_elem_matrix(&e));
                }
            }
        }
        d.push(dm);
    }
    CochainComplex { field, dims, d }
}

/// `Ext^p(N, M)` dimensions for `p = 0 .. n_max` (both modules on one side).
pub fn ext_dims(n: &dyn ModuleOps, m: &dyn ModuleOps, n_max: usize) -> Vec<usize> {
    let res = resolve(n, n_max + 1);
    hom_complex(&res, m).cohomology_dims()
}

/// An injective resolution `0 -> N -> I^0 -> I^1 -> ...` of a left module,
/// obtained by dualizing a free resolution of the dual right module. Over a
/// finite-dimensional algebra the dual of a free module is injective.
pub struct InjectiveResolution {
    pub algebra: Rc<FinDimAlgebra>,
    pub ranks: Vec<usize>,
    /// `deltas[q] : I^q -> I^{q+1}`.
    pub deltas: Vec<ExactMatrix>,
    /// The embedding `N -> I^0`.
    pub coaug: ExactMatrix,
}

impl InjectiveResolution {
    pub fn of_left_module(n: &AlgModule, length: usize) -> Self {
        assert_eq!(n.side, Side::Left);
        let res = resolve(&n.dual(), length);
        InjectiveResolution {
            algebra: n.algebra.clone(),
            ranks: res.ranks.clone(),
            deltas: res.diffs.iter().map(|d| d.transpose()).collect(),
            coaug: res.aug.transpose(),
        }
    }

    /// `I^q` as a left module: the dual of the free right module `R^{r_q}`.
    pub fn term(&self, q: usize) -> AlgModule {
        let free_right = AlgModule {
            algebra: self.algebra.clone(),
            dim: self.ranks[q] * self.algebra.dim,
            side: Side::Right,
            action: (0..self.algebra.dim)
                .map(|i| {
                    let ambient = FreeAmbient {
                        algebra: self.algebra.clone(),
                        rank: self.ranks[q],
                        side: Side::Right,
                    };
                    let mut m = ExactMatrix::zeros(
                        self.algebra.field,
                        ambient.dim(),
                        ambient.dim(),
                    );
                    for j in 0..ambient.dim() {
                        let col = ambient.apply_basis(
                            i,
                            &basis_column(self.algebra.field, ambient.dim(), j),
                        );
                        m.set_block(0, j, &col);
                    }
                    m
                })
                .collect(),
        };
        free_right.dual()
    }

    /// Verifies exactness of `0 -> N -> I^0 -> ...` and that each map is a
    /// morphism of left modules.
    pub fn validate(&self, n: &AlgModule) -> bool {
        if self.coaug.cols() != n.dim || self.coaug.rank() != n.dim {
            return false;
        }
        let mut prev = self.coaug.clone();
        for (q, delta) in self.deltas.iter().enumerate() {
            if !delta.matmul(&prev).is_zero() {
                return false;
            }
            // exact at I^q: ker(delta) = im(prev)
            let ker_dim = delta.cols() - delta.rank();
            if prev.rank() != ker_dim {
                return false;
            }
            let iq = self.term(q);
            let iq1 = self.term(q + 1);
            for i in 0..self.algebra.dim {
                if delta.matmul(iq.act_basis(i)) != iq1.act_basis(i).matmul(delta) {
                    return false;
                }
            }
            prev = delta.clone();
        }
        for i in 0..self.algebra.dim {
            let i0 = self.term(0);
            if self.coaug.matmul(n.act_basis(i)) != i0.act_basis(i).matmul(&self.coaug) {
                return false;
            }
        }
        true
    }
}

/// `Ext^p(N, M)` computed from an injective resolution of `M` instead:
/// `H^p(Hom(N, I^*))`.
pub fn ext_dims_injective(n: &AlgModule, m: &AlgModule, n_max: usize) -> Vec<usize> {
    assert_eq!(n.side, Side::Left);
    assert_eq!(m.side, Side::Left);
    let ires = InjectiveResolution::of_left_module(m, n_max + 1);
    hom_into_injectives(n, &ires).cohomology_dims()
}

/// The cochain complex `Hom_R(N, I^*)`, each term carved out of
/// `Hom_K(N, I^q)` by the equivariance equations.
pub fn hom_into_injectives(n: &AlgModule, ires: &InjectiveResolution) -> CochainComplex {
    let field = n.field();
    let alg = &n.algebra;
    // Hom_R(N, I) inside K^{iq_dim x n_dim}: f with f a(x) = a f(x) for all
    // generators a. Represent f column-major as vec(f).
    let mut dims = Vec::new();
    let mut bases: Vec<ExactMatrix> = Vec::new(); // rows span the Hom_R subspace
    for q in 0..ires.ranks.len() {
        let iq = ires.term(q);
        let idim = iq.dim;
        // vec(f) ordering: f[i][j] at index j*idim + i (stack columns)
        let mut eqs: Vec<ExactMatrix> = Vec::new();
        for a in &alg.generators {
            let na = n.act_elem(a);
            let ia = iq.act_elem(a);
            // vec(f . na - ia . f) = (na^T (x) Id - Id (x) ia) vec(f)
            let lhs = na
                .transpose()
                .kron(&ExactMatrix::identity(field, idim))
                .sub(&ExactMatrix::identity(field, n.dim).kron(&ia));
            eqs.push(lhs);
        }
        let stacked = if eqs.is_empty() {
            ExactMatrix::zeros(field, 0, idim * n.dim)
        } else {
            let refs: Vec<&ExactMatrix> = eqs.iter().collect();
            ExactMatrix::vstack(&refs)
        };
        let basis = stacked.kernel_matrix();
        dims.push(basis.rows());
        bases.push(basis);
    }
    // postcomposition with delta^q descends to the Hom_R subspaces
    let mut d = Vec::new();
    for q in 0..ires.deltas.len() {
        let delta = &ires.deltas[q];
        let big = ExactMatrix::identity(field, n.dim).kron(delta); // on vec(f)
        let src = bases[q].transpose(); // ambient x dim_q
        let img = big.matmul(&src);
        let tgt = bases[q + 1].transpose();
        let coords = tgt
            .solve(&img)
            .expect("delta does not preserve equivariant maps");
        d.push(coords);
    }
    CochainComplex {
        field,
        dims,
        d,
    }
}

/// The vector space `X (x)_R N` as a quotient of `X (x)_K N`, with its
/// projection. Relations `x a (x) y - x (x) a y` are imposed for `a` ranging
/// over the algebra's generating set, which suffices because the defect
/// filtration is multiplicative.
pub fn tensor_over_algebra(x: &dyn ModuleOps, n: &dyn ModuleOps) -> QuotientSpace {
    assert_eq!(x.side(), Side::Right);
    assert_eq!(n.side(), Side::Left);
    let field = x.field();
    let (xd, nd) = (x.dim(), n.dim());
    let mut span = RowSpace::new(field, xd * nd);
    for a in &x.algebra().generators {
        let xa = x.act_elem_matrix(a);
        let na = n.act_elem_matrix(a);
        let rel = xa.kron(&ExactMatrix::identity(field, nd)).sub(
            &ExactMatrix::identity(field, xd).kron(&na),
        );
        for j in 0..xd * nd {
            span.push(&rel.col(j));
        }
    }
    QuotientSpace::quotient_by(&Subspace::from_rows(&span.basis_matrix()))
}
