//! Hochschild (co)homology and the partial actions connecting it to partial
//! group homology.
//!
//! The bar complexes here are the direct, exponential-size computations used
//! as ground truth.  The interesting structure is in [`pi_action`] /
//! [`tau_action`] (the partial representations of `G` on `A (x)_{A^e} M` and
//! `Hom_{A^e}(A, M)`), [`f_of_resolution`] (the derived functor
//! `F = A (x)_{A^e} -` applied levelwise to an `S^e`-resolution, which is how
//! `H_q(A, M)` acquires its `K_par G`-module structure), and [`gamma_check`]
//! (the base-change isomorphism `X (x)_{K_par G} F(M) ~ (X (x)_B S) (x)_{S^e} M`).

use std::rc::Rc;

use crate::algebra::{AlgModule, Bimodule, FinDimAlgebra, Side};
use crate::complex::{ChainComplex, CochainComplex, Subquotient};
use crate::field::{FieldSpec, Scalar};
use crate::graded::{EpsilonData, GradedAlgebra, GradedBimodule};
use crate::matrix::{ExactMatrix, QuotientSpace, RowSpace, Subspace};
use crate::partial::{module_from_partial_rep, KparAlgebra, PartialRep};
use crate::resolution::{resolve, FreeResolution};

fn sign(field: FieldSpec, j: usize) -> Scalar {
    if j % 2 == 0 {
        field.one()
    } else {
        field.neg(&field.one())
    }
}

fn tuple_code(d: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i)
}

fn next_tuple(d: usize, t: &mut [usize]) -> bool {
    for slot in (0..t.len()).rev() {
        t[slot] += 1;
        if t[slot] < d {
            return true;
        }
        t[slot] = 0;
    }
    false
}

/// The Hochschild chain complex `C_n = M (x) S^{(x)n}` with the standard
/// boundary, for `n = 0 .. n_max + 1`; homology is certified at `0 .. n_max`.
/// Basis index at level `n`: `mk * dim(S)^n + code(i_1..i_n)`.
pub fn hochschild_chain_complex(
    alg: &Rc<FinDimAlgebra>,
    m: &Bimodule,
    n_max: usize,
) -> ChainComplex {
    assert!(Rc::ptr_eq(alg, &m.algebra));
    let field = alg.field;
    let d = alg.dim;
    let md = m.dim;
    let mut dims = vec![md];
    for k in 1..=n_max + 1 {
        dims.push(md * d.pow(k as u32));
    }
    let mut maps = Vec::new();
    for k in 1..=n_max + 1 {
        let dk1 = d.pow((k - 1) as u32);
        let mut dm = ExactMatrix::zeros(field, dims[k - 1], dims[k]);
        let mut add = |row: usize, col: usize, v: &Scalar| {
            if !v.is_zero() {
                let cur = dm.get(row, col);
                dm.set(row, col, field.add(&cur, v));
            }
        };
        let mut tup = vec![0usize; k];
        loop {
            let tcode = tuple_code(d, &tup);
            for mk in 0..md {
                let col = mk * d * dk1 + tcode;
                // face 0: m s_1 (x) s_2 .. s_n
                let rest0 = tcode % dk1;
                let v = m.right_action[tup[0]].col(mk);
                for t in 0..md {
                    add(t * dk1 + rest0, col, &v.get(t, 0));
                }
                // inner faces: merge s_j s_{j+1}
                for j in 1..k {
                    let p = alg.left_mat(tup[j - 1]).col(tup[j]);
                    let sg = sign(field, j);
                    for t in 0..d {
                        let c = p.get(t, 0);
                        if c.is_zero() {
                            continue;
                        }
                        let mut merged = Vec::with_capacity(k - 1);
                        merged.extend_from_slice(&tup[..j - 1]);
                        merged.push(t);
                        merged.extend_from_slice(&tup[j + 1..]);
                        add(
                            mk * dk1 + tuple_code(d, &merged),
                            col,
                            &field.mul(&sg, &c),
                        );
                    }
                }
                // last face: s_n m (x) s_1 .. s_{n-1}
                let restk = tcode / d;
                let v = m.left_action[tup[k - 1]].col(mk);
                let sg = sign(field, k);
                for t in 0..md {
                    add(t * dk1 + restk, col, &field.mul(&sg, &v.get(t, 0)));
                }
            }
            if !next_tuple(d, &mut tup) {
                break;
            }
        }
        maps.push(dm);
    }
    let c = ChainComplex {
        field,
        dims,
        d: maps,
    };
    c.validate().expect("Hochschild boundary squares to zero");
    c
}

/// `H_n(S, M)` dims for `n = 0 .. n_max`.
pub fn hochschild_homology(alg: &Rc<FinDimAlgebra>, m: &Bimodule, n_max: usize) -> Vec<usize> {
    hochschild_chain_complex(alg, m, n_max).homology_dims()
}

/// The Hochschild cochain complex `C^n = Hom(S^{(x)n}, M)` with the standard
/// coboundary, levels `0 .. n_max + 1`; cohomology certified at `0 .. n_max`.
pub fn hochschild_cochain_complex(
    alg: &Rc<FinDimAlgebra>,
    m: &Bimodule,
    n_max: usize,
) -> CochainComplex {
    assert!(Rc::ptr_eq(alg, &m.algebra));
    let field = alg.field;
    let d = alg.dim;
    let md = m.dim;
    let mut dims = vec![md];
    for k in 1..=n_max + 1 {
        dims.push(md * d.pow(k as u32));
    }
    let mut maps = Vec::new();
    for k in 0..=n_max {
        let dk = d.pow(k as u32);
        let mut dm = ExactMatrix::zeros(field, dims[k + 1], dims[k]);
        let mut add = |row: usize, col: usize, v: &Scalar| {
            if !v.is_zero() {
                let cur = dm.get(row, col);
                dm.set(row, col, field.add(&cur, v));
            }
        };
        let mut tup = vec![0usize; k];
        loop {
            let icode = tuple_code(d, &tup);
            for mk in 0..md {
                let col = mk * dk + icode;
                // face 0: s_{j1} f(j2 ..)
                for j1 in 0..d {
                    let v = m.left_action[j1].col(mk);
                    for t in 0..md {
                        add(t * d * dk + j1 * dk + icode, col, &v.get(t, 0));
                    }
                }
                // inner faces: f evaluated on a merged product slot
                for pos in 1..=k {
                    let sg = sign(field, pos);
                    for a in 0..d {
                        for b in 0..d {
                            let c = alg.left_mat(a).get(tup[pos - 1], b);
                            if c.is_zero() {
                                continue;
                            }
                            let mut target = Vec::with_capacity(k + 1);
                            target.extend_from_slice(&tup[..pos - 1]);
                            target.push(a);
                            target.push(b);
                            target.extend_from_slice(&tup[pos..]);
                            add(
                                mk * d * dk + tuple_code(d, &target),
                                col,
                                &field.mul(&sg, &c),
                            );
                        }
                    }
                }
                // last face: f(j1 .. jn) s_{j_{n+1}}
                let sg = sign(field, k + 1);
                for j in 0..d {
                    let v = m.right_action[j].col(mk);
                    for t in 0..md {
                        add(t * d * dk + icode * d + j, col, &field.mul(&sg, &v.get(t, 0)));
                    }
                }
            }
            if !next_tuple(d, &mut tup) {
                break;
            }
        }
        maps.push(dm);
    }
    let c = CochainComplex {
        field,
        dims,
        d: maps,
    };
    c.validate().expect("Hochschild coboundary squares to zero");
    c
}

/// `H^n(S, M)` dims for `n = 0 .. n_max`.
pub fn hochschild_cohomology(alg: &Rc<FinDimAlgebra>, m: &Bimodule, n_max: usize) -> Vec<usize> {
    hochschild_cochain_complex(alg, m, n_max).cohomology_dims()
}

/// The Hochschild complex split by conjugacy classes: level-`n` basis tensors
/// `m_{g_0} (x) s_{g_1} (x) .. (x) s_{g_n}` are grouped by the class of
/// `g_0 g_1 .. g_n`.
pub struct SplitComplex {
    /// One representative per conjugacy class, aligned with the other fields.
    pub class_reps: Vec<usize>,
    pub per_class: Vec<ChainComplex>,
    /// `H_n^g(S, M)` dims, per class, `n = 0 .. n_max`.
    pub per_class_dims: Vec<Vec<usize>>,
    pub total_dims: Vec<usize>,
}

/// Splits the Hochschild complex of a graded bimodule by conjugacy class and
/// certifies `sum_g dim H_n^g = dim H_n(S, M)`.  Panics if the boundary fails
/// to preserve a summand (it cannot, for a genuinely graded input).
pub fn conjugacy_splitting(
    s: &GradedAlgebra,
    m: &GradedBimodule,
    n_max: usize,
) -> SplitComplex {
    let c = hochschild_chain_complex(&s.algebra, &m.bimodule, n_max);
    let conj = s.group.conjugacy();
    let mut class_of = vec![0usize; s.group.order];
    for (ci, cl) in conj.classes.iter().enumerate() {
        for &x in cl {
            class_of[x] = ci;
        }
    }
    let d = s.dim();
    // class of every basis index, per level
    let mut level_class: Vec<Vec<usize>> = Vec::new();
    for (k, &dim_k) in c.dims.iter().enumerate() {
        let mut cls = Vec::with_capacity(dim_k);
        for idx in 0..dim_k {
            let dk = d.pow(k as u32);
            let mk = idx / dk;
            let mut code = idx % dk;
            let mut g = m.degree[mk];
            let mut slots = Vec::with_capacity(k);
            for _ in 0..k {
                slots.push(code % d);
                code /= d;
            }
            for &i in slots.iter().rev() {
                g = s.group.mul(g, s.degree[i]);
            }
            cls.push(class_of[g]);
        }
        level_class.push(cls);
    }
    // the boundary must preserve each summand
    for (i, dm) in c.d.iter().enumerate() {
        for col in 0..dm.cols() {
            for row in 0..dm.rows() {
                if !dm.get(row, col).is_zero() {
                    assert_eq!(
                        level_class[i][row],
                        level_class[i + 1][col],
                        "boundary leaks across conjugacy classes"
                    );
                }
            }
        }
    }
    let mut per_class = Vec::new();
    let mut per_class_dims = Vec::new();
    for ci in 0..conj.classes.len() {
        let idx: Vec<Vec<usize>> = level_class
            .iter()
            .map(|cls| {
                (0..cls.len()).filter(|&i| cls[i] == ci).collect::<Vec<_>>()
            })
            .collect();
        let dims: Vec<usize> = idx.iter().map(|v| v.len()).collect();
        let maps: Vec<ExactMatrix> = c
            .d
            .iter()
            .enumerate()
            .map(|(i, dm)| dm.select_rows(&idx[i]).select_cols(&idx[i + 1]))
            .collect();
        let sub = ChainComplex {
            field: c.field,
            dims,
            d: maps,
        };
        sub.validate().unwrap();
        per_class_dims.push(sub.homology_dims());
        per_class.push(sub);
    }
    let total_dims = c.homology_dims();
    for n in 0..total_dims.len() {
        let sum: usize = per_class_dims.iter().map(|v| v[n]).sum();
        assert_eq!(sum, total_dims[n], "class splitting must add up at degree {n}");
    }
    SplitComplex {
        class_reps: conj.reps.clone(),
        per_class,
        per_class_dims,
        total_dims,
    }
}

/// The partial representation `pi` of `G` on `A (x)_{A^e} M = M / [A, M]`,
/// `pi_g(class m) = sum_i R_g^i m L_{g^-1}^i` over a witness family for
/// `1_{g^-1}`.
pub struct PiAction {
    /// `M / span{a m - m a : a in A}` with projection/section.
    pub carrier: QuotientSpace,
    pub rep: PartialRep,
}

/// Relation span `{a m - m a}` for `a` over the identity-component basis.
fn commutator_span(s: &GradedAlgebra, m: &Bimodule) -> Subspace {
    let field = s.field();
    let mut rs = RowSpace::new(field, m.dim);
    for &a in &s.component_indices(0) {
        let rel = m.left_action[a].sub(&m.right_action[a]);
        for j in 0..m.dim {
            rs.push(&rel.col(j));
        }
    }
    Subspace::from_rows(&rs.basis_matrix())
}

fn assert_descends(quot: &QuotientSpace, sub: &Subspace, op: &ExactMatrix, what: &str) {
    for r in 0..sub.dim() {
        let v = sub.basis().row(r).transpose();
        assert!(
            quot.projection.matmul(&op.matmul(&v)).is_zero(),
            "{what} does not descend to the quotient"
        );
    }
}

/// `pi_g` as an ambient operator on the bimodule `M` (before quotienting).
fn pi_ambient(s: &GradedAlgebra, eps: &EpsilonData, m: &Bimodule, g: usize) -> ExactMatrix {
    let field = s.field();
    let mut op = ExactMatrix::zeros(field, m.dim, m.dim);
    for (l, r) in &eps.witnesses[s.group.inv(g)] {
        op = op.add(&m.left_elem(r).matmul(&m.right_elem(l)));
    }
    op
}

pub fn pi_action(s: &GradedAlgebra, eps: &EpsilonData, m: &Bimodule) -> PiAction {
    let sub = commutator_span(s, m);
    let quot = QuotientSpace::quotient_by(&sub);
    let n = s.group.order;
    let mut mats = Vec::with_capacity(n);
    for g in 0..n {
        let op = pi_ambient(s, eps, m, g);
        assert_descends(&quot, &sub, &op, "pi_g");
        mats.push(quot.induced(&op));
    }
    let rep = PartialRep {
        group: s.group.clone(),
        dim: quot.dim,
        mats,
    };
    rep.check().expect("pi is a partial representation");
    // pi_g pi_{g^-1}(class m) = class(1_g m): 1_g is central in A, so left
    // multiplication by it descends
    for g in 0..n {
        let lu = m.left_elem(&eps.units[g]);
        assert_descends(&quot, &sub, &lu, "multiplication by 1_g");
        assert_eq!(
            rep.mats[g].matmul(&rep.mats[s.group.inv(g)]),
            quot.induced(&lu),
            "pi_g pi_g^-1 must be multiplication by 1_g"
        );
    }
    PiAction { carrier: quot, rep }
}

/// The partial representation `tau` of `G` on `Hom_{A^e}(A, M) =
/// {m : am = ma for all a in A}`, `tau_g(m) = sum_i L_g^i m R_{g^-1}^i`.
pub struct TauAction {
    /// The `A`-centralizer of `M`, as a subspace of `M`.
    pub carrier: Subspace,
    pub rep: PartialRep,
}

pub fn tau_action(s: &GradedAlgebra, eps: &EpsilonData, m: &Bimodule) -> TauAction {
    let field = s.field();
    let a_idx = s.component_indices(0);
    let stacked: Vec<ExactMatrix> = a_idx
        .iter()
        .map(|&a| m.left_action[a].sub(&m.right_action[a]))
        .collect();
    let refs: Vec<&ExactMatrix> = stacked.iter().collect();
    let carrier = Subspace::from_rows(&ExactMatrix::vstack(&refs).kernel_matrix());
    let k = carrier.dim();
    let basis_cols: Vec<ExactMatrix> =
        (0..k).map(|r| carrier.basis().row(r).transpose()).collect();
    let bmat = if k == 0 {
        ExactMatrix::zeros(field, m.dim, 0)
    } else {
        let refs: Vec<&ExactMatrix> = basis_cols.iter().collect();
        ExactMatrix::hstack(&refs)
    };
    let n = s.group.order;
    let mut mats = Vec::with_capacity(n);
    for g in 0..n {
        let mut op = ExactMatrix::zeros(field, m.dim, m.dim);
        for (l, r) in &eps.witnesses[g] {
            op = op.add(&m.left_elem(l).matmul(&m.right_elem(r)));
        }
        // restrict to the carrier
        let mut restricted = ExactMatrix::zeros(field, k, k);
        for (j, b) in basis_cols.iter().enumerate() {
            let img = op.matmul(b);
            assert!(carrier.contains(&img), "tau_g must preserve the centralizer");
            let coords = bmat.solve(&img).unwrap();
            restricted.set_block(0, j, &coords);
        }
        mats.push(restricted);
    }
    let rep = PartialRep {
        group: s.group.clone(),
        dim: k,
        mats,
    };
    rep.check().expect("tau is a partial representation");
    TauAction { carrier, rep }
}

/// The functor `F = A (x)_{A^e} -` applied levelwise to a free
/// `S^e`-resolution of `M`, with the partial `G`-action on every level and
/// the induced differentials.  Levels run `0 ..= levels`.
pub struct FData {
    pub env: Rc<FinDimAlgebra>,
    pub res: FreeResolution,
    /// `F(P_q)` as a quotient of the ambient free module, per level.
    pub quots: Vec<QuotientSpace>,
    /// `pi[q][g]`: the partial action on `F(P_q)`.
    pub pi: Vec<Vec<ExactMatrix>>,
    /// `F(d_q): F(P_{q+1}) -> F(P_q)`.
    pub diffs: Vec<ExactMatrix>,
}

impl FData {
    /// The levelwise complex `F(P_*)`; its homology is `H_*(A, M)`.
    pub fn complex(&self) -> ChainComplex {
        let c = ChainComplex {
            field: self.env.field,
            dims: self.quots.iter().map(|q| q.dim).collect(),
            d: self.diffs.clone(),
        };
        c.validate().unwrap();
        c
    }
}

pub fn f_of_resolution(
    s: &GradedAlgebra,
    eps: &EpsilonData,
    m: &Bimodule,
    levels: usize,
) -> FData {
    let field = s.field();
    let env = s.algebra.enveloping();
    let menv = m.to_env_module(&env);
    let res = resolve(&menv, levels);
    let ed = env.dim;

    // commutator elements (a (x) 1) - (1 (x) a) of S^e, for a over the
    // A-basis; their left multiplication spans the relations of F
    let comm_elems: Vec<ExactMatrix> = s
        .component_indices(0)
        .iter()
        .map(|&a| {
            let ba = s.algebra.basis_vec(a);
            ba.kron(&s.algebra.unit).sub(&s.algebra.unit.kron(&ba))
        })
        .collect();
    // pi_g as an element of S^e: sum_i R_g^i (x) L_{g^-1}^i
    let pi_elems: Vec<ExactMatrix> = (0..s.group.order)
        .map(|g| {
            let mut e = ExactMatrix::zeros(field, ed, 1);
            for (l, r) in &eps.witnesses[s.group.inv(g)] {
                e = e.add(&r.kron(l));
            }
            e
        })
        .collect();

    let mut quots = Vec::new();
    let mut subs = Vec::new();
    let mut pi = Vec::new();
    for q in 0..res.ranks.len() {
        let rq = res.ranks[q];
        let amb = rq * ed;
        let mut rs = RowSpace::new(field, amb);
        for ce in &comm_elems {
            let mat = env.left_mul_matrix(ce);
            let block = ExactMatrix::identity(field, rq).kron(&mat);
            for j in 0..amb {
                rs.push(&block.col(j));
            }
        }
        let sub = Subspace::from_rows(&rs.basis_matrix());
        let quot = QuotientSpace::quotient_by(&sub);
        let mut ops = Vec::new();
        for pe in &pi_elems {
            let op = ExactMatrix::identity(field, rq).kron(&env.left_mul_matrix(pe));
            assert_descends(&quot, &sub, &op, "levelwise pi_g");
            ops.push(quot.induced(&op));
        }
        pi.push(ops);
        quots.push(quot);
        subs.push(sub);
    }
    let mut diffs = Vec::new();
    for i in 0..res.length() {
        assert_descends(&quots[i], &subs[i + 1], &res.diffs[i], "F(d)");
        diffs.push(
            quots[i]
                .projection
                .matmul(&res.diffs[i])
                .matmul(&quots[i + 1].section),
        );
    }
    FData {
        env,
        res,
        quots,
        pi,
        diffs,
    }
}

/// `H_q(A, M)` for `q = 0 .. q_max` as left `K_par G`-modules (via the
/// levelwise partial action on an `S^e`-resolution — the paper's derived
/// functor route, not a chain-level formula).
pub struct HqKparModules {
    pub spaces: Vec<Subquotient>,
    pub reps: Vec<PartialRep>,
    pub modules: Vec<AlgModule>,
    pub fdata: FData,
}

pub fn hq_kpar_modules(
    k: &Rc<KparAlgebra>,
    s: &GradedAlgebra,
    eps: &EpsilonData,
    m: &Bimodule,
    q_max: usize,
) -> HqKparModules {
    assert_eq!(k.group, s.group);
    assert_eq!(k.field(), s.field());
    let fdata = f_of_resolution(s, eps, m, q_max + 1);
    let complex = fdata.complex();
    let h = complex
        .homology_with_action(&fdata.pi)
        .expect("differentials are equivariant for pi");
    let mut spaces = Vec::new();
    let mut reps = Vec::new();
    let mut modules = Vec::new();
    for (q, (space, mats)) in h.into_iter().enumerate() {
        if q > q_max {
            break;
        }
        let rep = PartialRep {
            group: s.group.clone(),
            dim: space.dim(),
            mats,
        };
        let module = module_from_partial_rep(k, &rep)
            .expect("induced action on homology is a partial representation");
        spaces.push(space);
        reps.push(rep);
        modules.push(module);
    }
    HqKparModules {
        spaces,
        reps,
        modules,
        fdata,
    }
}

/// `E^2_{p,q} = H_p^par(G, H_q(A, M))` dims; `table[p][q]`.
pub fn e2_page(
    k: &Rc<KparAlgebra>,
    s: &GradedAlgebra,
    eps: &EpsilonData,
    m: &Bimodule,
    p_max: usize,
    q_max: usize,
) -> Vec<Vec<usize>> {
    let hq = hq_kpar_modules(k, s, eps, m, q_max);
    let cols: Vec<Vec<usize>> = hq
        .modules
        .iter()
        .map(|x| crate::partial::partial_homology(k, x, p_max))
        .collect();
    (0..=p_max)
        .map(|p| (0..=q_max).map(|q| cols[q][p]).collect())
        .collect()
}

/// Result of [`gamma_check`]: dims of both sides and the verified bijection.
pub struct GammaReport {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// the matrix of gamma in quotient bases (square, invertible)
    pub matrix: ExactMatrix,
}

#[derive(Debug, thiserror::Error)]
pub enum GammaError {
    #[error("gamma is not well defined: relation {0} has nonzero image")]
    NotWellDefined(usize),
    #[error("gamma is not bijective: lhs dim {0}, rhs dim {1}, rank {2}")]
    NotBijective(usize, usize, usize),
}

/// Verifies the base-change isomorphism
/// `gamma: X (x)_{K_par G} (A (x)_{A^e} M)  ->  (X (x)_B S) (x)_{S^e} M`,
/// `x (x) class(m) -> (x (x) 1_S) (x) m`, for a right `K_par G`-module `X`.
pub fn gamma_check(
    k: &Rc<KparAlgebra>,
    s: &GradedAlgebra,
    eps: &EpsilonData,
    m: &Bimodule,
    x: &AlgModule,
) -> Result<GammaReport, GammaError> {
    assert_eq!(x.side, Side::Right);
    assert!(Rc::ptr_eq(&x.algebra, &k.algebra), "x must be a K_par G-module");
    let field = s.field();
    let xd = x.dim;
    let sd = s.dim();
    let md = m.dim;

    // left-hand side: X (x)_{KparG} F(M)
    let pa = pi_action(s, eps, m);
    let nmod = module_from_partial_rep(k, &pa.rep).expect("pi module");
    let lhs = crate::resolution::tensor_over_algebra(x, &nmod);

    // X (x)_B S: quotient of X (x) S by x e_g (x) s - x (x) 1_g s
    let mut rs = RowSpace::new(field, xd * sd);
    for g in 1..s.group.order {
        let e_idx = k.e_idem[g];
        let xe = x.act_basis(e_idx);
        let lu = s.algebra.left_mul_matrix(&eps.units[g]);
        let rel = xe
            .kron(&ExactMatrix::identity(field, sd))
            .sub(&ExactMatrix::identity(field, xd).kron(&lu));
        for j in 0..xd * sd {
            rs.push(&rel.col(j));
        }
    }
    let q1sub = Subspace::from_rows(&rs.basis_matrix());
    let q1 = QuotientSpace::quotient_by(&q1sub);

    // S-bimodule structure on X (x)_B S: for homogeneous s_g,
    // s_g . (x (x) t) = x [g^-1] (x) s_g t  and  (x (x) t) . s = x (x) t s
    let mut v_left = Vec::with_capacity(sd);
    let mut v_right = Vec::with_capacity(sd);
    for i in 0..sd {
        let g = s.degree[i];
        let ginv_br = k.bracket[s.group.inv(g)];
        let xb = x.act_basis(ginv_br);
        let amb_l = xb.kron(s.algebra.left_mat(i));
        let amb_r = ExactMatrix::identity(field, xd).kron(s.algebra.right_mat(i));
        assert_descends(&q1, &q1sub, &amb_l, "left S-action on X (x)_B S");
        assert_descends(&q1, &q1sub, &amb_r, "right S-action on X (x)_B S");
        v_left.push(q1.induced(&amb_l));
        v_right.push(q1.induced(&amb_r));
    }
    let vbim = Bimodule {
        algebra: s.algebra.clone(),
        dim: q1.dim,
        left_action: v_left,
        right_action: v_right,
    };
    vbim.validate().expect("X (x)_B S is an S-bimodule");

    // (X (x)_B S) (x)_{S^e} M: relations over the algebra generators
    let vd = vbim.dim;
    let mut rs2 = RowSpace::new(field, vd * md);
    for a in &s.algebra.generators {
        let fams = [
            (vbim.right_elem(a), m.left_elem(a)),
            (vbim.left_elem(a), m.right_elem(a)),
        ];
        for (va, ma) in fams {
            let rel = va
                .kron(&ExactMatrix::identity(field, md))
                .sub(&ExactMatrix::identity(field, vd).kron(&ma));
            for j in 0..vd * md {
                rs2.push(&rel.col(j));
            }
        }
    }
    let q2 = QuotientSpace::quotient_by(&Subspace::from_rows(&rs2.basis_matrix()));

    // gamma on the pre-quotient X (x) M
    let mut g0 = ExactMatrix::zeros(field, q2.dim, xd * md);
    for i in 0..xd {
        // class of x_i (x) 1_S in X (x)_B S
        let mut w = ExactMatrix::zeros(field, xd * sd, 1);
        for t in 0..sd {
            w.set(i * sd + t, 0, s.algebra.unit.get(t, 0));
        }
        let v = q1.projection.matmul(&w);
        for j in 0..md {
            let mut amb = ExactMatrix::zeros(field, vd * md, 1);
            for t in 0..vd {
                amb.set(t * md + j, 0, v.get(t, 0));
            }
            g0.set_block(0, i * md + j, &q2.projection.matmul(&amb));
        }
    }
    // gamma kills commutators in the M factor, so it is defined on X (x) F(M)
    let comm = commutator_span(s, m);
    for r in 0..comm.dim() {
        let cv = comm.basis().row(r).transpose();
        for i in 0..xd {
            let mut amb = ExactMatrix::zeros(field, xd * md, 1);
            amb.set_block(i * md, 0, &cv);
            if !g0.matmul(&amb).is_zero() {
                return Err(GammaError::NotWellDefined(i));
            }
        }
    }
    let g1 = g0.matmul(&ExactMatrix::identity(field, xd).kron(&pa.carrier.section));
    // gamma kills the K_par G tensor relations
    let relkern = lhs.projection.kernel_matrix();
    for r in 0..relkern.rows() {
        if !g1.matmul(&relkern.row(r).transpose()).is_zero() {
            return Err(GammaError::NotWellDefined(r));
        }
    }
    let matrix = g1.matmul(&lhs.section);
    let rank = matrix.rank();
    if lhs.dim != q2.dim || rank != lhs.dim {
        return Err(GammaError::NotBijective(lhs.dim, q2.dim, rank));
    }
    Ok(GammaReport {
        lhs_dim: lhs.dim,
        rhs_dim: q2.dim,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{
        b_action_on_s, epsilon_verify, identity_component, kgrp, pcp2, restrict_bimodule,
        GradedBimodule,
    };
    use crate::group::FinGroup;
    use crate::partial::partial_homology;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }
    fn gf(p: u64) -> FieldSpec {
        FieldSpec::PrimeField(p)
    }

    /// Tor_*^{S^e}(S, M): the independent oracle for Hochschild homology.
    fn hh_via_tor(alg: &Rc<FinDimAlgebra>, m: &Bimodule, n_max: usize) -> Vec<usize> {
        let env = alg.enveloping();
        // S as a right S^e-module: s . (a (x) b) = b s a
        let d = alg.dim;
        let action: Vec<ExactMatrix> = (0..d * d)
            .map(|ij| alg.left_mat(ij % d).matmul(alg.right_mat(ij / d)))
            .collect();
        let s_right = AlgModule::new(env.clone(), Side::Right, action);
        s_right.validate().unwrap();
        let menv = m.to_env_module(&env);
        crate::resolution::tor_dims(&s_right, &menv, n_max)
    }

    fn hhc_via_ext(alg: &Rc<FinDimAlgebra>, m: &Bimodule, n_max: usize) -> Vec<usize> {
        let env = alg.enveloping();
        let s_left = Bimodule::regular(alg).to_env_module(&env);
        let menv = m.to_env_module(&env);
        crate::resolution::ext_dims(&s_left, &menv, n_max)
    }

    #[test]
    fn ground_field_hochschild() {
        let a = Rc::new(FinDimAlgebra::ground_field(q()));
        let m = Bimodule::regular(&a);
        assert_eq!(hochschild_homology(&a, &m, 3), vec![1, 0, 0, 0]);
        assert_eq!(hochschild_cohomology(&a, &m, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn pcp2_rational_homology_vanishes_above_zero() {
        let s = pcp2(q());
        let m = Bimodule::regular(&s.algebra);
        let dims = hochschild_homology(&s.algebra, &m, 3);
        assert_eq!(dims, vec![3, 0, 0, 0]);
        assert_eq!(hh_via_tor(&s.algebra, &m, 3), dims);
        let codims = hochschild_cohomology(&s.algebra, &m, 2);
        assert_eq!(codims[0], 3);
        assert_eq!(hhc_via_ext(&s.algebra, &m, 2), codims);
    }

    #[test]
    fn pcp2_gf2_matches_tor_and_ext_oracles() {
        let s = pcp2(gf(2));
        let m = Bimodule::regular(&s.algebra);
        let dims = hochschild_homology(&s.algebra, &m, 3);
        assert_eq!(dims, hh_via_tor(&s.algebra, &m, 3));
        // golden values: d generates a GF(2) polynomial-like tail
        assert_eq!(dims[0], 3);
        let codims = hochschild_cohomology(&s.algebra, &m, 2);
        assert_eq!(codims, hhc_via_ext(&s.algebra, &m, 2));
        assert_eq!(codims[0], dims[0]); // commutative: center = S/[S,S]
    }

    #[test]
    fn splitting_trivial_group() {
        let s = kgrp(q(), &FinGroup::cyclic(1));
        let m = GradedBimodule::regular(&s);
        let sp = conjugacy_splitting(&s, &m, 2);
        assert_eq!(sp.class_reps, vec![0]);
        assert_eq!(sp.per_class_dims[0], sp.total_dims);
    }

    #[test]
    fn splitting_pcp2() {
        let s = pcp2(q());
        let m = GradedBimodule::regular(&s);
        let sp = conjugacy_splitting(&s, &m, 3);
        // class {g}: degree-g part of S/[S,S] is spanned by d
        assert_eq!(sp.per_class_dims[1][0], 1);
        assert_eq!(sp.per_class_dims[0][0], 2);
        assert_eq!(sp.total_dims, vec![3, 0, 0, 0]);
    }

    #[test]
    fn splitting_kgrp_s3_gf3() {
        let s = kgrp(gf(3), &FinGroup::symmetric(3));
        let m = GradedBimodule::regular(&s);
        // internal asserts certify the per-class sums
        let sp = conjugacy_splitting(&s, &m, 2);
        assert_eq!(sp.class_reps.len(), 3);
    }

    #[test]
    fn pi_on_pcp2_matches_multiplication_table() {
        let s = pcp2(q());
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let pa = pi_action(&s, &eps, &m);
        assert_eq!(pa.carrier.dim, 3);
        let cls = |i: usize| pa.carrier.projection.col(i);
        // pi_g(class u) = class(d u d) = class u, pi_g(v) = 0, pi_g(d) = d
        assert_eq!(pa.rep.mats[1].matmul(&cls(0)), cls(0));
        assert!(pa.rep.mats[1].matmul(&cls(1)).is_zero());
        assert_eq!(pa.rep.mats[1].matmul(&cls(2)), cls(2));
    }

    #[test]
    fn pi_trivial_group_is_identity() {
        let s = kgrp(q(), &FinGroup::cyclic(1));
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let pa = pi_action(&s, &eps, &m);
        assert_eq!(pa.rep.mats[0], ExactMatrix::identity(q(), pa.carrier.dim));
    }

    #[test]
    fn tau_on_pcp2() {
        let s = pcp2(q());
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let ta = tau_action(&s, &eps, &m);
        // A and S commutative: the centralizer is all of S
        assert_eq!(ta.carrier.dim(), 3);
        // tau_g(m) = d m d on the carrier basis u, v, d
        let t = &ta.rep.mats[1];
        assert_eq!(t.col(0), ExactMatrix::from_i64(q(), &[&[1], &[0], &[0]]));
        assert!(t.col(1).is_zero());
        assert_eq!(t.col(2), ExactMatrix::from_i64(q(), &[&[0], &[0], &[1]]));
    }

    #[test]
    fn tau_on_group_algebra_is_conjugation() {
        let g = FinGroup::symmetric(3);
        let s = kgrp(q(), &g);
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let ta = tau_action(&s, &eps, &m);
        // A = K, so the carrier is all of S and tau_g(e_h) = e_{g h g^-1}
        assert_eq!(ta.carrier.dim(), 6);
        for x in 0..g.order {
            for h in 0..g.order {
                // carrier basis is the canonical S-basis (kernel of 0 map)
                let v = ta.rep.mats[x].col(h);
                let mut expect = ExactMatrix::zeros(q(), 6, 1);
                expect.set(g.conj(x, h), 0, q().one());
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn hq_modules_pcp2_q_semisimple_base() {
        let s = pcp2(q());
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let k = KparAlgebra::build_cached(q(), &s.group);
        let hq = hq_kpar_modules(&k, &s, &eps, &m, 3);
        let dims: Vec<usize> = hq.modules.iter().map(|x| x.dim).collect();
        assert_eq!(dims, vec![3, 0, 0, 0]);
        // q = 0 is isomorphic to pi_action, intertwining the reps
        let pa = pi_action(&s, &eps, &m);
        let phi = pa
            .carrier
            .projection
            .matmul(&hq.fdata.res.aug)
            .matmul(&hq.fdata.quots[0].section);
        // restrict to H_0 = F(P_0)/im and compare actions
        let h0 = &hq.spaces[0];
        let phi0 = phi.matmul(&h0.rep(&ExactMatrix::identity(q(), h0.dim())));
        assert_eq!(phi0.rank(), pa.carrier.dim);
        for g in 0..s.group.order {
            assert_eq!(
                phi0.matmul(&hq.reps[0].mats[g]),
                pa.rep.mats[g].matmul(&phi0)
            );
        }
    }

    #[test]
    fn hq_dims_match_a_bar_complex() {
        for field in [q(), gf(2)] {
            let s = pcp2(field);
            let eps = epsilon_verify(&s).unwrap();
            let m = Bimodule::regular(&s.algebra);
            let k = KparAlgebra::build_cached(field, &s.group);
            let hq = hq_kpar_modules(&k, &s, &eps, &m, 3);
            let via_f: Vec<usize> = hq.modules.iter().map(|x| x.dim).collect();
            let (a, idx) = identity_component(&s);
            let ma = restrict_bimodule(&m, &a, &idx);
            assert_eq!(via_f, hochschild_homology(&a, &ma, 3));
        }
    }

    #[test]
    fn e2_trivial_group() {
        let field = gf(2);
        let s = kgrp(field, &FinGroup::cyclic(1));
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let k = KparAlgebra::build_cached(field, &s.group);
        let table = e2_page(&k, &s, &eps, &m, 2, 2);
        let (a, idx) = identity_component(&s);
        let ma = restrict_bimodule(&m, &a, &idx);
        let hqa = hochschild_homology(&a, &ma, 2);
        for q_ in 0..=2 {
            assert_eq!(table[0][q_], hqa[q_]);
            assert_eq!(table[1][q_], 0);
            assert_eq!(table[2][q_], 0);
        }
    }

    #[test]
    fn e2_corner_equals_h0() {
        for field in [q(), gf(2)] {
            for s in [pcp2(field), kgrp(field, &FinGroup::cyclic(2))] {
                let eps = epsilon_verify(&s).unwrap();
                let m = Bimodule::regular(&s.algebra);
                let k = KparAlgebra::build_cached(field, &s.group);
                let table = e2_page(&k, &s, &eps, &m, 1, 0);
                assert_eq!(table[0][0], hochschild_homology(&s.algebra, &m, 0)[0]);
            }
        }
    }

    #[test]
    fn f_sends_projectives_to_acyclics() {
        let field = gf(2);
        let s = pcp2(field);
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let k = KparAlgebra::build_cached(field, &s.group);
        let fd = f_of_resolution(&s, &eps, &m, 2);
        for q_ in 0..=2 {
            let rep = PartialRep {
                group: s.group.clone(),
                dim: fd.quots[q_].dim,
                mats: fd.pi[q_].clone(),
            };
            let x = module_from_partial_rep(&k, &rep).unwrap();
            let h = partial_homology(&k, &x, 2);
            assert_eq!(h[1], 0, "H_1^par(G, F(P_{q_})) must vanish");
            assert_eq!(h[2], 0, "H_2^par(G, F(P_{q_})) must vanish");
        }
    }

    #[test]
    fn gamma_for_b_and_free_module() {
        for field in [q(), gf(2)] {
            let s = pcp2(field);
            let eps = epsilon_verify(&s).unwrap();
            let m = Bimodule::regular(&s.algebra);
            let k = KparAlgebra::build_cached(field, &s.group);
            let b = k.b_right_module();
            let rep = gamma_check(&k, &s, &eps, &m, &b).unwrap();
            assert_eq!(rep.lhs_dim, hochschild_homology(&s.algebra, &m, 0)[0]);
            let free = AlgModule::right_regular(&k.algebra);
            gamma_check(&k, &s, &eps, &m, &free).unwrap();
        }
    }

    #[test]
    fn gamma_trivial_group() {
        let s = kgrp(q(), &FinGroup::cyclic(1));
        let eps = epsilon_verify(&s).unwrap();
        let m = Bimodule::regular(&s.algebra);
        let k = KparAlgebra::build_cached(q(), &s.group);
        let x = AlgModule::right_regular(&k.algebra);
        let rep = gamma_check(&k, &s, &eps, &m, &x).unwrap();
        assert_eq!(rep.lhs_dim, 1);
    }

    #[test]
    fn b_acts_on_s_through_tor_trivially() {
        // Tor_p^B(B, S) = 0 for p >= 1: B is free over itself, so the
        // statement is exactness of - (x)_B B; verified via the engine
        let field = gf(2);
        let s = pcp2(field);
        let eps = epsilon_verify(&s).unwrap();
        let k = KparAlgebra::build_cached(field, &s.group);
        let imgs = b_action_on_s(&s, &eps);
        let balg = crate::partial::b_algebra(&k);
        let action: Vec<ExactMatrix> = imgs
            .iter()
            .map(|u| s.algebra.left_mul_matrix(u))
            .collect();
        let smod = AlgModule::new(balg.clone(), Side::Left, action);
        smod.validate().unwrap();
        let breg = AlgModule::right_regular(&balg);
        let dims = crate::resolution::tor_dims(&breg, &smod, 2);
        assert_eq!(dims, vec![s.dim(), 0, 0]);
    }
}
