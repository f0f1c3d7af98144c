//! The code blocks from `book/src/*.md`, verbatim, so the guide cannot
//! drift from the library. One test per chapter, named after the file.

use parhom::algebra::Bimodule;
use parhom::cli::{fixture_problem, run, BoundsSpec};
use parhom::graded::{epsilon_verify, pcp2, tri2, NotEpsilonStrong};
use parhom::group::{group_homology, FinGroup};
use parhom::hochschild::{e2_page, hochschild_homology, pi_action};
use parhom::partial::{
    globalize, module_from_partial_rep, partial_homology, KparAlgebra,
};
use parhom::spectral::{grothendieck_double_complex, ss_pages};
use parhom::{ExactMatrix, FieldSpec, QuotientSpace, Subspace};

#[test]
fn introduction() {
    // a 3-dimensional Z/2-graded algebra, the running example
    let s = pcp2(FieldSpec::Rationals);
    let eps = epsilon_verify(&s).expect("epsilon-strong");
    let m = Bimodule::regular(&s.algebra);

    // Hochschild H_0(S, S) ...
    let h = hochschild_homology(&s.algebra, &m, 0);

    // ... equals partial group homology of G = Z/2 with coefficients in
    // the coinvariants H_0(A, S), carrying the partial action pi
    let k = KparAlgebra::build_cached(s.field(), &s.group);
    let pa = pi_action(&s, &eps, &m);
    let h0 = module_from_partial_rep(&k, &pa.rep).unwrap();
    assert_eq!(h[0], partial_homology(&k, &h0, 0)[0]);
}

#[test]
fn exact_linear_algebra() {
    let f5 = FieldSpec::prime_field(5).unwrap();
    assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));

    let f = FieldSpec::Rationals;
    let rows = ExactMatrix::from_i64(f, &[&[1, 2, 3], &[0, 1, 1]]);
    let sub = Subspace::from_rows(&rows);
    let q = QuotientSpace::quotient_by(&sub);
    assert_eq!(sub.dim() + q.dim, 3);
    // projection . section = identity on the quotient
    assert_eq!(
        q.projection.matmul(&q.section),
        ExactMatrix::identity(f, q.dim)
    );
}

#[test]
fn partial_group_algebra() {
    let q = FieldSpec::Rationals;
    assert_eq!(KparAlgebra::build(q, &FinGroup::cyclic(2)).unwrap().dim(), 3);
    assert_eq!(KparAlgebra::build(q, &FinGroup::cyclic(3)).unwrap().dim(), 8);
    assert_eq!(
        KparAlgebra::build(q, &FinGroup::symmetric(3)).unwrap().dim(),
        112
    );

    let k = KparAlgebra::build(FieldSpec::Rationals, &FinGroup::cyclic(3)).unwrap();
    let a = &k.algebra;
    let (g, h) = (1usize, 2usize);
    let bracket = |t: usize| a.basis_vec(k.bracket[t]);
    let e = |t: usize| a.basis_vec(k.e_idem[t]);
    assert_eq!(
        a.mul(&bracket(g), &e(h)),
        a.mul(&e(k.group.mul(g, h)), &bracket(g))
    );
}

#[test]
fn epsilon_gradings() {
    let q = FieldSpec::Rationals;

    // pcp2: basis {u, v, d}, deg u = deg v = 1, deg d = g; d² = u.
    let s = pcp2(q);
    let eps = epsilon_verify(&s).unwrap();
    assert_eq!(eps.units[1], s.algebra.basis_vec(0)); // 1_g = u
    assert_eq!(eps.witnesses[1].len(), 1); // the single pair (d, d)

    // tri2 (upper-triangular 2x2, S_g = span{e12}) fails axiom (iii)
    match epsilon_verify(&tri2(q)) {
        Err(NotEpsilonStrong::Axiom { axiom, .. }) => assert!(axiom.starts_with("(iii)")),
        _ => panic!("tri2 must be rejected"),
    }
}

#[test]
fn hochschild() {
    let s = pcp2(FieldSpec::Rationals);
    let eps = epsilon_verify(&s).unwrap();
    let m = Bimodule::regular(&s.algebra);
    let pa = pi_action(&s, &eps, &m);
    // on pcp2 the coinvariants are all of S, and pi_g fixes u and d, kills v
    assert_eq!(pa.carrier.dim, 3);
    assert!(pa.rep.check().is_ok());
}

#[test]
fn partial_homology_globalization() {
    let grp = FinGroup::cyclic(2);
    let k = KparAlgebra::build_cached(FieldSpec::PrimeField(2), &grp);
    let b = k.b_left_module();
    let g = globalize(&k, &b);
    assert_eq!(
        partial_homology(&k, &b, 3),
        group_homology(&grp, &g.module, 3)
    );
}

#[test]
fn spectral_sequence() {
    let s = pcp2(FieldSpec::PrimeField(2));
    let eps = epsilon_verify(&s).unwrap();
    let m = Bimodule::regular(&s.algebra);
    let k = KparAlgebra::build_cached(s.field(), &s.group);

    let gr = grothendieck_double_complex(&k, &s, &eps, &m, 2, 2);
    let ss = ss_pages(&gr.dc, 3);
    let e2 = e2_page(&k, &s, &eps, &m, 2, 2);
    for p in 0..=2 {
        for q in 0..=2 {
            if let Some(d) = ss.pages[2].dims[p][q] {
                assert_eq!(d, e2[p][q]);
            }
        }
    }
    let hh = hochschild_homology(&s.algebra, &m, ss.n_cert);
    assert_eq!(ss.total_homology, hh);
}

#[test]
fn cli_and_reports() {
    let spec =
        fixture_problem("pcp2", FieldSpec::Rationals, "hh", BoundsSpec::default()).unwrap();
    let report = run(&spec).unwrap();
    assert!(report.ok);
    assert_eq!(report.hochschild.unwrap().dims, ["3", "0", "0"]);
}
