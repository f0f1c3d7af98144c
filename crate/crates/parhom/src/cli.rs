//! Problem-file parsing and report generation for the `parhom` binary.
//!
//! A problem is a single JSON document with fields `field`, `group`,
//! `algebra`, `grading`, optional `module`, `command` and `bounds`.  All
//! numbers travel as strings (`"3"`, `"-1/2"`) so both the input and the
//! report stay exact and diffable; golden-file tests pin the JSON byte for
//! byte.  See `report_schema` in the book for the full layout.
//!
//! Exit-code contract (enforced by the binary): `0` all assertions pass,
//! `1` a mathematical assertion failed (e.g. the grading is not
//! epsilon-strong), `2` malformed input.

use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bimodule, FinDimAlgebra};
use crate::field::FieldSpec;
use crate::graded::{
    epsilon_verify, fixture_by_name, EpsilonData, GradedAlgebra, GradedBimodule,
};
use crate::group::{group_homology, FinGroup};
use crate::hochschild::{
    conjugacy_splitting, e2_page, hochschild_homology, pi_action,
};
use crate::matrix::ExactMatrix;
use crate::partial::{
    globalize, module_from_partial_rep, partial_homology, KparAlgebra,
};
use crate::spectral::{
    cohomology_checks, graded_e2, grothendieck_double_complex, ss_pages, theorem_main_check,
};

// ---------------------------------------------------------------------------
// problem documents
// ---------------------------------------------------------------------------

/// The parsed problem file.  `algebra`/`grading` describe the graded algebra
/// `S`; when absent the command must not need one (none do, currently — use
/// a fixture or spell the algebra out).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProblemSpec {
    /// `"Q"` or `"GF:p"`.
    pub field: String,
    pub group: GroupSpec,
    pub algebra: AlgebraSpec,
    /// Degree of each basis vector, as group-element indices.
    pub grading: Vec<String>,
    /// Bimodule coefficients; the regular bimodule `M = S` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    pub command: String,
    pub bounds: BoundsSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub enum GroupSpec {
    #[serde(rename = "cyclic")]
    Cyclic(String),
    #[serde(rename = "symmetric")]
    Symmetric(String),
    /// Full multiplication table, `table[g][h] = gh`, with element names.
    #[serde(rename = "table")]
    Table {
        table: Vec<Vec<String>>,
        names: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlgebraSpec {
    pub dim: String,
    /// Coefficient column of the unit.
    pub unit: Vec<String>,
    /// `products[i][j]` is the coefficient column of `b_i b_j`.
    pub products: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModuleSpec {
    pub dim: String,
    /// `left[i]` is the matrix of `b_i . -` (rows of entry strings).
    pub left: Vec<Vec<Vec<String>>>,
    pub right: Vec<Vec<Vec<String>>>,
    /// Degree of each module basis vector; required by `split` and
    /// `main-theorem`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundsSpec {
    pub p: String,
    pub q: String,
    pub n: String,
}

impl Default for BoundsSpec {
    fn default() -> Self {
        BoundsSpec {
            p: "2".into(),
            q: "2".into(),
            n: "2".into(),
        }
    }
}

/// Parses a problem file; the diagnostic carries serde's line/column
/// positions for malformed documents.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid problem file: {e}"))
}

/// Serializes a problem into its canonical form (pretty JSON, stable field
/// order); `parse(canonical(x)) == x`.
pub fn canonical_problem(spec: &ProblemSpec) -> String {
    let mut s = serde_json::to_string_pretty(spec).expect("problem serializes");
    s.push('\n');
    s
}

/// The problem document of a named fixture, so fixtures and hand-written
/// problem files go through the identical pipeline.
pub fn fixture_problem(
    name: &str,
    field: FieldSpec,
    command: &str,
    bounds: BoundsSpec,
) -> Option<ProblemSpec> {
    let s = fixture_by_name(name, field)?;
    let d = s.dim();
    let col = |c: ExactMatrix| -> Vec<String> {
        (0..c.rows()).map(|i| c.get(i, 0).to_string()).collect()
    };
    let products = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    col(s
                        .algebra
                        .mul(&s.algebra.basis_vec(i), &s.algebra.basis_vec(j)))
                })
                .collect()
        })
        .collect();
    let group = match name {
        "pcp2" | "tri2" | "kz2" => GroupSpec::Cyclic("2".into()),
        "kz3" => GroupSpec::Cyclic("3".into()),
        "ks3" => GroupSpec::Symmetric("3".into()),
        _ => unreachable!("fixture_by_name accepted {name}"),
    };
    Some(ProblemSpec {
        field: field_name(field),
        group,
        algebra: AlgebraSpec {
            dim: d.to_string(),
            unit: col(s.algebra.unit.clone()),
            products,
        },
        grading: s.degree.iter().map(|g| g.to_string()).collect(),
        module: None,
        command: command.into(),
        bounds,
    })
}

pub fn field_name(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::PrimeField(p) => format!("GF:{p}"),
    }
}

pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = s.strip_prefix("GF:") {
        let p: u64 = p.parse().map_err(|_| format!("bad field {s:?}"))?;
        return FieldSpec::prime_field(p).map_err(|e| e.to_string());
    }
    Err(format!("bad field {s:?} (expected Q or GF:p)"))
}

// ---------------------------------------------------------------------------
// resolution: documents -> exact objects
// ---------------------------------------------------------------------------

fn parse_usize(what: &str, s: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("{what}: not a number: {s:?}"))
}

fn parse_matrix(
    field: FieldSpec,
    what: &str,
    rows: usize,
    cols: usize,
    data: &[Vec<String>],
) -> Result<ExactMatrix, String> {
    if data.len() != rows {
        return Err(format!("{what}: expected {rows} rows, got {}", data.len()));
    }
    let mut m = ExactMatrix::zeros(field, rows, cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(format!(
                "{what}: row {i} has {} entries, expected {cols}",
                row.len()
            ));
        }
        for (j, e) in row.iter().enumerate() {
            let s = field
                .parse(e)
                .map_err(|_| format!("{what}: bad entry at ({i}, {j}): {e:?}"))?;
            m.set(i, j, s);
        }
    }
    Ok(m)
}

fn parse_column(
    field: FieldSpec,
    what: &str,
    rows: usize,
    data: &[String],
) -> Result<ExactMatrix, String> {
    let wrapped: Vec<Vec<String>> = data.iter().map(|e| vec![e.clone()]).collect();
    parse_matrix(field, what, rows, 1, &wrapped)
}

/// The problem resolved into exact objects, ready to compute with.
pub struct Resolved {
    pub field: FieldSpec,
    pub s: GradedAlgebra,
    pub m: GradedBimodule,
    pub k: Rc<KparAlgebra>,
    pub p_max: usize,
    pub q_max: usize,
    pub n_max: usize,
}

pub fn resolve(spec: &ProblemSpec) -> Result<Resolved, String> {
    let field = parse_field(&spec.field)?;
    let group = match &spec.group {
        GroupSpec::Cyclic(n) => FinGroup::cyclic(parse_usize("group.cyclic", n)?),
        GroupSpec::Symmetric(n) => FinGroup::symmetric(parse_usize("group.symmetric", n)?),
        GroupSpec::Table { table, names } => {
            let n = names.len();
            let mut flat = Vec::with_capacity(n * n);
            for (g, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(format!("group.table: row {g} has wrong length"));
                }
                for e in row {
                    flat.push(parse_usize("group.table entry", e)?);
                }
            }
            FinGroup::from_table(flat, names.clone())
                .map_err(|e| format!("group.table: {e}"))?
        }
    };

    let d = parse_usize("algebra.dim", &spec.algebra.dim)?;
    if spec.algebra.products.len() != d {
        return Err(format!(
            "algebra.products: expected {d} rows, got {}",
            spec.algebra.products.len()
        ));
    }
    let mut prods: Vec<Vec<ExactMatrix>> = Vec::with_capacity(d);
    for (i, row) in spec.algebra.products.iter().enumerate() {
        if row.len() != d {
            return Err(format!(
                "algebra.products: row {i} has {} entries, expected {d}",
                row.len()
            ));
        }
        let mut cols = Vec::with_capacity(d);
        for (j, c) in row.iter().enumerate() {
            cols.push(parse_column(
                field,
                &format!("algebra.products[{i}][{j}]"),
                d,
                c,
            )?);
        }
        prods.push(cols);
    }
    let unit = parse_column(field, "algebra.unit", d, &spec.algebra.unit)?;
    let alg = FinDimAlgebra::from_products(field, d, unit, |i, j| prods[i][j].clone());
    alg.check_algebra()
        .map_err(|e| format!("algebra: {e}"))?;

    if spec.grading.len() != d {
        return Err(format!(
            "grading: expected {d} degrees, got {}",
            spec.grading.len()
        ));
    }
    let mut degree = Vec::with_capacity(d);
    for (i, g) in spec.grading.iter().enumerate() {
        let g = parse_usize(&format!("grading[{i}]"), g)?;
        if g >= group.order {
            return Err(format!("grading[{i}]: {g} is not a group element"));
        }
        degree.push(g);
    }
    let s = GradedAlgebra {
        algebra: Rc::new(alg),
        group: group.clone(),
        degree,
    };
    s.check_graded().map_err(|e| format!("grading: {e}"))?;

    let m = match &spec.module {
        None => GradedBimodule::regular(&s),
        Some(ms) => {
            let md = parse_usize("module.dim", &ms.dim)?;
            let act = |what: &str, data: &[Vec<Vec<String>>]| -> Result<Vec<ExactMatrix>, String> {
                if data.len() != d {
                    return Err(format!("{what}: expected {d} matrices"));
                }
                data.iter()
                    .enumerate()
                    .map(|(i, mtx)| parse_matrix(field, &format!("{what}[{i}]"), md, md, mtx))
                    .collect()
            };
            let bim = Bimodule {
                algebra: s.algebra.clone(),
                dim: md,
                left_action: act("module.left", &ms.left)?,
                right_action: act("module.right", &ms.right)?,
            };
            bim.validate().map_err(|e| format!("module: {e}"))?;
            let mdeg = match &ms.degree {
                None => vec![0; md], // placeholder; graded commands re-check
                Some(list) => {
                    let mut out = Vec::with_capacity(md);
                    for (i, g) in list.iter().enumerate() {
                        out.push(parse_usize(&format!("module.degree[{i}]"), g)?);
                    }
                    out
                }
            };
            let gb = GradedBimodule {
                bimodule: bim,
                degree: mdeg,
            };
            if ms.degree.is_some() {
                gb.check_graded(&s).map_err(|e| format!("module.degree: {e}"))?;
            }
            gb
        }
    };

    let k = KparAlgebra::build_cached(field, &group);
    Ok(Resolved {
        field,
        s,
        m,
        k,
        p_max: parse_usize("bounds.p", &spec.bounds.p)?,
        q_max: parse_usize("bounds.q", &spec.bounds.q)?,
        n_max: parse_usize("bounds.n", &spec.bounds.n)?,
    })
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// The machine-readable report.  Dimension entries are strings; absent
/// sections were not requested.  Nothing here depends on wall-clock time or
/// thread scheduling, so identical inputs give byte-identical reports.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub group_order: String,
    pub bounds: BoundsSpec,
    /// All mathematical assertions of the requested command(s) hold.
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hochschild: Option<DimsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_homology: Option<ParHomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e2: Option<E2Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub globalization: Option<GlobReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub main_theorem: Option<MainReport>,
}

#[derive(Debug, Serialize)]
pub struct EpsilonReport {
    pub accepted: bool,
    /// Coefficient column of `1_g`, per group element (accepted case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub units: Option<Vec<Vec<String>>>,
    /// Size of the witness family for each `1_g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_sizes: Option<Vec<String>>,
    /// The failed axiom with its subspace witness (rejected case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejection: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct DimsReport {
    /// `dim H_n` for `n = 0 ..= n_max`.
    pub dims: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CohomologyJson {
    /// Both sides of `H^0(S,M) = H^0_par(G, H^0(A,M))`.
    pub corner: [String; 2],
    pub hq_dims: Vec<String>,
    /// `E_2^{p,q}` indexed `[p][q]`.
    pub e2: Vec<Vec<String>>,
    /// Pairs `(dim H^n(S,M), E_2^{0,n})` when the page collapses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapse: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Serialize)]
pub struct ParHomReport {
    /// `H_p^par(G, B)`.
    pub b_coefficients: Vec<String>,
    /// `H_p^par(G, H_0(A, M))`.
    pub h0_coefficients: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct E2Report {
    /// `E^2_{p,q} = H_p^par(G, H_q(A,M))`, indexed `[p][q]`.
    pub table: Vec<Vec<String>>,
    /// Both sides of the corner isomorphism.
    pub corner: [String; 2],
}

#[derive(Debug, Serialize)]
pub struct SsEntry {
    pub p: String,
    pub q: String,
    pub dim: String,
}

#[derive(Debug, Serialize)]
pub struct SsPageReport {
    pub r: String,
    /// Certified entries only; the truncated grid refuses to report the rest.
    pub entries: Vec<SsEntry>,
}

#[derive(Debug, Serialize)]
pub struct SsReport {
    /// Grid actually computed (one step beyond the requested window).
    pub grid_p_max: String,
    pub grid_q_max: String,
    /// Total degrees `n <= certified_n` are certified on every page.
    pub certified_n: String,
    pub pages: Vec<SsPageReport>,
    pub e_infinity: Vec<SsEntry>,
    /// `dim H_n` of the total complex, `n <= certified_n`.
    pub total_homology: Vec<String>,
    /// `sum_p dim E^inf_{p, n-p} = dim H_n(total)` for every certified `n`.
    pub abutment_ok: bool,
    /// The double-complex `E^2` equals the derived-functor `E^2` on every
    /// certified entry of the requested window.
    pub two_pipelines_agree: bool,
}

#[derive(Debug, Serialize)]
pub struct SplitReport {
    pub class_reps: Vec<String>,
    /// `dim H_n^g(S, M)` per class, `n <= n_max`.
    pub hochschild_per_class: Vec<Vec<String>>,
    pub hochschild_total: Vec<String>,
    /// Per-class `E^2` tables, `[class][p][q]`.
    pub e2_per_class: Vec<Vec<Vec<String>>>,
    pub e2_total: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct GlobReport {
    /// One entry per coefficient module checked.
    pub coefficients: Vec<GlobEntry>,
}

#[derive(Debug, Serialize)]
pub struct GlobEntry {
    pub name: String,
    pub module_dim: String,
    pub lambda_dim: String,
    /// `dim H_p^par(G, X)`, `p <= n_max`.
    pub partial: Vec<String>,
    /// `dim H_p(G, Lambda(X))`.
    pub global: Vec<String>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct MainReport {
    pub classes: Vec<MainClassReport>,
}

#[derive(Debug, Serialize)]
pub struct MainClassReport {
    pub class_rep: String,
    /// `dim H_q(A, M_gbar)`, `q <= q_max`.
    pub x_dims: Vec<String>,
    pub per_q: Vec<MainQReport>,
}

#[derive(Debug, Serialize)]
pub struct MainQReport {
    pub partial: Vec<String>,
    pub shapiro: Vec<String>,
    pub spanning_hypothesis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<String>>,
}

fn dims_to_strings(v: &[usize]) -> Vec<String> {
    v.iter().map(|d| d.to_string()).collect()
}

fn table_to_strings(t: &[Vec<usize>]) -> Vec<Vec<String>> {
    t.iter().map(|r| dims_to_strings(r)).collect()
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

pub const COMMANDS: &[&str] = &[
    "check-epsilon",
    "hh",
    "hcoh",
    "par-homology",
    "e2",
    "ss",
    "split",
    "globalize",
    "main-theorem",
    "all",
];

/// Runs the requested command(s).  `Err` is a usage diagnostic (exit 2);
/// a report with `ok: false` is a failed mathematical assertion (exit 1).
pub fn run(spec: &ProblemSpec) -> Result<Report, String> {
    if !COMMANDS.contains(&spec.command.as_str()) {
        return Err(format!(
            "unknown command {:?}; expected one of {}",
            spec.command,
            COMMANDS.join(", ")
        ));
    }
    let r = resolve(spec)?;
    let mut report = Report {
        command: spec.command.clone(),
        field: spec.field.clone(),
        group_order: r.s.group.order.to_string(),
        bounds: spec.bounds.clone(),
        ok: true,
        epsilon: None,
        hochschild: None,
        cohomology: None,
        partial_homology: None,
        e2: None,
        spectral: None,
        split: None,
        globalization: None,
        main_theorem: None,
    };
    let all = spec.command == "all";
    let want = |c: &str| all || spec.command == c;

    if want("hh") {
        let dims = hochschild_homology(&r.s.algebra, &r.m.bimodule, r.n_max);
        report.hochschild = Some(DimsReport {
            dims: dims_to_strings(&dims),
        });
    }

    if want("check-epsilon") {
        match epsilon_verify(&r.s) {
            Ok(eps) => {
                report.epsilon = Some(EpsilonReport {
                    accepted: true,
                    units: Some(
                        eps.units
                            .iter()
                            .map(|u| (0..u.rows()).map(|i| u.get(i, 0).to_string()).collect())
                            .collect(),
                    ),
                    witness_sizes: Some(
                        eps.witnesses.iter().map(|w| w.len().to_string()).collect(),
                    ),
                    rejection: None,
                });
            }
            Err(e) => {
                report.ok = false;
                report.epsilon = Some(EpsilonReport {
                    accepted: false,
                    units: None,
                    witness_sizes: None,
                    rejection: Some(e.to_string()),
                });
                return Ok(report); // nothing further is defined
            }
        }
    }

    // every remaining command needs the epsilon data
    let needs_eps = ["hcoh", "par-homology", "e2", "ss", "split", "globalize", "main-theorem"];
    let eps: Option<EpsilonData> = if needs_eps.iter().any(|c| want(c)) {
        match epsilon_verify(&r.s) {
            Ok(e) => Some(e),
            Err(e) => {
                report.ok = false;
                report.epsilon.get_or_insert(EpsilonReport {
                    accepted: false,
                    units: None,
                    witness_sizes: None,
                    rejection: Some(e.to_string()),
                });
                return Ok(report);
            }
        }
    } else {
        None
    };

    if want("hcoh") {
        let eps = eps.as_ref().unwrap();
        let rep = cohomology_checks(&r.k, &r.s, eps, &r.m.bimodule, r.p_max, r.q_max);
        report.cohomology = Some(CohomologyJson {
            corner: [rep.corner.0.to_string(), rep.corner.1.to_string()],
            hq_dims: dims_to_strings(&rep.hq_dims),
            e2: table_to_strings(&rep.e2),
            collapse: rep.collapse.map(|pairs| {
                pairs
                    .iter()
                    .map(|(a, b)| [a.to_string(), b.to_string()])
                    .collect()
            }),
        });
    }

    if want("par-homology") {
        let eps = eps.as_ref().unwrap();
        let b = r.k.b_left_module();
        let pa = pi_action(&r.s, eps, &r.m.bimodule);
        let h0 = module_from_partial_rep(&r.k, &pa.rep)
            .map_err(|e| format!("pi action: {e}"))?;
        report.partial_homology = Some(ParHomReport {
            b_coefficients: dims_to_strings(&partial_homology(&r.k, &b, r.n_max)),
            h0_coefficients: dims_to_strings(&partial_homology(&r.k, &h0, r.n_max)),
        });
    }

    if want("e2") {
        let eps = eps.as_ref().unwrap();
        let table = e2_page(&r.k, &r.s, eps, &r.m.bimodule, r.p_max, r.q_max);
        let corner_lhs = hochschild_homology(&r.s.algebra, &r.m.bimodule, 0)[0];
        report.ok &= corner_lhs == table[0][0];
        report.e2 = Some(E2Report {
            table: table_to_strings(&table),
            corner: [corner_lhs.to_string(), table[0][0].to_string()],
        });
    }

    if want("ss") {
        let eps = eps.as_ref().unwrap();
        let gr = grothendieck_double_complex(&r.k, &r.s, eps, &r.m.bimodule, r.p_max, r.q_max);
        let ss = ss_pages(&gr.dc, 3);
        let e2 = e2_page(&r.k, &r.s, eps, &r.m.bimodule, r.p_max, r.q_max);
        let mut agree = true;
        for p in 0..=r.p_max {
            for qd in 0..=r.q_max {
                if let Some(d) = ss.pages[2].dims[p][qd] {
                    agree &= d == e2[p][qd];
                }
            }
        }
        let hh = hochschild_homology(&r.s.algebra, &r.m.bimodule, ss.n_cert);
        let mut abutment = true;
        for n in 0..=ss.n_cert {
            let total: usize = (0..=n)
                .filter_map(|p| ss.e_infinity.get(p).and_then(|row| row.get(n - p)))
                .filter_map(|e| *e)
                .sum();
            abutment &= total == hh[n] && ss.total_homology[n] == hh[n];
        }
        report.ok &= agree && abutment;
        let entries = |dims: &Vec<Vec<Option<usize>>>| -> Vec<SsEntry> {
            let mut out = Vec::new();
            for (p, row) in dims.iter().enumerate() {
                for (qd, e) in row.iter().enumerate() {
                    if let Some(d) = e {
                        out.push(SsEntry {
                            p: p.to_string(),
                            q: qd.to_string(),
                            dim: d.to_string(),
                        });
                    }
                }
            }
            out
        };
        report.spectral = Some(SsReport {
            grid_p_max: gr.dc.p_max().to_string(),
            grid_q_max: gr.dc.q_max().to_string(),
            certified_n: ss.n_cert.to_string(),
            pages: ss
                .pages
                .iter()
                .map(|pg| SsPageReport {
                    r: pg.r.to_string(),
                    entries: entries(&pg.dims),
                })
                .collect(),
            e_infinity: entries(&ss.e_infinity),
            total_homology: dims_to_strings(&ss.total_homology),
            abutment_ok: abutment,
            two_pipelines_agree: agree,
        });
    }

    let graded_module = |what: &str| -> Result<(), String> {
        if let Some(ms) = &spec.module {
            if ms.degree.is_none() {
                return Err(format!("{what} needs module.degree"));
            }
        }
        Ok(())
    };

    if want("split") {
        graded_module("split")?;
        let eps = eps.as_ref().unwrap();
        let sc = conjugacy_splitting(&r.s, &r.m, r.n_max);
        let ge2 = graded_e2(&r.k, &r.s, eps, &r.m, r.p_max, r.q_max);
        report.split = Some(SplitReport {
            class_reps: dims_to_strings(&sc.class_reps),
            hochschild_per_class: table_to_strings(&sc.per_class_dims),
            hochschild_total: dims_to_strings(&sc.total_dims),
            e2_per_class: ge2.tables.iter().map(|t| table_to_strings(t)).collect(),
            e2_total: table_to_strings(&ge2.total),
        });
    }

    if want("globalize") {
        let eps = eps.as_ref().unwrap();
        let pa = pi_action(&r.s, eps, &r.m.bimodule);
        let h0 = module_from_partial_rep(&r.k, &pa.rep)
            .map_err(|e| format!("pi action: {e}"))?;
        let mut entries = Vec::new();
        for (name, x) in [("B", r.k.b_left_module()), ("H0(A,M)", h0)] {
            let g = globalize(&r.k, &x);
            let partial = partial_homology(&r.k, &x, r.n_max);
            let global = group_homology(&r.s.group, &g.module, r.n_max);
            let agree = partial == global;
            report.ok &= agree;
            entries.push(GlobEntry {
                name: name.into(),
                module_dim: x.dim.to_string(),
                lambda_dim: g.dim().to_string(),
                partial: dims_to_strings(&partial),
                global: dims_to_strings(&global),
                agree,
            });
        }
        report.globalization = Some(GlobReport {
            coefficients: entries,
        });
    }

    if want("main-theorem") {
        graded_module("main-theorem")?;
        let eps = eps.as_ref().unwrap();
        let conj = r.s.group.conjugacy();
        let mut classes = Vec::new();
        for &rep_g in &conj.reps {
            let mt = theorem_main_check(&r.k, &r.s, eps, &r.m, rep_g, r.p_max, r.q_max);
            let per_q = mt
                .per_q
                .iter()
                .map(|red| {
                    let equal = red.partial_dims == red.shapiro_dims;
                    report.ok &= equal;
                    if red.condition_holds {
                        report.ok &=
                            red.reduced_dims.as_ref() == Some(&red.partial_dims);
                    }
                    MainQReport {
                        partial: dims_to_strings(&red.partial_dims),
                        shapiro: dims_to_strings(&red.shapiro_dims),
                        spanning_hypothesis: red.condition_holds,
                        reduced: red.reduced_dims.as_ref().map(|d| dims_to_strings(d)),
                    }
                })
                .collect();
            classes.push(MainClassReport {
                class_rep: mt.class_rep.to_string(),
                x_dims: dims_to_strings(&mt.x_dims),
                per_q,
            });
        }
        report.main_theorem = Some(MainReport { classes });
    }

    Ok(report)
}

/// Serializes a report to its stable JSON form (pretty, trailing newline).
pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// human-readable rendering
// ---------------------------------------------------------------------------

fn fmt_row(label: &str, dims: &[String]) -> String {
    format!("  {label:<28} {}\n", dims.join("  "))
}

fn fmt_table(label: &str, table: &[Vec<String>]) -> String {
    let mut out = format!("  {label} (rows p, cols q):\n");
    for (p, row) in table.iter().enumerate() {
        out.push_str(&format!("    p={p}: {}\n", row.join("  ")));
    }
    out
}

/// Renders the report for a terminal; the JSON, not this, is the stable
/// surface.
pub fn render(report: &Report) -> String {
    let mut out = format!(
        "{} over {} (|G| = {}) — {}\n",
        report.command,
        report.field,
        report.group_order,
        if report.ok { "ok" } else { "FAILED" }
    );
    if let Some(e) = &report.epsilon {
        if e.accepted {
            out.push_str("  epsilon-strong: yes\n");
            if let Some(units) = &e.units {
                for (g, u) in units.iter().enumerate() {
                    out.push_str(&format!("    1_{g} = ({})\n", u.join(", ")));
                }
            }
        } else {
            out.push_str(&format!(
                "  epsilon-strong: NO — {}\n",
                e.rejection.as_deref().unwrap_or("rejected")
            ));
        }
    }
    if let Some(h) = &report.hochschild {
        out.push_str(&fmt_row("dim H_n(S, M):", &h.dims));
    }
    if let Some(c) = &report.cohomology {
        out.push_str(&format!(
            "  H^0 corner: {} = {}\n",
            c.corner[0], c.corner[1]
        ));
        out.push_str(&fmt_row("dim H^q(A, M):", &c.hq_dims));
        out.push_str(&fmt_table("cohomology E_2", &c.e2));
        if let Some(pairs) = &c.collapse {
            for (n, [l, r]) in pairs.iter().enumerate() {
                out.push_str(&format!("    collapse at n={n}: {l} = {r}\n"));
            }
        }
    }
    if let Some(p) = &report.partial_homology {
        out.push_str(&fmt_row("H_p^par(G, B):", &p.b_coefficients));
        out.push_str(&fmt_row("H_p^par(G, H0(A,M)):", &p.h0_coefficients));
    }
    if let Some(e) = &report.e2 {
        out.push_str(&fmt_table("E^2", &e.table));
        out.push_str(&format!(
            "  corner: {} = {}\n",
            e.corner[0], e.corner[1]
        ));
    }
    if let Some(s) = &report.spectral {
        out.push_str(&format!(
            "  grid p <= {}, q <= {}; certified total degrees n <= {}\n",
            s.grid_p_max, s.grid_q_max, s.certified_n
        ));
        for page in &s.pages {
            out.push_str(&format!("  page E^{}:\n", page.r));
            for e in &page.entries {
                out.push_str(&format!("    E^{}_({},{}) = {}\n", page.r, e.p, e.q, e.dim));
            }
        }
        out.push_str("  E^infinity:\n");
        for e in &s.e_infinity {
            out.push_str(&format!("    E^inf_({},{}) = {}\n", e.p, e.q, e.dim));
        }
        out.push_str(&fmt_row("dim H_n(Tot):", &s.total_homology));
        out.push_str(&format!(
            "  abutment: {}; two pipelines agree: {}\n",
            s.abutment_ok, s.two_pipelines_agree
        ));
    }
    if let Some(sp) = &report.split {
        for (c, dims) in sp.hochschild_per_class.iter().enumerate() {
            out.push_str(&fmt_row(
                &format!("H_n^class{} (rep {}):", c, sp.class_reps[c]),
                dims,
            ));
        }
        out.push_str(&fmt_row("H_n total:", &sp.hochschild_total));
        for (c, t) in sp.e2_per_class.iter().enumerate() {
            out.push_str(&fmt_table(&format!("E^2 of class {c}"), t));
        }
        out.push_str(&fmt_table("E^2 ungraded", &sp.e2_total));
    }
    if let Some(g) = &report.globalization {
        for e in &g.coefficients {
            out.push_str(&format!(
                "  X = {} (dim {}), Lambda(X) dim {}\n",
                e.name, e.module_dim, e.lambda_dim
            ));
            out.push_str(&fmt_row("    H_p^par(G, X):", &e.partial));
            out.push_str(&fmt_row("    H_p(G, Lambda X):", &e.global));
        }
    }
    if let Some(mt) = &report.main_theorem {
        for c in &mt.classes {
            out.push_str(&format!(
                "  class of g = {}: dim H_q(A, M_gbar) = {}\n",
                c.class_rep,
                c.x_dims.join("  ")
            ));
            for (qd, r) in c.per_q.iter().enumerate() {
                out.push_str(&format!(
                    "    q={qd}: partial {} | shapiro {} | spanning {}{}\n",
                    r.partial.join(" "),
                    r.shapiro.join(" "),
                    r.spanning_hypothesis,
                    r.reduced
                        .as_ref()
                        .map(|d| format!(" | reduced {}", d.join(" ")))
                        .unwrap_or_default()
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_problem_round_trips() {
        let spec = fixture_problem("pcp2", FieldSpec::Rationals, "hh", BoundsSpec::default())
            .unwrap();
        assert_eq!(spec.algebra.dim, "3");
        let text = canonical_problem(&spec);
        let back = parse_problem(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(canonical_problem(&back), text);
    }

    #[test]
    fn parse_diagnostics() {
        let err = parse_problem("").unwrap_err();
        assert!(err.contains("EOF") || err.contains("expected"), "{err}");
        let err = parse_problem("{}").unwrap_err();
        assert!(err.contains("missing field `field`"), "{err}");
    }

    #[test]
    fn resolve_rejects_wrong_product_length() {
        let mut spec =
            fixture_problem("pcp2", FieldSpec::Rationals, "hh", BoundsSpec::default()).unwrap();
        spec.algebra.products[1][2].pop();
        let err = match resolve(&spec) {
            Err(e) => e,
            Ok(_) => panic!("wrong product length must be rejected"),
        };
        assert!(err.contains("products[1][2]"), "{err}");
    }

    #[test]
    fn run_hh_on_pcp2() {
        let spec = fixture_problem("pcp2", FieldSpec::Rationals, "hh", BoundsSpec::default())
            .unwrap();
        let rep = run(&spec).unwrap();
        assert!(rep.ok);
        assert_eq!(
            rep.hochschild.unwrap().dims,
            vec!["3".to_string(), "0".into(), "0".into()]
        );
    }

    #[test]
    fn run_check_epsilon_rejects_tri2() {
        let spec = fixture_problem("tri2", FieldSpec::Rationals, "check-epsilon", BoundsSpec::default())
            .unwrap();
        let rep = run(&spec).unwrap();
        assert!(!rep.ok);
        let eps = rep.epsilon.unwrap();
        assert!(!eps.accepted);
        assert!(eps.rejection.unwrap().contains("(iii)"));
    }

    #[test]
    fn unknown_command_is_a_usage_error() {
        let mut spec =
            fixture_problem("pcp2", FieldSpec::Rationals, "hh", BoundsSpec::default()).unwrap();
        spec.command = "frobnicate".into();
        assert!(run(&spec).is_err());
    }
}
