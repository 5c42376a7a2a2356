//! One function per subcommand. Each returns a [`Report`] (or emitted file
//! text); printing and exit codes are left to `main`.

use std::fmt::Write as _;

use serde_json::{json, Value};
use ybx_core::catalog::{self, CatalogError};
use ybx_core::quadratic::{
    check_well_situated, compare_tables, flatness_report, hilbert_dims, hilbert_with_complement, limit_subspace,
    FlatnessVerdict, HilbertTable, Limit, QuadraticError, QuadraticPresentation, ResourceLimits, SubspaceFamily,
};
use ybx_core::semigroup::{expected_relation_dim, relations_commutator, relations_perp, semigroup_dims};
use ybx_core::symmetry::{
    check_braid, check_bw, check_hecke, eigen_decompose, specialize_matrix, spectrum_polynomial, Symmetry,
    SymmetryError, SymmetryKind,
};
use ybx_core::tower::{tower_flatness, TowerError, TowerVerdict, DEFAULT_MAX_MATRIX_DIM};
use ybx_core::{Field, RatFun, Rational};

use crate::file::{self, FamilyFile, InputFile, SymmetryFile};
use crate::{CliError, Options, Report};

fn quadratic_error(e: QuadraticError) -> CliError {
    match e {
        QuadraticError::ResourceGuard { .. } => CliError::Resource(e.to_string()),
        QuadraticError::DegreeTooSmall(_) => CliError::Input(e.to_string()),
        other => CliError::Failed(other.to_string()),
    }
}

fn tower_error(e: TowerError) -> CliError {
    match e {
        TowerError::ResourceGuard { .. } => CliError::Resource(e.to_string()),
        TowerError::DegreeTooSmall(_) => CliError::Input(e.to_string()),
        other => CliError::Failed(other.to_string()),
    }
}

fn symmetry_of(f: &SymmetryFile) -> Result<Symmetry, CliError> {
    eigen_decompose(&f.matrix, f.n, &f.eigenvalues, f.kind)
        .map_err(|e| CliError::Failed(format!("declared spectrum does not verify: {e}")))
}

fn limits(opts: &Options) -> ResourceLimits {
    opts.max_ambient.map(|max_ambient| ResourceLimits { max_ambient }).unwrap_or_default()
}

fn one() -> Rational {
    Rational::from_int(1)
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    strings(xs).join(", ")
}

/// Distinct specialized eigenvalues, in declared order.
fn specialized_spectrum(eigs: &[RatFun], at: &Rational) -> Result<Vec<Rational>, String> {
    let mut out: Vec<Rational> = Vec::new();
    for (i, l) in eigs.iter().enumerate() {
        let v = l.specialize(at).map_err(|e| format!("eigenvalue #{}: {e}", i + 1))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn check(path: &str, _opts: &Options) -> Result<Report, CliError> {
    let f = file::load_symmetry(path)?;
    let (m, n) = (&f.matrix, f.n);
    let mut failures = Vec::new();
    let mut generic = serde_json::Map::new();
    let mut text = String::new();
    writeln!(text, "check {} (n = {n}, kind {})", f.name, f.kind).unwrap();
    writeln!(text, "eigenvalues: {}", join(&f.eigenvalues)).unwrap();

    match eigen_decompose(m, n, &f.eigenvalues, f.kind) {
        Ok(s) => {
            writeln!(text, "spectrum: verified, eigenspace dims {}", join(&s.eigenspace_dims())).unwrap();
            generic.insert("spectrum".into(), json!("ok"));
            generic.insert("eigenspace_dims".into(), json!(s.eigenspace_dims()));
        }
        Err(e) => {
            writeln!(text, "spectrum: FAIL ({e})").unwrap();
            generic.insert("spectrum".into(), json!(e.to_string()));
            failures.push("spectrum".to_string());
        }
    }
    let minpoly = spectrum_polynomial(m).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(text, "minimal polynomial: {minpoly}").unwrap();
    generic.insert("minimal_polynomial".into(), json!(minpoly.to_string()));

    let braid = check_braid(m, n).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(text, "braid: {}", pass(braid)).unwrap();
    generic.insert("braid".into(), json!(braid));
    if !braid {
        failures.push("braid".to_string());
    }

    match f.kind {
        SymmetryKind::GenericYb => {}
        SymmetryKind::Hecke => {
            if f.eigenvalues.len() != 2 {
                writeln!(text, "hecke: FAIL (needs exactly two eigenvalues)").unwrap();
                failures.push("hecke".to_string());
                generic.insert("hecke".into(), json!(false));
            } else {
                let ok = check_hecke(m, n, &f.eigenvalues[0], &f.eigenvalues[1])
                    .map_err(|e| CliError::Input(e.to_string()))?;
                writeln!(text, "hecke: {}", pass(ok)).unwrap();
                generic.insert("hecke".into(), json!(ok));
                if !ok {
                    failures.push("hecke".to_string());
                }
            }
        }
        SymmetryKind::BirmanWenzl => {
            if f.eigenvalues.len() != 3 {
                writeln!(text, "birman-wenzl: FAIL (needs exactly three eigenvalues)").unwrap();
                failures.push("cubic".to_string());
            } else {
                let e = &f.eigenvalues;
                let r = check_bw(m, n, &e[0], &e[1], &e[2]).map_err(|e| CliError::Input(e.to_string()))?;
                let show = |x: &Option<RatFun>| x.as_ref().map(ToString::to_string);
                writeln!(text, "cubic: {}", pass(r.cubic)).unwrap();
                writeln!(text, "contraction-a: {} (a = {})", pass(r.contraction_s), show(&r.a).unwrap_or("-".into()))
                    .unwrap();
                writeln!(text, "contraction-b: {} (b = {})", pass(r.contraction_p), show(&r.b).unwrap_or("-".into()))
                    .unwrap();
                writeln!(
                    text,
                    "formulas a = λμ(λ+μ), b = (λ+μ)²ν²: {} (expected a = {}, b = {})",
                    pass(r.formula_consistent),
                    r.expected_a(),
                    r.expected_b()
                )
                .unwrap();
                generic.insert("cubic".into(), json!(r.cubic));
                generic.insert("contraction_a".into(), json!(r.contraction_s));
                generic.insert("contraction_b".into(), json!(r.contraction_p));
                generic.insert("a".into(), json!(show(&r.a)));
                generic.insert("b".into(), json!(show(&r.b)));
                generic.insert("formula_consistent".into(), json!(r.formula_consistent));
                for (ok, name) in
                    [(r.cubic, "cubic"), (r.contraction_s, "contraction-a"), (r.contraction_p, "contraction-b")]
                {
                    if !ok {
                        failures.push(name.to_string());
                    }
                }
                if r.all_axioms_pass() && !r.formula_consistent {
                    failures.push("contraction-formula".to_string());
                }
            }
        }
    }

    let classical = match specialize_matrix(m, &one()) {
        Err(e) => {
            writeln!(text, "q = 1: not defined ({e})").unwrap();
            json!({ "error": e.to_string() })
        }
        Ok(m1) => {
            let braid1 = check_braid(&m1, n).map_err(|e| CliError::Input(e.to_string()))?;
            let spectrum = specialized_spectrum(&f.eigenvalues, &one()).and_then(|eigs| {
                eigen_decompose(&m1, n, &eigs, SymmetryKind::GenericYb)
                    .map(|s| (eigs, s.eigenspace_dims()))
                    .map_err(|e| e.to_string())
            });
            match &spectrum {
                Ok((eigs, dims)) => writeln!(
                    text,
                    "q = 1: braid {}, eigenvalues {}, eigenspace dims {}",
                    pass(braid1),
                    join(eigs),
                    join(dims)
                )
                .unwrap(),
                Err(e) => writeln!(text, "q = 1: braid {}, spectrum: {e}", pass(braid1)).unwrap(),
            }
            match spectrum {
                Ok((eigs, dims)) => json!({ "braid": braid1, "eigenvalues": strings(&eigs), "eigenspace_dims": dims }),
                Err(e) => json!({ "braid": braid1, "spectrum": e }),
            }
        }
    };

    let verdict = if failures.is_empty() { "PASS".to_string() } else { format!("FAIL ({})", failures.join(", ")) };
    writeln!(text, "verdict: {verdict}").unwrap();
    Ok(Report {
        command: "check".into(),
        input: f.name,
        generic: Value::Object(generic),
        classical,
        verdict,
        failures,
        text,
    })
}

fn table_json(t: &HilbertTable) -> Value {
    json!({ "dims": t.dims, "well_situated": t.well_situated })
}

fn limit_json(l: &Limit) -> Value {
    json!({
        "dropped": l.dropped,
        "naive_rank": l.naive_rank,
        "saturation_rounds": l.rounds,
        "basis": l.limit.basis_vectors().iter().map(|v| strings(v)).collect::<Vec<_>>(),
    })
}

fn ws_cell(t: &HilbertTable, k: usize) -> String {
    match &t.well_situated {
        Some(ws) if k >= 2 => (if ws[k - 2] { "yes" } else { "no" }).to_string(),
        _ => "-".to_string(),
    }
}

fn dims_table(text: &mut String, at: &Rational, generic: &HilbertTable, classical: Option<&HilbertTable>) {
    let with_ws = generic.well_situated.is_some();
    let at_label = format!("q={at}");
    if with_ws {
        writeln!(
            text,
            "{:<8}{:>10}{:>10}   {:<14}well-sit({at_label})",
            "degree", "generic", at_label, "well-sit(gen)"
        )
        .unwrap();
    } else {
        writeln!(text, "{:<8}{:>10}{:>10}", "degree", "generic", at_label).unwrap();
    }
    for (k, g) in generic.dims.iter().enumerate() {
        let c = classical.map(|t| t.dims[k].to_string()).unwrap_or_else(|| "-".into());
        if with_ws {
            let cw = classical.map(|t| ws_cell(t, k)).unwrap_or_else(|| "-".into());
            writeln!(text, "{k:<8}{g:>10}{c:>10}   {:<14}{cw}", ws_cell(generic, k)).unwrap();
        } else {
            writeln!(text, "{k:<8}{g:>10}{c:>10}").unwrap();
        }
    }
}

pub fn dims(
    path: &str,
    max_degree: usize,
    algebra: usize,
    at: &Rational,
    koszul: bool,
    opts: &Options,
) -> Result<Report, CliError> {
    match file::load(path)? {
        InputFile::Symmetry(f) => dims_symmetry(&f, max_degree, algebra, at, koszul, opts),
        InputFile::Family(f) => dims_family(&f, max_degree, at, koszul, opts),
    }
}

fn dims_symmetry(
    f: &SymmetryFile,
    max_degree: usize,
    algebra: usize,
    at: &Rational,
    koszul: bool,
    opts: &Options,
) -> Result<Report, CliError> {
    let s = symmetry_of(f)?;
    let count = s.eigenvalues().len();
    if algebra == 0 || algebra > count {
        return Err(CliError::Input(format!("--algebra must be between 1 and {count}, got {algebra}")));
    }
    let m = algebra - 1;
    let (i_gen, j_gen) = (s.eigenspaces()[m].clone(), s.complement(m));
    let lim = limits(opts);
    let generic = hilbert_with_complement(&i_gen, &j_gen, max_degree, lim).map_err(quadratic_error)?;

    let j_lim = limit_subspace(&SubspaceFamily::from_subspace(&j_gen), at).map_err(quadratic_error)?;
    let i_lim = limit_subspace(&SubspaceFamily::from_subspace(&i_gen), at).map_err(quadratic_error)?;
    let mut classical =
        hilbert_dims(&QuadraticPresentation::new(j_lim.limit.clone()).map_err(quadratic_error)?, max_degree, lim)
            .map_err(quadratic_error)?;
    let mut failures = Vec::new();
    classical.well_situated = match check_well_situated(&i_lim.limit, &j_lim.limit, max_degree, lim) {
        Ok(ws) => Some(ws),
        Err(QuadraticError::NotComplementary) => {
            failures.push("classical pair not complementary".to_string());
            None
        }
        Err(e) => return Err(quadratic_error(e)),
    };
    let matches_operator = s.specialize(at).ok().map(|s1| s1.complement(m) == j_lim.limit);

    let verdict = compare_tables(&generic, &classical);
    if let FlatnessVerdict::NotFlat { degree } = verdict {
        failures.insert(0, format!("dimension jump in degree {degree}"));
    }
    let mut text = String::new();
    writeln!(
        text,
        "dims {}: algebra (V, J_{algebra}), J_{algebra} = sum of eigenspaces other than λ = {}",
        f.name,
        s.eigenvalues()[m]
    )
    .unwrap();
    dims_table(&mut text, at, &generic, Some(&classical));
    if let Some(same) = matches_operator {
        writeln!(text, "limit of J equals J of the operator at q = {at}: {}", if same { "yes" } else { "no" }).unwrap();
    }
    if koszul {
        writeln!(text, "note: {}", ybx_core::quadratic::KOSZUL_NOTE).unwrap();
    }
    writeln!(text, "verdict: {verdict}").unwrap();
    let mut classical_json = table_json(&classical);
    classical_json["at"] = json!(at.to_string());
    classical_json["limit"] = limit_json(&j_lim);
    classical_json["matches_specialized_operator"] = json!(matches_operator);
    let mut generic_json = table_json(&generic);
    generic_json["relation_dim"] = json!(j_gen.dim());
    generic_json["algebra"] = json!(algebra);
    Ok(Report {
        command: "dims".into(),
        input: f.name.clone(),
        generic: generic_json,
        classical: classical_json,
        verdict: verdict.to_string(),
        failures,
        text,
    })
}

fn dims_family(
    f: &FamilyFile,
    max_degree: usize,
    at: &Rational,
    koszul: bool,
    opts: &Options,
) -> Result<Report, CliError> {
    let rep = flatness_report(&f.family, max_degree, at, limits(opts), koszul).map_err(quadratic_error)?;
    let mut text = String::new();
    writeln!(text, "dims {} (subspace family of dimension {})", f.name, f.family.generic_dim()).unwrap();
    dims_table(&mut text, at, &rep.generic, rep.classical.as_ref());
    writeln!(
        text,
        "limit at q = {at}: naive rank {}, saturated dim {}{}",
        rep.limit.naive_rank,
        rep.limit.limit.dim(),
        if rep.limit.dropped { " (rank dropped)" } else { "" }
    )
    .unwrap();
    if let Some(note) = &rep.koszul_note {
        writeln!(text, "note: {note}").unwrap();
    }
    writeln!(text, "verdict: {}", rep.verdict).unwrap();
    let failures = match rep.verdict {
        FlatnessVerdict::Flat { .. } => vec![],
        FlatnessVerdict::NotFlat { degree } => vec![format!("dimension jump in degree {degree}")],
        FlatnessVerdict::NotADeformation => vec!["limit drops rank".to_string()],
    };
    let mut classical = rep.classical.as_ref().map(table_json).unwrap_or_else(|| json!({ "dims": null }));
    classical["at"] = json!(at.to_string());
    classical["limit"] = limit_json(&rep.limit);
    Ok(Report {
        command: "dims".into(),
        input: f.name.clone(),
        generic: table_json(&rep.generic),
        classical,
        verdict: rep.verdict.to_string(),
        failures,
        text,
    })
}

pub fn tower(path: &str, k_max: usize, opts: &Options) -> Result<Report, CliError> {
    let f = file::load_symmetry(path)?;
    let s = symmetry_of(&f)?;
    let bound = opts.max_ambient.unwrap_or(DEFAULT_MAX_MATRIX_DIM);
    let r = tower_flatness(&s, k_max, &one(), opts.seed, bound).map_err(tower_error)?;
    let mut text = String::new();
    writeln!(text, "tower {} (n = {}), random point q0 = {}", f.name, f.n, r.random_point).unwrap();
    writeln!(text, "{:<4}{:>10}{:>10}{:>16}{:>16}", "k", "generic", "q=1", "gram rank q=1", "gram rank q0").unwrap();
    for l in &r.levels {
        writeln!(
            text,
            "{:<4}{:>10}{:>10}{:>16}{:>16}",
            l.k,
            l.generic_dim,
            l.classical_dim,
            format!("{}/{}", l.at_classical.rank, l.classical_dim),
            format!("{}/{}", l.at_random.rank, l.generic_dim)
        )
        .unwrap();
    }
    writeln!(text, "verdict: {}", r.verdict).unwrap();
    let failures = match &r.verdict {
        TowerVerdict::Satisfied { .. } => vec![],
        other => vec![other.to_string()],
    };
    let ks: Vec<usize> = r.levels.iter().map(|l| l.k).collect();
    Ok(Report {
        command: "tower".into(),
        input: f.name,
        generic: json!({
            "k": ks,
            "dims": r.levels.iter().map(|l| l.generic_dim).collect::<Vec<_>>(),
            "random_point": r.random_point.to_string(),
            "gram_rank_at_random_point": r.levels.iter().map(|l| l.at_random.rank).collect::<Vec<_>>(),
            "semisimple_at_random_point": r.levels.iter().map(|l| l.at_random.nondegenerate).collect::<Vec<_>>(),
            "closure_growth": r.levels.iter().map(|l| l.generic_growth.clone()).collect::<Vec<_>>(),
        }),
        classical: json!({
            "at": r.classical_at.to_string(),
            "k": ks,
            "dims": r.levels.iter().map(|l| l.classical_dim).collect::<Vec<_>>(),
            "gram_rank": r.levels.iter().map(|l| l.at_classical.rank).collect::<Vec<_>>(),
            "semisimple": r.levels.iter().map(|l| l.at_classical.nondegenerate).collect::<Vec<_>>(),
        }),
        verdict: r.verdict.to_string(),
        failures,
        text,
    })
}

pub fn semigroup(path: &str, max_degree: usize, opts: &Options) -> Result<Report, CliError> {
    let f = file::load_symmetry(path)?;
    let s = symmetry_of(&f)?;
    let lim = limits(opts);
    let perp = relations_perp(&s);
    let comm = relations_commutator(&s);
    let agree = perp.relations == comm.relations;
    let generic = semigroup_dims(&perp, max_degree, lim).map_err(quadratic_error)?;

    let limit = limit_subspace(&SubspaceFamily::from_subspace(&perp.relations), &one()).map_err(quadratic_error)?;
    let classical =
        hilbert_dims(&QuadraticPresentation::new(limit.limit.clone()).map_err(quadratic_error)?, max_degree, lim)
            .map_err(quadratic_error)?;
    let at_one = s.specialize(&one()).ok().map(|s1| {
        let p1 = relations_perp(&s1);
        let c1 = relations_commutator(&s1);
        (p1.relations == c1.relations, p1.relations == limit.limit)
    });

    let mut failures = Vec::new();
    if !agree {
        failures.push("constructions differ".to_string());
    }
    let verdict = compare_tables(&generic, &classical);
    if let FlatnessVerdict::NotFlat { degree } = verdict {
        failures.push(format!("dimension jump in degree {degree}"));
    }
    let mut text = String::new();
    writeln!(text, "semigroup {} (n = {}, {} generators t_ij)", f.name, f.n, f.n * f.n).unwrap();
    writeln!(
        text,
        "relation space: dim {} (expected {}), perp and commutator constructions {}",
        perp.relations.dim(),
        expected_relation_dim(&s),
        if agree { "agree" } else { "DIFFER" }
    )
    .unwrap();
    if let Some((agree1, same)) = at_one {
        writeln!(
            text,
            "at q = 1: constructions {}, limit equals relations of the operator at q = 1: {}",
            if agree1 { "agree" } else { "DIFFER" },
            if same { "yes" } else { "no" }
        )
        .unwrap();
    }
    dims_table(&mut text, &one(), &generic, Some(&classical));
    writeln!(text, "verdict: {verdict}").unwrap();
    Ok(Report {
        command: "semigroup".into(),
        input: f.name,
        generic: json!({
            "relation_dim": perp.relations.dim(),
            "expected_relation_dim": expected_relation_dim(&s),
            "constructions_agree": agree,
            "dims": generic.dims,
        }),
        classical: json!({
            "at": "1",
            "relation_dim": limit.limit.dim(),
            "constructions_agree": at_one.map(|x| x.0),
            "matches_specialized_operator": at_one.map(|x| x.1),
            "dims": classical.dims,
        }),
        verdict: verdict.to_string(),
        failures,
        text,
    })
}

fn catalog_error(e: CatalogError) -> CliError {
    match e {
        CatalogError::UnknownName(_) | CatalogError::NotASymmetry(_) => CliError::Input(e.to_string()),
        other => CliError::Failed(other.to_string()),
    }
}

pub fn catalog_list() -> String {
    let mut out = String::new();
    for (name, what) in catalog::catalog_list() {
        writeln!(out, "{name:<16}{what}").unwrap();
    }
    out
}

pub fn catalog_emit(name: &str) -> Result<String, CliError> {
    if catalog::FAMILY_NAMES.contains(&name) {
        let family = catalog::catalog_family(name).map_err(catalog_error)?;
        let n = (family.ambient_dim() as f64).sqrt().round() as usize;
        return Ok(file::emit_family(&FamilyFile { name: name.to_string(), n, family }));
    }
    let e = catalog::catalog_get(name).map_err(catalog_error)?;
    Ok(file::emit_symmetry(&SymmetryFile {
        name: e.name,
        n: e.n,
        kind: e.kind.symmetry_kind(),
        eigenvalues: e.eigenvalues,
        matrix: e.matrix,
    }))
}

/// Evaluate a symmetry file at `q = at`. Eigenvalues that collide are merged;
/// if that changes their number, the kind falls back to `generic-yb`.
pub fn specialize(path: &str, at: &Rational) -> Result<String, CliError> {
    let f = file::load_symmetry(path)?;
    let m = specialize_matrix(&f.matrix, at).map_err(|e: SymmetryError| CliError::Failed(e.to_string()))?;
    let eigs = specialized_spectrum(&f.eigenvalues, at).map_err(CliError::Failed)?;
    let kind = if eigs.len() == f.eigenvalues.len() { f.kind } else { SymmetryKind::GenericYb };
    let out = SymmetryFile {
        name: format!("{}-at-{at}", f.name),
        n: f.n,
        kind,
        eigenvalues: eigs.iter().map(|x| RatFun::constant(x.clone())).collect(),
        matrix: m.map(|x| RatFun::constant(x.clone())),
    };
    Ok(file::emit_symmetry(&out))
}

pub fn parse_point(text: &str) -> Result<Rational, CliError> {
    let v = ybx_core::parse_scalar(text).map_err(|e| CliError::Input(format!("point `{text}`: {e}")))?;
    v.as_constant().ok_or_else(|| CliError::Input(format!("point `{text}` must be a rational constant")))
}
