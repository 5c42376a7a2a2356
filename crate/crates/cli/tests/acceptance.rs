//! Acceptance suite: one line per criterion, each with a pinned time limit.
//! Run with `cargo test -p ybx-cli --test acceptance`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;
use ybx_core::catalog::{catalog_family, catalog_get, glq, so3};
use ybx_core::linalg::lk_decomposition;
use ybx_core::quadratic::{
    check_well_situated, flatness_report, hilbert_dims, limit_subspace, FlatnessVerdict, QuadraticPresentation,
    ResourceLimits, SubspaceFamily,
};
use ybx_core::semigroup::{relations_commutator, relations_perp, semigroup_dims};
use ybx_core::symmetry::{check_braid, check_bw, check_hecke, Symmetry};
use ybx_core::tensor::{annihilator, cable_symmetry, flip};
use ybx_core::tower::{tower_flatness, TowerVerdict, DEFAULT_MAX_MATRIX_DIM, DEFAULT_SEED};
use ybx_core::{Field, RatFun, Rational, Subspace};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sym(name: &str) -> Symmetry {
    catalog_get(name).unwrap().symmetry().unwrap()
}

/// Generic dims, dims of the saturated `q → 1` limit, and well-situatedness
/// of `(I_m, J_m)` at both points.
fn both_columns(s: &Symmetry, m: usize, k: usize) -> Result<(Vec<usize>, Vec<usize>, bool), String> {
    let lim = ResourceLimits::default();
    let (i, j) = (s.eigenspaces()[m].clone(), s.complement(m));
    let generic = hilbert_dims(&QuadraticPresentation::new(j.clone()).unwrap(), k, lim).map_err(|e| e.to_string())?;
    let jl = limit_subspace(&SubspaceFamily::from_subspace(&j), &rat(1)).map_err(|e| e.to_string())?.limit;
    let il = limit_subspace(&SubspaceFamily::from_subspace(&i), &rat(1)).map_err(|e| e.to_string())?.limit;
    let classical = hilbert_oracle(s.n(), &jl.basis_vectors(), k);
    let ws = check_well_situated(&i, &j, k, lim).map_err(|e| e.to_string())?.iter().all(|&x| x)
        && check_well_situated(&il, &jl, k, lim).map_err(|e| e.to_string())?.iter().all(|&x| x);
    Ok((generic.dims, classical, ws))
}

fn axiom_suite() -> Outcome {
    for n in [2, 3] {
        ensure(check_braid(&flip::<Rational>(n), n).unwrap(), || format!("flip({n}) braid"))?;
        ensure(check_braid(&glq(n), n).unwrap(), || format!("glq({n}) braid"))?;
        let mu = RatFun::q_pow(-1).negated();
        ensure(check_hecke(&glq(n), n, &RatFun::q(), &mu).unwrap(), || format!("glq({n}) hecke"))?;
    }
    let e = catalog_get("so3").map_err(|e| e.to_string())?;
    let (l, m, nu) = (&e.eigenvalues[0], &e.eigenvalues[1], &e.eigenvalues[2]);
    let r = check_bw(&so3(), 3, l, m, nu).unwrap();
    ensure(r.all_axioms_pass(), || format!("so3 axiom {:?} fails", r.first_failure()))?;
    let s = l.plus(m);
    let a = l.times(m).times(&s);
    let b = s.times(&s).times(nu).times(nu);
    ensure(r.a.as_ref() == Some(&a) && r.b.as_ref() == Some(&b), || "so3 constants differ from formulas".into())?;
    Ok(format!("so3 λ, μ, ν = {l}, {m}, {nu}; a = {a}, b = {b}"))
}

fn quantum_plane() -> Outcome {
    let (g, c, ws) = both_columns(&sym("glq2"), 0, 4)?;
    ensure(g == [1, 2, 3, 4, 5] && c == g && ws, || format!("generic {g:?}, q=1 {c:?}, well-situated {ws}"))?;
    Ok(format!("{g:?} at generic q and q = 1, well-situated"))
}

fn quantum_exterior() -> Outcome {
    let (g, c, ws) = both_columns(&sym("glq2"), 1, 4)?;
    ensure(g == [1, 2, 1, 0, 0] && c == g && ws, || format!("generic {g:?}, q=1 {c:?}, well-situated {ws}"))?;
    Ok(format!("{g:?} at generic q and q = 1"))
}

fn glq3_polynomial() -> Outcome {
    let (g, c, _) = both_columns(&sym("glq3"), 0, 3)?;
    ensure(g == [1, 3, 6, 10] && c == g, || format!("generic {g:?}, q=1 {c:?}"))?;
    Ok(format!("{g:?} at generic q and q = 1"))
}

fn tower_criterion() -> Outcome {
    let r =
        tower_flatness(&sym("glq2"), 3, &rat(1), DEFAULT_SEED, DEFAULT_MAX_MATRIX_DIM).map_err(|e| e.to_string())?;
    let dims: Vec<(usize, usize)> = r.levels.iter().map(|l| (l.generic_dim, l.classical_dim)).collect();
    let certs = r.levels.iter().all(|l| l.at_classical.nondegenerate && l.at_random.nondegenerate);
    ensure(dims == [(2, 2), (5, 5)] && certs && r.verdict == TowerVerdict::Satisfied { up_to: 3 }, || {
        format!("dims {dims:?}, certificates {certs}, verdict {}", r.verdict)
    })?;
    Ok(format!("A2 = 2, A3 = 5 both columns; Gram nondegenerate at q = 1 and q0 = {}", r.random_point))
}

fn semigroup_constructions() -> Outcome {
    for name in ["flip2", "glq2"] {
        let s = sym(name);
        let perp = relations_perp(&s);
        ensure(perp.relations == relations_commutator(&s).relations, || format!("{name}: constructions differ"))?;
        ensure(perp.relations.dim() == 6, || format!("{name}: relation dim {}", perp.relations.dim()))?;
        let g = semigroup_dims(&perp, 2, ResourceLimits::default()).map_err(|e| e.to_string())?.dims;
        let s1 = s.specialize(&rat(1)).map_err(|e| e.to_string())?;
        let c = hilbert_oracle(4, &relations_perp(&s1).relations.basis_vectors(), 2);
        ensure(g == [1, 4, 10] && c == g, || format!("{name}: generic {g:?}, q=1 {c:?}"))?;
    }
    Ok("dim 6, degree-2 dims [1, 4, 10] at generic q and q = 1".into())
}

fn lk_decompositions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for trial in 0..25 {
        let p = random_invertible(&mut rng, 5);
        let mut diag = || (0..5).map(|_| rat(rng.gen_range(-2..=2))).collect::<Vec<Rational>>();
        let (d1, d2) = (diag(), diag());
        let ops = [conjugated_diagonal(&p, &d1), conjugated_diagonal(&p, &d2)];
        let (i, j) = (trial % 5, (trial * 3 + 1) % 5);
        let lk = lk_decomposition(&ops, &[d1[i].clone(), d2[j].clone()]).map_err(|e| e.to_string())?;
        ensure(lk.is_direct, || format!("pair {trial} not direct"))?;
    }
    Ok("25 of 25 pairs give E = L ⊕ K".into())
}

fn torsion() -> Outcome {
    let fam = catalog_family("nonflat2").map_err(|e| e.to_string())?;
    let l = limit_subspace(&fam, &rat(1)).map_err(|e| e.to_string())?;
    let e = |i: usize| (0..4).map(|j| rat((i == j) as i64)).collect::<Vec<_>>();
    let expected = Subspace::span(4, vec![e(1), e(2)]).unwrap();
    ensure(l.dropped && l.limit == expected, || format!("dropped {}, limit dim {}", l.dropped, l.limit.dim()))?;
    let rep = flatness_report(&fam, 4, &rat(1), ResourceLimits::default(), false).map_err(|e| e.to_string())?;
    ensure(rep.verdict == FlatnessVerdict::NotADeformation, || format!("verdict {}", rep.verdict))?;
    Ok("dropped, limit span{e1⊗e2, e2⊗e1}, NOT-A-DEFORMATION".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 9);
    for trial in 0..20 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let count = rng.gen_range(1..n * n);
        let rows = if trial % 4 < 2 {
            random_sparse_vectors(&mut rng, count, n * n)
        } else {
            random_vectors(&mut rng, count, n * n)
        };
        let j = Subspace::span(n * n, rows).unwrap();
        let got = hilbert_dims(&QuadraticPresentation::new(j.clone()).unwrap(), 4, ResourceLimits::default())
            .map_err(|e| e.to_string())?
            .dims;
        let want = hilbert_oracle(n, &j.basis_vectors(), 4);
        ensure(got == want, || format!("trial {trial}: {got:?} vs oracle {want:?}"))?;
    }
    Ok("20 of 20 random relation spaces agree with the oracle".into())
}

fn duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 10);
    for trial in 0..50 {
        let mut pick = || {
            let count = rng.gen_range(0..=5);
            Subspace::span(6, random_sparse_vectors(&mut rng, count, 6)).unwrap()
        };
        let (l, m) = (pick(), pick());
        let sum_ok = annihilator(&l.sum(&m).unwrap()) == annihilator(&l).intersect(&annihilator(&m)).unwrap();
        let meet_ok = annihilator(&l.intersect(&m).unwrap()) == annihilator(&l).sum(&annihilator(&m)).unwrap();
        ensure(sum_ok && meet_ok, || format!("pair {trial} violates duality"))?;
    }
    Ok("50 of 50 pairs satisfy both identities".into())
}

fn cabling() -> Outcome {
    let cabled = cable_symmetry(&glq(2), 2, 2).map_err(|e| e.to_string())?;
    ensure(check_braid(&cabled, 4).unwrap(), || "cabled glq(2) fails braid".into())?;
    Ok("cable of glq(2) braids on V^⊗6 as W^⊗3, W = V⊗V".into())
}

fn cli_end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ybx");
    let dir = std::env::temp_dir().join(format!("ybx-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let emitted = run(&["catalog", "emit", "glq2"]);
    let path = dir.join("glq2.json");
    std::fs::write(&path, &emitted.stdout).unwrap();
    let reloaded = ybx_cli::file::load_symmetry(path.to_str().unwrap()).map_err(|e| e.to_string())?;
    let re_emitted = ybx_cli::file::emit_symmetry(&reloaded);
    ensure(re_emitted.as_bytes() == emitted.stdout.as_slice(), || "round trip changed bytes".into())?;

    let pass = run(&["check", path.to_str().unwrap()]).status.code();
    let bad_axiom = dir.join("typo.json");
    let typo = String::from_utf8(emitted.stdout).unwrap().replacen("\"1\", \"0\"]", "\"2\", \"0\"]", 1);
    std::fs::write(&bad_axiom, typo).unwrap();
    let fail = run(&["check", bad_axiom.to_str().unwrap()]);
    let malformed = dir.join("malformed.json");
    std::fs::write(&malformed, "{\"format\": \"ybx-symmetry/1\", \"dim\": 2,").unwrap();
    let input = run(&["check", malformed.to_str().unwrap()]).status.code();
    std::fs::remove_dir_all(&dir).ok();
    let fail_out = String::from_utf8_lossy(&fail.stdout).into_owned();
    ensure(pass == Some(0) && fail.status.code() == Some(1) && fail_out.contains("braid") && input == Some(2), || {
        format!("exit codes pass {pass:?}, failing axiom {:?}, malformed {input:?}", fail.status.code())
    })?;
    Ok("byte-identical round trip; exit codes 0 / 1 (braid) / 2".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("axiom suite", 30, axiom_suite),
        ("quantum-plane flatness", 5, quantum_plane),
        ("quantum-exterior flatness", 5, quantum_exterior),
        ("glq(3) polynomial dims", 60, glq3_polynomial),
        ("tower criterion", 60, tower_criterion),
        ("semigroup constructions", 60, semigroup_constructions),
        ("L ⊕ K decomposition", 10, lk_decompositions),
        ("torsion handling", 1, torsion),
        ("oracle equivalence", 120, oracle_equivalence),
        ("duality identities", 10, duality),
        ("cabling", 60, cabling),
        ("CLI end-to-end", 5, cli_end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("{detail}, but over the time limit")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("[{tag}] {:>2}. {name} ({:.2}s, limit {limit}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
