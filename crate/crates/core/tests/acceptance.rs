//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{rat, weighted_catalog};
use pkarr_core::arrangement::{b_matrix, hirzebruch_check, symmetric_check, Arrangement, ProjLine};
use pkarr_core::catalog::{catalog_build, catalog_validate, quadrilateral_biased_weights};
use pkarr_core::cli::{run_command, EXIT_VIOLATION};
use pkarr_core::connection::{
    build_three_line, mat_add, mat_mul, mat_zero, small_rational, solve_residues, verify_flat_torsion, OriginLine,
    ResidueSystem,
};
use pkarr_core::exactfield::{Field, FieldSpec, Rational, Rationals};
use pkarr_core::parabolic::{parabolic_chern, stability_bounds, ParabolicOptions};
use pkarr_core::relations::{
    bg_value, classify_limit_cusp, parse_curve_file, pencil_criterion, solve_weights, verify_relations, Classification,
    SolveOptions, WeightedSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, format!("took {:.2?}, budget {:.0?}", t, budget))
}

fn system(arr: &Arrangement, w: &[Rational]) -> Result<WeightedSystem, String> {
    let lat = arr.lattice().map_err(err)?;
    WeightedSystem::from_lines(arr, &lat, w).map_err(err)
}

fn quadrilateral_half() -> Outcome {
    let start = Instant::now();
    let e = catalog_build("quadrilateral", &[]).map_err(err)?;
    let sys = system(&e.arrangement, &e.default_weights)?;
    let rep = verify_relations(&sys).map_err(err)?;
    ensure(rep.eq1_residuals.len() == 6 && rep.eq1_residuals.iter().all(|r| r.value.is_zero()), "eq1 residual")?;
    ensure(rep.eq2_residual == Some(Rational::zero()), "eq2 residual")?;
    ensure(rep.eq3_residual == Some(Rational::zero()), "eq3 residual")?;
    let alpha_part: Rational = rep.alphas.iter().map(|a| (&a.value - Rational::one()).pow(2)).sum();
    ensure(alpha_part == rat(9, 4), format!("sum (alpha - 1)^2 = {alpha_part}"))?;
    let bg = bg_value(&sys).map_err(err)?;
    ensure(bg.value.is_zero(), format!("bg = {}", bg.value))?;
    ensure(rep.classification == Classification::PkCandidateEquality, rep.classification.as_str())?;
    within(start, Duration::from_secs(1))?;
    Ok("residuals 0, c2 = 9/4 + 3/4, bg 0, pk_candidate_equality".into())
}

fn biased_family() -> Outcome {
    let start = Instant::now();
    let e = catalog_build("quadrilateral", &[]).map_err(err)?;
    let lat = e.arrangement.lattice().map_err(err)?;
    let sol = solve_weights(&lat, &b_matrix(&lat), &SolveOptions::default());
    let particular = sol.particular.clone().ok_or("solver found no solution")?;
    for b in [rat(1, 4), rat(1, 3), rat(2, 5), rat(1, 2), rat(3, 5)] {
        let w = quadrilateral_biased_weights(&b);
        let sys = system(&e.arrangement, &w)?;
        let rep = verify_relations(&sys).map_err(err)?;
        ensure(rep.residuals_zero(), format!("residuals at beta = {b}"))?;
        ensure(bg_value(&sys).map_err(err)?.value.is_zero(), format!("bg at beta = {b}"))?;
        ensure(rep.constraint_flags.all_strict, format!("constraints at beta = {b}"))?;
        // w - particular must lie in the span of the basis.
        let diff: Vec<Rational> = w.iter().zip(&particular).map(|(a, p)| a - p).collect();
        let mut rows = sol.basis.clone();
        let r0 = pkarr_core::exactfield::linalg::rank(&Rationals, &rows, w.len());
        rows.push(diff);
        let r1 = pkarr_core::exactfield::linalg::rank(&Rationals, &rows, w.len());
        ensure(r0 == r1, format!("beta = {b} outside the solver's space"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("bg 0 and strict for 5 members, solution space dimension {}", sol.basis.len()))
}

fn hesse() -> Outcome {
    let start = Instant::now();
    let e = catalog_build("hesse", &[]).map_err(err)?;
    let lat = e.arrangement.lattice().map_err(err)?;
    let sig = lat.signature();
    ensure(sig == [(4, 9), (2, 12)].into_iter().collect(), format!("signature {sig:?}"))?;
    let sym = symmetric_check(&lat);
    ensure(sym.is_symmetric && sym.m == Some(4), "symmetric m")?;
    let w = vec![rat(3, 4); 12];
    let sys = system(&e.arrangement, &w)?;
    let rep = verify_relations(&sys).map_err(err)?;
    ensure(rep.residuals_zero() && rep.eq3_residual.is_some(), "residuals")?;
    ensure(bg_value(&sys).map_err(err)?.value.is_zero(), "bg")?;
    let h = hirzebruch_check(&lat);
    ensure(h.sum_mu == 60 && h.bound == Rational::from(60) && h.identity_residual.is_zero(), "hirzebruch")?;
    within(start, Duration::from_secs(5))?;
    Ok("{4:9, 2:12}, m = 4, residuals 0, bg 0, sum mu = 60".into())
}

fn ceva() -> Outcome {
    let start = Instant::now();
    for m in 2..=5i64 {
        ensure(catalog_validate("ceva_ext", &[m]).map_err(err)?, format!("validate m = {m}"))?;
        let e = catalog_build("ceva_ext", &[m]).map_err(err)?;
        let lat = e.arrangement.lattice().map_err(err)?;
        let sym = symmetric_check(&lat);
        ensure(
            sym.is_symmetric && sym.per_line_counts.iter().all(|&c| c == m as usize + 2),
            format!("points per line at m = {m}"),
        )?;
        let w = vec![rat(m, m + 1); lat.n];
        let sys = system(&e.arrangement, &w)?;
        let rep = verify_relations(&sys).map_err(err)?;
        ensure(rep.eq1_residuals.iter().all(|r| r.value.is_zero()), format!("eq1 at m = {m}"))?;
        ensure(rep.eq2_residual == Some(Rational::zero()), format!("eq2 at m = {m}"))?;
        ensure(bg_value(&sys).map_err(err)?.value.is_zero(), format!("bg at m = {m}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok("m = 2..5 validated, m + 2 points per line, residuals 0, bg 0".into())
}

fn hirzebruch_identity() -> Outcome {
    let mut count = 0;
    for e in common::catalog_entries() {
        let lat = e.arrangement.lattice().map_err(err)?;
        ensure(hirzebruch_check(&lat).identity_residual.is_zero(), e.name.label())?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let n = rng.gen_range(2..=12);
        let arr = common::random_arrangement(&mut rng, n, 3);
        let lat = arr.lattice().map_err(err)?;
        ensure(hirzebruch_check(&lat).identity_residual.is_zero(), format!("random arrangement {i}"))?;
    }
    Ok(format!("residual 0 on {count} catalog and 100 random arrangements"))
}

fn origin_lines(n: usize) -> Vec<OriginLine> {
    let mut out = vec![
        OriginLine::rational(Rational::one(), Rational::zero()),
        OriginLine::rational(Rational::zero(), Rational::one()),
    ];
    for i in 1..=(n as i64 - 2) {
        out.push(OriginLine::rational(Rational::one(), Rational::from(i)));
    }
    out
}

fn connection() -> Outcome {
    let start = Instant::now();
    let f = FieldSpec::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let b: Vec<Rational> = (0..3).map(|_| Rational::new(rng.gen_range(7..=19), 20)).collect();
        let rep = verify_flat_torsion(&build_three_line(&b[0], &b[1], &b[2]));
        ensure(rep.constraints_ok && rep.flat && rep.torsion_free, format!("three-line system at {b:?}"))?;
    }
    let mut last: Option<ResidueSystem> = None;
    for n in 3..=8 {
        let weights = vec![Rational::one() - Rational::new(1, n as i64 + 1); n];
        let sol = solve_residues(&f, &origin_lines(n), &weights).map_err(err)?;
        ensure(sol.dimension == n - 3, format!("dimension at n = {n}: {}", sol.dimension))?;
        for _ in 0..3 {
            let c: Vec<_> = (0..sol.dimension).map(|_| f.from_rational(&small_rational(&mut rng))).collect();
            let sys = sol.point(&c);
            let rep = verify_flat_torsion(&sys);
            ensure(rep.constraints_ok && rep.flat && rep.torsion_free, format!("sample at n = {n}"))?;
            last = Some(sys);
        }
    }
    // Negative control. Moving mass between residues keeps the sum scalar and so stays
    // flat; instead add to one residue a matrix that does not commute with it.
    let mut bad = last.ok_or("no sample")?;
    let unit = |r: usize, c: usize| {
        let mut m = mat_zero(&f);
        m[r][c] = f.one();
        m
    };
    let a0 = bad.matrices[0].clone();
    let delta = [unit(0, 1), unit(1, 0), unit(0, 0)]
        .into_iter()
        .find(|d| mat_mul(&f, &a0, d) != mat_mul(&f, d, &a0))
        .ok_or("first residue is scalar")?;
    bad.matrices[0] = mat_add(&f, &a0, &delta);
    let rep = verify_flat_torsion(&bad);
    let witness = rep.curvature_poly.0.iter().flatten().any(|p| !p.is_zero());
    ensure(!rep.flat && witness, "perturbed system still flat")?;
    within(start, Duration::from_secs(10))?;
    Ok("20 three-line systems, dimension n - 3 for n = 3..8, samples flat, control curved".into())
}

fn parabolic() -> Outcome {
    let mut checked = 0;
    let mut skipped = Vec::new();
    let mut excluded = Vec::new();
    for (name, arr, w) in weighted_catalog() {
        let lat = arr.lattice().map_err(err)?;
        let rep = match parabolic_chern(&lat, &w, &ParabolicOptions::default()) {
            Ok(r) => r,
            Err(_) => {
                skipped.push(name);
                continue;
            }
        };
        if name.starts_with("polygon_mirrors") {
            // These weights miss the degree relation sum (1 - beta) = 3, so pardeg cannot vanish.
            let sys = system(&arr, &w)?;
            let eq2 = verify_relations(&sys).map_err(err)?.eq2_residual.unwrap_or_default();
            ensure(!eq2.is_zero() && !rep.pardeg.is_zero(), format!("{name} expected to miss the degree relation"))?;
            excluded.push(name);
            continue;
        }
        ensure(rep.pardeg.is_zero(), format!("{name}: pardeg = {}", rep.pardeg))?;
        let bg = bg_value(&system(&arr, &w)?).map_err(err)?.value;
        ensure(rep.par_ch2 == bg, format!("{name}: par_ch2 = {}, bg = {bg}", rep.par_ch2))?;
        checked += 1;
    }
    for (name, n_min) in [("quadrilateral", 25), ("hesse", 109)] {
        let e = catalog_build(name, &[]).map_err(err)?;
        let w = if name == "hesse" { vec![rat(3, 4); 12] } else { e.default_weights.clone() };
        let lat = e.arrangement.lattice().map_err(err)?;
        let s = stability_bounds(&lat, &w).map_err(err)?;
        ensure(s.n_min == n_min, format!("{name}: N_min = {}", s.n_min))?;
        ensure(s.all_negative, format!("{name}: margins not all negative"))?;
    }
    Ok(format!(
        "{checked} admissible entries; inadmissible: {}; excluded, degree relation fails: {}; N_min 25 and 109 with negative margins",
        skipped.len(),
        excluded.join(", ")
    ))
}

fn limit_cusp() -> Outcome {
    let e = catalog_build("near_pencil", &[5]).map_err(err)?;
    let w = e.default_weights.clone();
    ensure(w[..5].iter().all(|b| *b == rat(3, 5)) && w[5].is_zero(), "weights")?;
    let lat = e.arrangement.lattice().map_err(err)?;
    let rep = classify_limit_cusp(&lat, &w);
    ensure(rep.cusps.len() == 1, format!("{} cusps", rep.cusps.len()))?;
    let cusp = rep.cusps[0];
    ensure(lat.points[cusp].multiplicity == 5, "cusp is not the pencil point")?;
    let s: Rational = lat.points[cusp].lines.iter().map(|&j| &w[j] - Rational::one()).sum();
    ensure(s == Rational::from(-2), format!("defect sum {s}"))?;
    let z = e.arrangement.index_of("z").ok_or("no line z")?;
    ensure(rep.boundary_weights == vec![z], "boundary weight flag")?;
    let cls = verify_relations(&system(&e.arrangement, &w)?).map_err(err)?.classification;
    ensure(cls == Classification::LimitCusp, cls.as_str())?;
    Ok(format!("one cusp at {}, defect sum -2, boundary weight on z", lat.points[cusp].point))
}

fn abstract_curves() -> Outcome {
    let file = parse_curve_file(&common::sym2_curve_json().to_string(), "sym2").map_err(err)?;
    let sys = file.to_system().map_err(err)?;
    let rep = verify_relations(&sys).map_err(err)?;
    let defects: Vec<Rational> = sys.curves.iter().map(|c| &c.beta - Rational::one()).collect();
    let lhs: Rational = sys.b[0].iter().zip(&defects).map(|(b, a)| b * a).sum();
    ensure(sys.b[0][0] == Rational::from(6) && lhs == Rational::from(-3), format!("conic row LHS = {lhs}"))?;
    ensure(rep.eq1_residuals.iter().all(|r| r.value.is_zero()), "eq1 residual")?;
    for i in 1..=5 {
        let s: Rational = (1..=5).map(|j| &defects[j]).sum();
        ensure(s == Rational::from(-2), format!("line defects at L{i}"))?;
    }
    Ok("conic row 6 * (-1/2) = -3, all six rows residual 0".into())
}

fn negative_controls() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(err)?;
    let q = dir.path().join("q.json");
    let w = dir.path().join("w.json");
    let qs = q.to_str().unwrap();
    let out = run_command(["pkarr", "catalog", "build", "quadrilateral", "-o", qs]);
    ensure(out.exit_code == 0, out.stderr)?;
    std::fs::write(&w, r#"{"x":"2/3","y":"2/3","z":"2/3","x-y":"2/3","y-z":"2/3","x-z":"2/3"}"#).map_err(err)?;
    let out = run_command(["pkarr", "--json", "check", qs, "--weights", w.to_str().unwrap()]);
    ensure(out.exit_code == EXIT_VIOLATION, format!("exit {}", out.exit_code))?;
    let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(err)?;
    let res = v["check"]["eq1_residuals"].as_array().ok_or("no residuals")?;
    ensure(res.len() == 6 && res.iter().all(|r| r["value"] == "1/3"), "eq1 residual 1/3")?;

    let f = FieldSpec::rationals();
    let line = |name: &str, c: [i64; 3]| ProjLine::new(name, c.map(|x| f.from_rational(&Rational::from(x))));
    let arr = Arrangement::new(
        f.clone(),
        vec![line("x", [1, 0, 0]), line("y", [0, 1, 0]), line("z", [0, 0, 1]), line("x+y+z", [1, 1, 1])],
    )
    .map_err(err)?;
    let lat = arr.lattice().map_err(err)?;
    let rep = pencil_criterion(&lat);
    let bad = rep.lines.iter().find(|l| !l.passes).ok_or("pencil criterion passed")?;
    let ob = bad.obstruction.as_ref().ok_or("no obstruction report")?;
    ensure(!lat.incident(ob.point, ob.line), "obstruction is incident")?;
    Ok(format!(
        "exit 1 with residual 1/3; pencil fails on {}: {} misses {}",
        arr.lines[bad.line].name, arr.lines[ob.line].name, lat.points[ob.point].point
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("complete quadrilateral at 1/2", quadrilateral_half),
        ("biased quadrilateral family", biased_family),
        ("Hesse arrangement at 3/4", hesse),
        ("Ceva-extended m = 2..5", ceva),
        ("Hirzebruch identity", hirzebruch_identity),
        ("connection suite", connection),
        ("parabolic identities and stability margins", parabolic),
        ("limit cusp on near-pencil(5)", limit_cusp),
        ("abstract curves on Sym^2(CP^1)", abstract_curves),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
