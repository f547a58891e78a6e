//! Acceptance run: one line per criterion, nonzero exit if any fails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repvar_core::braid::{act, differential, BraidWord, Configuration, TangentFrame};
use repvar_core::chern::{chern_pairing, chern_report, DEFAULT_SAMPLES};
use repvar_core::hessian::{det_factorization, hessian_report, pfaffian_recurrence};
use repvar_core::invariants::{
    alexander, compare_khovanov, read_khovanov_ranks, two_bridge_prediction,
};
use repvar_core::laurent::LaurentPoly;
use repvar_core::symplectic::{gamma_pullback_max, integrate_fn_pullback, monotonicity_ratio};
use repvar_core::table::{KnotTable, BUILTIN_KHOVANOV_RANKS};
use repvar_core::variety::{
    analyze, angle_case_9_42, torus_components, variety_rank, SolverConfig, VarietyReport,
};
use repvar_core::verify::{lagrangian_checks, monotone_checks, random_word, symplectic_checks};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(cfg: &SolverConfig, w: &BraidWord) -> VarietyReport {
    analyze(w, cfg).expect("solver config is valid")
}

fn within(elapsed: Duration, secs: u64) -> bool {
    elapsed < Duration::from_secs(secs)
}

fn c1_torus(cfg: &SolverConfig) -> Outcome {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=9usize {
        let w = BraidWord::new(2, vec![1; n]).unwrap();
        let r = run(cfg, &w);
        let mut want: Vec<usize> = torus_components(n).iter().map(|c| c.dimension).collect();
        want.sort_unstable();
        let got = r.dimensions();
        ok &= got == want;
        detail.push(format!("T(2,{n}) {got:?}"));
    }
    let el = t0.elapsed();
    ok &= within(el, 60);
    Outcome { pass: ok, detail: format!("{} in {:.1}s", detail.join(", "), el.as_secs_f64()) }
}

fn dims_ok(r: &VarietyReport, count: usize) -> bool {
    let d = r.dimensions();
    d.len() == count && d[0] == 2 && d[1..].iter().all(|&x| x == 3)
}

fn c2_small(cfg: &SolverConfig, table: &KnotTable) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, count) in [("4_1", 3), ("5_2", 4), ("6_1", 5)] {
        let t0 = Instant::now();
        let r = run(cfg, &table.get(name).unwrap().word);
        ok &= dims_ok(&r, count) && within(t0.elapsed(), 120);
        detail.push(format!("{name} {:?}", r.dimensions()));
    }
    Outcome { pass: ok, detail: detail.join(", ") }
}

fn c3_nine_42(cfg: &SolverConfig, table: &KnotTable) -> Outcome {
    let t0 = Instant::now();
    let r = run(cfg, &table.get("9_42").unwrap().word);
    let abelian2 = r.components.iter().filter(|c| c.is_abelian && c.est_dimension == 2).count();
    let dim3 = r.components.iter().filter(|c| c.est_dimension == 3).count();
    let angles = angle_case_9_42().unwrap();
    let max_res = angles.cases.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    let el = t0.elapsed();
    Outcome {
        pass: r.components.len() == 8 && abelian2 == 1 && dim3 == 7 && angles.pass && within(el, 300),
        detail: format!(
            "{} components ({abelian2} abelian dim 2, {dim3} dim 3), angle residual {max_res:.1e}, 2b sign split {}, {:.1}s",
            r.components.len(),
            angles.case_2b_sign_separated,
            el.as_secs_f64()
        ),
    }
}

fn c4_square(cfg: &SolverConfig, table: &KnotTable) -> Outcome {
    let t0 = Instant::now();
    let r = run(cfg, &table.get("square").unwrap().word);
    let el = t0.elapsed();
    Outcome {
        pass: r.dimensions() == vec![2, 3, 3, 4] && within(el, 180),
        detail: format!("dims {:?} in {:.1}s", r.dimensions(), el.as_secs_f64()),
    }
}

fn c5_two_bridge(cfg: &SolverConfig, table: &KnotTable) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["3_1", "4_1", "5_1", "5_2", "6_1", "7_1"] {
        let e = table.get(name).unwrap();
        let p = two_bridge_prediction(e.determinant).unwrap();
        let r = run(cfg, &e.word);
        let rank = variety_rank(&r.components);
        ok &= p.components == r.components.len()
            && p.cohomology_rank == e.determinant + 1
            && rank == Some(p.cohomology_rank);
        detail.push(format!(
            "{name} {}={} rank {}",
            p.components,
            r.components.len(),
            p.cohomology_rank
        ));
    }
    Outcome { pass: ok, detail: detail.join(", ") }
}

fn c6_khovanov(cfg: &SolverConfig, table: &KnotTable) -> Outcome {
    let ranks = read_khovanov_ranks(BUILTIN_KHOVANOV_RANKS.as_bytes()).unwrap();
    let r = run(cfg, &table.get("9_42").unwrap().word);
    let Some(vr) = variety_rank(&r.components) else {
        return Outcome { pass: false, detail: "untagged component".into() };
    };
    let c = compare_khovanov("9_42", vr, &ranks);
    Outcome {
        pass: vr == 16 && c.khovanov_rank == Some(10) && !c.matches && c.difference == Some(6),
        detail: format!(
            "variety rank {vr} vs Khovanov {:?}, difference {:?}",
            c.khovanov_rank, c.difference
        ),
    }
}

fn from_checks(checks: Vec<repvar_core::verify::CheckResult>) -> Outcome {
    let worst = checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    Outcome {
        pass: checks.iter().all(|c| c.pass),
        detail: format!("{} checks, max deviation {worst:.2e}", checks.len()),
    }
}

fn c9_pairings(rng: &mut ChaCha8Rng) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [2usize, 3] {
        let p = integrate_fn_pullback(n, 32, rng);
        let g = gamma_pullback_max(n, 200, rng);
        let m = monotonicity_ratio(n, rng);
        ok &= (p.integral + PI * PI).abs() < 1e-8
            && p.hemisphere_max < 1e-12
            && g < 1e-12
            && (m.ratio - PI * PI / 2.0).abs() < 1e-6;
        detail
            .push(format!("n={n} integral {:.12} gamma {g:.1e} ratio {:.9}", p.integral, m.ratio));
    }
    let c = chern_pairing(DEFAULT_SAMPLES).unwrap();
    ok &= c == -2;
    detail.push(format!("chern {c}"));
    Outcome { pass: ok, detail: detail.join(", ") }
}

fn c10_nondegenerate(rng: &mut ChaCha8Rng) -> Outcome {
    let checks: Vec<_> =
        monotone_checks(100, rng).into_iter().filter(|c| c.check == "nondegenerate_rank").collect();
    Outcome {
        pass: checks.len() == 2 && checks.iter().all(|c| c.pass),
        detail: format!("rank 4n at 100 K points for n = 2, 3: {}", checks.iter().all(|c| c.pass)),
    }
}

fn c11_hessian() -> Outcome {
    let mut ok = true;
    let mut pf = Vec::new();
    let mut min_eig = f64::INFINITY;
    for n in 2..=8 {
        let r = hessian_report(n).unwrap();
        ok &=
            r.php_is_minus_h && r.signature.signature == 0 && r.signature.min_abs_eigenvalue > 1e-2;
        ok &= r.pfaffian_elimination == r.pfaffian_recurrence
            && r.pfaffian_expansion == r.pfaffian_elimination;
        min_eig = min_eig.min(r.signature.min_abs_eigenvalue);
        pf.push(r.pfaffian_elimination);
    }
    ok &= pf == vec![2, 5, 12, 29, 70, 169, 408] && pf == pfaffian_recurrence(8);
    for n in 2..=4 {
        ok &= det_factorization(n).unwrap().holds;
    }
    Outcome { pass: ok, detail: format!("Pf {pf:?}, min |eig| {min_eig:.3}") }
}

fn c12_chern() -> Outcome {
    let r = chern_report(DEFAULT_SAMPLES).unwrap();
    Outcome {
        pass: r.pass,
        detail: format!(
            "|D| error {:.1e}, junction gap {:.1e}, winding K {} K' {}",
            r.max_modulus_error, r.max_junction_gap, r.winding_k, r.winding_kprime
        ),
    }
}

/// Δ = det(V − t Vᵀ) for 2×2 Seifert matrices.
fn seifert(v: [[i64; 2]; 2]) -> LaurentPoly {
    let e = |i: usize, j: usize| LaurentPoly::new(0, vec![v[i][j], -v[j][i]]);
    let d = &(&e(0, 0) * &e(1, 1)) - &(&e(0, 1) * &e(1, 0));
    let d = d.shift(-d.min_exp);
    if d.eval(1) < 0 {
        d.scale(-1)
    } else {
        d
    }
}

fn c13_oracles(table: &KnotTable, rng: &mut ChaCha8Rng) -> Outcome {
    let mut ok = true;
    for (name, v) in
        [("3_1", [[-1, 1], [0, -1]]), ("4_1", [[-1, 1], [0, 1]]), ("5_2", [[-2, 1], [0, -1]])]
    {
        ok &= alexander(&table.get(name).unwrap().word).unwrap() == seifert(v);
    }
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for case in 0..1000 {
        let m = 2 + case % 5;
        let w = random_word(m, 1 + case % 7, rng);
        let g = Configuration::random(m, rng);
        let t = TangentFrame::random(&g, rng);
        let (p, q) = (act(&w, &t.flow(h)).unwrap(), act(&w, &t.flow(-h)).unwrap());
        let d = differential(&w, &t).unwrap();
        for i in 0..m {
            let v = d.vectors[i].cross(&d.base.points[i].v());
            let fd = [
                (p.points[i].x - q.points[i].x) / (2.0 * h),
                (p.points[i].y - q.points[i].y) / (2.0 * h),
                (p.points[i].z - q.points[i].z) / (2.0 * h),
            ];
            worst =
                worst.max((fd[0] - v.x).abs()).max((fd[1] - v.y).abs()).max((fd[2] - v.z).abs());
        }
    }
    ok &= worst < 1e-6;
    Outcome {
        pass: ok,
        detail: format!("Seifert = Burau for 3_1, 4_1, 5_2; differential FD gap {worst:.1e}"),
    }
}

type Criterion<'a> = (&'static str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome + 'a>);

fn main() {
    let cfg = SolverConfig::default();
    let table = KnotTable::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let criteria: Vec<Criterion> = vec![
        ("torus links", Box::new(|_| c1_torus(&cfg))),
        ("small knots", Box::new(|_| c2_small(&cfg, &table))),
        ("9_42", Box::new(|_| c3_nine_42(&cfg, &table))),
        ("square knot", Box::new(|_| c4_square(&cfg, &table))),
        ("two-bridge prediction", Box::new(|_| c5_two_bridge(&cfg, &table))),
        ("Khovanov comparison", Box::new(|_| c6_khovanov(&cfg, &table))),
        ("braid invariance of omega_c", Box::new(|r| from_checks(symplectic_checks(1000, r)))),
        ("Lagrangian vanishing", Box::new(|r| from_checks(lagrangian_checks(1000, 20, r)))),
        ("pairings", Box::new(c9_pairings)),
        ("nondegeneracy on K", Box::new(c10_nondegenerate)),
        ("Hessian", Box::new(|_| c11_hessian())),
        ("section determinant winding", Box::new(|_| c12_chern())),
        ("oracle suite", Box::new(|r| c13_oracles(&table, r))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let o = f(&mut rng);
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<5} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 13 criteria passed");
}
