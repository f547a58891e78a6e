//! Scorecards for the numerical checks, grouped into suites.

use crate::braid::BraidWord;
use crate::chern::{chern_report, DEFAULT_SAMPLES};
use crate::hessian::hessian_report;
use crate::symplectic::{
    check_braid_invariance, check_gamma_lagrangian, gamma_pullback_max, integrate_fn_pullback,
    monotonicity_ratio, nondegeneracy_rank, random_k_point,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub n: Option<usize>,
    pub trials: usize,
    pub max_deviation: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(check: impl Into<String>, n: Option<usize>, trials: usize, dev: f64, tol: f64) -> Self {
        Self {
            check: check.into(),
            n,
            trials,
            max_deviation: dev,
            pass: dev.is_finite() && dev < tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symplectic,
    Lagrangian,
    Hessian,
    Chern,
    Monotone,
    All,
}

#[derive(Debug, Error)]
#[error("unknown suite {0:?}; expected symplectic, lagrangian, hessian, chern, monotone or all")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "symplectic" => Self::Symplectic,
            "lagrangian" => Self::Lagrangian,
            "hessian" => Self::Hessian,
            "chern" => Self::Chern,
            "monotone" => Self::Monotone,
            "all" => Self::All,
            _ => return Err(UnknownSuite(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scorecard {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

/// Random braid word of the given length on `strands` strands.
pub fn random_word<R: Rng + ?Sized>(strands: usize, len: usize, rng: &mut R) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let k = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters in range")
}

/// Braid ω_c-invariance for every generator on 4, 6 and 8 strands, plus a composite word.
pub fn symplectic_checks(trials: usize, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in [4usize, 6, 8] {
        let mut worst: f64 = 0.0;
        for k in 1..m as i32 {
            for l in [k, -k] {
                let w = BraidWord::new(m, vec![l]).unwrap();
                worst = worst.max(check_braid_invariance(&w, trials, rng).unwrap());
            }
        }
        out.push(CheckResult::new("braid_invariance", Some(m / 2), trials, worst, 1e-10));
    }
    let w = BraidWord::new(4, vec![1, -2, 1]).unwrap();
    out.push(CheckResult::new(
        "braid_invariance_composite",
        Some(2),
        trials,
        check_braid_invariance(&w, trials, rng).unwrap(),
        1e-9,
    ));
    out
}

/// ω_c on Λ and on w(Λ) for random words and for words acting on the last n strands.
pub fn lagrangian_checks(trials: usize, words: usize, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in [2usize, 3, 4] {
        let lam = check_gamma_lagrangian(&BraidWord::identity(2 * n), trials, rng).unwrap();
        out.push(CheckResult::new("lambda_isotropic", Some(n), trials, lam, 1e-10));
        let mut worst: f64 = 0.0;
        for i in 0..words {
            let w = if i % 2 == 0 {
                random_word(2 * n, 12, rng)
            } else {
                // A braid on strands n+1..2n only, as in the Γ_σ construction.
                let inner = random_word(n, 8, rng);
                let shifted = inner.letters().iter().map(|&l| l.signum() * (l.abs() + n as i32));
                BraidWord::new(2 * n, shifted.collect()).unwrap()
            };
            worst = worst.max(check_gamma_lagrangian(&w, trials, rng).unwrap());
        }
        out.push(CheckResult::new(
            "braided_lambda_isotropic",
            Some(n),
            trials * words,
            worst,
            1e-10,
        ));
    }
    out
}

pub fn hessian_checks(n_max: usize) -> Vec<CheckResult> {
    (2..=n_max)
        .map(|n| {
            let r = hessian_report(n).expect("n ≥ 2");
            CheckResult {
                check: "hessian".into(),
                n: Some(n),
                trials: 1,
                max_deviation: r.signature.signature.unsigned_abs() as f64,
                pass: r.pass,
            }
        })
        .collect()
}

pub fn chern_checks() -> Vec<CheckResult> {
    let r = chern_report(DEFAULT_SAMPLES).expect("contour evaluates");
    vec![
        CheckResult::new(
            "determinant_modulus",
            None,
            8 * DEFAULT_SAMPLES,
            r.max_modulus_error,
            1e-9,
        ),
        CheckResult::new("junction_continuity", None, 8, r.max_junction_gap, 1e-9),
        CheckResult {
            check: "winding_and_pairing".into(),
            n: None,
            trials: 3,
            max_deviation: (r.pairing + 2).unsigned_abs() as f64,
            pass: r.pass,
        },
    ]
}

/// Pairings of the symplectic class, nondegeneracy on K and the ratio with c₁.
pub fn monotone_checks(k_points: usize, rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        let p = integrate_fn_pullback(n, 32, rng);
        let p2 = integrate_fn_pullback(n, 64, rng);
        out.push(CheckResult::new(
            "fn_pullback_integral",
            Some(n),
            1,
            (p.integral + PI * PI).abs(),
            1e-8,
        ));
        out.push(CheckResult::new(
            "fn_integrand_constant",
            Some(n),
            32 * 32,
            (p.integrand_min + 0.5).abs().max((p.integrand_max + 0.5).abs()),
            1e-12,
        ));
        out.push(CheckResult::new("fn_hemispheres_vanish", Some(n), 400, p.hemisphere_max, 1e-12));
        out.push(CheckResult::new(
            "quadrature_doubling",
            Some(n),
            2,
            (p.integral - p2.integral).abs(),
            1e-9,
        ));
        out.push(CheckResult::new(
            "gamma_pullback",
            Some(n),
            50,
            gamma_pullback_max(n, 50, rng),
            1e-12,
        ));
        let m = monotonicity_ratio(n, rng);
        out.push(CheckResult::new(
            "monotonicity_ratio",
            Some(n),
            1,
            (m.ratio - PI * PI / 2.0).abs(),
            1e-6,
        ));
        let bad = (0..k_points)
            .filter(|_| nondegeneracy_rank(&random_k_point(n, rng)).ok() != Some(4 * n))
            .count();
        out.push(CheckResult::new("nondegenerate_rank", Some(n), k_points, bad as f64, 0.5));
    }
    out
}

pub fn run_suite(suite: Suite, seed: u64) -> Scorecard {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Symplectic {
        checks.extend(symplectic_checks(1000, &mut rng));
    }
    if all || suite == Suite::Lagrangian {
        checks.extend(lagrangian_checks(1000, 20, &mut rng));
    }
    if all || suite == Suite::Hessian {
        checks.extend(hessian_checks(8));
    }
    if all || suite == Suite::Chern {
        checks.extend(chern_checks());
    }
    if all || suite == Suite::Monotone {
        checks.extend(monotone_checks(100, &mut rng));
    }
    let pass = checks.iter().all(|c| c.pass);
    Scorecard { suite, seed, checks, pass }
}
