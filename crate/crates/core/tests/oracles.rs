//! Independent oracles: finite differences for the braid differential and the
//! ω_c pairs, Seifert matrices for the Alexander polynomial, and complex 2×2
//! matrices for the quandle action.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repvar_core::braid::{act, differential, parse_braid, product_r, Configuration, TangentFrame};
use repvar_core::invariants::alexander;
use repvar_core::laurent::LaurentPoly;
use repvar_core::su2::{AlgebraVector, SpherePoint, UnitQuaternion};
use repvar_core::symplectic::{omega_c, omega_pair};
use repvar_core::verify::random_word;

fn r3(p: &SpherePoint) -> [f64; 3] {
    [p.x, p.y, p.z]
}

#[test]
fn differential_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for case in 0..1000 {
        let m = 2 + case % 5;
        let w = random_word(m, 1 + case % 7, &mut rng);
        let g = Configuration::random(m, &mut rng);
        let t = TangentFrame::random(&g, &mut rng);
        let plus = act(&w, &t.flow(h)).unwrap();
        let minus = act(&w, &t.flow(-h)).unwrap();
        let d = differential(&w, &t).unwrap();
        for i in 0..m {
            let v = d.vectors[i].cross(&d.base.points[i].v());
            let (a, b) = (r3(&plus.points[i]), r3(&minus.points[i]));
            for (k, vk) in [v.x, v.y, v.z].into_iter().enumerate() {
                let fd = (a[k] - b[k]) / (2.0 * h);
                worst = worst.max((fd - vk).abs());
            }
        }
    }
    assert!(worst < 1e-6, "max finite-difference gap {worst:e}");
}

/// Ω(U, V) on G × G through a finite-difference curve of z = g₁⋯g_j.
#[test]
fn omega_pair_matches_finite_difference_pullback() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let h = 1e-6;
    for _ in 0..200 {
        let m = rng.gen_range(2..7);
        let j = rng.gen_range(1..m);
        let g = Configuration::random(m, &mut rng);
        let t1 = TangentFrame::random(&g, &mut rng);
        let t2 = TangentFrame::random(&g, &mut rng);
        let zform = |t: &TangentFrame| {
            let prod = |c: &Configuration| {
                c.points[..j]
                    .iter()
                    .fold(UnitQuaternion::ONE, |a, p| repvar_core::su2::mul(&a, &p.q()))
            };
            let z = prod(&g);
            let zp = prod(&t.flow(h));
            let zm = prod(&t.flow(-h));
            // z⁻¹ dz via central differences of the components of z⁻¹ z(s).
            let dp = repvar_core::su2::mul(&z.inverse(), &zp);
            let dm = repvar_core::su2::mul(&z.inverse(), &zm);
            AlgebraVector::new(
                (dp.x - dm.x) / (2.0 * h),
                (dp.y - dm.y) / (2.0 * h),
                (dp.z - dm.z) / (2.0 * h),
            )
        };
        let (x, y) = (zform(&t1), zform(&t2));
        let want = 0.5 * (x.dot(&t2.vectors[j]) - y.dot(&t1.vectors[j]));
        let got = omega_pair(j, &t1, &t2).unwrap();
        assert!((want - got).abs() < 1e-6, "j={j} m={m}: {want} vs {got}");
    }
}

/// 2×2 complex matrix of a unit quaternion, as in the module docs.
fn matrix(q: &UnitQuaternion) -> [[(f64, f64); 2]; 2] {
    [[(q.w, q.x), (q.y, q.z)], [(-q.y, q.z), (q.w, -q.x)]]
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn mmul(a: [[(f64, f64); 2]; 2], b: [[(f64, f64); 2]; 2]) -> [[(f64, f64); 2]; 2] {
    let mut c = [[(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let p = cmul(a[i][k], b[k][j]);
                c[i][j].0 += p.0;
                c[i][j].1 += p.1;
            }
        }
    }
    c
}

fn adjoint(a: [[(f64, f64); 2]; 2]) -> [[(f64, f64); 2]; 2] {
    let conj = |z: (f64, f64)| (z.0, -z.1);
    [[conj(a[0][0]), conj(a[1][0])], [conj(a[0][1]), conj(a[1][1])]]
}

#[test]
fn generator_matches_matrix_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let g = Configuration::random(2, &mut rng);
        let out = act(&parse_braid("2: 1").unwrap(), &g).unwrap();
        let (a, b) = (matrix(&g.points[0].q()), matrix(&g.points[1].q()));
        let want = mmul(mmul(a, b), adjoint(a));
        let got = matrix(&out.points[0].q());
        for i in 0..2 {
            for j in 0..2 {
                assert!((want[i][j].0 - got[i][j].0).abs() < 1e-12);
                assert!((want[i][j].1 - got[i][j].1).abs() < 1e-12);
            }
        }
        assert_eq!(out.points[1], g.points[0]);
    }
}

/// Δ(t) = det(V − t Vᵀ) for a 2×2 Seifert matrix, expanded by hand.
fn seifert_alexander(v: [[i64; 2]; 2]) -> LaurentPoly {
    let entry = |i: usize, j: usize| LaurentPoly::new(0, vec![v[i][j], -v[j][i]]);
    let d = &(&entry(0, 0) * &entry(1, 1)) - &(&entry(0, 1) * &entry(1, 0));
    let d = d.shift(-d.min_exp);
    if d.eval(1) < 0 {
        d.scale(-1)
    } else {
        d
    }
}

#[test]
fn burau_agrees_with_seifert() {
    let cases = [
        ("2: 1 1 1", [[-1, 1], [0, -1]]),
        ("3: 1 -2 1 -2", [[-1, 1], [0, 1]]),
        ("3: 1 1 1 2 -1 2", [[-2, 1], [0, -1]]),
    ];
    for (word, v) in cases {
        let burau = alexander(&parse_braid(word).unwrap()).unwrap();
        let seifert = seifert_alexander(v);
        assert!(burau.associate(&seifert), "{word}: {burau} vs {seifert}");
        assert_eq!(burau, seifert);
    }
}

#[test]
fn product_is_preserved_by_the_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let m = rng.gen_range(2..8);
        let w = random_word(m, 10, &mut rng);
        let g = Configuration::random(m, &mut rng);
        let d = product_r(&act(&w, &g).unwrap()).distance(&product_r(&g));
        assert!(d < 1e-12);
    }
}

#[test]
fn omega_c_rejects_mismatched_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let a = TangentFrame::random(&Configuration::random(3, &mut rng), &mut rng);
    let b = TangentFrame::random(&Configuration::random(3, &mut rng), &mut rng);
    assert!(omega_c(&a, &b).is_err());
}
