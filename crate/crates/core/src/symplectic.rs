//! The 2-form ω_c on products of C, its braid invariance, Lagrangian
//! submanifolds Λ and w(Λ), the two families of test spheres and the
//! pairings with the symplectic class.

use crate::braid::{
    apply_generator_differential, differential, product_r, BraidWord, Configuration, TangentFrame,
};
use crate::su2::{ad_inv, inner, mul, AlgebraVector, SpherePoint, UnitQuaternion};
use crate::variety::is_singular_config;
use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymplecticError {
    #[error("frames live over different base configurations")]
    BaseMismatch,
    #[error("form index {j} out of range for {m} points")]
    IndexOutOfRange { j: usize, m: usize },
    #[error("configuration is not in K: |r(g) - 1| = {0:e}")]
    NotInK(f64),
    #[error("configuration lies in the singular set")]
    Singular,
    #[error("vector is not tangent at slot {slot}: deviation {deviation:e}")]
    NotTangent { slot: usize, deviation: f64 },
    #[error("{0}")]
    Braid(#[from] crate::braid::BraidError),
}

fn same_base(t1: &TangentFrame, t2: &TangentFrame) -> Result<(), SymplecticError> {
    if t1.base.len() != t2.base.len() || t1.base.distance(&t2.base) > 1e-12 {
        return Err(SymplecticError::BaseMismatch);
    }
    Ok(())
}

/// z⁻¹ dz for z = g₁⋯g_j, i.e. Σ_{i≤j} Ad(g_i⋯g_j)⁻¹ X_i.
fn left_product_form(g: &Configuration, xs: &[AlgebraVector], j: usize) -> AlgebraVector {
    let mut acc = AlgebraVector::ZERO;
    let mut tail = UnitQuaternion::ONE;
    for i in (0..j).rev() {
        tail = mul(&g.points[i].q(), &tail);
        acc += ad_inv(&tail, &xs[i]);
    }
    acc
}

/// Pullback of ½ (a⁻¹da • db b⁻¹) through g ↦ (g₁⋯g_j, g_{j+1}); j is 1-based.
pub fn omega_pair(j: usize, t1: &TangentFrame, t2: &TangentFrame) -> Result<f64, SymplecticError> {
    same_base(t1, t2)?;
    let m = t1.base.len();
    if j == 0 || j >= m {
        return Err(SymplecticError::IndexOutOfRange { j, m });
    }
    let x = left_product_form(&t1.base, &t1.vectors, j);
    let y = left_product_form(&t2.base, &t2.vectors, j);
    Ok(0.5 * (inner(&x, &t2.vectors[j]) - inner(&y, &t1.vectors[j])))
}

/// ω_c = −Σ_{j=1}^{m−1} ω_j.
pub fn omega_c(t1: &TangentFrame, t2: &TangentFrame) -> Result<f64, SymplecticError> {
    same_base(t1, t2)?;
    let g = &t1.base;
    let m = g.len();
    let mut total = 0.0;
    let mut x = AlgebraVector::ZERO;
    let mut y = AlgebraVector::ZERO;
    // Running forms z_j⁻¹ dz_j, updated by Ad(g_j)⁻¹ at each step.
    for j in 1..m {
        let gq = g.points[j - 1].q();
        x = ad_inv(&gq, &(x + t1.vectors[j - 1]));
        y = ad_inv(&gq, &(y + t2.vectors[j - 1]));
        total += 0.5 * (inner(&x, &t2.vectors[j]) - inner(&y, &t1.vectors[j]));
    }
    Ok(-total)
}

fn random_point_and_frames<R: Rng + ?Sized>(m: usize, rng: &mut R) -> (TangentFrame, TangentFrame) {
    let g = Configuration::random(m, rng);
    (TangentFrame::random(&g, rng), TangentFrame::random(&g, rng))
}

/// max |ω_c(dσ t₁, dσ t₂) − ω_c(t₁, t₂)| over random frame pairs at random
/// points of the full product; `word` may be any braid on m strands.
pub fn check_braid_invariance<R: Rng + ?Sized>(
    word: &BraidWord,
    trials: usize,
    rng: &mut R,
) -> Result<f64, SymplecticError> {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let (t1, t2) = random_point_and_frames(word.strands(), rng);
        let before = omega_c(&t1, &t2)?;
        let after = omega_c(&differential(word, &t1)?, &differential(word, &t2)?)?;
        worst = worst.max((after - before).abs());
    }
    Ok(worst)
}

/// Pushes a frame through a single generator.
pub fn generator_pushforward(letter: i32, t: &TangentFrame) -> TangentFrame {
    let mut pts = t.base.points.clone();
    let mut xs = t.vectors.clone();
    apply_generator_differential(letter, &mut pts, &mut xs);
    TangentFrame { base: Configuration::new(pts), vectors: xs }
}

/// A point of Λ: (p₁, …, p_n, p_n⁻¹, …, p₁⁻¹).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangianPoint {
    pub half: Vec<SpherePoint>,
}

impl LagrangianPoint {
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self { half: (0..n).map(|_| SpherePoint::random(rng)).collect() }
    }

    pub fn full(&self) -> Configuration {
        let mut pts = self.half.clone();
        pts.extend(self.half.iter().rev().map(|p| p.inverse()));
        Configuration::new(pts)
    }
}

/// Tangent to Λ moving p_i (1-based) by X·p_i and its mirror slot by the
/// derivative of p_i⁻¹.
pub fn lagrangian_tangent(
    p: &LagrangianPoint,
    i: usize,
    x: &AlgebraVector,
) -> Result<TangentFrame, SymplecticError> {
    let n = p.half.len();
    assert!((1..=n).contains(&i), "slot {i} out of range 1..={n}");
    let pi = p.half[i - 1];
    let deviation = x.dot(&pi.v()).abs() / x.norm().max(1.0);
    if deviation > crate::braid::TANGENCY_TOL {
        return Err(SymplecticError::NotTangent { slot: i, deviation });
    }
    let mut vectors = vec![AlgebraVector::ZERO; 2 * n];
    vectors[i - 1] = *x;
    vectors[2 * n - i] = -ad_inv(&pi.q(), x);
    Ok(TangentFrame::new(p.full(), vectors)?)
}

/// Random tangent vector to Λ: a sum of random single-slot tangents.
pub fn random_lagrangian_frame<R: Rng + ?Sized>(p: &LagrangianPoint, rng: &mut R) -> TangentFrame {
    let n = p.half.len();
    let mut vectors = vec![AlgebraVector::ZERO; 2 * n];
    for (k, pk) in p.half.iter().enumerate() {
        let x = pk.random_tangent(rng);
        vectors[k] = x;
        vectors[2 * n - 1 - k] = -ad_inv(&pk.q(), &x);
    }
    TangentFrame { base: p.full(), vectors }
}

/// max |ω_c| on pairs of tangents to w(Λ), obtained by pushing Λ-tangents
/// through the differential of w.
pub fn check_gamma_lagrangian<R: Rng + ?Sized>(
    w: &BraidWord,
    trials: usize,
    rng: &mut R,
) -> Result<f64, SymplecticError> {
    assert!(w.strands().is_multiple_of(2), "Λ lives in an even number of factors");
    let n = w.strands() / 2;
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let p = LagrangianPoint::random(n, rng);
        let t1 = differential(w, &random_lagrangian_frame(&p, rng))?;
        let t2 = differential(w, &random_lagrangian_frame(&p, rng))?;
        worst = worst.max(omega_c(&t1, &t2)?.abs());
    }
    Ok(worst)
}

/// |r(g) − 1| in the quaternion norm.
pub fn product_defect(g: &Configuration) -> f64 {
    product_r(g).distance(&UnitQuaternion::ONE)
}

/// Random nonsingular point of K = r⁻¹(1) with m = 2n factors.
pub fn random_k_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Configuration {
    assert!(n >= 2);
    loop {
        let mut pts: Vec<SpherePoint> = (0..2 * n - 2).map(|_| SpherePoint::random(rng)).collect();
        let q = product_r(&Configuration::new(pts.clone())).inverse();
        let axis = q.vector();
        if axis.norm() < 1e-6 {
            continue;
        }
        let axis = axis * (1.0 / axis.norm());
        let a = SpherePoint::from_vector(&AlgebraVector::random(rng).reject(&axis));
        let b = mul(&a.q(), &q).neg();
        pts.push(a);
        pts.push(SpherePoint::new(b.x, b.y, b.z));
        let g = Configuration::new(pts);
        if !is_singular_config(&g) {
            return g;
        }
    }
}

/// Rank of the Gram matrix of ω_c on an orthonormal basis of T(Cᵐ) at a
/// point of K; singular values below 1e−8 count as zero.
pub fn nondegeneracy_rank(g: &Configuration) -> Result<usize, SymplecticError> {
    let d = product_defect(g);
    if d > 1e-10 {
        return Err(SymplecticError::NotInK(d));
    }
    if is_singular_config(g) {
        return Err(SymplecticError::Singular);
    }
    let m = g.len();
    let mut basis = Vec::with_capacity(2 * m);
    for (slot, p) in g.points.iter().enumerate() {
        for e in p.tangent_basis() {
            let mut v = vec![AlgebraVector::ZERO; m];
            v[slot] = e;
            basis.push(TangentFrame { base: g.clone(), vectors: v });
        }
    }
    let k = basis.len();
    let mut gram = DMatrix::zeros(k, k);
    for a in 0..k {
        for b in a + 1..k {
            let v = omega_c(&basis[a], &basis[b])?;
            gram[(a, b)] = v;
            gram[(b, a)] = -v;
        }
    }
    Ok(gram.svd(false, false).singular_values.iter().filter(|&&s| s > 1e-8).count())
}

fn j_pt() -> SpherePoint {
    SpherePoint::J
}

/// Sign-flipped J used by the trailing pairs of both test maps.
fn signed_j(s: f64) -> SpherePoint {
    if s < 0.0 {
        SpherePoint::J.neg()
    } else {
        SpherePoint::J
    }
}

/// The sphere γ_{k,ε}: J in every slot except A at k and εA at k+1
/// (k is 1-based, 1 ≤ k ≤ 2n−1), with one sign on a J to land in K.
pub fn gamma_point(n: usize, k: usize, eps: f64, a: &SpherePoint) -> Configuration {
    let m = 2 * n;
    assert!(n >= 2 && (1..m).contains(&k));
    let mut pts = vec![j_pt(); m];
    pts[k - 1] = *a;
    pts[k] = if eps < 0.0 { a.neg() } else { *a };
    let sign = if n.is_multiple_of(2) { eps } else { -eps };
    let slot = if k == m - 1 { 0 } else { m - 1 };
    pts[slot] = signed_j(sign);
    Configuration::new(pts)
}

/// Push-forward of a tangent X·A at A under γ_{k,ε}: slots k and k+1 move together.
pub fn gamma_tangent(
    n: usize,
    k: usize,
    eps: f64,
    a: &SpherePoint,
    x: &AlgebraVector,
) -> TangentFrame {
    let base = gamma_point(n, k, eps, a);
    let mut v = vec![AlgebraVector::ZERO; 2 * n];
    v[k - 1] = *x;
    v[k] = *x;
    TangentFrame { base, vectors: v }
}

/// max |γ*ω_c| over random points and tangent pairs for every (k, ε).
pub fn gamma_pullback_max<R: Rng + ?Sized>(n: usize, trials: usize, rng: &mut R) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 1..2 * n {
        for eps in [1.0, -1.0] {
            for _ in 0..trials {
                let a = SpherePoint::random(rng);
                let (x, y) = (a.random_tangent(rng), a.random_tangent(rng));
                let t1 = gamma_tangent(n, k, eps, &a, &x);
                let t2 = gamma_tangent(n, k, eps, &a, &y);
                worst = worst.max(omega_c(&t1, &t2).unwrap().abs());
            }
        }
    }
    worst
}

fn trailing(n: usize, pts: &mut Vec<SpherePoint>) {
    for j in 5..=2 * n {
        pts.push(signed_j(if j % 2 == 1 { -1.0 } else { 1.0 }));
    }
}

/// f_n on the open square U₃: (A_{θ₁}, J, A_{θ₂}, A_{θ₁+θ₂}, −J, J, …).
pub fn fn_point(n: usize, t1: f64, t2: f64) -> Configuration {
    assert!(n >= 2);
    let mut pts = vec![
        SpherePoint::a_theta(t1),
        j_pt(),
        SpherePoint::a_theta(t2),
        SpherePoint::a_theta(t1 + t2),
    ];
    trailing(n, &mut pts);
    Configuration::new(pts)
}

/// df(∂θ₁), df(∂θ₂) on U₃. dA_θ/dθ = k·A_θ.
pub fn fn_tangents(n: usize, t1: f64, t2: f64) -> (TangentFrame, TangentFrame) {
    let base = fn_point(n, t1, t2);
    let m = 2 * n;
    let k = AlgebraVector::K;
    let mut d1 = vec![AlgebraVector::ZERO; m];
    let mut d2 = vec![AlgebraVector::ZERO; m];
    d1[0] = k;
    d1[3] = k;
    d2[2] = k;
    d2[3] = k;
    (TangentFrame { base: base.clone(), vectors: d1 }, TangentFrame { base, vectors: d2 })
}

/// f_n on the hemisphere charts: U₁ ↦ (J, J, A, A, −J, J, …) and
/// U₂ ↦ (−J, J, A, −A, −J, J, …).
pub fn fn_hemisphere_point(n: usize, chart: u8, a: &SpherePoint) -> Configuration {
    let mut pts = match chart {
        1 => vec![j_pt(), j_pt(), *a, *a],
        2 => vec![j_pt().neg(), j_pt(), *a, a.neg()],
        _ => panic!("hemisphere chart must be 1 or 2"),
    };
    trailing(n, &mut pts);
    Configuration::new(pts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FnPullback {
    pub n: usize,
    pub order: usize,
    pub integral: f64,
    /// Extreme values of the integrand on the quadrature grid.
    pub integrand_min: f64,
    pub integrand_max: f64,
    /// max |f_n*ω_c| at random samples of the hemisphere charts.
    pub hemisphere_max: f64,
    pub max_product_defect: f64,
}

/// ∫ f_n*ω_c over U₃ = [0,π]×[0,2π] by a Gauss–Legendre tensor grid, plus
/// pointwise checks on the hemisphere charts.
pub fn integrate_fn_pullback<R: Rng + ?Sized>(n: usize, order: usize, rng: &mut R) -> FnPullback {
    let gl = GaussLegendre::new(NonZeroUsize::new(order).expect("order ≥ 1"));
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut defect: f64 = 0.0;
    let integral = gl.integrate(0.0, PI, |t1| {
        gl.integrate(0.0, 2.0 * PI, |t2| {
            let (d1, d2) = fn_tangents(n, t1, t2);
            defect = defect.max(product_defect(&d1.base));
            let v = omega_c(&d1, &d2).unwrap();
            lo = lo.min(v);
            hi = hi.max(v);
            v
        })
    });
    let mut hemi: f64 = 0.0;
    for chart in [1u8, 2] {
        for _ in 0..200 {
            let a = SpherePoint::random(rng);
            let g = fn_hemisphere_point(n, chart, &a);
            defect = defect.max(product_defect(&g));
            let (x, y) = (a.random_tangent(rng), a.random_tangent(rng));
            let frame = |z: AlgebraVector| {
                let mut v = vec![AlgebraVector::ZERO; 2 * n];
                v[2] = z;
                v[3] = z;
                TangentFrame { base: g.clone(), vectors: v }
            };
            hemi = hemi.max(omega_c(&frame(x), &frame(y)).unwrap().abs());
        }
    }
    FnPullback {
        n,
        order,
        integral,
        integrand_min: lo,
        integrand_max: hi,
        hemisphere_max: hemi,
        max_product_defect: defect,
    }
}

/// The four-point configuration (A_{θ₁}, J, A_{θ₂}, A_{θ₁+θ₂}) in K₄.
pub fn pillowcase_point(t1: f64, t2: f64) -> Configuration {
    fn_point(2, t1, t2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monotonicity {
    pub n: usize,
    pub symplectic_pairing: f64,
    pub chern_pairing: i64,
    pub ratio: f64,
    /// Pairings with the γ classes; both vanish so no ratio is formed.
    pub gamma_symplectic_max: f64,
    pub gamma_chern: i64,
}

/// ⟨[ω]|f_n⟩ / ⟨c₁|f_n⟩, expected π²/2.
pub fn monotonicity_ratio<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Monotonicity {
    let s = integrate_fn_pullback(n, 32, rng).integral;
    let c = crate::chern::chern_pairing(crate::chern::DEFAULT_SAMPLES)
        .expect("chern pairing evaluates");
    Monotonicity {
        n,
        symplectic_pairing: s,
        chern_pairing: c,
        ratio: s / c as f64,
        gamma_symplectic_max: gamma_pullback_max(n, 50, rng),
        gamma_chern: 0,
    }
}
