//! Numerical fixed-point sets of the braid action on (S²)ⁿ: random-restart
//! descent, Newton polish, union-find clustering and local-PCA dimensions.

use crate::braid::{act, apply_generator_differential, BraidWord, Configuration};
use crate::su2::{AlgebraVector, SpherePoint, UnitQuaternion};
use nalgebra::{DMatrix, DVector, Matrix3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("invalid solver config: {0}")]
    Config(String),
    #[error("braid has {strands} strands but configuration has {len} points")]
    LengthMismatch { strands: usize, len: usize },
    #[error("9_42 angle case {case}: {msg}")]
    Construction { case: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub seeds: usize,
    pub rng_seed: u64,
    /// Bound on the squared residual for a point to count as a solution.
    pub descent_tol: f64,
    pub max_iters: usize,
    pub link_radius: f64,
    pub pca_threshold: f64,
    pub samples_per_component: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seeds: 400,
            rng_seed: 1,
            descent_tol: 1e-12,
            max_iters: 400,
            link_radius: 0.15,
            pca_threshold: 1e-3,
            samples_per_component: 48,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), VarietyError> {
        let bad = |m: &str| Err(VarietyError::Config(m.to_string()));
        if self.seeds == 0 {
            return bad("seeds must be positive");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if self.samples_per_component == 0 {
            return bad("samples_per_component must be positive");
        }
        for (name, v) in [
            ("descent_tol", self.descent_tol),
            ("link_radius", self.link_radius),
            ("pca_threshold", self.pca_threshold),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(&format!("{name} must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TopologyTag {
    S2,
    Rp3,
    ProductRp3S1,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub id: usize,
    pub representative: Configuration,
    pub sample_count: usize,
    pub est_dimension: usize,
    pub topology_tag: TopologyTag,
    pub is_binary_dihedral: bool,
    pub is_abelian: bool,
}

/// Σ ‖act(w,g)_i − g_i‖².
pub fn residual(w: &BraidWord, g: &Configuration) -> Result<f64, VarietyError> {
    Ok(residual_vector(w, g)?.norm_squared())
}

fn residual_vector(w: &BraidWord, g: &Configuration) -> Result<DVector<f64>, VarietyError> {
    let h = act(w, g)
        .map_err(|_| VarietyError::LengthMismatch { strands: w.strands(), len: g.len() })?;
    Ok(DVector::from_iterator(
        3 * g.len(),
        h.points.iter().zip(&g.points).flat_map(|(a, b)| [a.x - b.x, a.y - b.y, a.z - b.z]),
    ))
}

/// R³ velocities of an orthonormal tangent basis of (S²)ⁿ at g, slot by slot.
fn velocity_basis(g: &Configuration) -> Vec<(usize, AlgebraVector, AlgebraVector)> {
    let mut out = Vec::with_capacity(2 * g.len());
    for (j, p) in g.points.iter().enumerate() {
        for e in p.tangent_basis() {
            out.push((j, e, e.cross(&p.v())));
        }
    }
    out
}

/// Residual F and its Jacobian in the basis of `velocity_basis`.
fn linearize(w: &BraidWord, g: &Configuration) -> (DVector<f64>, DMatrix<f64>) {
    let n = g.len();
    let basis = velocity_basis(g);
    let f = residual_vector(w, g).expect("lengths checked by caller");
    let mut jac = DMatrix::zeros(3 * n, basis.len());
    for (c, (slot, e, vel)) in basis.iter().enumerate() {
        let mut pts = g.points.clone();
        let mut xs = vec![AlgebraVector::ZERO; n];
        xs[*slot] = *e;
        for &l in w.letters().iter().rev() {
            apply_generator_differential(l, &mut pts, &mut xs);
        }
        for i in 0..n {
            let v = xs[i].cross(&pts[i].v());
            jac[(3 * i, c)] = v.x;
            jac[(3 * i + 1, c)] = v.y;
            jac[(3 * i + 2, c)] = v.z;
        }
        jac[(3 * slot, c)] -= vel.x;
        jac[(3 * slot + 1, c)] -= vel.y;
        jac[(3 * slot + 2, c)] -= vel.z;
    }
    (f, jac)
}

/// Moves along tangent coordinates and normalizes back onto the spheres.
fn retract(g: &Configuration, step: &DVector<f64>) -> Configuration {
    let mut pts = g.points.clone();
    for (c, (slot, _, vel)) in velocity_basis(g).iter().enumerate() {
        let p = &mut pts[*slot];
        p.x += step[c] * vel.x;
        p.y += step[c] * vel.y;
        p.z += step[c] * vel.z;
    }
    Configuration::new(pts.iter().map(|p| SpherePoint::new(p.x, p.y, p.z)).collect())
}

/// Minimal-norm Gauss–Newton step −J⁺F.
fn newton_step(f: &DVector<f64>, jac: &DMatrix<f64>) -> DVector<f64> {
    let svd = jac.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let eps = (smax * 1e-10).max(1e-14);
    svd.solve(f, eps).map(|s| -s).unwrap_or_else(|_| DVector::zeros(jac.ncols()))
}

/// Newton iterations with backtracking until the residual stops improving.
fn polish(w: &BraidWord, mut g: Configuration, max_iters: usize) -> (Configuration, f64) {
    let mut r = residual(w, &g).unwrap();
    for _ in 0..max_iters {
        if r < 1e-30 {
            break;
        }
        let (f, jac) = linearize(w, &g);
        let step = newton_step(&f, &jac);
        let mut t = 1.0;
        let mut improved = false;
        while t > 1e-4 {
            let cand = retract(&g, &(&step * t));
            let rc = residual(w, &cand).unwrap();
            if rc < r {
                g = cand;
                r = rc;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (g, r)
}

/// Gradient descent on the residual from g, then Newton polish.
fn descend(w: &BraidWord, mut g: Configuration, cfg: &SolverConfig) -> Option<Configuration> {
    let mut r = residual(w, &g).unwrap();
    let mut eta = 0.5;
    for _ in 0..cfg.max_iters {
        if r < 1e-3 {
            break;
        }
        let (f, jac) = linearize(w, &g);
        let grad = jac.transpose() * &f * 2.0;
        let gn = grad.norm_squared();
        if gn < 1e-20 {
            return None;
        }
        loop {
            let cand = retract(&g, &(&grad * -eta));
            let rc = residual(w, &cand).unwrap();
            if rc <= r - 1e-4 * eta * gn {
                g = cand;
                r = rc;
                eta = (eta * 1.5).min(4.0);
                break;
            }
            eta *= 0.5;
            if eta < 1e-8 {
                return None;
            }
        }
    }
    let (g, r) = polish(w, g, cfg.max_iters.min(100));
    (r < cfg.descent_tol).then_some(g)
}

fn lex_cmp(a: &Configuration, b: &Configuration) -> std::cmp::Ordering {
    a.flat()
        .iter()
        .zip(b.flat().iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn seed_rng(rng_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(index);
    rng
}

/// Point cloud of fixed points, sorted and deduplicated. Seeds that do not
/// converge are dropped. Independent of the rayon thread count.
pub fn solve(w: &BraidWord, cfg: &SolverConfig) -> Result<Vec<Configuration>, VarietyError> {
    cfg.validate()?;
    let n = w.strands();
    let mut pts: Vec<Configuration> = (0..cfg.seeds as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = seed_rng(cfg.rng_seed, i);
            descend(w, Configuration::random(n, &mut rng), cfg)
        })
        .collect();
    pts.sort_by(lex_cmp);
    pts.dedup_by(|a, b| a.distance(b) < 1e-8);
    Ok(pts)
}

/// Rotation R ∈ SO(3) minimizing Σ‖R aᵢ − bᵢ‖².
pub fn kabsch(a: &Configuration, b: &Configuration) -> Matrix3<f64> {
    let mut h = Matrix3::zeros();
    for (p, q) in a.points.iter().zip(&b.points) {
        h += nalgebra::Vector3::new(p.x, p.y, p.z) * nalgebra::RowVector3::new(q.x, q.y, q.z);
    }
    let svd = h.svd(true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    let d = (vt.transpose() * u.transpose()).determinant().signum();
    vt.transpose() * Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, d)) * u.transpose()
}

/// min over R ∈ SO(3) of the chordal distance from R·a to b. Since SU(2) is
/// connected, R·a lies in the same component as a.
pub fn aligned_distance(a: &Configuration, b: &Configuration) -> f64 {
    let r = kabsch(a, b);
    a.points
        .iter()
        .zip(&b.points)
        .map(|(p, q)| {
            (r * nalgebra::Vector3::new(p.x, p.y, p.z) - nalgebra::Vector3::new(q.x, q.y, q.z))
                .norm_squared()
        })
        .sum::<f64>()
        .sqrt()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All coordinates are ± one common point within `tol`.
fn all_parallel(g: &Configuration, tol: f64) -> bool {
    let a = g.points[0];
    g.points.iter().all(|p| p.chordal(&a) < tol || p.chordal(&a.neg()) < tol)
}

pub fn is_singular_config(g: &Configuration) -> bool {
    all_parallel(g, 1e-9)
}

/// Some axis a has every coordinate equal to ±a or orthogonal to a. Candidate
/// axes are the coordinates themselves and normals of pairs of them.
pub fn is_binary_dihedral(g: &Configuration, tol: f64) -> bool {
    let mut axes: Vec<AlgebraVector> = g.points.iter().map(|p| p.v()).collect();
    for (i, p) in g.points.iter().enumerate() {
        for q in &g.points[i + 1..] {
            let c = p.v().cross(&q.v());
            if c.norm() > 1e-3 {
                axes.push(c * (1.0 / c.norm()));
            }
        }
    }
    axes.iter().any(|a| {
        g.points.iter().all(|p| {
            let d = p.v().dot(a).abs();
            d < tol || (d - 1.0).abs() < tol
        })
    })
}

/// Dimension of the solution set near `rep`: random tangent kicks of size
/// `radius`, projected back by Newton, then PCA of the displacements.
pub fn estimate_dimension(
    w: &BraidWord,
    rep: &Configuration,
    samples: usize,
    radius: f64,
    threshold: f64,
    rng: &mut ChaCha8Rng,
) -> Option<usize> {
    let n = rep.len();
    let dim = 3 * n;
    let mut cloud: Vec<Vec<f64>> = Vec::with_capacity(samples + 1);
    cloud.push(rep.flat());
    let mut attempts = 0;
    while cloud.len() <= samples && attempts < 4 * samples {
        attempts += 1;
        let kick = DVector::from_fn(2 * n, |_, _| rng.gen_range(-1.0..1.0));
        let kick = &kick * (radius / kick.norm());
        let (g, r) = polish(w, retract(rep, &kick), 60);
        if r < 1e-26 && g.distance(rep) < 10.0 * radius {
            cloud.push(g.flat());
        }
    }
    if cloud.len() < 3 {
        return None;
    }
    let m = cloud.len();
    let mean: Vec<f64> =
        (0..dim).map(|k| cloud.iter().map(|c| c[k]).sum::<f64>() / m as f64).collect();
    let data = DMatrix::from_fn(m, dim, |i, k| cloud[i][k] - mean[k]);
    let sv = data.svd(false, false).singular_values;
    let smax = sv.max();
    if smax < 1e-3 * radius {
        return Some(0);
    }
    let ratios: Vec<f64> = sv.iter().map(|s| s / smax).collect();
    // A ratio within a factor of three of the threshold is ambiguous.
    if ratios.iter().any(|&r| r > threshold / 3.0 && r < threshold * 3.0) {
        return None;
    }
    Some(ratios.iter().filter(|&&r| r > threshold).count())
}

fn tag_for(dim: Option<usize>, abelian: bool) -> TopologyTag {
    match dim {
        Some(2) if abelian => TopologyTag::S2,
        Some(3) => TopologyTag::Rp3,
        Some(4) => TopologyTag::ProductRp3S1,
        _ => TopologyTag::Unknown,
    }
}

/// Union-find on conjugation-aligned distance, then per-cluster dimension and tags.
pub fn cluster(
    w: &BraidWord,
    points: &[Configuration],
    cfg: &SolverConfig,
) -> Result<Vec<ComponentReport>, VarietyError> {
    cfg.validate()?;
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let m = points.len();
    let mut uf = UnionFind((0..m).collect());
    let links: Vec<(usize, usize)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..m)
                .filter(move |&j| aligned_distance(&points[i], &points[j]) < cfg.link_radius)
                .map(move |j| (i, j))
        })
        .collect();
    for (i, j) in links {
        uf.union(i, j);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_index = std::collections::BTreeMap::new();
    for i in 0..m {
        let r = uf.find(i);
        let gi = *root_index.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[gi].push(i);
    }
    let mut reports: Vec<ComponentReport> = groups
        .par_iter()
        .enumerate()
        .map(|(id, members)| {
            let rep = points[members[0]].clone();
            let mut rng = seed_rng(cfg.rng_seed ^ 0x5eed, id as u64);
            let dim = estimate_dimension(
                w,
                &rep,
                cfg.samples_per_component,
                1e-4,
                cfg.pca_threshold,
                &mut rng,
            );
            let abelian = all_parallel(&rep, 1e-6);
            ComponentReport {
                id,
                sample_count: members.len(),
                est_dimension: dim.unwrap_or(0),
                topology_tag: tag_for(dim, abelian),
                is_binary_dihedral: is_binary_dihedral(&rep, 1e-6),
                is_abelian: abelian,
                representative: rep,
            }
        })
        .collect();
    reports.sort_by(|a, b| {
        a.est_dimension
            .cmp(&b.est_dimension)
            .then_with(|| lex_cmp(&a.representative, &b.representative))
    });
    for (i, r) in reports.iter_mut().enumerate() {
        r.id = i;
    }
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Ok,
    FullVariety,
    NoSolutions,
}

/// JSON document for one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarietyReport {
    pub schema_version: u32,
    pub braid: String,
    pub config: SolverConfig,
    pub status: RunStatus,
    pub solutions: usize,
    pub components: Vec<ComponentReport>,
    /// Every representative passed one more residual evaluation.
    pub representatives_verified: bool,
    /// Topology tags beyond the dimension are heuristics.
    pub tags_heuristic: bool,
}

impl VarietyReport {
    pub fn dimensions(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.components.iter().map(|c| c.est_dimension).collect();
        d.sort_unstable();
        d
    }
}

/// solve + cluster. The identity braid fixes everything, so it is reported
/// as the full variety without sampling.
pub fn analyze(w: &BraidWord, cfg: &SolverConfig) -> Result<VarietyReport, VarietyError> {
    cfg.validate()?;
    let base = |status, solutions, components| VarietyReport {
        schema_version: SCHEMA_VERSION,
        braid: w.to_string(),
        config: cfg.clone(),
        status,
        solutions,
        representatives_verified: true,
        components,
        tags_heuristic: true,
    };
    if w.is_identity() {
        return Ok(base(RunStatus::FullVariety, 0, Vec::new()));
    }
    let pts = solve(w, cfg)?;
    if pts.is_empty() {
        return Ok(base(RunStatus::NoSolutions, 0, Vec::new()));
    }
    let comps = cluster(w, &pts, cfg)?;
    let mut verified = true;
    for c in &comps {
        verified &= residual(w, &c.representative)? < cfg.descent_tol;
    }
    let mut report = base(RunStatus::Ok, pts.len(), comps);
    report.representatives_verified = verified;
    Ok(report)
}

impl TopologyTag {
    /// Total rank of rational cohomology; None for untagged components.
    pub fn rational_rank(&self) -> Option<u64> {
        match self {
            Self::S2 | Self::Rp3 => Some(2),
            Self::ProductRp3S1 => Some(4),
            Self::Unknown => None,
        }
    }
}

/// Σ of rational cohomology ranks over the components.
pub fn variety_rank(components: &[ComponentReport]) -> Option<u64> {
    components.iter().map(|c| c.topology_tag.rational_rank()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedComponent {
    pub tag: TopologyTag,
    pub dimension: usize,
    /// Angle between the two strand points; 0 and π for the spheres.
    pub angle: f64,
}

/// Components of the fixed-point set of σ₁ⁿ on (S²)²: the diagonal sphere,
/// the antidiagonal one for even n, and a copy of RP³ for every angle 2πj/n
/// with 0 < j < n/2.
pub fn torus_components(n: usize) -> Vec<PredictedComponent> {
    assert!(n >= 2, "torus_components needs n ≥ 2");
    let mut out = vec![PredictedComponent { tag: TopologyTag::S2, dimension: 2, angle: 0.0 }];
    if n.is_multiple_of(2) {
        out.push(PredictedComponent { tag: TopologyTag::S2, dimension: 2, angle: PI });
    }
    for j in 1..=(n - 1) / 2 {
        out.push(PredictedComponent {
            tag: TopologyTag::Rp3,
            dimension: 3,
            angle: 2.0 * PI * j as f64 / n as f64,
        });
    }
    out
}

/// The reflection a(b) = a⁻¹ b a of b through the axis a.
fn refl(a: &AlgebraVector, b: &AlgebraVector) -> AlgebraVector {
    *a * (2.0 * a.dot(b)) - *b
}

/// Squared residuals of the three crossing equations for 9_42 in terms of the
/// three arcs (a, b, c).
pub fn crossing_residuals_9_42(
    a: &AlgebraVector,
    b: &AlgebraVector,
    c: &AlgebraVector,
) -> [f64; 3] {
    let e1 = refl(c, &refl(b, &refl(a, b))) - refl(a, &refl(b, a));
    let e2 = refl(a, &refl(b, &refl(a, &refl(b, a)))) - refl(c, &refl(b, c));
    let e3 = refl(c, &refl(b, &refl(c, b))) - refl(a, &refl(b, &refl(a, &refl(b, &refl(a, c)))));
    [e1.norm(), e2.norm(), e3.norm()]
}

fn triple(a: &AlgebraVector, b: &AlgebraVector, c: &AlgebraVector) -> f64 {
    a.dot(&b.cross(c))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleCase {
    pub case: String,
    pub a: AlgebraVector,
    pub b: AlgebraVector,
    pub c: AlgebraVector,
    pub max_residual: f64,
    pub det: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleCaseReport {
    pub cases: Vec<AngleCase>,
    /// The two Case 2b solutions have triple products of opposite sign.
    pub case_2b_sign_separated: bool,
    pub pass: bool,
}

/// One explicit solution per case of the 9_42 analysis, checked against the
/// crossing equations.
pub fn angle_case_9_42() -> Result<AngleCaseReport, VarietyError> {
    const TOL: f64 = 1e-10;
    let a_of = |t: f64| AlgebraVector::new(t.cos(), t.sin(), 0.0);
    let mk = |case: &str, a: AlgebraVector, b: AlgebraVector, c: AlgebraVector| {
        let r = crossing_residuals_9_42(&a, &b, &c);
        let max_residual = r.iter().cloned().fold(0.0, f64::max);
        AngleCase {
            case: case.to_string(),
            a,
            b,
            c,
            max_residual,
            det: triple(&a, &b, &c),
            pass: max_residual < TOL,
        }
    };
    let i = AlgebraVector::I;
    let mut cases = vec![mk("1", i, i, i)];

    // Case 2b: b at angle π/5 on the great circle through i and j, c on the
    // plane spanned by k and A_{π/10} at the angle that makes a•c right.
    let b = a_of(PI / 5.0);
    let e1 = AlgebraVector::K;
    let e2 = a_of(PI / 10.0);
    let cos_psi = 0.5 / (PI / 10.0).cos();
    if cos_psi.abs() > 1.0 {
        return Err(VarietyError::Construction { case: "2b".into(), msg: "no real angle".into() });
    }
    let sin_psi = (1.0 - cos_psi * cos_psi).sqrt();
    let plus = mk("2b+", i, b, e2 * cos_psi + e1 * sin_psi);
    let minus = mk("2b-", i, b, e2 * cos_psi - e1 * sin_psi);
    let sep = plus.det * minus.det < 0.0 && plus.det.abs() > 1e-6;
    cases.push(plus);
    cases.push(minus);

    // Case 2c: all three on one great circle, c at ϑ = 2π/7 and b at 2ϑ.
    let th = 2.0 * PI / 7.0;
    cases.push(mk("2c", i, a_of(2.0 * th), a_of(th)));

    let pass = sep && cases.iter().all(|c| c.pass);
    Ok(AngleCaseReport { cases, case_2b_sign_separated: sep, pass })
}

/// Random point conjugated by a random rotation; used by invariance checks.
pub fn random_conjugate<R: Rng + ?Sized>(g: &Configuration, rng: &mut R) -> Configuration {
    g.conjugated(&UnitQuaternion::random(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn w(s: &str) -> BraidWord {
        parse_braid(s).unwrap()
    }

    #[test]
    fn residual_examples() {
        let g = Configuration::new(vec![SpherePoint::J, SpherePoint::a_theta(0.7)]);
        assert_eq!(residual(&w("2:"), &g).unwrap(), 0.0);
        let tre = w("2: 1 1 1");
        let sol = Configuration::new(vec![SpherePoint::J, SpherePoint::a_theta(2.0 * PI / 3.0)]);
        assert!(residual(&tre, &sol).unwrap() < 1e-28);
        let not = Configuration::new(vec![SpherePoint::J, SpherePoint::a_theta(PI / 2.0)]);
        assert!(residual(&tre, &not).unwrap() > 0.1);
        assert!(residual(&tre, &Configuration::new(vec![SpherePoint::J])).is_err());
    }

    #[test]
    fn singular_and_dihedral() {
        let a = SpherePoint::a_theta(0.3);
        let g = Configuration::new(vec![a, a.neg(), a, a.neg()]);
        assert!(is_singular_config(&g));
        let h = Configuration::new(vec![SpherePoint::J, SpherePoint::new(0.0, 1.0, 0.0)]);
        assert!(!is_singular_config(&h));
        assert!(is_binary_dihedral(&h, 1e-9));
    }

    #[test]
    fn torus_predictions() {
        let c = |n| torus_components(n).len();
        assert_eq!((c(3), c(4), c(7)), (2, 3, 4));
        assert_eq!(torus_components(4).iter().filter(|p| p.tag == TopologyTag::S2).count(), 2);
    }

    #[test]
    fn trefoil_two_components() {
        let cfg = SolverConfig { seeds: 60, ..Default::default() };
        let r = analyze(&w("2: 1 1 1"), &cfg).unwrap();
        assert_eq!(r.status, RunStatus::Ok);
        let tags: Vec<_> = r.components.iter().map(|c| (c.est_dimension, c.topology_tag)).collect();
        assert_eq!(r.components.len(), 2, "{tags:?}");
        assert_eq!(r.dimensions(), vec![2, 3]);
    }

    #[test]
    fn identity_is_full_variety() {
        let r = analyze(&w("3:"), &SolverConfig::default()).unwrap();
        assert_eq!(r.status, RunStatus::FullVariety);
        let pts = solve(&w("1:"), &SolverConfig { seeds: 20, ..Default::default() }).unwrap();
        assert_eq!(pts.len(), 20);
    }

    #[test]
    fn angle_cases() {
        let r = angle_case_9_42().unwrap();
        for c in &r.cases {
            assert!(c.pass, "{c:?}");
        }
        assert!(r.case_2b_sign_separated);
    }
}
