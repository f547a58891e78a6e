//! Braid words and their action on tuples of points of C.
//!
//! The generator σ_k sends (…, g_k, g_{k+1}, …) to (…, g_k g_{k+1} g_k⁻¹, g_k, …)
//! and σ_k⁻¹ sends it to (…, g_{k+1}, g_{k+1}⁻¹ g_k g_{k+1}, …). A word acts as a
//! left action: the rightmost letter is applied first.
//!
//! The crossing rule σ(a, b) = (b, b a b⁻¹) sometimes used to colour diagrams is
//! the action of σ⁻¹ in this convention. Both give the same fixed-point sets.

use crate::su2::{ad, ad_inv, conjugate_by, mul, AlgebraVector, SpherePoint, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Tolerance for the tangency check on frame construction.
pub const TANGENCY_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum BraidError {
    #[error("malformed braid word {0:?}: expected \"<strands>: <signed letters>\"")]
    Malformed(String),
    #[error("generator {letter} out of range for {strands} strands")]
    IndexOutOfRange { letter: i32, strands: usize },
    #[error("braid has {strands} strands but configuration has {len} points")]
    LengthMismatch { strands: usize, len: usize },
    #[error("slot {slot} vector is not tangent to C (deviation {deviation:e})")]
    NotTangent { slot: usize, deviation: f64 },
    #[error("frames live over different base points")]
    BaseMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Malformed("zero strands".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::IndexOutOfRange { letter: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// The product self·other (other acts first).
    pub fn concat(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { strands: self.strands, letters }
    }

    /// Permutation of strand positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            p.swap(k, k + 1);
        }
        p
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let p = self.permutation();
        let mut seen = vec![false; p.len()];
        let mut cycles = 0;
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, BraidError> {
        parse_braid(s)
    }
}

/// Parses "n: k1 k2 …" with signed generator indices.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let bad = || BraidError::Malformed(text.to_string());
    let (head, tail) = text.split_once(':').ok_or_else(bad)?;
    let strands: usize = head.trim().parse().map_err(|_| bad())?;
    let letters = tail
        .split_whitespace()
        .map(|t| t.parse::<i32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    BraidWord::new(strands, letters)
}

/// Ordered tuple of points of C.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub points: Vec<SpherePoint>,
}

impl Configuration {
    pub fn new(points: Vec<SpherePoint>) -> Self {
        assert!(!points.is_empty(), "configuration needs at least one point");
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::new((0..n).map(|_| SpherePoint::random(rng)).collect())
    }

    /// Chordal distance in (R³)ⁿ.
    pub fn distance(&self, o: &Configuration) -> f64 {
        self.points
            .iter()
            .zip(&o.points)
            .map(|(a, b)| {
                let d = a.chordal(b);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Flat coordinates (x₁, y₁, z₁, x₂, …).
    pub fn flat(&self) -> Vec<f64> {
        self.points.iter().flat_map(|p| [p.x, p.y, p.z]).collect()
    }

    /// Diagonal conjugation h g h⁻¹.
    pub fn conjugated(&self, h: &UnitQuaternion) -> Configuration {
        Configuration::new(self.points.iter().map(|p| conjugate_by(h, p)).collect())
    }
}

/// Product r(g) = g₁ g₂ ⋯ g_m.
pub fn product_r(g: &Configuration) -> UnitQuaternion {
    g.points.iter().fold(UnitQuaternion::ONE, |acc, p| mul(&acc, &p.q()))
}

/// Tangent vector ⊕ X_j·g_j at a configuration, stored by left coefficients X_j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentFrame {
    pub base: Configuration,
    pub vectors: Vec<AlgebraVector>,
}

impl TangentFrame {
    /// Checks lengths and that each X_j·g_j is tangent to C (X_j ⊥ g_j).
    pub fn new(base: Configuration, vectors: Vec<AlgebraVector>) -> Result<Self, BraidError> {
        if base.len() != vectors.len() {
            return Err(BraidError::LengthMismatch { strands: base.len(), len: vectors.len() });
        }
        for (slot, (p, x)) in base.points.iter().zip(&vectors).enumerate() {
            let scale = 1.0f64.max(x.norm());
            let deviation = x.dot(&p.v()).abs() / scale;
            if deviation > TANGENCY_TOL {
                return Err(BraidError::NotTangent { slot, deviation });
            }
        }
        Ok(Self { base, vectors })
    }

    pub fn zero(base: Configuration) -> Self {
        let n = base.len();
        Self { base, vectors: vec![AlgebraVector::ZERO; n] }
    }

    pub fn random<R: Rng + ?Sized>(base: &Configuration, rng: &mut R) -> Self {
        let vectors = base.points.iter().map(|p| p.random_tangent(rng)).collect();
        Self { base: base.clone(), vectors }
    }

    /// Moves the base along the frame: p_j ↦ exp(s X_j) p_j, staying on C.
    pub fn flow(&self, s: f64) -> Configuration {
        let pts = self
            .base
            .points
            .iter()
            .zip(&self.vectors)
            .map(|(p, x)| {
                let n = x.norm();
                if n == 0.0 {
                    *p
                } else {
                    // For X ⊥ p, exp(sX) p is p rotated through s|X| about X.
                    let h = UnitQuaternion::from_axis_angle(x, s * n);
                    conjugate_by(&h, p)
                }
            })
            .collect();
        Configuration::new(pts)
    }
}

fn check_len(w: &BraidWord, n: usize) -> Result<(), BraidError> {
    if w.strands != n {
        return Err(BraidError::LengthMismatch { strands: w.strands, len: n });
    }
    Ok(())
}

/// Applies a single signed generator in place.
pub fn apply_generator(letter: i32, pts: &mut [SpherePoint]) {
    let k = letter.unsigned_abs() as usize - 1;
    let (a, b) = (pts[k], pts[k + 1]);
    if letter > 0 {
        pts[k] = conjugate_by(&a.q(), &b);
        pts[k + 1] = a;
    } else {
        pts[k] = b;
        pts[k + 1] = conjugate_by(&b.q().inverse(), &a);
    }
}

/// The braid action on configurations.
pub fn act(w: &BraidWord, g: &Configuration) -> Result<Configuration, BraidError> {
    check_len(w, g.len())?;
    let mut pts = g.points.clone();
    for &l in w.letters.iter().rev() {
        apply_generator(l, &mut pts);
    }
    Ok(Configuration { points: pts })
}

/// Applies the differential of one generator in place.
pub fn apply_generator_differential(
    letter: i32,
    pts: &mut [SpherePoint],
    xs: &mut [AlgebraVector],
) {
    let k = letter.unsigned_abs() as usize - 1;
    let (a, b) = (pts[k].q(), pts[k + 1].q());
    let (xa, xb) = (xs[k], xs[k + 1]);
    if letter > 0 {
        let h = conjugate_by(&a, &pts[k + 1]);
        xs[k] = xa + ad(&a, &xb) - ad(&h.q(), &xa);
        xs[k + 1] = xa;
        pts[k + 1] = pts[k];
        pts[k] = h;
    } else {
        let h = conjugate_by(&b.inverse(), &pts[k]);
        xs[k] = xb;
        let yb = ad_inv(&b, &xb);
        xs[k + 1] = ad_inv(&b, &xa) - yb + ad(&h.q(), &yb);
        pts[k] = pts[k + 1];
        pts[k + 1] = h;
    }
}

/// Push-forward of a tangent frame through the action of `w`.
pub fn differential(w: &BraidWord, t: &TangentFrame) -> Result<TangentFrame, BraidError> {
    check_len(w, t.base.len())?;
    let mut pts = t.base.points.clone();
    let mut xs = t.vectors.clone();
    for &l in w.letters.iter().rev() {
        apply_generator_differential(l, &mut pts, &mut xs);
    }
    Ok(TangentFrame { base: Configuration { points: pts }, vectors: xs })
}

/// Maximal deviations observed while checking the braid group relations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationReport {
    pub strands: usize,
    pub trials: usize,
    pub far_commutation: f64,
    pub yang_baxter: f64,
    pub inverse: f64,
}

impl RelationReport {
    pub fn max_deviation(&self) -> f64 {
        self.far_commutation.max(self.yang_baxter).max(self.inverse)
    }
}

/// Evaluates both sides of the braid relations on random configurations.
pub fn check_braid_relations(n: usize, trials: usize, rng_seed: u64) -> RelationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut rep =
        RelationReport { strands: n, trials, far_commutation: 0.0, yang_baxter: 0.0, inverse: 0.0 };
    let w = |l: Vec<i32>| BraidWord::new(n, l).expect("valid generators");
    let dev = |u: &BraidWord, v: &BraidWord, g: &Configuration| {
        act(u, g).unwrap().distance(&act(v, g).unwrap())
    };
    for _ in 0..trials {
        let g = Configuration::random(n, &mut rng);
        for k in 1..n as i32 {
            let e = BraidWord::identity(n);
            rep.inverse = rep.inverse.max(dev(&w(vec![k, -k]), &e, &g));
            rep.inverse = rep.inverse.max(dev(&w(vec![-k, k]), &e, &g));
            if k + 1 < n as i32 {
                rep.yang_baxter =
                    rep.yang_baxter.max(dev(&w(vec![k, k + 1, k]), &w(vec![k + 1, k, k + 1]), &g));
            }
            for j in (k + 2)..n as i32 {
                rep.far_commutation =
                    rep.far_commutation.max(dev(&w(vec![k, j]), &w(vec![j, k]), &g));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(x, y, z)
    }

    #[test]
    fn parse_examples() {
        let t = parse_braid("2: 1 1 1").unwrap();
        assert_eq!((t.strands(), t.letters()), (2, &[1, 1, 1][..]));
        let f = parse_braid("3: 1 -2 1 -2").unwrap();
        assert_eq!(f.letters(), &[1, -2, 1, -2]);
        assert!(parse_braid("2:").unwrap().is_identity());
        assert_eq!(
            parse_braid("2: 1 2"),
            Err(BraidError::IndexOutOfRange { letter: 2, strands: 2 })
        );
        assert!(matches!(parse_braid("x: 1"), Err(BraidError::Malformed(_))));
        assert!(matches!(parse_braid("3 1 2"), Err(BraidError::Malformed(_))));
        assert_eq!(f.to_string().parse::<BraidWord>().unwrap(), f);
    }

    #[test]
    fn generator_example() {
        let g = Configuration::new(vec![sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0)]);
        let out = act(&parse_braid("2: 1").unwrap(), &g).unwrap();
        assert!(
            out.distance(&Configuration::new(vec![sp(0.0, -1.0, 0.0), sp(1.0, 0.0, 0.0)])) < 1e-15
        );
        let id = act(&BraidWord::identity(2), &g).unwrap();
        assert_eq!(id, g);
        assert!(act(&parse_braid("3: 1").unwrap(), &g).is_err());
    }

    #[test]
    fn torus_fixed_points_follow_angle_rule() {
        for n in 2..8 {
            let w = BraidWord::new(2, vec![1; n]).unwrap();
            for j in 0..n {
                let alpha = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                let g = Configuration::new(vec![
                    SpherePoint::a_theta(alpha),
                    SpherePoint::a_theta(0.0),
                ]);
                assert!(act(&w, &g).unwrap().distance(&g) < 1e-12);
            }
            let off = 2.0 * std::f64::consts::PI / n as f64 + 0.3;
            let g = Configuration::new(vec![SpherePoint::a_theta(off), SpherePoint::a_theta(0.0)]);
            assert!(act(&w, &g).unwrap().distance(&g) > 1e-3);
        }
    }

    #[test]
    fn product_examples() {
        let i = sp(1.0, 0.0, 0.0);
        let r = product_r(&Configuration::new(vec![i, i.neg()]));
        assert!(r.distance(&UnitQuaternion::ONE) < 1e-15);
        let r = product_r(&Configuration::new(vec![i, i]));
        assert!(r.distance(&UnitQuaternion::ONE.neg()) < 1e-15);
    }

    #[test]
    fn closure_components_examples() {
        assert_eq!(parse_braid("2: 1 1 1").unwrap().closure_components(), 1);
        assert_eq!(parse_braid("2: 1 1").unwrap().closure_components(), 2);
        assert_eq!(parse_braid("3: 1 -2 1 -2").unwrap().closure_components(), 1);
        assert_eq!(parse_braid("3:").unwrap().closure_components(), 3);
    }

    #[test]
    fn relations_hold() {
        let rep = check_braid_relations(4, 200, 7);
        assert!(rep.yang_baxter < 1e-10, "{rep:?}");
        assert!(rep.far_commutation < 1e-12, "{rep:?}");
        assert!(rep.inverse < 1e-12, "{rep:?}");
    }

    #[test]
    fn frame_rejects_normal_vectors() {
        let g = Configuration::new(vec![sp(1.0, 0.0, 0.0)]);
        assert!(TangentFrame::new(g.clone(), vec![AlgebraVector::J]).is_ok());
        assert!(matches!(
            TangentFrame::new(g.clone(), vec![AlgebraVector::I]),
            Err(BraidError::NotTangent { slot: 0, .. })
        ));
        assert!(TangentFrame::new(g, vec![]).is_err());
    }

    #[test]
    fn differential_of_identity_and_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = Configuration::random(3, &mut rng);
        let t = TangentFrame::random(&g, &mut rng);
        assert_eq!(differential(&BraidWord::identity(3), &t).unwrap(), t);
        let w = parse_braid("3: 1 -2 1").unwrap();
        let z = differential(&w, &TangentFrame::zero(g.clone())).unwrap();
        assert!(z.vectors.iter().all(|v| v.norm() == 0.0));
        assert_eq!(z.base, act(&w, &g).unwrap());
    }

    #[test]
    fn differential_output_is_tangent() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let w = parse_braid("4: 1 -2 3 2 -1 -3 2").unwrap();
        for _ in 0..50 {
            let g = Configuration::random(4, &mut rng);
            let t = TangentFrame::random(&g, &mut rng);
            let d = differential(&w, &t).unwrap();
            assert!(TangentFrame::new(d.base.clone(), d.vectors.clone()).is_ok());
        }
    }
}
