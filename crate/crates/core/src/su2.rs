//! Unit quaternions as SU(2), the trace-free class C ≅ S², and su(2).
//!
//! Matrix correspondence used everywhere in this crate:
//!
//! ```text
//! w + x i + y j + z k  <->  [[ w + x i,  y + z i],
//!                            [-y + z i,  w - x i]]
//! ```
//!
//! so the diagonal matrix J = diag(i, -i) is the quaternion `i`,
//! [[0, 1], [-1, 0]] is `j` and [[0, i], [i, 0]] is `k`. Trace-free elements
//! are the pure quaternions; the unit ones form the sphere C and square to -1.
//! The inner product X•Y = -½ Tr(XY) on su(2) is the Euclidean dot product of
//! pure quaternions.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Drift allowed in a product of unit quaternions before renormalization.
const DRIFT_LIMIT: f64 = 1e-9;

/// Element of the Lie algebra su(2), written as a pure quaternion.
/// Also doubles as a plain vector of R³.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AlgebraVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AlgebraVector {
    pub const ZERO: AlgebraVector = AlgebraVector { x: 0.0, y: 0.0, z: 0.0 };
    pub const I: AlgebraVector = AlgebraVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const J: AlgebraVector = AlgebraVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const K: AlgebraVector = AlgebraVector { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, o: &AlgebraVector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &AlgebraVector) -> AlgebraVector {
        AlgebraVector::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Uniform random vector in the cube [-1, 1]³.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    /// Component orthogonal to the unit vector `p`.
    pub fn reject(&self, p: &AlgebraVector) -> AlgebraVector {
        *self - *p * self.dot(p)
    }
}

impl Add for AlgebraVector {
    type Output = AlgebraVector;
    fn add(self, o: AlgebraVector) -> AlgebraVector {
        AlgebraVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for AlgebraVector {
    fn add_assign(&mut self, o: AlgebraVector) {
        *self = *self + o;
    }
}

impl Sub for AlgebraVector {
    type Output = AlgebraVector;
    fn sub(self, o: AlgebraVector) -> AlgebraVector {
        AlgebraVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for AlgebraVector {
    type Output = AlgebraVector;
    fn neg(self) -> AlgebraVector {
        AlgebraVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for AlgebraVector {
    type Output = AlgebraVector;
    fn mul(self, s: f64) -> AlgebraVector {
        AlgebraVector::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Inner product X•Y = -½ Tr(XY).
pub fn inner(x: &AlgebraVector, y: &AlgebraVector) -> f64 {
    x.dot(y)
}

/// Element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Builds and normalizes. Panics on a zero quaternion.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        assert!(n > 0.0 && n.is_finite(), "cannot normalize quaternion");
        Self { w: w / n, x: x / n, y: y / n, z: z / n }
    }

    pub fn vector(&self) -> AlgebraVector {
        AlgebraVector::new(self.x, self.y, self.z)
    }

    pub fn neg(&self) -> Self {
        Self { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn inverse(&self) -> Self {
        Self { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// exp(angle/2 · u) for a unit axis u: rotation by `angle` about u under Ad.
    pub fn from_axis_angle(axis: &AlgebraVector, angle: f64) -> Self {
        let u = *axis * (1.0 / axis.norm());
        let (s, c) = (angle / 2.0).sin_cos();
        Self::new(c, u.x * s, u.y * s, u.z * s)
    }

    /// Haar-random element.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n2: f64 = q.iter().map(|v| v * v).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                return Self::new(q[0], q[1], q[2], q[3]);
            }
        }
    }

    pub fn distance(&self, o: &UnitQuaternion) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// The 2×2 complex matrix as [[re, im]; 4] in row-major order.
    pub fn to_matrix(&self) -> [[f64; 2]; 4] {
        [[self.w, self.x], [self.y, self.z], [-self.y, self.z], [self.w, -self.x]]
    }
}

fn raw_mul(a: &UnitQuaternion, b: &UnitQuaternion) -> [f64; 4] {
    [
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    ]
}

/// Group product, renormalized.
pub fn mul(a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
    let p = raw_mul(a, b);
    let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    debug_assert!((n - 1.0).abs() < DRIFT_LIMIT, "unit quaternion drifted by {}", (n - 1.0).abs());
    UnitQuaternion { w: p[0] / n, x: p[1] / n, y: p[2] / n, z: p[3] / n }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    fn mul(self, o: UnitQuaternion) -> UnitQuaternion {
        mul(&self, &o)
    }
}

/// Ad(g)X = g X g⁻¹, i.e. rotation of X by twice the half-angle of g.
pub fn ad(g: &UnitQuaternion, x: &AlgebraVector) -> AlgebraVector {
    let u = g.vector();
    let t = u.cross(x) * 2.0;
    *x + t * g.w + u.cross(&t)
}

/// Ad(g⁻¹)X.
pub fn ad_inv(g: &UnitQuaternion, x: &AlgebraVector) -> AlgebraVector {
    ad(&g.inverse(), x)
}

/// Trace-free unit element of SU(2): a point of C ≅ S².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    /// The base point J, i.e. the quaternion i.
    pub const J: SpherePoint = SpherePoint { x: 1.0, y: 0.0, z: 0.0 };

    /// Builds and normalizes. Panics on the zero vector.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        let n = (x * x + y * y + z * z).sqrt();
        assert!(n > 0.0 && n.is_finite(), "cannot normalize sphere point");
        Self { x: x / n, y: y / n, z: z / n }
    }

    pub fn from_vector(v: &AlgebraVector) -> Self {
        Self::new(v.x, v.y, v.z)
    }

    pub fn v(&self) -> AlgebraVector {
        AlgebraVector::new(self.x, self.y, self.z)
    }

    pub fn q(&self) -> UnitQuaternion {
        UnitQuaternion { w: 0.0, x: self.x, y: self.y, z: self.z }
    }

    pub fn neg(&self) -> Self {
        Self { x: -self.x, y: -self.y, z: -self.z }
    }

    /// Inverse in SU(2); for trace-free elements p⁻¹ = -p.
    pub fn inverse(&self) -> Self {
        self.neg()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let z: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * PI);
        let r = (1.0 - z * z).max(0.0).sqrt();
        Self::new(r * phi.cos(), r * phi.sin(), z)
    }

    /// A_θ = i cos θ + j sin θ, the matrix [[i cos θ, sin θ], [-sin θ, -i cos θ]].
    pub fn a_theta(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin(), 0.0)
    }

    pub fn dot(&self, o: &SpherePoint) -> f64 {
        self.v().dot(&o.v())
    }

    pub fn chordal(&self, o: &SpherePoint) -> f64 {
        (self.v() - o.v()).norm()
    }

    /// Random left coefficient X with X·p tangent to C at p (X ⊥ p).
    pub fn random_tangent<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraVector {
        AlgebraVector::random(rng).reject(&self.v())
    }

    /// Orthonormal basis of the left coefficients tangent at p.
    pub fn tangent_basis(&self) -> [AlgebraVector; 2] {
        let p = self.v();
        let seed = if p.x.abs() < 0.9 { AlgebraVector::I } else { AlgebraVector::J };
        let e1 = seed.reject(&p);
        let e1 = e1 * (1.0 / e1.norm());
        [e1, p.cross(&e1)]
    }
}

/// g A g⁻¹ for A in C; for g in C this is rotation by π about g.
pub fn conjugate_by(g: &UnitQuaternion, a: &SpherePoint) -> SpherePoint {
    SpherePoint::from_vector(&ad(g, &a.v()))
}

/// Right-translation coefficient of the tangent vector X·g: writing
/// X·g = g·Y gives Y = Ad(g⁻¹)X, the value of the left-invariant form.
pub fn left_form(g: &UnitQuaternion, x: &AlgebraVector) -> AlgebraVector {
    ad_inv(g, x)
}

/// Value of the right-invariant form on X·g, which is X itself.
pub fn right_form(_g: &UnitQuaternion, x: &AlgebraVector) -> AlgebraVector {
    *x
}

/// Left coefficient of the tangent vector g·Y.
pub fn from_left_form(g: &UnitQuaternion, y: &AlgebraVector) -> AlgebraVector {
    ad(g, y)
}

/// τ(p; X, Y) = ½ (X•Ad(p)Y - Y•Ad(p)X).
pub fn tau_form(p: &SpherePoint, x: &AlgebraVector, y: &AlgebraVector) -> f64 {
    let pq = p.q();
    0.5 * (inner(x, &ad(&pq, y)) - inner(y, &ad(&pq, x)))
}

/// R³ vector of the tangent vector X·p at a point of C (X ⊥ p gives X × p).
pub fn tangent_to_r3(p: &SpherePoint, x: &AlgebraVector) -> AlgebraVector {
    x.cross(&p.v())
}

/// Left coefficient X ⊥ p of the R³ tangent vector v at p.
pub fn r3_to_tangent(p: &SpherePoint, v: &AlgebraVector) -> AlgebraVector {
    p.v().cross(v)
}
