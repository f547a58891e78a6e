//! Determinant of the four-section frame along the boundary contour of the
//! pillow-case square, its winding number, and the first Chern number of the
//! f_n sphere.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

pub const DEFAULT_SAMPLES: usize = 256;
const MODULUS_FLOOR: f64 = 16.0;

#[derive(Debug, Error)]
pub enum ChernError {
    #[error("need at least 64 samples per segment, got {0}")]
    TooFewSamples(usize),
    #[error("parameter {param} outside the range of segment {segment:?}")]
    OutOfRange { segment: ContourSegment, param: f64 },
    #[error("|D| = {modulus} dropped below {MODULUS_FLOOR} on {segment:?} at {param}")]
    ModulusDip { segment: ContourSegment, param: f64, modulus: f64 },
    #[error("argument jumped by {step} on {segment:?}; sampling too coarse")]
    StepTooLarge { segment: ContourSegment, step: f64 },
}

/// Pieces of the boundary contour. Names follow the three edges τ1, τ3 split
/// at the corners, and the two vertical edges τ2, τ4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContourSegment {
    Tau1a,
    Tau1b,
    Tau1c,
    Tau2,
    Tau3a,
    Tau3b,
    Tau3c,
    Tau4,
}

impl ContourSegment {
    pub const ALL: [ContourSegment; 8] = [
        Self::Tau1a,
        Self::Tau1b,
        Self::Tau1c,
        Self::Tau2,
        Self::Tau3a,
        Self::Tau3b,
        Self::Tau3c,
        Self::Tau4,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Tau1a => "tau1'",
            Self::Tau1b => "tau1''",
            Self::Tau1c => "tau1'''",
            Self::Tau2 => "tau2",
            Self::Tau3a => "tau3'",
            Self::Tau3b => "tau3''",
            Self::Tau3c => "tau3'''",
            Self::Tau4 => "tau4",
        }
    }

    /// Parameter interval (t for τ1, τ3; θ₁ for τ2, τ4).
    pub fn range(&self) -> (f64, f64) {
        match self {
            Self::Tau1a => (0.0, PI),
            Self::Tau1b => (PI, 1.5 * PI),
            Self::Tau1c => (1.5 * PI, 2.0 * PI),
            Self::Tau2 | Self::Tau4 => (0.0, PI),
            Self::Tau3a => (FRAC_PI_2, PI),
            Self::Tau3b => (PI, 2.0 * PI),
            Self::Tau3c => (0.0, FRAC_PI_2),
        }
    }

    /// Closed form of the determinant on this segment.
    pub fn expected_d(&self, s: f64) -> Complex64 {
        let e = Complex64::from_polar(32.0, -s);
        match self {
            Self::Tau1a => Complex64::new(32.0, 0.0),
            Self::Tau1b => -e,
            Self::Tau1c => e,
            Self::Tau2 => Complex64::new(0.0, -32.0),
            Self::Tau4 => Complex64::new(0.0, 32.0),
            Self::Tau3a => e,
            Self::Tau3c => -e,
            Self::Tau3b => Complex64::new(-32.0, 0.0),
        }
    }
}

/// The contour in traversal order: (segment, start, end).
pub fn contour() -> Vec<(ContourSegment, f64, f64)> {
    use ContourSegment::*;
    vec![
        (Tau1a, 0.0, PI),
        (Tau1b, PI, 1.5 * PI),
        (Tau2, 0.0, PI),
        (Tau3a, FRAC_PI_2, PI),
        (Tau3b, PI, 2.0 * PI),
        (Tau3c, 0.0, FRAC_PI_2),
        (Tau4, PI, 0.0),
        (Tau1c, 1.5 * PI, 2.0 * PI),
    ]
}

/// Coordinates of Ỹ₁′, Ỹ₂, Ỹ₃, Ỹ₄ in the complex basis w₁…w₄, one per row.
pub type SectionFrame = [[Complex64; 4]; 4];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn scale(v: [Complex64; 4], s: Complex64) -> [Complex64; 4] {
    v.map(|x| x * s)
}

fn add(a: [Complex64; 4], b: [Complex64; 4]) -> [Complex64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn section_values(seg: ContourSegment, s: f64) -> Result<SectionFrame, ChernError> {
    use ContourSegment::*;
    let (lo, hi) = seg.range();
    if !(lo - 1e-12..=hi + 1e-12).contains(&s) {
        return Err(ChernError::OutOfRange { segment: seg, param: s });
    }
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let two_1i = c(2.0, 2.0);
    let u13 = [one, z, i, z]; // w₁ + 𝒥w₃
    let u24 = [z, one, z, i]; // w₂ + 𝒥w₄
    let e2 = [z, one, z, z];
    let (sn, cs) = s.sin_cos();
    let y2 = scale([one, z, one, z], two_1i);
    let y3 = |a: f64| scale([z, c(a, 0.0), z, one], two_1i);
    let frame = match seg {
        Tau1a => [
            add(scale(u13, c(-2.0 * sn, 0.0)), scale(u24, c(2.0 * cs, 0.0))),
            y2,
            y3(1.0),
            add(scale(u13, c(-cs, 0.0)), scale(u24, c(-sn, 0.0))),
        ],
        Tau1b | Tau1c => [
            add(scale(e2, two_1i * (-sn)), scale(u24, c(2.0 * cs, 0.0))),
            y2,
            y3(1.0),
            if seg == Tau1b { u13 } else { scale(u13, -one) },
        ],
        Tau2 | Tau4 => {
            [scale(e2, two_1i), y2, y3(cs), if seg == Tau2 { u13 } else { scale(u13, -one) }]
        }
        Tau3a | Tau3c => [
            add(scale(e2, two_1i * sn), scale([z, -one, z, i], c(2.0 * cs, 0.0))),
            y2,
            y3(-1.0),
            if seg == Tau3a { u13 } else { scale(u13, -one) },
        ],
        Tau3b => [
            add(scale(u13, c(-2.0 * sn, 0.0)), scale([z, -one, z, i], c(2.0 * cs, 0.0))),
            y2,
            y3(-1.0),
            add(scale(u13, c(-cs, 0.0)), scale([z, one, z, -i], c(sn, 0.0))),
        ],
    };
    Ok(frame)
}

pub fn determinant_d(seg: ContourSegment, s: f64) -> Result<Complex64, ChernError> {
    let f = section_values(seg, s)?;
    Ok(Matrix4::from_fn(|r, col| f[r][col]).determinant())
}

fn samples_on(start: f64, end: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..=count).map(move |k| start + (end - start) * k as f64 / count as f64)
}

/// Winding number of 𝒟 about 0 along the contour; `mirrored` runs it backwards.
pub fn winding_number(samples: usize, mirrored: bool) -> Result<i64, ChernError> {
    Ok(trace_contour(samples, mirrored, 1.0)?.winding)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourTrace {
    pub winding: i64,
    pub total_argument: f64,
    pub max_modulus_error: f64,
    pub max_closed_form_error: f64,
    pub max_junction_gap: f64,
}

fn trace_contour(samples: usize, mirrored: bool, sign: f64) -> Result<ContourTrace, ChernError> {
    if samples < 64 {
        return Err(ChernError::TooFewSamples(samples));
    }
    let mut path = contour();
    if mirrored {
        path.reverse();
        for p in &mut path {
            std::mem::swap(&mut p.1, &mut p.2);
        }
    }
    let mut total = 0.0;
    let mut modulus_err: f64 = 0.0;
    let mut closed_err: f64 = 0.0;
    let mut junction: f64 = 0.0;
    let mut prev_end: Option<Complex64> = None;
    let mut first: Option<Complex64> = None;
    for &(seg, a, b) in &path {
        let mut prev: Option<Complex64> = None;
        for s in samples_on(a, b, samples) {
            let d = determinant_d(seg, s)? * sign;
            let m = d.norm();
            if m < MODULUS_FLOOR {
                return Err(ChernError::ModulusDip { segment: seg, param: s, modulus: m });
            }
            modulus_err = modulus_err.max((m - 32.0).abs());
            closed_err = closed_err.max((d - seg.expected_d(s) * sign).norm());
            match prev {
                None => {
                    if let Some(e) = prev_end {
                        junction = junction.max((d - e).norm());
                    }
                    first.get_or_insert(d);
                }
                Some(p) => {
                    let step = (d / p).arg();
                    if step.abs() >= FRAC_PI_2 {
                        return Err(ChernError::StepTooLarge { segment: seg, step });
                    }
                    total += step;
                }
            }
            prev = Some(d);
        }
        prev_end = prev;
    }
    if let (Some(f), Some(e)) = (first, prev_end) {
        junction = junction.max((f - e).norm());
        total += (f / e).arg();
    }
    Ok(ContourTrace {
        winding: (total / (2.0 * PI)).round() as i64,
        total_argument: total,
        max_modulus_error: modulus_err,
        max_closed_form_error: closed_err,
        max_junction_gap: junction,
    })
}

/// Sum of the windings of 𝒟 around 𝒦 and of 𝒟′ = −𝒟 around 𝒦′.
pub fn chern_pairing(samples: usize) -> Result<i64, ChernError> {
    Ok(trace_contour(samples, false, 1.0)?.winding + trace_contour(samples, false, -1.0)?.winding)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernReport {
    pub samples_per_segment: usize,
    pub per_segment_modulus_ok: bool,
    pub junction_ok: bool,
    pub closed_form_ok: bool,
    pub winding_k: i64,
    pub winding_kprime: i64,
    pub winding_mirrored: i64,
    pub pairing: i64,
    pub max_modulus_error: f64,
    pub max_junction_gap: f64,
    pub pass: bool,
}

pub fn chern_report(samples: usize) -> Result<ChernReport, ChernError> {
    let k = trace_contour(samples, false, 1.0)?;
    let kp = trace_contour(samples, false, -1.0)?;
    let mirrored = trace_contour(samples, true, 1.0)?;
    let modulus_ok = k.max_modulus_error < 1e-9 && kp.max_modulus_error < 1e-9;
    let junction_ok = k.max_junction_gap < 1e-9 && kp.max_junction_gap < 1e-9;
    let closed_form_ok = k.max_closed_form_error < 1e-10;
    let pairing = k.winding + kp.winding;
    Ok(ChernReport {
        samples_per_segment: samples,
        per_segment_modulus_ok: modulus_ok,
        junction_ok,
        closed_form_ok,
        winding_k: k.winding,
        winding_kprime: kp.winding,
        winding_mirrored: mirrored.winding,
        pairing,
        max_modulus_error: k.max_modulus_error.max(kp.max_modulus_error),
        max_junction_gap: k.max_junction_gap.max(kp.max_junction_gap),
        pass: modulus_ok
            && junction_ok
            && closed_form_ok
            && k.winding == -1
            && kp.winding == -1
            && mirrored.winding == 1
            && pairing == -2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        use ContourSegment::*;
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-10;
        assert!(close(determinant_d(Tau1a, FRAC_PI_2).unwrap(), c(32.0, 0.0)));
        assert!(close(determinant_d(Tau2, 1.0).unwrap(), c(0.0, -32.0)));
        assert!(close(determinant_d(Tau3b, 1.5 * PI).unwrap(), c(-32.0, 0.0)));
        for seg in ContourSegment::ALL {
            let (a, b) = seg.range();
            for s in samples_on(a, b, 17) {
                assert!(close(determinant_d(seg, s).unwrap(), seg.expected_d(s)), "{seg:?} {s}");
            }
        }
    }

    #[test]
    fn section_examples() {
        let f = section_values(ContourSegment::Tau2, 0.4).unwrap();
        assert_eq!(f[0], [c(0., 0.), c(2., 2.), c(0., 0.), c(0., 0.)]);
        let f = section_values(ContourSegment::Tau1a, 0.0).unwrap();
        assert_eq!(f[3], [c(-1., 0.), c(0., 0.), c(0., -1.), c(0., 0.)]);
        let f = section_values(ContourSegment::Tau4, 2.0).unwrap();
        assert_eq!(f[3], [c(-1., 0.), c(0., 0.), c(0., -1.), c(0., 0.)]);
        assert!(section_values(ContourSegment::Tau3a, 0.1).is_err());
    }

    #[test]
    fn winding_and_pairing() {
        assert_eq!(winding_number(64, false).unwrap(), -1);
        assert_eq!(winding_number(512, false).unwrap(), -1);
        assert_eq!(winding_number(64, true).unwrap(), 1);
        assert_eq!(chern_pairing(DEFAULT_SAMPLES).unwrap(), -2);
        assert!(matches!(winding_number(10, false), Err(ChernError::TooFewSamples(10))));
        let r = chern_report(DEFAULT_SAMPLES).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
