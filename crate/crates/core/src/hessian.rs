//! The integer Hessian at the singular stratum, its Pfaffian structure and
//! signature.

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HessianError {
    #[error("need n ≥ 2, got {0}")]
    TooSmall(usize),
    #[error("Pfaffian needs an even size, got {0}")]
    OddSize(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("n = {0} exceeds the exact-arithmetic guard")]
    Overflow(usize),
}

/// Largest n accepted by the exact determinant.
pub const MAX_EXACT_N: usize = 8;

/// Square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub size: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(size: usize) -> Self {
        Self { size, entries: vec![0; size * size] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.size + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        (0..self.size).all(|r| (0..self.size).all(|c| self.get(r, c) == -self.get(c, r)))
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size.max(1)).map(|r| r.to_vec()).collect()
    }

    fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.size, self.size, |r, c| self.get(r, c) as f64)
    }
}

/// Hessian at the singular point: (4n−4)-square, block tridiagonal with C on
/// the diagonal, A above and Aᵀ below.
pub type HessianMatrix = IntMatrix;

const C_BLOCK: [[i64; 4]; 4] = [[0, 0, 0, -2], [0, 0, 2, 0], [0, 2, 0, 0], [-2, 0, 0, 0]];
const A_BLOCK: [[i64; 4]; 4] = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 2, 0, -1], [-2, 0, 1, 0]];

pub fn build_hessian(n: usize) -> Result<HessianMatrix, HessianError> {
    if n < 2 {
        return Err(HessianError::TooSmall(n));
    }
    let blocks = n - 1;
    let mut h = IntMatrix::zeros(4 * blocks);
    for b in 0..blocks {
        for r in 0..4 {
            for c in 0..4 {
                h.set(4 * b + r, 4 * b + c, C_BLOCK[r][c]);
                if b + 1 < blocks {
                    h.set(4 * b + r, 4 * (b + 1) + c, A_BLOCK[r][c]);
                    h.set(4 * (b + 1) + c, 4 * b + r, A_BLOCK[r][c]);
                }
            }
        }
    }
    Ok(h)
}

/// The entrywise rule (1-based k ≤ l): −2 for k odd, l = k+3; 1 for k odd,
/// l = k+5; 2 for k even, l = k+1; −1 for k even, l = k+3. It differs from
/// the block form at block boundaries and is kept for comparison only.
pub fn build_hessian_entry_rule(n: usize) -> Result<HessianMatrix, HessianError> {
    if n < 2 {
        return Err(HessianError::TooSmall(n));
    }
    let size = 4 * n - 4;
    let mut h = IntMatrix::zeros(size);
    for k in 1..=size {
        let odd = k % 2 == 1;
        let rules: &[(usize, i64)] = if odd { &[(3, -2), (5, 1)] } else { &[(1, 2), (3, -1)] };
        for &(off, v) in rules {
            let l = k + off;
            if l <= size {
                h.set(k - 1, l - 1, v);
                h.set(l - 1, k - 1, v);
            }
        }
    }
    Ok(h)
}

/// The pair-swap permutation (12)(34)⋯ applied on both sides.
fn php(h: &IntMatrix) -> IntMatrix {
    let p = |i: usize| i ^ 1;
    let mut out = IntMatrix::zeros(h.size);
    for r in 0..h.size {
        for c in 0..h.size {
            out.set(r, c, h.get(p(r), p(c)));
        }
    }
    out
}

/// Exact check of PHP = −H.
pub fn check_php(h: &HessianMatrix) -> bool {
    let neg = IntMatrix { size: h.size, entries: h.entries.iter().map(|v| -v).collect() };
    php(h) == neg
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub near_zero: usize,
    pub signature: i64,
    pub min_abs_eigenvalue: f64,
}

pub fn signature(h: &HessianMatrix) -> Signature {
    let eig = h.to_f64().symmetric_eigenvalues();
    let positive = eig.iter().filter(|&&e| e > 1e-8).count();
    let negative = eig.iter().filter(|&&e| e < -1e-8).count();
    Signature {
        positive,
        negative,
        near_zero: eig.len() - positive - negative,
        signature: positive as i64 - negative as i64,
        min_abs_eigenvalue: eig.iter().map(|e| e.abs()).fold(f64::INFINITY, f64::min),
    }
}

/// H′(n): skew pentadiagonal of size 2n−2 with first band 2, −2, 2, … and
/// second band −1, 1, −1, ….
pub fn build_hprime(n: usize) -> Result<IntMatrix, HessianError> {
    if n < 2 {
        return Err(HessianError::TooSmall(n));
    }
    let size = 2 * n - 2;
    let mut m = IntMatrix::zeros(size);
    for i in 0..size {
        let even = i % 2 == 0;
        if i + 1 < size {
            let v = if even { 2 } else { -2 };
            m.set(i, i + 1, v);
            m.set(i + 1, i, -v);
        }
        if i + 2 < size {
            let v = if even { -1 } else { 1 };
            m.set(i, i + 2, v);
            m.set(i + 2, i, -v);
        }
    }
    Ok(m)
}

fn check_pf_input(m: &IntMatrix) -> Result<(), HessianError> {
    if m.size % 2 == 1 {
        return Err(HessianError::OddSize(m.size));
    }
    if !m.is_skew() {
        return Err(HessianError::NotSkew);
    }
    Ok(())
}

/// Pfaffian by expansion along the first row, memoized on the remaining
/// index set: Pf(A) = Σ_j (−1)^j a_{1j} Pf(A without rows/cols 1, j).
pub fn pfaffian_expansion(m: &IntMatrix) -> Result<i128, HessianError> {
    check_pf_input(m)?;
    assert!(m.size <= 64, "expansion limited to 64 indices");
    fn rec(m: &IntMatrix, mask: u64, memo: &mut HashMap<u64, i128>) -> i128 {
        if mask == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = 0i128;
        let mut sign = 1i128;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = m.get(first, j) as i128;
            if a != 0 {
                acc += sign * a * rec(m, rest & !(1u64 << j), memo);
            }
            sign = -sign;
        }
        memo.insert(mask, acc);
        acc
    }
    let full = if m.size == 64 { u64::MAX } else { (1u64 << m.size) - 1 };
    Ok(rec(m, full, &mut HashMap::new()))
}

/// Pfaffian by skew Gaussian elimination over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn pfaffian(m: &IntMatrix) -> Result<i128, HessianError> {
    check_pf_input(m)?;
    let n = m.size;
    let mut a: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|r| (0..n).map(|c| Ratio::from_integer(m.get(r, c) as i128)).collect())
        .collect();
    let zero = Ratio::from_integer(0);
    let mut pf = Ratio::from_integer(1);
    for k in (0..n).step_by(2) {
        // Bring a nonzero entry into position (k, k+1) by a symmetric swap.
        let Some(p) = (k + 1..n).find(|&j| a[k][j] != zero) else {
            return Ok(0);
        };
        if p != k + 1 {
            a.swap(k + 1, p);
            for row in a.iter_mut() {
                row.swap(k + 1, p);
            }
            pf = -pf;
        }
        let piv = a[k][k + 1];
        pf *= piv;
        // Clear the rest of rows/cols k and k+1 with congruence moves.
        for i in k + 2..n {
            let f = a[k][i] / piv;
            let g = a[k + 1][i] / piv;
            for j in k..n {
                let v = a[k + 1][j] * f - a[k][j] * g;
                a[i][j] -= v;
            }
            for j in k..n {
                let v = a[j][k + 1] * f - a[j][k] * g;
                a[j][i] -= v;
            }
        }
    }
    assert!(pf.is_integer(), "Pfaffian of an integer matrix is an integer");
    Ok(pf.to_integer())
}

/// Exact integer determinant by Bareiss elimination.
pub fn det_exact(m: &IntMatrix) -> i128 {
    let n = m.size;
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> =
        m.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Pf(H′(n)) for n = 2..=n_max from Pf(n+2) = 2 Pf(n+1) + Pf(n) seeded by 2, 5.
pub fn pfaffian_recurrence(n_max: usize) -> Vec<i128> {
    let mut v: Vec<i128> = vec![2, 5];
    while v.len() + 1 < n_max {
        let k = v.len();
        v.push(2 * v[k - 1] + v[k - 2]);
    }
    v.truncate(n_max.saturating_sub(1));
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetFactorization {
    pub n: usize,
    pub det_h: i128,
    pub pfaffian: i128,
    pub pf_fourth: i128,
    pub holds: bool,
}

/// det H = Pf(H′)⁴, exactly.
pub fn det_factorization(n: usize) -> Result<DetFactorization, HessianError> {
    if n > MAX_EXACT_N {
        return Err(HessianError::Overflow(n));
    }
    let det_h = det_exact(&build_hessian(n)?);
    let pf = pfaffian(&build_hprime(n)?)?;
    let pf_fourth = pf.pow(4);
    Ok(DetFactorization { n, det_h, pfaffian: pf, pf_fourth, holds: det_h == pf_fourth })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianReport {
    pub n: usize,
    pub size: usize,
    pub matrix: Vec<Vec<i64>>,
    pub symmetric: bool,
    pub php_is_minus_h: bool,
    pub signature: Signature,
    pub pfaffian_elimination: i128,
    pub pfaffian_expansion: i128,
    pub pfaffian_recurrence: i128,
    pub det: Option<DetFactorization>,
    pub pass: bool,
}

pub fn hessian_report(n: usize) -> Result<HessianReport, HessianError> {
    let h = build_hessian(n)?;
    let hp = build_hprime(n)?;
    let sig = signature(&h);
    let pe = pfaffian(&hp)?;
    let px = pfaffian_expansion(&hp)?;
    let pr = *pfaffian_recurrence(n).last().unwrap();
    let det = if n <= MAX_EXACT_N { Some(det_factorization(n)?) } else { None };
    let php_ok = check_php(&h);
    let pass = php_ok
        && h.is_symmetric()
        && sig.signature == 0
        && sig.near_zero == 0
        && sig.min_abs_eigenvalue > 1e-2
        && pe == px
        && pe == pr
        && det.as_ref().is_none_or(|d| d.holds);
    Ok(HessianReport {
        n,
        size: h.size,
        matrix: h.rows(),
        symmetric: h.is_symmetric(),
        php_is_minus_h: php_ok,
        signature: sig,
        pfaffian_elimination: pe,
        pfaffian_expansion: px,
        pfaffian_recurrence: pr,
        det,
        pass,
    })
}
