//! Integer Laurent polynomials in one variable t.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Σ coeffs[i] · t^(min_exp + i). The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    pub min_exp: i32,
    pub coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        Self::new(e, vec![c])
    }

    /// Builds and trims zero coefficients at both ends.
    pub fn new(min_exp: i32, coeffs: Vec<i64>) -> Self {
        let mut p = Self { min_exp, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.min_exp += lead as i32;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exp(&self) -> i32 {
        self.min_exp + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of t^e.
    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.min_exp;
        if i < 0 || i as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Value at an integer point (t ≠ 0 when negative exponents are present).
    pub fn eval(&self, t: i64) -> i128 {
        let t = t as i128;
        let mut num: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            num = num * t + c as i128;
        }
        if self.min_exp >= 0 {
            num * t.pow(self.min_exp as u32)
        } else {
            let den = t.pow((-self.min_exp) as u32);
            assert!(num % den == 0, "non-integral value");
            num / den
        }
    }

    /// Value at a real point.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 * t.powi(self.min_exp + i as i32))
            .sum()
    }

    /// p(t⁻¹).
    pub fn mirror(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(-self.max_exp(), c)
    }

    /// Exact quotient self / d, or None when d does not divide self.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dl = *d.coeffs.last().unwrap();
        let dn = d.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return None;
        }
        let qlen = rem.len() - dn + 1;
        let mut q = vec![0i64; qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dn - 1];
            if top % dl != 0 {
                return None;
            }
            let f = top / dl;
            q[i] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= f * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(self.min_exp - d.min_exp, q))
    }

    /// Equal up to a unit ±t^k.
    pub fn associate(&self, o: &LaurentPoly) -> bool {
        if self.coeffs.len() != o.coeffs.len() {
            return false;
        }
        let s = self.coeffs.iter().zip(&o.coeffs);
        s.clone().all(|(a, b)| a == b) || s.into_iter().all(|(a, b)| a == &-b)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(o.min_exp);
        let hi = self.max_exp().max(o.max_exp());
        LaurentPoly::new(lo, (lo..=hi).map(|e| self.coeff(e) + o.coeff(e)).collect())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_exp + o.min_exp, c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.min_exp + i as i32;
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentMatrix {
    pub size: usize,
    pub entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = LaurentPoly::one();
        }
        Self { size, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        self.entries[r * self.size + c] = p;
    }

    pub fn mul(&self, o: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, o.size);
        let n = self.size;
        let mut out = LaurentMatrix { size: n, entries: vec![LaurentPoly::zero(); n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub_identity(&self) -> LaurentMatrix {
        let mut m = self.clone();
        for i in 0..self.size {
            let d = self.get(i, i) - &LaurentPoly::one();
            m.set(i, i, d);
        }
        m
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> LaurentPoly {
        let rows: Vec<usize> = (0..self.size).collect();
        let cols = rows.clone();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        match rows.len() {
            0 => LaurentPoly::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = LaurentPoly::zero();
                for (ci, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let m = a * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if ci % 2 == 0 { &acc + &m } else { &acc - &m };
                }
                acc
            }
        }
    }
}
