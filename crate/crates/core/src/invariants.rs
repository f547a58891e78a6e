//! Reduced Burau matrices, Alexander polynomials, knot determinants and the
//! component count predicted for two-bridge knots.

use crate::braid::BraidWord;
use crate::laurent::{LaurentMatrix, LaurentPoly};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Read;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("closure of {word} is a {components}-component link, not a knot")]
    NotAKnot { word: String, components: usize },
    #[error("det(B - I) is not divisible by 1 + t + ... + t^(n-1) for {0}")]
    InexactDivision(String),
    #[error("determinant {0} is even; expected an odd knot determinant")]
    EvenDeterminant(u64),
    #[error("malformed Khovanov rank file: {0}")]
    MalformedRanks(String),
}

/// Reduced Burau matrix of a single signed generator on `strands` strands.
fn generator_matrix(strands: usize, letter: i32) -> LaurentMatrix {
    let size = strands - 1;
    let mut m = LaurentMatrix::identity(size);
    let r = letter.unsigned_abs() as usize - 1;
    let t = LaurentPoly::monomial(1, 1);
    let tinv = LaurentPoly::monomial(1, -1);
    let one = LaurentPoly::one();
    if letter > 0 {
        m.set(r, r, t.scale(-1));
        if r > 0 {
            m.set(r, r - 1, t);
        }
        if r + 1 < size {
            m.set(r, r + 1, one);
        }
    } else {
        m.set(r, r, tinv.scale(-1));
        if r > 0 {
            m.set(r, r - 1, one);
        }
        if r + 1 < size {
            m.set(r, r + 1, tinv);
        }
    }
    m
}

/// Reduced Burau representation, multiplicative in word order.
pub fn burau_reduced(w: &BraidWord) -> LaurentMatrix {
    let n = w.strands();
    assert!(n >= 2, "reduced Burau needs at least two strands");
    w.letters()
        .iter()
        .fold(LaurentMatrix::identity(n - 1), |acc, &l| acc.mul(&generator_matrix(n, l)))
}

/// Shifts to lowest exponent 0 and fixes the sign so that Δ(1) = 1.
pub fn normalize_alexander(p: &LaurentPoly) -> LaurentPoly {
    let q = p.shift(-p.min_exp);
    if q.eval(1) < 0 {
        q.scale(-1)
    } else {
        q
    }
}

/// Alexander polynomial of the closure of a braid whose closure is a knot.
pub fn alexander(w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
    let components = w.closure_components();
    if components != 1 {
        return Err(InvariantError::NotAKnot { word: w.to_string(), components });
    }
    let n = w.strands();
    if n == 1 {
        return Ok(LaurentPoly::one());
    }
    let d = burau_reduced(w).sub_identity().det();
    let geometric = LaurentPoly::new(0, vec![1; n]);
    let q =
        d.div_exact(&geometric).ok_or_else(|| InvariantError::InexactDivision(w.to_string()))?;
    Ok(normalize_alexander(&q))
}

/// |Δ(-1)|.
pub fn determinant(w: &BraidWord) -> Result<u64, InvariantError> {
    let d = alexander(w)?.eval(-1).unsigned_abs() as u64;
    if d.is_multiple_of(2) {
        return Err(InvariantError::EvenDeterminant(d));
    }
    Ok(d)
}

/// Components and rational cohomology predicted for a two-bridge knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBridgePrediction {
    pub determinant: u64,
    pub spheres: usize,
    pub rp3: usize,
    pub components: usize,
    pub cohomology_rank: u64,
}

pub fn two_bridge_prediction(det: u64) -> Result<TwoBridgePrediction, InvariantError> {
    if det.is_multiple_of(2) {
        return Err(InvariantError::EvenDeterminant(det));
    }
    let rp3 = ((det - 1) / 2) as usize;
    Ok(TwoBridgePrediction {
        determinant: det,
        spheres: 1,
        rp3,
        components: 1 + rp3,
        cohomology_rank: det + 1,
    })
}

/// Reads "name,rank" rows; a non-numeric first row is taken as a header.
pub fn read_khovanov_ranks<R: Read>(reader: R) -> Result<BTreeMap<String, u64>, InvariantError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = BTreeMap::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| InvariantError::MalformedRanks(e.to_string()))?;
        if rec.len() != 2 {
            return Err(InvariantError::MalformedRanks(format!(
                "row {} has {} fields, expected 2",
                i + 1,
                rec.len()
            )));
        }
        match rec[1].parse::<u64>() {
            Ok(r) => {
                out.insert(rec[0].to_string(), r);
            }
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(InvariantError::MalformedRanks(format!(
                    "row {}: rank {:?} is not a non-negative integer",
                    i + 1,
                    &rec[1]
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhovanovComparison {
    pub name: String,
    pub variety_rank: u64,
    pub khovanov_rank: Option<u64>,
    pub matches: bool,
    /// variety rank minus Khovanov rank.
    pub difference: Option<i64>,
}

/// Compares a variety's total rational cohomology rank with a supplied Khovanov rank.
pub fn compare_khovanov(
    name: &str,
    variety_rank: u64,
    ranks: &BTreeMap<String, u64>,
) -> KhovanovComparison {
    let kh = ranks.get(name).copied();
    KhovanovComparison {
        name: name.to_string(),
        variety_rank,
        khovanov_rank: kh,
        matches: kh == Some(variety_rank),
        difference: kh.map(|k| variety_rank as i64 - k as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn w(s: &str) -> BraidWord {
        parse_braid(s).unwrap()
    }

    #[test]
    fn burau_basics() {
        assert_eq!(burau_reduced(&w("3:")), LaurentMatrix::identity(2));
        let b = burau_reduced(&w("2: 1"));
        assert_eq!(b.get(0, 0), &LaurentPoly::monomial(-1, 1));
        assert_eq!(burau_reduced(&w("3: 2 -2 1 -1")), LaurentMatrix::identity(2));
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&w("2: 1 1 1")).unwrap(), LaurentPoly::new(0, vec![1, -1, 1]));
        assert_eq!(alexander(&w("3: 1 -2 1 -2")).unwrap(), LaurentPoly::new(0, vec![-1, 3, -1]));
        assert_eq!(alexander(&w("2: 1")).unwrap(), LaurentPoly::one());
        assert_eq!(alexander(&w("1:")).unwrap(), LaurentPoly::one());
        assert!(matches!(
            alexander(&w("2: 1 1")),
            Err(InvariantError::NotAKnot { components: 2, .. })
        ));
    }

    #[test]
    fn stabilization_keeps_alexander() {
        assert_eq!(alexander(&w("2: 1 1 1")).unwrap(), alexander(&w("3: 1 1 1 2")).unwrap());
        assert_eq!(
            alexander(&w("3: 1 -2 1 -2")).unwrap(),
            alexander(&w("4: 1 -2 1 -2 -3")).unwrap()
        );
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&w("2: 1 1 1")).unwrap(), 3);
        assert_eq!(determinant(&w("3: 1 -2 1 -2")).unwrap(), 5);
        assert_eq!(determinant(&w("4: 1 1 2 -1 -3 2 -3")).unwrap(), 9);
    }

    #[test]
    fn predictions() {
        let p = two_bridge_prediction(3).unwrap();
        assert_eq!((p.spheres, p.rp3, p.cohomology_rank), (1, 1, 4));
        assert_eq!(two_bridge_prediction(5).unwrap().rp3, 2);
        assert_eq!(two_bridge_prediction(7).unwrap().cohomology_rank, 8);
        assert!(two_bridge_prediction(4).is_err());
    }

    #[test]
    fn khovanov_file() {
        let data = "name,rank\n3_1, 4\n6_1,10\n9_42,10\n";
        let r = read_khovanov_ranks(data.as_bytes()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(compare_khovanov("3_1", 4, &r).matches);
        assert!(compare_khovanov("6_1", 10, &r).matches);
        let c = compare_khovanov("9_42", 16, &r);
        assert!(!c.matches);
        assert_eq!(c.difference, Some(6));
        assert!(read_khovanov_ranks("a,b\nc,x\n".as_bytes()).is_err());
        assert!(read_khovanov_ranks("a,1,2\n".as_bytes()).is_err());
    }
}
