//! JSON encodings for the exact types. Rationals are carried as
//! two-element integer arrays [numerator, denominator] so no value ever
//! passes through a float; matrices carry explicit dimensions and
//! row-major entries.

use anyhow::{anyhow, bail, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use sandwich_core::linalg::Matrix;
use sandwich_core::{Rat, RatVec};

/// A rational as [num, den]. Reduced form with positive denominator is
/// guaranteed on the way out, so round-trips are field-exact.
pub type RatPair = [i64; 2];

pub fn rat_to_pair(r: &Rat) -> Result<RatPair> {
    let num = r
        .numer()
        .to_i64()
        .ok_or_else(|| anyhow!("numerator of {r} does not fit in 64 bits"))?;
    let den = r
        .denom()
        .to_i64()
        .ok_or_else(|| anyhow!("denominator of {r} does not fit in 64 bits"))?;
    Ok([num, den])
}

pub fn pair_to_rat(p: &RatPair) -> Result<Rat> {
    if p[1] == 0 {
        bail!("rational with zero denominator");
    }
    Ok(Rat::new(p[0].into(), p[1].into()))
}

pub fn vec_to_pairs(v: &RatVec) -> Result<Vec<RatPair>> {
    v.iter().map(rat_to_pair).collect()
}

pub fn pairs_to_vec(pairs: &[RatPair]) -> Result<RatVec> {
    Ok(RatVec::new(
        pairs
            .iter()
            .map(pair_to_rat)
            .collect::<Result<Vec<Rat>>>()?,
    ))
}

pub fn vecs_to_pairs(vs: &[RatVec]) -> Result<Vec<Vec<RatPair>>> {
    vs.iter().map(vec_to_pairs).collect()
}

pub fn pairs_to_vecs(rows: &[Vec<RatPair>]) -> Result<Vec<RatVec>> {
    rows.iter().map(|r| pairs_to_vec(r)).collect()
}

/// Row-major matrix with explicit dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<RatPair>,
}

pub fn matrix_to_doc(m: &Matrix<Rat>) -> Result<MatrixDoc> {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            entries.push(rat_to_pair(m.at(i, j))?);
        }
    }
    Ok(MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        entries,
    })
}

