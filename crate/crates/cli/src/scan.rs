//! Alignment scan: enumerate integer h* candidates in a coordinate box
//! and keep the ones whose nilradical centre is a line.

use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use sandwich_core::roots::{RootSystem, TypeLabel};
use sandwich_core::sandwich::{align, nilradical_center, restrict};
use sandwich_core::{rat, Rat, RatVec};

pub const SCAN_SCHEMA: &str = "sandwich-scan/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDoc {
    pub h_star: Vec<i64>,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDoc {
    pub schema: String,
    pub ambient_type: String,
    pub rank: usize,
    pub bound: i64,
    pub candidates: Vec<CandidateDoc>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Scales to the primitive representative of the positive ray.
fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().copied().fold(0i64, gcd);
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

pub fn run_scan(label: TypeLabel, rank: usize, bound: i64) -> Result<ScanDoc> {
    if bound < 1 {
        bail!("scan bound must be at least 1");
    }
    let system =
        RootSystem::<Rat>::build(label, rank).with_context(|| format!("cannot build {label}_{rank}"))?;
    let dim = system.dim();
    let width = (2 * bound + 1) as usize;
    let total = width
        .checked_pow(dim as u32)
        .context("scan box is too large")?;

    // Candidates up to positive scaling: the primitive vector of each ray.
    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    for index in 0..total {
        let mut rest = index;
        let mut v = vec![0i64; dim];
        for slot in v.iter_mut() {
            *slot = (rest % width) as i64 - bound;
            rest /= width;
        }
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        rays.insert(primitive(&v));
    }

    let mut candidates = Vec::new();
    for h in rays {
        let h_star = RatVec::new(h.iter().map(|&n| rat(n)).collect());
        // Vectors that do not cut the root set into a valid alignment are
        // simply not candidates.
        let Ok(alignment) = align(system.clone(), h_star) else {
            continue;
        };
        if !nilradical_center(&alignment).is_class_c {
            continue;
        }
        // The centre can be a line without the restricted system forming a
        // basis (B3 with h* = (1,1,0) is one such). Those have no M, so
        // they are not candidates either.
        let Ok(hat) = restrict(&alignment) else {
            continue;
        };
        candidates.push(CandidateDoc {
            h_star: h,
            m: hat.m(),
        });
    }

    Ok(ScanDoc {
        schema: SCAN_SCHEMA.to_owned(),
        ambient_type: label.to_string(),
        rank,
        bound,
        candidates,
    })
}

pub fn render_scan_text(doc: &ScanDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "scan {} rank {} with coordinates in [-{}, {}]\n",
        doc.ambient_type, doc.rank, doc.bound, doc.bound
    ));
    if doc.candidates.is_empty() {
        out.push_str("no class-C alignments found\n");
        return out;
    }
    for c in &doc.candidates {
        let coords: Vec<String> = c.h_star.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("h* = ({}): M = {}\n", coords.join(", "), c.m));
    }
    out
}
