//! The system bundle: everything `build` computes, serialized field-exact.
//! A bundle is self-describing (it echoes its configuration) and is the
//! unit `verify` operates on.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use sandwich_core::roots::{RootSet, RootSystem, TypeLabel};
use sandwich_core::sandwich::{align, nilradical_center, restrict, Alignment, CenterReport, HatSystem};
use sandwich_core::{rat, Rat, RatVec};

use crate::json::{
    matrix_to_doc, pairs_to_vecs, vec_to_pairs, vecs_to_pairs, MatrixDoc, RatPair,
};

pub const BUNDLE_SCHEMA: &str = "sandwich-bundle/1";
pub const CENTER_SCHEMA: &str = "sandwich-center/1";

/// Build-time configuration, echoed through every artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub ambient_type: String,
    pub rank: usize,
    /// Integer coordinates, one per ambient coordinate (the ambient
    /// dimension can exceed the rank, as for the A family).
    pub h_star: Vec<i64>,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientDoc {
    pub label: String,
    pub rank: usize,
    pub dim: usize,
    pub roots: Vec<Vec<RatPair>>,
    pub simple: Vec<Vec<RatPair>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentDoc {
    pub h_star: Vec<RatPair>,
    pub r_zero: Vec<Vec<RatPair>>,
    pub r_minus: Vec<Vec<RatPair>>,
    pub r_zero_simple: Vec<Vec<RatPair>>,
    pub projector: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterDoc {
    pub roots: Vec<Vec<RatPair>>,
    pub dimension: usize,
    pub is_class_c: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDoc {
    pub image: Vec<RatPair>,
    pub members: Vec<Vec<RatPair>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatDoc {
    pub m: usize,
    pub dim: usize,
    pub pi_hat: Vec<Vec<RatPair>>,
    pub phi: Vec<Vec<RatPair>>,
    pub fibers: Vec<FiberDoc>,
    pub center_fiber: Vec<Vec<RatPair>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDoc {
    pub schema: String,
    pub config: ConfigDoc,
    pub ambient: AmbientDoc,
    pub alignment: AlignmentDoc,
    pub center: CenterDoc,
    pub hat: HatDoc,
}

/// Rejection artifact for alignments that fail the one-dimensional-centre
/// gate: the centre itself, so the caller can see why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterRejectionDoc {
    pub schema: String,
    pub config: ConfigDoc,
    pub center: CenterDoc,
}

/// The in-memory result of running the construction pipeline.
pub struct Pipeline {
    pub alignment: Alignment<Rat>,
    pub center: CenterReport<Rat>,
    pub hat: HatSystem<Rat>,
}

pub enum PipelineOutcome {
    Full(Box<Pipeline>),
    /// The alignment exists but its nilradical centre is not a line.
    Rejected(CenterReport<Rat>),
}

/// Runs ambient construction, alignment, the centre gate, and restriction.
/// Configuration problems (unknown type, wrong h* length) are errors;
/// a failed class gate is a normal outcome.
pub fn run_pipeline(config: &ConfigDoc) -> Result<PipelineOutcome> {
    let label: TypeLabel = config
        .ambient_type
        .parse()
        .map_err(|e: sandwich_core::Error| anyhow::anyhow!(e))?;
    let system = RootSystem::<Rat>::build(label, config.rank)
        .with_context(|| format!("cannot build {}_{}", config.ambient_type, config.rank))?;
    if config.h_star.len() != system.dim() {
        bail!(
            "h* must have {} coordinates for {}_{} (got {})",
            system.dim(),
            label,
            config.rank,
            config.h_star.len()
        );
    }
    let h_star = RatVec::new(config.h_star.iter().map(|&n| rat(n)).collect());
    let alignment = align(system, h_star).context("alignment failed")?;
    let center = nilradical_center(&alignment);
    if !center.is_class_c {
        return Ok(PipelineOutcome::Rejected(center));
    }
    let hat = restrict(&alignment).context("restriction failed")?;
    Ok(PipelineOutcome::Full(Box::new(Pipeline {
        alignment,
        center,
        hat,
    })))
}

pub fn center_to_doc(center: &CenterReport<Rat>) -> Result<CenterDoc> {
    Ok(CenterDoc {
        roots: vecs_to_pairs(&center.center_roots)?,
        dimension: center.dimension,
        is_class_c: center.is_class_c,
    })
}

fn set_to_pairs(set: &RootSet<Rat>) -> Result<Vec<Vec<RatPair>>> {
    vecs_to_pairs(set.as_slice())
}

pub fn bundle_to_doc(config: &ConfigDoc, p: &Pipeline) -> Result<BundleDoc> {
    let a = &p.alignment;
    let ambient = a.ambient();
    let h = &p.hat;
    let fibers = h
        .fibers()
        .map(|(image, members)| {
            Ok(FiberDoc {
                image: vec_to_pairs(image)?,
                members: vecs_to_pairs(members)?,
            })
        })
        .collect::<Result<Vec<FiberDoc>>>()?;
    Ok(BundleDoc {
        schema: BUNDLE_SCHEMA.to_owned(),
        config: config.clone(),
        ambient: AmbientDoc {
            label: ambient.label().to_string(),
            rank: ambient.rank(),
            dim: ambient.dim(),
            roots: set_to_pairs(ambient.roots())?,
            simple: vecs_to_pairs(ambient.simple_roots())?,
        },
        alignment: AlignmentDoc {
            h_star: vec_to_pairs(a.h_star())?,
            r_zero: set_to_pairs(a.r_zero())?,
            r_minus: set_to_pairs(a.r_minus())?,
            r_zero_simple: vecs_to_pairs(a.r_zero_simple())?,
            projector: matrix_to_doc(a.projector())?,
        },
        center: center_to_doc(&p.center)?,
        hat: HatDoc {
            m: h.m(),
            dim: h.dim(),
            pi_hat: vecs_to_pairs(h.pi_hat())?,
            phi: set_to_pairs(h.phi())?,
            fibers,
            center_fiber: vecs_to_pairs(h.center_fiber())?,
        },
    })
}

/// The sets a bundle carries, decoded to exact vectors. These are the
/// inputs of the data-level checks, taken from the document as given.
pub struct BundleSets {
    pub phi: RootSet<Rat>,
    pub pi_hat: Vec<RatVec>,
    pub r_zero: RootSet<Rat>,
    pub r_zero_simple: Vec<RatVec>,
    pub r_minus: Vec<RatVec>,
}

pub fn decode_sets(doc: &BundleDoc) -> Result<BundleSets> {
    let phi_vecs = pairs_to_vecs(&doc.hat.phi)?;
    let phi = RootSet::new(doc.hat.dim, phi_vecs).context("bundle hat set is malformed")?;
    let r_zero_vecs = pairs_to_vecs(&doc.alignment.r_zero)?;
    let r_zero =
        RootSet::new(doc.ambient.dim, r_zero_vecs).context("bundle base set is malformed")?;
    Ok(BundleSets {
        phi,
        pi_hat: pairs_to_vecs(&doc.hat.pi_hat)?,
        r_zero,
        r_zero_simple: pairs_to_vecs(&doc.alignment.r_zero_simple)?,
        r_minus: pairs_to_vecs(&doc.alignment.r_minus)?,
    })
}

pub fn parse_bundle(text: &str) -> Result<BundleDoc> {
    let doc: BundleDoc = serde_json::from_str(text).context("bundle does not parse")?;
    if doc.schema != BUNDLE_SCHEMA {
        bail!("unsupported bundle schema {:?}", doc.schema);
    }
    Ok(doc)
}

/// None when the bundle matches a fresh pipeline run of its own
/// configuration; otherwise the first section that disagrees.
pub fn bundle_mismatch(doc: &BundleDoc, p: &Pipeline) -> Result<Option<String>> {
    let fresh = bundle_to_doc(&doc.config, p)?;
    for (name, differs) in [
        ("ambient", doc.ambient != fresh.ambient),
        ("alignment", doc.alignment != fresh.alignment),
        ("center", doc.center != fresh.center),
        ("hat", doc.hat != fresh.hat),
    ] {
        if differs {
            return Ok(Some(format!(
                "bundle section {name:?} disagrees with a fresh construction from its configuration"
            )));
        }
    }
    Ok(None)
}

/// The pairing of every decoded root against the bundle's own h*.
pub fn decode_h_star(doc: &BundleDoc) -> Result<RatVec> {
    crate::json::pairs_to_vec(&doc.alignment.h_star)
}
