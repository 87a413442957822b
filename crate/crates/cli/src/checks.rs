//! The verification registry: every structural claim about the
//! construction as a named check with a tri-state verdict. Data-level checks (axioms, collapse) run on
//! the bundle contents exactly as given; structural checks reconstruct
//! the pipeline from the bundle's configuration and refuse to certify a
//! bundle that disagrees with it.

use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use sandwich_core::group::{verify_group_axioms, FiniteGroup, MatrixLaw};
use sandwich_core::sandwich::{
    base_weyl_group, hat_weyl, verify_axioms_on, verify_relations, Check,
};
use sandwich_core::semidirect::{
    associativity_check, build_phi_table, build_semidirect, check_conjugation_twist,
    check_rminus_stability, exact_sequence_check, induced_maps, lift_conjugation_check,
    phi_homomorphism_check, tau_homomorphism_check,
};
use sandwich_core::symplectic::{
    build_phase_space, lift_permutation, s_generator, script_w, IndexPerm, PhaseSpace,
};
use sandwich_core::Rat;

use crate::bundle::{
    bundle_mismatch, decode_h_star, decode_sets, run_pipeline, BundleDoc, Pipeline,
    PipelineOutcome,
};

/// Every check `verify` knows, in report order.
pub const CHECK_NAMES: &[&str] = &[
    "axioms",
    "collapse",
    "consistency",
    "relations",
    "symplectic",
    "mu",
    "stability",
    "tau",
    "conjugation",
    "phi",
    "semidirect",
    "exact-sequence",
];

/// Exhaustive associativity is cubic in the group order; above this size
/// the semidirect check certifies the order, the axioms, and the inverse
/// formula, and leaves the cubic sweep to smaller instances.
const ASSOCIATIVITY_ORDER_LIMIT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResultDoc {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdersDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_base: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_hat: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_script: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_tilde: Option<usize>,
}

pub struct CheckRun {
    pub results: Vec<CheckResultDoc>,
    pub orders: OrdersDoc,
}

impl CheckRun {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }
}

/// Parses a `--checks` list against the registry; unknown names are usage
/// errors. None means all checks.
pub fn parse_check_selection(arg: Option<&str>) -> Result<BTreeSet<String>> {
    let mut selected = BTreeSet::new();
    match arg {
        None => {
            for name in CHECK_NAMES {
                selected.insert((*name).to_owned());
            }
        }
        Some(list) => {
            for raw in list.split(',') {
                let name = raw.trim();
                if name.is_empty() {
                    continue;
                }
                if !CHECK_NAMES.contains(&name) {
                    bail!(
                        "unknown check {name:?}; known checks: {}",
                        CHECK_NAMES.join(", ")
                    );
                }
                selected.insert(name.to_owned());
            }
            if selected.is_empty() {
                bail!("empty check selection");
            }
        }
    }
    Ok(selected)
}

fn result_of(name: &str, check: Check) -> CheckResultDoc {
    CheckResultDoc {
        name: name.to_owned(),
        status: if check.pass {
            Status::Pass
        } else {
            Status::Fail
        },
        witness: check.witness,
    }
}

fn skipped(name: &str, reason: &str) -> CheckResultDoc {
    CheckResultDoc {
        name: name.to_owned(),
        status: Status::Skipped,
        witness: Some(reason.to_owned()),
    }
}

/// Groups derived from a reconstructed pipeline, built once and shared by
/// the structural checks.
struct Structural {
    pipeline: Pipeline,
    ps: PhaseSpace<Rat>,
    w_base: FiniteGroup<MatrixLaw<Rat>>,
    w_hat: FiniteGroup<MatrixLaw<Rat>>,
    w_script: FiniteGroup<MatrixLaw<Rat>>,
}

fn build_structural(pipeline: Pipeline, cap: usize) -> Result<Structural> {
    let ps = build_phase_space(&pipeline.hat)?;
    let w_base = base_weyl_group(&pipeline.alignment, cap)?;
    let w_hat = hat_weyl(&pipeline.hat, cap)?;
    let w_script = script_w(&ps, cap)?;
    Ok(Structural {
        pipeline,
        ps,
        w_base,
        w_hat,
        w_script,
    })
}

/// The symplectic-model check: the form is preserved by every generator
/// and every permutation lift that actually occurs, the sign relations
/// hold, and the phase space has the expected dimension.
fn symplectic_check(s: &Structural) -> Result<Check> {
    use sandwich_core::group::GroupLaw;

    let ps = &s.ps;
    let m = ps.m();
    if ps.dim() + 1 != s.pipeline.alignment.r_minus().len() {
        return Ok(Check::fail(format!(
            "phase space dimension {} does not pair with the negative layer of size {}",
            ps.dim(),
            s.pipeline.alignment.r_minus().len()
        )));
    }
    let law = ps.law()?;
    let gens: Vec<_> = (1..=m)
        .map(|i| s_generator(ps, i))
        .collect::<sandwich_core::Result<_>>()?;
    for (i, g) in gens.iter().enumerate() {
        if !ps.is_symplectic(g.matrix())? {
            return Ok(Check::fail(format!("S_{} breaks the form", i + 1)));
        }
        if !law.multiply(g, g).matrix().is_identity() {
            return Ok(Check::fail(format!("S_{} is not an involution", i + 1)));
        }
    }
    for a in &gens {
        for b in &gens {
            if law.multiply(a, b).matrix() != law.multiply(b, a).matrix() {
                return Ok(Check::fail("two plane flips do not commute".into()));
            }
        }
    }
    let product = gens
        .iter()
        .fold(law.identity(), |acc, g| law.multiply(&acc, g));
    if *product.matrix() != sandwich_core::RatMat::identity(2 * m).neg() {
        return Ok(Check::fail(
            "product of all plane flips is not minus the identity".into(),
        ));
    }
    let maps = induced_maps(&s.pipeline.alignment, &s.pipeline.hat, &s.w_base)?;
    for im in &maps {
        let lift = lift_permutation(ps, im.tau())?;
        if !ps.is_symplectic(lift.matrix())? {
            return Ok(Check::fail(format!(
                "lift of {} breaks the form",
                im.tau()
            )));
        }
    }
    Ok(Check::ok())
}

fn taus_of(s: &Structural) -> Result<Vec<IndexPerm>> {
    Ok(induced_maps(&s.pipeline.alignment, &s.pipeline.hat, &s.w_base)?
        .iter()
        .map(|im| im.tau().clone())
        .collect())
}

/// Runs the selected checks against the bundle. Data-level checks see the
/// bundle exactly as given; structural checks are skipped with a reason
/// when the bundle cannot be tied back to its configuration.
pub fn run_checks(doc: &BundleDoc, selected: &BTreeSet<String>, cap: usize) -> Result<CheckRun> {
    let sets = decode_sets(doc)?;
    let mut results: Vec<CheckResultDoc> = Vec::new();
    let mut orders = OrdersDoc {
        w_base: None,
        w_hat: None,
        w_script: None,
        w_tilde: None,
    };

    let wants_structural = [
        "relations",
        "symplectic",
        "mu",
        "stability",
        "tau",
        "conjugation",
        "phi",
        "semidirect",
        "exact-sequence",
    ]
    .iter()
    .any(|n| selected.contains(*n));
    let needs_pipeline = wants_structural || selected.contains("consistency");

    // Reconstruction from the configuration; structural checks hang off it.
    let mut consistency: Option<Check> = None;
    let mut structural: Option<Structural> = None;
    if needs_pipeline {
        match run_pipeline(&doc.config) {
            Err(e) => {
                consistency = Some(Check::fail(format!(
                    "bundle configuration does not rebuild: {e:#}"
                )));
            }
            Ok(PipelineOutcome::Rejected(center)) => {
                consistency = Some(Check::fail(format!(
                    "bundle configuration is rejected at the class gate (centre dimension {})",
                    center.dimension
                )));
            }
            Ok(PipelineOutcome::Full(pipeline)) => {
                match bundle_mismatch(doc, &pipeline)? {
                    Some(witness) => consistency = Some(Check::fail(witness)),
                    None => {
                        consistency = Some(Check::ok());
                        if wants_structural {
                            structural = Some(build_structural(*pipeline, cap)?);
                        }
                    }
                }
            }
        }
    }
    let mut sdp = None;
    if let Some(s) = &structural {
        orders.w_base = Some(s.w_base.order());
        orders.w_hat = Some(s.w_hat.order());
        orders.w_script = Some(s.w_script.order());
        if selected.contains("semidirect") || selected.contains("exact-sequence") {
            let group = build_semidirect(
                &s.pipeline.alignment,
                &s.pipeline.hat,
                &s.ps,
                &s.w_script,
                &s.w_base,
                cap,
            )
            .context("semidirect closure failed")?;
            orders.w_tilde = Some(group.order());
            sdp = Some(group);
        }
    }

    const STALE: &str = "bundle disagrees with its configuration, structural checks not run";

    for name in CHECK_NAMES {
        if !selected.contains(*name) {
            results.push(skipped(name, "not selected"));
            continue;
        }
        let result = match *name {
            "axioms" => {
                let hat_report = verify_axioms_on(&sets.phi, &sets.pi_hat)?;
                let base_report = verify_axioms_on(&sets.r_zero, &sets.r_zero_simple)?;
                if !hat_report.pass() {
                    result_of(
                        name,
                        Check::fail(format!(
                            "hat system: {}",
                            hat_report.first_witness().unwrap_or_default()
                        )),
                    )
                } else if !base_report.pass() {
                    result_of(
                        name,
                        Check::fail(format!(
                            "base system: {}",
                            base_report.first_witness().unwrap_or_default()
                        )),
                    )
                } else {
                    result_of(name, Check::ok())
                }
            }
            "collapse" => {
                // No sum of two hat roots is again a hat root, on the
                // bundle data as given.
                let mut check = Check::ok();
                'outer: for beta in sets.phi.iter() {
                    for gamma in sets.phi.iter() {
                        let sum = beta.checked_add(gamma)?;
                        if sets.phi.contains(&sum) {
                            check = Check::fail(format!(
                                "{beta} + {gamma} is again a hat root"
                            ));
                            break 'outer;
                        }
                    }
                }
                // The negative layer must pair strictly negative against
                // the bundle's own h*.
                if check.pass {
                    let h_star = decode_h_star(doc)?;
                    for beta in &sets.r_minus {
                        if beta.dot(&h_star)? >= Rat::from_integer(0.into()) {
                            check = Check::fail(format!(
                                "{beta} sits in the negative layer but does not pair negative"
                            ));
                            break;
                        }
                    }
                }
                result_of(name, check)
            }
            "consistency" => result_of(
                name,
                consistency.clone().expect("pipeline path taken above"),
            ),
            _ => match &structural {
                None => skipped(name, STALE),
                Some(s) => structural_check(name, s, sdp.as_ref())?,
            },
        };
        results.push(result);
    }

    Ok(CheckRun { results, orders })
}

fn structural_check(
    name: &str,
    s: &Structural,
    sdp: Option<&FiniteGroup<sandwich_core::semidirect::SdpLaw>>,
) -> Result<CheckResultDoc> {
    let a = &s.pipeline.alignment;
    let h = &s.pipeline.hat;
    let doc = match name {
        "relations" => {
            let report = verify_relations(h, &s.w_hat)?;
            result_of(
                name,
                if report.pass() {
                    Check::ok()
                } else {
                    Check::fail(report.first_witness().unwrap_or_default())
                },
            )
        }
        "symplectic" => result_of(name, symplectic_check(s)?),
        "mu" => {
            let report =
                sandwich_core::symplectic::mu_isomorphism(h, &s.w_hat, &s.ps, &s.w_script)?;
            result_of(
                name,
                if report.pass() {
                    Check::ok()
                } else {
                    Check::fail(report.first_witness().unwrap_or_default())
                },
            )
        }
        "stability" => result_of(name, check_rminus_stability(a, &s.w_base)?),
        "tau" => result_of(name, tau_homomorphism_check(a, h, &s.w_base)?),
        "conjugation" => result_of(name, lift_conjugation_check(&s.ps, &taus_of(s)?)?),
        "phi" => {
            let table = build_phi_table(a, h, &s.ps, &s.w_script, &s.w_base)?;
            result_of(name, phi_homomorphism_check(&s.w_base, &table)?)
        }
        "semidirect" => {
            let sdp = sdp.expect("built above when selected");
            let mut check = if sdp.order() == s.w_script.order() * s.w_base.order() {
                Check::ok()
            } else {
                Check::fail(format!(
                    "order {} differs from {} * {}",
                    sdp.order(),
                    s.w_script.order(),
                    s.w_base.order()
                ))
            };
            if check.pass {
                let axioms = verify_group_axioms(sdp);
                if !axioms.pass() {
                    check = Check::fail(axioms.witness.unwrap_or_default());
                }
            }
            if check.pass && sdp.order() <= ASSOCIATIVITY_ORDER_LIMIT {
                check = associativity_check(sdp);
            }
            result_of(name, check)
        }
        "exact-sequence" => {
            let sdp = sdp.expect("built above when selected");
            let report = exact_sequence_check(sdp)?;
            let mut check = if report.pass() {
                Check::ok()
            } else {
                Check::fail(report.first_witness().unwrap_or_default())
            };
            if check.pass {
                check = check_conjugation_twist(sdp)?;
            }
            result_of(name, check)
        }
        other => bail!("unknown structural check {other:?}"),
    };
    Ok(doc)
}
