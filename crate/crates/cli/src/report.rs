//! The verification report: configuration echo, data summaries, group
//! orders, and one tri-state verdict per check. JSON is the contract;
//! the text rendering is a human courtesy.

use serde::{Deserialize, Serialize};

use crate::bundle::{BundleDoc, ConfigDoc};
use crate::checks::{CheckResultDoc, CheckRun, OrdersDoc, Status};

pub const REPORT_SCHEMA: &str = "sandwich-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignSummaryDoc {
    pub r_zero_count: usize,
    pub r_minus_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSummaryDoc {
    pub dimension: usize,
    pub is_class_c: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatSummaryDoc {
    pub m: usize,
    pub phi_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema: String,
    pub config: ConfigDoc,
    pub checks_requested: Vec<String>,
    pub alignment: AlignSummaryDoc,
    pub center: CenterSummaryDoc,
    pub hat: HatSummaryDoc,
    pub orders: OrdersDoc,
    pub checks: Vec<CheckResultDoc>,
    /// Present only when timing was requested; never part of the
    /// canonical byte comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn build_report(
    bundle: &BundleDoc,
    requested: &[String],
    run: &CheckRun,
    timing_ms: Option<u64>,
) -> ReportDoc {
    ReportDoc {
        schema: REPORT_SCHEMA.to_owned(),
        config: bundle.config.clone(),
        checks_requested: requested.to_vec(),
        alignment: AlignSummaryDoc {
            r_zero_count: bundle.alignment.r_zero.len(),
            r_minus_count: bundle.alignment.r_minus.len(),
        },
        center: CenterSummaryDoc {
            dimension: bundle.center.dimension,
            is_class_c: bundle.center.is_class_c,
        },
        hat: HatSummaryDoc {
            m: bundle.hat.m,
            phi_count: bundle.hat.phi.len(),
        },
        orders: run.orders.clone(),
        checks: run.results.clone(),
        timing_ms,
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

pub fn render_report_text(r: &ReportDoc) -> String {
    let mut out = String::new();
    let coords: Vec<String> = r.config.h_star.iter().map(|x| x.to_string()).collect();
    out.push_str(&format!(
        "bundle: {} rank {}, h* = ({})\n",
        r.config.ambient_type,
        r.config.rank,
        coords.join(", ")
    ));
    out.push_str(&format!(
        "alignment: |R0| = {}, |R-| = {}\n",
        r.alignment.r_zero_count, r.alignment.r_minus_count
    ));
    out.push_str(&format!(
        "center: dimension {}, class C: {}\n",
        r.center.dimension,
        if r.center.is_class_c { "yes" } else { "no" }
    ));
    out.push_str(&format!(
        "hat system: M = {}, |Phi| = {}\n",
        r.hat.m, r.hat.phi_count
    ));
    let order = |o: Option<usize>| o.map_or("-".to_owned(), |n| n.to_string());
    out.push_str(&format!(
        "orders: |W_R| = {}, |W_Rhat| = {}, |script W| = {}, |W_Rtilde| = {}\n",
        order(r.orders.w_base),
        order(r.orders.w_hat),
        order(r.orders.w_script),
        order(r.orders.w_tilde)
    ));
    for c in &r.checks {
        match &c.witness {
            Some(w) if c.status != Status::Pass => {
                out.push_str(&format!("check {}: {} ({})\n", c.name, status_word(c.status), w));
            }
            _ => out.push_str(&format!("check {}: {}\n", c.name, status_word(c.status))),
        }
    }
    let failed = r.checks.iter().filter(|c| c.status == Status::Fail).count();
    let passed = r.checks.iter().filter(|c| c.status == Status::Pass).count();
    if failed == 0 {
        out.push_str(&format!("result: PASS ({passed} passed, 0 failed)\n"));
    } else {
        out.push_str(&format!("result: FAIL ({passed} passed, {failed} failed)\n"));
    }
    if let Some(ms) = r.timing_ms {
        out.push_str(&format!("elapsed: {ms} ms\n"));
    }
    out
}
