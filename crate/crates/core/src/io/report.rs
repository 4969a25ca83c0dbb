//! Report documents: property flags and theorem verdicts for one instance,
//! as JSON and as text.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ring_props::{property_report, theorems_from_report, CheckConfig, PropertyReport, TheoremReport, Verdict, Witness};
use crate::topoframe::Topoframe;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub instance: String,
    pub elements: Vec<String>,
    pub tau: Vec<String>,
    pub properties: PropertyReport,
    pub theorems: TheoremReport,
    /// One line per flag, mirroring the JSON witnesses.
    pub summary: Vec<String>,
}

pub fn build_report(instance: &str, tf: &Arc<Topoframe>, config: &CheckConfig) -> ReportDocument {
    let properties = property_report(tf, config);
    let theorems = theorems_from_report(&properties);
    let l = tf.lattice();
    let summary = properties
        .flags()
        .iter()
        .map(|(name, flag)| {
            let forced = if flag.forced_at_finite_scale { " (forced)" } else { "" };
            format!("{name}: {}{forced}; {}", flag.value, describe(&flag.witness))
        })
        .collect();
    ReportDocument {
        schema: SCHEMA_VERSION,
        instance: instance.to_string(),
        elements: l.labels().to_vec(),
        tau: tf.opens().iter().map(|&e| l.label(e).to_string()).collect(),
        properties,
        theorems,
        summary,
    }
}

pub fn to_json(doc: &ReportDocument) -> String {
    serde_json::to_string_pretty(doc).expect("report serialises")
}

fn list(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

pub fn describe(w: &Witness) -> String {
    match w {
        Witness::ZeroPartOpen { zero_elements } => format!("zero part {} is open", list(zero_elements)),
        Witness::ZeroNotOpen { element } => format!("zero element {element} is not open"),
        Witness::EdHolds { checked, .. } => format!("negations join to top on all {checked} elements"),
        Witness::EdFailure { element, negation, double_negation, .. } => {
            format!("at {element}: negation {negation} and double negation {double_negation} do not join to top")
        }
        Witness::ClosuresOpen { checked } => format!("closures of all {checked} opens are open"),
        Witness::ClosureNotOpen { element, closure } => format!("closure of {element} is {closure}, not open"),
        Witness::JoinsOfCozeros { checked } => format!("all {checked} opens are joins of cozeros"),
        Witness::NotJoinOfCozeros { element, cozero_join } => {
            format!("open {element} exceeds the join {cozero_join} of cozeros below it")
        }
        Witness::QuasiInverse { function, quasi_inverse, .. } => {
            format!("f = {function} has quasi-inverse {quasi_inverse}")
        }
        Witness::NotRegular { function, candidate } => {
            format!("{candidate} is not a quasi-inverse of {function}")
        }
        Witness::Annihilators { pairs } => {
            let shown: Vec<String> = pairs.iter().map(|p| format!("I_{} by {}", p.ideal, p.partner)).collect();
            format!("proper ideals annihilated: {}", list(&shown))
        }
        Witness::EssentialProperIdeal { generators, ideal } => {
            format!("ideal I_{ideal} generated by {} is proper and essential", list(generators))
        }
        Witness::IdempotentAnnihilator { set, idempotent } => {
            format!("Ann{} is generated by {idempotent}", list(set))
        }
        Witness::AnnihilatorMismatch { set, idempotent, probe } => {
            format!("probe {probe} separates Ann{} from {idempotent}", list(set))
        }
        Witness::ClosedSummands { pairs } => {
            let shown: Vec<String> = pairs.iter().map(|p| format!("I_{} + I_{}", p.ideal, p.partner)).collect();
            format!("closed ideals split: {}", list(&shown))
        }
        Witness::ClosedNotSummand { ideal } => format!("closed ideal I_{ideal} is not a summand"),
        Witness::EssentialHulls { pairs } => {
            let shown: Vec<String> = pairs.iter().map(|p| format!("I_{} in {}", p.ideal, p.partner)).collect();
            format!("essential in idempotent ideals: {}", list(&shown))
        }
        Witness::NoEssentialHull { ideal } => format!("I_{ideal} is essential in no idempotent ideal"),
        Witness::Separator { s, t, separator, families } => {
            format!("{families} families separated; S = {}, T = {} by {separator}", list(s), list(t))
        }
        Witness::SeparationFailure { s, t, candidate } => {
            format!("{candidate} fails to separate S = {} from T = {}", list(s), list(t))
        }
        Witness::PrincipalIdeals { elements, chains } => {
            format!("principal ideals {} checked on {chains} chain identities", list(elements))
        }
        Witness::ContinuityFailure { element, chain } => {
            format!("meet with {element} does not distribute over chain {}", list(chain))
        }
        Witness::MissingSupremum { idempotents } => format!("idempotents {} have no supremum", list(idempotents)),
        Witness::NotRegularRing => "ring is not regular".to_string(),
        Witness::Internal { message } => format!("internal failure: {message}"),
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "PASS".to_string(),
        Verdict::HypothesisNotMet { unmet } => format!("HYPOTHESIS-NOT-MET ({})", unmet.join(", ")),
        Verdict::Fail { counterexample } => format!("FAIL ({counterexample})"),
    }
}

pub fn render_properties(doc: &ReportDocument) -> String {
    let mut out = String::new();
    writeln!(out, "instance {}", doc.instance).unwrap();
    writeln!(out, "elements {}, opens {}, clopens {}", doc.elements.len(), doc.tau.len(), list(&doc.properties.clopens)).unwrap();
    for line in &doc.summary {
        writeln!(out, "  {line}").unwrap();
    }
    out
}

pub fn render_theorems(doc: &ReportDocument) -> String {
    let mut out = String::new();
    writeln!(out, "instance {}", doc.instance).unwrap();
    for v in &doc.theorems.verdicts {
        write!(out, "  {}: {}", v.theorem, verdict_text(&v.verdict)).unwrap();
        if let Some(note) = &v.note {
            write!(out, "; {note}").unwrap();
        }
        out.push('\n');
    }
    out
}
