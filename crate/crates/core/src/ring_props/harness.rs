//! Checks the implications and equivalences between independently computed
//! flags.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::checks::{property_report, CheckConfig};
use super::report::{Flag, PropertyReport};
use crate::topoframe::Topoframe;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    HypothesisNotMet { unmet: Vec<String> },
    Fail { counterexample: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub statement: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub verdicts: Vec<TheoremVerdict>,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.verdicts.iter().filter(|v| matches!(v.verdict, Verdict::Fail { .. }))
    }

    pub fn has_failure(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn get(&self, theorem: &str) -> Option<&TheoremVerdict> {
        self.verdicts.iter().find(|v| v.theorem == theorem)
    }
}

fn show(named: &[(&str, bool)]) -> String {
    named.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ")
}

struct Claim<'a> {
    theorem: &'static str,
    statement: &'static str,
    hypotheses: Vec<(&'static str, &'a Flag)>,
    /// Every entry must agree.
    equivalent: Vec<(&'static str, bool)>,
    /// Used instead of `equivalent` for an implication: each must hold.
    implied: Vec<(&'static str, bool)>,
}

impl Claim<'_> {
    fn judge(self) -> TheoremVerdict {
        let unmet: Vec<String> = self
            .hypotheses
            .iter()
            .filter(|(_, f)| !f.value)
            .map(|(n, _)| n.to_string())
            .collect();
        let verdict = if !unmet.is_empty() {
            Verdict::HypothesisNotMet { unmet }
        } else if self.implied.iter().any(|(_, v)| !v) {
            Verdict::Fail { counterexample: show(&self.implied) }
        } else if self.equivalent.windows(2).any(|w| w[0].1 != w[1].1) {
            Verdict::Fail { counterexample: show(&self.equivalent) }
        } else {
            Verdict::Pass
        };
        TheoremVerdict {
            theorem: self.theorem.to_string(),
            statement: self.statement.to_string(),
            verdict,
            note: None,
        }
    }
}

pub fn theorems_from_report(r: &PropertyReport) -> TheoremReport {
    let b = |f: &Flag| f.value;
    let claims = vec![
        Claim {
            theorem: "p-topoframe-implies-aleph0-kasch",
            statement: "a P-topoframe has an aleph0-Kasch function ring",
            hypotheses: vec![("p-topoframe", &r.p_topoframe)],
            equivalent: vec![],
            implied: vec![("aleph0-kasch", b(&r.aleph0_kasch))],
        },
        Claim {
            theorem: "p-topoframe-iff-regular",
            statement: "the topoframe is P iff the function ring is regular",
            hypotheses: vec![],
            equivalent: vec![("p-topoframe", b(&r.p_topoframe)), ("regular", b(&r.regular))],
            implied: vec![],
        },
        Claim {
            theorem: "p-topoframe-implies-aleph0-selfinjective",
            statement: "a P-topoframe has an aleph0-selfinjective function ring",
            hypotheses: vec![("p-topoframe", &r.p_topoframe)],
            equivalent: vec![],
            implied: vec![("aleph0-selfinjective", b(&r.aleph0_selfinjective))],
        },
        Claim {
            theorem: "regular-iff-aleph0-selfinjective",
            statement: "the function ring is regular iff it is aleph0-selfinjective",
            hypotheses: vec![],
            equivalent: vec![("regular", b(&r.regular)), ("aleph0-selfinjective", b(&r.aleph0_selfinjective))],
            implied: vec![],
        },
        Claim {
            theorem: "ed-frame-p-topoframe-implies-selfinjective",
            statement: "an extremally disconnected frame with a P-topology has a selfinjective function ring",
            hypotheses: vec![("ed-frame", &r.ed_frame), ("p-topoframe", &r.p_topoframe)],
            equivalent: vec![],
            implied: vec![("selfinjective", b(&r.selfinjective))],
        },
        Claim {
            theorem: "tau-ed-iff-ed-topoframe",
            statement: "the frame of opens is extremally disconnected iff every open has an open closure",
            hypotheses: vec![],
            equivalent: vec![("tau-ed", b(&r.tau_ed)), ("ed-topoframe", b(&r.ed_topoframe))],
            implied: vec![],
        },
        Claim {
            theorem: "ed-baer-cs-equivalence",
            statement: "for a completely regular topoframe: extremally disconnected iff Baer iff every nonzero ideal \
                        is essential in an idempotent-generated ideal iff CS",
            hypotheses: vec![("completely-regular", &r.completely_regular)],
            equivalent: vec![
                ("ed-topoframe", b(&r.ed_topoframe)),
                ("baer", b(&r.baer)),
                ("essential-in-idempotent", b(&r.essential_in_idempotent)),
                ("cs", b(&r.cs)),
            ],
            implied: vec![],
        },
        Claim {
            theorem: "ed-p-selfinjective-equivalence",
            statement: "for a completely regular topoframe: Baer regular iff continuous regular iff complete regular \
                        iff extremally disconnected P-topoframe iff selfinjective",
            hypotheses: vec![("completely-regular", &r.completely_regular)],
            equivalent: vec![
                ("baer-regular", b(&r.baer) && b(&r.regular)),
                ("continuous-regular", b(&r.continuous_regular)),
                ("complete-regular", b(&r.complete_regular)),
                ("ed-p-topoframe", b(&r.ed_topoframe) && b(&r.p_topoframe)),
                ("selfinjective", b(&r.selfinjective)),
            ],
            implied: vec![],
        },
    ];
    let mut verdicts: Vec<TheoremVerdict> = claims.into_iter().map(Claim::judge).collect();
    if r.selfinjective.value && r.clopens.len() == 2 {
        let v = verdicts
            .iter_mut()
            .find(|v| v.theorem == "ed-frame-p-topoframe-implies-selfinjective")
            .expect("listed above");
        v.note = Some(format!(
            "clopen algebra is {{{}}}: the ring is the constants and is selfinjective whether or not the frame is \
             extremally disconnected",
            r.clopens.join(", ")
        ));
    }
    TheoremReport { verdicts }
}

pub fn verify_theorems(tf: &Arc<Topoframe>, config: &CheckConfig) -> TheoremReport {
    theorems_from_report(&property_report(tf, config))
}
