//! Theorem-chain verifier.
//!
//! For a profile that is Hodge-Witt, has torsion-free crystalline cohomology
//! and Hodge-de Rham degeneration, the chain runs
//! slope-number symmetry → Hodge-Witt symmetry (`T = 0`, so `h_W = m`)
//! → Hodge symmetry (Mazur-Ogus, so `h_W = h`). Each link is checked on the
//! concrete numbers and recorded in a [`VerificationReport`]. Missing
//! hypotheses produce skipped checks, never passes.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::hodge_witt::{
    apply_ekedahl_equality, check_betti_parity, check_mazur_ogus, effective_dominoes,
    hodge_asymmetries, hodge_witt_numbers_from, MazurOgus,
};
use crate::model::{validate_profile, CohomologyProfile};
use crate::error::Error;
use crate::slope::{slope_number_table, NumberTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Validate,
    Duality,
    SlopeSymmetry,
    Hypotheses,
    HodgeWittNumbers,
    MazurOgus,
    EkedahlEquality,
    HodgeSymmetry,
    BettiParity,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::Validate,
        CheckId::Duality,
        CheckId::SlopeSymmetry,
        CheckId::Hypotheses,
        CheckId::HodgeWittNumbers,
        CheckId::MazurOgus,
        CheckId::EkedahlEquality,
        CheckId::HodgeSymmetry,
        CheckId::BettiParity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Validate => "validate",
            CheckId::Duality => "duality",
            CheckId::SlopeSymmetry => "slope-symmetry",
            CheckId::Hypotheses => "hypotheses",
            CheckId::HodgeWittNumbers => "hodge-witt-numbers",
            CheckId::MazurOgus => "mazur-ogus",
            CheckId::EkedahlEquality => "ekedahl-equality",
            CheckId::HodgeSymmetry => "hodge-symmetry",
            CheckId::BettiParity => "betti-parity",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub detail: String,
}

impl Evidence {
    fn degree(degree: usize, detail: impl Into<String>) -> Self {
        Evidence { degree: Some(degree), i: None, j: None, detail: detail.into() }
    }

    fn entry(i: usize, j: usize, detail: impl Into<String>) -> Self {
        Evidence { degree: Some(i + j), i: Some(i), j: Some(j), detail: detail.into() }
    }

    fn location(&self) -> String {
        match (self.i, self.j, self.degree) {
            (Some(i), Some(j), _) => format!("({i},{j})"),
            (_, _, Some(n)) => format!("degree {n}"),
            _ => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub verdict: Verdict,
    pub reason: String,
    #[serde(default)]
    pub evidence: Vec<Evidence>,
}

impl CheckResult {
    fn new(id: CheckId, verdict: Verdict, reason: impl Into<String>) -> Self {
        CheckResult { id, verdict, reason: reason.into(), evidence: Vec::new() }
    }

    fn with_evidence(mut self, evidence: Vec<Evidence>) -> Self {
        self.evidence = evidence;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub profile: String,
    pub overall: Verdict,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_numbers: Option<NumberTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge_witt_numbers: Option<NumberTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_hodge: Option<NumberTable>,
}

impl VerificationReport {
    pub fn check(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn verdict(&self, id: CheckId) -> Option<Verdict> {
        self.check(id).map(|c| c.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "profile: {}", self.profile);
        for c in &self.checks {
            let _ = writeln!(out, "  {:<9} {:<18} {}", format!("[{}]", c.verdict), c.id.as_str(), c.reason);
            for e in &c.evidence {
                let _ = writeln!(out, "{:31}- {} {}", "", e.location(), e.detail);
            }
        }
        if let Some(h) = &self.predicted_hodge {
            let _ = writeln!(out, "predicted Hodge numbers:");
            for (n, row) in h.rows() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  degree {n}: ({})", cells.join(", "));
            }
        }
        let _ = writeln!(out, "overall: {}", self.overall);
        out
    }
}

/// Fail if anything failed, otherwise skipped if anything was skipped.
fn overall_of(checks: &[CheckResult]) -> Verdict {
    if checks.iter().any(|c| c.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if checks.iter().any(|c| c.verdict == Verdict::Skipped) {
        Verdict::Skipped
    } else {
        Verdict::Pass
    }
}

fn absent_hypotheses(p: &CohomologyProfile) -> Vec<&'static str> {
    let mut missing = Vec::new();
    match p.flags.hodge_witt {
        Some(true) => {}
        Some(false) => missing.push("Hodge-Witt hypothesis absent"),
        None => missing.push("Hodge-Witt hypothesis absent (unknown)"),
    }
    if !p.flags.crystalline_torsion_free {
        missing.push("torsion-free crystalline cohomology hypothesis absent");
    }
    if !p.flags.hodge_de_rham_degenerates {
        missing.push("Hodge-de Rham degeneration hypothesis absent");
    }
    missing
}

fn entry_label(i: usize, j: usize) -> String {
    format!("{{{i},{j}}}")
}

pub fn verify_main_theorem(p: &CohomologyProfile) -> VerificationReport {
    let mut checks = Vec::with_capacity(CheckId::ALL.len());
    let mut report = VerificationReport {
        profile: p.name.clone(),
        overall: Verdict::Skipped,
        checks: Vec::new(),
        slope_numbers: None,
        hodge_witt_numbers: None,
        predicted_hodge: None,
    };

    let violations = validate_profile(p);
    if violations.is_empty() {
        checks.push(CheckResult::new(CheckId::Validate, Verdict::Pass, "profile satisfies all invariants"));
    } else {
        let evidence = violations
            .iter()
            .map(|v| {
                let (degree, i, j) = v.location();
                Evidence { degree, i, j, detail: v.to_string() }
            })
            .collect();
        checks.push(
            CheckResult::new(CheckId::Validate, Verdict::Fail, format!("{} violation(s)", violations.len()))
                .with_evidence(evidence),
        );
        return finish(report, checks, CheckId::Validate);
    }

    let mut duality_evidence = Vec::new();
    for (&n, s) in &p.slopes {
        let top = crate::rational::Rational::from(n as u64);
        for (slope, mult) in s.entries() {
            let dual = &top - slope;
            let dual_mult = s.multiplicity(&dual);
            if dual_mult != *mult && (slope <= &dual || dual_mult == 0) {
                duality_evidence.push(Evidence::degree(
                    n,
                    format!("slope {slope} has multiplicity {mult} but slope {dual} has {dual_mult}"),
                ));
            }
        }
    }
    if duality_evidence.is_empty() {
        checks.push(CheckResult::new(
            CheckId::Duality,
            Verdict::Pass,
            "every slope λ in degree n is matched by n-λ",
        ));
    } else {
        checks.push(
            CheckResult::new(CheckId::Duality, Verdict::Fail, "slope data is not self-dual")
                .with_evidence(duality_evidence),
        );
        return finish(report, checks, CheckId::Duality);
    }

    let m = slope_number_table(p);
    let asym: Vec<Evidence> = m
        .asymmetries()
        .into_iter()
        .map(|a| {
            Evidence::entry(
                a.i,
                a.j,
                format!("m^{} = {} but m^{} = {}", entry_label(a.i, a.j), a.value, entry_label(a.j, a.i), a.transposed),
            )
        })
        .collect();
    checks.push(if asym.is_empty() {
        CheckResult::new(CheckId::SlopeSymmetry, Verdict::Pass, "m^{i,j} = m^{j,i} for all i, j")
    } else {
        CheckResult::new(CheckId::SlopeSymmetry, Verdict::Fail, "slope numbers are not symmetric")
            .with_evidence(asym)
    });

    let missing = absent_hypotheses(p);
    checks.push(if missing.is_empty() {
        CheckResult::new(CheckId::Hypotheses, Verdict::Pass, "Hodge-Witt; torsion-free; Hodge-de Rham degenerates at E1")
    } else {
        CheckResult::new(CheckId::Hypotheses, Verdict::Skipped, missing.join("; "))
    });

    let is_hodge_witt = p.flags.hodge_witt == Some(true);
    match effective_dominoes(p) {
        None => checks.push(CheckResult::new(
            CheckId::HodgeWittNumbers,
            Verdict::Skipped,
            "dominoes unknown and Hodge-Witt hypothesis absent",
        )),
        Some((dominoes, substituted)) => {
            let hw = hodge_witt_numbers_from(&m, &dominoes);
            let mut reason = if is_hodge_witt {
                "Hodge-Witt, so all T^{i,j} = 0 and h_W = m".to_string()
            } else {
                "h_W computed from recorded domino numbers".to_string()
            };
            if substituted {
                reason.push_str(" (domino numbers unknown; zero substituted)");
            }
            let mut evidence: Vec<Evidence> = hw
                .asymmetries()
                .into_iter()
                .map(|a| {
                    Evidence::entry(
                        a.i,
                        a.j,
                        format!("h_W^{} = {} but h_W^{} = {}", entry_label(a.i, a.j), a.value, entry_label(a.j, a.i), a.transposed),
                    )
                })
                .collect();
            let symmetric = evidence.is_empty();
            evidence.extend(hw.negative_entries().into_iter().map(|(i, j, v)| {
                Evidence::entry(i, j, format!("h_W^{} = {v} is negative (informational)", entry_label(i, j)))
            }));
            let verdict = match (symmetric, is_hodge_witt) {
                (true, _) => Verdict::Pass,
                (false, true) => Verdict::Fail,
                (false, false) => {
                    reason.push_str("; asymmetric, which the Hodge-Witt hypothesis would exclude");
                    Verdict::Skipped
                }
            };
            if symmetric {
                reason.push_str("; h_W^{i,j} = h_W^{j,i}");
            }
            checks.push(CheckResult::new(CheckId::HodgeWittNumbers, verdict, reason).with_evidence(evidence));
            report.hodge_witt_numbers = Some(hw);
        }
    }
    report.slope_numbers = Some(m);

    let mazur_ogus = check_mazur_ogus(p);
    checks.push(match &mazur_ogus {
        MazurOgus::Skipped(reason) => CheckResult::new(CheckId::MazurOgus, Verdict::Skipped, reason.clone()),
        MazurOgus::Checked(degrees) => {
            let evidence: Vec<Evidence> = degrees
                .iter()
                .filter(|d| !d.holds())
                .map(|d| {
                    Evidence::degree(
                        d.degree,
                        format!("b_{} = {} but Σ h^{{i,j}} = {}", d.degree, d.betti, d.hodge_sum),
                    )
                })
                .collect();
            if evidence.is_empty() {
                CheckResult::new(CheckId::MazurOgus, Verdict::Pass, "b_n = Σ_{i+j=n} h^{i,j} in every degree")
            } else {
                CheckResult::new(CheckId::MazurOgus, Verdict::Fail, "Betti numbers differ from Hodge sums")
                    .with_evidence(evidence)
            }
        }
    });

    let prediction = if mazur_ogus.holds() {
        match apply_ekedahl_equality(p) {
            Ok(pred) => {
                let evidence: Vec<Evidence> = pred
                    .disagreements()
                    .map(|a| {
                        Evidence::entry(
                            a.i,
                            a.j,
                            format!("predicted h^{} = {} but recorded {}", entry_label(a.i, a.j), a.predicted, a.recorded),
                        )
                    })
                    .collect();
                checks.push(if evidence.is_empty() {
                    CheckResult::new(CheckId::EkedahlEquality, Verdict::Pass, "h_W^{i,j} = h^{i,j} for all i, j")
                } else {
                    CheckResult::new(CheckId::EkedahlEquality, Verdict::Fail, "Hodge-Witt numbers disagree with Hodge numbers")
                        .with_evidence(evidence)
                });
                Some(pred)
            }
            Err(Error::DominoesUnknown) => {
                checks.push(CheckResult::new(
                    CheckId::EkedahlEquality,
                    Verdict::Skipped,
                    "dominoes unknown and Hodge-Witt hypothesis absent",
                ));
                None
            }
            Err(e) => {
                checks.push(CheckResult::new(CheckId::EkedahlEquality, Verdict::Skipped, e.to_string()));
                None
            }
        }
    } else {
        checks.push(CheckResult::new(
            CheckId::EkedahlEquality,
            Verdict::Skipped,
            "Mazur-Ogus condition not established",
        ));
        None
    };

    if !missing.is_empty() {
        checks.push(CheckResult::new(CheckId::HodgeSymmetry, Verdict::Skipped, missing.join("; ")));
    } else {
        let mut evidence = Vec::new();
        let mut examined = Vec::new();
        if let Some(h) = &p.hodge {
            examined.push("recorded");
            evidence.extend(hodge_asymmetries(h).into_iter().map(|(a, b, x, y)| {
                Evidence::entry(a, b, format!("recorded h^{} = {x} but h^{} = {y}", entry_label(a, b), entry_label(b, a)))
            }));
        }
        if let Some(pred) = &prediction {
            examined.push("predicted");
            evidence.extend(pred.predicted.asymmetries().into_iter().map(|a| {
                Evidence::entry(
                    a.i,
                    a.j,
                    format!("predicted h^{} = {} but h^{} = {}", entry_label(a.i, a.j), a.value, entry_label(a.j, a.i), a.transposed),
                )
            }));
        }
        checks.push(if examined.is_empty() {
            CheckResult::new(CheckId::HodgeSymmetry, Verdict::Skipped, "no Hodge numbers recorded or predicted")
        } else if evidence.is_empty() {
            CheckResult::new(
                CheckId::HodgeSymmetry,
                Verdict::Pass,
                format!("h^{{p,q}} = h^{{q,p}} ({})", examined.join(" and ")),
            )
        } else {
            CheckResult::new(CheckId::HodgeSymmetry, Verdict::Fail, "Hodge numbers are not symmetric")
                .with_evidence(evidence)
        });
    }
    report.predicted_hodge = prediction.map(|pred| pred.predicted);

    let odd: Vec<Evidence> = check_betti_parity(p)
        .into_iter()
        .filter(|c| !c.holds())
        .map(|c| Evidence::degree(c.degree, format!("b_{} = {} is odd", c.degree, c.betti)))
        .collect();
    checks.push(if odd.is_empty() {
        CheckResult::new(CheckId::BettiParity, Verdict::Pass, "odd-degree Betti numbers are even")
    } else {
        CheckResult::new(CheckId::BettiParity, Verdict::Fail, "odd Betti number in odd degree").with_evidence(odd)
    });

    report.overall = overall_of(&checks);
    report.checks = checks;
    report
}

/// Marks every check after `failed` as skipped and closes the report.
fn finish(mut report: VerificationReport, mut checks: Vec<CheckResult>, failed: CheckId) -> VerificationReport {
    for id in CheckId::ALL.into_iter().filter(|id| *id > failed) {
        checks.push(CheckResult::new(id, Verdict::Skipped, format!("prerequisite check `{failed}` failed")));
    }
    report.overall = overall_of(&checks);
    report.checks = checks;
    report
}
