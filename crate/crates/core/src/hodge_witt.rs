//! Hodge-Witt numbers and the symmetry checks built on them.
//!
//! `h_W^{i,j} = m^{i,j} + T^{i,j} - 2T^{i-1,j+1} + T^{i-2,j+2}`. When the
//! slope spectral sequence degenerates every `T` vanishes and `h_W = m`.

use crate::error::{Error, Result};
use crate::model::{CohomologyProfile, DominoTable, Dominoes, HodgeTable};
use crate::rational::Rational;
use crate::slope::{slope_number_table, NumberTable};

/// Applies the domino correction to a table of slope numbers.
pub fn hodge_witt_numbers_from(m: &NumberTable, t: &DominoTable) -> NumberTable {
    let mut out = NumberTable::new();
    for (n, row) in m.rows() {
        let corrected = row
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (i, j) = (i as i64, (n - i) as i64);
                let correction = t.get(i, j) as i128 - 2 * t.get(i - 1, j + 1) as i128
                    + t.get(i - 2, j + 2) as i128;
                v + &Rational::from(num_bigint::BigInt::from(correction))
            })
            .collect();
        out.set_row(n, corrected);
    }
    out
}

pub fn hodge_witt_numbers(m: &NumberTable, dominoes: &Dominoes) -> Result<NumberTable> {
    match dominoes {
        Dominoes::Known(t) => Ok(hodge_witt_numbers_from(m, t)),
        Dominoes::Unknown => Err(Error::DominoesUnknown),
    }
}

pub fn check_hodge_witt_symmetry(hw: &NumberTable) -> bool {
    hw.is_symmetric()
}

/// `(p, q, h^{p,q}, h^{q,p})` for every `p < q` where the two differ.
pub fn hodge_asymmetries(h: &HodgeTable) -> Vec<(usize, usize, u64, u64)> {
    let mut out = Vec::new();
    for (n, _) in h.rows() {
        for p in 0..=n / 2 {
            let q = n - p;
            if p != q && h.get(p, q) != h.get(q, p) {
                out.push((p, q, h.get(p, q), h.get(q, p)));
            }
        }
    }
    out
}

pub fn check_hodge_symmetry(h: &HodgeTable) -> bool {
    hodge_asymmetries(h).is_empty()
}

/// Domino numbers to use for `h_W`: the recorded table, or zero when the
/// profile is Hodge-Witt. The flag is true when zero was substituted for
/// unknown data.
pub fn effective_dominoes(p: &CohomologyProfile) -> Option<(DominoTable, bool)> {
    if p.flags.hodge_witt == Some(true) {
        return Some((DominoTable::zero(), p.dominoes == Dominoes::Unknown));
    }
    p.dominoes.table().map(|t| (t.clone(), false))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: usize,
    pub betti: u64,
    pub hodge_sum: u64,
}

impl DegreeCheck {
    pub fn holds(&self) -> bool {
        self.betti == self.hodge_sum
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MazurOgus {
    Skipped(String),
    Checked(Vec<DegreeCheck>),
}

impl MazurOgus {
    pub fn holds(&self) -> bool {
        matches!(self, MazurOgus::Checked(v) if v.iter().all(DegreeCheck::holds))
    }
}

/// Compares each Betti number with the sum of the Hodge numbers of its
/// degree. Only meaningful under torsion-free crystalline cohomology and
/// Hodge-de Rham degeneration; skipped otherwise.
pub fn check_mazur_ogus(p: &CohomologyProfile) -> MazurOgus {
    let mut missing = Vec::new();
    if !p.flags.crystalline_torsion_free {
        missing.push("crystalline cohomology not known to be torsion-free");
    }
    if !p.flags.hodge_de_rham_degenerates {
        missing.push("Hodge-de Rham degeneration hypothesis absent");
    }
    let Some(hodge) = &p.hodge else {
        missing.push("no Hodge table");
        return MazurOgus::Skipped(missing.join("; "));
    };
    if !missing.is_empty() {
        return MazurOgus::Skipped(missing.join("; "));
    }
    MazurOgus::Checked(
        (0..=p.max_degree())
            .map(|n| DegreeCheck {
                degree: n,
                betti: p.slopes_in(n).rank(),
                hodge_sum: hodge.degree_sum(n),
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryAgreement {
    pub i: usize,
    pub j: usize,
    pub predicted: Rational,
    pub recorded: u64,
}

impl EntryAgreement {
    pub fn agrees(&self) -> bool {
        self.predicted == Rational::from(self.recorded)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkedahlPrediction {
    /// `h_W`, read as the predicted Hodge numbers.
    pub predicted: NumberTable,
    /// Entrywise comparison with the recorded Hodge table.
    pub agreement: Vec<EntryAgreement>,
    /// Zero dominoes were substituted because the profile is Hodge-Witt.
    pub dominoes_substituted: bool,
}

impl EkedahlPrediction {
    pub fn disagreements(&self) -> impl Iterator<Item = &EntryAgreement> {
        self.agreement.iter().filter(|a| !a.agrees())
    }
}

/// For a Mazur-Ogus profile, Hodge-Witt numbers equal Hodge numbers
/// (Ekedahl). Returns `h_W` as the predicted Hodge table together with
/// its agreement with the recorded one.
pub fn apply_ekedahl_equality(p: &CohomologyProfile) -> Result<EkedahlPrediction> {
    match check_mazur_ogus(p) {
        MazurOgus::Skipped(reason) => return Err(Error::HypothesisNotSatisfied(reason)),
        MazurOgus::Checked(v) => {
            if let Some(bad) = v.iter().find(|d| !d.holds()) {
                return Err(Error::HypothesisNotSatisfied(format!(
                    "b_{} = {} differs from the Hodge sum {}",
                    bad.degree, bad.betti, bad.hodge_sum
                )));
            }
        }
    }
    let (dominoes, substituted) = effective_dominoes(p).ok_or(Error::DominoesUnknown)?;
    let predicted = hodge_witt_numbers_from(&slope_number_table(p), &dominoes);
    let hodge = p.hodge.as_ref().expect("Mazur-Ogus check requires a Hodge table");
    let agreement = predicted
        .rows()
        .flat_map(|(n, row)| {
            row.iter().enumerate().map(move |(i, v)| EntryAgreement {
                i,
                j: n - i,
                predicted: v.clone(),
                recorded: hodge.get(i, n - i),
            })
        })
        .collect();
    Ok(EkedahlPrediction { predicted, agreement, dominoes_substituted: substituted })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheck {
    pub degree: usize,
    pub betti: u64,
}

impl ParityCheck {
    pub fn holds(&self) -> bool {
        self.betti.is_multiple_of(2)
    }
}

/// Parity of every odd-degree Betti number.
pub fn check_betti_parity(p: &CohomologyProfile) -> Vec<ParityCheck> {
    (1..=p.max_degree())
        .step_by(2)
        .map(|n| ParityCheck { degree: n, betti: p.slopes_in(n).rank() })
        .collect()
}
