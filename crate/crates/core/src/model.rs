//! Cohomological profile of a smooth proper variety: Frobenius slopes per
//! degree, Hodge numbers, domino numbers and the hypothesis flags.
//!
//! Profiles may hold invalid data; [`validate_profile`] reports every
//! violation instead of refusing construction, so that files can be loaded
//! and diagnosed.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::rational::Rational;

/// Frobenius slopes of one cohomological degree with their multiplicities.
/// Entries are sorted by slope and duplicates are merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SlopeMultiset {
    entries: Vec<(Rational, u64)>,
}

impl SlopeMultiset {
    pub fn new<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u64)>,
    {
        let mut merged: BTreeMap<Rational, u64> = BTreeMap::new();
        for (slope, mult) in entries {
            *merged.entry(slope).or_insert(0) += mult;
        }
        SlopeMultiset { entries: merged.into_iter().collect() }
    }

    pub fn empty() -> Self {
        SlopeMultiset::default()
    }

    /// Single slope with multiplicity one.
    pub fn point(slope: Rational) -> Self {
        SlopeMultiset::new([(slope, 1)])
    }

    pub fn entries(&self) -> &[(Rational, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total multiplicity, i.e. the rank of this cohomology group.
    pub fn rank(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, slope: &Rational) -> u64 {
        self.entries
            .binary_search_by(|(s, _)| s.cmp(slope))
            .map(|idx| self.entries[idx].1)
            .unwrap_or(0)
    }

    pub fn newton_polygon(&self) -> Result<Polygon> {
        Ok(Polygon::from_slopes(self.entries.iter().cloned())?)
    }

    /// True when every slope `λ` in degree `n` is matched by `n - λ` with the
    /// same multiplicity.
    pub fn is_self_dual(&self, degree: usize) -> bool {
        let n = Rational::from(degree as u64);
        self.entries
            .iter()
            .filter(|(_, m)| *m > 0)
            .all(|(s, m)| self.multiplicity(&(&n - s)) == *m)
    }

    /// Break points of the Newton polygon that are not lattice points.
    pub fn non_integral_break_points(&self) -> Vec<(Rational, Rational)> {
        let mut x = Rational::zero();
        let mut y = Rational::zero();
        let mut bad = Vec::new();
        for (slope, mult) in self.entries.iter().filter(|(_, m)| *m > 0) {
            let len = Rational::from(*mult);
            y += slope * &len;
            x += len;
            if !y.is_integer() {
                bad.push((x.clone(), y.clone()));
            }
        }
        bad
    }

    pub fn violations(&self, degree: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let top = Rational::from(degree as u64);
        for (slope, mult) in &self.entries {
            if *mult == 0 {
                out.push(Violation::NonPositiveMultiplicity { degree, slope: slope.clone() });
            }
            if slope.is_negative() || *slope > top {
                out.push(Violation::SlopeOutOfRange { degree, slope: slope.clone() });
            }
        }
        for (x, y) in self.non_integral_break_points() {
            out.push(Violation::NonIntegralBreakPoint { degree, x, y });
        }
        out
    }
}

/// Hodge numbers `h^{i,j} = dim H^j(X, Ω^i)`, stored per degree `n = i + j`
/// as the row `(h^{0,n}, h^{1,n-1}, ..., h^{n,0})`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HodgeTable {
    rows: BTreeMap<usize, Vec<u64>>,
}

impl HodgeTable {
    pub fn new() -> Self {
        HodgeTable::default()
    }

    pub fn from_rows<I>(rows: I) -> Self
    where
        I: IntoIterator<Item = (usize, Vec<u64>)>,
    {
        HodgeTable { rows: rows.into_iter().collect() }
    }

    pub fn set_row(&mut self, degree: usize, row: Vec<u64>) {
        self.rows.insert(degree, row);
    }

    pub fn row(&self, degree: usize) -> Option<&[u64]> {
        self.rows.get(&degree).map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[u64])> {
        self.rows.iter().map(|(n, r)| (*n, r.as_slice()))
    }

    /// `h^{i,j}`; zero when not recorded.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows
            .get(&(i + j))
            .and_then(|r| r.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn degree_sum(&self, degree: usize) -> u64 {
        self.row(degree).map(|r| r.iter().sum()).unwrap_or(0)
    }

    /// Polygon with slope `i` repeated `h^{i,n-i}` times.
    pub fn polygon(&self, degree: usize) -> Polygon {
        let segments = self
            .row(degree)
            .unwrap_or(&[])
            .iter()
            .enumerate()
            .filter(|(_, h)| **h > 0)
            .map(|(i, h)| (Rational::from(i as u64), *h));
        Polygon::from_slopes(segments).expect("zero entries filtered")
    }
}

/// Domino numbers `T^{i,j}`; entries not stored are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DominoTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl DominoTable {
    pub fn zero() -> Self {
        DominoTable::default()
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), u64)>,
    {
        let mut table = DominoTable::zero();
        for ((i, j), t) in entries {
            table.set(i, j, t);
        }
        table
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    /// `T^{i,j}`, reading zero at negative or unrecorded indices.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        if i < 0 || j < 0 {
            return 0;
        }
        self.entries.get(&(i as usize, j as usize)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Non-zero entries in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }
}

/// Domino data is either known (possibly all zero) or not supplied at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominoes {
    Unknown,
    Known(DominoTable),
}

impl Dominoes {
    pub fn known_zero() -> Self {
        Dominoes::Known(DominoTable::zero())
    }

    pub fn table(&self) -> Option<&DominoTable> {
        match self {
            Dominoes::Known(t) => Some(t),
            Dominoes::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub hodge_witt: Option<bool>,
    pub crystalline_torsion_free: bool,
    pub hodge_de_rham_degenerates: bool,
}

impl Flags {
    pub fn all_true() -> Self {
        Flags {
            hodge_witt: Some(true),
            crystalline_torsion_free: true,
            hodge_de_rham_degenerates: true,
        }
    }

    pub fn mazur_ogus(&self) -> bool {
        self.crystalline_torsion_free && self.hodge_de_rham_degenerates
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub name: String,
    pub dim: usize,
    pub slopes: BTreeMap<usize, SlopeMultiset>,
    pub hodge: Option<HodgeTable>,
    pub dominoes: Dominoes,
    pub flags: Flags,
}

impl CohomologyProfile {
    pub fn max_degree(&self) -> usize {
        2 * self.dim
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree() {
            Err(Error::DegreeOutOfRange { degree, max: self.max_degree() })
        } else {
            Ok(())
        }
    }

    /// Slope data of a degree; an absent degree reads as rank zero.
    pub fn slopes_in(&self, degree: usize) -> SlopeMultiset {
        self.slopes.get(&degree).cloned().unwrap_or_default()
    }

    pub fn betti_number(&self, degree: usize) -> Result<u64> {
        self.check_degree(degree)?;
        Ok(self.slopes.get(&degree).map(SlopeMultiset::rank).unwrap_or(0))
    }

    pub fn newton_polygon(&self, degree: usize) -> Result<Polygon> {
        self.check_degree(degree)?;
        self.slopes_in(degree).newton_polygon()
    }

    pub fn hodge_polygon(&self, degree: usize) -> Result<Polygon> {
        self.check_degree(degree)?;
        let hodge = self.hodge.as_ref().ok_or(Error::MissingHodgeData)?;
        Ok(hodge.polygon(degree))
    }

    /// Newton polygon equals Hodge polygon in every degree.
    pub fn is_ordinary(&self) -> Result<bool> {
        if self.hodge.is_none() {
            return Err(Error::MissingHodgeData);
        }
        for n in 0..=self.max_degree() {
            if !self.newton_polygon(n)?.geometrically_equal(&self.hodge_polygon(n)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveMultiplicity { degree: usize, slope: Rational },
    SlopeOutOfRange { degree: usize, slope: Rational },
    NonIntegralBreakPoint { degree: usize, x: Rational, y: Rational },
    MissingDegree { degree: usize },
    DegreeBeyondDimension { degree: usize },
    MissingHodgeRow { degree: usize },
    HodgeRowLength { degree: usize, expected: usize, found: usize },
    HodgeOutsideDimension { i: usize, j: usize, value: u64 },
    DominoOutsideDimension { i: usize, j: usize, value: u64 },
    DominoFlagConflict { i: usize, j: usize, value: u64 },
}

impl Violation {
    /// `(degree, i, j)` coordinates the violation refers to, where meaningful.
    pub fn location(&self) -> (Option<usize>, Option<usize>, Option<usize>) {
        use Violation::*;
        match self {
            NonPositiveMultiplicity { degree, .. }
            | SlopeOutOfRange { degree, .. }
            | NonIntegralBreakPoint { degree, .. }
            | MissingDegree { degree }
            | DegreeBeyondDimension { degree }
            | MissingHodgeRow { degree }
            | HodgeRowLength { degree, .. } => (Some(*degree), None, None),
            HodgeOutsideDimension { i, j, .. }
            | DominoOutsideDimension { i, j, .. }
            | DominoFlagConflict { i, j, .. } => (Some(i + j), Some(*i), Some(*j)),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NonPositiveMultiplicity { degree, slope } => {
                write!(f, "non-positive multiplicity for slope {slope} in degree {degree}")
            }
            SlopeOutOfRange { degree, slope } => {
                write!(f, "slope {slope} in degree {degree} lies outside [0, {degree}]")
            }
            NonIntegralBreakPoint { degree, x, y } => {
                write!(f, "Newton polygon of degree {degree} has non-integral break point ({x}, {y})")
            }
            MissingDegree { degree } => write!(f, "no slope data for degree {degree}"),
            DegreeBeyondDimension { degree } => {
                write!(f, "slope data for degree {degree} exceeds twice the dimension")
            }
            MissingHodgeRow { degree } => write!(f, "no Hodge row for degree {degree}"),
            HodgeRowLength { degree, expected, found } => {
                write!(f, "Hodge row for degree {degree} has {found} entries, expected {expected}")
            }
            HodgeOutsideDimension { i, j, value } => {
                write!(f, "h^{{{i},{j}}} = {value} but index exceeds the dimension")
            }
            DominoOutsideDimension { i, j, value } => {
                write!(f, "T^{{{i},{j}}} = {value} but index exceeds the dimension")
            }
            DominoFlagConflict { i, j, value } => {
                write!(f, "domino/flag conflict: hodge_witt is true but T^{{{i},{j}}} = {value}")
            }
        }
    }
}

/// Every invariant violation of the profile; empty means valid.
pub fn validate_profile(p: &CohomologyProfile) -> Vec<Violation> {
    let mut out = Vec::new();
    let max = p.max_degree();

    for n in 0..=max {
        match p.slopes.get(&n) {
            Some(s) => out.extend(s.violations(n)),
            None => out.push(Violation::MissingDegree { degree: n }),
        }
    }
    for (&n, s) in p.slopes.range(max + 1..) {
        if !s.is_empty() {
            out.push(Violation::DegreeBeyondDimension { degree: n });
        }
    }

    if let Some(hodge) = &p.hodge {
        for n in 0..=max {
            if hodge.row(n).is_none() {
                out.push(Violation::MissingHodgeRow { degree: n });
            }
        }
        for (n, row) in hodge.rows() {
            if row.len() != n + 1 {
                out.push(Violation::HodgeRowLength { degree: n, expected: n + 1, found: row.len() });
            }
            for (i, &h) in row.iter().enumerate().take(n + 1) {
                let j = n - i;
                if h != 0 && (i > p.dim || j > p.dim) {
                    out.push(Violation::HodgeOutsideDimension { i, j, value: h });
                }
            }
        }
    }

    if let Dominoes::Known(table) = &p.dominoes {
        for ((i, j), t) in table.nonzero() {
            if i > p.dim || j > p.dim {
                out.push(Violation::DominoOutsideDimension { i, j, value: t });
            }
            if p.flags.hodge_witt == Some(true) {
                out.push(Violation::DominoFlagConflict { i, j, value: t });
            }
        }
    }
    out
}

/// Slope `λ` in degree `n` always comes with `n - λ` at equal multiplicity.
pub fn check_slope_duality(p: &CohomologyProfile) -> bool {
    p.slopes.iter().all(|(&n, s)| s.is_self_dual(n))
}

/// Degrees whose slope data fails the duality condition.
pub fn duality_failures(p: &CohomologyProfile) -> Vec<usize> {
    p.slopes
        .iter()
        .filter(|(&n, s)| !s.is_self_dual(n))
        .map(|(&n, _)| n)
        .collect()
}

pub fn betti_number(p: &CohomologyProfile, degree: usize) -> Result<u64> {
    p.betti_number(degree)
}

pub fn is_ordinary(p: &CohomologyProfile) -> Result<bool> {
    p.is_ordinary()
}
