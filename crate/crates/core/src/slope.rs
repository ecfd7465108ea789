//! Slope numbers `m^{i,j}` and the slope-number polygon.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CohomologyProfile, SlopeMultiset};
use crate::polygon::Polygon;
use crate::rational::Rational;

/// Triangular table of values `v^{i,j}`, one row `(v^{0,n}, ..., v^{n,0})`
/// per degree `n = i + j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<NumberRow>", from = "Vec<NumberRow>")]
pub struct NumberTable {
    rows: BTreeMap<usize, Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberRow {
    pub degree: usize,
    pub values: Vec<Rational>,
}

impl From<NumberTable> for Vec<NumberRow> {
    fn from(t: NumberTable) -> Self {
        t.rows.into_iter().map(|(degree, values)| NumberRow { degree, values }).collect()
    }
}

impl From<Vec<NumberRow>> for NumberTable {
    fn from(rows: Vec<NumberRow>) -> Self {
        NumberTable { rows: rows.into_iter().map(|r| (r.degree, r.values)).collect() }
    }
}

/// An `(i, j)` position whose value differs from its transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Asymmetry {
    pub i: usize,
    pub j: usize,
    pub value: Rational,
    pub transposed: Rational,
}

impl NumberTable {
    pub fn new() -> Self {
        NumberTable::default()
    }

    pub fn from_rows<I>(rows: I) -> Self
    where
        I: IntoIterator<Item = (usize, Vec<Rational>)>,
    {
        NumberTable { rows: rows.into_iter().collect() }
    }

    /// Integer-valued table, mostly for tests and Hodge data.
    pub fn from_integer_rows<I>(rows: I) -> Self
    where
        I: IntoIterator<Item = (usize, Vec<i64>)>,
    {
        NumberTable::from_rows(
            rows.into_iter()
                .map(|(n, r)| (n, r.into_iter().map(Rational::from_integer).collect())),
        )
    }

    pub fn set_row(&mut self, degree: usize, row: Vec<Rational>) {
        self.rows.insert(degree, row);
    }

    pub fn row(&self, degree: usize) -> Option<&[Rational]> {
        self.rows.get(&degree).map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[Rational])> {
        self.rows.iter().map(|(n, r)| (*n, r.as_slice()))
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// `v^{i,j}`, zero outside the stored triangle.
    pub fn get(&self, i: i64, j: i64) -> Rational {
        if i < 0 || j < 0 {
            return Rational::zero();
        }
        let (i, j) = (i as usize, j as usize);
        self.rows
            .get(&(i + j))
            .and_then(|r| r.get(i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn row_sum(&self, degree: usize) -> Rational {
        self.row(degree).unwrap_or(&[]).iter().sum()
    }

    /// Every `(i, j)` with `i < j` and `v^{i,j} != v^{j,i}`.
    pub fn asymmetries(&self) -> Vec<Asymmetry> {
        let mut out = Vec::new();
        for &n in self.rows.keys() {
            for i in 0..=n / 2 {
                let j = n - i;
                if i == j {
                    continue;
                }
                let value = self.get(i as i64, j as i64);
                let transposed = self.get(j as i64, i as i64);
                if value != transposed {
                    out.push(Asymmetry { i, j, value, transposed });
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetries().is_empty()
    }

    /// Entries that are negative, as `(i, j, value)`.
    pub fn negative_entries(&self) -> Vec<(usize, usize, Rational)> {
        self.rows
            .iter()
            .flat_map(|(&n, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| v.is_negative())
                    .map(move |(i, v)| (i, n - i, v.clone()))
            })
            .collect()
    }
}

/// Slope numbers of one degree: `m^{i,n-i}` for `i = 0..=n`.
///
/// A slope `λ` with `k = floor(λ)` feeds column `k` with weight `k + 1 - λ`
/// and column `k + 1` with weight `λ - k`; contributions landing outside
/// `0..=n` are dropped.
pub fn slope_numbers(slopes: &SlopeMultiset, degree: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); degree + 1];
    for (slope, mult) in slopes.entries() {
        let mult = Rational::from(*mult);
        let Some(k) = slope.floor().to_i64() else { continue };
        let frac = slope - &Rational::from_integer(k);
        let lower_weight = &Rational::one() - &frac;
        for (col, weight) in [(k, lower_weight), (k + 1, frac)] {
            if col >= 0 && (col as usize) <= degree && !weight.is_zero() {
                row[col as usize] += &weight * &mult;
            }
        }
    }
    row
}

/// Slope numbers of every degree `0..=2·dim` of a profile.
pub fn slope_number_table(p: &CohomologyProfile) -> NumberTable {
    NumberTable::from_rows((0..=p.max_degree()).map(|n| (n, slope_numbers(&p.slopes_in(n), n))))
}

/// Polygon with slope `i` repeated `m^{i,n-i}` times.
pub fn slope_number_polygon(row: &[Rational]) -> Result<Polygon> {
    let mut segments = Vec::with_capacity(row.len());
    for (i, v) in row.iter().enumerate() {
        if v.is_negative() {
            return Err(Error::NegativeEntry { index: i, value: v.to_string() });
        }
        let mult = v
            .to_i64()
            .ok_or_else(|| Error::NonIntegralEntry { index: i, value: v.to_string() })?;
        if mult > 0 {
            segments.push((Rational::from(i as u64), mult as u64));
        }
    }
    Ok(Polygon::from_slopes(segments)?)
}

pub fn check_slope_symmetry(table: &NumberTable) -> bool {
    table.is_symmetric()
}
