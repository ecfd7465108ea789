//! Generators for standard example varieties: curves, elliptic curves, K3
//! surfaces by height, abelian varieties by p-rank, and Künneth products.
//!
//! Every generator produces a fully populated profile that passes
//! validation and slope duality.

use std::collections::BTreeMap;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::model::{CohomologyProfile, DominoTable, Dominoes, Flags, HodgeTable, SlopeMultiset};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticKind {
    Ordinary,
    Supersingular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K3Height {
    Finite(u32),
    Supersingular,
}

pub const MAX_K3_HEIGHT: u32 = 11;
pub const MAX_ABELIAN_DIMENSION: u32 = 30;
pub const MAX_CURVE_GENUS: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub parameters: BTreeMap<String, u64>,
    pub description: String,
    pub profile: CohomologyProfile,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn rational(n: u64) -> Rational {
    Rational::from(n)
}

/// Slope data of `H^0` and top-degree cohomology of a connected variety.
fn connected_ends(dim: usize) -> [(usize, SlopeMultiset); 2] {
    [
        (0, SlopeMultiset::point(Rational::zero())),
        (2 * dim, SlopeMultiset::point(rational(dim as u64))),
    ]
}

/// Slopes of `H^1` of a curve or abelian variety of genus/dimension `g` and
/// p-rank `f`.
fn h1_slopes(g: u32, f: u32) -> SlopeMultiset {
    SlopeMultiset::new(
        [(r(0, 1), f as u64), (r(1, 2), 2 * (g - f) as u64), (r(1, 1), f as u64)]
            .into_iter()
            .filter(|(_, m)| *m > 0),
    )
}

pub fn point() -> CohomologyProfile {
    CohomologyProfile {
        name: "point".into(),
        dim: 0,
        slopes: BTreeMap::from([(0, SlopeMultiset::point(Rational::zero()))]),
        hodge: Some(HodgeTable::from_rows([(0, vec![1])])),
        dominoes: Dominoes::known_zero(),
        flags: Flags::all_true(),
    }
}

pub fn elliptic_curve(kind: EllipticKind) -> CohomologyProfile {
    let (name, h1) = match kind {
        EllipticKind::Ordinary => ("elliptic:ordinary", h1_slopes(1, 1)),
        EllipticKind::Supersingular => ("elliptic:supersingular", h1_slopes(1, 0)),
    };
    let mut slopes: BTreeMap<usize, SlopeMultiset> = connected_ends(1).into_iter().collect();
    slopes.insert(1, h1);
    CohomologyProfile {
        name: name.into(),
        dim: 1,
        slopes,
        hodge: Some(HodgeTable::from_rows([(0, vec![1]), (1, vec![1, 1]), (2, vec![0, 1, 0])])),
        dominoes: Dominoes::known_zero(),
        flags: Flags::all_true(),
    }
}

/// Smooth proper curve of genus `g` and p-rank `f`.
pub fn curve(g: u32, f: u32) -> Result<CohomologyProfile> {
    if f > g || g > MAX_CURVE_GENUS {
        return Err(Error::ParameterRange(format!(
            "curve needs 0 <= f <= g <= {MAX_CURVE_GENUS}, got g={g}, f={f}"
        )));
    }
    let mut slopes: BTreeMap<usize, SlopeMultiset> = connected_ends(1).into_iter().collect();
    slopes.insert(1, h1_slopes(g, f));
    Ok(CohomologyProfile {
        name: format!("curve:g={g},f={f}"),
        dim: 1,
        slopes,
        hodge: Some(HodgeTable::from_rows([
            (0, vec![1]),
            (1, vec![g as u64, g as u64]),
            (2, vec![0, 1, 0]),
        ])),
        dominoes: Dominoes::known_zero(),
        flags: Flags::all_true(),
    })
}

/// K3 surface of the given formal-group height.
///
/// Finite height `h` has `H^2` slopes `1 - 1/h`, `1`, `1 + 1/h` with
/// multiplicities `h`, `22 - 2h`, `h`. The supersingular surface has all
/// slopes equal to 1 and is not Hodge-Witt; its single domino `T^{0,2} = 1`
/// is forced by `h_W^{0,2} = h^{0,2} = 1` and `m^{0,2} = 0`.
pub fn k3(height: K3Height) -> Result<CohomologyProfile> {
    let mut slopes: BTreeMap<usize, SlopeMultiset> = connected_ends(2).into_iter().collect();
    slopes.insert(1, SlopeMultiset::empty());
    slopes.insert(3, SlopeMultiset::empty());
    let hodge = HodgeTable::from_rows([
        (0, vec![1]),
        (1, vec![0, 0]),
        (2, vec![1, 20, 1]),
        (3, vec![0, 0, 0, 0]),
        (4, vec![0, 0, 1, 0, 0]),
    ]);
    let profile = match height {
        K3Height::Finite(h) => {
            if !(1..=MAX_K3_HEIGHT).contains(&h) {
                return Err(Error::ParameterRange(format!(
                    "K3 height must satisfy 1 <= h <= {MAX_K3_HEIGHT}, got {h}"
                )));
            }
            let h = h as i64;
            slopes.insert(
                2,
                SlopeMultiset::new(
                    [(r(h - 1, h), h as u64), (r(1, 1), (22 - 2 * h) as u64), (r(h + 1, h), h as u64)]
                        .into_iter()
                        .filter(|(_, m)| *m > 0),
                ),
            );
            CohomologyProfile {
                name: format!("k3:h={h}"),
                dim: 2,
                slopes,
                hodge: Some(hodge),
                dominoes: Dominoes::known_zero(),
                flags: Flags::all_true(),
            }
        }
        K3Height::Supersingular => {
            slopes.insert(2, SlopeMultiset::new([(r(1, 1), 22)]));
            CohomologyProfile {
                name: "k3:supersingular".into(),
                dim: 2,
                slopes,
                hodge: Some(hodge),
                dominoes: Dominoes::Known(DominoTable::from_entries([((0, 2), 1)])),
                flags: Flags { hodge_witt: Some(false), ..Flags::all_true() },
            }
        }
    };
    Ok(profile)
}

/// `n`-th exterior power of a slope multiset: slopes of all `n`-element
/// sub-multisets (copies counted as distinct), summed and merged.
pub fn wedge_power(s: &SlopeMultiset, n: usize) -> Result<SlopeMultiset> {
    let total = s.rank() as usize;
    if n > total {
        return Err(Error::ParameterRange(format!(
            "wedge power {n} exceeds total multiplicity {total}"
        )));
    }
    // by_count[c]: slopes of c-element sub-multisets drawn from entries so far
    let mut by_count: Vec<BTreeMap<Rational, u64>> = vec![BTreeMap::new(); n + 1];
    by_count[0].insert(Rational::zero(), 1);
    for (slope, mult) in s.entries() {
        let mut next: Vec<BTreeMap<Rational, u64>> = vec![BTreeMap::new(); n + 1];
        for (c, level) in by_count.iter().enumerate() {
            for (sum, count) in level {
                for take in 0..=(*mult as usize).min(n - c) {
                    let ways = binomial(*mult, take as u64);
                    let key = sum + &(slope * &rational(take as u64));
                    *next[c + take].entry(key).or_insert(0) += count * ways;
                }
            }
        }
        by_count = next;
    }
    Ok(SlopeMultiset::new(by_count.swap_remove(n)))
}

/// Abelian variety of dimension `g` and p-rank `f`; Hodge-Witt exactly
/// when `f >= g - 1`.
pub fn abelian_variety(g: u32, f: u32) -> Result<CohomologyProfile> {
    if g == 0 || f > g || g > MAX_ABELIAN_DIMENSION {
        return Err(Error::ParameterRange(format!(
            "abelian variety needs 1 <= g <= {MAX_ABELIAN_DIMENSION} and 0 <= f <= g, got g={g}, f={f}"
        )));
    }
    let dim = g as usize;
    let h1 = h1_slopes(g, f);
    let slopes = (0..=2 * dim)
        .map(|n| Ok((n, wedge_power(&h1, n)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let hodge = HodgeTable::from_rows((0..=2 * dim).map(|n| {
        let row = (0..=n)
            .map(|i| {
                let j = n - i;
                if i > dim || j > dim {
                    0
                } else {
                    binomial(g as u64, i as u64) * binomial(g as u64, j as u64)
                }
            })
            .collect();
        (n, row)
    }));
    let hodge_witt = f + 1 >= g;
    Ok(CohomologyProfile {
        name: format!("av:g={g},f={f}"),
        dim,
        slopes,
        hodge: Some(hodge),
        dominoes: if hodge_witt { Dominoes::known_zero() } else { Dominoes::Unknown },
        flags: Flags { hodge_witt: Some(hodge_witt), ..Flags::all_true() },
    })
}

/// Product variety. Slopes add and multiplicities multiply across the
/// Künneth decomposition; Hodge numbers convolve. The product is recorded
/// as Hodge-Witt when one factor is ordinary and the other Hodge-Witt.
pub fn kunneth_product(a: &CohomologyProfile, b: &CohomologyProfile) -> CohomologyProfile {
    let dim = a.dim + b.dim;
    let mut slopes = BTreeMap::new();
    for n in 0..=2 * dim {
        let mut entries: Vec<(Rational, u64)> = Vec::new();
        for p in 0..=n.min(a.max_degree()) {
            let q = n - p;
            if q > b.max_degree() {
                continue;
            }
            let (sa, sb) = (a.slopes_in(p), b.slopes_in(q));
            for (la, ma) in sa.entries() {
                for (lb, mb) in sb.entries() {
                    entries.push((la + lb, ma * mb));
                }
            }
        }
        slopes.insert(n, SlopeMultiset::new(entries));
    }

    let hodge = match (&a.hodge, &b.hodge) {
        (Some(ha), Some(hb)) => Some(HodgeTable::from_rows((0..=2 * dim).map(|n| {
            let row = (0..=n)
                .map(|i| {
                    let j = n - i;
                    let mut sum = 0;
                    for p in 0..=i {
                        for q in 0..=j {
                            sum += ha.get(p, q) * hb.get(i - p, j - q);
                        }
                    }
                    sum
                })
                .collect();
            (n, row)
        }))),
        _ => None,
    };

    let ordinary = |x: &CohomologyProfile| x.is_ordinary().unwrap_or(false);
    let hw = |x: &CohomologyProfile| x.flags.hodge_witt == Some(true);
    let hodge_witt = (ordinary(a) && hw(b)) || (ordinary(b) && hw(a));

    CohomologyProfile {
        name: format!("product:{}*{}", a.name, b.name),
        dim,
        slopes,
        hodge,
        dominoes: if hodge_witt { Dominoes::known_zero() } else { Dominoes::Unknown },
        flags: Flags {
            hodge_witt: if hodge_witt { Some(true) } else { None },
            crystalline_torsion_free: a.flags.crystalline_torsion_free && b.flags.crystalline_torsion_free,
            hodge_de_rham_degenerates: a.flags.hodge_de_rham_degenerates && b.flags.hodge_de_rham_degenerates,
        },
    }
}

/// Ids listed by `catalog list`.
pub const STANDARD_IDS: &[&str] = &[
    "point",
    "elliptic:ordinary",
    "elliptic:supersingular",
    "curve:g=2,f=2",
    "curve:g=2,f=0",
    "curve:g=3,f=1",
    "k3:h=1",
    "k3:h=2",
    "k3:h=3",
    "k3:h=11",
    "k3:supersingular",
    "av:g=2,f=2",
    "av:g=2,f=1",
    "av:g=2,f=0",
    "av:g=3,f=3",
    "av:g=3,f=2",
    "av:g=3,f=1",
    "product:elliptic:ordinary*elliptic:supersingular",
    "product:elliptic:ordinary*k3:h=2",
    "product:elliptic:supersingular*elliptic:supersingular",
];

fn parse_u32(id: &str, text: &str) -> Result<u32> {
    text.parse().map_err(|_| unknown(id))
}

/// Parses `g=<g>,f=<f>`.
fn parse_genus_rank(id: &str, params: &str) -> Result<(u32, u32)> {
    let (g, f) = params.split_once(',').ok_or_else(|| unknown(id))?;
    let g = g.strip_prefix("g=").ok_or_else(|| unknown(id))?;
    let f = f.strip_prefix("f=").ok_or_else(|| unknown(id))?;
    Ok((parse_u32(id, g)?, parse_u32(id, f)?))
}

fn unknown(id: &str) -> Error {
    let suggestion = STANDARD_IDS
        .iter()
        .map(|known| (strsim::levenshtein(id, known), *known))
        .min()
        .map(|(_, known)| known.to_string());
    Error::UnknownCatalogId { id: id.to_string(), suggestion }
}

fn params<const N: usize>(pairs: [(&str, u32); N]) -> BTreeMap<String, u64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v as u64)).collect()
}

/// Builds the entry for an id such as `k3:h=3` or
/// `product:elliptic:ordinary*k3:h=2`. Product ids split at the first `*`.
pub fn generate(id: &str) -> Result<CatalogEntry> {
    let (profile, parameters, description) = if id == "point" {
        (point(), BTreeMap::new(), "a point (dimension 0)".to_string())
    } else if id == "elliptic:ordinary" {
        (elliptic_curve(EllipticKind::Ordinary), BTreeMap::new(), "ordinary elliptic curve".to_string())
    } else if id == "elliptic:supersingular" {
        (
            elliptic_curve(EllipticKind::Supersingular),
            BTreeMap::new(),
            "supersingular elliptic curve (H^1 slope 1/2 twice)".to_string(),
        )
    } else if let Some(rest) = id.strip_prefix("curve:") {
        let (g, f) = parse_genus_rank(id, rest)?;
        (curve(g, f)?, params([("g", g), ("f", f)]), format!("curve of genus {g} and p-rank {f}"))
    } else if id == "k3:supersingular" {
        (
            k3(K3Height::Supersingular)?,
            BTreeMap::new(),
            "supersingular K3 surface; not Hodge-Witt; T^{0,2} = 1 since h^{0,2} = 1 = m^{0,2} + T^{0,2} with m^{0,2} = 0"
                .to_string(),
        )
    } else if let Some(h) = id.strip_prefix("k3:h=") {
        let h = parse_u32(id, h)?;
        (k3(K3Height::Finite(h))?, params([("h", h)]), format!("K3 surface of height {h}"))
    } else if let Some(rest) = id.strip_prefix("av:") {
        let (g, f) = parse_genus_rank(id, rest)?;
        let hw = if f + 1 >= g { "Hodge-Witt" } else { "not Hodge-Witt" };
        (
            abelian_variety(g, f)?,
            params([("g", g), ("f", f)]),
            format!("abelian variety of dimension {g} and p-rank {f} ({hw})"),
        )
    } else if let Some(rest) = id.strip_prefix("product:") {
        let (left, right) = rest.split_once('*').ok_or_else(|| unknown(id))?;
        let a = generate(left)?;
        let b = generate(right)?;
        let prod = kunneth_product(&a.profile, &b.profile);
        let hw = match prod.flags.hodge_witt {
            Some(true) => "Hodge-Witt",
            _ => "Hodge-Witt status unknown",
        };
        (
            prod,
            BTreeMap::new(),
            format!("product of {} and {} ({hw})", a.id, b.id),
        )
    } else {
        return Err(unknown(id));
    };
    Ok(CatalogEntry { id: profile.name.clone(), parameters, description, profile })
}

/// Entries for every id in [`STANDARD_IDS`].
pub fn standard_entries() -> Vec<CatalogEntry> {
    STANDARD_IDS
        .iter()
        .map(|id| generate(id).expect("standard ids generate"))
        .collect()
}
