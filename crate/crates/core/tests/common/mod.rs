#![allow(dead_code)]

use std::collections::BTreeMap;

use hodgewitt::{CohomologyProfile, Dominoes, Flags, HodgeTable, Rational, SlopeMultiset};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Literal evaluation of the slope-number formula: sum over the windows
/// `[i, i+1)` and `[i-1, i)` for every column, no floor shortcut.
pub fn slope_numbers_oracle(slopes: &[(Rational, u64)], degree: usize) -> Vec<Rational> {
    (0..=degree as i64)
        .map(|i| {
            let lo = Rational::from_integer(i);
            let hi = Rational::from_integer(i + 1);
            let prev = Rational::from_integer(i - 1);
            let mut acc = Rational::zero();
            for (lambda, mult) in slopes {
                let h = Rational::from(*mult);
                if *lambda >= lo && *lambda < hi {
                    acc += &(&hi - lambda) * &h;
                }
                if *lambda >= prev && *lambda < lo {
                    acc += &(&(lambda - &lo) + &Rational::one()) * &h;
                }
            }
            acc
        })
        .collect()
}

/// Exterior power by enumerating index subsets of the expanded copy list.
pub fn wedge_oracle(slopes: &[(Rational, u64)], n: usize) -> BTreeMap<Rational, u64> {
    let copies: Vec<Rational> = slopes
        .iter()
        .flat_map(|(s, m)| std::iter::repeat_n(s.clone(), *m as usize))
        .collect();
    let mut out = BTreeMap::new();
    let k = copies.len();
    for mask in 0u64..(1u64 << k) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let sum: Rational = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| copies[b].clone()).sum();
        *out.entry(sum).or_insert(0) += 1;
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random self-dual slope multiset for degree `n` of a `dim`-dimensional
/// variety, with integral break points, slopes in
/// `[max(0, n-dim), min(n, dim)]` and rank at most `max_rank`.
pub fn random_multiset(rng: &mut impl Rng, n: usize, dim: usize, max_rank: u64) -> SlopeMultiset {
    let lo = n.saturating_sub(dim) as i64;
    let n_i = n as i64;
    let mut entries: Vec<(Rational, u64)> = Vec::new();
    let mut rank = 0u64;

    let pairs = rng.gen_range(0..=4);
    for _ in 0..pairs {
        let b = rng.gen_range(1..=4i64);
        // a/b in [lo, n/2): lo*b <= a and 2a < n*b
        let a_min = lo * b;
        let a_max = (n_i * b - 1) / 2;
        if a_max < a_min || 2 * a_min >= n_i * b {
            break;
        }
        let a = rng.gen_range(a_min..=a_max);
        let len = (b * rng.gen_range(1..=2i64)) as u64;
        if rank + 2 * len > max_rank {
            break;
        }
        let slope = Rational::new(a, b);
        let dual = &Rational::from_integer(n_i) - &slope;
        entries.push((slope, len));
        entries.push((dual, len));
        rank += 2 * len;
    }

    let middle = if n.is_multiple_of(2) { rng.gen_range(0..=3u64) } else { 2 * rng.gen_range(0..=1u64) };
    if middle > 0 && rank + middle <= max_rank {
        entries.push((Rational::new(n_i, 2), middle));
    }
    SlopeMultiset::new(entries)
}

/// Random profile of dimension 1..=4 whose slope data is self-dual with
/// integral break points and `b_n <= 40`. With `with_hodge`, the Hodge
/// numbers are set to the slope numbers.
pub fn random_profile(rng: &mut impl Rng, index: usize, with_hodge: bool) -> CohomologyProfile {
    let dim = rng.gen_range(1..=4usize);
    let mut slopes = BTreeMap::new();
    for n in 0..=2 * dim {
        let s = if n == 0 {
            SlopeMultiset::point(Rational::zero())
        } else if n == 2 * dim {
            SlopeMultiset::point(Rational::from(dim as u64))
        } else {
            random_multiset(rng, n, dim, 40)
        };
        slopes.insert(n, s);
    }
    let mut profile = CohomologyProfile {
        name: format!("random-{index}"),
        dim,
        slopes,
        hodge: None,
        dominoes: Dominoes::known_zero(),
        flags: Flags::all_true(),
    };
    if with_hodge {
        let m = hodgewitt::slope::slope_number_table(&profile);
        profile.hodge = Some(HodgeTable::from_rows(m.rows().map(|(n, row)| {
            (n, row.iter().map(|v| v.to_i64().expect("integral") as u64).collect())
        })));
    }
    profile
}

/// The fixed-seed corpus used by the acceptance suite and property tests.
pub fn corpus(size: usize, seed: u64) -> Vec<CohomologyProfile> {
    let mut rng = rng(seed);
    (0..size).map(|k| random_profile(&mut rng, k, k % 2 == 0)).collect()
}
