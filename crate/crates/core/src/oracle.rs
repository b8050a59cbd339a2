//! Brute-force certification of the closed forms.
//!
//! [`brute_force_capacity`] enumerates every effective relay scheme and
//! takes the best rate; it shares nothing with the capacity formulas except
//! the rate definition itself. The lemma checkers exercise the two linear
//! algebra facts the capacity argument leans on.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::capacity::capacity;
use crate::gf2::Gf2Matrix;
use crate::network::{achievable_rate, embed_effective, EffectiveScheme, NetworkParams};

pub const DEFAULT_BIT_BUDGET: usize = 20;

/// Effective scheme number `index`: the low `n3 * max(n1, m)` bits fill
/// `block_a` row by row, the remaining bits fill `block_b`.
pub fn effective_scheme_from_index(p: &NetworkParams, index: u64) -> EffectiveScheme {
    let fill = |rows: usize, cols: usize, mut bits: u64| {
        let mut block = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if bits & 1 == 1 {
                    block.set(r, c, true);
                }
                bits >>= 1;
            }
        }
        block
    };
    let a_bits = p.n3() * p.effective_width_a();
    EffectiveScheme {
        block_a: fill(p.n3(), p.effective_width_a(), index),
        block_b: fill(
            p.n4(),
            p.effective_width_b(),
            index.checked_shr(a_bits as u32).unwrap_or(0),
        ),
    }
}

/// Maximum rate over all effective schemes, or `None` when there are more
/// than `2^bit_budget` of them.
pub fn brute_force_capacity(p: &NetworkParams, bit_budget: usize) -> Option<usize> {
    let bits = p.effective_bits();
    if bits > bit_budget || bits >= 64 {
        return None;
    }
    let q = p.q();
    let best = (0..1u64 << bits)
        .into_par_iter()
        .map(|index| {
            let scheme = embed_effective(p, &effective_scheme_from_index(p, index))
                .expect("blocks sized from p");
            achievable_rate(p, &scheme).expect("scheme built at dimension q")
        })
        .try_fold(
            || 0,
            |best, rate| {
                let best = best.max(rate);
                // Nothing beats rank q; stop scanning this chunk.
                if best == q {
                    Err(best)
                } else {
                    Ok(best)
                }
            },
        )
        .map(|r| r.unwrap_or_else(|b| b))
        .max()
        .unwrap_or(0);
    Some(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub params: NetworkParams,
    pub closed_form: usize,
    pub brute_force: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub grid: String,
    pub max_gain: usize,
    pub bit_budget: usize,
    pub total_points: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<NetworkParams>,
    /// Wall-clock time; left out of serialized output so reports stay
    /// byte-stable across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "grid          {}", self.grid);
        let _ = writeln!(out, "bit budget    {}", self.bit_budget);
        let _ = writeln!(out, "points        {}", self.total_points);
        let _ = writeln!(out, "checked       {}", self.checked);
        let _ = writeln!(out, "skipped       {}", self.skipped.len());
        let _ = writeln!(out, "mismatches    {}", self.mismatches.len());
        if !self.mismatches.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "{:>3} {:>3} {:>3} {:>3} {:>3}  closed  brute", "n1", "n2", "n3", "n4", "m");
            for mm in &self.mismatches {
                let p = &mm.params;
                let _ = writeln!(
                    out,
                    "{:>3} {:>3} {:>3} {:>3} {:>3}  {:>6}  {:>5}",
                    p.n1(),
                    p.n2(),
                    p.n3(),
                    p.n4(),
                    p.m(),
                    mm.closed_form,
                    mm.brute_force
                );
            }
        }
        for p in &self.skipped {
            let _ = writeln!(out, "skipped: {p} ({} bits)", p.effective_bits());
        }
        let _ = writeln!(out, "result        {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Compares closed form and brute force on every point of `[0, max_gain]^5`.
pub fn verify_grid(max_gain: usize, bit_budget: usize) -> VerificationReport {
    let start = Instant::now();
    let points: Vec<NetworkParams> = NetworkParams::grid(max_gain).collect();
    let results: Vec<(NetworkParams, usize, Option<usize>)> = points
        .par_iter()
        .map(|p| (*p, capacity(p).capacity, brute_force_capacity(p, bit_budget)))
        .collect();

    let mut mismatches = Vec::new();
    let mut skipped = Vec::new();
    for (params, closed_form, brute) in results {
        match brute {
            None => skipped.push(params),
            Some(brute_force) if brute_force != closed_form => mismatches.push(Mismatch {
                params,
                closed_form,
                brute_force,
            }),
            Some(_) => {}
        }
    }
    VerificationReport {
        grid: format!("[0,{max_gain}]^5"),
        max_gain,
        bit_budget,
        total_points: points.len(),
        checked: points.len() - skipped.len(),
        mismatches,
        skipped,
        elapsed: start.elapsed(),
    }
}

/// All subspaces of `F_2^dim` as (membership mask over the `2^dim` vectors,
/// basis vectors).
fn all_subspaces(dim: usize) -> Vec<(u64, Vec<u64>)> {
    let span_of = |basis: &[u64]| -> u64 {
        let mut members = 1u64; // the zero vector
        for &b in basis {
            let mut grown = members;
            for v in 0..1u64 << dim {
                if members >> v & 1 == 1 {
                    grown |= 1 << (v ^ b);
                }
            }
            members = grown;
        }
        members
    };
    let mut seen = HashSet::new();
    let mut out = vec![(1u64, Vec::new())];
    seen.insert(1u64);
    let mut frontier = 0;
    while frontier < out.len() {
        let (members, basis) = out[frontier].clone();
        frontier += 1;
        for v in 1..1u64 << dim {
            if members >> v & 1 == 0 {
                let mut next = basis.clone();
                next.push(v);
                let span = span_of(&next);
                if seen.insert(span) {
                    out.push((span, next));
                }
            }
        }
    }
    out
}

fn basis_matrix(dim: usize, basis: &[u64]) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(dim, basis.len());
    for (c, &v) in basis.iter().enumerate() {
        m.set_block(0, c, &Gf2Matrix::column_from_mask(dim, v));
    }
    m
}

/// For every pair of subspaces of `F_2^dim`, checks that each element of
/// `S1 + S2` splits uniquely as `s1 + s2` exactly when `S1 ∩ S2 = {0}`.
/// Uniqueness is counted by enumeration; the intersection comes from
/// [`Gf2Matrix::rank_intersection`].
pub fn check_lemma1(dim: usize) -> bool {
    assert!(dim <= 5, "exhaustive subspace enumeration is limited to dim <= 5");
    let spaces = all_subspaces(dim);
    let elements = |members: u64| (0..1u64 << dim).filter(move |v| members >> v & 1 == 1);
    spaces.par_iter().all(|(m1, b1)| {
        let f = basis_matrix(dim, b1);
        spaces.iter().all(|(m2, b2)| {
            let mut hits = vec![0u32; 1 << dim];
            for s1 in elements(*m1) {
                for s2 in elements(*m2) {
                    hits[(s1 ^ s2) as usize] += 1;
                }
            }
            let unique = hits.iter().all(|&h| h <= 1);
            let trivial = f
                .rank_intersection(&basis_matrix(dim, b2))
                .expect("same ambient dimension")
                == 0;
            unique == trivial
        })
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.random::<bool>() {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Samples `F`, `G` that agree on all but their last `alpha` rows and checks
/// `rank_deficit(F, G) <= min(cols, alpha)`, along with the identity
/// `rank(F) - rank(F ∩ G) = rank([F G]) - rank(G)`.
pub fn check_lemma2(trials: usize, max_rows: usize, max_cols: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| {
        let rows = rng.random_range(0..=max_rows);
        let cols = rng.random_range(0..=max_cols);
        let alpha = rng.random_range(0..=rows);
        let f = random_matrix(&mut rng, rows, cols);
        let tail = random_matrix(&mut rng, alpha, cols);
        let g = f.submatrix(0..rows - alpha, 0..cols).vconcat(&tail).unwrap();
        let deficit = f.rank_deficit(&g).unwrap();
        let via_intersection = f.rank() - f.rank_intersection(&g).unwrap();
        deficit == via_intersection && deficit <= cols.min(alpha)
    })
}
