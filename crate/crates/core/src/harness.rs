//! Seeded Monte Carlo experiments with CSV output.
//!
//! Trial `i` of an experiment draws all of its randomness from
//! `base_seed + i`, so any row can be reproduced on its own. Trials run in
//! parallel and rows come back in trial order.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::entropy;
use crate::editops::{insdel_channel_in, lcs_len, min_pairwise_edit_distance};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Symbol};
use crate::hamming_ecc::{random_generator_with, systematic_transform, DecoderStrategy, LinearCodeInstance};
use crate::linear_insdel::{insdel_decode_report, insdel_encode, InsdelCodeInstance, SystematicInsdelCode};

/// Largest `q^m` the exhaustive experiments enumerate.
pub const CODEWORD_BUDGET: u64 = 4096;

/// Rows plus an aggregate, as written by [`write_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult<R, S> {
    pub rows: Vec<R>,
    pub summary: S,
}

/// Three-sigma slack of a binomial proportion with success probability `p`.
pub fn three_sigma(p: f64, trials: usize) -> f64 {
    3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// Writes `# config: <json>`, the rows as CSV, then `# summary: <json>`.
pub fn write_csv<C, R, S, W>(config: &C, result: &ExperimentResult<R, S>, mut out: W) -> Result<()>
where
    C: Serialize,
    R: Serialize,
    S: Serialize,
    W: Write,
{
    let io = |e: std::io::Error| Error::usage(format!("write failed: {e}"));
    let json = |e: serde_json::Error| Error::usage(format!("json: {e}"));
    writeln!(out, "# config: {}", serde_json::to_string(config).map_err(json)?).map_err(io)?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        for row in &result.rows {
            w.serialize(row).map_err(|e| Error::usage(format!("csv: {e}")))?;
        }
        w.flush().map_err(io)?;
    }
    writeln!(out, "# summary: {}", serde_json::to_string(&result.summary).map_err(json)?).map_err(io)?;
    Ok(())
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::usage("trial count must be at least 1"));
    }
    Ok(())
}

fn check_budget(spec: &FieldSpec, m: usize) -> Result<()> {
    let total = (spec.q as f64).powi(m as i32);
    if total > CODEWORD_BUDGET as f64 {
        return Err(Error::capacity(format!(
            "q^m = {}^{m} exceeds {CODEWORD_BUDGET}",
            spec.q
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCodeConfig {
    pub field: FieldSpec,
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCodeRow {
    pub trial: usize,
    pub seed: u64,
    pub max_lcs: usize,
    pub failed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCodeSummary {
    pub trials: usize,
    pub failures: usize,
    pub failure_fraction: f64,
    pub analytic_bound: f64,
    pub slack: f64,
    pub passed: bool,
}

/// `min(1, q^{2m} 2^{2 H(delta) n} q^{(delta - 1) n})`.
pub fn lcs_failure_bound(q: u64, m: usize, n: usize, delta: f64) -> Result<f64> {
    let log2q = (q as f64).log2();
    let exp = 2.0 * m as f64 * log2q + 2.0 * entropy(delta)? * n as f64 + (delta - 1.0) * n as f64 * log2q;
    Ok(exp.exp2().min(1.0))
}

/// Samples random generators and records the largest LCS between codewords
/// of distinct messages.
pub fn random_code_distance_experiment(
    cfg: &RandomCodeConfig,
) -> Result<ExperimentResult<RandomCodeRow, RandomCodeSummary>> {
    check_trials(cfg.trials)?;
    check_budget(&cfg.field, cfg.m)?;
    let bound = lcs_failure_bound(cfg.field.q, cfg.m, cfg.n, cfg.delta)?;
    let threshold = (1.0 - cfg.delta) * cfg.n as f64;
    let rows = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = cfg.seed.wrapping_add(trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_generator_with(cfg.field, cfg.m, cfg.n, &mut rng)?;
            let words = codewords_of(&g)?;
            let mut max_lcs = 0;
            for (a, x) in words.iter().enumerate() {
                for y in &words[a + 1..] {
                    max_lcs = max_lcs.max(lcs_len(x, y));
                }
            }
            Ok(RandomCodeRow {
                trial,
                seed,
                max_lcs,
                failed: max_lcs as f64 >= threshold - 1e-9,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = rows.iter().filter(|r| r.failed).count();
    let fraction = failures as f64 / cfg.trials as f64;
    let slack = three_sigma(bound, cfg.trials);
    Ok(ExperimentResult {
        summary: RandomCodeSummary {
            trials: cfg.trials,
            failures,
            failure_fraction: fraction,
            analytic_bound: bound,
            slack,
            passed: fraction <= bound + slack,
        },
        rows,
    })
}

/// Codewords of every message, including rank-deficient generators.
fn codewords_of(g: &crate::hamming_ecc::GeneratorMatrix) -> Result<Vec<Vec<Symbol>>> {
    let field = crate::gf::Field::new(*g.spec())?;
    let q = field.q();
    let m = g.m();
    let total = q.pow(m as u32);
    Ok((0..total)
        .map(|mut idx| {
            let mut y = vec![0; g.n()];
            for row in g.rows() {
                let c = (idx % q) as Symbol;
                idx /= q;
                for (acc, &v) in y.iter_mut().zip(row) {
                    *acc = field.add(*acc, field.mul(c, v));
                }
            }
            y
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystematicConfig {
    pub field: FieldSpec,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    /// Also compare minimum edit distances before and after the transform.
    #[serde(default)]
    pub check_distance: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystematicRow {
    pub trial: usize,
    pub seed: u64,
    pub attempts: usize,
    pub first_full_rank: bool,
    pub same_codewords: bool,
    pub min_ed_original: Option<usize>,
    pub min_ed_systematic: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystematicSummary {
    pub trials: usize,
    pub full_rank_rate: f64,
    pub floor: f64,
    pub expected_rate: f64,
    pub slack: f64,
    pub above_floor: bool,
    pub matches_expected: bool,
    pub all_same_codewords: bool,
    pub passed: bool,
}

/// Probability `prod_{i=1}^{m} (1 - q^{-i})` that a uniform `m x m` matrix
/// over `F_q` is invertible.
pub fn full_rank_probability(q: u64, m: usize) -> f64 {
    (1..=m).map(|i| 1.0 - (q as f64).powi(-(i as i32))).product()
}

/// Samples generators until the left `m x m` block is invertible, then checks
/// that the systematic form spans the same code.
pub fn systematic_distance_experiment(
    cfg: &SystematicConfig,
) -> Result<ExperimentResult<SystematicRow, SystematicSummary>> {
    check_trials(cfg.trials)?;
    check_budget(&cfg.field, cfg.m)?;
    if cfg.n < cfg.m {
        return Err(Error::usage("need n >= m"));
    }
    let rows = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = cfg.seed.wrapping_add(trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut attempts = 0;
            let (g, sys) = loop {
                attempts += 1;
                let g = random_generator_with(cfg.field, cfg.m, cfg.n, &mut rng)?;
                match systematic_transform(&g) {
                    Ok(sys) => break (g, sys),
                    Err(Error::NotFullRank) if attempts < 10_000 => continue,
                    Err(e) => return Err(e),
                }
            };
            let mut before = codewords_of(&g)?;
            let mut after = codewords_of(&sys)?;
            let (ed0, ed1) = if cfg.check_distance {
                (
                    Some(min_pairwise_edit_distance(&before)?),
                    Some(min_pairwise_edit_distance(&after)?),
                )
            } else {
                (None, None)
            };
            before.sort();
            after.sort();
            Ok(SystematicRow {
                trial,
                seed,
                attempts,
                first_full_rank: attempts == 1,
                same_codewords: before == after,
                min_ed_original: ed0,
                min_ed_systematic: ed1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rate = rows.iter().filter(|r| r.first_full_rank).count() as f64 / cfg.trials as f64;
    let expected = full_rank_probability(cfg.field.q, cfg.m);
    let slack = three_sigma(expected, cfg.trials);
    let floor_slack = three_sigma(0.25, cfg.trials);
    let all_same = rows
        .iter()
        .all(|r| r.same_codewords && r.min_ed_original == r.min_ed_systematic);
    let above_floor = rate >= 0.25 - floor_slack;
    let matches_expected = (rate - expected).abs() <= slack;
    Ok(ExperimentResult {
        summary: SystematicSummary {
            trials: cfg.trials,
            full_rank_rate: rate,
            floor: 0.25,
            expected_rate: expected,
            slack,
            above_floor,
            matches_expected,
            all_same_codewords: all_same,
            passed: above_floor && matches_expected && all_same,
        },
        rows,
    })
}

/// Where the channel puts its edits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// Uniform over the whole word.
    Uniform,
    /// Deletions hit non-zero symbols, insertions land next to them.
    Targeted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Largest number of edits tried.
    pub k_max: usize,
    /// Trials per value of `k`.
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "uniform")]
    pub placement: Placement,
}

fn uniform() -> Placement {
    Placement::Uniform
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    pub insertions: usize,
    pub deletions: usize,
    pub success: bool,
    pub unmatched_nonzeros: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub k: usize,
    pub success_fraction: f64,
    pub max_unmatched_nonzeros: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub kappa: usize,
    pub points: Vec<SweepPoint>,
    /// Every trial with `k <= kappa` decoded.
    pub passed: bool,
    /// Every trial had at most `3k` unmatched non-zeros.
    pub unmatched_within_3k: bool,
}

fn random_message<R: Rng>(code: &LinearCodeInstance, rng: &mut R) -> Vec<Symbol> {
    let q = code.field().q();
    (0..code.m()).map(|_| rng.gen_range(0..q) as Symbol).collect()
}

/// Applies `k` edits to `z` and reports how many were insertions.
pub fn corrupt_insdel<R: Rng>(
    z: &[Symbol],
    k: usize,
    q: u64,
    placement: Placement,
    rng: &mut R,
) -> Result<(Vec<Symbol>, usize)> {
    let del = (k - rng.gen_range(0..=k)).min(z.len());
    let ins = k - del;
    match placement {
        Placement::Uniform => Ok((insdel_channel_in(z, 0..z.len(), ins, del, q, rng)?, ins)),
        Placement::Targeted => {
            let nonzero: Vec<usize> = (0..z.len()).filter(|&i| z[i] != 0).collect();
            let mut out = z.to_vec();
            let mut dels: Vec<usize> = if nonzero.len() >= del {
                rand::seq::index::sample(rng, nonzero.len(), del)
                    .into_iter()
                    .map(|i| nonzero[i])
                    .collect()
            } else {
                rand::seq::index::sample(rng, z.len(), del).into_vec()
            };
            dels.sort_unstable();
            for &p in dels.iter().rev() {
                out.remove(p);
            }
            for _ in 0..ins {
                let anchor = if nonzero.is_empty() {
                    rng.gen_range(0..=out.len())
                } else {
                    let a = nonzero[rng.gen_range(0..nonzero.len())];
                    (a + rng.gen_range(0..=4)).saturating_sub(2).min(out.len())
                };
                out.insert(anchor, rng.gen_range(1..q.max(2)) as Symbol);
            }
            Ok((out, ins))
        }
    }
}

/// Success fraction of channel-then-decode for `k = 0..=k_max`.
pub fn decode_success_sweep(
    code: &InsdelCodeInstance,
    cfg: &SweepConfig,
) -> Result<ExperimentResult<SweepRow, SweepSummary>> {
    check_trials(cfg.trials)?;
    let q = code.inner().field().q();
    let total = (cfg.k_max + 1) * cfg.trials;
    let rows = (0..total)
        .into_par_iter()
        .map(|trial| {
            let k = trial / cfg.trials;
            let seed = cfg.seed.wrapping_add(trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_message(code.inner(), &mut rng);
            let z = insdel_encode(code, &x)?;
            let (r, ins) = corrupt_insdel(&z, k, q, cfg.placement, &mut rng)?;
            let report = insdel_decode_report(code, &r);
            Ok(SweepRow {
                k,
                trial,
                seed,
                insertions: ins,
                deletions: k - ins,
                success: report.message.as_ref().ok() == Some(&x),
                unmatched_nonzeros: report.unmatched_nonzeros,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points = (0..=cfg.k_max)
        .map(|k| {
            let of_k: Vec<&SweepRow> = rows.iter().filter(|r| r.k == k).collect();
            SweepPoint {
                k,
                success_fraction: of_k.iter().filter(|r| r.success).count() as f64 / of_k.len() as f64,
                max_unmatched_nonzeros: of_k.iter().map(|r| r.unmatched_nonzeros).max().unwrap_or(0),
            }
        })
        .collect();
    Ok(ExperimentResult {
        summary: SweepSummary {
            kappa: code.kappa(),
            passed: rows.iter().filter(|r| r.k <= code.kappa()).all(|r| r.success),
            unmatched_within_3k: rows.iter().all(|r| r.unmatched_nonzeros <= 3 * r.k),
            points,
        },
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrapperConfig {
    pub trials: usize,
    pub seed: u64,
}

/// Where the wrapper experiment placed its edits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WrapperPlacement {
    Prefix,
    Codeword,
    Split,
    Seam,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrapperRow {
    pub trial: usize,
    pub seed: u64,
    pub placement: WrapperPlacement,
    pub prefix_edits: usize,
    pub codeword_edits: usize,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrapperSummary {
    pub kappa: usize,
    pub m: usize,
    pub n: usize,
    pub rate: f64,
    pub success_fraction: f64,
    pub passed: bool,
}

/// Round trips through the systematic wrapper with `k <= kappa` edits split
/// between the message prefix and the codeword.
pub fn systematic_insdel_wrapper_experiment(
    code: &InsdelCodeInstance,
    cfg: &WrapperConfig,
) -> Result<ExperimentResult<WrapperRow, WrapperSummary>> {
    check_trials(cfg.trials)?;
    let sys = SystematicInsdelCode::new(code.clone());
    let q = code.inner().field().q();
    let (m, kappa) = (sys.m(), sys.kappa());
    let placements = [
        WrapperPlacement::Prefix,
        WrapperPlacement::Codeword,
        WrapperPlacement::Split,
        WrapperPlacement::Seam,
    ];
    let rows = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = cfg.seed.wrapping_add(trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_message(code.inner(), &mut rng);
            let w = sys.encode(&x)?;
            let k = if kappa == 0 { 0 } else { rng.gen_range(1..=kappa) };
            let placement = placements[trial % placements.len()];
            let (in_prefix, window) = match placement {
                WrapperPlacement::Prefix => (k, 0..m),
                WrapperPlacement::Codeword => (0, m..w.len()),
                WrapperPlacement::Split => (rng.gen_range(0..=k), 0..m),
                WrapperPlacement::Seam => (k, m.saturating_sub(k)..(m + k).min(w.len())),
            };
            let in_codeword = k - in_prefix;
            let mut r = w.clone();
            if in_codeword > 0 {
                let ins = rng.gen_range(0..=in_codeword);
                r = insdel_channel_in(&r, m..r.len(), ins, in_codeword - ins, q, &mut rng)?;
            }
            if in_prefix > 0 {
                let ins = rng.gen_range(0..=in_prefix);
                let del = (in_prefix - ins).min(window.len());
                r = insdel_channel_in(&r, window, in_prefix - del, del, q, &mut rng)?;
            }
            Ok(WrapperRow {
                trial,
                seed,
                placement,
                prefix_edits: in_prefix,
                codeword_edits: in_codeword,
                success: sys.decode(&r).ok() == Some(x),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().filter(|r| r.success).count();
    Ok(ExperimentResult {
        summary: WrapperSummary {
            kappa,
            m,
            n: sys.n(),
            rate: sys.rate(),
            success_fraction: ok as f64 / cfg.trials as f64,
            passed: ok == cfg.trials,
        },
        rows,
    })
}

/// RS inner code over `GF(2^degree)` with points `0..n_c`.
pub fn rs_inner(degree: u32, n_c: usize, m: usize) -> Result<LinearCodeInstance> {
    crate::hamming_ecc::rs_build_default(FieldSpec::binary(degree)?, n_c, m)?
        .with_strategy(DecoderStrategy::ReedSolomon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn delta_zero_fails_only_on_collisions() {
        let cfg = RandomCodeConfig {
            field: binary(),
            n: 8,
            m: 1,
            delta: 0.0,
            trials: 40,
            seed: 3,
        };
        let r = random_code_distance_experiment(&cfg).unwrap();
        for row in &r.rows {
            let mut rng = ChaCha8Rng::seed_from_u64(row.seed);
            let g = random_generator_with(binary(), 1, 8, &mut rng).unwrap();
            let zero_row = g.rows()[0].iter().all(|&v| v == 0);
            assert_eq!(row.failed, zero_row);
        }
    }

    #[test]
    fn random_code_bound_consistent() {
        let cfg = RandomCodeConfig {
            field: binary(),
            n: 8,
            m: 1,
            delta: 0.5,
            trials: 200,
            seed: 1,
        };
        let r = random_code_distance_experiment(&cfg).unwrap();
        assert!(r.summary.passed);
        let again = random_code_distance_experiment(&RandomCodeConfig { trials: 1, ..cfg.clone() }).unwrap();
        assert_eq!(again.rows[0], r.rows[0]);
    }

    #[test]
    fn budget_guard() {
        let cfg = RandomCodeConfig {
            field: binary(),
            n: 20,
            m: 13,
            delta: 0.5,
            trials: 1,
            seed: 1,
        };
        assert!(matches!(random_code_distance_experiment(&cfg), Err(Error::Capacity(_))));
    }

    #[test]
    fn full_rank_product() {
        assert!((full_rank_probability(2, 1) - 0.5).abs() < 1e-15);
        assert!((full_rank_probability(3, 2) - (2.0 / 3.0) * (8.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn systematic_small() {
        let cfg = SystematicConfig {
            field: FieldSpec::prime(3).unwrap(),
            n: 5,
            m: 2,
            trials: 300,
            seed: 11,
            check_distance: true,
        };
        let r = systematic_distance_experiment(&cfg).unwrap();
        assert!(r.summary.all_same_codewords);
        assert!(r.summary.matches_expected, "{:?}", r.summary);
    }

    #[test]
    fn csv_layout() {
        let cfg = RandomCodeConfig {
            field: binary(),
            n: 6,
            m: 1,
            delta: 0.5,
            trials: 3,
            seed: 0,
        };
        let r = random_code_distance_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&cfg, &r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# config: {"));
        assert_eq!(lines[1], "trial,seed,max_lcs,failed");
        assert_eq!(lines.len(), 6);
        assert!(lines[5].starts_with("# summary: {"));
    }

    #[test]
    fn targeted_corruption_counts() {
        let z: Vec<Symbol> = vec![0, 0, 3, 0, 0, 5, 0, 1, 0];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 0..5 {
            let (r, ins) = corrupt_insdel(&z, k, 8, Placement::Targeted, &mut rng).unwrap();
            assert_eq!(r.len() + 2 * (k - ins), z.len() + k);
            assert!(crate::editops::edit_distance_len(&z, &r) <= k);
        }
    }
}
