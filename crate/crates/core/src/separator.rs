//! Synchronization separator sequences.
//!
//! A separator sequence is a list of zero-run lengths `a_1, ..., a_n`, each in
//! `1..=a`. It describes the template `0^{a_1} ? 0^{a_2} ? ... 0^{a_n} ?`; the
//! `i`-th `?` sits at position `p_i = sum_{k <= i} (a_k + 1)`.
//!
//! A self-matching pairs `?`-marks of the template with `?`-marks of itself,
//! monotonically in both coordinates. A match `(i, j)` is undesired when
//! `i != j` and its gap to the previous match agrees on both sides
//! (`p_i - p_i' == p_j - p_j'`), or, for the first match, `p_i == p_j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::prg::{PowerPrg, PrgSpec};

/// Largest sequence [`max_undesired`] will analyze by default.
pub const DEFAULT_VERIFY_BUDGET: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeparatorJson", into = "SeparatorJson")]
pub struct SeparatorSequence {
    a: u32,
    runs: Vec<u32>,
    positions: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SeparatorJson {
    n: usize,
    a: u32,
    runs: Vec<u32>,
}

impl From<SeparatorSequence> for SeparatorJson {
    fn from(s: SeparatorSequence) -> Self {
        SeparatorJson {
            n: s.runs.len(),
            a: s.a,
            runs: s.runs,
        }
    }
}

impl TryFrom<SeparatorJson> for SeparatorSequence {
    type Error = Error;

    fn try_from(j: SeparatorJson) -> Result<Self> {
        if j.n != j.runs.len() {
            return Err(Error::usage("separator n disagrees with the number of runs"));
        }
        SeparatorSequence::new(j.runs, j.a)
    }
}

impl SeparatorSequence {
    pub fn new(runs: Vec<u32>, a: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::usage("maximum run length must be at least 1"));
        }
        if let Some(bad) = runs.iter().find(|&&r| r == 0 || r > a) {
            return Err(Error::usage(format!("run length {bad} outside 1..={a}")));
        }
        let positions = runs
            .iter()
            .scan(0u64, |acc, &r| {
                *acc += u64::from(r) + 1;
                Some(*acc)
            })
            .collect();
        Ok(SeparatorSequence { a, runs, positions })
    }

    pub fn n(&self) -> usize {
        self.runs.len()
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// 1-based positions `p_1 < ... < p_n` of the `?`-marks.
    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    /// Template length `p_n = n + sum a_i`.
    pub fn template_len(&self) -> u64 {
        self.positions.last().copied().unwrap_or(0)
    }

    /// `p_i` with the convention `p_0 = 0`; `i` is 1-based.
    fn p(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.positions[i - 1]
        }
    }

    /// 1-based index `j` with `p_j == pos`, where `p_0 = 0` counts.
    fn index_of(&self, pos: u64) -> Option<usize> {
        if pos == 0 {
            return Some(0);
        }
        self.positions.binary_search(&pos).ok().map(|k| k + 1)
    }

    /// Whether `(i, j)` is undesired after `(i', j')` (`(0, 0)` for the first
    /// match). Indices are 1-based.
    pub fn is_undesired(&self, prev: (usize, usize), cur: (usize, usize)) -> bool {
        cur.0 != cur.1 && self.p(cur.0) - self.p(prev.0) == self.p(cur.1) - self.p(prev.1)
    }
}

/// Run lengths i.i.d. uniform on `1..=a`.
pub fn sample_separator(n: usize, a: u32, seed: u64) -> Result<SeparatorSequence> {
    if n == 0 || a == 0 {
        return Err(Error::usage("need n >= 1 and a >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let runs = (0..n).map(|_| rng.gen_range(1..=a)).collect();
    SeparatorSequence::new(runs, a)
}

/// Exact maximum number of undesired matches over all self-matchings.
///
/// `g[i][j]` is the best count among matchings whose last match is `(i, j)`;
/// undesired predecessors are found by position lookup, the rest through a
/// running prefix maximum.
pub fn max_undesired(seq: &SeparatorSequence) -> Result<usize> {
    max_undesired_with_budget(seq, DEFAULT_VERIFY_BUDGET)
}

pub fn max_undesired_with_budget(seq: &SeparatorSequence, budget: usize) -> Result<usize> {
    if seq.n() > budget {
        return Err(Error::capacity(format!(
            "sequence length {} exceeds verifier budget {budget}",
            seq.n()
        )));
    }
    Ok(undesired_dp(seq, usize::MAX))
}

/// True iff every self-matching has at most `bound` undesired matches; stops
/// as soon as the bound is exceeded.
pub fn undesired_at_most(seq: &SeparatorSequence, bound: usize) -> bool {
    undesired_dp(seq, bound) <= bound
}

fn undesired_dp(seq: &SeparatorSequence, stop_above: usize) -> usize {
    let n = seq.n();
    // 1-based tables with a zero border
    let mut g = vec![vec![0usize; n + 1]; n + 1];
    let mut prefix = vec![vec![0usize; n + 1]; n + 1];
    let mut best = 0;
    for i in 1..=n {
        for j in 1..=n {
            let mut v = prefix[i - 1][j - 1];
            if i != j {
                if seq.p(i) == seq.p(j) {
                    v = v.max(1);
                }
                for ip in 1..i {
                    let gap = seq.p(i) - seq.p(ip);
                    if gap >= seq.p(j) {
                        continue;
                    }
                    if let Some(jp) = seq.index_of(seq.p(j) - gap) {
                        if jp >= 1 && jp < j {
                            v = v.max(g[ip][jp] + 1);
                        }
                    }
                }
            }
            g[i][j] = v;
            best = best.max(v);
            prefix[i][j] = v.max(prefix[i - 1][j]).max(prefix[i][j - 1]);
        }
        if best > stop_above {
            return best;
        }
    }
    best
}

/// Tunables for [`local_check`] and [`construct_explicit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatorConfig {
    /// `a` is the smallest power of two at least `(n / lambda)^exponent`.
    pub exponent: u32,
    /// Constant `c` of the local check.
    pub c: f64,
    /// Generator slack; `None` means `1 / n`.
    pub epsilon: Option<f64>,
    /// Sequences this long also get the exact verifier.
    pub verify_budget: usize,
    /// Stop the seed search after this many seeds.
    pub max_seeds: Option<u64>,
}

impl Default for SeparatorConfig {
    fn default() -> Self {
        SeparatorConfig {
            exponent: 3,
            c: 4.0,
            epsilon: None,
            verify_budget: DEFAULT_VERIFY_BUDGET,
            max_seeds: None,
        }
    }
}

/// Result of [`local_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCheck {
    pub passed: bool,
    /// Largest undesired count found, saturated at `threshold`.
    pub lambda0: usize,
    /// Pass iff `lambda0 < threshold`.
    pub threshold: usize,
    /// Maximum `|u| + |v|`, in runs.
    pub window: f64,
    /// Maximum matching size examined.
    pub delta_prime: usize,
    pub witness: Option<LocalWitness>,
}

/// Substring pair and bad-only matching attaining `lambda0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalWitness {
    /// `u` spans runs `u.0 + 1 ..= u.1` (1-based), likewise `v`.
    pub u: (usize, usize),
    pub v: (usize, usize),
    pub matches: Vec<(usize, usize)>,
    pub undesired: usize,
}

/// Windowed check over substring pairs.
///
/// With `L = ln n / ln(n / lambda)`, examines every pair of substrings `u, v`
/// with `|u| + |v| <= c (2n / lambda) L` and every matching of at most
/// `2T` bad matches between them, where `T = min(ceil(c L), lambda + 1)`.
/// Inside a substring pair the first match is measured from the substring
/// starts. Passes iff every such matching has fewer than `T` undesired
/// matches.
pub fn local_check(seq: &SeparatorSequence, lambda: usize, c: f64) -> LocalCheck {
    let n = seq.n();
    let ratio = n as f64 / lambda as f64;
    let l = if n <= 1 || ratio <= 1.0 {
        0.0
    } else {
        (n as f64).ln() / ratio.ln()
    };
    let c_l = (c * l).ceil() as usize;
    let threshold = c_l.min(lambda + 1).max(1);
    let window = if lambda == 0 {
        f64::INFINITY
    } else {
        c * (2.0 * n as f64 / lambda as f64) * l
    };
    let delta_prime = 2 * threshold;
    if lambda >= n {
        return LocalCheck {
            passed: true,
            lambda0: 0,
            threshold,
            window,
            delta_prime,
            witness: None,
        };
    }
    let search = LocalSearch::run(seq, delta_prime, threshold);
    let (lambda0, witness) = search.best_within(seq, window);
    LocalCheck {
        passed: lambda0 < threshold,
        lambda0,
        threshold,
        window,
        delta_prime,
        witness: (lambda0 >= threshold).then_some(witness).flatten(),
    }
}

const NONE: i16 = i16::MIN;

/// `sigma[k][u][i][j]`: largest `s1 + s2` over bad-only matchings of `k + 1`
/// matches ending at `(i, j)` with at least `u` undesired matches.
struct LocalSearch {
    n: usize,
    cap: usize,
    sigma: Vec<Vec<Vec<i16>>>,
}

impl LocalSearch {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) + j
    }

    fn run(seq: &SeparatorSequence, max_size: usize, cap: usize) -> Self {
        let n = seq.n();
        let cells = (n + 1) * (n + 1);
        let mut s = LocalSearch {
            n,
            cap,
            sigma: vec![vec![vec![NONE; cells]; cap + 1]; max_size],
        };
        // undesired predecessors for each bad (i, j)
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); cells];
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let list = &mut preds[s.idx(i, j)];
                for ip in 1..i {
                    let gap = seq.p(i) - seq.p(ip);
                    if gap >= seq.p(j) {
                        continue;
                    }
                    if let Some(jp) = seq.index_of(seq.p(j) - gap) {
                        if jp >= 1 && jp < j && jp != ip {
                            list.push(ip * (n + 1) + jp);
                        }
                    }
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let at = s.idx(i, j);
                s.sigma[0][0][at] = (i + j - 2) as i16;
                if let Some(start) = free_start(seq, i, j) {
                    s.sigma[0][1.min(cap)][at] = start as i16;
                }
            }
        }
        s.saturate_layer(0);
        for k in 1..max_size {
            let (lower, upper) = s.sigma.split_at_mut(k);
            let prev = &lower[k - 1];
            let cur = &mut upper[0];
            let prefix: Vec<Vec<i16>> = prev.iter().map(|layer| prefix_max(layer, n)).collect();
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let at = i * (n + 1) + j;
                    let diag = (i - 1) * (n + 1) + (j - 1);
                    for u in 0..=cap {
                        let mut v = prefix[u][diag];
                        let from = u.saturating_sub(1);
                        for &pp in &preds[at] {
                            v = v.max(prev[from][pp]);
                        }
                        cur[u][at] = v;
                    }
                }
            }
            s.saturate_layer(k);
        }
        s
    }

    /// Enforces "at least u" monotonicity within a layer.
    fn saturate_layer(&mut self, k: usize) {
        for u in (0..self.cap).rev() {
            let (lo, hi) = self.sigma[k].split_at_mut(u + 1);
            for (a, &b) in lo[u].iter_mut().zip(&hi[0]) {
                *a = (*a).max(b);
            }
        }
    }

    fn best_within(&self, seq: &SeparatorSequence, window: f64) -> (usize, Option<LocalWitness>) {
        let n = self.n;
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for k in 0..self.sigma.len() {
            for u in (0..=self.cap).rev() {
                if best.is_some_and(|b| b.0 >= u) {
                    break;
                }
                for i in 1..=n {
                    for j in 1..=n {
                        let s = self.sigma[k][u][self.idx(i, j)];
                        if s != NONE && ((i + j) as f64 - f64::from(s)) <= window {
                            best = Some((u, k, i, j));
                        }
                    }
                }
            }
        }
        match best {
            None => (0, None),
            Some((u, k, i, j)) => (u, Some(self.witness(seq, u, k, i, j))),
        }
    }

    fn witness(&self, seq: &SeparatorSequence, u: usize, k: usize, i: usize, j: usize) -> LocalWitness {
        let sigma = self.sigma[k][u][self.idx(i, j)];
        let mut matches = vec![(i, j)];
        let (mut ci, mut cj, mut cu) = (i, j, u);
        for layer in (0..k).rev() {
            let mut found = None;
            'search: for ip in 1..ci {
                for jp in 1..cj {
                    if ip == jp || self.sigma[layer][0][self.idx(ip, jp)] == NONE {
                        continue;
                    }
                    let ind = usize::from(seq.is_undesired((ip, jp), (ci, cj)));
                    let need = cu.saturating_sub(ind);
                    if self.sigma[layer][need][self.idx(ip, jp)] == sigma {
                        found = Some((ip, jp, need));
                        break 'search;
                    }
                }
            }
            let (ip, jp, need) = found.expect("dp value has a predecessor");
            matches.push((ip, jp));
            ci = ip;
            cj = jp;
            cu = need;
        }
        matches.reverse();
        let (fi, fj) = matches[0];
        let (s1, s2) = if cu >= 1 {
            free_start_pair(seq, fi, fj, sigma as usize).expect("first match start exists")
        } else {
            let s1 = (sigma as usize).min(fi - 1);
            (s1, sigma as usize - s1)
        };
        let undesired = count_local_undesired(seq, &matches, (s1, s2));
        LocalWitness {
            u: (s1, i),
            v: (s2, j),
            matches,
            undesired,
        }
    }
}

fn prefix_max(layer: &[i16], n: usize) -> Vec<i16> {
    let w = n + 1;
    let mut out = vec![NONE; layer.len()];
    for i in 1..=n {
        for j in 1..=n {
            out[i * w + j] = layer[i * w + j]
                .max(out[(i - 1) * w + j])
                .max(out[i * w + j - 1]);
        }
    }
    out
}

/// Largest `s1 + s2` with `s1 < i`, `s2 < j`, `p_i - p_s1 == p_j - p_s2`,
/// for a bad first match `(i, j)`.
fn free_start(seq: &SeparatorSequence, i: usize, j: usize) -> Option<usize> {
    (0..i)
        .filter_map(|s1| {
            let gap = seq.p(i) - seq.p(s1);
            let s2 = seq.index_of(seq.p(j).checked_sub(gap)?)?;
            (s2 < j).then_some(s1 + s2)
        })
        .max()
}

fn free_start_pair(seq: &SeparatorSequence, i: usize, j: usize, sum: usize) -> Option<(usize, usize)> {
    (0..i).find_map(|s1| {
        let gap = seq.p(i) - seq.p(s1);
        let s2 = seq.index_of(seq.p(j).checked_sub(gap)?)?;
        (s2 < j && s1 + s2 == sum).then_some((s1, s2))
    })
}

/// Undesired count of a matching measured from the given substring starts.
pub fn count_local_undesired(
    seq: &SeparatorSequence,
    matches: &[(usize, usize)],
    start: (usize, usize),
) -> usize {
    let mut prev = start;
    let mut count = 0;
    for &m in matches {
        if seq.is_undesired(prev, m) {
            count += 1;
        }
        prev = m;
    }
    count
}

/// Block length `log2 a` and alphabet bound `a` used by the explicit search.
pub fn explicit_run_bound(n: usize, lambda: usize, exponent: u32) -> Result<(u32, u32)> {
    if n == 0 {
        return Err(Error::usage("need n >= 1"));
    }
    let target = if lambda == 0 {
        return Err(Error::parameter("lambda must be positive"));
    } else {
        (n as f64 / lambda as f64).powi(exponent as i32)
    };
    let bits = (0..31u32)
        .find(|&b| f64::from(1u32 << b) >= target)
        .ok_or_else(|| Error::parameter(format!("run bound {target} exceeds 2^30")))?;
    Ok((bits, 1u32 << bits))
}

/// Maps generator output to runs: block `i` read most significant bit first,
/// run length = block value + 1.
pub fn runs_from_bits(bits: &[bool], n: usize, block: u32) -> Vec<u32> {
    let b = block as usize;
    (0..n)
        .map(|i| {
            bits[i * b..(i + 1) * b]
                .iter()
                .fold(0u32, |acc, &bit| (acc << 1) | u32::from(bit))
                + 1
        })
        .collect()
}

/// Output of [`construct_explicit`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitSeparator {
    pub sequence: SeparatorSequence,
    pub seed: u64,
    pub a: u32,
    pub prg: PrgSpec,
}

/// Deterministic seed search over the small-bias generator.
///
/// Seeds are tried in increasing order; the first whose sequence passes
/// [`local_check`] (and, for `n` within the verifier budget, has
/// [`max_undesired`] at most `lambda`) is returned.
pub fn construct_explicit(n: usize, lambda: usize, config: &SeparatorConfig) -> Result<ExplicitSeparator> {
    let (block, a) = explicit_run_bound(n, lambda, config.exponent)?;
    let n_g = (n * block as usize).max(1);
    let epsilon = config.epsilon.unwrap_or(1.0 / n as f64);
    let prg = PrgSpec::new(n_g, epsilon)?;
    let total = config
        .max_seeds
        .map_or(prg.seed_count(), |m| m.min(prg.seed_count()));
    let verify = n <= config.verify_budget;
    let field = Field::binary(prg.field_degree)?;
    let candidate = |seed: u64| -> Option<SeparatorSequence> {
        let bits = PowerPrg::with_field(prg, field.clone(), seed).ok()?.bits();
        let seq = SeparatorSequence::new(runs_from_bits(&bits, n, block), a).ok()?;
        if verify && !undesired_at_most(&seq, lambda) {
            return None;
        }
        local_check(&seq, lambda, config.c).passed.then_some(seq)
    };
    const CHUNK: u64 = 1 << 12;
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        let hit = (start..end)
            .into_par_iter()
            .map(|s| (s, candidate(s)))
            .find_first(|(_, c)| c.is_some());
        if let Some((seed, Some(sequence))) = hit {
            return Ok(ExplicitSeparator {
                sequence,
                seed,
                a,
                prg,
            });
        }
        start = end;
    }
    Err(Error::ConstructionFailure(format!(
        "no seed among {total} yields a ({lambda}, {a}) separator of length {n}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive recursion over all monotone self-matchings.
    fn brute_max(seq: &SeparatorSequence) -> usize {
        fn go(seq: &SeparatorSequence, prev: (usize, usize)) -> usize {
            let n = seq.n();
            let mut best = 0;
            for i in prev.0 + 1..=n {
                for j in prev.1 + 1..=n {
                    let here = usize::from(seq.is_undesired(prev, (i, j)));
                    best = best.max(here + go(seq, (i, j)));
                }
            }
            best
        }
        go(seq, (0, 0))
    }

    fn seq(runs: &[u32]) -> SeparatorSequence {
        SeparatorSequence::new(runs.to_vec(), *runs.iter().max().unwrap()).unwrap()
    }

    #[test]
    fn positions_and_length() {
        let s = seq(&[1, 3, 2]);
        assert_eq!(s.positions(), &[2, 6, 9]);
        assert_eq!(s.template_len(), 9);
        let forced = sample_separator(5, 1, 3).unwrap();
        assert_eq!(forced.positions(), &[2, 4, 6, 8, 10]);
    }

    #[test]
    fn invalid_runs_rejected() {
        assert!(SeparatorSequence::new(vec![1, 0], 2).is_err());
        assert!(SeparatorSequence::new(vec![3], 2).is_err());
    }

    #[test]
    fn small_cases_match_enumeration() {
        assert_eq!(max_undesired(&seq(&[4])).unwrap(), 0);
        assert_eq!(max_undesired(&seq(&[1, 2])).unwrap(), brute_max(&seq(&[1, 2])));
        assert_eq!(max_undesired(&seq(&[1, 2])).unwrap(), 0);
        assert_eq!(brute_max(&seq(&[1, 1, 1])), 1);
        assert_eq!(max_undesired(&seq(&[1, 1, 1])).unwrap(), 1);
    }

    #[test]
    fn dp_matches_brute_force_random() {
        for seed in 0..60 {
            let n = 1 + (seed as usize % 9);
            let a = 1 + (seed % 4) as u32;
            let s = sample_separator(n, a, seed).unwrap();
            assert_eq!(max_undesired(&s).unwrap(), brute_max(&s), "runs {:?}", s.runs());
        }
    }

    #[test]
    fn budget_guard() {
        let s = sample_separator(201, 4, 0).unwrap();
        assert!(matches!(max_undesired(&s), Err(Error::Capacity(_))));
    }

    #[test]
    fn early_exit_agrees() {
        for seed in 0..30 {
            let s = sample_separator(12, 3, seed).unwrap();
            let m = max_undesired(&s).unwrap();
            for bound in 0..m + 2 {
                assert_eq!(undesired_at_most(&s, bound), m <= bound);
            }
        }
    }

    #[test]
    fn local_check_passes_clean_sequence() {
        let s = seq(&[1, 2]);
        assert_eq!(max_undesired(&s).unwrap(), 0);
        for lambda in 1..4 {
            assert!(local_check(&s, lambda, 4.0).passed);
        }
    }

    #[test]
    fn local_check_fails_uniform_runs_with_witness() {
        let s = SeparatorSequence::new(vec![3; 12], 3).unwrap();
        let r = local_check(&s, 4, 4.0);
        assert!(!r.passed);
        let w = r.witness.expect("witness");
        assert!(w.undesired >= r.threshold);
        assert!(w.matches.len() <= r.delta_prime);
        assert!(w.matches.iter().all(|&(i, j)| i != j));
        for pair in w.matches.windows(2) {
            assert!(pair[0].0 < pair[1].0 && pair[0].1 < pair[1].1);
        }
        // equal gaps: every match after the start is undesired
        assert_eq!(count_local_undesired(&s, &w.matches, (w.u.0, w.v.0)), w.undesired);
        assert!(((w.u.1 - w.u.0) + (w.v.1 - w.v.0)) as f64 <= r.window);
    }

    #[test]
    fn runs_from_bits_msb_first() {
        let bits = [true, false, false, true, true, true];
        assert_eq!(runs_from_bits(&bits, 2, 3), vec![5, 8]);
    }

    #[test]
    fn explicit_small() {
        let cfg = SeparatorConfig::default();
        let r = construct_explicit(8, 4, &cfg).unwrap();
        assert_eq!(r.a, 8);
        assert!(max_undesired(&r.sequence).unwrap() <= 4);
        assert_eq!(construct_explicit(8, 4, &cfg).unwrap(), r);
    }

    #[test]
    fn vacuous_lambda_takes_first_seed() {
        let r = construct_explicit(6, 6, &SeparatorConfig::default()).unwrap();
        assert_eq!(r.seed, 0);
        assert_eq!(r.a, 1);
    }

    #[test]
    fn json_shape() {
        let s = seq(&[1, 3, 2]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"n": 3, "a": 3, "runs": [1, 3, 2]}));
        let back: SeparatorSequence = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_value::<SeparatorSequence>(serde_json::json!({"n": 2, "a": 3, "runs": [1]})).is_err());
    }
}
