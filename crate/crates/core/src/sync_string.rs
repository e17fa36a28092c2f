//! Synchronization strings: strings in which any two adjacent intervals are
//! far apart in edit distance, so that a received copy can be re-indexed after
//! insertions and deletions.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::editops::lcs;
use crate::error::{Error, Result};

/// Longest string [`verify_eta`] checks by default.
pub const DEFAULT_SYNC_BUDGET: usize = 60;

/// Default synchronization parameter.
pub const DEFAULT_ETA: f64 = 0.01;

/// Random attempts before [`construct_sync_string`] gives up.
pub const DEFAULT_ATTEMPTS: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SyncJson", into = "SyncJson")]
pub struct SyncString {
    eta: f64,
    alphabet_size: u32,
    symbols: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SyncJson {
    eta: f64,
    alphabet_size: u32,
    symbols: Vec<u32>,
}

impl From<SyncString> for SyncJson {
    fn from(s: SyncString) -> Self {
        SyncJson {
            eta: s.eta,
            alphabet_size: s.alphabet_size,
            symbols: s.symbols,
        }
    }
}

impl TryFrom<SyncJson> for SyncString {
    type Error = Error;

    fn try_from(j: SyncJson) -> Result<Self> {
        SyncString::new(j.symbols, j.alphabet_size, j.eta)
    }
}

impl SyncString {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32, eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::usage("eta must lie in (0, 1)"));
        }
        if alphabet_size == 0 || symbols.iter().any(|&s| s >= alphabet_size) {
            return Err(Error::usage("symbol outside the alphabet"));
        }
        Ok(SyncString {
            eta,
            alphabet_size,
            symbols,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// `ceil(log2 |alphabet|)`.
    pub fn bits_per_symbol(&self) -> u32 {
        symbol_bits(self.alphabet_size)
    }
}

/// Bits needed to write any symbol below `alphabet_size`.
pub fn symbol_bits(alphabet_size: u32) -> u32 {
    (u32::BITS - (alphabet_size.max(2) - 1).leading_zeros()).max(1)
}

/// `ceil(16 / eta^2)`.
pub fn alphabet_for(eta: f64) -> Result<u32> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::usage("eta must lie in (0, 1)"));
    }
    let size = (16.0 / (eta * eta)).ceil();
    if size > f64::from(1u32 << 31) {
        return Err(Error::parameter(format!("alphabet {size} too large")));
    }
    Ok(size as u32)
}

/// Outcome of [`verify_eta`]; `violation` is the first failing `(i, j, k)`
/// (0-based, half-open intervals `[i, j)` and `[j, k)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaCheck {
    pub passed: bool,
    pub violation: Option<(usize, usize, usize)>,
}

/// Checks `ED(s[i, j), s[j, k)) > (1 - eta)(k - i)` for every `i < j < k`.
pub fn verify_eta(s: &SyncString) -> Result<EtaCheck> {
    verify_eta_with_budget(s, DEFAULT_SYNC_BUDGET)
}

pub fn verify_eta_with_budget(s: &SyncString, budget: usize) -> Result<EtaCheck> {
    let n = s.len();
    if n > budget {
        return Err(Error::capacity(format!("string length {n} exceeds budget {budget}")));
    }
    let sym = s.symbols();
    let eta = s.eta;
    // one LCS table per (i, j) yields every k at once
    let first_bad = |i: usize, j: usize| -> Option<usize> {
        let x = &sym[i..j];
        let y = &sym[j..];
        let mut prev = vec![0usize; y.len() + 1];
        let mut cur = vec![0usize; y.len() + 1];
        for &a in x {
            for (c, &b) in y.iter().enumerate() {
                cur[c + 1] = if a == b { prev[c] + 1 } else { prev[c + 1].max(cur[c]) };
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        (j + 1..=n).find(|&k| {
            let ed = (j - i) + (k - j) - 2 * prev[k - j];
            ed as f64 <= (1.0 - eta) * (k - i) as f64
        })
    };
    let violation = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| first_bad(i, j).map(|k| (i, j, k)))
        .min();
    Ok(EtaCheck {
        passed: violation.is_none(),
        violation,
    })
}

/// Rejection-samples uniform strings over `ceil(16 / eta^2)` symbols until
/// one passes [`verify_eta`]. Attempt `r` draws from the `r`-th sub-seed of
/// `seed`.
pub fn construct_sync_string(n0: usize, eta: f64, seed: u64) -> Result<SyncString> {
    construct_sync_string_with(n0, eta, seed, DEFAULT_ATTEMPTS)
}

pub fn construct_sync_string_with(n0: usize, eta: f64, seed: u64, attempts: u32) -> Result<SyncString> {
    let alphabet = alphabet_for(eta)?;
    if n0 > DEFAULT_SYNC_BUDGET {
        return Err(Error::capacity(format!(
            "length {n0} exceeds verification budget {DEFAULT_SYNC_BUDGET}"
        )));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(master.next_u64());
        let symbols = (0..n0).map(|_| rng.gen_range(0..alphabet)).collect();
        let s = SyncString::new(symbols, alphabet, eta)?;
        if verify_eta(&s)?.passed {
            return Ok(s);
        }
    }
    Err(Error::ConstructionFailure(format!(
        "no {eta}-synchronization string of length {n0} in {attempts} attempts"
    )))
}

/// Alignment of received sync readings against the reference string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRecovery {
    /// For each reading, the 0-based index it was aligned to.
    pub assignment: Vec<Option<usize>>,
    /// Indices of the reference that received no reading, ascending.
    pub erasures: Vec<usize>,
}

/// Minimum-edit-distance alignment of `received` against `s`.
pub fn index_recovery(received: &[u32], s: &SyncString) -> IndexRecovery {
    let (_, pairs) = lcs(received, s.symbols());
    let mut assignment = vec![None; received.len()];
    let mut hit = vec![false; s.len()];
    for (r, k) in pairs {
        assignment[r] = Some(k);
        hit[k] = true;
    }
    let erasures = hit
        .iter()
        .enumerate()
        .filter(|(_, &h)| !h)
        .map(|(k, _)| k)
        .collect();
    IndexRecovery {
        assignment,
        erasures,
    }
}
