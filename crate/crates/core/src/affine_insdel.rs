//! Binary affine insdel code.
//!
//! Each coordinate `y_i` of an inner Reed–Solomon codeword over `GF(2^l0)` is
//! tagged with the `i`-th symbol of a synchronization string, bit-stuffed so
//! that no `t + 1` ones appear in a row, and preceded by the boundary pattern
//! `0 1^{t+1}`. The boundaries and sync symbols are the fixed offset; the data
//! bits depend linearly on the message.

use serde::{Deserialize, Serialize};

use crate::editops::lcs_len;
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Symbol};
use crate::hamming_ecc::{decode_hamming, rs_build_default, DecoderStrategy, LinearCodeInstance};
use crate::sync_string::{construct_sync_string, index_recovery, symbol_bits, SyncString, DEFAULT_ETA};

/// `l0 = ceil(C_L / epsilon^2)`, floored at `ceil(log2 n0)`.
pub const DEFAULT_C_L: f64 = 0.08;

/// Tunables of [`AffineParams::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineConfig {
    pub eta: f64,
    pub c_l: f64,
}

impl Default for AffineConfig {
    fn default() -> Self {
        AffineConfig {
            eta: DEFAULT_ETA,
            c_l: DEFAULT_C_L,
        }
    }
}

/// Dimensions of an affine code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineParams {
    pub epsilon: f64,
    pub n0: usize,
    /// Inner symbol size in bits.
    pub l0: u32,
    /// Stuffing period.
    pub t: usize,
    /// Inner designed distance `2 floor(epsilon n0) + 1`.
    pub d0: usize,
    pub m0: usize,
    pub eta: f64,
    pub alphabet_size: u32,
    /// Bits per sync symbol.
    pub l_s: u32,
    /// `l_s + l0`.
    pub l: usize,
    /// Content bits per block after stuffing.
    pub content_len: usize,
    /// Boundary plus content.
    pub block_len: usize,
    /// Codeword bits `n0 (t + 2 + l + floor(l / t))`.
    pub n: usize,
    /// Message bits `m0 l0`.
    pub m: usize,
    /// Insdel radius `floor((d0 - 1) / 4)`.
    pub kappa: usize,
}

impl AffineParams {
    pub fn new(epsilon: f64, n0: usize, config: &AffineConfig) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::usage("epsilon must lie in (0, 1/2)"));
        }
        if n0 < 2 {
            return Err(Error::usage("need n0 >= 2"));
        }
        let alphabet_size = crate::sync_string::alphabet_for(config.eta)?;
        let log_n0 = usize::BITS - (n0 - 1).leading_zeros();
        let l0 = ((config.c_l / (epsilon * epsilon)).ceil() as u32).max(log_n0).max(1);
        if l0 > 32 {
            return Err(Error::parameter(format!("inner symbol size {l0} exceeds 32 bits")));
        }
        let t = (1.0 / epsilon).ceil() as usize;
        let radius = (epsilon * n0 as f64).floor() as usize;
        let d0 = 2 * radius + 1;
        if d0 > n0 {
            return Err(Error::parameter("inner distance exceeds block length"));
        }
        let m0 = n0 - d0 + 1;
        let l_s = symbol_bits(alphabet_size);
        let l = (l_s + l0) as usize;
        let content_len = l + l / t;
        let block_len = t + 2 + content_len;
        Ok(AffineParams {
            epsilon,
            n0,
            l0,
            t,
            d0,
            m0,
            eta: config.eta,
            alphabet_size,
            l_s,
            l,
            content_len,
            block_len,
            n: n0 * block_len,
            m: m0 * l0 as usize,
            kappa: (d0 - 1) / 4,
        })
    }

    pub fn rate(&self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AffineJson", into = "AffineJson")]
pub struct AffineCodeInstance {
    params: AffineParams,
    config: AffineConfig,
    inner: LinearCodeInstance,
    sync: SyncString,
    offset: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct AffineJson {
    epsilon: f64,
    n0: usize,
    config: AffineConfig,
    sync: SyncString,
}

impl From<AffineCodeInstance> for AffineJson {
    fn from(c: AffineCodeInstance) -> Self {
        AffineJson {
            epsilon: c.params.epsilon,
            n0: c.params.n0,
            config: c.config,
            sync: c.sync,
        }
    }
}

impl TryFrom<AffineJson> for AffineCodeInstance {
    type Error = Error;

    fn try_from(j: AffineJson) -> Result<Self> {
        AffineCodeInstance::with_sync(j.epsilon, j.n0, j.config, j.sync)
    }
}

impl AffineCodeInstance {
    /// Builds the code, drawing the sync string from `seed`.
    pub fn new(epsilon: f64, n0: usize, config: AffineConfig, seed: u64) -> Result<Self> {
        let sync = construct_sync_string(n0, config.eta, seed)?;
        Self::with_sync(epsilon, n0, config, sync)
    }

    pub fn with_sync(epsilon: f64, n0: usize, config: AffineConfig, sync: SyncString) -> Result<Self> {
        let params = AffineParams::new(epsilon, n0, &config)?;
        if sync.len() != n0 || sync.alphabet_size() != params.alphabet_size {
            return Err(Error::usage("sync string does not fit the parameters"));
        }
        let inner = rs_build_default(FieldSpec::binary(params.l0)?, n0, params.m0)?
            .with_strategy(DecoderStrategy::ErrorsAndErasuresRs)?;
        let mut code = AffineCodeInstance {
            params,
            config,
            inner,
            sync,
            offset: Vec::new(),
        };
        code.offset = code.frame(&vec![0; n0]);
        Ok(code)
    }

    pub fn params(&self) -> &AffineParams {
        &self.params
    }

    pub fn inner(&self) -> &LinearCodeInstance {
        &self.inner
    }

    pub fn sync(&self) -> &SyncString {
        &self.sync
    }

    /// Codeword of the all-zero message.
    pub fn offset(&self) -> &[bool] {
        &self.offset
    }

    fn frame(&self, y: &[Symbol]) -> Vec<bool> {
        let p = &self.params;
        let mut out = Vec::with_capacity(p.n);
        for (&s, &v) in self.sync.symbols().iter().zip(y) {
            out.push(false);
            out.extend(std::iter::repeat_n(true, p.t + 1));
            let mut raw = to_bits(u64::from(s), p.l_s);
            raw.extend(to_bits(u64::from(v), p.l0));
            out.extend(stuff(&raw, p.t));
        }
        out
    }
}

/// `width` bits of `v`, most significant first.
pub fn to_bits(v: u64, width: u32) -> Vec<bool> {
    (0..width).rev().map(|b| (v >> b) & 1 == 1).collect()
}

pub fn from_bits(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
}

/// Inserts a 0 after every complete group of `t` bits.
pub fn stuff(bits: &[bool], t: usize) -> Vec<bool> {
    let mut out = Vec::with_capacity(bits.len() + bits.len() / t);
    for (k, &b) in bits.iter().enumerate() {
        out.push(b);
        if (k + 1) % t == 0 {
            out.push(false);
        }
    }
    out
}

/// Inverse of [`stuff`] for a content of exactly `l + floor(l / t)` bits;
/// `None` if a stuffed position holds a 1.
pub fn destuff(content: &[bool], t: usize) -> Option<Vec<bool>> {
    let mut out = Vec::with_capacity(content.len());
    for (k, &b) in content.iter().enumerate() {
        if (k + 1) % (t + 1) == 0 {
            if b {
                return None;
            }
        } else {
            out.push(b);
        }
    }
    Some(out)
}

/// Splits a received stream into block contents.
///
/// A boundary is a maximal run of at least `t + 1` ones together with the 0
/// before it (or the stream start); its first `t + 1` ones close the boundary
/// and any further ones belong to the following content. Bits before the
/// first boundary are dropped.
pub fn parse_blocks(bits: &[bool], t: usize) -> Vec<Vec<bool>> {
    // (start of the boundary's 0 or the run, first content bit)
    let mut bounds = Vec::new();
    let mut k = 0;
    while k < bits.len() {
        if !bits[k] {
            k += 1;
            continue;
        }
        let start = k;
        while k < bits.len() && bits[k] {
            k += 1;
        }
        if k - start > t {
            bounds.push((start.saturating_sub(1), start + t + 1));
        }
    }
    bounds
        .iter()
        .enumerate()
        .map(|(b, &(_, from))| {
            let to = bounds.get(b + 1).map_or(bits.len(), |&(next, _)| next);
            bits[from..to.max(from)].to_vec()
        })
        .collect()
}

/// A well-formed block's sync symbol and data symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockReading {
    pub sync: u32,
    pub data: Symbol,
}

/// Reads a block content, or `None` if it is malformed.
pub fn read_block(params: &AffineParams, content: &[bool]) -> Option<BlockReading> {
    if content.len() != params.content_len {
        return None;
    }
    let raw = destuff(content, params.t)?;
    let sync = from_bits(&raw[..params.l_s as usize]) as u32;
    if sync >= params.alphabet_size {
        return None;
    }
    Some(BlockReading {
        sync,
        data: from_bits(&raw[params.l_s as usize..]) as Symbol,
    })
}

/// Encodes `m` message bits into `n` codeword bits.
pub fn affine_encode(code: &AffineCodeInstance, x: &[bool]) -> Result<Vec<bool>> {
    let p = &code.params;
    if x.len() != p.m {
        return Err(Error::usage(format!("message has {} bits, expected {}", x.len(), p.m)));
    }
    let symbols: Vec<Symbol> = x
        .chunks(p.l0 as usize)
        .map(|c| from_bits(c) as Symbol)
        .collect();
    let y = code.inner.encode(&symbols)?;
    Ok(code.frame(&y))
}

/// What the decoder recovered before the inner decode.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineDecodeReport {
    pub blocks: usize,
    pub malformed: usize,
    pub erasures: Vec<usize>,
    pub message: Result<Vec<bool>>,
}

pub fn affine_decode(code: &AffineCodeInstance, received: &[bool]) -> Result<Vec<bool>> {
    affine_decode_report(code, received).message
}

pub fn affine_decode_report(code: &AffineCodeInstance, received: &[bool]) -> AffineDecodeReport {
    let p = &code.params;
    let blocks = parse_blocks(received, p.t);
    let readings: Vec<BlockReading> = blocks.iter().filter_map(|b| read_block(p, b)).collect();
    let sync: Vec<u32> = readings.iter().map(|r| r.sync).collect();
    let rec = index_recovery(&sync, &code.sync);
    let mut y = vec![0; p.n0];
    for (r, slot) in readings.iter().zip(&rec.assignment) {
        if let Some(i) = *slot {
            y[i] = r.data;
        }
    }
    let message = decode_hamming(&code.inner, &y, &rec.erasures).map(|x| {
        x.iter()
            .flat_map(|&s| to_bits(u64::from(s), p.l0))
            .collect()
    });
    AffineDecodeReport {
        blocks: blocks.len(),
        malformed: blocks.len() - readings.len(),
        erasures: rec.erasures,
        message,
    }
}

/// Blocks of `new` not explained by `old`: `max(|old|, |new|) - LCS`.
pub fn block_damage(old: &[Vec<bool>], new: &[Vec<bool>]) -> usize {
    let l = lcs_len(old, new);
    (old.len() - l).max(new.len() - l)
}

/// Longest run of ones in `bits`, ignoring the first `t + 1` ones of every
/// boundary pattern.
pub fn longest_content_run(code: &AffineCodeInstance, bits: &[bool]) -> usize {
    let p = &code.params;
    bits.chunks(p.block_len)
        .map(|b| {
            let content = &b[(p.t + 2).min(b.len())..];
            content
                .split(|&x| !x)
                .map(<[bool]>::len)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}
