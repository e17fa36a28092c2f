//! Linear codes for insertions and deletions built from a Hamming-metric code
//! by interleaving its symbols with all-zero runs.
//!
//! A codeword is `z = 0^{a_1} y_1 0^{a_2} y_2 ... 0^{a_n} y_n` where `y` is an
//! inner codeword and the run lengths come from a [`SeparatorSequence`]. The
//! decoder aligns the `?`-marks of the template `0^{a_1} ? 0^{a_2} ? ...` with
//! the non-zero symbols of the received word by dynamic programming, fills the
//! template and hands it to the inner decoder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Symbol;
use crate::hamming_ecc::{decode_hamming, LinearCodeInstance};
use crate::separator::{construct_explicit, sample_separator, ExplicitSeparator, SeparatorConfig, SeparatorSequence};

/// Default `kappa / kappa_C`.
pub const DEFAULT_KAPPA_FRACTION: f64 = 0.01;

/// Separator bound used by the explicit flavor, as a fraction of `kappa_C`.
pub const EXPLICIT_LAMBDA_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InsdelJson", into = "InsdelJson")]
pub struct InsdelCodeInstance {
    inner: LinearCodeInstance,
    separator: SeparatorSequence,
    kappa_fraction: f64,
    kappa: usize,
}

#[derive(Serialize, Deserialize)]
struct InsdelJson {
    inner: LinearCodeInstance,
    separator: SeparatorSequence,
    kappa_fraction: f64,
    #[serde(default)]
    kappa: Option<usize>,
    #[serde(default)]
    n: Option<usize>,
}

impl From<InsdelCodeInstance> for InsdelJson {
    fn from(c: InsdelCodeInstance) -> Self {
        let n = c.n();
        InsdelJson {
            inner: c.inner,
            separator: c.separator,
            kappa_fraction: c.kappa_fraction,
            kappa: Some(c.kappa),
            n: Some(n),
        }
    }
}

impl TryFrom<InsdelJson> for InsdelCodeInstance {
    type Error = Error;

    fn try_from(j: InsdelJson) -> Result<Self> {
        let code = InsdelCodeInstance::new(j.inner, j.separator, j.kappa_fraction)?;
        if j.kappa.is_some_and(|k| k != code.kappa) || j.n.is_some_and(|n| n != code.n()) {
            return Err(Error::usage("stored kappa or n disagrees with the parameters"));
        }
        Ok(code)
    }
}

impl InsdelCodeInstance {
    pub fn new(inner: LinearCodeInstance, separator: SeparatorSequence, kappa_fraction: f64) -> Result<Self> {
        if separator.n() != inner.n() {
            return Err(Error::usage(format!(
                "separator has {} runs, inner code length is {}",
                separator.n(),
                inner.n()
            )));
        }
        if !(0.0..=1.0).contains(&kappa_fraction) {
            return Err(Error::usage("kappa fraction must lie in [0, 1]"));
        }
        let kappa = (kappa_fraction * inner.kappa() as f64).floor() as usize;
        Ok(InsdelCodeInstance {
            inner,
            separator,
            kappa_fraction,
            kappa,
        })
    }

    /// Random runs uniform on `1..=a` with `a = ceil((n_C / kappa_C)^exponent)`.
    pub fn monte_carlo(inner: LinearCodeInstance, kappa_fraction: f64, exponent: u32, seed: u64) -> Result<Self> {
        if inner.kappa() == 0 {
            return Err(Error::parameter("inner code corrects no errors"));
        }
        let a = (inner.n() as f64 / inner.kappa() as f64).powi(exponent as i32).ceil();
        if a > f64::from(1u32 << 30) {
            return Err(Error::parameter(format!("run bound {a} exceeds 2^30")));
        }
        let separator = sample_separator(inner.n(), a.max(1.0) as u32, seed)?;
        Self::new(inner, separator, kappa_fraction)
    }

    /// Runs from the explicit separator search with `lambda = max(1, floor(0.2 kappa_C))`.
    pub fn explicit(
        inner: LinearCodeInstance,
        kappa_fraction: f64,
        config: &SeparatorConfig,
    ) -> Result<(Self, ExplicitSeparator)> {
        let lambda = explicit_lambda(inner.kappa());
        let found = construct_explicit(inner.n(), lambda, config)?;
        let code = Self::new(inner, found.sequence.clone(), kappa_fraction)?;
        Ok((code, found))
    }

    pub fn inner(&self) -> &LinearCodeInstance {
        &self.inner
    }

    pub fn separator(&self) -> &SeparatorSequence {
        &self.separator
    }

    pub fn kappa_fraction(&self) -> f64 {
        self.kappa_fraction
    }

    /// Insdel radius `floor(f * kappa_C)`.
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn n(&self) -> usize {
        self.separator.template_len() as usize
    }

    pub fn m(&self) -> usize {
        self.inner.m()
    }

    pub fn rate(&self) -> f64 {
        self.m() as f64 / self.n() as f64
    }
}

/// Separator bound used by [`InsdelCodeInstance::explicit`].
pub fn explicit_lambda(kappa_c: usize) -> usize {
    ((EXPLICIT_LAMBDA_FRACTION * kappa_c as f64).floor() as usize).max(1)
}

/// Interleaves the inner codeword of `x` with the separator's zero runs.
pub fn insdel_encode(code: &InsdelCodeInstance, x: &[Symbol]) -> Result<Vec<Symbol>> {
    let y = code.inner.encode(x)?;
    let mut z = vec![0; code.n()];
    for (&p, &s) in code.separator.positions().iter().zip(&y) {
        z[p as usize - 1] = s;
    }
    Ok(z)
}

/// A monotone matching of template `?`-marks to received non-zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QToNonzeroMatching {
    /// 1-based `(i, j)`: `i` indexes `?`-marks, `j` indexes non-zeros.
    pub matches: Vec<(usize, usize)>,
    pub cost: usize,
    pub obj: usize,
}

/// `cost` counts matches whose gap to the previous match differs between the
/// template and the received word (`p_0 = q_0 = 0`); `obj = |w| - cost`.
pub fn cost_and_obj(matches: &[(usize, usize)], p: &[u64], q: &[u64]) -> Result<(usize, usize)> {
    let mut prev = (0usize, 0usize);
    let mut cost = 0;
    let at = |v: &[u64], k: usize| if k == 0 { Some(0) } else { v.get(k - 1).copied() };
    for &(i, j) in matches {
        if i <= prev.0 || j <= prev.1 {
            return Err(Error::usage("matching is not strictly increasing"));
        }
        let (pi, pp) = (at(p, i), at(p, prev.0));
        let (qj, qp) = (at(q, j), at(q, prev.1));
        let (Some(pi), Some(pp), Some(qj), Some(qp)) = (pi, pp, qj, qp) else {
            return Err(Error::usage("match index out of range"));
        };
        if pi - pp != qj - qp {
            cost += 1;
        }
        prev = (i, j);
    }
    Ok((cost, matches.len() - cost))
}

/// 1-based positions of the non-zero symbols.
pub fn nonzero_positions(received: &[Symbol]) -> Vec<u64> {
    received
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .map(|(k, _)| k as u64 + 1)
        .collect()
}

/// Matching maximizing `obj` between template positions `p` and the
/// non-zeros of `received`.
///
/// `f[i][j]` is the best `obj` of a matching ending at `(i, j)`. Among optimal
/// matchings the one ending at the last optimal cell is returned, with the
/// lexicographically smallest optimal predecessor at every step.
pub fn match_dp(p: &[u64], received: &[Symbol]) -> QToNonzeroMatching {
    let q = nonzero_positions(received);
    let (nc, n1) = (p.len(), q.len());
    if nc == 0 || n1 == 0 {
        return QToNonzeroMatching {
            matches: Vec::new(),
            cost: 0,
            obj: 0,
        };
    }
    let pos = |v: &[u64], k: usize| if k == 0 { 0 } else { v[k - 1] };
    let w = n1 + 1;
    let mut f = vec![0usize; (nc + 1) * w];
    let mut prefix = vec![0usize; (nc + 1) * w];
    let mut best = (0usize, 1usize, 1usize);
    for i in 1..=nc {
        for j in 1..=n1 {
            let mut v = prefix[(i - 1) * w + j - 1].max(usize::from(p[i - 1] == q[j - 1]));
            for ip in 1..i {
                let gap = p[i - 1] - p[ip - 1];
                if let Some(jp) = equal_gap_pred(&q, j, gap) {
                    v = v.max(f[ip * w + jp] + 1);
                }
            }
            f[i * w + j] = v;
            prefix[i * w + j] = v.max(prefix[(i - 1) * w + j]).max(prefix[i * w + j - 1]);
            if v >= best.0 {
                best = (v, i, j);
            }
        }
    }
    let (obj, mut i, mut j) = best;
    let mut matches = vec![(i, j)];
    loop {
        let v = f[i * w + j];
        let first = usize::from(pos(p, i) == pos(&q, j));
        if first == v {
            break;
        }
        let mut pred = None;
        'scan: for ip in 1..i {
            for jp in 1..j {
                let ind = usize::from(pos(p, i) - pos(p, ip) == pos(&q, j) - pos(&q, jp));
                if f[ip * w + jp] + ind == v {
                    pred = Some((ip, jp));
                    break 'scan;
                }
            }
        }
        let (ip, jp) = pred.expect("optimal value has a predecessor");
        matches.push((ip, jp));
        i = ip;
        j = jp;
    }
    matches.reverse();
    QToNonzeroMatching {
        cost: matches.len() - obj,
        matches,
        obj,
    }
}

/// `j' < j` with `q_j - q_j' == gap`, if any.
fn equal_gap_pred(q: &[u64], j: usize, gap: u64) -> Option<usize> {
    let target = q[j - 1].checked_sub(gap)?;
    let k = q[..j - 1].binary_search(&target).ok()?;
    Some(k + 1)
}

/// Everything the decoder learned about one received word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsdelDecodeReport {
    pub matching: QToNonzeroMatching,
    /// Filled template handed to the inner decoder.
    pub filled: Vec<Symbol>,
    pub nonzeros: usize,
    pub unmatched_nonzeros: usize,
    pub message: Result<Vec<Symbol>>,
}

/// Decodes `received`, failing when the inner decoder does.
pub fn insdel_decode(code: &InsdelCodeInstance, received: &[Symbol]) -> Result<Vec<Symbol>> {
    insdel_decode_report(code, received).message
}

pub fn insdel_decode_report(code: &InsdelCodeInstance, received: &[Symbol]) -> InsdelDecodeReport {
    let field = code.inner.field();
    if let Some(&bad) = received.iter().find(|&&s| !field.contains(s)) {
        return InsdelDecodeReport {
            matching: QToNonzeroMatching {
                matches: Vec::new(),
                cost: 0,
                obj: 0,
            },
            filled: Vec::new(),
            nonzeros: 0,
            unmatched_nonzeros: 0,
            message: Err(Error::usage(format!("received symbol {bad} outside the field"))),
        };
    }
    let matching = match_dp(code.separator.positions(), received);
    let q = nonzero_positions(received);
    let mut filled = vec![0; code.inner.n()];
    for &(i, j) in &matching.matches {
        filled[i - 1] = received[q[j - 1] as usize - 1];
    }
    let message = decode_hamming(&code.inner, &filled, &[]);
    InsdelDecodeReport {
        nonzeros: q.len(),
        unmatched_nonzeros: q.len() - matching.matches.len(),
        matching,
        filled,
        message,
    }
}

/// Prepends the raw message to an insdel codeword.
#[derive(Debug, Clone, PartialEq)]
pub struct SystematicInsdelCode {
    base: InsdelCodeInstance,
}

impl SystematicInsdelCode {
    pub fn new(base: InsdelCodeInstance) -> Self {
        SystematicInsdelCode { base }
    }

    pub fn base(&self) -> &InsdelCodeInstance {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.m() + self.base.n()
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn kappa(&self) -> usize {
        self.base.kappa()
    }

    /// `m / (m + n)`.
    pub fn rate(&self) -> f64 {
        self.m() as f64 / self.n() as f64
    }

    pub fn encode(&self, x: &[Symbol]) -> Result<Vec<Symbol>> {
        let mut out = x.to_vec();
        out.extend(insdel_encode(&self.base, x)?);
        Ok(out)
    }

    /// Drops the first `m` received symbols and decodes the rest.
    pub fn decode(&self, received: &[Symbol]) -> Result<Vec<Symbol>> {
        let rest = received.get(self.m()..).unwrap_or(&[]);
        insdel_decode(&self.base, rest)
    }
}
