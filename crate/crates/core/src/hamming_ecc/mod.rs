//! Linear block codes for Hamming errors.
//!
//! These are the inner codes of the insdel constructions: Reed–Solomon codes
//! with Berlekamp–Welch errors-and-erasures decoding, small random codes
//! decoded by exhaustive nearest-codeword search, and a binary concatenation
//! of the two.

pub(crate) mod linalg;
pub mod rs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec, Symbol};

/// Exhaustive decoding refuses codes with more codewords than this.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 20;

/// Codes this small fall back to exhaustive search when algebraic decoding fails.
pub const BRUTE_FORCE_FALLBACK_LIMIT: u64 = 1 << 12;

/// An `m x n` generator matrix over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    spec: FieldSpec,
    rows: Vec<Vec<Symbol>>,
}

impl GeneratorMatrix {
    pub fn new(spec: FieldSpec, rows: Vec<Vec<Symbol>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::usage("generator matrix must have at least one row"));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::usage("generator rows must be nonempty and of equal length"));
        }
        if m > n {
            return Err(Error::usage(format!("message length {m} exceeds block length {n}")));
        }
        if rows.iter().flatten().any(|&v| u64::from(v) >= spec.q) {
            return Err(Error::usage("generator entry is not a canonical field value"));
        }
        Ok(GeneratorMatrix { spec, rows })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> &[Vec<Symbol>] {
        &self.rows
    }

    /// Message length `m`.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Block length `n`.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }
}

/// How [`decode_hamming`] recovers a message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderStrategy {
    /// Berlekamp–Welch over all coordinates; erasure masks are ignored.
    ReedSolomon,
    /// Exhaustive nearest-codeword search.
    BruteForceNearest,
    /// Berlekamp–Welch over the unerased coordinates.
    ErrorsAndErasuresRs,
    /// Outer Reed–Solomon over GF(2^b) with a brute-force binary inner code.
    Concatenated,
}

/// Inner code of a concatenated construction, plus the outer code it serves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concatenation {
    pub outer: Box<LinearCodeInstance>,
    pub inner: Box<LinearCodeInstance>,
}

/// A linear `(n, m, d)` code together with its decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeJson", into = "CodeJson")]
pub struct LinearCodeInstance {
    field: Field,
    generator: GeneratorMatrix,
    d: usize,
    strategy: DecoderStrategy,
    eval_points: Option<Vec<Symbol>>,
    concat: Option<Concatenation>,
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    field: FieldSpec,
    n: usize,
    m: usize,
    d: usize,
    generator: Vec<Vec<Symbol>>,
    strategy: DecoderStrategy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eval_points: Option<Vec<Symbol>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    concat: Option<Concatenation>,
}

impl From<LinearCodeInstance> for CodeJson {
    fn from(c: LinearCodeInstance) -> Self {
        CodeJson {
            field: *c.field.spec(),
            n: c.n(),
            m: c.m(),
            d: c.d,
            generator: c.generator.rows,
            strategy: c.strategy,
            eval_points: c.eval_points,
            concat: c.concat,
        }
    }
}

impl TryFrom<CodeJson> for LinearCodeInstance {
    type Error = Error;

    fn try_from(j: CodeJson) -> Result<Self> {
        let field = Field::new(j.field)?;
        let generator = GeneratorMatrix::new(j.field, j.generator)?;
        if generator.n() != j.n || generator.m() != j.m {
            return Err(Error::usage("declared n/m disagree with the generator shape"));
        }
        let needs_points = matches!(
            j.strategy,
            DecoderStrategy::ReedSolomon | DecoderStrategy::ErrorsAndErasuresRs
        );
        if needs_points && j.eval_points.as_ref().map(Vec::len) != Some(j.n) {
            return Err(Error::usage("Reed-Solomon code needs n evaluation points"));
        }
        if j.strategy == DecoderStrategy::Concatenated && j.concat.is_none() {
            return Err(Error::usage("concatenated code needs its component codes"));
        }
        let code = LinearCodeInstance {
            field,
            generator,
            d: j.d,
            strategy: j.strategy,
            eval_points: j.eval_points,
            concat: j.concat,
        };
        code.check_rank()?;
        Ok(code)
    }
}

impl LinearCodeInstance {
    /// Wraps an arbitrary full-rank generator. `d` is the designed distance the
    /// decoder is trusted to honor.
    pub fn from_generator(
        generator: GeneratorMatrix,
        d: usize,
        strategy: DecoderStrategy,
    ) -> Result<Self> {
        if matches!(
            strategy,
            DecoderStrategy::ReedSolomon
                | DecoderStrategy::ErrorsAndErasuresRs
                | DecoderStrategy::Concatenated
        ) {
            return Err(Error::usage(
                "algebraic strategies require rs_build or concatenated_build",
            ));
        }
        let field = Field::new(generator.spec)?;
        let code = LinearCodeInstance {
            field,
            generator,
            d,
            strategy,
            eval_points: None,
            concat: None,
        };
        code.check_rank()?;
        Ok(code)
    }

    /// Identity code `F_q^m -> F_q^m` (distance 1, corrects nothing).
    pub fn identity(spec: FieldSpec, m: usize) -> Result<Self> {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| Symbol::from(i == j)).collect())
            .collect();
        Self::from_generator(GeneratorMatrix::new(spec, rows)?, 1, DecoderStrategy::BruteForceNearest)
    }

    fn check_rank(&self) -> Result<()> {
        if linalg::rank(&self.field, &self.generator.rows) < self.m() {
            return Err(Error::NotFullRank);
        }
        Ok(())
    }

    /// Replaces the decoder; algebraic strategies keep their component data.
    pub fn with_strategy(mut self, strategy: DecoderStrategy) -> Result<Self> {
        let ok = match strategy {
            DecoderStrategy::BruteForceNearest => true,
            DecoderStrategy::ReedSolomon | DecoderStrategy::ErrorsAndErasuresRs => {
                self.eval_points.is_some()
            }
            DecoderStrategy::Concatenated => self.concat.is_some(),
        };
        if !ok {
            return Err(Error::usage(format!("strategy {strategy:?} unavailable for this code")));
        }
        self.strategy = strategy;
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.n()
    }

    pub fn m(&self) -> usize {
        self.generator.m()
    }

    /// Designed minimum Hamming distance.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Hamming error-correction radius `floor((d - 1) / 2)`.
    pub fn kappa(&self) -> usize {
        self.d.saturating_sub(1) / 2
    }

    pub fn strategy(&self) -> DecoderStrategy {
        self.strategy
    }

    pub fn eval_points(&self) -> Option<&[Symbol]> {
        self.eval_points.as_deref()
    }

    pub fn concatenation(&self) -> Option<&Concatenation> {
        self.concat.as_ref()
    }

    /// `y = xG`.
    pub fn encode(&self, x: &[Symbol]) -> Result<Vec<Symbol>> {
        if x.len() != self.m() {
            return Err(Error::usage(format!(
                "message has length {}, expected {}",
                x.len(),
                self.m()
            )));
        }
        if x.iter().any(|&v| !self.field.contains(v)) {
            return Err(Error::usage("message symbol outside the field"));
        }
        Ok(linalg::vec_mat(&self.field, x, &self.generator.rows))
    }

    /// All `q^m` codewords in message order, for exhaustive checks.
    pub fn codewords(&self, limit: u64) -> Result<Vec<Vec<Symbol>>> {
        let total = self.message_count(limit)?;
        Ok(MessageIter::new(self.field.q(), self.m(), total)
            .map(|x| linalg::vec_mat(&self.field, &x, &self.generator.rows))
            .collect())
    }

    fn message_count(&self, limit: u64) -> Result<u64> {
        let q = self.field.q();
        let mut total = 1u64;
        for _ in 0..self.m() {
            total = total
                .checked_mul(q)
                .filter(|&t| t <= limit)
                .ok_or_else(|| {
                    Error::capacity(format!("q^m = {q}^{} exceeds limit {limit}", self.m()))
                })?;
        }
        Ok(total)
    }
}

/// Enumerates all vectors of `F_q^m` in little-endian counter order.
pub(crate) struct MessageIter {
    q: u64,
    current: Vec<Symbol>,
    remaining: u64,
}

impl MessageIter {
    pub(crate) fn new(q: u64, m: usize, total: u64) -> Self {
        MessageIter {
            q,
            current: vec![0; m],
            remaining: total,
        }
    }
}

impl Iterator for MessageIter {
    type Item = Vec<Symbol>;

    fn next(&mut self) -> Option<Vec<Symbol>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        for v in self.current.iter_mut() {
            if u64::from(*v) + 1 < self.q {
                *v += 1;
                break;
            }
            *v = 0;
        }
        Some(out)
    }
}

/// Reed–Solomon code evaluating message polynomials at `points`.
pub fn rs_build(spec: FieldSpec, n: usize, m: usize, points: &[Symbol]) -> Result<LinearCodeInstance> {
    if spec.q < n as u64 {
        return Err(Error::parameter(format!(
            "field of size {} too small for block length {n}",
            spec.q
        )));
    }
    if m == 0 || m > n {
        return Err(Error::usage(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if points.len() != n {
        return Err(Error::usage(format!("expected {n} evaluation points, got {}", points.len())));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::usage("evaluation points must be distinct"));
    }
    if points.iter().any(|&p| u64::from(p) >= spec.q) {
        return Err(Error::usage("evaluation point outside the field"));
    }
    let field = Field::new(spec)?;
    let rows = rs::vandermonde(&field, points, m);
    Ok(LinearCodeInstance {
        field,
        generator: GeneratorMatrix::new(spec, rows)?,
        d: n - m + 1,
        strategy: DecoderStrategy::ErrorsAndErasuresRs,
        eval_points: Some(points.to_vec()),
        concat: None,
    })
}

/// Reed–Solomon code at the points `0, 1, ..., n-1`.
pub fn rs_build_default(spec: FieldSpec, n: usize, m: usize) -> Result<LinearCodeInstance> {
    let points: Vec<Symbol> = (0..n as u64).map(|v| v as Symbol).collect();
    rs_build(spec, n, m, &points)
}

/// Decodes `received` to a message, honoring erasure positions when the
/// strategy supports them.
///
/// Succeeds whenever `2 * errors + erasures <= d - 1`; inputs beyond the
/// radius produce [`Error::DecodeFailure`].
pub fn decode_hamming(
    code: &LinearCodeInstance,
    received: &[Symbol],
    erasures: &[usize],
) -> Result<Vec<Symbol>> {
    if received.len() != code.n() {
        return Err(Error::usage(format!(
            "received word has length {}, expected {}",
            received.len(),
            code.n()
        )));
    }
    if erasures.iter().any(|&e| e >= code.n()) {
        return Err(Error::usage("erasure position out of range"));
    }
    let mut erased = vec![false; code.n()];
    for &e in erasures {
        erased[e] = true;
    }
    match code.strategy {
        DecoderStrategy::BruteForceNearest => brute_force_nearest(code, received, &erased),
        DecoderStrategy::ReedSolomon => decode_rs(code, received, &vec![false; code.n()]),
        DecoderStrategy::ErrorsAndErasuresRs => decode_rs(code, received, &erased),
        DecoderStrategy::Concatenated => decode_concatenated(code, received, &erased),
    }
}

fn decode_rs(code: &LinearCodeInstance, received: &[Symbol], erased: &[bool]) -> Result<Vec<Symbol>> {
    let points = code
        .eval_points
        .as_ref()
        .expect("RS strategy implies evaluation points");
    let pairs: Vec<(Symbol, Symbol)> = points
        .iter()
        .zip(received)
        .zip(erased)
        .filter(|(_, &e)| !e)
        .map(|((&p, &r), _)| (p, code.field.from_u64(u64::from(r))))
        .collect();
    match rs::berlekamp_welch(&code.field, &pairs, code.m()) {
        Ok(msg) => Ok(msg),
        Err(err) => match code.message_count(BRUTE_FORCE_FALLBACK_LIMIT) {
            Ok(_) => brute_force_nearest(code, received, erased),
            Err(_) => Err(err),
        },
    }
}

/// Nearest codeword by exhaustive search; ties and out-of-radius words fail.
pub fn brute_force_nearest(
    code: &LinearCodeInstance,
    received: &[Symbol],
    erased: &[bool],
) -> Result<Vec<Symbol>> {
    let total = code.message_count(BRUTE_FORCE_LIMIT)?;
    let n_erased = erased.iter().filter(|&&e| e).count();
    let mut best: Option<(usize, Vec<Symbol>)> = None;
    let mut tie = false;
    for x in MessageIter::new(code.field.q(), code.m(), total) {
        let y = linalg::vec_mat(&code.field, &x, &code.generator.rows);
        let dist = y
            .iter()
            .zip(received)
            .zip(erased)
            .filter(|((a, b), &e)| !e && a != b)
            .count();
        match &best {
            Some((bd, _)) if dist > *bd => {}
            Some((bd, _)) if dist == *bd => tie = true,
            _ => {
                best = Some((dist, x));
                tie = false;
            }
        }
    }
    let (dist, msg) = best.expect("at least one codeword");
    if tie || 2 * dist + n_erased > code.d.saturating_sub(1) {
        return Err(Error::decode(format!(
            "nearest codeword at distance {dist} with {n_erased} erasures is outside radius"
        )));
    }
    Ok(msg)
}

/// Independently sampled uniform generator entries under a seeded ChaCha stream.
pub fn random_generator(spec: FieldSpec, m: usize, n: usize, seed: u64) -> Result<GeneratorMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_generator_with(spec, m, n, &mut rng)
}

pub(crate) fn random_generator_with<R: Rng>(
    spec: FieldSpec,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<GeneratorMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::usage("generator dimensions must be positive"));
    }
    let rows = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(0..spec.q) as Symbol).collect())
        .collect();
    GeneratorMatrix::new(spec, rows)
}

/// Rewrites `G = [M | V]` as `M^-1 G = [I | M^-1 V]`.
pub fn systematic_transform(g: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let field = Field::new(g.spec)?;
    let m = g.m();
    let left: Vec<Vec<Symbol>> = g.rows.iter().map(|r| r[..m].to_vec()).collect();
    let inv = linalg::invert(&field, &left).ok_or(Error::NotFullRank)?;
    GeneratorMatrix::new(g.spec, linalg::mat_mul(&field, &inv, &g.rows))
}

/// Minimum Hamming weight over nonzero codewords, by enumeration.
pub fn min_distance(code: &LinearCodeInstance, limit: u64) -> Result<usize> {
    let total = code.message_count(limit)?;
    Ok(MessageIter::new(code.field.q(), code.m(), total)
        .skip(1)
        .map(|x| {
            linalg::vec_mat(&code.field, &x, &code.generator.rows)
                .iter()
                .filter(|&&v| v != 0)
                .count()
        })
        .min()
        .unwrap_or(code.n()))
}

/// Binary code: RS over `GF(2^b)` of shape `(n_out, m_out)`, each outer symbol
/// re-encoded by the best of a few random binary `[n_in, b]` codes.
///
/// The message is `m_out * b` bits; bit `i` of outer symbol `j` is message bit
/// `j * b + i`. The designed distance reflects the guaranteed radius of
/// decode-inner-then-outer decoding, `(t_in + 1)(t_out + 1) - 1`.
pub fn concatenated_build(
    outer_degree: u32,
    n_out: usize,
    m_out: usize,
    n_in: usize,
    seed: u64,
) -> Result<LinearCodeInstance> {
    let b = outer_degree as usize;
    if n_in < b {
        return Err(Error::parameter("inner block length must be at least the symbol size"));
    }
    let outer = rs_build_default(FieldSpec::binary(outer_degree)?, n_out, m_out)?;
    let bit_spec = FieldSpec::prime(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inner: Option<(usize, LinearCodeInstance)> = None;
    for _ in 0..32 {
        let g = random_generator_with(bit_spec, b, n_in, &mut rng)?;
        let Ok(candidate) = LinearCodeInstance::from_generator(g, 1, DecoderStrategy::BruteForceNearest)
        else {
            continue;
        };
        let dist = min_distance(&candidate, BRUTE_FORCE_LIMIT)?;
        if inner.as_ref().is_none_or(|(best, _)| dist > *best) {
            inner = Some((dist, candidate));
        }
    }
    let (d_in, mut inner) =
        inner.ok_or_else(|| Error::ConstructionFailure("no full-rank inner code sampled".into()))?;
    inner.d = d_in;
    let t_in = (d_in - 1) / 2;
    let t_out = outer.kappa();
    let kappa = (t_in + 1) * (t_out + 1) - 1;

    let m = m_out * b;
    let rows = (0..m)
        .map(|i| {
            let mut x = vec![0; m];
            x[i] = 1;
            concat_encode(&outer, &inner, &x)
        })
        .collect::<Result<Vec<_>>>()?;
    let field = Field::new(bit_spec)?;
    Ok(LinearCodeInstance {
        field,
        generator: GeneratorMatrix::new(bit_spec, rows)?,
        d: 2 * kappa + 1,
        strategy: DecoderStrategy::Concatenated,
        eval_points: None,
        concat: Some(Concatenation {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }),
    })
}

fn bits_to_symbol(bits: &[Symbol]) -> Symbol {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &bit)| acc | ((bit & 1) << i))
}

fn symbol_to_bits(v: Symbol, b: usize) -> Vec<Symbol> {
    (0..b).map(|i| (v >> i) & 1).collect()
}

fn concat_encode(
    outer: &LinearCodeInstance,
    inner: &LinearCodeInstance,
    bits: &[Symbol],
) -> Result<Vec<Symbol>> {
    let b = inner.m();
    let symbols: Vec<Symbol> = bits.chunks(b).map(bits_to_symbol).collect();
    let outer_word = outer.encode(&symbols)?;
    let mut out = Vec::with_capacity(outer_word.len() * inner.n());
    for v in outer_word {
        out.extend(inner.encode(&symbol_to_bits(v, b))?);
    }
    Ok(out)
}

fn decode_concatenated(
    code: &LinearCodeInstance,
    received: &[Symbol],
    erased: &[bool],
) -> Result<Vec<Symbol>> {
    let parts = code.concat.as_ref().expect("concatenated strategy implies parts");
    let (outer, inner) = (&parts.outer, &parts.inner);
    let n_in = inner.n();
    let b = inner.m();
    let mut symbols = Vec::with_capacity(outer.n());
    let mut outer_erasures = Vec::new();
    for (j, (block, mask)) in received.chunks(n_in).zip(erased.chunks(n_in)).enumerate() {
        let bits: Vec<Symbol> = block.iter().map(|&v| v & 1).collect();
        match brute_force_nearest(inner, &bits, mask) {
            Ok(msg) => symbols.push(bits_to_symbol(&msg)),
            Err(_) => {
                symbols.push(0);
                outer_erasures.push(j);
            }
        }
    }
    let msg = decode_hamming(outer, &symbols, &outer_erasures)?;
    Ok(msg.into_iter().flat_map(|v| symbol_to_bits(v, b)).collect())
}
