//! Small-bias bit generator used to derandomize separator sequences.
//!
//! The seed is a pair `(x, y)` of elements of `GF(2^w)` and output bit `i` is
//! the GF(2) inner product of the bit vectors of `x^i` and `y`. Every nonempty
//! parity of the first `n_g` output bits has bias at most `(n_g - 1) / 2^w`,
//! which bounds every `k`-bit marginal's distance from uniform in max norm by
//! the same quantity.

use crate::error::{Error, Result};
use crate::gf::{Field, Symbol, MAX_BINARY_DEGREE};

/// Default enumeration budget for [`prg_verify_marginals`].
pub const DEFAULT_MARGINAL_BUDGET: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrgSpec {
    /// Output length in bits.
    pub n_g: usize,
    /// Max-norm slack promised for every marginal.
    pub epsilon: f64,
    /// Degree `w` of the field the seed lives in.
    pub field_degree: u32,
}

impl PrgSpec {
    /// Picks the smallest `w` with `2^w >= n_g / epsilon`.
    pub fn new(n_g: usize, epsilon: f64) -> Result<Self> {
        if n_g == 0 || !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::parameter("need n_g >= 1 and epsilon in (0, 1]"));
        }
        let target = n_g as f64 / epsilon;
        let w = (1..=MAX_BINARY_DEGREE)
            .find(|&w| (1u64 << w) as f64 >= target)
            .ok_or_else(|| Error::parameter(format!("n_g / epsilon = {target} needs a field over 2^32")))?;
        Ok(PrgSpec {
            n_g,
            epsilon,
            field_degree: w,
        })
    }

    /// Fixes `w`; the promised slack becomes `n_g / 2^w`.
    pub fn with_degree(n_g: usize, w: u32) -> Result<Self> {
        if n_g == 0 || w == 0 || w > MAX_BINARY_DEGREE {
            return Err(Error::parameter("need n_g >= 1 and 1 <= w <= 32"));
        }
        Ok(PrgSpec {
            n_g,
            epsilon: n_g as f64 / (1u64 << w) as f64,
            field_degree: w,
        })
    }

    /// Seed length `d = 2w` in bits.
    pub fn seed_bits(&self) -> u32 {
        2 * self.field_degree
    }

    /// Number of distinct seeds, `2^d`.
    pub fn seed_count(&self) -> u64 {
        1u64 << self.seed_bits()
    }
}

/// The generator instantiated at one seed.
#[derive(Debug, Clone)]
pub struct PowerPrg {
    spec: PrgSpec,
    field: Field,
    x: Symbol,
    y: Symbol,
}

impl PowerPrg {
    /// Seed packs `x` in the high `w` bits and `y` in the low `w` bits.
    pub fn new(spec: PrgSpec, seed: u64) -> Result<Self> {
        Self::with_field(spec, Field::binary(spec.field_degree)?, seed)
    }

    /// Like [`PowerPrg::new`] with a prebuilt `GF(2^w)`, for seed sweeps.
    pub fn with_field(spec: PrgSpec, field: Field, seed: u64) -> Result<Self> {
        let w = spec.field_degree;
        if field.q() != 1u64 << w {
            return Err(Error::usage("field size does not match the generator"));
        }
        if seed >> spec.seed_bits() != 0 {
            return Err(Error::usage(format!("seed {seed:#x} longer than {} bits", spec.seed_bits())));
        }
        let mask = (1u64 << w) - 1;
        Ok(PowerPrg {
            spec,
            field,
            x: ((seed >> w) & mask) as Symbol,
            y: (seed & mask) as Symbol,
        })
    }

    /// Seed given as exactly `d` bits, most significant first.
    pub fn from_bits(spec: PrgSpec, bits: &[bool]) -> Result<Self> {
        if bits.len() != spec.seed_bits() as usize {
            return Err(Error::usage(format!(
                "seed has {} bits, expected {}",
                bits.len(),
                spec.seed_bits()
            )));
        }
        let seed = bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
        Self::new(spec, seed)
    }

    fn inner(&self, v: Symbol) -> bool {
        (v & self.y).count_ones() % 2 == 1
    }

    /// Bit `i`, computed without materializing the others.
    pub fn bit(&self, i: usize) -> bool {
        self.inner(self.field.pow(self.x, i as u64))
    }

    /// All `n_g` output bits.
    pub fn bits(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.spec.n_g);
        let mut power: Symbol = 1;
        for _ in 0..self.spec.n_g {
            out.push(self.inner(power));
            power = self.field.mul(power, self.x);
        }
        out
    }
}

/// Output bits for `seed`.
pub fn prg_generate(spec: PrgSpec, seed: u64) -> Result<Vec<bool>> {
    Ok(PowerPrg::new(spec, seed)?.bits())
}

/// A finite multiset of equally likely output strings of at most 64 bits.
pub trait SampleSpace {
    fn output_len(&self) -> usize;
    fn size(&self) -> u64;
    /// Bit `i` of the returned word is output bit `i` of sample `index`.
    fn sample(&self, index: u64) -> u64;
}

/// The full seed space of the powering generator.
pub struct PowerSampleSpace(pub PrgSpec);

impl SampleSpace for PowerSampleSpace {
    fn output_len(&self) -> usize {
        self.0.n_g
    }

    fn size(&self) -> u64 {
        self.0.seed_count()
    }

    fn sample(&self, index: u64) -> u64 {
        let prg = PowerPrg::new(self.0, index).expect("index below seed count");
        pack(&prg.bits())
    }
}

/// Every string of the given length, once.
pub struct UniformSampleSpace(pub usize);

impl SampleSpace for UniformSampleSpace {
    fn output_len(&self) -> usize {
        self.0
    }

    fn size(&self) -> u64 {
        1u64 << self.0
    }

    fn sample(&self, index: u64) -> u64 {
        index
    }
}

/// A point mass on one string.
pub struct ConstantSampleSpace {
    pub len: usize,
    pub value: u64,
}

impl SampleSpace for ConstantSampleSpace {
    fn output_len(&self) -> usize {
        self.len
    }

    fn size(&self) -> u64 {
        1
    }

    fn sample(&self, _: u64) -> u64 {
        self.value
    }
}

fn pack(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Max over all `k`-subsets of output positions and all `2^k` patterns of
/// `|Pr[pattern] - 2^-k|`, by exhaustive enumeration of the sample space.
pub fn prg_verify_marginals(space: &dyn SampleSpace, k: usize, budget: u64) -> Result<f64> {
    let n = space.output_len();
    if n > 64 || k == 0 || k > n {
        return Err(Error::usage(format!("need 1 <= k <= n_g <= 64, got k = {k}, n_g = {n}")));
    }
    let work = (space.size() as u128) * u128::from(binomial(n, k)) * (1u128 << k);
    if work > u128::from(budget) {
        return Err(Error::capacity(format!("marginal check needs {work} steps, budget {budget}")));
    }
    let samples: Vec<u64> = (0..space.size()).map(|i| space.sample(i)).collect();
    let total = samples.len() as f64;
    let target = 1.0 / (1u64 << k) as f64;
    let mut worst = 0.0f64;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut counts = vec![0u64; 1 << k];
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for &s in &samples {
            let pattern = idx
                .iter()
                .enumerate()
                .fold(0usize, |acc, (b, &pos)| acc | ((((s >> pos) & 1) as usize) << b));
            counts[pattern] += 1;
        }
        for &c in &counts {
            worst = worst.max((c as f64 / total - target).abs());
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(worst)
}
