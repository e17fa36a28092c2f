//! Longest common subsequence, insertion/deletion edit distance with edit
//! scripts, and the seeded insertion/deletion channel.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// One edit, positions relative to the string as it stands when applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EditOp<T> {
    Insert { position: usize, symbol: T },
    Delete { position: usize },
}

/// Ordered edits transforming a source string into a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditScript<T> {
    pub ops: Vec<EditOp<T>>,
}

impl<T: Clone> EditScript<T> {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Applies the script to `source`. Out-of-range positions are a usage error.
    pub fn apply(&self, source: &[T]) -> Result<Vec<T>> {
        let mut out = source.to_vec();
        for op in &self.ops {
            match op {
                EditOp::Insert { position, symbol } if *position <= out.len() => {
                    out.insert(*position, symbol.clone())
                }
                EditOp::Delete { position } if *position < out.len() => {
                    out.remove(*position);
                }
                _ => return Err(Error::usage("edit position out of range")),
            }
        }
        Ok(out)
    }
}

fn lcs_table<T: PartialEq>(x: &[T], y: &[T]) -> Vec<Vec<u32>> {
    let mut t = vec![vec![0u32; y.len() + 1]; x.len() + 1];
    for i in 1..=x.len() {
        for j in 1..=y.len() {
            t[i][j] = if x[i - 1] == y[j - 1] {
                t[i - 1][j - 1] + 1
            } else {
                t[i - 1][j].max(t[i][j - 1])
            };
        }
    }
    t
}

/// LCS length only, in linear memory.
pub fn lcs_len<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    let mut prev = vec![0u32; y.len() + 1];
    let mut cur = vec![0u32; y.len() + 1];
    for xi in x {
        for (j, yj) in y.iter().enumerate() {
            cur[j + 1] = if xi == yj {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()] as usize
}

/// Length of a longest common subsequence and one monotone alignment
/// `(i, j)` with `x[i] == y[j]` realizing it.
pub fn lcs<T: PartialEq>(x: &[T], y: &[T]) -> (usize, Vec<(usize, usize)>) {
    let t = lcs_table(x, y);
    let (mut i, mut j) = (x.len(), y.len());
    let mut pairs = Vec::with_capacity(t[i][j] as usize);
    while i > 0 && j > 0 {
        if x[i - 1] == y[j - 1] && t[i][j] == t[i - 1][j - 1] + 1 {
            pairs.push((i - 1, j - 1));
            i -= 1;
            j -= 1;
        } else if t[i - 1][j] >= t[i][j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    pairs.reverse();
    (pairs.len(), pairs)
}

/// Insertion/deletion distance `|x| + |y| - 2 LCS(x, y)` with a script
/// realizing it.
pub fn edit_distance<T: PartialEq + Clone>(x: &[T], y: &[T]) -> (usize, EditScript<T>) {
    let (l, pairs) = lcs(x, y);
    let mut ops = Vec::with_capacity(x.len() + y.len() - 2 * l);
    let mut cursor = 0;
    let (mut xi, mut yj) = (0, 0);
    let anchors = pairs.into_iter().chain(std::iter::once((x.len(), y.len())));
    for (ai, aj) in anchors {
        for _ in xi..ai {
            ops.push(EditOp::Delete { position: cursor });
        }
        for sym in &y[yj..aj] {
            ops.push(EditOp::Insert {
                position: cursor,
                symbol: sym.clone(),
            });
            cursor += 1;
        }
        cursor += 1;
        xi = ai + 1;
        yj = aj + 1;
    }
    (x.len() + y.len() - 2 * l, EditScript { ops })
}

/// Distance only, without building a script.
pub fn edit_distance_len<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    x.len() + y.len() - 2 * lcs_len(x, y)
}

/// Deletes `n_del` uniformly chosen positions, then inserts `n_ins` symbols
/// uniform over `0..alphabet` at uniform positions of the shortened string.
pub fn insdel_channel(
    z: &[u32],
    n_ins: usize,
    n_del: usize,
    alphabet: u64,
    seed: u64,
) -> Result<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    insdel_channel_in(z, 0..z.len(), n_ins, n_del, alphabet, &mut rng)
}

/// Like [`insdel_channel`], confining all edits to `window` of `z`.
///
/// Insertions may land at either end of the (shortened) window.
pub fn insdel_channel_in<R: Rng>(
    z: &[u32],
    window: std::ops::Range<usize>,
    n_ins: usize,
    n_del: usize,
    alphabet: u64,
    rng: &mut R,
) -> Result<Vec<u32>> {
    if window.end > z.len() || window.start > window.end {
        return Err(Error::usage("channel window outside the word"));
    }
    if n_del > window.len() {
        return Err(Error::usage(format!(
            "cannot delete {n_del} symbols from {}",
            window.len()
        )));
    }
    if n_ins > 0 && alphabet == 0 {
        return Err(Error::usage("insertions need a nonempty alphabet"));
    }
    let mut doomed = vec![false; window.len()];
    for i in index::sample(rng, window.len(), n_del) {
        doomed[i] = true;
    }
    let mut middle: Vec<u32> = z[window.clone()]
        .iter()
        .zip(&doomed)
        .filter(|(_, &d)| !d)
        .map(|(&s, _)| s)
        .collect();
    for _ in 0..n_ins {
        let pos = rng.gen_range(0..=middle.len());
        middle.insert(pos, rng.gen_range(0..alphabet) as u32);
    }
    let mut out = Vec::with_capacity(z.len() + n_ins - n_del);
    out.extend_from_slice(&z[..window.start]);
    out.extend(middle);
    out.extend_from_slice(&z[window.end..]);
    Ok(out)
}

/// Exact minimum edit distance over all pairs of distinct list entries.
pub fn min_pairwise_edit_distance<T: PartialEq>(codewords: &[Vec<T>]) -> Result<usize> {
    if codewords.len() < 2 {
        return Err(Error::usage("need at least two codewords"));
    }
    let mut best = usize::MAX;
    for (i, a) in codewords.iter().enumerate() {
        for b in &codewords[i + 1..] {
            best = best.min(edit_distance_len(a, b));
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}
