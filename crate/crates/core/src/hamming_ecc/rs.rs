//! Reed–Solomon evaluation codes and the Berlekamp–Welch decoder.

use crate::error::{Error, Result};
use crate::gf::{Field, Symbol};

use super::linalg;

/// Horner evaluation of `coeffs` (lowest degree first) at `x`.
pub(crate) fn poly_eval(field: &Field, coeffs: &[Symbol], x: Symbol) -> Symbol {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

/// Long division; returns `(quotient, remainder)`. `divisor` must be nonzero
/// with a nonzero leading coefficient.
pub(crate) fn poly_divmod(
    field: &Field,
    num: &[Symbol],
    divisor: &[Symbol],
) -> (Vec<Symbol>, Vec<Symbol>) {
    let dd = divisor.len() - 1;
    let lead_inv = field.inv(divisor[dd]).expect("monic-able divisor");
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = field.mul(rem[i + dd], lead_inv);
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in divisor.iter().enumerate() {
                rem[i + j] = field.sub(rem[i + j], field.mul(c, dj));
            }
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Vandermonde generator: row `r` holds `alpha_j^r`.
pub(crate) fn vandermonde(field: &Field, points: &[Symbol], m: usize) -> Vec<Vec<Symbol>> {
    (0..m)
        .map(|r| points.iter().map(|&a| field.pow(a, r as u64)).collect())
        .collect()
}

/// Berlekamp–Welch decoding of an evaluation code of dimension `k`.
///
/// `received` pairs evaluation points with received values; erased
/// coordinates must already be excluded. Succeeds iff some polynomial of
/// degree `< k` disagrees with at most `(N - k) / 2` of the `N` points, and
/// returns its coefficients.
pub fn berlekamp_welch(field: &Field, received: &[(Symbol, Symbol)], k: usize) -> Result<Vec<Symbol>> {
    let n = received.len();
    if n < k {
        return Err(Error::decode(format!(
            "only {n} unerased positions for dimension {k}"
        )));
    }
    let e = (n - k) / 2;
    // unknowns: E_0..E_{e-1}, Q_0..Q_{e+k-1}
    let unknowns = 2 * e + k;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for &(x, r) in received {
        let mut row = vec![0; unknowns];
        let mut xp = 1;
        for slot in row.iter_mut().take(e) {
            *slot = field.neg(field.mul(r, xp));
            xp = field.mul(xp, x);
        }
        // xp == x^e here
        b.push(field.mul(r, xp));
        let mut xq = 1;
        for slot in row.iter_mut().skip(e) {
            *slot = xq;
            xq = field.mul(xq, x);
        }
        a.push(row);
    }
    let sol = linalg::solve(field, &a, &b)
        .ok_or_else(|| Error::decode("key equation has no solution"))?;
    let mut locator = sol[..e].to_vec();
    locator.push(1);
    let q = &sol[e..];
    let (mut p, rem) = poly_divmod(field, q, &locator);
    if rem.iter().any(|&c| c != 0) {
        return Err(Error::decode("error locator does not divide interpolant"));
    }
    p.resize(k, 0);
    let disagreements = received
        .iter()
        .filter(|&&(x, r)| poly_eval(field, &p, x) != r)
        .count();
    if disagreements > e {
        return Err(Error::decode(format!(
            "{disagreements} disagreements exceed radius {e}"
        )));
    }
    Ok(p)
}
