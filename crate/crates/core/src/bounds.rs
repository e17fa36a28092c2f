//! Asymptotic rate bounds for linear insdel codes.

use serde::Serialize;

use crate::error::{Error, Result};

/// Binary entropy with `H(0) = H(1) = 0`.
pub fn entropy(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::usage(format!("delta = {delta} outside [0, 1]")));
    }
    if delta == 0.0 || delta == 1.0 {
        return Ok(0.0);
    }
    Ok(-delta * delta.log2() - (1.0 - delta) * (1.0 - delta).log2())
}

fn check(delta: f64, q: u64) -> Result<()> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::usage(format!("delta = {delta} outside [0, 1)")));
    }
    if q < 2 {
        return Err(Error::usage("alphabet size must be at least 2"));
    }
    Ok(())
}

/// Rate achieved by random linear codes, `(1 - delta) / 2 - H(delta) / log2 q`.
/// Non-positive values mean the bound says nothing.
pub fn existence_rate(delta: f64, q: u64) -> Result<f64> {
    check(delta, q)?;
    Ok((1.0 - delta) / 2.0 - entropy(delta)? / (q as f64).log2())
}

/// `(1 - delta) / 2`.
pub fn half_singleton(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::usage(format!("delta = {delta} outside [0, 1]")));
    }
    Ok((1.0 - delta) / 2.0)
}

/// `(1 - q delta / (q - 1)) / 2`, clamped at 0.
pub fn half_plotkin(delta: f64, q: u64) -> Result<f64> {
    check(delta, q)?;
    let qf = q as f64;
    Ok((0.5 * (1.0 - qf * delta / (qf - 1.0))).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub delta: f64,
    pub existence: f64,
    pub half_singleton: f64,
    pub half_plotkin: f64,
}

pub fn bound_row(delta: f64, q: u64) -> Result<BoundRow> {
    Ok(BoundRow {
        delta,
        existence: existence_rate(delta, q)?,
        half_singleton: half_singleton(delta)?,
        half_plotkin: half_plotkin(delta, q)?,
    })
}

/// `points` evenly spaced values of `delta` in `[0, 1)`.
pub fn sweep(q: u64, points: usize) -> Result<Vec<BoundRow>> {
    (0..points)
        .map(|i| bound_row(i as f64 / points as f64, q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(0.5).unwrap(), 1.0);
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert!((entropy(0.25).unwrap() - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-12);
        assert!(entropy(1.5).is_err());
    }

    #[test]
    fn entropy_matches_series() {
        // H(1/2 - x) = 1 - (1 / ln 2) sum_k (2x)^{2k} / (2k (2k - 1))
        for x in [0.05, 0.1, 0.2, 0.3] {
            let s: f64 = (1..200)
                .map(|k| {
                    let k = k as f64;
                    (2.0 * x as f64).powf(2.0 * k) / (2.0 * k * (2.0 * k - 1.0))
                })
                .sum();
            let series = 1.0 - s / std::f64::consts::LN_2;
            assert!((entropy(0.5 - x).unwrap() - series).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn point_values() {
        assert!((half_plotkin(0.25, 2).unwrap() - 0.25).abs() < 1e-12);
        assert!((half_singleton(0.2).unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(half_singleton(1.0).unwrap(), 0.0);
        assert_eq!(existence_rate(0.0, 7).unwrap(), 0.5);
        assert!((existence_rate(0.01, 2).unwrap() - (0.495 - entropy(0.01).unwrap())).abs() < 1e-12);
        assert!((existence_rate(0.01, 2).unwrap() - 0.41421).abs() < 1e-4);
        assert_eq!(half_plotkin(0.9, 2).unwrap(), 0.0);
        assert!((half_plotkin(0.3, 1 << 40).unwrap() - half_singleton(0.3).unwrap()).abs() < 1e-9);
        assert!((existence_rate(0.3, 1 << 60).unwrap() - 0.35).abs() < 0.02);
    }

    #[test]
    fn orderings_and_monotonicity() {
        for q in [2u64, 3, 4, 16, 256] {
            let rows = sweep(q, 50).unwrap();
            for r in &rows {
                assert!(r.existence <= r.half_singleton);
                assert!(r.half_plotkin <= r.half_singleton);
            }
            for w in rows.windows(2) {
                assert!(w[1].half_singleton <= w[0].half_singleton);
                assert!(w[1].half_plotkin <= w[0].half_plotkin);
                if w[1].delta <= 0.5 {
                    assert!(w[1].existence <= w[0].existence);
                }
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(existence_rate(1.0, 2).is_err());
        assert!(half_plotkin(0.1, 1).is_err());
    }
}
