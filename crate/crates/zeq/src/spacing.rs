//! Nearest-neighbor gap statistics and small-gap fractions.

use crate::sum::Neumaier;
use crate::zero_finder::ZeroTable;
use crate::{Error, Result};
use serde::Serialize;

/// One consecutive-gap record.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GapRecord {
    /// the lower ordinate of the pair
    pub gamma: f64,
    pub gap_raw: f64,
    /// gap times the local density log(gamma/2pi)/2pi, so the mean is ~1
    pub gap_normalized: f64,
}

/// All N-1 consecutive gaps. Raw differences are exact: adjacent ordinates
/// are within a factor two of each other, so the subtraction does not round.
pub fn normalized_gaps(table: &ZeroTable) -> Result<Vec<GapRecord>> {
    if table.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 ordinates for gaps, have {}",
            table.len()
        )));
    }
    let gammas: Vec<f64> = table.gammas().collect();
    Ok(gammas
        .windows(2)
        .map(|w| {
            let gap_raw = w[1] - w[0];
            GapRecord {
                gamma: w[0],
                gap_raw,
                gap_normalized: gap_raw * (w[0] / std::f64::consts::TAU).ln()
                    / std::f64::consts::TAU,
            }
        })
        .collect())
}

pub fn mean_normalized_gap(records: &[GapRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    let mut acc = Neumaier::new();
    for r in records {
        acc.add(r.gap_normalized);
    }
    acc.value() / records.len() as f64
}

/// Empirical small-gap content at one lambda.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmallGapFraction {
    pub lambda: f64,
    /// (1/N) #{gaps <= lambda / log T}
    pub fraction: f64,
    pub fraction_over_lambda: f64,
    /// fraction / lambda^delta for a caller-chosen delta
    pub fraction_over_lambda_delta: f64,
    pub delta: f64,
}

/// Fraction of consecutive gaps at or below lambda / log T.
pub fn small_gap_fraction(table: &ZeroTable, lambda: f64, delta: f64) -> Result<SmallGapFraction> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "small-gap fraction needs 0 < lambda < 1, got {lambda}"
        )));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, 1], got {delta}"
        )));
    }
    if table.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 ordinates".into()));
    }
    let threshold = lambda / table.t_max().ln();
    let gammas: Vec<f64> = table.gammas().collect();
    let count = gammas
        .windows(2)
        .filter(|w| w[1] - w[0] <= threshold)
        .count();
    let fraction = count as f64 / table.len() as f64;
    Ok(SmallGapFraction {
        lambda,
        fraction,
        fraction_over_lambda: fraction / lambda,
        fraction_over_lambda_delta: fraction / lambda.powf(delta),
        delta,
    })
}

/// Least-squares slope of log fraction against log lambda; None when any
/// fraction on the grid is zero (the log is undefined there).
pub fn fitted_exponent(table: &ZeroTable, lambdas: &[f64]) -> Result<Option<f64>> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &l in lambdas {
        let f = small_gap_fraction(table, l, 1.0)?;
        if f.fraction == 0.0 {
            return Ok(None);
        }
        xs.push(l.ln());
        ys.push(f.fraction.ln());
    }
    if xs.len() < 2 {
        return Ok(None);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    Ok(Some(num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zero_finder::{find_zeros, Source, ZeroTable};

    #[test]
    fn two_ordinate_gap() {
        let table =
            ZeroTable::from_gammas(&[14.134725, 21.022040], 22.0, Source::Imported).unwrap();
        let gaps = normalized_gaps(&table).unwrap();
        assert_eq!(gaps.len(), 1);
        assert!((gaps[0].gap_raw - 6.887315).abs() < 1e-9);
        assert_eq!(gaps[0].gamma, 14.134725);
        assert!(gaps[0].gap_normalized > 0.0);
    }

    #[test]
    fn gaps_need_two_ordinates() {
        let table = find_zeros(0.0, 15.0).unwrap();
        assert!(normalized_gaps(&table).is_err());
    }

    #[test]
    fn all_gaps_positive_and_telescoping() {
        let table = find_zeros(0.0, 200.0).unwrap();
        let gaps = normalized_gaps(&table).unwrap();
        assert!(gaps.iter().all(|g| g.gap_raw > 0.0 && g.gap_normalized > 0.0));
        // exact telescoping in double-double
        use crate::dd::Dd;
        let mut acc = Dd::ZERO;
        for g in &gaps {
            acc = acc.add_f64(g.gap_raw);
        }
        let gammas: Vec<f64> = table.gammas().collect();
        let direct = Dd::from_f64(*gammas.last().unwrap()).sub_f64(gammas[0]);
        assert_eq!(acc.sub(direct).to_f64(), 0.0);
    }

    #[test]
    fn fraction_monotone_in_lambda() {
        let table = find_zeros(0.0, 300.0).unwrap();
        let mut prev = -1.0;
        for l in [0.05, 0.1, 0.2, 0.4, 0.8, 0.99] {
            let f = small_gap_fraction(&table, l, 1.0).unwrap().fraction;
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn tiny_lambda_fraction_vanishes() {
        let table = find_zeros(0.0, 100.0).unwrap();
        let f = small_gap_fraction(&table, 1e-9, 1.0).unwrap();
        assert_eq!(f.fraction, 0.0);
    }

    #[test]
    fn parameter_validation() {
        let table = find_zeros(0.0, 100.0).unwrap();
        assert!(small_gap_fraction(&table, 0.0, 1.0).is_err());
        assert!(small_gap_fraction(&table, 1.0, 1.0).is_err());
        assert!(small_gap_fraction(&table, 0.5, 0.0).is_err());
        assert!(small_gap_fraction(&table, 0.5, 1.5).is_err());
    }
}
