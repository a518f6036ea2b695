use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One closing bound of the perturbation estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub label: String,
    pub value: f64,
    pub positive: bool,
}

/// Evaluates the five lower bounds that keep the discrete convexity
/// estimates for `σ^δ` positive. Requires `0 <= delta < 1/4`.
pub fn delta_thresholds(delta: f64) -> Result<Vec<Threshold>> {
    if !(0.0..0.25).contains(&delta) {
        return Err(Error::ThresholdDomain(delta));
    }
    let d = delta;
    let quad = 96.0 * d + 576.0 * d * d;
    let bounds = [
        (
            "(4-144δ-640δ²)/(1-4δ)",
            (4.0 - 144.0 * d - 640.0 * d * d) / (1.0 - 4.0 * d),
        ),
        ("3-96δ-576δ²", 3.0 - quad),
        ("31/8-96δ-576δ²", 31.0 / 8.0 - quad),
        ("255/64-96δ-576δ²", 255.0 / 64.0 - quad),
        ("4-33δ", 4.0 - 33.0 * d),
    ];
    Ok(bounds
        .into_iter()
        .map(|(label, value)| Threshold {
            label: label.to_string(),
            value,
            positive: value > 0.0,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_terms_at_zero() {
        let v: Vec<f64> = delta_thresholds(0.0)
            .unwrap()
            .iter()
            .map(|t| t.value)
            .collect();
        assert_eq!(v, vec![4.0, 3.0, 31.0 / 8.0, 255.0 / 64.0, 4.0]);
    }

    #[test]
    fn second_bound_turns_negative() {
        let th = delta_thresholds(0.03).unwrap();
        assert!(!th[1].positive);
        assert!((th[1].value + 0.3984).abs() < 1e-12);
        assert!(!th[0].positive);
        assert!(th[2..].iter().all(|t| t.positive));
    }

    #[test]
    fn domain() {
        assert!(delta_thresholds(0.25).is_err());
        assert!(delta_thresholds(-1e-3).is_err());
        assert!(delta_thresholds(f64::NAN).is_err());
    }
}
