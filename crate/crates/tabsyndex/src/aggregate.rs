//! Unified score: clamps each component into [0, 1] and takes a weighted
//! mean, renormalizing the weights over whichever components were computed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Component weights in the fixed order basic, corr, pmse, coverage, ml.
/// All default to 1 (the plain arithmetic mean).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightConfig {
    pub weights: [f64; 5],
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig { weights: [1.0; 5] }
    }
}

impl WeightConfig {
    pub fn new(weights: [f64; 5]) -> Result<Self> {
        let config = WeightConfig { weights };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidArgument {
                name: "weights".to_string(),
                message: "weights must be finite and nonnegative".to_string(),
            });
        }
        if self.weights.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "weights".to_string(),
                message: "at least one weight must be positive".to_string(),
            });
        }
        Ok(())
    }
}

/// Truncates a raw component into [0, 1]: negatives become 0, values over
/// 1 become 1.
pub fn clamp_unit<F: Scalar>(x: F) -> F {
    x.max(F::zero()).min(F::one())
}

/// TabSynDex over the computed components (order: basic, corr, pmse,
/// coverage, ml). Weights renormalize over the computed subset.
pub fn aggregate<F: Scalar>(raw: &[Option<F>; 5], weights: &WeightConfig) -> Result<F> {
    weights.validate()?;
    let mut total = F::zero();
    let mut weight_sum = F::zero();
    for (component, &weight) in raw.iter().zip(&weights.weights) {
        let Some(value) = component else { continue };
        let w = F::c(weight);
        total = total + w * clamp_unit(*value);
        weight_sum = weight_sum + w;
    }
    if weight_sum <= F::zero() {
        return Err(Error::InsufficientData(
            "no positively weighted component was computed".to_string(),
        ));
    }
    Ok(total / weight_sum)
}
