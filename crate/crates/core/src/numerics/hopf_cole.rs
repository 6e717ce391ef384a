use super::{NumericsError, SampledField};

/// `τ = k_s / k` with fourth-order differences.
pub fn hopf_cole(k: &SampledField) -> Result<SampledField, NumericsError> {
    if let Some((index, &value)) = k.values().iter().enumerate().find(|(_, v)| **v <= 0.0) {
        return Err(NumericsError::NonPositiveSample { index, value });
    }
    let dk = k.derivative(1, 4)?;
    let values = dk.values().iter().zip(k.values()).map(|(d, v)| d / v).collect();
    k.with_values(values)
}

/// `k = c·exp ∫_{s₀}^{s} τ`, so that `k(s₀) = c`. The result lives on the same
/// samples as `tau` but is never periodic.
pub fn inverse_hopf_cole(tau: &SampledField, c: f64) -> Result<SampledField, NumericsError> {
    if !(c > 0.0) {
        return Err(NumericsError::NonPositiveSample { index: 0, value: c });
    }
    Ok(tau.cumulative_integral().map(|f| c * f.exp()))
}
