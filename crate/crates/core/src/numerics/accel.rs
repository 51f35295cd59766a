use rug::ops::Pow;
use rug::Float;

/// Result of a Richardson extrapolation.
#[derive(Clone, Debug)]
pub struct RichardsonTable {
    pub value: Float,
    /// Difference between the last two diagonal entries.
    pub error_estimate: Float,
}

/// Richardson extrapolation of partial results `S(K_0 2^i)`, `i = 0..m`,
/// whose error expands as `Σ_j c_j K^{-e_j}` with the given exponents.
///
/// `partials.len()` must not exceed `exponents.len() + 1`.
pub fn richardson_limit(partials: &[Float], exponents: &[f64]) -> RichardsonTable {
    assert!(!partials.is_empty());
    let bits = partials[0].prec();
    let mut row: Vec<Float> = partials.to_vec();
    let mut last_diag = vec![row.last().unwrap().clone()];
    for (j, e) in exponents.iter().enumerate().take(partials.len() - 1) {
        let factor = Float::with_val(bits, Float::with_val(bits, 2).pow(*e));
        let denom = Float::with_val(bits, &factor - 1u32);
        let next: Vec<Float> = (1..row.len())
            .map(|i| {
                let a = Float::with_val(bits, &factor * &row[i]);
                Float::with_val(bits, a - &row[i - 1]) / &denom
            })
            .collect();
        row = next;
        let _ = j;
        last_diag.push(row.last().unwrap().clone());
    }
    let value = last_diag.last().unwrap().clone();
    let error_estimate = if last_diag.len() >= 2 {
        Float::with_val(bits, &last_diag[last_diag.len() - 1] - &last_diag[last_diag.len() - 2]).abs()
    } else {
        Float::with_val(bits, f64::INFINITY)
    };
    RichardsonTable {
        value,
        error_estimate,
    }
}
