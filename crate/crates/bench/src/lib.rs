//! Benchmark instances.

use diomon::EquationSpec;

/// `x + (c/2 + 1) y ≡ 0 (mod c)`; for prime `c` the Apéry set has `c` elements.
pub fn two_variable(moduli: &[u64]) -> Vec<EquationSpec> {
    moduli
        .iter()
        .map(|&c| EquationSpec::normalize(&[1, c / 2 + 1, c]).expect("valid coefficients"))
        .collect()
}

/// A fixed spread of higher-dimensional instances.
pub fn higher_dimensional() -> Vec<EquationSpec> {
    [
        &[3u64, 4, 5, 12][..],
        &[2, 7, 9, 11],
        &[1, 2, 3, 4, 6],
        &[4, 6, 9, 10, 12],
        &[5, 7, 11, 13, 30],
    ]
    .iter()
    .map(|raw| EquationSpec::normalize(raw).expect("valid coefficients"))
    .collect()
}

pub fn label(spec: &EquationSpec) -> String {
    spec.raw().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
