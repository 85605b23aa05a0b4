//! Named constants of the inequalities and the table of reference values.

use serde::{Deserialize, Serialize};

/// Exponent of the cubic bound and of the large-measure inequality.
pub const CUBIC_BETA: f64 = 0.53;

/// `log2(3/2)`, the smallest exponent for which `2 t (1 - t)` is attainable.
pub fn beta0() -> f64 {
    1.5f64.log2()
}

/// `1/log2(3/2) - 1`.
pub fn gamma() -> f64 {
    1.0 / beta0() - 1.0
}

/// `2 sqrt(2^{beta+1} - 2)`.
pub fn c_beta(beta: f64) -> f64 {
    2.0 * (2f64.powf(beta + 1.0) - 2.0).sqrt()
}

/// `2^{beta+2} / 3`, the ceiling imposed by codimension-2 subcubes.
pub fn c_beta_ceiling(beta: f64) -> f64 {
    2f64.powf(beta + 2.0) / 3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedConstant {
    pub name: String,
    pub expression: String,
    pub value: f64,
    /// Leading digits the value is expected to start with.
    pub printed: Option<String>,
    pub matches_printed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsTable {
    pub constants: Vec<NamedConstant>,
    pub comparisons: Vec<Comparison>,
    pub passed: bool,
}

/// Whether the decimal expansion of `value` begins with `digits`.
pub fn prefix_matches(value: f64, digits: &str) -> bool {
    format!("{value:.15}").starts_with(digits)
}

fn constant(name: &str, expression: &str, value: f64, printed: Option<&str>) -> NamedConstant {
    NamedConstant {
        name: name.into(),
        expression: expression.into(),
        value,
        printed: printed.map(String::from),
        matches_printed: printed.is_none_or(|p| prefix_matches(value, p)),
    }
}

fn greater(lhs: &NamedConstant, rhs: &NamedConstant) -> Comparison {
    Comparison {
        lhs: lhs.name.clone(),
        rhs: rhs.name.clone(),
        lhs_value: lhs.value,
        rhs_value: rhs.value,
        holds: lhs.value > rhs.value,
    }
}

pub fn reference_constants() -> ConstantsTable {
    let half_c = (2f64.powf(1.5) - 2.0).sqrt();
    let gauss = (2.0 / std::f64::consts::PI).sqrt();
    let constants = vec![
        constant("beta0", "log2(3/2)", beta0(), Some("0.5849")),
        constant("c_half", "2*sqrt(2^(3/2)-2)", c_beta(0.5), Some("1.82")),
        constant("sqrt3", "sqrt(3)", 3f64.sqrt(), Some("1.73")),
        constant("gamma", "1/log2(3/2)-1", gamma(), Some("0.709")),
        constant("half_c_half", "sqrt(2^(3/2)-2)", half_c, Some("0.91")),
        constant("sqrt_2_over_pi", "sqrt(2/pi)", gauss, Some("0.79")),
        constant("poincare_gap", "sqrt(2^(3/2)-2)-sqrt(2/pi)", half_c - gauss, Some("0.112")),
        constant("c_ceiling_half", "2^(1/2+2)/3", c_beta_ceiling(0.5), None),
        constant("codim2_moment_half", "2^(1/2)/4", 2f64.sqrt() / 4.0, None),
    ];
    let by = |n: &str| constants.iter().find(|c| c.name == n).expect("listed above");
    let comparisons = vec![
        greater(by("c_half"), by("sqrt3")),
        greater(by("half_c_half"), by("sqrt_2_over_pi")),
        greater(by("c_ceiling_half"), by("c_half")),
    ];
    let passed = constants.iter().all(|c| c.matches_printed) && comparisons.iter().all(|c| c.holds);
    ConstantsTable { constants, comparisons, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((beta0() - 0.584_962_500_721_156).abs() < 1e-15);
        assert_eq!(2f64.powf(beta0()) / 4.0, 0.375);
        assert!((c_beta(0.5) - 1.820_359_4).abs() < 1e-7);
        assert!((gamma() - 0.709_511_3).abs() < 1e-7);
        // At beta0 the optimal constant is 2.
        assert!((c_beta(beta0()) - 2.0).abs() < 1e-15);
        assert!((c_beta_ceiling(beta0()) - 2.0).abs() < 1e-15);
        let t = reference_constants();
        assert!(t.passed, "{t:#?}");
    }

    #[test]
    fn prefix_matching_truncates() {
        assert!(prefix_matches(0.7095113, "0.709"));
        assert!(prefix_matches(1.8203594, "1.82"));
        assert!(!prefix_matches(1.8203594, "1.83"));
        assert!(!prefix_matches(0.7799, "0.78 "));
    }
}
