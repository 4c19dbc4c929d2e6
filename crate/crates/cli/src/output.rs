//! Output formatting shared by the subcommands.

/// Format with 9 significant digits.
///
/// Sweep CSVs carry probabilities and ratios in [0, 1], where plain decimal
/// notation gives a stable column width and enough digits to round-trip
/// comparisons at 1e-9. Magnitudes below 1e-9 (rounding residue of values
/// that are analytically zero) switch to scientific notation instead of
/// stretching the column.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".to_string();
    }
    if x.abs() < 1e-9 {
        return format!("{x:.8e}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (8 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(1.0), "1.00000000");
        assert_eq!(sig9(0.25), "0.250000000");
        assert_eq!(sig9(0.0761871337890625), "0.0761871338");
        assert_eq!(sig9(0.5078125), "0.507812500");
        assert_eq!(sig9(0.0), "0.000000000");
        assert_eq!(sig9(1.5e-32), "1.50000000e-32");
    }
}
