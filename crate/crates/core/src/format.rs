//! Text output shared by the table, polygon and matrix writers.

use serde::{Deserialize, Serialize};

/// Significant digits of every CSV number.
pub const CSV_DIGITS: usize = 12;

/// `x` with `sig` significant digits in the style of C's `%g`: fixed notation
/// for decimal exponents in `[-5, sig)`, scientific otherwise, trailing zeros
/// trimmed.
pub fn format_general(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_fraction(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_csv_number(x: f64) -> String {
    format_general(x, CSV_DIGITS)
}

/// Scalar result written as JSON by the command line front end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarResult {
    pub quantity: String,
    pub dim: Option<String>,
    pub value: f64,
    pub tolerance_used: Option<f64>,
}

/// A rectangular table of numbers with named columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format_csv_number(*x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format() {
        assert_eq!(format_general(0.0, 12), "0");
        assert_eq!(format_general(0.125, 12), "0.125");
        assert_eq!(format_general(-2.5, 12), "-2.5");
        assert_eq!(format_general(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_general(2.5964095769859457, 12), "2.59640957699");
        assert_eq!(format_general(1.5e-20, 12), "1.5e-20");
        assert_eq!(format_general(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_general(1e-5, 12), "0.00001");
        assert_eq!(format_general(0.1, 17), "0.10000000000000001");
    }

    #[test]
    fn seventeen_digits_roundtrip() {
        for x in [0.1, 1.0 / 3.0, -2.0f64.sqrt(), 6.02214076e23, 1.602e-19, 0.0102515] {
            let s = format_general(x, 17);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn csv_table() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![1.0, 0.5]);
        t.push(vec![-3.25, 1e-9]);
        assert_eq!(t.to_csv(), "a,b\n1,0.5\n-3.25,1e-9\n");
        assert_eq!(t.column("b").unwrap(), vec![0.5, 1e-9]);
        assert!(t.column("c").is_none());
    }
}
