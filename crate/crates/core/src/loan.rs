//! Loan payments as a flat interest charge: the yearly interest on the
//! principal, spread per month, multiplied by the number of periods. This is
//! not an amortizing annuity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::parse_number;
use crate::render::{DisplayLine, Presentable};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoanInput {
    pub amount: f64,
    pub annual_rate_percent: f64,
    /// Number of months/years, used as a plain multiplier.
    pub periods: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoanSchedule {
    pub monthly_payment: f64,
    pub yearly_payment: f64,
}

/// A form field that may hold a number or the raw text a user typed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumericField {
    Number(f64),
    Text(String),
}

impl NumericField {
    pub fn value(&self) -> Option<f64> {
        match self {
            NumericField::Number(v) => Some(*v).filter(|v| v.is_finite()),
            NumericField::Text(t) => parse_number(t),
        }
    }
}

impl From<f64> for NumericField {
    fn from(v: f64) -> Self {
        NumericField::Number(v)
    }
}

impl From<&str> for NumericField {
    fn from(t: &str) -> Self {
        NumericField::Text(t.to_string())
    }
}

/// Unvalidated loan entry. Fields are checked in form order, amount first,
/// and the first non-number stops the calculation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LoanForm {
    pub amount: Option<NumericField>,
    pub annual_rate_percent: Option<NumericField>,
    pub periods: Option<NumericField>,
}

impl LoanForm {
    pub fn from_text(amount: &str, annual_rate_percent: &str, periods: &str) -> Self {
        LoanForm {
            amount: Some(amount.into()),
            annual_rate_percent: Some(annual_rate_percent.into()),
            periods: Some(periods.into()),
        }
    }

    pub fn into_input(self) -> Result<LoanInput> {
        let read = |field: &Option<NumericField>, name: &str, label: &str| {
            field
                .as_ref()
                .and_then(NumericField::value)
                .ok_or_else(|| Error::not_a_number(name, label))
        };
        Ok(LoanInput {
            amount: read(&self.amount, "amount", "Loan Amount")?,
            annual_rate_percent: read(&self.annual_rate_percent, "annual_rate_percent", "rate of interest")?,
            periods: read(&self.periods, "periods", "Number of months/years")?,
        })
    }
}

pub fn compute_loan(input: &LoanInput) -> Result<LoanSchedule> {
    for (field, value) in [
        ("amount", input.amount),
        ("annual_rate_percent", input.annual_rate_percent),
        ("periods", input.periods),
    ] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::invalid(field, format!("{field} must be a number >= 0, got {value}")));
        }
    }
    let yearly_interest = input.amount * input.annual_rate_percent / 100.0;
    Ok(LoanSchedule {
        monthly_payment: yearly_interest / 12.0 * input.periods,
        yearly_payment: yearly_interest * input.periods,
    })
}

impl Presentable for LoanSchedule {
    fn display_lines(&self) -> Vec<DisplayLine> {
        vec![
            DisplayLine::amount("monthly_payment", "Monthly payment Amount", self.monthly_payment),
            DisplayLine::amount("yearly_payment", "Yearly payment Amount", self.yearly_payment),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::money::format_amount;

    fn loan(amount: f64, rate: f64, periods: f64) -> LoanSchedule {
        compute_loan(&LoanInput {
            amount,
            annual_rate_percent: rate,
            periods,
        })
        .unwrap()
    }

    #[test]
    fn worked_examples() {
        let s = loan(100_000.0, 12.0, 12.0);
        assert_eq!(format_amount(s.monthly_payment), "12000.00");
        assert_eq!(format_amount(s.yearly_payment), "144000.00");

        let s = loan(500_000.0, 8.0, 5.0);
        assert_eq!(format_amount(s.monthly_payment), "16666.67");
        assert_eq!(format_amount(s.yearly_payment), "200000.00");
    }

    #[test]
    fn zero_rate() {
        let s = loan(123_456.0, 0.0, 7.0);
        assert_eq!(s.monthly_payment, 0.0);
        assert_eq!(s.yearly_payment, 0.0);
    }

    #[test]
    fn non_numeric_fields_use_notifier_text() {
        let err = LoanForm::from_text("abc", "12", "12").into_input().unwrap_err();
        assert_eq!(err.to_string(), "Enter a number for Loan Amount");
        assert_eq!(err.title(), Some("Loan Amount Entry error"));
        assert_eq!(err.code(), "not_a_number");

        let err = LoanForm::from_text("100", "x", "12").into_input().unwrap_err();
        assert_eq!(err.to_string(), "Enter a number for rate of interest");
        assert_eq!(err.title(), Some("Rate of interest Entry error"));

        let err = LoanForm::from_text("100", "12", "").into_input().unwrap_err();
        assert_eq!(err.to_string(), "Enter a number for Number of months/years");
        assert_eq!(err.field(), Some("periods"));
    }

    #[test]
    fn amount_is_checked_first() {
        let err = LoanForm::from_text("?", "?", "?").into_input().unwrap_err();
        assert_eq!(err.field(), Some("amount"));
        let err = LoanForm::default().into_input().unwrap_err();
        assert_eq!(err.field(), Some("amount"));
    }

    #[test]
    fn form_accepts_numbers_and_text() {
        let form: LoanForm =
            serde_json::from_str(r#"{"amount":100000,"annual_rate_percent":"12","periods":12}"#)
                .unwrap();
        let input = form.into_input().unwrap();
        assert_eq!(input.annual_rate_percent, 12.0);
    }

    #[test]
    fn negative_values_are_invalid() {
        let err = compute_loan(&LoanInput {
            amount: 1.0,
            annual_rate_percent: -1.0,
            periods: 1.0,
        })
        .unwrap_err();
        assert_eq!(err.code(), "invalid_input");
    }
}
