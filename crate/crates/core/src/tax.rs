//! Annual income tax for a salaried person: annualize the monthly income,
//! apply the slab schedule, take the teacher exemption off the slab tax, then
//! subtract any tax already paid through utility and other withholdings.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::render::{DisplayLine, Presentable};
use crate::rules::{RuleSet, TaxRules};

/// Form metadata. Echoed back on the assessment, never used in arithmetic.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TaxpayerDetails {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cnic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ntn: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub designation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub posting_city: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub employer_ntn: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tax_year: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assessment_date: Option<NaiveDate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxProfile {
    #[serde(flatten)]
    pub details: TaxpayerDetails,
    pub monthly_income: f64,
    #[serde(default)]
    pub is_teacher: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub already_paid: Option<AlreadyPaidTaxes>,
}

impl TaxProfile {
    pub fn new(monthly_income: f64) -> Self {
        TaxProfile {
            details: TaxpayerDetails::default(),
            monthly_income,
            is_teacher: false,
            already_paid: None,
        }
    }
}

/// Tax withheld during the year through bills and other channels.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlreadyPaidTaxes {
    pub electricity: f64,
    pub telephone: f64,
    pub mobile: f64,
    pub others: f64,
}

impl AlreadyPaidTaxes {
    pub fn total(&self) -> f64 {
        self.electricity + self.telephone + self.mobile + self.others
    }

    fn components(&self) -> [(&'static str, f64); 4] {
        [
            ("electricity", self.electricity),
            ("telephone", self.telephone),
            ("mobile", self.mobile),
            ("others", self.others),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxAssessment {
    pub taxpayer: TaxpayerDetails,
    pub annual_salary: f64,
    /// Equal to the monthly income as entered; tax is not deducted.
    pub take_home_monthly: f64,
    pub gross_annual_tax: f64,
    pub teacher_exemption: f64,
    pub net_tax_after_exemption: f64,
    pub total_already_paid: f64,
    /// Negative when credits exceed the liability.
    pub annual_tax_payable: f64,
    pub overpaid: bool,
}

/// Slab tax on an annual income: the base tax of the highest applicable
/// bracket plus its marginal rate on the excess.
pub fn slab_tax(annual_income: f64, rules: &TaxRules) -> f64 {
    let income = annual_income.max(0.0);
    match rules.brackets.get(rules.bracket_index(income)) {
        Some(b) => (b.base_tax + b.marginal_rate * (income - b.lower_bound)).max(0.0),
        None => 0.0,
    }
}

pub fn assess_tax(profile: &TaxProfile, ruleset: &RuleSet) -> Result<TaxAssessment> {
    validate_profile(profile)?;
    let rules = &ruleset.tax;

    let annual_salary = profile.monthly_income * f64::from(rules.months_per_year);
    let gross_annual_tax = slab_tax(annual_salary, rules);
    let net_tax_after_exemption = if profile.is_teacher {
        gross_annual_tax * (1.0 - rules.teacher_rebate_fraction)
    } else {
        gross_annual_tax
    };
    let teacher_exemption = gross_annual_tax - net_tax_after_exemption;
    let total_already_paid = profile.already_paid.map_or(0.0, |p| p.total());
    let annual_tax_payable = net_tax_after_exemption - total_already_paid;

    Ok(TaxAssessment {
        taxpayer: profile.details.clone(),
        annual_salary,
        take_home_monthly: profile.monthly_income,
        gross_annual_tax,
        teacher_exemption,
        net_tax_after_exemption,
        total_already_paid,
        annual_tax_payable,
        overpaid: annual_tax_payable < 0.0,
    })
}

fn validate_profile(profile: &TaxProfile) -> Result<()> {
    non_negative("monthly_income", profile.monthly_income)?;
    if let Some(paid) = &profile.already_paid {
        for (name, value) in paid.components() {
            non_negative(&format!("already_paid.{name}"), value)?;
        }
    }
    if let Some(cnic) = &profile.details.cnic {
        if !is_valid_cnic(cnic) {
            return Err(Error::invalid(
                "cnic",
                format!("CNIC must be 13 digits (e.g. 1234512345671 or 12345-1234567-1), got {cnic:?}"),
            ));
        }
    }
    Ok(())
}

fn non_negative(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("{field} must be a number >= 0, got {value}")))
    }
}

/// Thirteen digits, optionally grouped 5-7-1 with dashes.
pub fn is_valid_cnic(cnic: &str) -> bool {
    let bytes = cnic.as_bytes();
    let all_digits = |s: &[u8]| s.iter().all(u8::is_ascii_digit);
    match bytes.len() {
        13 => all_digits(bytes),
        15 => {
            bytes[5] == b'-'
                && bytes[13] == b'-'
                && all_digits(&bytes[..5])
                && all_digits(&bytes[6..13])
                && all_digits(&bytes[14..])
        }
        _ => false,
    }
}

impl Presentable for TaxAssessment {
    fn display_lines(&self) -> Vec<DisplayLine> {
        vec![
            DisplayLine::amount("annual_salary", "Your Annual Salary", self.annual_salary),
            DisplayLine::amount("take_home_monthly", "Your Take Home Salary", self.take_home_monthly),
            DisplayLine::amount("gross_annual_tax", "Total Tax", self.gross_annual_tax),
            DisplayLine::amount("teacher_exemption", "Teacher Exemption", self.teacher_exemption),
            DisplayLine::amount(
                "net_tax_after_exemption",
                "Net Tax",
                self.net_tax_after_exemption,
            ),
            DisplayLine::amount(
                "total_already_paid",
                "Your Total Already Paid Tax",
                self.total_already_paid,
            ),
            DisplayLine::amount("annual_tax_payable", "Your Annual Tax", self.annual_tax_payable),
        ]
    }

    fn messages(&self) -> Vec<String> {
        if self.overpaid {
            vec!["Tax already paid exceeds the annual liability".to_string()]
        } else {
            Vec::new()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtin() -> RuleSet {
        RuleSet::builtin()
    }

    #[test]
    fn zero_income_owes_nothing() {
        assert_eq!(slab_tax(0.0, &builtin().tax), 0.0);
        let a = assess_tax(&TaxProfile::new(0.0), &builtin()).unwrap();
        assert_eq!(a.annual_salary, 0.0);
        assert_eq!(a.gross_annual_tax, 0.0);
        assert_eq!(a.annual_tax_payable, 0.0);
        assert!(!a.overpaid);
    }

    #[test]
    fn below_first_taxable_bound() {
        assert_eq!(slab_tax(360_000.0, &builtin().tax), 0.0);
        let a = assess_tax(&TaxProfile::new(30_000.0), &builtin()).unwrap();
        assert_eq!(a.annual_salary, 360_000.0);
        assert_eq!(a.gross_annual_tax, 0.0);
        assert_eq!(a.annual_tax_payable, 0.0);
    }

    #[test]
    fn teacher_with_electricity_credit() {
        let mut p = TaxProfile::new(100_000.0);
        p.is_teacher = true;
        p.already_paid = Some(AlreadyPaidTaxes {
            electricity: 10_000.0,
            ..Default::default()
        });
        let a = assess_tax(&p, &builtin()).unwrap();
        assert_eq!(a.annual_salary, 1_200_000.0);
        assert!((a.gross_annual_tax - 62_500.0).abs() < 1e-9);
        assert!((a.teacher_exemption - 25_000.0).abs() < 1e-9);
        assert!((a.net_tax_after_exemption - 37_500.0).abs() < 1e-9);
        assert_eq!(a.total_already_paid, 10_000.0);
        assert!((a.annual_tax_payable - 27_500.0).abs() < 1e-9);
        assert_eq!(a.take_home_monthly, 100_000.0);
    }

    #[test]
    fn overpayment_is_reported_not_clamped() {
        let mut p = TaxProfile::new(50_000.0);
        p.already_paid = Some(AlreadyPaidTaxes {
            others: 50_000.0,
            ..Default::default()
        });
        let a = assess_tax(&p, &builtin()).unwrap();
        // 600000 annual -> 0.05 * 200000 = 10000
        assert!((a.gross_annual_tax - 10_000.0).abs() < 1e-9);
        assert!((a.annual_tax_payable + 40_000.0).abs() < 1e-9);
        assert!(a.overpaid);
    }

    #[test]
    fn rejects_bad_inputs() {
        let err = assess_tax(&TaxProfile::new(-1.0), &builtin()).unwrap_err();
        assert_eq!(err.field(), Some("monthly_income"));

        let mut p = TaxProfile::new(1.0);
        p.details.cnic = Some("12345".into());
        assert_eq!(assess_tax(&p, &builtin()).unwrap_err().field(), Some("cnic"));

        let mut p = TaxProfile::new(1.0);
        p.already_paid = Some(AlreadyPaidTaxes {
            mobile: -5.0,
            ..Default::default()
        });
        assert_eq!(
            assess_tax(&p, &builtin()).unwrap_err().field(),
            Some("already_paid.mobile")
        );
    }

    #[test]
    fn cnic_formats() {
        assert!(is_valid_cnic("1234512345671"));
        assert!(is_valid_cnic("12345-1234567-1"));
        assert!(!is_valid_cnic("123451234567"));
        assert!(!is_valid_cnic("12345-123456-71"));
        assert!(!is_valid_cnic("12345123456a1"));
    }

    #[test]
    fn metadata_is_echoed_and_inert() {
        let mut with = TaxProfile::new(100_000.0);
        with.details = TaxpayerDetails {
            name: Some("A. Khan".into()),
            cnic: Some("1234512345671".into()),
            ntn: Some("1234567-8".into()),
            designation: Some("Lecturer".into()),
            posting_city: Some("D.I.Khan".into()),
            employer_ntn: Some("7654321-0".into()),
            tax_year: Some("2014-15".into()),
            assessment_date: NaiveDate::from_ymd_opt(2015, 6, 30),
        };
        let a = assess_tax(&with, &builtin()).unwrap();
        let b = assess_tax(&TaxProfile::new(100_000.0), &builtin()).unwrap();
        assert_eq!(a.taxpayer, with.details);
        assert_eq!(a.annual_tax_payable, b.annual_tax_payable);
    }

    #[test]
    fn profile_json_shape() {
        let p: TaxProfile = serde_json::from_str(
            r#"{"monthly_income":100000,"is_teacher":true,"cnic":"1234512345671",
                "already_paid":{"electricity":10000}}"#,
        )
        .unwrap();
        assert!(p.is_teacher);
        assert_eq!(p.details.cnic.as_deref(), Some("1234512345671"));
        assert_eq!(p.already_paid.unwrap().total(), 10_000.0);
    }
}
