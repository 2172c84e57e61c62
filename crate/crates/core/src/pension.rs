//! Retirement pension: gross pension from last basic pay and creditable
//! service, a commuted slice traded for a gratuity lump sum, yearly increases
//! and a medical allowance on the net pension.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::render::{DisplayLine, Presentable};
use crate::rules::RuleSet;

/// Identity and service dates. Only checked for ordering; never enters the
/// arithmetic.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PensionerDetails {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pensioner_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub date_of_birth: Option<NaiveDate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub date_of_appointment: Option<NaiveDate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub date_of_retirement: Option<NaiveDate>,
    /// Basic pay scale grade.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bps: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PensionInput {
    #[serde(flatten)]
    pub details: PensionerDetails,
    pub last_basic_pay: f64,
    /// Years of qualifying service.
    pub qualifying_service: f64,
}

impl PensionInput {
    pub fn new(last_basic_pay: f64, qualifying_service: f64) -> Self {
        PensionInput {
            details: PensionerDetails::default(),
            last_basic_pay,
            qualifying_service,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncreaseAmount {
    pub label: String,
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PensionAward {
    pub pensioner: PensionerDetails,
    pub creditable_service: f64,
    pub gross_pension: f64,
    pub commuted_portion: f64,
    pub net_pension: f64,
    pub total_gratuity: f64,
    pub increases: Vec<IncreaseAmount>,
    pub medical_allowance: f64,
    pub total_pension_per_month: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub advisories: Vec<String>,
}

pub fn compute_pension(input: &PensionInput, ruleset: &RuleSet) -> Result<PensionAward> {
    let rules = &ruleset.pension;
    non_negative("last_basic_pay", input.last_basic_pay)?;
    non_negative("qualifying_service", input.qualifying_service)?;
    if input.qualifying_service < rules.min_qualifying_service {
        return Err(Error::ServiceTooShort {
            qualifying_service: input.qualifying_service,
            minimum: rules.min_qualifying_service,
        });
    }
    check_date_order(&input.details)?;

    let creditable_service = input.qualifying_service.min(rules.max_creditable_service);
    let gross_pension = input.last_basic_pay * f64::from(rules.gross_factor_numerator)
        * creditable_service
        / f64::from(rules.gross_factor_denominator);
    let commuted_portion = gross_pension * f64::from(rules.commutation_numerator)
        / f64::from(rules.commutation_denominator);
    let net_pension = gross_pension - commuted_portion;
    let total_gratuity = commuted_portion * rules.gratuity_factor;
    let increases: Vec<IncreaseAmount> = rules
        .increases
        .iter()
        .map(|inc| IncreaseAmount {
            label: inc.label.clone(),
            amount: net_pension * inc.fraction,
        })
        .collect();
    let medical_allowance = net_pension * rules.medical_allowance_fraction;
    let total_pension_per_month =
        net_pension + increases.iter().map(|i| i.amount).sum::<f64>() + medical_allowance;

    let mut advisories = Vec::new();
    if let (Some(born), Some(retired)) =
        (input.details.date_of_birth, input.details.date_of_retirement)
    {
        let age = retired.years_since(born).unwrap_or(0);
        if age != rules.superannuation_age {
            advisories.push(format!(
                "Age at retirement is {age} years; superannuation age is {} years",
                rules.superannuation_age
            ));
        }
    }

    Ok(PensionAward {
        pensioner: input.details.clone(),
        creditable_service,
        gross_pension,
        commuted_portion,
        net_pension,
        total_gratuity,
        increases,
        medical_allowance,
        total_pension_per_month,
        advisories,
    })
}

fn non_negative(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("{field} must be a number >= 0, got {value}")))
    }
}

fn check_date_order(d: &PensionerDetails) -> Result<()> {
    let dates = [
        ("date_of_birth", d.date_of_birth),
        ("date_of_appointment", d.date_of_appointment),
        ("date_of_retirement", d.date_of_retirement),
    ];
    let present: Vec<_> = dates
        .iter()
        .filter_map(|(name, date)| date.map(|d| (*name, d)))
        .collect();
    for pair in present.windows(2) {
        let ((earlier, a), (later, b)) = (pair[0], pair[1]);
        if a >= b {
            return Err(Error::invalid(
                later,
                format!("{later} ({b}) must come after {earlier} ({a})"),
            ));
        }
    }
    Ok(())
}

impl Presentable for PensionAward {
    fn display_lines(&self) -> Vec<DisplayLine> {
        let mut lines = vec![
            DisplayLine::amount("creditable_service", "Qualifying Service", self.creditable_service),
            DisplayLine::amount("gross_pension", "Gross Pension", self.gross_pension),
            DisplayLine::amount("commuted_portion", "Commuted Portion", self.commuted_portion),
            DisplayLine::amount("net_pension", "Net pension", self.net_pension),
            DisplayLine::amount("total_gratuity", "Total Gratuity", self.total_gratuity),
        ];
        for inc in &self.increases {
            lines.push(DisplayLine::amount(
                format!("increases.{}", inc.label),
                increase_label(&inc.label),
                inc.amount,
            ));
        }
        lines.push(DisplayLine::amount(
            "medical_allowance",
            "Medical Allowance",
            self.medical_allowance,
        ));
        lines.push(DisplayLine::amount(
            "total_pension_per_month",
            "Total pension per month",
            self.total_pension_per_month,
        ));
        lines
    }

    fn messages(&self) -> Vec<String> {
        self.advisories.clone()
    }
}

/// "AR2010" reads as "AR 2010" on the result screen.
fn increase_label(label: &str) -> String {
    match label.find(|c: char| c.is_ascii_digit()) {
        Some(i) if i > 0 && !label[..i].ends_with(' ') => format!("{} {}", &label[..i], &label[i..]),
        _ => label.to_string(),
    }
}
