//! Versioned rule-sets: every rate, bracket, factor and threshold the engines
//! consume, loaded from JSON and validated once. A loaded [`RuleSet`] is never
//! mutated; share it behind `&` or `Arc` freely.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Continuity slack between adjacent brackets, in currency units.
pub const CONTINUITY_TOLERANCE: f64 = 0.01;

const BUILTIN_DOCUMENT: &str = include_str!("../../../rules/pk-fy2014-15.rules.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    pub id: String,
    pub currency: String,
    pub tax: TaxRules,
    #[serde(default)]
    pub pension: PensionRules,
    #[serde(default)]
    pub zakat: ZakatRules,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxRules {
    /// Sorted by `lower_bound`, first bracket at 0.
    pub brackets: Vec<TaxBracket>,
    #[serde(default = "defaults::teacher_rebate_fraction")]
    pub teacher_rebate_fraction: f64,
    #[serde(default = "defaults::months_per_year")]
    pub months_per_year: u32,
}

/// Tax owed at `lower_bound` plus a marginal rate on income above it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaxBracket {
    pub lower_bound: f64,
    pub base_tax: f64,
    pub marginal_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PensionRules {
    pub gross_factor_numerator: u32,
    pub gross_factor_denominator: u32,
    pub max_creditable_service: f64,
    pub min_qualifying_service: f64,
    pub commutation_numerator: u32,
    pub commutation_denominator: u32,
    pub gratuity_factor: f64,
    pub increases: Vec<PensionIncrease>,
    pub medical_allowance_fraction: f64,
    /// Expected age at retirement; a mismatch yields an advisory, not an error.
    pub superannuation_age: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PensionIncrease {
    pub label: String,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ZakatRules {
    /// Gold nisab, in tola.
    pub gold_nisab_weight: f64,
    /// Silver nisab, in tola.
    pub silver_nisab_weight: f64,
    pub zakat_rate: f64,
}

mod defaults {
    pub fn teacher_rebate_fraction() -> f64 {
        0.40
    }

    pub fn months_per_year() -> u32 {
        12
    }
}

impl Default for PensionRules {
    fn default() -> Self {
        let increases = [
            ("AR2010", 0.15),
            ("AR2011", 0.15),
            ("AR2012", 0.20),
            ("AR2013", 0.15),
            ("AR2014", 0.10),
            ("AR2015", 0.10),
        ]
        .into_iter()
        .map(|(label, fraction)| PensionIncrease {
            label: label.to_string(),
            fraction,
        })
        .collect();
        PensionRules {
            gross_factor_numerator: 7,
            gross_factor_denominator: 300,
            max_creditable_service: 30.0,
            min_qualifying_service: 10.0,
            commutation_numerator: 35,
            commutation_denominator: 300,
            gratuity_factor: 148.4628,
            increases,
            medical_allowance_fraction: 0.25,
            superannuation_age: 60,
        }
    }
}

impl Default for ZakatRules {
    fn default() -> Self {
        ZakatRules {
            gold_nisab_weight: 7.5,
            silver_nisab_weight: 52.5,
            zakat_rate: 0.025,
        }
    }
}

impl RuleSet {
    /// The rule-set shipped as `rules/pk-fy2014-15.rules.json`.
    pub fn builtin() -> RuleSet {
        load_ruleset(BUILTIN_DOCUMENT).expect("shipped rule-set is valid")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule-sets always serialize")
    }
}

impl TaxRules {
    /// Index of the highest bracket whose lower bound does not exceed `income`.
    pub fn bracket_index(&self, income: f64) -> usize {
        self.brackets
            .partition_point(|b| b.lower_bound <= income)
            .saturating_sub(1)
    }
}

/// A broken rule-set invariant: which field, which rule, what value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
    pub value: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} (got {})", self.field, self.rule, self.value)
    }
}

/// Parses and validates a rule-set document.
pub fn load_ruleset(document: &str) -> Result<RuleSet> {
    if document.trim().is_empty() {
        return Err(Error::Parse("empty document".to_string()));
    }
    let ruleset: RuleSet =
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    match validate_ruleset(&ruleset).into_iter().next() {
        Some(first) => Err(Error::Validation(first)),
        None => Ok(ruleset),
    }
}

/// Returns every violated invariant, in field-declaration order.
pub fn validate_ruleset(ruleset: &RuleSet) -> Vec<Violation> {
    let mut v = Checker::default();
    if ruleset.id.trim().is_empty() {
        v.push("id", "must be non-empty", format!("{:?}", ruleset.id));
    }
    check_tax(&ruleset.tax, &mut v);
    check_pension(&ruleset.pension, &mut v);
    check_zakat(&ruleset.zakat, &mut v);
    v.0
}

#[derive(Default)]
struct Checker(Vec<Violation>);

impl Checker {
    fn push(&mut self, field: impl Into<String>, rule: &str, value: impl fmt::Display) {
        self.0.push(Violation {
            field: field.into(),
            rule: rule.to_string(),
            value: value.to_string(),
        });
    }

    fn fraction(&mut self, field: impl Into<String>, value: f64) {
        if !(0.0..=1.0).contains(&value) {
            self.push(field, "must be within [0, 1]", value);
        }
    }

    fn positive(&mut self, field: impl Into<String>, value: f64) {
        if !(value > 0.0 && value.is_finite()) {
            self.push(field, "must be > 0", value);
        }
    }
}

fn check_tax(tax: &TaxRules, v: &mut Checker) {
    if tax.brackets.is_empty() {
        v.push("tax.brackets", "must contain at least one bracket", "[]");
    }
    for (i, b) in tax.brackets.iter().enumerate() {
        let at = |name: &str| format!("tax.brackets[{i}].{name}");
        if !(b.lower_bound >= 0.0 && b.lower_bound.is_finite()) {
            v.push(at("lower_bound"), "must be >= 0", b.lower_bound);
        }
        if !(b.base_tax >= 0.0 && b.base_tax.is_finite()) {
            v.push(at("base_tax"), "must be >= 0", b.base_tax);
        }
        v.fraction(at("marginal_rate"), b.marginal_rate);
    }
    if let Some(first) = tax.brackets.first() {
        if first.lower_bound != 0.0 {
            v.push("tax.brackets[0].lower_bound", "must be 0", first.lower_bound);
        }
    }
    for (i, pair) in tax.brackets.windows(2).enumerate() {
        let (lo, hi) = (&pair[0], &pair[1]);
        if hi.lower_bound <= lo.lower_bound {
            v.push(
                format!("tax.brackets[{}].lower_bound", i + 1),
                "must be strictly greater than the previous lower_bound",
                hi.lower_bound,
            );
            continue;
        }
        let implied = lo.base_tax + lo.marginal_rate * (hi.lower_bound - lo.lower_bound);
        if (hi.base_tax - implied).abs() > CONTINUITY_TOLERANCE {
            v.push(
                format!("tax.brackets[{}].base_tax", i + 1),
                &format!("must continue the previous bracket (expected {implied})"),
                hi.base_tax,
            );
        }
    }
    v.fraction("tax.teacher_rebate_fraction", tax.teacher_rebate_fraction);
    if tax.months_per_year == 0 {
        v.push("tax.months_per_year", "must be > 0", tax.months_per_year);
    }
}

fn check_pension(p: &PensionRules, v: &mut Checker) {
    if p.gross_factor_denominator == 0 {
        v.push("pension.gross_factor_denominator", "must be > 0", 0);
    }
    if p.max_creditable_service.partial_cmp(&p.min_qualifying_service).is_none_or(|o| o.is_lt()) {
        v.push(
            "pension.max_creditable_service",
            "must be >= min_qualifying_service",
            p.max_creditable_service,
        );
    }
    v.positive("pension.min_qualifying_service", p.min_qualifying_service);
    if p.commutation_denominator == 0 {
        v.push("pension.commutation_denominator", "must be > 0", 0);
    } else if p.commutation_numerator > p.commutation_denominator {
        v.push(
            "pension.commutation_numerator",
            "must not exceed commutation_denominator",
            p.commutation_numerator,
        );
    }
    v.positive("pension.gratuity_factor", p.gratuity_factor);
    for (i, inc) in p.increases.iter().enumerate() {
        if inc.label.trim().is_empty() {
            v.push(format!("pension.increases[{i}].label"), "must be non-empty", "\"\"");
        }
        v.fraction(format!("pension.increases[{i}].fraction"), inc.fraction);
    }
    v.fraction("pension.medical_allowance_fraction", p.medical_allowance_fraction);
}

fn check_zakat(z: &ZakatRules, v: &mut Checker) {
    v.positive("zakat.gold_nisab_weight", z.gold_nisab_weight);
    v.positive("zakat.silver_nisab_weight", z.silver_nisab_weight);
    if !(z.zakat_rate > 0.0 && z.zakat_rate < 1.0) {
        v.push("zakat.zakat_rate", "must be within (0, 1)", z.zakat_rate);
    }
}
