//! Zakat on gold, silver, cash, business assets and property.
//!
//! Each provided category is counted in full or not at all. Gold and silver
//! are gated on weight against the rule-set nisab; cash, business and
//! property are gated on their summed value against a nisab amount supplied
//! with the declaration. All gates are inclusive.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::render::{DisplayLine, Presentable};
use crate::rules::RuleSet;

pub const GOLD_BELOW_NISAB: &str =
    "The total weight & Price of Gold is less than nisab for zakat deduction";
pub const SILVER_BELOW_NISAB: &str =
    "The total weight & Price of Silver is less than nisab for zakat deduction";
pub const CASH_BELOW_NISAB: &str = "The total cash is less than nisab for zakat deduction";
pub const BUSINESS_BELOW_NISAB: &str = "The total Bussiness is less than nisab for zakat deduction";
pub const PROPERTY_BELOW_NISAB: &str = "The total Property is less than nisab for zakat deduction";

/// Dialog title shown with every below-nisab notice.
pub const NOTICE_TITLE: &str = "wrong Entery";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZakatCategory {
    Gold,
    Silver,
    Cash,
    Business,
    Property,
}

impl ZakatCategory {
    pub const ALL: [ZakatCategory; 5] = [
        ZakatCategory::Gold,
        ZakatCategory::Silver,
        ZakatCategory::Cash,
        ZakatCategory::Business,
        ZakatCategory::Property,
    ];

    pub fn below_nisab_message(self) -> &'static str {
        match self {
            ZakatCategory::Gold => GOLD_BELOW_NISAB,
            ZakatCategory::Silver => SILVER_BELOW_NISAB,
            ZakatCategory::Cash => CASH_BELOW_NISAB,
            ZakatCategory::Business => BUSINESS_BELOW_NISAB,
            ZakatCategory::Property => PROPERTY_BELOW_NISAB,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ZakatCategory::Gold => "gold",
            ZakatCategory::Silver => "silver",
            ZakatCategory::Cash => "cash",
            ZakatCategory::Business => "business",
            ZakatCategory::Property => "property",
        }
    }

    fn label(self) -> &'static str {
        match self {
            ZakatCategory::Gold => "Gold",
            ZakatCategory::Silver => "Silver",
            ZakatCategory::Cash => "Cash",
            ZakatCategory::Business => "Business",
            ZakatCategory::Property => "Property",
        }
    }
}

impl fmt::Display for ZakatCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Gold or silver holding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetalHolding {
    /// Weight in tola.
    pub weight: f64,
    pub price_per_tola: f64,
}

/// Cash line items, keyed by their short form labels. The expanded names are
/// best guesses at what the abbreviations stand for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CashItems {
    /// Cash in hand and at bank.
    pub chb: f64,
    /// Bank account balances.
    pub bas: f64,
    /// Savings schemes.
    pub sss: f64,
    /// Money you hold or have lent.
    pub myhl: f64,
    /// Other cash money.
    pub ocm: f64,
}

impl CashItems {
    pub const KEYS: [&'static str; 5] = ["chb", "bas", "sss", "myhl", "ocm"];

    pub fn total(&self) -> f64 {
        self.chb + self.bas + self.sss + self.myhl + self.ocm
    }

    pub fn get_mut(&mut self, key: &str) -> Option<&mut f64> {
        match key {
            "chb" => Some(&mut self.chb),
            "bas" => Some(&mut self.bas),
            "sss" => Some(&mut self.sss),
            "myhl" => Some(&mut self.myhl),
            "ocm" => Some(&mut self.ocm),
            _ => None,
        }
    }

    fn values(&self) -> [(&'static str, f64); 5] {
        [
            ("chb", self.chb),
            ("bas", self.bas),
            ("sss", self.sss),
            ("myhl", self.myhl),
            ("ocm", self.ocm),
        ]
    }
}

/// Business line items; expanded names are guesses, as for [`CashItems`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BusinessItems {
    /// Business investment.
    pub bi: f64,
    /// Profit from investment.
    pub pfi: f64,
    /// Business stock.
    pub bs: f64,
    /// Other funds of the business.
    pub ofb: f64,
}

impl BusinessItems {
    pub const KEYS: [&'static str; 4] = ["bi", "pfi", "bs", "ofb"];

    pub fn total(&self) -> f64 {
        self.bi + self.pfi + self.bs + self.ofb
    }

    pub fn get_mut(&mut self, key: &str) -> Option<&mut f64> {
        match key {
            "bi" => Some(&mut self.bi),
            "pfi" => Some(&mut self.pfi),
            "bs" => Some(&mut self.bs),
            "ofb" => Some(&mut self.ofb),
            _ => None,
        }
    }

    fn values(&self) -> [(&'static str, f64); 4] {
        [("bi", self.bi), ("pfi", self.pfi), ("bs", self.bs), ("ofb", self.ofb)]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CashHoldings {
    #[serde(default)]
    pub line_items: CashItems,
    pub nisab_amount: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BusinessHoldings {
    #[serde(default)]
    pub line_items: BusinessItems,
    pub nisab_amount: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PropertyHoldings {
    #[serde(default)]
    pub net_property: f64,
    #[serde(default)]
    pub other_property: f64,
    pub nisab_amount: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ZakatDeclaration {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold: Option<MetalHolding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub silver: Option<MetalHolding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cash: Option<CashHoldings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub business: Option<BusinessHoldings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<PropertyHoldings>,
}

impl ZakatDeclaration {
    pub fn is_empty(&self) -> bool {
        self.gold.is_none()
            && self.silver.is_none()
            && self.cash.is_none()
            && self.business.is_none()
            && self.property.is_none()
    }

    fn validate(&self) -> Result<()> {
        let mut amounts: Vec<(String, f64)> = Vec::new();
        for (name, metal) in [("gold", &self.gold), ("silver", &self.silver)] {
            if let Some(m) = metal {
                amounts.push((format!("{name}.weight"), m.weight));
                amounts.push((format!("{name}.price_per_tola"), m.price_per_tola));
            }
        }
        if let Some(c) = &self.cash {
            for (key, v) in c.line_items.values() {
                amounts.push((format!("cash.line_items.{key}"), v));
            }
            amounts.push(("cash.nisab_amount".into(), c.nisab_amount));
        }
        if let Some(b) = &self.business {
            for (key, v) in b.line_items.values() {
                amounts.push((format!("business.line_items.{key}"), v));
            }
            amounts.push(("business.nisab_amount".into(), b.nisab_amount));
        }
        if let Some(p) = &self.property {
            amounts.push(("property.net_property".into(), p.net_property));
            amounts.push(("property.other_property".into(), p.other_property));
            amounts.push(("property.nisab_amount".into(), p.nisab_amount));
        }
        match amounts.into_iter().find(|(_, v)| !(v.is_finite() && *v >= 0.0)) {
            Some((field, v)) => Err(Error::invalid(
                field.clone(),
                format!("{field} must be a number >= 0, got {v}"),
            )),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZakatNotice {
    pub category: ZakatCategory,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZakatAssessment {
    /// Every category, 0 when excluded or not declared.
    pub counted: BTreeMap<ZakatCategory, f64>,
    pub notices: Vec<ZakatNotice>,
    pub total_assets: f64,
    pub zakat_due: f64,
}

pub fn assess_zakat(declaration: &ZakatDeclaration, ruleset: &RuleSet) -> Result<ZakatAssessment> {
    if declaration.is_empty() {
        return Err(Error::NoCategories);
    }
    declaration.validate()?;
    let rules = &ruleset.zakat;

    // (category, value if counted, passes gate)
    let gates: [(ZakatCategory, Option<(f64, bool)>); 5] = [
        (
            ZakatCategory::Gold,
            declaration
                .gold
                .map(|g| (g.weight * g.price_per_tola, g.weight >= rules.gold_nisab_weight)),
        ),
        (
            ZakatCategory::Silver,
            declaration
                .silver
                .map(|s| (s.weight * s.price_per_tola, s.weight >= rules.silver_nisab_weight)),
        ),
        (
            ZakatCategory::Cash,
            declaration.cash.map(|c| {
                let total = c.line_items.total();
                (total, total >= c.nisab_amount)
            }),
        ),
        (
            ZakatCategory::Business,
            declaration.business.map(|b| {
                let total = b.line_items.total();
                (total, total >= b.nisab_amount)
            }),
        ),
        (
            ZakatCategory::Property,
            declaration.property.map(|p| {
                let total = p.net_property + p.other_property;
                (total, total >= p.nisab_amount)
            }),
        ),
    ];

    let mut counted = BTreeMap::new();
    let mut notices = Vec::new();
    for (category, gate) in gates {
        let value = match gate {
            Some((value, true)) => value,
            Some((_, false)) => {
                notices.push(ZakatNotice {
                    category,
                    message: category.below_nisab_message().to_string(),
                });
                0.0
            }
            None => 0.0,
        };
        counted.insert(category, value);
    }
    let total_assets: f64 = counted.values().sum();
    Ok(ZakatAssessment {
        counted,
        notices,
        total_assets,
        zakat_due: total_assets * rules.zakat_rate,
    })
}

impl Presentable for ZakatAssessment {
    fn display_lines(&self) -> Vec<DisplayLine> {
        let mut lines: Vec<DisplayLine> = self
            .counted
            .iter()
            .map(|(c, v)| DisplayLine::amount(format!("counted.{c}"), c.label(), *v))
            .collect();
        lines.push(DisplayLine::amount("total_assets", "Total assets", self.total_assets));
        lines.push(DisplayLine::amount("zakat_due", "Zakat due", self.zakat_due));
        lines
    }

    fn messages(&self) -> Vec<String> {
        self.notices.iter().map(|n| n.message.clone()).collect()
    }
}
