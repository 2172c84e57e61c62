//! Rule-driven financial engines: salaried income tax, government pension and
//! gratuity, zakat over nisab-gated assets, simple-interest loan payments, and
//! descriptive statistics over coded survey responses.
//!
//! Every engine is a pure function over immutable inputs and a shared
//! [`RuleSet`]. Results carry raw `f64` values; [`render`] turns them into
//! 2-dp display strings with a single rounding rule.

pub mod error;
pub mod loan;
pub mod money;
pub mod pension;
pub mod render;
pub mod rules;
pub mod stats;
pub mod tax;
pub mod zakat;

pub use error::{Error, Result};
pub use loan::{compute_loan, LoanForm, LoanInput, LoanSchedule, NumericField};
pub use pension::{compute_pension, PensionAward, PensionInput};
pub use render::{DisplayLine, Presentable, Rendered};
pub use rules::{load_ruleset, validate_ruleset, RuleSet, Violation};
pub use stats::{summarize, CodedResponses, ResponseCount, SurveySummary};
pub use tax::{assess_tax, slab_tax, TaxAssessment, TaxProfile};
pub use zakat::{assess_zakat, ZakatAssessment, ZakatCategory, ZakatDeclaration};
