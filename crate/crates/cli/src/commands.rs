use std::fmt;
use std::fs;
use std::io;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use finstudio_core::money::parse_number;
use finstudio_core::pension::{PensionInput, PensionerDetails};
use finstudio_core::tax::{AlreadyPaidTaxes, TaxpayerDetails};
use finstudio_core::zakat::{
    BusinessHoldings, BusinessItems, CashHoldings, CashItems, MetalHolding, PropertyHoldings,
    ZakatDeclaration,
};
use finstudio_core::{
    assess_tax, assess_zakat, compute_loan, compute_pension, load_ruleset, summarize,
    CodedResponses, Error, LoanForm, Presentable, Rendered, RuleSet, TaxProfile,
};
use serde::Serialize;

use crate::args::{
    Cli, Command, LoanArgs, OutputFormat, PensionArgs, ServeArgs, StatsArgs, TaxArgs, ZakatArgs,
};

#[derive(Debug)]
pub enum CliError {
    /// Calculator rejected the input.
    Engine(Error),
    /// Input file missing or unreadable.
    NoInput(PathBuf, io::Error),
    Service(finstudio_service::RunError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(_) => 2,
            CliError::NoInput(..) => 66,
            CliError::Service(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::NoInput(path, e) => write!(f, "cannot read {}: {e}", path.display()),
            CliError::Service(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Tax(args) => tax(args),
        Command::Pension(args) => pension(args),
        Command::Zakat(args) => zakat(args),
        Command::Loan(args) => loan(args),
        Command::Stats(args) => stats(args),
        Command::Serve(args) => serve(args).map(|()| String::new()),
    }
}

fn render<T: Presentable + Serialize>(result: T, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => result.render_text(),
        OutputFormat::Json => {
            let mut out = serde_json::to_string(&Rendered::new(result)).expect("results serialize");
            out.push('\n');
            out
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::NoInput(path.to_path_buf(), e))
}

fn ruleset(path: Option<&Path>) -> Result<RuleSet> {
    match path {
        Some(p) => Ok(load_ruleset(&read_file(p)?)?),
        None => Ok(RuleSet::builtin()),
    }
}

fn number(text: &str, field: &str, label: &str) -> Result<f64> {
    parse_number(text).ok_or_else(|| Error::not_a_number(field, label).into())
}

fn optional_number(text: Option<&str>, field: &str, label: &str) -> Result<Option<f64>> {
    text.map(|t| number(t, field, label)).transpose()
}

fn date(text: Option<&str>, field: &str) -> Result<Option<NaiveDate>> {
    text.map(|t| {
        NaiveDate::parse_from_str(t.trim(), "%Y-%m-%d").map_err(|_| {
            CliError::from(Error::invalid(field, format!("{field} must be a date YYYY-MM-DD, got {t:?}")))
        })
    })
    .transpose()
}

fn tax(args: TaxArgs) -> Result<String> {
    let rules = ruleset(args.ruleset.ruleset.as_deref())?;
    let paid = [
        (&args.paid_electricity, "already_paid.electricity", "Electricity"),
        (&args.paid_telephone, "already_paid.telephone", "Telephone"),
        (&args.paid_mobile, "already_paid.mobile", "Mobile"),
        (&args.paid_others, "already_paid.others", "Others"),
    ]
    .into_iter()
    .map(|(text, field, label)| optional_number(text.as_deref(), field, label))
    .collect::<Result<Vec<_>>>()?;
    let already_paid = paid.iter().any(Option::is_some).then(|| AlreadyPaidTaxes {
        electricity: paid[0].unwrap_or(0.0),
        telephone: paid[1].unwrap_or(0.0),
        mobile: paid[2].unwrap_or(0.0),
        others: paid[3].unwrap_or(0.0),
    });
    let profile = TaxProfile {
        details: TaxpayerDetails {
            name: args.name,
            cnic: args.cnic,
            ntn: args.ntn,
            designation: args.designation,
            posting_city: args.posting_city,
            employer_ntn: args.employer_ntn,
            tax_year: args.tax_year,
            assessment_date: date(args.date.as_deref(), "assessment_date")?,
        },
        monthly_income: number(&args.monthly_income, "monthly_income", "Monthly Income")?,
        is_teacher: args.teacher,
        already_paid,
    };
    Ok(render(assess_tax(&profile, &rules)?, args.output.format))
}

fn pension(args: PensionArgs) -> Result<String> {
    let rules = ruleset(args.ruleset.ruleset.as_deref())?;
    let bps = match &args.bps {
        Some(t) => Some(
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::from(Error::not_a_number("bps", "BPS")))?,
        ),
        None => None,
    };
    let input = PensionInput {
        details: PensionerDetails {
            pensioner_name: args.name,
            date_of_birth: date(args.date_of_birth.as_deref(), "date_of_birth")?,
            date_of_appointment: date(args.date_of_appointment.as_deref(), "date_of_appointment")?,
            date_of_retirement: date(args.date_of_retirement.as_deref(), "date_of_retirement")?,
            bps,
        },
        last_basic_pay: number(&args.last_basic_pay, "last_basic_pay", "Last basic pay")?,
        qualifying_service: number(&args.qualifying_service, "qualifying_service", "qualifying Service")?,
    };
    Ok(render(compute_pension(&input, &rules)?, args.output.format))
}

/// Parses repeated `ITEM=N` flags into `(key, field path, value)`.
fn parse_items(category: &str, pairs: &[String]) -> Result<Vec<(String, String, f64)>> {
    pairs
        .iter()
        .map(|pair| {
            let (key, value) = pair.split_once('=').ok_or_else(|| {
                Error::invalid(category, format!("--{category} expects ITEM=N, got {pair:?}"))
            })?;
            let key = key.trim().to_ascii_lowercase();
            let field = format!("{category}.line_items.{key}");
            let value = number(value, &field, &key.to_ascii_uppercase())?;
            Ok((key, field, value))
        })
        .collect()
}

fn unknown_item(category: &str, field: String, key: &str, keys: &[&str]) -> CliError {
    Error::invalid(
        field,
        format!("unknown {category} item {key:?}; expected one of {}", keys.join(", ")),
    )
    .into()
}

fn metal(weight: Option<&str>, price: Option<&str>, name: &str, label: &str) -> Result<Option<MetalHolding>> {
    let weight = optional_number(weight, &format!("{name}.weight"), &format!("weight of {label}"))?;
    let price = optional_number(price, &format!("{name}.price_per_tola"), &format!("price of {label}"))?;
    Ok(match (weight, price) {
        (Some(weight), Some(price_per_tola)) => Some(MetalHolding { weight, price_per_tola }),
        _ => None,
    })
}

fn zakat(args: ZakatArgs) -> Result<String> {
    let rules = ruleset(args.ruleset.ruleset.as_deref())?;
    let mut declaration = ZakatDeclaration {
        gold: metal(args.gold_tola.as_deref(), args.gold_price.as_deref(), "gold", "Gold")?,
        silver: metal(args.silver_tola.as_deref(), args.silver_price.as_deref(), "silver", "Silver")?,
        ..Default::default()
    };

    if let Some(nisab) = optional_number(args.cash_nisab.as_deref(), "cash.nisab_amount", "cash nisab")? {
        let mut cash = CashHoldings { nisab_amount: nisab, ..Default::default() };
        for (key, field, value) in parse_items("cash", &args.cash)? {
            let slot = cash
                .line_items
                .get_mut(&key)
                .ok_or_else(|| unknown_item("cash", field, &key, &CashItems::KEYS))?;
            *slot += value;
        }
        declaration.cash = Some(cash);
    }

    if let Some(nisab) =
        optional_number(args.business_nisab.as_deref(), "business.nisab_amount", "business nisab")?
    {
        let mut business = BusinessHoldings { nisab_amount: nisab, ..Default::default() };
        for (key, field, value) in parse_items("business", &args.business)? {
            let slot = business
                .line_items
                .get_mut(&key)
                .ok_or_else(|| unknown_item("business", field, &key, &BusinessItems::KEYS))?;
            *slot += value;
        }
        declaration.business = Some(business);
    }

    if let Some(nisab) =
        optional_number(args.property_nisab.as_deref(), "property.nisab_amount", "property nisab")?
    {
        declaration.property = Some(PropertyHoldings {
            net_property: optional_number(args.property_net.as_deref(), "property.net_property", "Net property")?
                .unwrap_or(0.0),
            other_property: optional_number(
                args.property_other.as_deref(),
                "property.other_property",
                "Other property",
            )?
            .unwrap_or(0.0),
            nisab_amount: nisab,
        });
    }

    Ok(render(assess_zakat(&declaration, &rules)?, args.output.format))
}

fn loan(args: LoanArgs) -> Result<String> {
    let input = LoanForm::from_text(&args.amount, &args.rate, &args.periods).into_input()?;
    Ok(render(compute_loan(&input)?, args.output.format))
}

fn stats(args: StatsArgs) -> Result<String> {
    let text = match (&args.counts, &args.counts_file) {
        (Some(inline), _) => inline.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let responses: CodedResponses = text.parse()?;
    Ok(render(summarize(&responses)?, args.output.format))
}

fn serve(args: ServeArgs) -> Result<()> {
    let config = finstudio_service::ServiceConfig {
        addr: SocketAddr::new(args.host, args.port),
        rules_dir: args.rules,
        static_dir: args.static_dir,
    };
    let runtime = tokio::runtime::Runtime::new()
        .map_err(|e| CliError::Service(finstudio_service::RunError::Io(e)))?;
    runtime.block_on(finstudio_service::run(config)).map_err(CliError::Service)
}
