use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "finstudio", version, about = "Tax, pension, zakat and loan calculators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Annual income tax for a salaried person
    Tax(TaxArgs),
    /// Net pension, gratuity, increases and medical allowance
    Pension(PensionArgs),
    /// Zakat over gold, silver, cash, business and property
    Zakat(ZakatArgs),
    /// Monthly and yearly loan payments
    Loan(LoanArgs),
    /// Descriptive statistics of coded survey responses
    Stats(StatsArgs),
    /// Run the HTTP JSON service
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct RulesetArg {
    /// Rule-set file; the shipped pk-fy2014-15 rules when omitted
    #[arg(long, value_name = "PATH")]
    pub ruleset: Option<PathBuf>,
}

// Numeric flags stay strings so that non-numbers get the calculator's own
// "Enter a number for ..." message instead of a usage error.

#[derive(Debug, Args)]
pub struct TaxArgs {
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub monthly_income: String,
    /// Apply the teacher exemption
    #[arg(long)]
    pub teacher: bool,
    #[arg(long, value_name = "N")]
    pub paid_electricity: Option<String>,
    #[arg(long, value_name = "N")]
    pub paid_telephone: Option<String>,
    #[arg(long, value_name = "N")]
    pub paid_mobile: Option<String>,
    #[arg(long, value_name = "N")]
    pub paid_others: Option<String>,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub cnic: Option<String>,
    #[arg(long)]
    pub ntn: Option<String>,
    #[arg(long)]
    pub designation: Option<String>,
    #[arg(long)]
    pub posting_city: Option<String>,
    #[arg(long)]
    pub employer_ntn: Option<String>,
    #[arg(long)]
    pub tax_year: Option<String>,
    /// Assessment date, YYYY-MM-DD
    #[arg(long)]
    pub date: Option<String>,
    #[command(flatten)]
    pub ruleset: RulesetArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PensionArgs {
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub last_basic_pay: String,
    /// Years of qualifying service
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub qualifying_service: String,
    #[arg(long)]
    pub name: Option<String>,
    /// YYYY-MM-DD
    #[arg(long)]
    pub date_of_birth: Option<String>,
    /// YYYY-MM-DD
    #[arg(long)]
    pub date_of_appointment: Option<String>,
    /// YYYY-MM-DD
    #[arg(long)]
    pub date_of_retirement: Option<String>,
    /// Basic pay scale grade
    #[arg(long)]
    pub bps: Option<String>,
    #[command(flatten)]
    pub ruleset: RulesetArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ZakatArgs {
    /// Gold weight in tola
    #[arg(long, value_name = "N", requires = "gold_price")]
    pub gold_tola: Option<String>,
    /// Gold price per tola
    #[arg(long, value_name = "N", requires = "gold_tola")]
    pub gold_price: Option<String>,
    #[arg(long, value_name = "N", requires = "silver_price")]
    pub silver_tola: Option<String>,
    #[arg(long, value_name = "N", requires = "silver_tola")]
    pub silver_price: Option<String>,
    /// Cash line item, one of chb, bas, sss, myhl, ocm (repeatable)
    #[arg(long, value_name = "ITEM=N", requires = "cash_nisab")]
    pub cash: Vec<String>,
    #[arg(long, value_name = "N")]
    pub cash_nisab: Option<String>,
    /// Business line item, one of bi, pfi, bs, ofb (repeatable)
    #[arg(long, value_name = "ITEM=N", requires = "business_nisab")]
    pub business: Vec<String>,
    #[arg(long, value_name = "N")]
    pub business_nisab: Option<String>,
    #[arg(long, value_name = "N", requires = "property_nisab")]
    pub property_net: Option<String>,
    #[arg(long, value_name = "N", requires = "property_nisab")]
    pub property_other: Option<String>,
    #[arg(long, value_name = "N")]
    pub property_nisab: Option<String>,
    #[command(flatten)]
    pub ruleset: RulesetArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct LoanArgs {
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub amount: String,
    /// Annual rate of interest, in percent
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub rate: String,
    /// Number of months/years
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub periods: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["counts", "counts_file"])))]
pub struct StatsArgs {
    /// Comma-separated CODE:COUNT pairs
    #[arg(long, value_name = "CODE:COUNT,...")]
    pub counts: Option<String>,
    /// File with one CODE:COUNT pair per line
    #[arg(long, value_name = "PATH")]
    pub counts_file: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "FINSTUDIO_PORT", default_value_t = finstudio_service::DEFAULT_PORT)]
    pub port: u16,
    #[arg(long, env = "FINSTUDIO_HOST", default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    /// Directory of *.rules.json files
    #[arg(long, env = "FINSTUDIO_RULES_DIR", value_name = "DIR")]
    pub rules: Option<PathBuf>,
    /// Directory of static web UI assets
    #[arg(long = "static", env = "FINSTUDIO_STATIC_DIR", value_name = "DIR")]
    pub static_dir: Option<PathBuf>,
}
