use std::path::Path;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{FromRequest, Request, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use finstudio_core::pension::PensionInput;
use finstudio_core::tax::TaxProfile;
use finstudio_core::zakat::ZakatDeclaration;
use finstudio_core::{
    assess_tax, assess_zakat, compute_loan, compute_pension, summarize, CodedResponses, LoanForm,
    Presentable, Rendered, RuleSet,
};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

use crate::registry::RulesetRegistry;

/// Every `code` an error response can carry.
pub const ERROR_CODES: &[&str] = &[
    "parse_error",
    "validation_error",
    "invalid_input",
    "service_too_short",
    "not_a_number",
    "no_categories",
    "empty_input",
    "unknown_ruleset",
    "malformed_json",
    "schema_violation",
    "unsupported_media_type",
    "not_found",
];

type AppState = Arc<RulesetRegistry>;

pub fn router(registry: Arc<RulesetRegistry>, static_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/v1/tax/assess", post(tax_assess))
        .route("/api/v1/pension/compute", post(pension_compute))
        .route("/api/v1/zakat/assess", post(zakat_assess))
        .route("/api/v1/loan/compute", post(loan_compute))
        .route("/api/v1/stats/summarize", post(stats_summarize))
        .route("/api/v1/rulesets", get(list_rulesets))
        .route("/api/v1/rulesets/{id}", get(get_ruleset))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(registry);
    let app = match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(|| async {
            ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such route")
        }),
    };
    app.layer(CorsLayer::permissive())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiErrorBody {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
}

#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ApiErrorBody,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: ApiErrorBody {
                code: code.to_string(),
                message: message.into(),
                field: None,
                title: None,
            },
        }
    }

    fn unknown_ruleset(id: &str) -> Self {
        let mut e = ApiError::new(
            StatusCode::NOT_FOUND,
            "unknown_ruleset",
            format!("unknown rule-set {id:?}"),
        );
        e.body.field = Some("ruleset_id".into());
        e
    }
}

impl From<finstudio_core::Error> for ApiError {
    fn from(err: finstudio_core::Error) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: ApiErrorBody {
                code: err.code().to_string(),
                message: err.to_string(),
                field: err.field().map(str::to_string),
                title: err.title().map(str::to_string),
            },
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(rejection: JsonRejection) -> Self {
        let (status, code) = match &rejection {
            JsonRejection::JsonDataError(_) => {
                (StatusCode::UNPROCESSABLE_ENTITY, "schema_violation")
            }
            JsonRejection::MissingJsonContentType(_) => {
                (StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type")
            }
            _ => (StatusCode::BAD_REQUEST, "malformed_json"),
        };
        ApiError::new(status, code, rejection.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

/// `Json` with rejections reported as [`ApiError`] bodies.
struct Body<T>(T);

impl<S, T> FromRequest<S> for Body<T>
where
    Json<T>: FromRequest<S, Rejection = JsonRejection>,
    S: Send + Sync,
{
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        let Json(value) = Json::<T>::from_request(req, state).await?;
        Ok(Body(value))
    }
}

/// Engine input plus an optional rule-set selector.
#[derive(Debug, Deserialize)]
struct WithRuleset<T> {
    #[serde(flatten)]
    input: T,
    #[serde(default)]
    ruleset_id: Option<String>,
}

fn resolve<'a>(registry: &'a RulesetRegistry, id: Option<&str>) -> Result<&'a RuleSet, ApiError> {
    registry
        .get(id)
        .map(|r| r.as_ref())
        .ok_or_else(|| ApiError::unknown_ruleset(id.unwrap_or_default()))
}

type ApiResult<T> = Result<Json<Rendered<T>>, ApiError>;

fn rendered<T: Presentable>(result: T) -> Json<Rendered<T>> {
    Json(Rendered::new(result))
}

async fn tax_assess(
    State(registry): State<AppState>,
    Body(req): Body<WithRuleset<TaxProfile>>,
) -> ApiResult<finstudio_core::TaxAssessment> {
    let rules = resolve(&registry, req.ruleset_id.as_deref())?;
    Ok(rendered(assess_tax(&req.input, rules)?))
}

async fn pension_compute(
    State(registry): State<AppState>,
    Body(req): Body<WithRuleset<PensionInput>>,
) -> ApiResult<finstudio_core::PensionAward> {
    let rules = resolve(&registry, req.ruleset_id.as_deref())?;
    Ok(rendered(compute_pension(&req.input, rules)?))
}

async fn zakat_assess(
    State(registry): State<AppState>,
    Body(req): Body<WithRuleset<ZakatDeclaration>>,
) -> ApiResult<finstudio_core::ZakatAssessment> {
    let rules = resolve(&registry, req.ruleset_id.as_deref())?;
    Ok(rendered(assess_zakat(&req.input, rules)?))
}

async fn loan_compute(Body(form): Body<LoanForm>) -> ApiResult<finstudio_core::LoanSchedule> {
    let input = form.into_input()?;
    Ok(rendered(compute_loan(&input)?))
}

async fn stats_summarize(
    Body(responses): Body<CodedResponses>,
) -> ApiResult<finstudio_core::SurveySummary> {
    Ok(rendered(summarize(&responses)?))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RulesetSummary {
    pub id: String,
    pub currency: String,
    pub is_default: bool,
    pub tax_brackets: usize,
    pub pension_increases: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RulesetListing {
    pub default: String,
    pub rulesets: Vec<RulesetSummary>,
}

async fn list_rulesets(State(registry): State<AppState>) -> Json<RulesetListing> {
    let rulesets = registry
        .iter()
        .map(|r| RulesetSummary {
            id: r.id.clone(),
            currency: r.currency.clone(),
            is_default: r.id == registry.default_id(),
            tax_brackets: r.tax.brackets.len(),
            pension_increases: r.pension.increases.iter().map(|i| i.label.clone()).collect(),
        })
        .collect();
    Json(RulesetListing {
        default: registry.default_id().to_string(),
        rulesets,
    })
}

async fn get_ruleset(
    State(registry): State<AppState>,
    axum::extract::Path(id): axum::extract::Path<String>,
) -> Result<Json<RuleSet>, ApiError> {
    let rules = resolve(&registry, Some(&id))?;
    Ok(Json(rules.clone()))
}
