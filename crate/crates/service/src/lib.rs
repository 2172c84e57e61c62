//! HTTP JSON service over the finstudio engines.
//!
//! Routes live under `/api/v1`; see [`api::router`]. The only state is an
//! immutable [`RulesetRegistry`] loaded at startup.

pub mod api;
pub mod registry;

use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

pub use api::{router, ApiError, ERROR_CODES};
pub use registry::{RegistryError, RulesetRegistry};

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub addr: SocketAddr,
    /// Directory of `*.rules.json` files; the shipped rule-set when `None`.
    pub rules_dir: Option<PathBuf>,
    /// Static web UI assets served for any non-API path.
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            addr: SocketAddr::from(([127, 0, 0, 1], DEFAULT_PORT)),
            rules_dir: None,
            static_dir: None,
        }
    }
}

/// Serves `app` on an already-bound listener until ctrl-c.
pub async fn serve(listener: tokio::net::TcpListener, app: axum::Router) -> io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

/// Loads the registry, binds and serves. Returns once the server stops.
pub async fn run(config: ServiceConfig) -> Result<(), RunError> {
    let registry = match &config.rules_dir {
        Some(dir) => RulesetRegistry::from_dir(dir)?,
        None => RulesetRegistry::builtin(),
    };
    let app = router(Arc::new(registry), config.static_dir.as_deref());
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!("finstudio listening on http://{}", listener.local_addr()?);
    serve(listener, app).await?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Io(#[from] io::Error),
}
