//! The single rounding authority: engine results become labelled 2-dp display
//! strings here, and nowhere else.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// One row of a result panel.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplayLine {
    /// JSON path of the value inside the result, e.g. `increases.AR2010`.
    pub key: String,
    /// Result-screen label, e.g. "Net pension".
    pub label: String,
    pub value: String,
}

impl DisplayLine {
    pub fn amount(key: impl Into<String>, label: impl Into<String>, value: f64) -> Self {
        DisplayLine {
            key: key.into(),
            label: label.into(),
            value: crate::money::format_amount(value),
        }
    }
}

pub trait Presentable {
    fn display_lines(&self) -> Vec<DisplayLine>;

    /// Free-text messages shown alongside the figures (nisab notices,
    /// advisories).
    fn messages(&self) -> Vec<String> {
        Vec::new()
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for line in self.display_lines() {
            out.push_str(&line.label);
            out.push(' ');
            out.push_str(&line.value);
            out.push('\n');
        }
        for msg in self.messages() {
            out.push_str("Notice: ");
            out.push_str(&msg);
            out.push('\n');
        }
        out
    }
}

/// An engine result with its display strings attached. Serializes as the
/// result's own fields plus a `display` object keyed by field path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rendered<T> {
    #[serde(flatten)]
    pub result: T,
    pub display: IndexMap<String, String>,
}

impl<T: Presentable> Rendered<T> {
    pub fn new(result: T) -> Self {
        let display = result
            .display_lines()
            .into_iter()
            .map(|l| (l.key, l.value))
            .collect();
        Rendered { result, display }
    }
}
