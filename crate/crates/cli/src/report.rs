use serde::{Deserialize, Serialize};
use serde_json::Value;

/// What a command found: named values plus pass/fail claims.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub fields: Vec<(String, Value)>,
    pub checks: Vec<Check>,
    /// Free-form output that is not a single value, e.g. a polynomial record.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub body: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub passed: bool,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn field(mut self, key: &str, value: impl Serialize) -> Self {
        self.fields
            .push((key.to_string(), serde_json::to_value(value).expect("serializable field")));
        self
    }

    pub fn check(mut self, claim: impl Into<String>, passed: bool) -> Self {
        self.checks.push(Check {
            claim: claim.into(),
            passed,
        });
        self
    }

    pub fn body(mut self, text: impl Into<String>) -> Self {
        self.body = Some(text.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.title);
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {shown}\n"));
        }
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{}: {verdict}\n", c.claim));
        }
        if let Some(b) = &self.body {
            out.push_str(b);
            if !b.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}
