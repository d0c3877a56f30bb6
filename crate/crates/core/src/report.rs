//! Report structures serialized to JSON (and CSV for series).
//!
//! Schema: a report carries the command, the echoed run configuration
//! (caps and seed included, for byte-stable reruns) and a list of
//! quantities, each with a name, an optional level, an exact value
//! rendered as a string, and the stabilization level when the quantity is
//! certified by level agreement.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub quantities: Vec<Quantity>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Echo of the run configuration.
#[derive(Debug, Clone, Serialize, Default)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    /// Exact value as a string: integer, `num/den` rational, or boolean.
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization_level: Option<usize>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: RunConfig) -> Self {
        Report {
            command: command.into(),
            config,
            quantities: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, level: Option<usize>, value: impl ToString) {
        self.quantities.push(Quantity {
            name: name.into(),
            level,
            value: value.to_string(),
            stabilization_level: None,
        });
    }

    pub fn push_stable(
        &mut self,
        name: impl Into<String>,
        level: Option<usize>,
        value: impl ToString,
        stabilization_level: Option<usize>,
    ) {
        self.quantities.push(Quantity {
            name: name.into(),
            level,
            value: value.to_string(),
            stabilization_level,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV for series: `name,level,value,stabilization_level`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,level,value,stabilization_level\n");
        for q in &self.quantities {
            out.push_str(&format!(
                "{},{},{},{}\n",
                q.name,
                q.level.map(|l| l.to_string()).unwrap_or_default(),
                q.value,
                q.stabilization_level
                    .map(|l| l.to_string())
                    .unwrap_or_default(),
            ));
        }
        out
    }
}
