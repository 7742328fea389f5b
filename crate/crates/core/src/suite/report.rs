//! Records, the report, and its JSON and Markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use super::SuiteConfig;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub params: Map<String, Value>,
    pub modulus: String,
    pub variant: String,
    pub pass: bool,
    pub witness: Option<Value>,
    pub skipped: bool,
    pub reason: Option<String>,
    /// `(grid value, sample index, variant index)`, used only for ordering.
    #[serde(skip)]
    pub(crate) order: (i64, u32, u32),
}

impl Record {
    pub(crate) fn skip(check: &str, grid: i64, params: Map<String, Value>, reason: String) -> Self {
        Self {
            check: check.to_string(),
            params,
            modulus: String::new(),
            variant: String::new(),
            pass: false,
            witness: None,
            skipped: true,
            reason: Some(reason),
            order: (grid, 0, 0),
        }
    }

    pub fn sort_key(&self) -> (&str, (i64, u32, u32), &str) {
        (&self.check, self.order, &self.variant)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match (r.skipped, r.pass) {
                (true, _) => s.skip += 1,
                (false, true) => s.pass += 1,
                (false, false) => s.fail += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub per_check_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config: SuiteConfig,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub timing: Timing,
}

/// Everything except timing: a pure function of configuration and version.
#[derive(Serialize)]
struct Comparable<'a> {
    version: &'a str,
    config: &'a SuiteConfig,
    records: &'a [Record],
    summary: &'a Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(crate::Error::InvalidConfig(format!("unknown format `{s}`"))),
        }
    }
}

impl Report {
    /// 0 when every non-skipped record passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn comparable_json(&self) -> String {
        serde_json::to_string_pretty(&Comparable {
            version: &self.version,
            config: &self.config,
            records: &self.records,
            summary: &self.summary,
        })
        .expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# qcert report\n");
        let _ = writeln!(out, "version {}, seed {}\n", self.version, self.config.seed);
        let _ = writeln!(out, "| check | params | variant | modulus | result |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for r in &self.records {
            let params = r
                .params
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    v => format!("{k}={v}"),
                })
                .collect::<Vec<_>>()
                .join(", ");
            let result = match (r.skipped, r.pass) {
                (true, _) => format!("SKIP: {}", r.reason.as_deref().unwrap_or("")),
                (false, true) => "PASS".to_string(),
                (false, false) => {
                    let mut s = "FAIL".to_string();
                    if let Some(w) = &r.witness {
                        let _ = write!(s, " {w}");
                    }
                    if let Some(reason) = &r.reason {
                        let _ = write!(s, " ({reason})");
                    }
                    s
                }
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.check,
                escape(&params),
                escape(&r.variant),
                escape(&r.modulus),
                escape(&result)
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n## Summary\n\npass {}, fail {}, skip {}",
            s.pass, s.fail, s.skip
        );
        let _ = writeln!(out, "\n## Timing\n\ntotal {:.1} ms", self.timing.total_ms);
        for (k, v) in &self.timing.per_check_ms {
            let _ = writeln!(out, "- {k}: {v:.1} ms");
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}
