use serde::Serialize;

use crate::config::Format;
use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "zhu-lab/report/1";

/// What a finished computation says about itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Status {
    /// Set when the mathematical verdict is negative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative: Option<String>,
    /// Set when some stabilization or truncation check did not pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unstable: Option<String>,
}

impl Status {
    pub fn exit_code(&self, allow_unstable: bool) -> u8 {
        if self.unstable.is_some() && !allow_unstable {
            3
        } else if self.negative.is_some() {
            1
        } else {
            0
        }
    }
}

pub trait Report: Serialize {
    fn command(&self) -> &'static str;
    fn status(&self) -> Status;
    fn text(&self) -> String;
    /// Dimension or Jordan table, when the command has one.
    fn csv(&self) -> Option<String> {
        None
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    schema: &'static str,
    command: &'static str,
    status: Status,
    report: &'a R,
}

pub fn render<R: Report>(r: &R, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let env = Envelope {
                schema: SCHEMA,
                command: r.command(),
                status: r.status(),
                report: r,
            };
            let mut s = serde_json::to_string_pretty(&env)
                .map_err(|e| CliError::Config(format!("json encoding: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => r.csv().ok_or_else(|| {
            CliError::Usage(format!("csv output is not available for `{}`; use json or text", r.command()))
        }),
        Format::Text => {
            let mut s = r.text();
            let st = r.status();
            if let Some(u) = &st.unstable {
                s.push_str(&format!("unstable: {u}\n"));
            }
            Ok(s)
        }
    }
}

/// Minimal CSV writer; fields containing `,` or `"` are quoted.
pub struct Csv(String);

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut c = Csv(String::new());
        c.row(header.iter().map(|s| s.to_string()));
        c
    }

    pub fn row(&mut self, fields: impl IntoIterator<Item = String>) {
        let cells: Vec<String> = fields
            .into_iter()
            .map(|f| {
                if f.contains([',', '"', '\n']) {
                    format!("\"{}\"", f.replace('"', "\"\""))
                } else {
                    f
                }
            })
            .collect();
        self.0.push_str(&cells.join(","));
        self.0.push('\n');
    }

    pub fn finish(self) -> String {
        self.0
    }
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Drops a `/1` denominator for human-facing text; structured output keeps `p/q`.
pub fn pretty(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

pub fn pretty_list(xs: &[String]) -> String {
    xs.iter().map(|s| pretty(s)).collect::<Vec<_>>().join(", ")
}
