//! Command results and their text, JSON and CSV renderings.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "cm-taylor/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Discrepancy,
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
            Status::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper: Option<String>,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, computed: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            paper: None,
            computed: computed.into(),
            note: None,
        }
    }

    pub fn paper(mut self, p: impl Into<String>) -> Self {
        self.paper = Some(p.into());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    /// PASS when `computed == paper`, otherwise `on_mismatch`.
    pub fn compare(
        name: impl Into<String>,
        paper: impl Into<String>,
        computed: impl Into<String>,
        on_mismatch: Status,
    ) -> Self {
        let (p, c) = (paper.into(), computed.into());
        let status = if p == c { Status::Pass } else { on_mismatch };
        Self::new(name, status, c).paper(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Output of one subcommand. `data` holds command-specific JSON fields;
/// `columns`/`rows` form the table shared by all three formats.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub preamble: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    /// The table duplicates `data`; render it only as CSV.
    pub csv_only_table: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.preamble.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.data
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn table(&mut self, columns: &[&str]) {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// 1 if anything failed, 3 if anything disagrees with the paper, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Discrepancy) {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.preamble {
            out.push_str(l);
            out.push('\n');
        }
        if !self.csv_only_table {
            for r in &self.rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{:<11} {}: {}",
                c.status.label(),
                c.name,
                c.computed
            ));
            if let Some(p) = &c.paper {
                out.push_str(&format!(" (paper: {p})"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" [{n}]"));
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(self.command));
        for (k, v) in &self.data {
            obj.insert(k.clone(), v.clone());
        }
        if !self.rows.is_empty() && !self.csv_only_table {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| {
                    Value::Object(
                        self.columns
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|c| json!(c)))
                            .collect(),
                    )
                })
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        if !self.checks.is_empty() {
            obj.insert(
                "checks".into(),
                serde_json::to_value(&self.checks).expect("serializable"),
            );
        }
        obj.insert("exit_code".into(), json!(self.exit_code()));
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        s.push('\n');
        s
    }

    /// The table if there is one, otherwise the checks.
    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.rows.is_empty() {
            w.write_record(&self.columns).expect("in-memory write");
            for r in &self.rows {
                w.write_record(r).expect("in-memory write");
            }
        } else {
            w.write_record(["name", "status", "paper", "computed", "note"])
                .expect("in-memory write");
            for c in &self.checks {
                w.write_record([
                    c.name.as_str(),
                    c.status.label(),
                    c.paper.as_deref().unwrap_or(""),
                    &c.computed,
                    c.note.as_deref().unwrap_or(""),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.line("header");
        r.table(&["n", "value"]);
        r.row(vec!["0".into(), "1".into()]);
        r.row(vec!["1".into(), "(1)+(1)sqrt(2)".into()]);
        r.set("p", 5);
        r
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(
            sample().render(Format::Text),
            "header\n0\t1\n1\t(1)+(1)sqrt(2)\n"
        );
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["p"], 5);
        assert_eq!(v["rows"][1]["value"], "(1)+(1)sqrt(2)");
    }

    #[test]
    fn csv_round_trip() {
        let s = sample().render(Format::Csv);
        let mut rd = csv::Reader::from_reader(s.as_bytes());
        let rows: Vec<Vec<String>> = rd
            .records()
            .map(|r| r.unwrap().iter().map(String::from).collect())
            .collect();
        assert_eq!(rows, vec![vec!["0", "1"], vec!["1", "(1)+(1)sqrt(2)"]]);
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new("x");
        assert_eq!(r.exit_code(), 0);
        r.check(Check::new("a", Status::Discrepancy, "v"));
        assert_eq!(r.exit_code(), 3);
        r.check(Check::new("b", Status::Fail, "v"));
        assert_eq!(r.exit_code(), 1);
    }
}
