//! Reports: a fixed envelope around named sections, rendered as aligned
//! text, CSV or JSON from the same cells.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Text(String),
    Bool(bool),
    Ints(Vec<i128>),
    Null,
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v as i64),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Ints(v) => Value::Array(v.iter().map(|x| Value::from(*x as i64)).collect()),
            Cell::Null => Value::Null,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Ints(v) => format!(
                "[{}]",
                v.iter().map(i128::to_string).collect::<Vec<_>>().join(", ")
            ),
            Cell::Null => "-".into(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Null => String::new(),
            c => c.text(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<&[usize]> for Cell {
    fn from(v: &[usize]) -> Self {
        Cell::Ints(v.iter().map(|&x| x as i128).collect())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone)]
pub enum Body {
    Facts(Vec<(String, Cell)>),
    Table {
        headers: Vec<String>,
        rows: Vec<Vec<Cell>>,
    },
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: String,
    pub body: Body,
}

impl Section {
    pub fn facts(name: &str) -> Self {
        Section {
            name: name.into(),
            body: Body::Facts(Vec::new()),
        }
    }

    pub fn table(name: &str, headers: &[&str]) -> Self {
        Section {
            name: name.into(),
            body: Body::Table {
                headers: headers.iter().map(|h| h.to_string()).collect(),
                rows: Vec::new(),
            },
        }
    }

    pub fn fact(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.push_fact(key, value);
        self
    }

    pub fn push_fact(&mut self, key: &str, value: impl Into<Cell>) {
        match &mut self.body {
            Body::Facts(f) => f.push((key.into(), value.into())),
            Body::Table { .. } => panic!("facts pushed onto a table section"),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        match &mut self.body {
            Body::Table { headers, rows } => {
                assert_eq!(row.len(), headers.len(), "row width");
                rows.push(row);
            }
            Body::Facts(_) => panic!("row pushed onto a facts section"),
        }
    }

    fn json(&self) -> Value {
        match &self.body {
            Body::Facts(f) => Value::Object(f.iter().map(|(k, v)| (k.clone(), v.json())).collect()),
            Body::Table { headers, rows } => Value::Array(
                rows.iter()
                    .map(|r| {
                        Value::Object(
                            headers
                                .iter()
                                .zip(r)
                                .map(|(h, c)| (h.clone(), c.json()))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        }
    }
}

/// A warning and the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub code: i32,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub warnings: Vec<Warning>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    input_digest: &'a str,
    version: &'a str,
    seed: u64,
    results: Value,
    warnings: Vec<&'a str>,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl Report {
    pub fn new(command: &str, input_digest: String, seed: u64) -> Self {
        Report {
            command: command.into(),
            input_digest,
            seed,
            sections: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn warn(&mut self, code: i32, message: impl Into<String>) {
        self.warnings.push(Warning {
            code,
            message: message.into(),
        });
    }

    /// The first warning decides the exit code.
    pub fn exit_code(&self) -> i32 {
        self.warnings.first().map_or(0, |w| w.code)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_json(&self) -> String {
        let results: Map<String, Value> = self
            .sections
            .iter()
            .map(|s| (s.name.clone(), s.json()))
            .collect();
        let env = Envelope {
            command: &self.command,
            input_digest: &self.input_digest,
            version: VERSION,
            seed: self.seed,
            results: Value::Object(results),
            warnings: self.warnings.iter().map(|w| w.message.as_str()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
        s.push('\n');
        s
    }

    fn header_lines(&self) -> Vec<(String, String)> {
        vec![
            ("command".into(), self.command.clone()),
            ("input_digest".into(), self.input_digest.clone()),
            ("version".into(), VERSION.into()),
            ("seed".into(), self.seed.to_string()),
        ]
    }

    fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for (k, v) in self.header_lines() {
            w.write_record([format!("# {k}"), v]).expect("in-memory write");
        }
        for s in &self.sections {
            w.write_record([format!("# section {}", s.name)]).expect("in-memory write");
            match &s.body {
                Body::Facts(f) => {
                    for (k, v) in f {
                        w.write_record([k.clone(), v.csv()]).expect("in-memory write");
                    }
                }
                Body::Table { headers, rows } => {
                    w.write_record(headers).expect("in-memory write");
                    for r in rows {
                        w.write_record(r.iter().map(Cell::csv)).expect("in-memory write");
                    }
                }
            }
        }
        for warning in &self.warnings {
            w.write_record(["# warning".to_string(), warning.message.clone()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.header_lines() {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!("\n[{}]\n", s.name));
            match &s.body {
                Body::Facts(f) => {
                    let width = f.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in f {
                        out.push_str(&format!("{k:<width$}  {}\n", v.text()));
                    }
                }
                Body::Table { headers, rows } => {
                    let cells: Vec<Vec<String>> =
                        rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
                    let widths: Vec<usize> = headers
                        .iter()
                        .enumerate()
                        .map(|(c, h)| {
                            cells.iter().map(|r| r[c].len()).chain([h.len()]).max().unwrap_or(0)
                        })
                        .collect();
                    // numbers right-aligned, everything else left-aligned
                    let numeric: Vec<bool> = (0..headers.len())
                        .map(|c| rows.iter().all(|r| matches!(r[c], Cell::Int(_) | Cell::Null)))
                        .collect();
                    let line = |row: &[String]| {
                        row.iter()
                            .zip(&widths)
                            .zip(&numeric)
                            .map(|((x, w), num)| {
                                if *num {
                                    format!("{x:>w$}")
                                } else {
                                    format!("{x:<w$}")
                                }
                            })
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    out.push_str(line(headers).trim_end());
                    out.push('\n');
                    for r in &cells {
                        out.push_str(line(r).trim_end());
                        out.push('\n');
                    }
                }
            }
        }
        if !self.warnings.is_empty() {
            out.push_str("\n[warnings]\n");
            for w in &self.warnings {
                out.push_str(&format!("warning: {}\n", w.message));
            }
        }
        out
    }
}
