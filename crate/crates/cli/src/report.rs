use rbx::foundation::{format_scalar, Scalar};
use rbx::structures::CheckReport;
use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub defect: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), ok, routes_agree: None, witness: None }
    }
}

impl From<&CheckReport> for Check {
    fn from(r: &CheckReport) -> Self {
        Check {
            name: r.check.clone(),
            ok: r.ok && r.routes_agree,
            routes_agree: Some(r.routes_agree),
            witness: r.witness.as_ref().map(|w| Witness { inputs: w.inputs.clone(), defect: scalars(&w.defect) }),
        }
    }
}

pub fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Text(String),
    Bool(bool),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Bool(b) => f.write_str(if *b { "yes" } else { "no" }),
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&Scalar> for Cell {
    fn from(x: &Scalar) -> Self {
        Cell::Text(format_scalar(x))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, ok: true, checks: vec![], tables: vec![], elapsed_ms: 0 }
    }

    pub fn check(&mut self, c: Check) {
        self.ok &= c.ok;
        self.checks.push(c);
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        for c in &self.checks {
            let _ = writeln!(out, "{} {}", if c.ok { "PASS" } else { "FAIL" }, c.name);
            if c.routes_agree == Some(false) {
                let _ = writeln!(out, "     evaluation routes disagree");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "     witness ({}) -> ({})", w.inputs.join(", "), w.defect.join(", "));
            }
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.title);
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| cells.iter().map(|r| r.get(i).map_or(0, |s| s.chars().count())).chain([t.columns[i].chars().count()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| {
                row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "  {}", line(&t.columns));
            for r in &cells {
                let _ = writeln!(out, "  {}", line(r));
            }
        }
        let _ = writeln!(out, "\n{} ({} ms)", if self.ok { "ok" } else { "FAILED" }, self.elapsed_ms);
        out
    }
}
