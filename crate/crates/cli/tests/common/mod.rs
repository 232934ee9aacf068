//! Helpers shared by the integration tests: run the binary, parse its CSV
//! and validate its JSON.

#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn curvelab_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_curvelab"));
    cmd.args(args).env_remove("CURVELAB_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn curvelab(args: &[&str]) -> Run {
    curvelab_env(args, &[])
}

/// Header, data rows as raw fields, and `#` comment lines of a CSV document.
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub comments: Vec<String>,
}

impl Csv {
    pub fn parse(text: &str) -> Csv {
        let (comments, data): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.starts_with('#'));
        let body = data.join("\n");
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
        let header = rdr.headers().expect("header").iter().map(str::to_string).collect();
        let rows = rdr.records().map(|r| r.expect("record").iter().map(str::to_string).collect()).collect();
        Csv { header, rows, comments: comments.into_iter().map(str::to_string).collect() }
    }

    pub fn column(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].parse().expect("number")).collect()
    }

    pub fn comment(&self, key: &str) -> Option<String> {
        let prefix = format!("# {key}=");
        self.comments.iter().find_map(|c| c.strip_prefix(&prefix).map(str::to_string))
    }
}

pub fn report_schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/rectify-report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Parses a rectify-check report and validates it against the documented schema.
pub fn checked_report(json: &str) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_str(json).expect("report is JSON");
    let errors: Vec<String> = report_schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "report violates the schema: {errors:?}");
    v
}

pub fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}
