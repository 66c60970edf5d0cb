//! File emission. Every table is produced as CSV text first; JSON output
//! carries the same columns under `data` next to a `meta` echo of the run.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

/// `inf`, `-inf` and `nan` stay strings since JSON has no such numbers.
fn cell(s: &str) -> Value {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => json!(x),
        _ => Value::String(s.to_string()),
    }
}

/// Rows of `csv` as objects keyed by the header.
pub fn csv_to_json(csv: &str) -> Value {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let rows: Vec<Value> = lines
        .map(|line| {
            let mut obj = Map::new();
            for (k, v) in header.iter().zip(line.split(',')) {
                obj.insert((*k).to_string(), cell(v));
            }
            Value::Object(obj)
        })
        .collect();
    Value::Array(rows)
}

fn meta(cfg: &RunConfig, extra: &[(&str, String)]) -> Value {
    let mut config = Map::new();
    for line in cfg.to_text().lines() {
        if let Some((k, v)) = line.split_once(" = ") {
            config.insert(k.to_string(), Value::String(v.to_string()));
        }
    }
    let mut m = Map::new();
    m.insert("tool".into(), json!("rotosc"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("config".into(), Value::Object(config));
    for (k, v) in extra {
        m.insert((*k).to_string(), cell(v));
    }
    Value::Object(m)
}

/// Writes one table as `<stem>.csv` or `<stem>.json` and returns its path.
pub fn write_table(
    cfg: &RunConfig,
    stem: &str,
    csv: &str,
    extra: &[(&str, String)],
) -> std::io::Result<PathBuf> {
    fs::create_dir_all(&cfg.out)?;
    let path = cfg.out.join(format!("{stem}.{}", cfg.format));
    match cfg.format {
        Format::Csv => fs::write(&path, csv)?,
        Format::Json => {
            let doc = json!({ "meta": meta(cfg, extra), "data": csv_to_json(csv) });
            let mut text = serde_json::to_string_pretty(&doc).map_err(std::io::Error::other)?;
            text.push('\n');
            fs::write(&path, text)?;
        }
    }
    Ok(path)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}
