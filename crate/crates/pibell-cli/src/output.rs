//! Output plumbing: lossless float formatting, CSV/JSON table rendering and
//! atomic file writes.

use std::fs;
use std::io::Write;
use std::path::Path;

/// 17 significant digits; round-trips any f64 and keeps reruns byte-identical.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.16e}")
    }
}

/// One table cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i128),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_f64(*v),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::json!(*v as i64),
            Cell::Float(v) if v.is_finite() => serde_json::json!(v),
            Cell::Float(v) => serde_json::Value::String(fmt_f64(*v)),
        }
    }
}

/// A rectangular data table with a header row.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Array(rows)).unwrap();
        s.push('\n');
        s
    }

    pub fn render(&self, format: crate::Format) -> String {
        match format {
            crate::Format::Csv => self.to_csv(),
            crate::Format::Json => self.to_json(),
        }
    }
}

/// Writes via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("pibell-out"),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Emits a table to `--out` (atomically) or to stdout, and the summary object
/// to stdout (or stderr when the table already owns stdout).
pub fn emit(
    out: Option<&Path>,
    table: &Table,
    format: crate::Format,
    summary: &serde_json::Value,
) -> std::io::Result<()> {
    let rendered = table.render(format);
    let summary_line = serde_json::to_string(summary).unwrap();
    match out {
        Some(path) => {
            write_atomic(path, &rendered)?;
            let summary_path = path.with_extension("summary.json");
            write_atomic(&summary_path, &format!("{summary_line}\n"))?;
            println!("{summary_line}");
        }
        None => {
            print!("{rendered}");
            eprintln!("{summary_line}");
        }
    }
    Ok(())
}
