//! CSV emission and parsing. One stable schema:
//! `axis,axis_value,variant,user,metric,engine,value,std_error,meta`
//! with UTF-8, LF line endings, and round-trippable float formatting
//! (Rust's shortest-representation `Display`).

use crate::sweep::SweepRow;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

pub const CSV_HEADER: &str = "axis,axis_value,variant,user,metric,engine,value,std_error,meta";

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed row: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
}

fn io_err(path: &Path, source: std::io::Error) -> CsvError {
    CsvError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Serialize rows to the canonical CSV bytes.
pub fn to_csv_bytes(rows: &[SweepRow]) -> Vec<u8> {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.axis, r.axis_value, r.variant, r.user, r.metric, r.engine, r.value, r.std_error,
            r.meta
        ));
    }
    out.into_bytes()
}

/// Write rows to `path`.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<(), CsvError> {
    let mut f = std::fs::File::create(path).map_err(|e| io_err(path, e))?;
    f.write_all(&to_csv_bytes(rows)).map_err(|e| io_err(path, e))
}

fn intern_axis(s: &str) -> Option<&'static str> {
    ["transmit-power-dbm", "total-power-dbm"]
        .into_iter()
        .find(|&k| k == s)
}

fn intern_user(s: &str) -> Option<&'static str> {
    ["n", "m", "sum"].into_iter().find(|&k| k == s)
}

fn intern_metric(s: &str) -> Option<&'static str> {
    ["outage", "ergodic-rate", "throughput-dl", "throughput-dt"]
        .into_iter()
        .find(|&k| k == s)
}

fn intern_engine(s: &str) -> Option<&'static str> {
    ["monte-carlo", "analytic", "asymptotic"]
        .into_iter()
        .find(|&k| k == s)
}

/// Parse the canonical CSV back into rows (inverse of [`emit_csv`]).
pub fn parse_csv(path: &Path) -> Result<Vec<SweepRow>, CsvError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_csv_str(&text).map_err(|(line, msg)| CsvError::Parse {
        path: path.display().to_string(),
        line,
        msg,
    })
}

pub fn parse_csv_str(text: &str) -> Result<Vec<SweepRow>, (usize, String)> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, other)) => return Err((1, format!("unexpected header {other:?}"))),
        None => return Err((1, "empty file".to_string())),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.splitn(9, ',').collect();
        if fields.len() != 9 {
            return Err((idx + 1, format!("expected 9 fields, got {}", fields.len())));
        }
        let parse_f64 = |s: &str, what: &str| -> Result<f64, (usize, String)> {
            s.parse()
                .map_err(|_| (idx + 1, format!("bad {what}: {s:?}")))
        };
        rows.push(SweepRow {
            axis: intern_axis(fields[0]).ok_or((idx + 1, format!("bad axis {:?}", fields[0])))?,
            axis_value: parse_f64(fields[1], "axis_value")?,
            variant: fields[2].to_string(),
            user: intern_user(fields[3]).ok_or((idx + 1, format!("bad user {:?}", fields[3])))?,
            metric: intern_metric(fields[4])
                .ok_or((idx + 1, format!("bad metric {:?}", fields[4])))?,
            engine: intern_engine(fields[5])
                .ok_or((idx + 1, format!("bad engine {:?}", fields[5])))?,
            value: parse_f64(fields[6], "value")?,
            std_error: parse_f64(fields[7], "std_error")?,
            meta: fields[8].to_string(),
        });
    }
    Ok(rows)
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect()
}

/// Group rows into one file per curve (variant × user × metric ×
/// engine), each holding `axis_value,value,std_error` triples ready for
/// any plotting tool.
pub fn emit_plotdata(rows: &[SweepRow], dir: &Path) -> Result<Vec<std::path::PathBuf>, CsvError> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut groups: Vec<(String, Vec<&SweepRow>)> = Vec::new();
    for row in rows {
        let key = format!(
            "{}_{}_{}_{}",
            sanitize(row.metric),
            sanitize(&row.variant),
            sanitize(row.user),
            sanitize(row.engine)
        );
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(row),
            None => groups.push((key, vec![row])),
        }
    }
    let mut written = Vec::new();
    for (key, group) in groups {
        let path = dir.join(format!("{key}.csv"));
        let mut body = String::from("axis_value,value,std_error\n");
        let mut sorted = group;
        sorted.sort_by(|a, b| a.axis_value.total_cmp(&b.axis_value));
        for r in sorted {
            body.push_str(&format!("{},{},{}\n", r.axis_value, r.value, r.std_error));
        }
        std::fs::write(&path, body).map_err(|e| io_err(&path, e))?;
        written.push(path);
    }
    written.sort();
    Ok(written)
}
