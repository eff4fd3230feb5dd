//! Deterministic number formatting and atomic file output.

use std::io::Write;
use std::path::{Path, PathBuf};

/// Six significant digits, no locale, `-0` folded to `0`, empty for missing values.
pub fn fmt_sig6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // Rounding can carry into a new digit (e.g. 999999.5); re-check the width.
        if s.trim_start_matches('-').split('.').next().map_or(0, str::len) > 6 {
            return exp_form(v);
        }
        trim_zeros(&s)
    } else {
        exp_form(v)
    }
}

fn exp_form(v: f64) -> String {
    let s = format!("{v:.5e}");
    let (m, e) = s.split_once('e').expect("exponent form");
    format!("{}e{}", trim_zeros(m), e)
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn opt(v: Option<f64>) -> String {
    v.map(fmt_sig6).unwrap_or_default()
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp: PathBuf = dir.join(format!(".{name}.tmp"));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// A rectangular table with a mandatory header row.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    /// Array of objects keyed by header; numeric cells become JSON numbers.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut m = serde_json::Map::new();
                for (h, c) in self.header.iter().zip(r) {
                    let v = match c.parse::<f64>() {
                        Ok(x) if x.is_finite() => serde_json::json!(x),
                        _ if c.is_empty() => serde_json::Value::Null,
                        _ => serde_json::Value::String(c.clone()),
                    };
                    m.insert(h.clone(), v);
                }
                serde_json::Value::Object(m)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(fmt_sig6(1783.706_123), "1783.71");
        assert_eq!(fmt_sig6(0.333_333_34), "0.333333");
        assert_eq!(fmt_sig6(105.0), "105");
        assert_eq!(fmt_sig6(-0.0), "0");
        assert_eq!(fmt_sig6(1.234_567e-7), "1.23457e-7");
        assert_eq!(fmt_sig6(2.5e9), "2.5e9");
        assert_eq!(fmt_sig6(999_999.7), "1e6");
        assert_eq!(fmt_sig6(-16.487_34), "-16.4873");
    }

    #[test]
    fn csv_uses_lf() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec!["1".into(), "x,y".into()]);
        assert_eq!(String::from_utf8(t.to_csv()).unwrap(), "a,b\n1,\"x,y\"\n");
    }
}
