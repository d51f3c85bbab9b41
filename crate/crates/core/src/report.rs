//! Serialization of scan rows.
//!
//! JSON integers are written as decimal strings so no consumer has to assume
//! a particular integer width. CSV rows use the fixed header [`CSV_HEADER`].

use std::io::Write;

use crate::error::{Error, Result};
use crate::scan::ScanRow;

pub const CSV_HEADER: [&str; 10] = [
    "d",
    "g",
    "r",
    "rho",
    "expected_gonality",
    "thm3_ok",
    "alpha",
    "minimizers",
    "h1_vanishes",
    "thm1_ok",
];

/// Serde adapter writing integers as decimal strings.
pub mod dec {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(value: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            match Option::<String>::deserialize(d)? {
                Some(text) => text.parse().map(Some).map_err(de::Error::custom),
                None => Ok(None),
            }
        }
    }
}

fn opt<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

/// Minimizers as `(m n);(m n)`.
pub fn render_minimizers(row: &ScanRow) -> String {
    row.minimizers
        .as_ref()
        .map(|list| {
            list.iter()
                .map(|x| format!("({} {})", x.m, x.n))
                .collect::<Vec<_>>()
                .join(";")
        })
        .unwrap_or_default()
}

fn csv_record(row: &ScanRow) -> [String; 10] {
    [
        row.d.to_string(),
        row.g.to_string(),
        row.r.to_string(),
        row.rho.to_string(),
        row.expected_gonality.to_string(),
        row.thm3_ok.to_string(),
        opt(&row.alpha),
        render_minimizers(row),
        opt(&row.h1_vanishes),
        opt(&row.thm1_applicable),
    ]
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(out);
    let io = |e: csv::Error| Error::Io(format!("csv output failed: {e}"));
    writer.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        writer.write_record(csv_record(row)).map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Io(format!("csv output failed: {e}")))?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ScanRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)
        .map_err(|e| Error::Io(format!("json output failed: {e}")))?;
    writeln!(out).map_err(|e| Error::Io(format!("json output failed: {e}")))?;
    Ok(())
}

pub fn parse_json(text: &str) -> Result<Vec<ScanRow>> {
    serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("malformed scan JSON: {e}")))
}

/// Fixed-width human table.
pub fn write_table<W: Write>(rows: &[ScanRow], mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("table output failed: {e}"));
    writeln!(
        out,
        "{:>5} {:>5} {:>3} {:>7} {:>5} {:>7} {:>6} {:<16} {:>5} {:>7}",
        "d", "g", "r", "rho", "gon", "thm3", "alpha", "minimizers", "h1=0", "thm1"
    )
    .map_err(io)?;
    for row in rows {
        let dash = |s: String| if s.is_empty() { "-".to_string() } else { s };
        writeln!(
            out,
            "{:>5} {:>5} {:>3} {:>7} {:>5} {:>7} {:>6} {:<16} {:>5} {:>7}",
            row.d,
            row.g,
            row.r,
            row.rho,
            row.expected_gonality,
            row.thm3_ok,
            dash(opt(&row.alpha)),
            dash(render_minimizers(row)),
            dash(opt(&row.h1_vanishes)),
            dash(opt(&row.thm1_applicable)),
        )
        .map_err(io)?;
    }
    Ok(())
}
