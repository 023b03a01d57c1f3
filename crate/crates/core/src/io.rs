//! Plain-text instance files.
//!
//! ```text
//! n 3 unit-sum
//! 0.5 0.3 0.2
//! 0.2 0.5 0.3
//! 0.3 0.2 0.5
//! ```
//!
//! Ordinal-only instances use the class `ordinal` and list item indices,
//! most preferred first.

use std::fmt::Write as _;

use crate::{Error, OrdinalProfile, Result, ValuationClass, ValuationProfile};

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Valuation(ValuationProfile),
    Ordinal(OrdinalProfile),
}

pub fn write_valuation(profile: &ValuationProfile) -> String {
    let mut out = format!("n {} {}\n", profile.n(), profile.class().as_str());
    for row in profile.rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn write_ordinal(profile: &OrdinalProfile) -> String {
    let mut out = format!("n {} ordinal\n", profile.n());
    for ranking in profile.rankings() {
        let line: Vec<String> = ranking.iter().map(|j| j.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse { line: hline, msg: format!("bad header `{header}`") };
    if parts.len() != 3 || parts[0] != "n" {
        return Err(bad_header());
    }
    let n: usize = parts[1].parse().map_err(|_| bad_header())?;
    let kind = parts[2];

    let rows: Vec<(usize, Vec<&str>)> =
        lines.map(|(no, l)| (no, l.split_whitespace().collect())).collect();
    if rows.len() != n {
        return Err(Error::Parse {
            line: hline,
            msg: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    for (no, row) in &rows {
        if row.len() != n {
            return Err(Error::Parse {
                line: *no,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
    }

    if kind == "ordinal" {
        let rankings = rows
            .iter()
            .map(|(no, row)| {
                row.iter()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Parse { line: *no, msg: format!("bad index `{t}`") })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return OrdinalProfile::new(rankings).map(Instance::Ordinal);
    }

    let class: ValuationClass = kind.parse().map_err(|_| bad_header())?;
    let values = rows
        .iter()
        .map(|(no, row)| {
            row.iter()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Parse { line: *no, msg: format!("bad value `{t}`") })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ValuationProfile::new(values, class).map(Instance::Valuation)
}
