//! Results file format.
//!
//! ```text
//! # c_min=1
//! policy,budget,trials,mean_reward,mean_regret,regret_ci95,normalized_regret
//! kube,1000,100,14233.7,412.5,35.0521,59.7168
//! ```
//!
//! The leading comment carries the instance's cheapest cost so that readers
//! can rescale the confidence interval the same way as the regret. Reals are
//! written with six significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::experiment::AggregateRow;
use crate::{Error, Result};

/// Exact header line.
pub const HEADER: &str = "policy,budget,trials,mean_reward,mean_regret,regret_ci95,normalized_regret";

/// Formats `x` with six significant digits, like C's `%.6g`.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Let the formatter do the rounding, then read the decimal exponent back.
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Renders rows (comment line, header, data) as a string.
pub fn render_csv(rows: &[AggregateRow], c_min: u64) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Results("refusing to write a results file without rows".into()));
    }
    let mut out = format!("# c_min={c_min}\n{HEADER}\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.policy,
            r.budget,
            r.trials,
            format_sig6(r.mean_reward),
            format_sig6(r.mean_regret),
            format_sig6(r.regret_ci95),
            format_sig6(r.normalized_regret)
        )
        .expect("writing to a String");
    }
    Ok(out)
}

/// Writes rows to `path`.
pub fn write_csv(rows: &[AggregateRow], c_min: u64, path: &Path) -> Result<()> {
    let text = render_csv(rows, c_min)?;
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A parsed results file.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultsFile {
    /// Value of the `# c_min=` comment, if present.
    pub c_min: Option<u64>,
    /// Data rows in file order.
    pub rows: Vec<AggregateRow>,
}

/// Reads a file written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<ResultsFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text).map_err(|(line, message)| Error::Csv {
        path: path.to_path_buf(),
        line,
        message,
    })
}

/// Parses results text; errors carry a 1-based line number.
pub fn parse_csv(text: &str) -> Result<ResultsFile, (usize, String)> {
    let mut c_min = None;
    let mut header_seen = false;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("c_min=") {
                c_min = Some(v.trim().parse().map_err(|_| (lineno, format!("bad c_min `{v}`")))?);
            }
            continue;
        }
        if !header_seen {
            if line != HEADER {
                return Err((lineno, format!("expected header `{HEADER}`, got `{line}`")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let names: Vec<&str> = HEADER.split(',').collect();
        if fields.len() != names.len() {
            return Err((lineno, format!("expected {} fields, got {}", names.len(), fields.len())));
        }
        let real = |i: usize| -> Result<f64, (usize, String)> {
            fields[i]
                .parse()
                .map_err(|_| (lineno, format!("column `{}`: `{}` is not a number", names[i], fields[i])))
        };
        let int = |i: usize| -> Result<u64, (usize, String)> {
            fields[i]
                .parse()
                .map_err(|_| (lineno, format!("column `{}`: `{}` is not an integer", names[i], fields[i])))
        };
        rows.push(AggregateRow {
            policy: fields[0]
                .parse()
                .map_err(|e| (lineno, format!("column `policy`: {e}")))?,
            budget: int(1)?,
            trials: int(2)? as usize,
            mean_reward: real(3)?,
            mean_regret: real(4)?,
            regret_ci95: real(5)?,
            normalized_regret: real(6)?,
        });
    }
    if !header_seen {
        return Err((1, "missing header".into()));
    }
    Ok(ResultsFile { c_min, rows })
}
