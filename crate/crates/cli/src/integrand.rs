use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context};
use equiquad::Polynomial;

/// Test integrands selectable with `--builtin`.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    Poly(Polynomial),
    Exp,
    Sin,
}

impl Builtin {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Builtin::Poly(p) => p.eval_f64(t),
            Builtin::Exp => t.exp(),
            Builtin::Sin => t.sin(),
        }
    }

    pub fn polynomial(&self) -> Option<&Polynomial> {
        match self {
            Builtin::Poly(p) => Some(p),
            _ => None,
        }
    }
}

impl FromStr for Builtin {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s.trim() {
            "exp" => Ok(Builtin::Exp),
            "sin" => Ok(Builtin::Sin),
            other => match other.strip_prefix("poly:") {
                Some(coeffs) => {
                    let poly = coeffs
                        .parse()
                        .with_context(|| format!("bad polynomial coefficients '{coeffs}'"))?;
                    Ok(Builtin::Poly(poly))
                }
                None => bail!("unknown builtin '{other}' (expected poly:c0,c1,..., exp or sin)"),
            },
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Poly(p) => write!(f, "poly:{p}"),
            Builtin::Exp => write!(f, "exp"),
            Builtin::Sin => write!(f, "sin"),
        }
    }
}

/// Reads ordinates from `path`: plain one-per-line text, or CSV when
/// `column` is nonzero or a line contains a comma. Blank lines and lines
/// starting with `#` are skipped, as is a non-numeric first row.
pub fn read_samples(path: &Path, column: usize) -> anyhow::Result<Vec<f64>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_samples(&text, column).with_context(|| format!("in {}", path.display()))
}

pub fn parse_samples(text: &str, column: usize) -> anyhow::Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(row as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let Some(field) = record.get(column) else {
            bail!("line {line}: no column {column}");
        };
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if values.is_empty() && row == 0 => continue,
            Err(_) => bail!("line {line}: '{field}' is not a number"),
        }
    }
    if values.is_empty() {
        bail!("no samples found");
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        assert_eq!("exp".parse::<Builtin>().unwrap(), Builtin::Exp);
        let cube: Builtin = "poly:0,0,0,1".parse().unwrap();
        assert_eq!(cube.eval(2.0), 8.0);
        assert_eq!(cube.to_string(), "poly:0,0,0,1");
        assert!("cos".parse::<Builtin>().is_err());
        assert!("poly:1,x".parse::<Builtin>().is_err());
    }

    #[test]
    fn plain_samples_with_comments() {
        let v = parse_samples("# header\n1\n2.5\n\n-3e-1\n", 0).unwrap();
        assert_eq!(v, vec![1.0, 2.5, -0.3]);
    }

    #[test]
    fn csv_column_with_header() {
        let v = parse_samples("t,f\n0,1\n0.5,2\n1,4\n", 1).unwrap();
        assert_eq!(v, vec![1.0, 2.0, 4.0]);
    }

    #[test]
    fn bad_rows_are_reported() {
        let err = parse_samples("1\n2\nabc\n", 0).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(parse_samples("1,2\n", 4).is_err());
        assert!(parse_samples("# only a comment\n", 0).is_err());
    }
}
