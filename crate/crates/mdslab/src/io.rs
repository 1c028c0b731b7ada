//! Text formats: the code file (a field token header plus the generator
//! matrix, one row per line, entries as integer encodings) and small list
//! parsers shared with the command-line front end.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;

/// Serialize a code: header `field=<token> n=<n> k=<k>`, then the canonical
/// generator matrix with space-separated integer encodings.
pub fn write_code(code: &LinearCode) -> String {
    let mut out = format!(
        "field={} n={} k={}\n",
        code.field().token(),
        code.n(),
        code.k()
    );
    let gen = code.generator();
    for r in 0..code.k() {
        let row: Vec<String> = gen.row(r).iter().map(|e| e.enc().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a code file produced by `write_code` (or written by hand in the
/// same format).
pub fn read_code(text: &str) -> Result<LinearCode> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty code file".into()))?
        .trim();

    let body = header
        .strip_prefix("field=")
        .ok_or_else(|| Error::Parse("header must start with field=".into()))?;
    // the field token may contain spaces, so split at the trailing
    // " n=.. k=.." pair from the right
    let npos = body
        .rfind(" n=")
        .ok_or_else(|| Error::Parse("header missing n=".into()))?;
    let (token, rest) = body.split_at(npos);
    let rest = rest.trim();
    let (npart, kpart) = rest
        .split_once(' ')
        .ok_or_else(|| Error::Parse("header missing k=".into()))?;
    let n: usize = npart
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad n in header {header:?}")))?;
    let k: usize = kpart
        .trim()
        .strip_prefix("k=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad k in header {header:?}")))?;
    let field = Field::parse_token(token)?;

    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(k);
    for line in lines {
        let row = parse_element_list(&field, line, ' ')?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(Error::Parse(format!(
            "found {} generator rows, expected {k}",
            rows.len()
        )));
    }
    let code = LinearCode::from_generator(Matrix::from_rows(&field, rows)?)?;
    if code.n() != n || code.k() != k {
        return Err(Error::Parse(format!(
            "generator reduces to [{}, {}], not the declared [{n}, {k}]",
            code.n(),
            code.k()
        )));
    }
    Ok(code)
}

/// Parse a separated list of integer element encodings.
pub fn parse_element_list(
    field: &std::sync::Arc<Field>,
    text: &str,
    sep: char,
) -> Result<Vec<Fe>> {
    text.split(sep)
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let enc: u64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element {t:?}")))?;
            field.element(enc)
        })
        .collect()
}
