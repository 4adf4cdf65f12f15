//! `algebra p=<p> torsion=<k1,k2,...> free=<r>` followed by
//! `row: <elem> ; <elem> ; ...` lines.
//!
//! For a prime `p` the torsion entries are exponents: `k` stands for the
//! cyclic factor of order `p^k`. `p=0` selects the integral group ring, and
//! the torsion entries are then the orders of the cyclic factors.

use std::sync::Arc;

use groupeq_core::algebra::{AbelianGroupSpec, AlgebraElement, IntegralElement, IntegralSpec, RowFamily};

use super::{content_lines, err, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRows {
    Modular(RowFamily),
    Integral(Arc<IntegralSpec>, Vec<Vec<IntegralElement>>),
}

impl AlgebraRows {
    pub fn len(&self) -> usize {
        match self {
            AlgebraRows::Modular(f) => f.rows().len(),
            AlgebraRows::Integral(_, r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn width(&self) -> usize {
        match self {
            AlgebraRows::Modular(f) => f.width(),
            AlgebraRows::Integral(_, r) => r.first().map_or(0, Vec::len),
        }
    }
}

fn element_error(line: usize, text: &str, e: groupeq_core::Error) -> FormatError {
    match e {
        groupeq_core::Error::Parse { column, message, .. } => {
            err(line, format!("in `{}`, column {column}: {message}", text.trim()))
        }
        other => err(line, other.to_string()),
    }
}

fn parse_list(text: &str, line: usize) -> Result<Vec<u64>, FormatError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| err(line, format!("bad number `{t}`"))))
        .collect()
}

pub fn parse_algebra(text: &str) -> Result<AlgebraRows, FormatError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| err(0, "empty algebra file"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("algebra") {
        return Err(err(ln, "expected `algebra p=<p> torsion=<...> free=<r>`"));
    }
    let (mut p, mut torsion, mut free) = (None, Vec::new(), 0usize);
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| err(ln, format!("expected key=value, found `{w}`")))?;
        match k {
            "p" => p = Some(v.parse::<u64>().map_err(|_| err(ln, format!("bad prime `{v}`")))?),
            "torsion" => torsion = parse_list(v, ln)?,
            "free" => free = v.parse().map_err(|_| err(ln, format!("bad rank `{v}`")))?,
            other => return Err(err(ln, format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| err(ln, "missing p="))?;
    let mut cells: Vec<(usize, Vec<&str>)> = Vec::new();
    for (ln, l) in lines {
        let rest = l.strip_prefix("row:").ok_or_else(|| err(ln, "expected `row:`"))?;
        cells.push((ln, rest.split(';').map(str::trim).collect()));
    }
    if let Some((ln, _)) = cells.iter().find(|(_, c)| c.len() != cells[0].1.len()) {
        return Err(err(*ln, "rows have different lengths"));
    }
    let width = cells.first().map_or(0, |(_, c)| c.len());
    if p == 0 {
        let spec = Arc::new(IntegralSpec::new(torsion, free).map_err(|e| err(ln, e.to_string()))?);
        let rows = cells
            .iter()
            .map(|(ln, c)| {
                c.iter()
                    .map(|t| IntegralElement::parse(&spec, t).map_err(|e| element_error(*ln, t, e)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(AlgebraRows::Integral(spec, rows));
    }
    let exps = torsion
        .iter()
        .map(|&k| u32::try_from(k).map_err(|_| err(ln, "torsion exponent too large")))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = Arc::new(AbelianGroupSpec::new(p, exps, free).map_err(|e| err(ln, e.to_string()))?);
    let rows = cells
        .iter()
        .map(|(ln, c)| {
            c.iter()
                .map(|t| AlgebraElement::parse(&spec, t).map_err(|e| element_error(*ln, t, e)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fam = RowFamily::new(&spec, width, rows).map_err(|e| err(0, e.to_string()))?;
    Ok(AlgebraRows::Modular(fam))
}

fn join(v: impl IntoIterator<Item = String>) -> String {
    v.into_iter().collect::<Vec<_>>().join(",")
}

pub fn write_algebra(rows: &AlgebraRows) -> String {
    let mut out = match rows {
        AlgebraRows::Modular(f) => {
            let s = f.spec();
            format!(
                "algebra p={} torsion={} free={}\n",
                s.p,
                join(s.torsion_exponents.iter().map(u32::to_string)),
                s.free_rank
            )
        }
        AlgebraRows::Integral(s, _) => format!(
            "algebra p=0 torsion={} free={}\n",
            join(s.torsion_orders.iter().map(u64::to_string)),
            s.free_rank
        ),
    };
    let lines: Vec<Vec<String>> = match rows {
        AlgebraRows::Modular(f) => f
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
        AlgebraRows::Integral(_, r) => r.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
    };
    for l in lines {
        out.push_str("row: ");
        out.push_str(&l.join(" ; "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_round_trip() {
        let text =
            "# two rows over Z_2[C_4 x Z]\nalgebra p=2 torsion=2 free=1\nrow: 1 + x1^2*t1^-1 ; x1\nrow: 0 ; 1 + x1\n";
        let rows = parse_algebra(text).unwrap();
        assert_eq!((rows.len(), rows.width()), (2, 2));
        assert_eq!(parse_algebra(&write_algebra(&rows)).unwrap(), rows);
    }

    #[test]
    fn integral_round_trip() {
        let rows = parse_algebra("algebra p=0 torsion=6 free=0\nrow: 1 - 3*x1^2 ; 2\n").unwrap();
        assert!(matches!(rows, AlgebraRows::Integral(..)));
        assert_eq!(parse_algebra(&write_algebra(&rows)).unwrap(), rows);
    }

    #[test]
    fn errors() {
        assert!(parse_algebra("algebra p=4 torsion=1 free=0\n").is_err());
        assert!(parse_algebra("algebra torsion=1\n").is_err());
        let e = parse_algebra("algebra p=2 torsion=1 free=0\nrow: 1 ; x1\nrow: 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_algebra("algebra p=2 torsion=1 free=0\nrow: x7\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
