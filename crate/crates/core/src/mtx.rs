//! Matrix Market exchange files, dense in memory.
//!
//! Reads `array` and `coordinate` layouts with `real`, `integer` or `complex`
//! fields and `general`, `symmetric`, `hermitian` or `skew-symmetric`
//! storage; symmetric storage is expanded to the full matrix. Writes the
//! `array` layout with 17 significant digits, which round-trips every `f64`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::dense::{DenseMatrix, C64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header(line: &str) -> Result<(Layout, Field, Symmetry)> {
    let words: Vec<String> = line
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_err(
            1,
            format!("expected '%%MatrixMarket matrix <layout> <field> <symmetry>', got '{line}'"),
        ));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(parse_err(1, format!("unknown layout '{other}'"))),
    };
    let field = match words[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        "pattern" => {
            return Err(Error::Unsupported(
                "pattern (binary) matrices carry no values".into(),
            ))
        }
        other => return Err(parse_err(1, format!("unknown field '{other}'"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return Err(parse_err(1, format!("unknown symmetry '{other}'"))),
    };
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        return Err(parse_err(1, "hermitian storage needs a complex field"));
    }
    Ok((layout, field, symmetry))
}

fn parse_number(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("'{tok}' is not a number")))
}

fn parse_index(tok: &str, bound: usize, line: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("'{tok}' is not an index")))?;
    if i == 0 || i > bound {
        return Err(parse_err(
            line,
            format!("index {i} out of bounds 1..={bound}"),
        ));
    }
    Ok(i - 1)
}

fn parse_value(toks: &[&str], field: Field, line: usize) -> Result<C64> {
    let want = if field == Field::Complex { 2 } else { 1 };
    if toks.len() != want {
        return Err(parse_err(
            line,
            format!("expected {want} value token(s), got {}", toks.len()),
        ));
    }
    let re = parse_number(toks[0], line)?;
    let im = if want == 2 {
        parse_number(toks[1], line)?
    } else {
        0.0
    };
    Ok(C64::new(re, im))
}

/// Mirror of a stored `(i, j)` entry across the diagonal.
fn mirrored(v: C64, symmetry: Symmetry) -> Option<C64> {
    match symmetry {
        Symmetry::General => None,
        Symmetry::Symmetric => Some(v),
        Symmetry::Hermitian => Some(v.conj()),
        Symmetry::SkewSymmetric => Some(-v),
    }
}

/// Parses Matrix Market text. Errors carry 1-based line numbers.
pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let (layout, field, symmetry) = parse_header(header)?;
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_err(1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(size_line, format!("'{t}' is not a dimension")))
        })
        .collect::<Result<_>>()?;
    let want = if layout == Layout::Array { 2 } else { 3 };
    if dims.len() != want {
        return Err(parse_err(
            size_line,
            format!("expected {want} integers on the size line"),
        ));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if symmetry != Symmetry::General && rows != cols {
        return Err(parse_err(
            size_line,
            "symmetric storage needs a square matrix",
        ));
    }

    let mut a = DenseMatrix::zeros(rows, cols);
    let mut set = |i: usize, j: usize, v: C64| {
        a.col_mut(j)[i] = v;
        if i != j {
            if let Some(w) = mirrored(v, symmetry) {
                a.col_mut(i)[j] = w;
            }
        }
    };
    let mut last_line = size_line;
    match layout {
        Layout::Array => {
            // Column-major; symmetric kinds store the lower triangle only,
            // skew-symmetric without the diagonal.
            let slots: Vec<(usize, usize)> = (0..cols)
                .flat_map(|j| (0..rows).map(move |i| (i, j)))
                .filter(|&(i, j)| match symmetry {
                    Symmetry::General => true,
                    Symmetry::SkewSymmetric => i > j,
                    _ => i >= j,
                })
                .collect();
            let mut it = slots.iter();
            for (ln, l) in body {
                last_line = ln;
                let &(i, j) = it
                    .next()
                    .ok_or_else(|| parse_err(ln, format!("more than {} entries", slots.len())))?;
                let toks: Vec<&str> = l.split_whitespace().collect();
                set(i, j, parse_value(&toks, field, ln)?);
            }
            if it.next().is_some() {
                return Err(parse_err(
                    last_line,
                    format!("expected {} entries", slots.len()),
                ));
            }
        }
        Layout::Coordinate => {
            let nnz = dims[2];
            let mut count = 0;
            for (ln, l) in body {
                last_line = ln;
                count += 1;
                if count > nnz {
                    return Err(parse_err(
                        ln,
                        format!("more than the declared {nnz} entries"),
                    ));
                }
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(parse_err(ln, "expected row and column indices"));
                }
                let i = parse_index(toks[0], rows, ln)?;
                let j = parse_index(toks[1], cols, ln)?;
                if symmetry != Symmetry::General && i < j {
                    return Err(parse_err(
                        ln,
                        "symmetric storage keeps the lower triangle only",
                    ));
                }
                set(i, j, parse_value(&toks[2..], field, ln)?);
            }
            if count != nnz {
                return Err(parse_err(
                    last_line,
                    format!("declared {nnz} entries, found {count}"),
                ));
            }
        }
    }
    if !a.is_finite() {
        return Err(parse_err(last_line, "non-finite value"));
    }
    Ok(a)
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    parse_matrix_market(&fs::read_to_string(path)?)
}

/// `%.16e`, C style: at least two exponent digits with an explicit sign.
pub fn format_sci(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mant, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            format!("{mant}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

/// Serializes as a general array; the field is `real` when every imaginary
/// part is zero.
pub fn format_matrix_market(a: &DenseMatrix) -> String {
    let real = a.as_col_major().iter().all(|z| z.im == 0.0);
    let mut out = format!(
        "%%MatrixMarket matrix array {} general\n{} {}\n",
        if real { "real" } else { "complex" },
        a.rows(),
        a.cols()
    );
    for z in a.as_col_major() {
        if real {
            out.push_str(&format_sci(z.re));
        } else {
            out.push_str(&format_sci(z.re));
            out.push(' ');
            out.push_str(&format_sci(z.im));
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_market(a: &DenseMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(format_matrix_market(a).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_array() {
        let a =
            parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\n2.5\n").unwrap();
        assert_eq!(a[(0, 0)], C64::new(2.5, 0.0));
    }

    #[test]
    fn hermitian_coordinate_expands() {
        let text = "%%MatrixMarket matrix coordinate complex hermitian\n% lower triangle\n2 2 3\n1 1 1.0 0.0\n2 1 2.0 3.0\n2 2 4.0 0.0\n";
        let a = parse_matrix_market(text).unwrap();
        assert_eq!(a[(1, 0)], C64::new(2.0, 3.0));
        assert_eq!(a[(0, 1)], C64::new(2.0, -3.0));
        assert_eq!(a, a.adjoint());
    }

    #[test]
    fn skew_symmetric_array() {
        let a = parse_matrix_market(
            "%%MatrixMarket matrix array integer skew-symmetric\n3 3\n1\n2\n3\n",
        )
        .unwrap();
        assert_eq!(a[(1, 0)].re, 1.0);
        assert_eq!(a[(0, 1)].re, -1.0);
        assert_eq!(a[(2, 1)].re, 3.0);
        assert_eq!(a[(1, 1)].re, 0.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_index = "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n";
        assert!(matches!(
            parse_matrix_market(bad_index),
            Err(Error::Parse { line: 3, .. })
        ));
        let short = "%%MatrixMarket matrix array real general\n2 1\n1.0\n";
        assert!(matches!(
            parse_matrix_market(short),
            Err(Error::Parse { line: 3, .. })
        ));
        let count = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n";
        assert!(matches!(
            parse_matrix_market(count),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix grid real general\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let pattern = "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n";
        assert!(matches!(
            parse_matrix_market(pattern),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn c_style_exponents() {
        assert_eq!(format_sci(2.5), "2.5000000000000000e+00");
        assert_eq!(format_sci(-1e-300), "-1.0000000000000000e-300");
        assert_eq!(format_sci(0.0), "0.0000000000000000e+00");
    }

    #[test]
    fn round_trip_is_exact() {
        let a = DenseMatrix::from_fn(3, 2, |i, j| {
            C64::new(1.0 / (i + j + 1) as f64, -(i as f64).sqrt() * 1e-7)
        });
        assert_eq!(parse_matrix_market(&format_matrix_market(&a)).unwrap(), a);
        let r = DenseMatrix::from_fn(2, 2, |i, j| {
            C64::new(std::f64::consts::PI * (i as f64 - j as f64), 0.0)
        });
        let text = format_matrix_market(&r);
        assert!(text.starts_with("%%MatrixMarket matrix array real general"));
        assert_eq!(parse_matrix_market(&text).unwrap(), r);
    }
}
