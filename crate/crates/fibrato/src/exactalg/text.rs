//! Text format for matrices: a header line `rows cols field` followed by the
//! entries in row-major order, one polynomial string per line.  `field` is `Q`
//! or `GF(p)`.

use super::matrix::Matrix;
use super::multipoly::{MPoly, MultiPolyRing};
use super::parse::parse_poly;
use super::primefield::PrimeField;
use super::rational::{Rationals, Q};
use super::ring::Ring;
use super::AlgError;

pub fn write_matrix_q(ring: &MultiPolyRing<Rationals>, m: &Matrix<MPoly<Q>>) -> String {
    let mut s = format!("{} {} Q\n", m.rows(), m.cols());
    for e in m.entries() {
        s.push_str(&ring.fmt_elem(e));
        s.push('\n');
    }
    s
}

pub fn write_matrix_fp(field: &PrimeField, m: &Matrix<u64>) -> String {
    let mut s = format!("{} {} GF({})\n", m.rows(), m.cols(), field.modulus());
    for e in m.entries() {
        s.push_str(&e.to_string());
        s.push('\n');
    }
    s
}

fn header(text: &str) -> Result<(usize, usize, String, Vec<&str>), AlgError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or_else(|| AlgError::Parse("empty matrix text".into()))?;
    let parts: Vec<&str> = head.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(AlgError::Parse(format!("bad header {head:?}")));
    }
    let rows = parts[0].parse().map_err(|_| AlgError::Parse(format!("bad row count {:?}", parts[0])))?;
    let cols = parts[1].parse().map_err(|_| AlgError::Parse(format!("bad column count {:?}", parts[1])))?;
    let body: Vec<&str> = lines.collect();
    if body.len() != rows * cols {
        return Err(AlgError::Parse(format!("expected {} entries, found {}", rows * cols, body.len())));
    }
    Ok((rows, cols, parts[2].to_string(), body))
}

pub fn read_matrix_q(ring: &MultiPolyRing<Rationals>, text: &str) -> Result<Matrix<MPoly<Q>>, AlgError> {
    let (rows, cols, field, body) = header(text)?;
    if field != "Q" {
        return Err(AlgError::Parse(format!("expected field Q, found {field}")));
    }
    let data = body.iter().map(|l| parse_poly(ring, l.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_vec(rows, cols, data))
}

pub fn read_matrix_fp(text: &str) -> Result<(PrimeField, Matrix<u64>), AlgError> {
    let (rows, cols, field, body) = header(text)?;
    let p: u64 = field
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| AlgError::Parse(format!("bad field {field:?}")))?;
    let f = PrimeField::new(p)?;
    let data = body
        .iter()
        .map(|l| {
            l.trim()
                .parse::<i64>()
                .map(|x| f.from_int(x))
                .map_err(|_| AlgError::Parse(format!("bad entry {l:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((f, Matrix::from_vec(rows, cols, data)))
}
