use std::fmt::Write;

use crate::algebra::{Field, Matrix, Scalar};
use crate::matroid::{MatrixPair, MatroidParity};

/// Entries as the parser reads them back: rationals as `p/q`, residues bare.
fn entry(s: &Scalar) -> String {
    match s.residue() {
        Some(r) => r.to_string(),
        None => s.to_string(),
    }
}

fn header(out: &mut String, family: &str, field: Field, constant: Option<&Scalar>) {
    let _ = writeln!(out, "family {family}");
    let _ = writeln!(out, "field {field}");
    if let Some(c) = constant {
        let _ = writeln!(out, "constant {}", entry(c));
    }
}

fn rows(out: &mut String, directive: &str, m: &Matrix) {
    for (i, label) in m.row_labels().iter().enumerate() {
        let _ = write!(out, "{directive} {label}");
        for s in &m.grid()[i] {
            let _ = write!(out, " {}", entry(s));
        }
        out.push('\n');
    }
}

fn weights(out: &mut String, names: &[String], w: Option<&[i64]>) {
    for (n, w) in names.iter().zip(w.unwrap_or(&[])) {
        if *w != 0 {
            let _ = writeln!(out, "weight {n} {w}");
        }
    }
}

/// A pair as a `raw-pair` instance; zero weights are omitted.
pub fn pair_text(pair: &MatrixPair, w: Option<&[i64]>) -> String {
    let mut out = String::new();
    header(&mut out, "raw-pair", pair.field(), pair.constant());
    let _ = writeln!(out, "columns {}", pair.col_labels().join(" "));
    rows(&mut out, "row1", pair.a1());
    rows(&mut out, "row2", pair.a2());
    weights(&mut out, pair.col_labels(), w);
    out
}

/// A parity as a `raw-parity` instance; zero weights are omitted.
pub fn parity_text(parity: &MatroidParity, w: Option<&[i64]>) -> String {
    let mut out = String::new();
    header(&mut out, "raw-parity", parity.field(), parity.constant());
    let cols = parity.matrix().col_labels();
    let _ = writeln!(out, "columns {}", cols.join(" "));
    for (i, l) in parity.lines().iter().enumerate() {
        let _ = writeln!(out, "line {l} {} {}", cols[2 * i], cols[2 * i + 1]);
    }
    rows(&mut out, "row", parity.matrix());
    weights(&mut out, parity.lines(), w);
    out
}
