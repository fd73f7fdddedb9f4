//! JSON and CSV serialisation of matrices and relation sets.

use serde::Serialize;
use serde_json::{json, Value};

use crate::pairing::PairingMatrix;
use crate::pushforward::Relation;
use crate::Rational;

/// `p/q` (or `p` for integers).
pub fn rational_string(x: &Rational) -> String {
    x.to_string()
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    genus: u32,
    degree: usize,
    construction: String,
    row_labels: &'a [String],
    col_labels: &'a [String],
    entries: Vec<Vec<String>>,
}

pub fn matrix_json(m: &PairingMatrix) -> Value {
    serde_json::to_value(MatrixJson {
        genus: m.genus,
        degree: m.degree,
        construction: m.construction.to_string(),
        row_labels: &m.row_labels,
        col_labels: &m.col_labels,
        entries: m
            .entries
            .iter()
            .map(|r| r.iter().map(rational_string).collect())
            .collect(),
    })
    .expect("matrix serialises")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header row of column labels (first cell empty), then one row per label.
pub fn matrix_csv(m: &PairingMatrix) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once(String::new())
        .chain(m.col_labels.iter().map(|l| csv_field(l)))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (label, row) in m.row_labels.iter().zip(&m.entries) {
        let cells: Vec<String> = std::iter::once(csv_field(label))
            .chain(row.iter().map(rational_string))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// `{genus, degree, basis, rows, recipes}` for relations of one degree.
pub fn relations_json(
    genus: u32,
    degree: usize,
    basis: &[String],
    relations: &[Relation],
) -> Value {
    json!({
        "genus": genus,
        "degree": degree,
        "basis": basis,
        "rows": relations
            .iter()
            .map(|r| r.coefficients.iter().map(rational_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "recipes": relations.iter().map(|r| &r.recipe).collect::<Vec<_>>(),
    })
}

/// One relation per line, basis labels in the header.
pub fn relations_csv(basis: &[String], relations: &[Relation]) -> String {
    let mut out = String::new();
    let header: Vec<String> = basis
        .iter()
        .map(|l| csv_field(l))
        .chain(std::iter::once("recipe".to_string()))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for r in relations {
        let cells: Vec<String> = r
            .coefficients
            .iter()
            .map(rational_string)
            .chain(std::iter::once(csv_field(&r.recipe.to_string())))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::LiuXuTable;
    use crate::pairing::build_p_matrix;

    #[test]
    fn matrix_round_trip_shapes() {
        let t = LiuXuTable::new();
        let p = build_p_matrix(&t, 4, 2).unwrap();
        let v = matrix_json(&p);
        assert_eq!(v["entries"][1][0], "32/3");
        assert_eq!(v["construction"], "P");
        let csv = matrix_csv(&p);
        assert_eq!(csv, ",1\nk2,1\nk1^2,32/3\n");
    }
}
