use dsplogic::rational::to_decimal_string;
use dsplogic::{EvidenceCell, MassFunction, ProbAssignment, Rational, CELLS_PER_ELEMENT};
use serde_json::{json, Value};

use crate::scenario::key_of;

/// Command output: the JSON result plus its aligned-text rendering.
pub struct Report {
    pub result: Value,
    pub text: String,
    /// False when the command ran but a check it reports did not hold.
    pub ok: bool,
}

pub fn num(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "decimal": to_decimal_string(r, 6) })
}

pub fn show(r: &Rational) -> String {
    let exact = r.to_string();
    let decimal = to_decimal_string(r, 6);
    if r.is_integer() {
        exact
    } else {
        format!("{exact} ({decimal})")
    }
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

pub fn masses(m: &MassFunction) -> Value {
    Value::Array(
        m.focal_sets()
            .map(|(s, v)| json!({ "set": key_of(&s), "mass": num(v) }))
            .collect(),
    )
}

/// Non-zero atoms of a joint assignment.
pub fn assignment(p: &ProbAssignment) -> Value {
    let frame = p.frame();
    let mut atoms = Vec::new();
    for (i, v) in p.atoms().iter().enumerate() {
        if v == &Rational::from_integer(0.into()) {
            continue;
        }
        let cell = EvidenceCell::ALL[i % CELLS_PER_ELEMENT];
        atoms.push(json!({
            "element": frame.label(i / CELLS_PER_ELEMENT),
            "cell": cell.name(),
            "p": num(v),
        }));
    }
    Value::Array(atoms)
}

pub fn assignment_rows(p: &ProbAssignment) -> Vec<Vec<String>> {
    let frame = p.frame();
    p.atoms()
        .iter()
        .enumerate()
        .filter(|(_, v)| *v != &Rational::from_integer(0.into()))
        .map(|(i, v)| {
            vec![
                frame.label(i / CELLS_PER_ELEMENT).to_string(),
                EvidenceCell::ALL[i % CELLS_PER_ELEMENT].name().to_string(),
                show(v),
            ]
        })
        .collect()
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}
