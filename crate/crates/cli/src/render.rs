//! JSON and text rendering of exact objects.

use mixbraid::laurent::LaurentPoly;
use mixbraid::{CycNum, Matrix};
use serde::Serialize;

/// `{dim, conductor, entries}` with every entry promoted to the shared
/// conductor `M` and written as its canonical coefficient vector on
/// `ζ_M^0, …, ζ_M^{M-1}`. `text` holds the same entries in the `c0 + c1*z`
/// form, and `approx` an optional decimal rendering.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixJson {
    pub dim: [usize; 2],
    pub conductor: u32,
    pub entries: Vec<Vec<Vec<String>>>,
    pub text: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<Approx>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Approx {
    pub digits: u32,
    pub entries: Vec<Vec<String>>,
}

/// `a+bi` with `digits` significant decimals, from a certified enclosure.
pub fn approx(x: &CycNum, digits: u32) -> String {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
    let z = x.eval_complex(bits);
    let (re, im) = (z.re.midpoint_f64(), z.im.midpoint_f64());
    let d = digits as usize;
    if im.abs() < f64::EPSILON * 4.0 * re.abs().max(1.0) && z.im.contains_f64(0.0) {
        format!("{re:.d$}")
    } else {
        format!("{re:.d$}{}{:.d$}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

/// Entry text without the `[M] ` conductor header.
fn body(x: &CycNum) -> String {
    let s = x.to_string();
    s.split_once("] ").map_or(s.clone(), |(_, b)| b.to_string())
}

pub fn matrix_json(m: &Matrix<CycNum>, digits: Option<u32>) -> MatrixJson {
    let conductor = m.conductor();
    let rows: Vec<Vec<CycNum>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.promote(conductor).expect("entry conductor divides the matrix conductor")).collect())
        .collect();
    MatrixJson {
        dim: [m.rows(), m.cols()],
        conductor,
        entries: rows
            .iter()
            .map(|r| r.iter().map(|x| x.coefficients().iter().map(ToString::to_string).collect()).collect())
            .collect(),
        text: rows.iter().map(|r| r.iter().map(body).collect()).collect(),
        approx: digits.map(|d| Approx {
            digits: d,
            entries: rows.iter().map(|r| r.iter().map(|x| approx(x, d)).collect()).collect(),
        }),
    }
}

pub fn laurent_json(m: &Matrix<LaurentPoly>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(LaurentPoly::to_string).collect()).collect()
}

/// Aligned rows, one matrix row per line.
pub fn grid(entries: &[Vec<String>]) -> String {
    let cols = entries.first().map_or(0, Vec::len);
    let widths: Vec<usize> =
        (0..cols).map(|c| entries.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in entries {
        let cells: Vec<String> =
            r.iter().zip(&widths).map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        out.push_str("  ");
        out.push_str(cells.join("  |  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn matrix_text(m: &MatrixJson) -> String {
    let mut out = format!("  over Q(ζ_{})\n", m.conductor);
    out.push_str(&grid(&m.text));
    if let Some(a) = &m.approx {
        out.push_str(&format!("  ≈ ({} digits)\n", a.digits));
        out.push_str(&grid(&a.entries));
    }
    out
}
