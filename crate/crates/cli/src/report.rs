//! Serializable result rows and the fixed text/CSV renderings.
//!
//! One [`ReportRow`] describes one evaluated ordered triple: the solution
//! used, the parameter `z`, the symbol, the Milnor invariant, and the two
//! dilogarithm values, or — when the pipeline refuses or fails — the `status`
//! naming the error with every value column null. JSON output round-trips
//! through [`ReportRow`] field-exactly; CSV uses the same field order with
//! `x;y;w` for the solution column and empty cells for absent values.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use triple_symbol_core::pipeline::{PipelineError, RowData};

/// Render an exact rational as `numerator/denominator` (denominator kept
/// positive by construction, `/1` included for integers).
pub fn format_ratio(r: &Ratio<i128>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// One evaluated (or refused) ordered triple in machine-readable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub ell: u8,
    pub p1: i64,
    pub p2: i64,
    pub p3: i64,
    /// The norm-equation solution `[x, y, w]` the evaluation used.
    pub solution: Option<[i64; 3]>,
    /// `z = p1·(−y/x)^ℓ` as a reduced fraction `num/den`.
    pub z: Option<String>,
    /// Exponent `c` with symbol = ζ_ℓ^c.
    pub symbol_exponent: Option<u8>,
    /// `"1"`, `"z3"`, `"z3^-1"` (ℓ = 3) or `"+1"`, `"-1"` (ℓ = 2).
    pub symbol_rendered: Option<String>,
    /// Mod-ℓ Milnor invariant μ(123) (equals the symbol exponent).
    pub mu: Option<u8>,
    /// ℓi₂(z) mod ℓ, balanced representative (ℓ = 3: −1, 0, 1).
    pub li2_z: Option<i8>,
    /// ℓi₂(1−z) mod ℓ, balanced representative.
    pub li2_one_minus_z: Option<i8>,
    /// `"ok"` or the name of the error that stopped the row.
    pub status: String,
}

impl ReportRow {
    /// A fully evaluated row.
    pub fn from_row(row: &RowData) -> Self {
        ReportRow {
            ell: row.ell,
            p1: row.p1,
            p2: row.p2,
            p3: row.p3,
            solution: Some([row.solution.x, row.solution.y, row.solution.w]),
            z: Some(format_ratio(&row.z)),
            symbol_exponent: Some(row.symbol.c),
            symbol_rendered: Some(row.symbol.rendered().to_string()),
            mu: Some(row.mu),
            li2_z: Some(row.li2_z_balanced()),
            li2_one_minus_z: Some(row.li2_one_minus_z_balanced()),
            status: "ok".to_string(),
        }
    }

    /// A refused or failed row: the inputs echoed back, all value columns
    /// null, and the error's name in `status`.
    pub fn from_error(ell: u8, p1: i64, p2: i64, p3: i64, err: &PipelineError) -> Self {
        ReportRow {
            ell,
            p1,
            p2,
            p3,
            solution: None,
            z: None,
            symbol_exponent: None,
            symbol_rendered: None,
            mu: None,
            li2_z: None,
            li2_one_minus_z: None,
            status: err.status_name().to_string(),
        }
    }

    /// CSV header matching [`ReportRow`] field order.
    pub fn csv_header() -> &'static str {
        "ell,p1,p2,p3,solution,z,symbol_exponent,symbol_rendered,mu,li2_z,li2_one_minus_z,status"
    }

    /// One CSV line in header order; the solution is `x;y;w`, absent values
    /// are empty cells.
    pub fn csv_line(&self) -> String {
        fn cell<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        let solution =
            self.solution.map(|[x, y, w]| format!("{x};{y};{w}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.ell,
            self.p1,
            self.p2,
            self.p3,
            solution,
            cell(&self.z),
            cell(&self.symbol_exponent),
            cell(&self.symbol_rendered),
            cell(&self.mu),
            cell(&self.li2_z),
            cell(&self.li2_one_minus_z),
            self.status
        )
    }

    /// Multi-line human-readable rendering.
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "triple   ({}, {} | {})  ell = {}\n",
            self.p1, self.p2, self.p3, self.ell
        ));
        match (&self.solution, &self.z) {
            (Some([x, y, w]), Some(z)) => {
                out.push_str(&format!("solution (x, y, w) = ({x}, {y}, {w})\n"));
                out.push_str(&format!("z        {z}\n"));
            }
            _ => {}
        }
        if let (Some(r), Some(c)) = (&self.symbol_rendered, self.symbol_exponent) {
            out.push_str(&format!("symbol   {r}  (exponent {c})\n"));
        }
        if let Some(mu) = self.mu {
            out.push_str(&format!("mu       {mu}\n"));
        }
        if let (Some(a), Some(b)) = (self.li2_z, self.li2_one_minus_z) {
            out.push_str(&format!("li2(z)   {a}\nli2(1-z) {b}\n"));
        }
        out.push_str(&format!("status   {}\n", self.status));
        out
    }
}

/// Header of the 27-row two-direction table (fixed reference pair, every
/// admissible third prime).
pub fn table1_csv_header() -> &'static str {
    "p3,symbol_fwd,symbol_bwd,li2_z,li2_one_minus_z"
}

/// One line of the two-direction table: both symbol renderings and the
/// forward direction's dilogarithm columns.
pub fn table1_csv_line(p3: i64, fwd: &RowData, bwd: &RowData) -> String {
    format!(
        "{},{},{},{},{}",
        p3,
        fwd.symbol.rendered(),
        bwd.symbol.rendered(),
        fwd.li2_z_balanced(),
        fwd.li2_one_minus_z_balanced()
    )
}

/// Header of the 18-row permuted-triple table.
pub fn table2_csv_header() -> &'static str {
    "p1,p2,x,y,w,z,p3,symbol,li2_z"
}

/// One line of the permuted-triple table.
pub fn table2_csv_line(row: &RowData) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.p1,
        row.p2,
        row.solution.x,
        row.solution.y,
        row.solution.w,
        format_ratio(&row.z),
        row.p3,
        row.symbol.rendered(),
        row.li2_z_balanced()
    )
}
