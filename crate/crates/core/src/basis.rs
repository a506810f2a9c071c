//! Griesmer bases: generator matrices whose leading rows span a constant-weight
//! Griesmer subcode and any `k - 1` of whose rows span a
//! `[g_q(k-1,d), k-1, d]_q` Griesmer subcode.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::code::{effective_length_of, griesmer_bound, span_distribution, CodeError, LinearCode};
use crate::derived::{lift_min_weight, residual, supplementary_subcode, LiftResult};
use crate::field::Elem;
use crate::matrix::FqMatrix;

/// A certificate clause, used to report which check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// The matrix does not have `k` rows of length `n`.
    Shape,
    /// Some row is not a codeword.
    Membership,
    /// The rows are dependent.
    Rank,
    /// The span of the first `j` rows is not a constant-weight Griesmer code.
    ConstantWeightPrefix(usize),
    /// Dropping row `i` does not leave a `[g_q(k-1,d), k-1, d]_q` Griesmer code.
    Omission(usize),
    /// Row `j` does not own exactly `ceil(d / q^(k-1))` unit columns.
    UnitColumns(usize),
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Shape => write!(f, "shape"),
            Clause::Membership => write!(f, "membership"),
            Clause::Rank => write!(f, "rank"),
            Clause::ConstantWeightPrefix(j) => write!(f, "prefix-{j}"),
            Clause::Omission(i) => write!(f, "omission-{i}"),
            Clause::UnitColumns(j) => write!(f, "unit-columns-{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("clause {clause} failed: {detail}")]
    Clause { clause: Clause, detail: String },
}

fn fail(clause: Clause, detail: impl Into<String>) -> BasisError {
    BasisError::Clause {
        clause,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixCheck {
    /// Number of leading rows.
    pub rows: usize,
    pub effective_length: usize,
    pub weights: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmissionCheck {
    /// Index of the dropped row.
    pub omitted: usize,
    pub effective_length: usize,
    pub min_distance: usize,
}

/// One step of the construction: the code it worked on and the choices made.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// The minimum-weight word fixed at this step, in this step's coordinates.
    pub first_row: Vec<Elem>,
    /// Index of the point `u` whose hyperplane `u^perp` gave the supplement.
    pub supplement_point: Option<usize>,
    /// Lift of the residual's first basis row.
    pub lift: Option<LiftResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Largest `e` with `q^e | d`.
    pub e: u32,
    pub rows: Vec<Vec<Elem>>,
    pub prefixes: Vec<PrefixCheck>,
    pub omissions: Vec<OmissionCheck>,
    /// Columns proportional to the `j`-th unit vector, per `j`.
    pub unit_columns: Vec<Vec<usize>>,
    /// Columns not proportional to any unit vector.
    pub remaining_columns: usize,
    /// True when the whole code has constant weight and the row-reduced
    /// generator was used as is.
    pub constant_weight_shortcut: bool,
    /// Construction steps, outermost first; empty when only verified.
    pub trace: Vec<TraceStep>,
}

impl BasisCertificate {
    pub fn matrix(&self) -> FqMatrix {
        FqMatrix::from_rows_with_cols(&self.rows, self.n).expect("rows have length n")
    }
}

/// The lexicographically first minimum-weight codeword.
pub fn min_weight_codeword(code: &LinearCode) -> Result<Vec<Elem>, CodeError> {
    Ok(code.min_weight_codeword()?.1)
}

fn build(code: &LinearCode, trace: &mut Vec<TraceStep>) -> Result<Vec<Vec<Elem>>, CodeError> {
    let field = code.field();
    let d = code.min_distance()?;
    let (_, a) = code.min_weight_codeword()?;
    let mut step = TraceStep {
        n: code.n(),
        k: code.k(),
        d,
        first_row: a.clone(),
        supplement_point: None,
        lift: None,
    };
    if code.k() == 1 {
        trace.push(step);
        return Ok(vec![a]);
    }
    let supplement = supplementary_subcode(code, &a)?;
    let res = residual(code, &a)?;
    step.supplement_point = Some(supplement.point_index);
    let slot = trace.len();
    trace.push(step);
    let inner = build(&res.code, trace)?;
    trace[slot].lift = Some(lift_min_weight(code, &a, &inner[0])?);

    // Puncturing on supp(a) maps the supplement bijectively onto the residual.
    let on_residual = supplement.basis.select_columns(&res.columns);
    let mut rows = vec![a];
    for c in &inner {
        let x = on_residual.solve_left(field, c).ok_or(CodeError::SupplementNotFound)?;
        rows.push(supplement.basis.vec_mul(field, &x));
    }
    Ok(rows)
}

/// Builds a Griesmer basis of a Griesmer code and verifies it.
///
/// Each step fixes the first minimum-weight word `a`, finds a supplementary
/// Griesmer subcode `C'`, recurses on `Res(C, a)`, and pulls the residual basis
/// back into `C'`.
pub fn construct_basis(code: &LinearCode) -> Result<BasisCertificate, BasisError> {
    if !code.is_griesmer()? {
        return Err(CodeError::NotGriesmer.into());
    }
    let k = code.k();
    let e = code.q_exponent_of_d()?;
    let (rows, trace, shortcut) = if e as usize >= k - 1 {
        (code.gen().row_basis(code.field()).to_rows(), Vec::new(), true)
    } else {
        let mut trace = Vec::new();
        let rows = build(code, &mut trace)?;
        (rows, trace, false)
    };
    let g = FqMatrix::from_rows_with_cols(&rows, code.n()).expect("rows have length n");
    let mut cert = verify_basis(code, &g)?;
    cert.constant_weight_shortcut = shortcut;
    cert.trace = trace;
    Ok(cert)
}

/// Checks every certificate clause for `g` from scratch and returns the
/// certificate, or the first clause that fails.
pub fn verify_basis(code: &LinearCode, g: &FqMatrix) -> Result<BasisCertificate, BasisError> {
    let (n, k) = (code.n(), code.k());
    let field = code.field();
    if g.rows() != k || g.cols() != n {
        return Err(fail(
            Clause::Shape,
            format!("expected {k} x {n}, got {} x {}", g.rows(), g.cols()),
        ));
    }
    for (i, r) in g.row_iter().enumerate() {
        if !code.contains(r) {
            return Err(fail(Clause::Membership, format!("row {i} is not a codeword")));
        }
    }
    let rank = g.rank(field);
    if rank != k {
        return Err(fail(Clause::Rank, format!("rank {rank}, expected {k}")));
    }
    let d = code.min_distance()?;
    let e = code.q_exponent_of_d()?;
    let q = field.q() as u64;

    let mut prefixes = Vec::new();
    for j in 1..=(e as usize + 1).min(k) {
        let idx: Vec<usize> = (0..j).collect();
        let sub = g.select_rows(&idx);
        let weights = span_distribution(field, &sub).nonzero_weights();
        let eff = effective_length_of(&sub);
        let want = griesmer_bound(q, j as u64, d as u64)? as usize;
        if weights != [d] || eff != want {
            return Err(fail(
                Clause::ConstantWeightPrefix(j),
                format!("weights {weights:?}, effective length {eff}, expected [{d}] and {want}"),
            ));
        }
        prefixes.push(PrefixCheck {
            rows: j,
            effective_length: eff,
            weights,
        });
    }

    let mut omissions = Vec::new();
    if k >= 2 {
        let want = griesmer_bound(q, (k - 1) as u64, d as u64)? as usize;
        for i in 0..k {
            let idx: Vec<usize> = (0..k).filter(|&r| r != i).collect();
            let sub = g.select_rows(&idx);
            let eff = effective_length_of(&sub);
            let dist = span_distribution(field, &sub)
                .min_nonzero()
                .expect("positive dimension");
            if eff != want || dist != d {
                return Err(fail(
                    Clause::Omission(i),
                    format!("effective length {eff}, distance {dist}, expected {want} and {d}"),
                ));
            }
            omissions.push(OmissionCheck {
                omitted: i,
                effective_length: eff,
                min_distance: dist,
            });
        }
    }

    let gamma = (d as u64).div_ceil(q.pow(k as u32 - 1)) as usize;
    let mut unit_columns = vec![Vec::new(); k];
    let mut remaining_columns = 0;
    for c in 0..n {
        let nonzero: Vec<usize> = (0..k).filter(|&r| g.get(r, c) != 0).collect();
        match nonzero[..] {
            [r] => unit_columns[r].push(c),
            _ => remaining_columns += 1,
        }
    }
    for (j, cols) in unit_columns.iter().enumerate() {
        if cols.len() != gamma {
            return Err(fail(
                Clause::UnitColumns(j),
                format!("{} columns, expected {gamma}", cols.len()),
            ));
        }
    }
    Ok(BasisCertificate {
        n,
        k,
        d,
        e,
        rows: g.to_rows(),
        prefixes,
        omissions,
        unit_columns,
        remaining_columns,
        constant_weight_shortcut: false,
        trace: Vec::new(),
    })
}
