//! Codes derived from a code and one of its words: residual, projected and
//! shortened codes, agreement profiles, and the lifting and supplement steps
//! used to build Griesmer bases.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::code::{griesmer_bound, span_distribution, support, weight, CodeError, LinearCode};
use crate::field::{Elem, Field};
use crate::geometry::{canonicalize, dot, GeometryError, ProjectiveSpace};
use crate::matrix::FqMatrix;

/// A derived code together with the coordinates of the parent it keeps.
#[derive(Debug, Clone)]
pub struct DerivedCode {
    pub code: LinearCode,
    /// `columns[i]` is the parent coordinate of coordinate `i`.
    pub columns: Vec<usize>,
}

impl DerivedCode {
    /// Restriction of a parent word to the kept coordinates.
    pub fn restrict_word(&self, word: &[Elem]) -> Vec<Elem> {
        self.columns.iter().map(|&j| word[j]).collect()
    }
}

fn checked_member(code: &LinearCode, word: &[Elem]) -> Result<(), CodeError> {
    if word.len() != code.n() {
        return Err(CodeError::LengthMismatch {
            expected: code.n(),
            got: word.len(),
        });
    }
    if word.iter().all(|&v| v == 0) {
        return Err(CodeError::ZeroWord);
    }
    if !code.contains(word) {
        return Err(CodeError::NotACodeword);
    }
    Ok(())
}

/// The row space of `code` on `cols`, with zero columns stripped.
fn restricted_code(code: &LinearCode, cols: &[usize]) -> Result<DerivedCode, CodeError> {
    if cols.is_empty() {
        return Err(CodeError::DimensionZero);
    }
    let field = code.field();
    let basis = code.gen().select_columns(cols).row_basis(field);
    if basis.rows() == 0 {
        return Err(CodeError::DimensionZero);
    }
    let keep: Vec<usize> = (0..basis.cols()).filter(|&j| !basis.is_zero_column(j)).collect();
    let code = LinearCode::new(field.clone(), basis.select_columns(&keep))?;
    Ok(DerivedCode {
        code,
        columns: keep.into_iter().map(|j| cols[j]).collect(),
    })
}

/// `Res(C, a)`: `C` punctured on the support of `a`.
pub fn residual(code: &LinearCode, a: &[Elem]) -> Result<DerivedCode, CodeError> {
    checked_member(code, a)?;
    let cols: Vec<usize> = (0..code.n()).filter(|&j| a[j] == 0).collect();
    restricted_code(code, &cols)
}

/// `Proj(C, a)`: every codeword restricted to the support of `a`.
pub fn projected(code: &LinearCode, a: &[Elem]) -> Result<DerivedCode, CodeError> {
    checked_member(code, a)?;
    restricted_code(code, &support(a))
}

/// The shortened subcode with respect to `point`, as a derived code together
/// with its message-space basis.
#[derive(Debug, Clone)]
pub struct Shortened {
    pub derived: DerivedCode,
    /// Rows spanning `point^perp` in the message space.
    pub messages: FqMatrix,
}

/// Columns of `code` spanning the same point as `point`.
pub fn columns_on_point(code: &LinearCode, point: &[Elem]) -> Result<Vec<usize>, CodeError> {
    let field = code.field();
    if point.len() != code.k() {
        return Err(CodeError::LengthMismatch {
            expected: code.k(),
            got: point.len(),
        });
    }
    let target = canonicalize(field, point).ok_or(CodeError::ZeroWord)?;
    Ok((0..code.n())
        .filter(|&j| canonicalize(field, &code.gen().column(j)).as_deref() == Some(&target[..]))
        .collect())
}

/// Codewords vanishing on every coordinate whose column spans `point`, with
/// those coordinates deleted.
pub fn shortened(code: &LinearCode, point: &[Elem]) -> Result<Shortened, CodeError> {
    let field = code.field();
    let deleted = columns_on_point(code, point)?;
    if deleted.is_empty() {
        return Err(CodeError::NotAColumnPoint);
    }
    if code.k() == 1 {
        return Err(CodeError::DimensionZero);
    }
    // A column c = lambda * point vanishes on m exactly when m . point = 0.
    let messages = FqMatrix::from_rows(&[point]).expect("one row").null_space(field);
    let words = messages.mul(field, code.gen());
    let keep: Vec<usize> = (0..code.n()).filter(|j| !deleted.contains(j)).collect();
    if keep.is_empty() {
        return Err(CodeError::LengthZero);
    }
    let gen = words.select_columns(&keep);
    let live: Vec<usize> = (0..gen.cols()).filter(|&j| !gen.is_zero_column(j)).collect();
    let code = LinearCode::new(field.clone(), gen.select_columns(&live))?;
    Ok(Shortened {
        derived: DerivedCode {
            code,
            columns: live.into_iter().map(|j| keep[j]).collect(),
        },
        messages,
    })
}

/// `A_alpha = |{i : a_i = alpha b_i != 0}|` for every nonzero `alpha`, plus the
/// weight of `b` off the support of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementProfile {
    pub counts: BTreeMap<Elem, usize>,
    pub residual_weight: usize,
}

impl AgreementProfile {
    pub fn get(&self, alpha: Elem) -> usize {
        self.counts.get(&alpha).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

pub fn agreement_profile(field: &Field, a: &[Elem], b: &[Elem]) -> Result<AgreementProfile, CodeError> {
    if a.len() != b.len() {
        return Err(CodeError::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.iter().all(|&v| v == 0) {
        return Err(CodeError::ZeroWord);
    }
    let mut counts: BTreeMap<Elem, usize> = (1..field.q()).map(|al| (al, 0)).collect();
    let mut residual_weight = 0;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai == 0 {
            if bi != 0 {
                residual_weight += 1;
            }
        } else if bi != 0 {
            let alpha = field.div(ai, bi).expect("bi nonzero");
            *counts.get_mut(&alpha).expect("alpha nonzero") += 1;
        }
    }
    Ok(AgreementProfile {
        counts,
        residual_weight,
    })
}

/// The minimum-weight preimage of a residual word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub word: Vec<Elem>,
    /// The chosen preimage is `b0 + lambda * a`.
    pub lambda: Elem,
    /// Weight of `b0 + lambda * a` for each `lambda` in encoding order.
    pub preimage_weights: Vec<usize>,
    /// How many preimages have weight `d`.
    pub min_weight_preimages: usize,
}

fn require_griesmer_min_word(code: &LinearCode, a: &[Elem]) -> Result<usize, CodeError> {
    checked_member(code, a)?;
    if !code.is_griesmer()? {
        return Err(CodeError::NotGriesmer);
    }
    let d = code.min_distance()?;
    if weight(a) != d {
        return Err(CodeError::NotMinimumWeight {
            expected: d,
            got: weight(a),
        });
    }
    Ok(d)
}

/// Lifts a minimum-weight word `c` of `Res(C, a)` to a weight-`d` word of `C`.
///
/// The preimages of `c` are `b0 + lambda * a`; the one with the smallest
/// `lambda` (in encoding order) that has weight `d` is returned.
pub fn lift_min_weight(code: &LinearCode, a: &[Elem], c: &[Elem]) -> Result<LiftResult, CodeError> {
    let d = require_griesmer_min_word(code, a)?;
    let field = code.field();
    let res = residual(code, a)?;
    if c.len() != res.code.n() {
        return Err(CodeError::LengthMismatch {
            expected: res.code.n(),
            got: c.len(),
        });
    }
    if !res.code.contains(c) {
        return Err(CodeError::NotACodeword);
    }
    let dq = d.div_ceil(field.q() as usize);
    if weight(c) != dq {
        return Err(CodeError::NotMinimumWeight {
            expected: dq,
            got: weight(c),
        });
    }
    let mut target = vec![0; code.n()];
    for (i, &j) in res.columns.iter().enumerate() {
        target[j] = c[i];
    }
    let off: Vec<usize> = (0..code.n()).filter(|&j| a[j] == 0).collect();
    let sub = code.gen().select_columns(&off);
    let sub_target: Vec<Elem> = off.iter().map(|&j| target[j]).collect();
    let msg = sub.solve_left(field, &sub_target).ok_or(CodeError::NotACodeword)?;
    let b0 = code.encode(&msg);
    let preimages: Vec<Vec<Elem>> = field
        .elements()
        .map(|lambda| {
            b0.iter()
                .zip(a)
                .map(|(&x, &y)| field.add(x, field.mul(lambda, y)))
                .collect()
        })
        .collect();
    let preimage_weights: Vec<usize> = preimages.iter().map(|w| weight(w)).collect();
    let lambda = preimage_weights
        .iter()
        .position(|&w| w == d)
        .ok_or(CodeError::NoMinimumWeightPreimage)?;
    Ok(LiftResult {
        word: preimages[lambda].clone(),
        lambda: lambda as Elem,
        min_weight_preimages: preimage_weights.iter().filter(|&&w| w == d).count(),
        preimage_weights,
    })
}

/// A `[g_q(k-1,d), k-1, d]_q` Griesmer subcode complementing `<a>`.
#[derive(Debug, Clone)]
pub struct Supplement {
    /// `k - 1` codewords (in the parent's coordinates) spanning the subcode.
    pub basis: FqMatrix,
    /// The subcode is the set of codewords `mG` with `m . point = 0`.
    pub point: Vec<Elem>,
    /// Index of `point` in PG(k-1, q).
    pub point_index: usize,
    pub effective_length: usize,
}

/// Searches the hyperplanes `u^perp` of the message space, in point order, for
/// the first one that avoids the message of `a` and whose codewords form a
/// `[g_q(k-1,d), k-1, d]_q` Griesmer code.
pub fn supplementary_subcode(code: &LinearCode, a: &[Elem]) -> Result<Supplement, CodeError> {
    let d = require_griesmer_min_word(code, a)?;
    let k = code.k();
    if k < 2 {
        return Err(CodeError::DimensionZero);
    }
    let field = code.field();
    let msg_a = code.message_of(a)?.expect("a is a codeword");
    let target_len = griesmer_bound(field.q() as u64, (k - 1) as u64, d as u64)? as usize;
    let space = ProjectiveSpace::new(field, k).map_err(|e| match e {
        GeometryError::Code(c) => c,
        other => CodeError::InvalidParameters(other.to_string()),
    })?;
    for (idx, u) in space.points().iter().enumerate() {
        if dot(field, &msg_a, u) == 0 {
            continue;
        }
        let messages = FqMatrix::from_rows(&[u]).expect("one row").null_space(field);
        let words = messages.mul(field, code.gen());
        let eff = crate::code::effective_length_of(&words);
        if eff != target_len {
            continue;
        }
        if span_distribution(field, &words).min_nonzero() != Some(d) {
            continue;
        }
        return Ok(Supplement {
            basis: words,
            point: u.clone(),
            point_index: idx,
            effective_length: eff,
        });
    }
    Err(CodeError::SupplementNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn simplex23() -> LinearCode {
        LinearCode::from_rows(
            Field::of_order(2).unwrap(),
            &[[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn residual_of_simplex() {
        let c = simplex23();
        let a = c.gen().row(0).to_vec();
        let r = residual(&c, &a).unwrap();
        assert_eq!((r.code.n(), r.code.k()), (3, 2));
        assert_eq!(r.code.min_distance().unwrap(), 2);
        assert_eq!(r.columns, vec![0, 1, 2]);
    }

    #[test]
    fn residual_of_repetition_has_dimension_zero() {
        let c = LinearCode::from_rows(Field::of_order(2).unwrap(), &[[1, 1, 1, 1]]).unwrap();
        assert_eq!(residual(&c, &[1, 1, 1, 1]).unwrap_err(), CodeError::DimensionZero);
    }

    #[test]
    fn residual_rejects_non_members() {
        let c = simplex23();
        assert_eq!(
            residual(&c, &[1, 0, 0, 0, 0, 0, 0]).unwrap_err(),
            CodeError::NotACodeword
        );
        assert_eq!(residual(&c, &[0; 7]).unwrap_err(), CodeError::ZeroWord);
    }

    #[test]
    fn projected_of_simplex() {
        let c = simplex23();
        let a = c.gen().row(0).to_vec();
        let p = projected(&c, &a).unwrap();
        assert_eq!((p.code.n(), p.code.k()), (4, 3));
        assert_eq!(projected(&c, &[0; 7]).unwrap_err(), CodeError::ZeroWord);
    }

    #[test]
    fn shortened_simplex() {
        let c = simplex23();
        for j in 0..7 {
            let s = shortened(&c, &c.gen().column(j)).unwrap();
            assert_eq!((s.derived.code.n(), s.derived.code.k()), (6, 2));
            assert_eq!(s.derived.code.min_distance().unwrap(), 4);
            assert!(s.derived.code.is_griesmer().unwrap());
        }
    }

    #[test]
    fn shortened_needs_a_column_point() {
        let c = LinearCode::from_rows(Field::of_order(2).unwrap(), &[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert!(shortened(&c, &[1, 1]).is_ok());
        let c = LinearCode::from_rows(Field::of_order(3).unwrap(), &[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(shortened(&c, &[1, 2]).unwrap_err(), CodeError::NotAColumnPoint);
    }

    #[test]
    fn agreement_examples() {
        let f4 = Field::of_order(4).unwrap();
        let p = agreement_profile(&f4, &[1, 2, 0], &[1, 1, 1]).unwrap();
        assert_eq!((p.get(1), p.get(2), p.get(3)), (1, 1, 0));
        assert_eq!(p.residual_weight, 1);
        let p = agreement_profile(&f4, &[1, 3, 0], &[1, 3, 0]).unwrap();
        assert_eq!(p.get(1), 2);
        let p = agreement_profile(&f4, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(p.total(), 0);
        assert!(agreement_profile(&f4, &[0, 0], &[0, 1]).is_err());
    }

    #[test]
    fn lift_in_simplex() {
        let c = simplex23();
        let a = c.gen().row(0).to_vec();
        let r = residual(&c, &a).unwrap();
        let (_, cmin) = r.code.min_weight_codeword().unwrap();
        let lift = lift_min_weight(&c, &a, &cmin).unwrap();
        assert_eq!(weight(&lift.word), 4);
        assert!(c.contains(&lift.word));
        assert_eq!(r.restrict_word(&lift.word), cmin);
    }

    #[test]
    fn supplement_of_simplex() {
        let c = simplex23();
        let a = c.gen().row(0).to_vec();
        let s = supplementary_subcode(&c, &a).unwrap();
        assert_eq!(s.basis.rows(), 2);
        assert_eq!(s.effective_length, 6);
        let mut rows = s.basis.to_rows();
        rows.push(a);
        assert_eq!(FqMatrix::from_rows(&rows).unwrap().rank(c.field()), 3);
    }

    #[test]
    fn supplement_rejects_non_griesmer() {
        let c = LinearCode::from_rows(Field::of_order(2).unwrap(), &[[1, 0, 1, 1], [0, 1, 1, 1]]).unwrap();
        assert_eq!(
            supplementary_subcode(&c, &[1, 1, 0, 0]).unwrap_err(),
            CodeError::NotGriesmer
        );
    }
}
