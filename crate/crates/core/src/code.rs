//! Linear codes given by a generator matrix, and their weight statistics.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, Field, FieldError};
use crate::guard;
use crate::matrix::{FqMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("column {0} of the generator matrix is zero")]
    ZeroColumn(usize),
    #[error("a code needs at least one row and one column")]
    Empty,
    #[error("enumerating {q}^{k} messages exceeds the guard {limit}")]
    GuardExceeded { q: u32, k: usize, limit: u64 },
    #[error("word has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("word is not a codeword")]
    NotACodeword,
    #[error("the zero word is not allowed here")]
    ZeroWord,
    #[error("result would have dimension 0")]
    DimensionZero,
    #[error("result would have length 0")]
    LengthZero,
    #[error("the point is not the direction of any column")]
    NotAColumnPoint,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("code is not Griesmer")]
    NotGriesmer,
    #[error("codeword has weight {got}, expected minimum weight {expected}")]
    NotMinimumWeight { expected: usize, got: usize },
    #[error("no minimum-weight preimage exists")]
    NoMinimumWeightPreimage,
    #[error("no supplementary Griesmer subcode found")]
    SupplementNotFound,
}

/// Number of nonzero entries.
pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|&&v| v != 0).count()
}

/// Indices of the nonzero entries.
pub fn support(word: &[Elem]) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, _)| i)
        .collect()
}

/// `sum_{i<k} ceil(d / q^i)`.
pub fn griesmer_bound(q: u64, k: u64, d: u64) -> Result<u64, CodeError> {
    if q < 2 || crate::field::prime_power(q).is_none() {
        return Err(CodeError::InvalidParameters(format!("{q} is not a prime power")));
    }
    if k == 0 || d == 0 {
        return Err(CodeError::InvalidParameters("k and d must be positive".into()));
    }
    let mut total = 0u64;
    let mut power = Some(1u64);
    for _ in 0..k {
        total += match power {
            Some(pw) => d.div_ceil(pw),
            None => 1,
        };
        power = power.and_then(|pw| pw.checked_mul(q));
    }
    Ok(total)
}

/// The weight enumerator: weight -> number of codewords, zero word included.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightDistribution {
    counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: BTreeMap<usize, u64>) -> Self {
        WeightDistribution { counts }
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Distinct nonzero weights in increasing order.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_nonzero(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// gcd of the nonzero weights; 0 for the zero code.
    pub fn divisor(&self) -> u64 {
        self.nonzero_weights().into_iter().fold(0u64, |g, w| g.gcd(&(w as u64)))
    }

    /// Whether `delta` divides every weight.
    pub fn divisible_by(&self, delta: u64) -> bool {
        self.counts.keys().all(|&w| w as u64 % delta == 0)
    }

    fn add(&mut self, w: usize, c: u64) {
        *self.counts.entry(w).or_insert(0) += c;
    }

    fn merge(mut self, other: Self) -> Self {
        for (w, c) in other.counts {
            self.add(w, c);
        }
        self
    }
}

/// `nu_p(n)` for `n > 0`.
pub fn nu_p(mut n: u64, p: u64) -> u32 {
    assert!(n > 0, "valuation of zero");
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Walks every message of `gen` in lexicographic order (first coordinate most
/// significant), handing each message and its codeword to `visit`.
///
/// With `first` set, only messages whose first coordinate equals it are visited.
pub(crate) fn walk_span<F>(field: &Field, gen: &FqMatrix, first: Option<Elem>, mut visit: F)
where
    F: FnMut(&[Elem], &[Elem]) -> ControlFlow<()>,
{
    let k = gen.rows();
    let n = gen.cols();
    let q = field.q();
    if k == 0 {
        let _ = visit(&[], &vec![0; n]);
        return;
    }
    // scaled[i][c] = c * row_i
    let scaled: Vec<Vec<Vec<Elem>>> = (0..k)
        .map(|i| {
            field
                .elements()
                .map(|c| gen.row(i).iter().map(|&v| field.mul(c, v)).collect())
                .collect()
        })
        .collect();
    let mut msg = vec![0 as Elem; k];
    let lo = first.unwrap_or(0);
    let hi = first.map_or(q - 1, |f| f);
    msg[0] = lo;
    // partial[i] = sum_{j<i} msg_j row_j
    let mut partial = vec![vec![0 as Elem; n]; k + 1];
    let mut from = 0;
    loop {
        for i in from..k {
            let (head, tail) = partial.split_at_mut(i + 1);
            let src = &head[i];
            let row = &scaled[i][msg[i] as usize];
            for ((d, &s), &r) in tail[0].iter_mut().zip(src).zip(row) {
                *d = field.add(s, r);
            }
        }
        if visit(&msg, &partial[k]).is_break() {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let top = if i == 0 { hi } else { q - 1 };
            if msg[i] < top {
                msg[i] += 1;
                for m in msg.iter_mut().skip(i + 1) {
                    *m = 0;
                }
                from = i;
                break;
            }
        }
    }
}

/// Weight distribution of the row space of `gen` (rows assumed independent
/// for the counts to describe a code; dependent rows just repeat words).
pub(crate) fn span_distribution(field: &Field, gen: &FqMatrix) -> WeightDistribution {
    if gen.rows() <= 1 {
        let mut wd = WeightDistribution::default();
        walk_span(field, gen, None, |_, w| {
            wd.add(weight(w), 1);
            ControlFlow::Continue(())
        });
        return wd;
    }
    field
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            let mut wd = WeightDistribution::default();
            walk_span(field, gen, Some(first), |_, w| {
                wd.add(weight(w), 1);
                ControlFlow::Continue(())
            });
            wd
        })
        .reduce(WeightDistribution::default, WeightDistribution::merge)
}

/// Columns in which some row is nonzero.
pub(crate) fn effective_length_of(gen: &FqMatrix) -> usize {
    (0..gen.cols()).filter(|&j| !gen.is_zero_column(j)).count()
}

pub(crate) fn check_guard(q: u32, k: usize) -> Result<u64, CodeError> {
    guard::within_limit(q, k).ok_or(CodeError::GuardExceeded {
        q,
        k,
        limit: guard::enumeration_limit(),
    })
}

/// An `[n, k]_q` linear code. The minimum distance is computed on demand.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Arc<Field>,
    gen: FqMatrix,
    weights: OnceLock<WeightDistribution>,
}

impl PartialEq for LinearCode {
    /// Same field and same generator matrix (not merely the same row space).
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.gen == other.gen
    }
}

impl LinearCode {
    /// A full-length code with generator `gen`, whose rows must be independent.
    pub fn new(field: Arc<Field>, gen: FqMatrix) -> Result<Self, CodeError> {
        let code = Self::allowing_zero_columns(field, gen)?;
        if let Some(j) = (0..code.n()).find(|&j| code.gen.is_zero_column(j)) {
            return Err(CodeError::ZeroColumn(j));
        }
        Ok(code)
    }

    /// Like [`LinearCode::new`] without the full-length requirement.
    pub fn allowing_zero_columns(field: Arc<Field>, gen: FqMatrix) -> Result<Self, CodeError> {
        if gen.rows() == 0 || gen.cols() == 0 {
            return Err(CodeError::Empty);
        }
        gen.check_entries(&field)?;
        let rank = gen.rank(&field);
        if rank != gen.rows() {
            return Err(CodeError::RankDeficient { rank, rows: gen.rows() });
        }
        Ok(LinearCode {
            field,
            gen,
            weights: OnceLock::new(),
        })
    }

    pub fn from_rows<R: AsRef<[Elem]>>(field: Arc<Field>, rows: &[R]) -> Result<Self, CodeError> {
        let gen = FqMatrix::from_rows(rows)?;
        Self::new(field, gen)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn gen(&self) -> &FqMatrix {
        &self.gen
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn is_full_length(&self) -> bool {
        (0..self.n()).all(|j| !self.gen.is_zero_column(j))
    }

    /// Number of coordinates where some codeword is nonzero.
    pub fn effective_length(&self) -> usize {
        effective_length_of(&self.gen)
    }

    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        self.gen.vec_mul(&self.field, msg)
    }

    /// The message of a codeword, or `None` if the word is not in the code.
    pub fn message_of(&self, word: &[Elem]) -> Result<Option<Vec<Elem>>, CodeError> {
        if word.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        Ok(self.gen.solve_left(&self.field, word))
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        matches!(self.message_of(word), Ok(Some(_)))
    }

    /// Visits every codeword in message order; see [`walk_span`].
    pub fn for_each_codeword<F>(&self, visit: F) -> Result<(), CodeError>
    where
        F: FnMut(&[Elem], &[Elem]) -> ControlFlow<()>,
    {
        check_guard(self.q(), self.k())?;
        walk_span(&self.field, &self.gen, None, visit);
        Ok(())
    }

    pub fn weight_distribution(&self) -> Result<&WeightDistribution, CodeError> {
        if let Some(wd) = self.weights.get() {
            return Ok(wd);
        }
        check_guard(self.q(), self.k())?;
        let wd = span_distribution(&self.field, &self.gen);
        Ok(self.weights.get_or_init(|| wd))
    }

    pub fn min_distance(&self) -> Result<usize, CodeError> {
        Ok(self
            .weight_distribution()?
            .min_nonzero()
            .expect("a code of positive dimension has nonzero words"))
    }

    /// `g_q(k, d)` for this code's parameters.
    pub fn griesmer_length(&self) -> Result<u64, CodeError> {
        griesmer_bound(self.q() as u64, self.k() as u64, self.min_distance()? as u64)
    }

    pub fn is_griesmer(&self) -> Result<bool, CodeError> {
        Ok(self.is_full_length() && self.n() as u64 == self.griesmer_length()?)
    }

    /// `(gcd of nonzero weights, its p-adic valuation)`.
    pub fn divisor_and_exponent(&self) -> Result<(u64, u32), CodeError> {
        let delta = self.weight_distribution()?.divisor();
        Ok((delta, nu_p(delta, self.field.p() as u64)))
    }

    /// The lexicographically first codeword of minimum weight, with its message.
    pub fn min_weight_codeword(&self) -> Result<(Vec<Elem>, Vec<Elem>), CodeError> {
        let d = self.min_distance()?;
        let mut found = None;
        self.for_each_codeword(|m, w| {
            if weight(w) == d {
                found = Some((m.to_vec(), w.to_vec()));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found.expect("minimum weight is attained"))
    }

    /// Largest `e` with `q^e | d`.
    pub fn q_exponent_of_d(&self) -> Result<u32, CodeError> {
        let d = self.min_distance()? as u64;
        let q = self.q() as u64;
        let mut e = 0;
        let mut rest = d;
        while rest % q == 0 {
            rest /= q;
            e += 1;
        }
        Ok(e)
    }

    /// The code spanned by `rows` (codewords of this code), restricted to
    /// nothing: same coordinates, possibly with zero columns.
    pub fn subcode(&self, rows: &FqMatrix) -> Result<LinearCode, CodeError> {
        for r in rows.row_iter() {
            if !self.contains(r) {
                return Err(CodeError::NotACodeword);
            }
        }
        LinearCode::allowing_zero_columns(self.field.clone(), rows.clone())
    }

    /// Drops zero columns, returning the shortened-length code and the kept
    /// column indices.
    pub fn strip_zero_columns(&self) -> Result<(LinearCode, Vec<usize>), CodeError> {
        let keep: Vec<usize> = (0..self.n()).filter(|&j| !self.gen.is_zero_column(j)).collect();
        if keep.is_empty() {
            return Err(CodeError::LengthZero);
        }
        let code = LinearCode::new(self.field.clone(), self.gen.select_columns(&keep))?;
        Ok((code, keep))
    }
}
