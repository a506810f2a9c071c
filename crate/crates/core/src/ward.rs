//! Deciding `p^e | wt(c)` for all codewords through Teichmuller lifts: for each
//! exponent tuple `(r_1, ..., r_m)` with `sum r_i = 0 (mod q-1)` we need
//! `e <= sum S_p(r_i) / (p-1) - f + nu_p(sigma(T(b_1)^{o r_1} o ... o T(b_m)^{o r_m}))`.

use serde::Serialize;
use thiserror::Error;

use crate::basis::{construct_basis, BasisError};
use crate::code::{CodeError, LinearCode};
use crate::field::Elem;
use crate::galois_ring::{GaloisRing, GrElement, Valuation};
use crate::matrix::FqMatrix;
use crate::padic::{digit_sum, PadicError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WardError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("invalid exponent tuple: {0}")]
    InvalidTuple(String),
    #[error("alpha needs at least two basis rows and a field element, got k = {k}, alpha = {alpha}")]
    Alpha { k: usize, alpha: Elem },
    #[error("basis rows do not form a basis of the code")]
    NotABasis,
}

/// Exponents `(r_1, ..., r_k)` in `[0, q-1]`, not all zero, summing to a
/// multiple of `q - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentTuple {
    pub exponents: Vec<u64>,
    /// `sum S_p(r_i)`.
    pub digit_sum: u64,
}

impl ExponentTuple {
    pub fn new(exponents: Vec<u64>, q: u64, p: u64) -> Result<Self, WardError> {
        if let Some(r) = exponents.iter().find(|&&r| r > q - 1) {
            return Err(WardError::InvalidTuple(format!("exponent {r} exceeds {}", q - 1)));
        }
        if exponents.iter().all(|&r| r == 0) {
            return Err(WardError::InvalidTuple("all exponents are zero".into()));
        }
        if exponents.iter().sum::<u64>() % (q - 1) != 0 {
            return Err(WardError::InvalidTuple(format!(
                "exponent sum is not a multiple of {}",
                q - 1
            )));
        }
        let digit_sum = exponents.iter().map(|&r| digit_sum(r, p)).sum();
        Ok(ExponentTuple { exponents, digit_sum })
    }
}

/// Largest `e` a tuple permits, or `None` when the valuation is saturated
/// (the tuple then permits every `e` up to the working bound).
fn allowed_exponent(ring: &GaloisRing, digit_sum: u64, v: Valuation) -> Option<i64> {
    let p = ring.field().p() as i64;
    let f = ring.field().f() as i64;
    (!v.saturated).then(|| digit_sum as i64 / (p - 1) - f + v.value as i64)
}

fn product_valuation(ring: &GaloisRing, factors: &[Vec<GrElement>], n: usize) -> Valuation {
    let mut acc = vec![ring.one(); n];
    for fac in factors {
        for (a, x) in acc.iter_mut().zip(fac) {
            *a = ring.mul(a, x);
        }
    }
    ring.valuation(&ring.sigma(&acc))
}

/// Whether the tuple's inequality holds for `e`, with `rows` as `b_1..b_k`.
pub fn ward_condition(rows: &FqMatrix, e: u32, tuple: &ExponentTuple, ring: &GaloisRing) -> Result<bool, WardError> {
    let field = ring.field();
    let (p, f) = (field.p() as u64, field.f());
    if tuple.exponents.len() != rows.rows() {
        return Err(WardError::InvalidTuple(format!(
            "{} exponents for {} rows",
            tuple.exponents.len(),
            rows.rows()
        )));
    }
    if ring.precision() < e + f {
        return Err(PadicError::Precision {
            needed: e + f,
            have: ring.precision(),
        }
        .into());
    }
    let mut factors = Vec::new();
    for (i, &r) in tuple.exponents.iter().enumerate() {
        if r > 0 {
            let t = ring.teichmuller_vec(rows.row(i))?;
            factors.push(ring.schur_pow(&t, r));
        }
    }
    let v = product_valuation(ring, &factors, rows.cols());
    // e <= S/(p-1) - f + v  <=>  v >= tau = ceil(e + f - S/(p-1))
    let num = (e as i64 + f as i64) * (p as i64 - 1) - tuple.digit_sum as i64;
    let tau = num.div_euclid(p as i64 - 1) + i64::from(num.rem_euclid(p as i64 - 1) != 0);
    if v.saturated {
        if tau > ring.precision() as i64 {
            return Err(PadicError::Precision {
                needed: tau as u32,
                have: ring.precision(),
            }
            .into());
        }
        return Ok(true);
    }
    Ok(v.value as i64 >= tau)
}

/// How tuples are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WardMode {
    /// One exponent in `[0, q-1]` per basis row.
    Folded,
    /// Every multiset of at most `max_len` elements `lambda b_i` of the
    /// spanning set, each with an exponent in `[1, q-1]`.
    Bounded { max_len: usize },
}

/// The tuple that limits the exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WardWitness {
    /// `(row, scalar, exponent)` items; the scalar is 1 in folded mode.
    pub items: Vec<(usize, Elem, u64)>,
    pub digit_sum: u64,
    pub valuation: Valuation,
    /// Largest exponent this tuple permits.
    pub allowed: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WardOutcome {
    /// Largest `e <= e_max` passing every tuple.
    pub exponent: u32,
    pub e_max: u32,
    /// First tuple (in enumeration order) permitting only `exponent`, when
    /// `exponent < e_max`.
    pub witness: Option<WardWitness>,
    pub tuples_checked: u64,
}

struct Search<'a> {
    ring: &'a GaloisRing,
    e_max: u32,
    best: i64,
    witness: Option<WardWitness>,
    checked: u64,
}

impl Search<'_> {
    fn record(&mut self, items: Vec<(usize, Elem, u64)>, digit_sum: u64, acc: &[GrElement]) {
        self.checked += 1;
        let v = self.ring.valuation(&self.ring.sigma(acc));
        let Some(allowed) = allowed_exponent(self.ring, digit_sum, v) else {
            return;
        };
        if allowed < self.best {
            self.best = allowed;
            self.witness = Some(WardWitness {
                items,
                digit_sum,
                valuation: v,
                allowed,
            });
        }
    }

    fn done(self) -> WardOutcome {
        let exponent = self.best.clamp(0, self.e_max as i64) as u32;
        WardOutcome {
            exponent,
            e_max: self.e_max,
            witness: if exponent < self.e_max { self.witness } else { None },
            tuples_checked: self.checked,
        }
    }
}

fn folded(ring: &GaloisRing, rows: &FqMatrix, e_max: u32) -> Result<WardOutcome, WardError> {
    let field = ring.field();
    let (q, p) = (field.q() as u64, field.p() as u64);
    let (k, n) = (rows.rows(), rows.cols());
    // powers[i][r] = T(b_i)^{o r}
    let mut powers = Vec::with_capacity(k);
    for i in 0..k {
        let t = ring.teichmuller_vec(rows.row(i))?;
        powers.push((0..q).map(|r| ring.schur_pow(&t, r)).collect::<Vec<_>>());
    }
    let mut search = Search {
        ring,
        e_max,
        best: e_max as i64,
        witness: None,
        checked: 0,
    };
    let mut tuple = vec![0u64; k];
    let mut partial = vec![vec![ring.one(); n]; k + 1];
    fn descend(
        depth: usize,
        tuple: &mut Vec<u64>,
        partial: &mut Vec<Vec<GrElement>>,
        powers: &[Vec<Vec<GrElement>>],
        q: u64,
        p: u64,
        search: &mut Search<'_>,
    ) {
        let k = tuple.len();
        if depth == k {
            let sum: u64 = tuple.iter().sum();
            if sum == 0 || sum % (q - 1) != 0 {
                return;
            }
            let ds = tuple.iter().map(|&r| digit_sum(r, p)).sum();
            let items = tuple
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 0)
                .map(|(i, &r)| (i, 1, r))
                .collect();
            let acc = partial[k].clone();
            search.record(items, ds, &acc);
            return;
        }
        for r in 0..q {
            tuple[depth] = r;
            let next: Vec<GrElement> = if r == 0 {
                partial[depth].clone()
            } else {
                partial[depth]
                    .iter()
                    .zip(&powers[depth][r as usize])
                    .map(|(a, b)| search.ring.mul(a, b))
                    .collect()
            };
            partial[depth + 1] = next;
            descend(depth + 1, tuple, partial, powers, q, p, search);
        }
    }
    descend(0, &mut tuple, &mut partial, &powers, q, p, &mut search);
    Ok(search.done())
}

fn bounded(ring: &GaloisRing, rows: &FqMatrix, e_max: u32, max_len: usize) -> Result<WardOutcome, WardError> {
    let field = ring.field();
    let (q, p) = (field.q() as u64, field.p() as u64);
    let n = rows.cols();
    // Items (row, lambda, r) with their Schur powers T(lambda b_i)^{o r}.
    let mut items = Vec::new();
    let mut factors = Vec::new();
    for i in 0..rows.rows() {
        for lambda in 1..field.q() {
            let scaled: Vec<Elem> = rows.row(i).iter().map(|&x| field.mul(lambda, x)).collect();
            let t = ring.teichmuller_vec(&scaled)?;
            for r in 1..q {
                items.push((i, lambda, r));
                factors.push(ring.schur_pow(&t, r));
            }
        }
    }
    let mut search = Search {
        ring,
        e_max,
        best: e_max as i64,
        witness: None,
        checked: 0,
    };
    struct Ctx<'a> {
        items: &'a [(usize, Elem, u64)],
        factors: &'a [Vec<GrElement>],
        max_len: usize,
        q: u64,
        p: u64,
    }
    fn extend(
        ctx: &Ctx<'_>,
        start: usize,
        chosen: &mut Vec<usize>,
        acc: &[GrElement],
        sum: u64,
        ds: u64,
        search: &mut Search<'_>,
    ) {
        if !chosen.is_empty() && sum % (ctx.q - 1) == 0 {
            let items = chosen.iter().map(|&c| ctx.items[c]).collect();
            search.record(items, ds, acc);
        }
        if chosen.len() == ctx.max_len {
            return;
        }
        for idx in start..ctx.items.len() {
            let r = ctx.items[idx].2;
            let next: Vec<GrElement> = acc
                .iter()
                .zip(&ctx.factors[idx])
                .map(|(a, b)| search.ring.mul(a, b))
                .collect();
            chosen.push(idx);
            extend(ctx, idx, chosen, &next, sum + r, ds + digit_sum(r, ctx.p), search);
            chosen.pop();
        }
    }
    let ctx = Ctx {
        items: &items,
        factors: &factors,
        max_len,
        q,
        p,
    };
    let ones = vec![ring.one(); n];
    extend(&ctx, 0, &mut Vec::new(), &ones, 0, 0, &mut search);
    Ok(search.done())
}

/// The basis the criterion runs on: a Griesmer basis when the code is
/// Griesmer, the row-reduced generator otherwise; with `alpha`, the first row
/// becomes `b_1 + alpha b_2`.
pub fn criterion_basis(code: &LinearCode, alpha: Elem) -> Result<FqMatrix, WardError> {
    let field = code.field();
    let mut rows = if code.is_griesmer()? {
        construct_basis(code)?.matrix()
    } else {
        code.gen().row_basis(field)
    };
    if alpha != 0 {
        if rows.rows() < 2 || alpha >= field.q() {
            return Err(WardError::Alpha { k: rows.rows(), alpha });
        }
        let second = rows.row(1).to_vec();
        for (x, y) in rows.row_mut(0).iter_mut().zip(second) {
            *x = field.add(*x, field.mul(alpha, y));
        }
    }
    Ok(rows)
}

/// Largest `e <= e_max` such that `p^e` divides every weight, decided by the
/// criterion on `rows` (which must be a basis of `code`).
pub fn max_divisor_exponent_with_basis(
    code: &LinearCode,
    rows: &FqMatrix,
    e_max: u32,
    mode: WardMode,
) -> Result<WardOutcome, WardError> {
    let field = code.field();
    if rows.rows() != code.k()
        || rows.cols() != code.n()
        || rows.rank(field) != code.k()
        || rows.row_iter().any(|r| !code.contains(r))
    {
        return Err(WardError::NotABasis);
    }
    let ring = GaloisRing::new(field, e_max + field.f())?;
    match mode {
        WardMode::Folded => folded(&ring, rows, e_max),
        WardMode::Bounded { max_len } => bounded(&ring, rows, e_max, max_len),
    }
}

/// [`max_divisor_exponent_with_basis`] on [`criterion_basis`] with `alpha = 0`.
pub fn max_divisor_exponent(code: &LinearCode, e_max: u32, mode: WardMode) -> Result<WardOutcome, WardError> {
    let rows = criterion_basis(code, 0)?;
    max_divisor_exponent_with_basis(code, &rows, e_max, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{hexacode, simplex};
    use crate::field::Field;

    #[test]
    fn tuple_validation() {
        assert!(ExponentTuple::new(vec![0, 0], 4, 2).is_err());
        assert!(ExponentTuple::new(vec![4, 2], 4, 2).is_err());
        assert!(ExponentTuple::new(vec![1, 1], 4, 2).is_err());
        let t = ExponentTuple::new(vec![1, 2], 4, 2).unwrap();
        assert_eq!(t.digit_sum, 2);
    }

    #[test]
    fn simplex_all_ones_tuple() {
        let c = simplex(2, 3).unwrap();
        let rows = c.gen().clone();
        let ring = GaloisRing::new(c.field(), 5).unwrap();
        let t = ExponentTuple::new(vec![1, 1, 1], 2, 2).unwrap();
        assert!(ward_condition(&rows, 2, &t, &ring).unwrap());
        assert!(!ward_condition(&rows, 3, &t, &ring).unwrap());
    }

    #[test]
    fn single_row_tuple_measures_the_weight() {
        let h = hexacode().unwrap();
        let ring = GaloisRing::new(h.field(), 6).unwrap();
        for i in 0..3 {
            let mut ex = vec![0; 3];
            ex[i] = 3;
            let t = ExponentTuple::new(ex, 4, 2).unwrap();
            let w = crate::code::weight(h.gen().row(i)) as u64;
            let nu = w.trailing_zeros();
            for e in 0..4 {
                assert_eq!(ward_condition(h.gen(), e, &t, &ring).unwrap(), e <= nu);
            }
        }
    }

    #[test]
    fn known_exponents() {
        let h = hexacode().unwrap();
        let out = max_divisor_exponent(&h, 8, WardMode::Folded).unwrap();
        assert_eq!(out.exponent, 1);
        assert!(out.witness.is_some());
        assert_eq!(
            max_divisor_exponent(&simplex(2, 3).unwrap(), 8, WardMode::Folded)
                .unwrap()
                .exponent,
            2
        );
        assert_eq!(
            max_divisor_exponent(&simplex(2, 2).unwrap(), 8, WardMode::Folded)
                .unwrap()
                .exponent,
            1
        );
    }

    #[test]
    fn capped_by_e_max() {
        let out = max_divisor_exponent(&simplex(2, 3).unwrap(), 1, WardMode::Folded).unwrap();
        assert_eq!(out.exponent, 1);
        assert!(out.witness.is_none());
    }

    #[test]
    fn bounded_agrees_on_hexacode() {
        let h = hexacode().unwrap();
        let out = max_divisor_exponent(&h, 4, WardMode::Bounded { max_len: 4 }).unwrap();
        assert_eq!(out.exponent, 1);
    }

    #[test]
    fn alpha_requires_two_rows() {
        let c = LinearCode::from_rows(Field::of_order(4).unwrap(), &[[1, 1, 1]]).unwrap();
        assert!(matches!(criterion_basis(&c, 2), Err(WardError::Alpha { .. })));
    }
}
