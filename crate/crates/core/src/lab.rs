//! Divisibility theorems checked against enumerated weights.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::code::{nu_p, weight, CodeError, LinearCode};
use crate::constructions::{self as cons, ConstructionError};
use crate::field::Elem;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("unknown theorem {0:?}; expected t1.2, t1.3, t1.5, t1.6, conj1 or all")]
    UnknownTheorem(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Theorem {
    /// Prime field: `p^e | d` gives divisor `p^e`.
    #[serde(rename = "T1.2")]
    T12,
    /// `q | d` gives divisor `p`.
    #[serde(rename = "T1.3a")]
    T13a,
    /// `q = 4`, `2^e | d` gives divisor `2^(e-1)`.
    #[serde(rename = "T1.3b")]
    T13b,
    /// `q^e | d` gives divisor `p^e`.
    #[serde(rename = "T1.5")]
    T15,
    /// `p^e | d` gives divisor `p^floor(e/f)`.
    #[serde(rename = "T1.5'")]
    T15Prime,
    /// `p^e | d` gives divisor `ceil(p^(e - (f-1)(q-2)))`.
    #[serde(rename = "T1.6")]
    T16,
    /// `p^e | d` gives divisor `ceil(p^(e - (f-1)))`. Open.
    #[serde(rename = "Conj1")]
    Conj1,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::T12,
        Theorem::T13a,
        Theorem::T13b,
        Theorem::T15,
        Theorem::T15Prime,
        Theorem::T16,
        Theorem::Conj1,
    ];

    pub fn is_conjecture(self) -> bool {
        self == Theorem::Conj1
    }

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T12 => "T1.2",
            Theorem::T13a => "T1.3a",
            Theorem::T13b => "T1.3b",
            Theorem::T15 => "T1.5",
            Theorem::T15Prime => "T1.5'",
            Theorem::T16 => "T1.6",
            Theorem::Conj1 => "Conj1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma-separated selector such as `t1.3,conj1`. `t1.3` selects
/// both parts and `t1.5` both forms.
pub fn parse_selector(s: &str) -> Result<Vec<Theorem>, LabError> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let picked: &[Theorem] = match tok.to_ascii_lowercase().as_str() {
            "all" => &Theorem::ALL,
            "t1.2" => &[Theorem::T12],
            "t1.3" => &[Theorem::T13a, Theorem::T13b],
            "t1.3a" => &[Theorem::T13a],
            "t1.3b" => &[Theorem::T13b],
            "t1.5" => &[Theorem::T15, Theorem::T15Prime],
            "t1.5'" => &[Theorem::T15Prime],
            "t1.6" => &[Theorem::T16],
            "conj1" => &[Theorem::Conj1],
            _ => return Err(LabError::UnknownTheorem(tok.to_string())),
        };
        out.extend_from_slice(picked);
    }
    if out.is_empty() {
        return Err(LabError::UnknownTheorem(s.to_string()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl FromStr for Theorem {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_selector(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(LabError::UnknownTheorem(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Theorem,
    Conjecture,
}

/// One theorem checked on one code. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    pub kind: Kind,
    pub code: String,
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    /// The exponent the hypothesis is applied with.
    pub e: Option<u32>,
    pub claimed_divisor: Option<u64>,
    pub observed_divisor: u64,
    pub status: Status,
    pub reason: Option<String>,
    /// First codeword (message order) whose weight the claim does not divide.
    pub witness: Option<Vec<Elem>>,
}

impl TheoremVerdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A failed theorem, as opposed to a failed conjecture.
    pub fn is_violation(&self) -> bool {
        self.status == Status::Fail && self.kind == Kind::Theorem
    }
}

/// `p^max(0, x)`.
fn clamped_power(p: u64, x: i64) -> u64 {
    p.pow(x.max(0) as u32)
}

/// The exponent and divisor a theorem claims, or why it does not apply.
fn claim(t: Theorem, p: u64, f: u32, q: u64, d: u64) -> Result<(u32, u64), &'static str> {
    let nu = nu_p(d, p);
    match t {
        Theorem::T12 if f != 1 => Err("needs a prime field"),
        Theorem::T12 => Ok((nu, p.pow(nu))),
        Theorem::T13a if d % q != 0 => Err("q does not divide d"),
        Theorem::T13a => Ok((1, p)),
        Theorem::T13b if q != 4 => Err("needs q = 4"),
        Theorem::T13b if nu == 0 => Err("d is odd"),
        Theorem::T13b => Ok((nu, 1 << (nu - 1))),
        Theorem::T15 => {
            let mut e = 0;
            let mut rest = d;
            while rest % q == 0 {
                rest /= q;
                e += 1;
            }
            Ok((e, p.pow(e)))
        }
        Theorem::T15Prime => Ok((nu, p.pow(nu / f))),
        Theorem::T16 => {
            let x = nu as i64 - (f as i64 - 1) * (q as i64 - 2);
            Ok((nu, clamped_power(p, x)))
        }
        Theorem::Conj1 => Ok((nu, clamped_power(p, nu as i64 - (f as i64 - 1)))),
    }
}

fn first_nondivisible(code: &LinearCode, delta: u64) -> Result<Option<Vec<Elem>>, CodeError> {
    let mut found = None;
    code.for_each_codeword(|_, w| {
        if weight(w) as u64 % delta != 0 {
            found = Some(w.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

pub fn verify_theorem(code: &LinearCode, id: &str, which: Theorem) -> Result<TheoremVerdict, LabError> {
    let field = code.field();
    let (p, f, q) = (field.p() as u64, field.f(), field.q() as u64);
    let d = code.min_distance()? as u64;
    let (observed, _) = code.divisor_and_exponent()?;
    let mut v = TheoremVerdict {
        theorem: which,
        kind: if which.is_conjecture() {
            Kind::Conjecture
        } else {
            Kind::Theorem
        },
        code: id.to_string(),
        q,
        p,
        f,
        n: code.n(),
        k: code.k(),
        d,
        e: None,
        claimed_divisor: None,
        observed_divisor: observed,
        status: Status::Skipped,
        reason: None,
        witness: None,
    };
    if !code.is_griesmer()? {
        v.reason = Some("not a Griesmer code".into());
        return Ok(v);
    }
    match claim(which, p, f, q, d) {
        Err(why) => v.reason = Some(why.into()),
        Ok((e, delta)) => {
            v.e = Some(e);
            v.claimed_divisor = Some(delta);
            if observed % delta == 0 {
                v.status = Status::Pass;
            } else {
                v.status = Status::Fail;
                v.reason = Some(format!("{delta} does not divide {observed}"));
                v.witness = first_nondivisible(code, delta)?;
            }
        }
    }
    Ok(v)
}

/// A named code of the built-in corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub code: LinearCode,
}

/// Classical Griesmer families small enough to enumerate.
pub fn corpus() -> Result<Vec<CorpusEntry>, LabError> {
    let mut out = Vec::new();
    let mut push = |id: String, code: LinearCode| out.push(CorpusEntry { id, code });
    for (q, ks) in [(2u64, 2..=4usize), (3, 2..=3), (4, 2..=3), (5, 2..=3)] {
        for k in ks {
            push(format!("simplex({q},{k})"), cons::simplex(q, k)?);
        }
    }
    for m in 2..=5 {
        push(format!("rm1({m})"), cons::rm1(m)?);
    }
    push("hexacode".into(), cons::hexacode()?);
    for q0 in [2, 3] {
        push(format!("unital({q0})"), cons::unital(q0)?);
    }
    for q in [2, 3, 4] {
        push(format!("ovoid({q})"), cons::ovoid(q)?);
    }
    for (q, n) in [(2u64, 5usize), (3, 4), (4, 3)] {
        push(format!("repetition({q},{n})"), cons::repetition(q, n)?);
    }
    for (q, n, k) in [(4u64, 4usize, 2usize), (5, 5, 3), (8, 8, 4), (9, 9, 3)] {
        push(format!("rs({q},{n},{k})"), cons::reed_solomon(q, n, k)?);
    }
    let s22 = cons::simplex(2, 2)?;
    push("replicate(simplex(2,2),2)".into(), cons::replicate(&s22, 2)?);
    Ok(out)
}

/// Every selected theorem on every corpus code, in corpus order.
pub fn run_corpus(theorems: &[Theorem]) -> Result<Vec<TheoremVerdict>, LabError> {
    let entries = corpus()?;
    run_on(&entries, theorems)
}

pub fn run_on(entries: &[CorpusEntry], theorems: &[Theorem]) -> Result<Vec<TheoremVerdict>, LabError> {
    let per_code: Vec<Vec<TheoremVerdict>> = entries
        .par_iter()
        .map(|e| {
            theorems
                .iter()
                .map(|&t| verify_theorem(&e.code, &e.id, t))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(per_code.into_iter().flatten().collect())
}
