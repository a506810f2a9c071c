//! Arithmetic in GF(p^f).
//!
//! Elements are integers in `0..q`. The base-p digits of an element are the
//! coefficients of its polynomial representative, lowest degree first, so `2`
//! in GF(4) is `X` and `3` is `X + 1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::modulus_table::DEFAULT_MODULI;
use crate::poly;

/// A field element, encoded as described in the module docs.
pub type Elem = u32;

/// Largest field order accepted by [`make_field`].
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get precomputed operation tables.
const TABLE_LIMIT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{f} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge { p: u32, f: u32 },
    #[error("modulus must have degree {expected}, got {got} coefficients")]
    ModulusDegree { expected: u32, got: usize },
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible over GF({0})")]
    Reducible(u32),
    #[error("no built-in modulus for GF({p}^{f}); supply one")]
    NoDefaultModulus { p: u32, f: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("element {value} is outside GF({q})")]
    NotAnElement { value: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// GF(p^f) with an explicit monic irreducible modulus.
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("Field")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "GF({})", self.q)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let q32 = q as u32;
    let p = (2..=q32).find(|d| q32 % d == 0)?;
    let mut rest = q32;
    let mut f = 0;
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

/// The built-in modulus for GF(p^f), if the table covers it.
pub fn default_modulus(p: u32, f: u32) -> Option<&'static [u32]> {
    DEFAULT_MODULI
        .iter()
        .find(|(tp, tf, _)| *tp == p && *tf == f)
        .map(|(_, _, m)| *m)
}

type CacheKey = (u32, u32, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Field>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Validates `(p, f, modulus)` and returns the field.
///
/// Without a modulus the built-in table is used. Fields are interned, so
/// repeated calls with the same inputs share one instance.
pub fn make_field(p: u32, f: u32, modulus: Option<&[u32]>) -> Result<Arc<Field>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if f == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u64).checked_pow(f).filter(|&q| q <= MAX_ORDER);
    let Some(q) = q else {
        return Err(FieldError::TooLarge { p, f });
    };
    let modulus: Vec<u32> = match modulus {
        Some(m) => m.to_vec(),
        None => default_modulus(p, f)
            .ok_or(FieldError::NoDefaultModulus { p, f })?
            .to_vec(),
    };
    if modulus.len() != f as usize + 1 {
        return Err(FieldError::ModulusDegree {
            expected: f,
            got: modulus.len(),
        });
    }
    if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
        return Err(FieldError::ModulusCoefficient(c));
    }
    if modulus[f as usize] != 1 {
        return Err(FieldError::NotMonic);
    }
    let key = (p, f, modulus.clone());
    if let Some(field) = cache().lock().unwrap().get(&key) {
        return Ok(field.clone());
    }
    if !poly::is_irreducible(&modulus, p) {
        return Err(FieldError::Reducible(p));
    }
    let mut field = Field {
        p,
        f,
        q: q as u32,
        modulus,
        tables: None,
    };
    if field.q <= TABLE_LIMIT {
        field.tables = Some(field.build_tables());
    }
    let field = Arc::new(field);
    cache().lock().unwrap().entry(key).or_insert_with(|| field.clone());
    Ok(field)
}

impl Field {
    /// GF(q) with its built-in modulus.
    pub fn of_order(q: u64) -> Result<Arc<Field>, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        make_field(p, f, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients `c_0..c_f`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.f == 1
    }

    pub fn check(&self, value: u64) -> Result<Elem, FieldError> {
        if value < self.q as u64 {
            Ok(value as Elem)
        } else {
            Err(FieldError::NotAnElement { value, q: self.q })
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    /// Base-p digits (polynomial coefficients), `f` of them.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.f as usize);
        let mut a = a;
        for _ in 0..self.f {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    /// Inverse of [`Field::digits`]; missing high digits are zero.
    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    /// The image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as Elem,
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a as usize] as Elem,
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as Elem,
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize] as Elem,
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn add_slow(&self, mut a: Elem, mut b: Elem) -> Elem {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_slow(&self, mut a: Elem) -> Elem {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Elem;
        }
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let r = poly::rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let s = self.add_slow(a, b) as u16;
                let m = self.mul_slow(a, b) as u16;
                add[a as usize * q + b as usize] = s;
                add[b as usize * q + a as usize] = s;
                mul[a as usize * q + b as usize] = m;
                mul[b as usize * q + a as usize] = m;
            }
        }
        let neg = (0..self.q).map(|a| self.neg_slow(a) as u16).collect();
        let mut inv = vec![0u16; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("nonzero elements of a field are invertible") as u16;
        }
        Tables { add, mul, neg, inv }
    }
}
