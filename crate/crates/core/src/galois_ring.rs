//! The Galois ring GR(p^N, f) = (Z / p^N)[X] / (m(X)) with `m` the field
//! modulus read as an integer polynomial, and Teichmuller lifts into it.

use std::sync::Arc;

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::padic::{big_mod, expansion_coefficient, PadicError};

/// An element: `f` coefficients in `[0, p^N)`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrElement(pub Vec<u64>);

/// A p-adic valuation known only up to the working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub value: u32,
    /// The element is zero at this precision, so the true valuation is at
    /// least `value` (which then equals the precision).
    pub saturated: bool,
}

#[derive(Debug, Clone)]
pub struct GaloisRing {
    field: Arc<Field>,
    precision: u32,
    modulus: u64,
    poly: Vec<u64>,
}

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.precision == other.precision
    }
}

impl GaloisRing {
    /// GR(p^N, f) over `field`, with `N = precision >= 1` and `p^N < 2^63`.
    pub fn new(field: &Arc<Field>, precision: u32) -> Result<Self, PadicError> {
        if precision == 0 {
            return Err(PadicError::Precision { needed: 1, have: 0 });
        }
        let modulus = (field.p() as u64)
            .checked_pow(precision)
            .filter(|&m| m < 1 << 63)
            .ok_or(PadicError::PrecisionTooLarge(precision))?;
        Ok(GaloisRing {
            field: field.clone(),
            precision,
            modulus,
            poly: field.modulus().iter().map(|&c| c as u64).collect(),
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// `N`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`.
    pub fn characteristic(&self) -> u64 {
        self.modulus
    }

    /// The lifted modulus coefficients `c_0..c_f`.
    pub fn modulus_poly(&self) -> &[u64] {
        &self.poly
    }

    fn f(&self) -> usize {
        self.field.f() as usize
    }

    pub fn zero(&self) -> GrElement {
        GrElement(vec![0; self.f()])
    }

    pub fn one(&self) -> GrElement {
        self.from_int(1)
    }

    /// The image of an integer.
    pub fn from_int(&self, n: i64) -> GrElement {
        let mut v = vec![0; self.f()];
        v[0] = n.rem_euclid(self.modulus as i64) as u64;
        GrElement(v)
    }

    /// The element whose coefficients are the digits of `x` (not the
    /// Teichmuller lift).
    pub fn naive_lift(&self, x: Elem) -> GrElement {
        GrElement(self.field.digits(x).into_iter().map(u64::from).collect())
    }

    /// Reduction mod `p` back to the field.
    pub fn reduce(&self, a: &GrElement) -> Elem {
        let p = self.field.p() as u64;
        let digits: Vec<u32> = a.0.iter().map(|&c| (c % p) as u32).collect();
        self.field.from_digits(&digits)
    }

    pub fn add(&self, a: &GrElement, b: &GrElement) -> GrElement {
        GrElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| ((x as u128 + y as u128) % self.modulus as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GrElement) -> GrElement {
        GrElement(a.0.iter().map(|&x| (self.modulus - x) % self.modulus).collect())
    }

    pub fn sub(&self, a: &GrElement, b: &GrElement) -> GrElement {
        self.add(a, &self.neg(b))
    }

    /// Multiplication by an integer scalar.
    pub fn scale(&self, c: u64, a: &GrElement) -> GrElement {
        let m = self.modulus as u128;
        let c = c as u128 % m;
        GrElement(a.0.iter().map(|&x| (x as u128 * c % m) as u64).collect())
    }

    pub fn mul(&self, a: &GrElement, b: &GrElement) -> GrElement {
        let f = self.f();
        let m = self.modulus as u128;
        let mut prod = vec![0u128; 2 * f - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % m;
            }
        }
        // X^f = -(c_0 + ... + c_{f-1} X^{f-1})
        for top in (f..2 * f - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &mc) in self.poly[..f].iter().enumerate() {
                let idx = top - f + i;
                prod[idx] = (prod[idx] + m - c * mc as u128 % m) % m;
            }
        }
        GrElement(prod[..f].iter().map(|&c| c as u64).collect())
    }

    pub fn pow(&self, a: &GrElement, mut e: u64) -> GrElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// The unique `y` with `y^q = y` and `y = x (mod p)`, found by iterating
    /// `y -> y^q` from the digit lift of `x`.
    pub fn teichmuller(&self, x: Elem) -> Result<GrElement, PadicError> {
        let q = self.field.q() as u64;
        let mut y = self.naive_lift(x);
        for _ in 0..=self.precision + 1 {
            let next = self.pow(&y, q);
            if next == y {
                return Ok(y);
            }
            y = next;
        }
        Err(PadicError::NoConvergence)
    }

    /// `T(x)` for every field element, indexed by encoding.
    pub fn teichmuller_table(&self) -> Result<Vec<GrElement>, PadicError> {
        self.field.elements().map(|x| self.teichmuller(x)).collect()
    }

    pub fn teichmuller_vec(&self, x: &[Elem]) -> Result<Vec<GrElement>, PadicError> {
        let table = self.teichmuller_table()?;
        Ok(x.iter().map(|&v| table[v as usize].clone()).collect())
    }

    /// Largest `j <= N` with `p^j` dividing every coefficient.
    pub fn valuation(&self, a: &GrElement) -> Valuation {
        let p = self.field.p() as u64;
        let v = a.0.iter().filter(|&&c| c != 0).map(|&c| crate::code::nu_p(c, p)).min();
        match v {
            Some(value) => Valuation {
                value,
                saturated: false,
            },
            None => Valuation {
                value: self.precision,
                saturated: true,
            },
        }
    }

    /// Component-wise product.
    pub fn schur(&self, a: &[GrElement], b: &[GrElement]) -> Result<Vec<GrElement>, PadicError> {
        if a.len() != b.len() {
            return Err(PadicError::LengthMismatch(a.len(), b.len()));
        }
        Ok(a.iter().zip(b).map(|(x, y)| self.mul(x, y)).collect())
    }

    /// `a^{o(r)}`: component-wise `r`-th power.
    pub fn schur_pow(&self, a: &[GrElement], r: u64) -> Vec<GrElement> {
        a.iter().map(|x| self.pow(x, r)).collect()
    }

    /// Sum of the components.
    pub fn sigma(&self, a: &[GrElement]) -> GrElement {
        a.iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Reduction modulo `p^j` coefficient-wise (for comparisons at lower
    /// precision).
    pub fn truncate(&self, a: &GrElement, j: u32) -> GrElement {
        let pj = (self.field.p() as u64).pow(j.min(self.precision));
        GrElement(a.0.iter().map(|&c| c % pj).collect())
    }
}

/// Checks the Schur-power expansion of `T(x + y)^{o(r)}` in terms of
/// `X = T(x)` and `Y = T(y)`, comparing both sides modulo `pq`.
pub fn expansion_check(ring: &GaloisRing, x: &[Elem], y: &[Elem], r: u64) -> Result<bool, PadicError> {
    let field = ring.field().clone();
    let q = field.q() as u64;
    let needed = field.f() + 1;
    if ring.precision() < needed {
        return Err(PadicError::Precision {
            needed,
            have: ring.precision(),
        });
    }
    if !(1..q).contains(&r) {
        return Err(PadicError::OutOfRange {
            name: "r",
            value: r,
            max: q - 1,
        });
    }
    if x.len() != y.len() {
        return Err(PadicError::LengthMismatch(x.len(), y.len()));
    }
    let sum: Vec<Elem> = x.iter().zip(y).map(|(&a, &b)| field.add(a, b)).collect();
    let big_x = ring.teichmuller_vec(x)?;
    let big_y = ring.teichmuller_vec(y)?;
    let lhs = ring.schur_pow(&ring.teichmuller_vec(&sum)?, r);

    let mut rhs: Vec<GrElement> = ring
        .schur_pow(&big_x, r)
        .iter()
        .zip(ring.schur_pow(&big_y, r))
        .map(|(a, b)| ring.add(a, &b))
        .collect();
    for i in 1..q {
        let x_exp = if i < r { r - i } else { q - 1 + r - i };
        let c = big_mod(&expansion_coefficient(r, i, &field)?, ring.characteristic());
        let term = ring.schur(&ring.schur_pow(&big_x, x_exp), &ring.schur_pow(&big_y, i))?;
        for (acc, t) in rhs.iter_mut().zip(&term) {
            *acc = ring.add(acc, &ring.scale(c, t));
        }
    }
    Ok(lhs
        .iter()
        .zip(&rhs)
        .all(|(a, b)| ring.truncate(a, needed) == ring.truncate(b, needed)))
}
