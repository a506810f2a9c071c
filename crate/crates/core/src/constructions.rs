//! Constructors for the classical code families. Every constructor checks the
//! parameters of its output by full enumeration before returning it.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::field::{Elem, Field, FieldError};
use crate::geometry::{GeometryError, ProjectiveSpace};
use crate::matrix::FqMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("constructed code failed its self-check: {0}")]
    SelfCheck(String),
}

fn out_of_range(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::OutOfRange(msg.into())
}

/// What a constructor promises about its output.
struct Expect<'a> {
    n: usize,
    k: usize,
    d: usize,
    weights: Option<&'a [usize]>,
    griesmer: Option<bool>,
}

fn checked(code: LinearCode, want: Expect<'_>) -> Result<LinearCode, ConstructionError> {
    let d = code.min_distance()?;
    if (code.n(), code.k(), d) != (want.n, want.k, want.d) {
        return Err(ConstructionError::SelfCheck(format!(
            "got [{}, {}, {}], expected [{}, {}, {}]",
            code.n(),
            code.k(),
            d,
            want.n,
            want.k,
            want.d
        )));
    }
    if let Some(ws) = want.weights {
        let got = code.weight_distribution()?.nonzero_weights();
        if got != ws {
            return Err(ConstructionError::SelfCheck(format!(
                "weights {got:?}, expected {ws:?}"
            )));
        }
    }
    if let Some(g) = want.griesmer {
        if code.is_griesmer()? != g {
            return Err(ConstructionError::SelfCheck(format!("Griesmer flag should be {g}")));
        }
    }
    Ok(code)
}

fn from_columns(field: &Arc<Field>, k: usize, cols: &[Vec<Elem>]) -> Result<LinearCode, CodeError> {
    let mut gen = FqMatrix::zeros(k, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            gen.set(i, j, v);
        }
    }
    LinearCode::new(field.clone(), gen)
}

fn field_of(q: u64) -> Result<Arc<Field>, ConstructionError> {
    Ok(Field::of_order(q)?)
}

/// The `[(q^k-1)/(q-1), k, q^(k-1)]_q` simplex code: one column per point of
/// PG(k-1, q), in point order.
pub fn simplex(q: u64, k: usize) -> Result<LinearCode, ConstructionError> {
    if q > 9 || !(1..=5).contains(&k) {
        return Err(out_of_range("simplex needs q <= 9 and 1 <= k <= 5"));
    }
    let field = field_of(q)?;
    let space = ProjectiveSpace::new(&field, k)?;
    let code = from_columns(&field, k, space.points())?;
    let d = q.pow(k as u32 - 1) as usize;
    checked(
        code,
        Expect {
            n: space.num_points(),
            k,
            d,
            weights: Some(&[d]),
            griesmer: Some(true),
        },
    )
}

/// The first-order Reed-Muller code `[2^m, m+1, 2^(m-1)]_2`.
pub fn rm1(m: usize) -> Result<LinearCode, ConstructionError> {
    if !(2..=6).contains(&m) {
        return Err(out_of_range("rm1 needs 2 <= m <= 6"));
    }
    let field = field_of(2)?;
    let n = 1usize << m;
    let mut gen = FqMatrix::zeros(m + 1, n);
    for x in 0..n {
        gen.set(0, x, 1);
        for i in 1..=m {
            gen.set(i, x, ((x >> (m - i)) & 1) as Elem);
        }
    }
    let code = LinearCode::new(field, gen)?;
    checked(
        code,
        Expect {
            n,
            k: m + 1,
            d: n / 2,
            weights: Some(&[n / 2, n]),
            griesmer: Some(true),
        },
    )
}

/// The `[6, 3, 4]_4` hexacode, from the conic `y^2 = xz` of PG(2, 4) together
/// with its nucleus.
pub fn hexacode() -> Result<LinearCode, ConstructionError> {
    let field = field_of(4)?;
    let mut cols: Vec<Vec<Elem>> = field.elements().map(|a| vec![1, a, field.mul(a, a)]).collect();
    cols.push(vec![0, 0, 1]);
    cols.push(vec![0, 1, 0]);
    let code = checked(
        from_columns(&field, 3, &cols)?,
        Expect {
            n: 6,
            k: 3,
            d: 4,
            weights: Some(&[4, 6]),
            griesmer: Some(true),
        },
    )?;
    let want = BTreeMap::from([(0, 1), (4, 45), (6, 18)]);
    if code.weight_distribution()?.counts() != &want {
        return Err(ConstructionError::SelfCheck("hexacode weight distribution".into()));
    }
    Ok(code)
}

/// The Hermitian-curve code `[q0^3+1, 3, q0^3-q0]_{q0^2}`: columns are the
/// points of `x^(q0+1) + y^(q0+1) + z^(q0+1) = 0` in PG(2, q0^2).
pub fn unital(q0: u64) -> Result<LinearCode, ConstructionError> {
    if !(2..=3).contains(&q0) {
        return Err(out_of_range("unital needs q0 in {2, 3}"));
    }
    let field = field_of(q0 * q0)?;
    let space = ProjectiveSpace::new(&field, 3)?;
    let e = q0 + 1;
    let cols: Vec<Vec<Elem>> = space
        .points()
        .iter()
        .filter(|p| {
            let s = p.iter().fold(0, |acc, &x| field.add(acc, field.pow(x, e)));
            s == 0
        })
        .cloned()
        .collect();
    let n = (q0.pow(3) + 1) as usize;
    if cols.len() != n {
        return Err(ConstructionError::SelfCheck(format!(
            "Hermitian curve has {} points, expected {n}",
            cols.len()
        )));
    }
    let d = (q0.pow(3) - q0) as usize;
    checked(
        from_columns(&field, 3, &cols)?,
        Expect {
            n,
            k: 3,
            d,
            weights: Some(&[d, d + q0 as usize]),
            griesmer: Some(true),
        },
    )
}

/// First `(b, c)` (b outer, c inner, encoding order) with `t^2 + b t + c`
/// irreducible over the field.
pub fn first_irreducible_quadratic(field: &Field) -> (Elem, Elem) {
    for b in field.elements() {
        for c in field.elements() {
            let has_root = field.elements().any(|t| {
                let v = field.add(field.add(field.mul(t, t), field.mul(b, t)), c);
                v == 0
            });
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// The elliptic-quadric code `[q^2+1, 4, q^2-q]_q`: columns are the points of
/// `x0 x1 + x2^2 + b x2 x3 + c x3^2 = 0` in PG(3, q).
pub fn ovoid(q: u64) -> Result<LinearCode, ConstructionError> {
    if !(2..=4).contains(&q) {
        return Err(out_of_range("ovoid needs q in {2, 3, 4}"));
    }
    let field = field_of(q)?;
    let (b, c) = first_irreducible_quadratic(&field);
    let space = ProjectiveSpace::new(&field, 4)?;
    let f = &field;
    let cols: Vec<Vec<Elem>> = space
        .points()
        .iter()
        .filter(|x| {
            let quad = f.add(
                f.mul(x[0], x[1]),
                f.add(
                    f.mul(x[2], x[2]),
                    f.add(f.mul(b, f.mul(x[2], x[3])), f.mul(c, f.mul(x[3], x[3]))),
                ),
            );
            quad == 0
        })
        .cloned()
        .collect();
    let n = (q * q + 1) as usize;
    if cols.len() != n {
        return Err(ConstructionError::SelfCheck(format!(
            "quadric has {} points, expected {n}",
            cols.len()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let m = FqMatrix::from_rows(&[&cols[i], &cols[j], &cols[l]]).expect("square");
                if m.rank(f) < 3 {
                    return Err(ConstructionError::SelfCheck("three collinear quadric points".into()));
                }
            }
        }
    }
    let d = (q * q - q) as usize;
    checked(
        from_columns(&field, 4, &cols)?,
        Expect {
            n,
            k: 4,
            d,
            weights: Some(&[d, (q * q) as usize]),
            griesmer: Some(true),
        },
    )
}

/// The `[n, 1, n]_q` repetition code.
pub fn repetition(q: u64, n: usize) -> Result<LinearCode, ConstructionError> {
    if n == 0 {
        return Err(out_of_range("repetition needs n >= 1"));
    }
    let field = field_of(q)?;
    let code = LinearCode::from_rows(field, &[vec![1; n]])?;
    checked(
        code,
        Expect {
            n,
            k: 1,
            d: n,
            weights: Some(&[n]),
            griesmer: Some(true),
        },
    )
}

/// The `[n, k, n-k+1]_q` Reed-Solomon code evaluating polynomials of degree
/// below `k` at the first `n` field elements.
pub fn reed_solomon(q: u64, n: usize, k: usize) -> Result<LinearCode, ConstructionError> {
    if !(1 <= k && k <= n && n as u64 <= q) {
        return Err(out_of_range("reed_solomon needs 1 <= k <= n <= q"));
    }
    let field = field_of(q)?;
    let rows: Vec<Vec<Elem>> = (0..k)
        .map(|i| (0..n as Elem).map(|x| field.pow(x, i as u64)).collect())
        .collect();
    let code = LinearCode::from_rows(field, &rows)?;
    checked(
        code,
        Expect {
            n,
            k,
            d: n - k + 1,
            weights: None,
            griesmer: Some(true),
        },
    )
}

/// `t` copies of the generator side by side; every weight is multiplied by `t`.
pub fn replicate(code: &LinearCode, t: usize) -> Result<LinearCode, ConstructionError> {
    if t == 0 {
        return Err(out_of_range("replicate needs t >= 1"));
    }
    let (k, n) = (code.k(), code.n());
    let mut gen = FqMatrix::zeros(k, n * t);
    for copy in 0..t {
        for i in 0..k {
            for j in 0..n {
                gen.set(i, copy * n + j, code.gen().get(i, j));
            }
        }
    }
    let out = LinearCode::new(code.field().clone(), gen)?;
    let weights: Vec<usize> = code
        .weight_distribution()?
        .nonzero_weights()
        .into_iter()
        .map(|w| w * t)
        .collect();
    checked(
        out,
        Expect {
            n: n * t,
            k,
            d: code.min_distance()? * t,
            weights: Some(&weights),
            griesmer: None,
        },
    )
}
