//! Points and hyperplanes of PG(k-1, q) and the multiset view of a code.
//!
//! A point is stored in canonical form (first nonzero coordinate 1). Points
//! are numbered so that vectors with more leading zeros come first and ties
//! are broken lexicographically; a hyperplane shares the index of its normal.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::code::{check_guard, CodeError, LinearCode};
use crate::field::{Elem, Field};
use crate::matrix::FqMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("the zero vector is not a point")]
    ZeroVector,
    #[error("vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("multiset is empty")]
    EmptyMultiset,
    #[error("subspace of dimension {dim} in a space of dimension {k} is not proper and nonzero")]
    TrivialSubspace { dim: usize, k: usize },
    #[error("multisets live in different spaces")]
    SpaceMismatch,
}

/// PG(k-1, q) with its points in index order.
#[derive(Debug)]
pub struct ProjectiveSpace {
    field: Arc<Field>,
    k: usize,
    points: Vec<Vec<Elem>>,
    incidence: OnceLock<Vec<Vec<u32>>>,
}

type SpaceKey = (u32, u32, Vec<u32>, usize);

fn spaces() -> &'static Mutex<HashMap<SpaceKey, Arc<ProjectiveSpace>>> {
    static SPACES: OnceLock<Mutex<HashMap<SpaceKey, Arc<ProjectiveSpace>>>> = OnceLock::new();
    SPACES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Scales `v` so its first nonzero entry is 1.
pub fn canonicalize(field: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = v.iter().copied().find(|&x| x != 0)?;
    let inv = field.inv(lead).expect("lead is nonzero");
    Some(v.iter().map(|&x| field.mul(x, inv)).collect())
}

pub(crate) fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

impl ProjectiveSpace {
    /// `(q^k - 1) / (q - 1)` without building the space, saturating.
    pub fn count_points(q: u64, k: usize) -> u64 {
        (0..k).fold(0u64, |acc, _| acc.saturating_mul(q).saturating_add(1))
    }

    /// The cached space of projective dimension `k - 1` over `field`.
    pub fn new(field: &Arc<Field>, k: usize) -> Result<Arc<Self>, GeometryError> {
        if k == 0 {
            return Err(GeometryError::Dimension { expected: 1, got: 0 });
        }
        check_guard(field.q(), k)?;
        let key = (field.p(), field.f(), field.modulus().to_vec(), k);
        if let Some(s) = spaces().lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let q = field.q() as u64;
        let mut points = Vec::new();
        for lead in (0..k).rev() {
            let tail_len = k - 1 - lead;
            for mut t in 0..q.pow(tail_len as u32) {
                let mut v = vec![0; k];
                v[lead] = 1;
                for pos in (lead + 1..k).rev() {
                    v[pos] = (t % q) as Elem;
                    t /= q;
                }
                points.push(v);
            }
        }
        let space = Arc::new(ProjectiveSpace {
            field: field.clone(),
            k,
            points,
            incidence: OnceLock::new(),
        });
        Ok(spaces().lock().unwrap().entry(key).or_insert(space).clone())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Vector-space dimension `k` (projective dimension `k - 1`).
    pub fn k(&self) -> usize {
        self.k
    }

    /// `(q^k - 1) / (q - 1)`, also the number of hyperplanes.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, index: usize) -> &[Elem] {
        &self.points[index]
    }

    pub fn points(&self) -> &[Vec<Elem>] {
        &self.points
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[Elem]) -> Result<usize, GeometryError> {
        if v.len() != self.k {
            return Err(GeometryError::Dimension {
                expected: self.k,
                got: v.len(),
            });
        }
        let lead = v.iter().position(|&x| x != 0).ok_or(GeometryError::ZeroVector)?;
        let c = canonicalize(&self.field, v).expect("nonzero");
        let q = self.field.q() as u64;
        let tail_len = (self.k - 1 - lead) as u32;
        let offset = (q.pow(tail_len) - 1) / (q - 1);
        let tail = c[lead + 1..].iter().fold(0u64, |acc, &d| acc * q + d as u64);
        Ok((offset + tail) as usize)
    }

    /// Whether point `pt` lies on the hyperplane with normal point `h`.
    pub fn incident(&self, h: usize, pt: usize) -> bool {
        dot(&self.field, &self.points[h], &self.points[pt]) == 0
    }

    /// Points on each hyperplane, computed once per space.
    pub fn hyperplane_points(&self, h: usize) -> &[u32] {
        &self.incidence.get_or_init(|| {
            (0..self.num_points())
                .map(|h| {
                    (0..self.num_points())
                        .filter(|&pt| self.incident(h, pt))
                        .map(|pt| pt as u32)
                        .collect()
                })
                .collect()
        })[h]
    }
}

/// A multiset of points of PG(k-1, q).
#[derive(Debug, Clone)]
pub struct PointMultiset {
    space: Arc<ProjectiveSpace>,
    counts: BTreeMap<usize, u64>,
    total: u64,
}

impl PartialEq for PointMultiset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.counts == other.counts
    }
}

/// Outcome of a divisibility test: the first hyperplane violating the
/// congruence, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl PointMultiset {
    pub fn empty(space: Arc<ProjectiveSpace>) -> Self {
        PointMultiset {
            space,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn add(&mut self, point: usize, mult: u64) {
        assert!(point < self.space.num_points(), "point index out of range");
        if mult > 0 {
            *self.counts.entry(point).or_insert(0) += mult;
            self.total += mult;
        }
    }

    /// Adds the point spanned by `v`.
    pub fn add_vector(&mut self, v: &[Elem], mult: u64) -> Result<usize, GeometryError> {
        let idx = self.space.index_of(v)?;
        self.add(idx, mult);
        Ok(idx)
    }

    pub fn multiplicity(&self, point: usize) -> u64 {
        self.counts.get(&point).copied().unwrap_or(0)
    }

    /// Points with positive multiplicity, with multiplicities, by index.
    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    /// `#M`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// `M(H)` for the hyperplane with normal point `h`.
    pub fn hyperplane_count(&self, h: usize) -> u64 {
        self.counts
            .iter()
            .filter(|(&pt, _)| self.space.incident(h, pt))
            .map(|(_, &m)| m)
            .sum()
    }

    /// `M(H)` for every hyperplane, by index.
    pub fn spectrum(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.space.num_points()];
        for (h, slot) in out.iter_mut().enumerate() {
            *slot = self.hyperplane_count(h);
        }
        out
    }

    /// Maximum point multiplicity.
    pub fn gamma(&self) -> Result<u64, GeometryError> {
        self.counts.values().copied().max().ok_or(GeometryError::EmptyMultiset)
    }

    /// Points attaining the maximum multiplicity.
    pub fn endpoints(&self) -> Vec<usize> {
        let Ok(g) = self.gamma() else {
            return Vec::new();
        };
        self.counts.iter().filter(|(_, &m)| m == g).map(|(&pt, _)| pt).collect()
    }

    /// Whether `M(H) = n (mod delta)` for every hyperplane `H`.
    pub fn divisibility_check(&self, n: u64, delta: u64) -> DivisibilityCheck {
        assert!(delta >= 1, "divisor must be positive");
        let witness = (0..self.space.num_points()).find(|&h| self.hyperplane_count(h) % delta != n % delta);
        DivisibilityCheck {
            holds: witness.is_none(),
            witness,
        }
    }

    /// `M|_U` where `U = {x : N x = 0}` for the rows `N` of `normals`.
    pub fn restrict(&self, normals: &FqMatrix) -> Result<PointMultiset, GeometryError> {
        let field = self.space.field();
        let k = self.space.k();
        if normals.cols() != k {
            return Err(GeometryError::Dimension {
                expected: k,
                got: normals.cols(),
            });
        }
        let dim = k - normals.rank(field);
        if dim == 0 || dim == k {
            return Err(GeometryError::TrivialSubspace { dim, k });
        }
        let mut out = PointMultiset::empty(self.space.clone());
        for (&pt, &m) in &self.counts {
            let x = self.space.point(pt);
            if normals.row_iter().all(|nr| dot(field, nr, x) == 0) {
                out.add(pt, m);
            }
        }
        Ok(out)
    }

    /// `M|_U` expressed in PG(dim U - 1, q) through a fixed basis of `U`
    /// (the null space of `normals`).
    pub fn restrict_in_subspace(&self, normals: &FqMatrix) -> Result<PointMultiset, GeometryError> {
        let restricted = self.restrict(normals)?;
        let field = self.space.field();
        let basis = normals.null_space(field);
        let sub = ProjectiveSpace::new(field, basis.rows())?;
        let mut out = PointMultiset::empty(sub);
        for (&pt, &m) in restricted.counts() {
            let coords = basis
                .solve_left(field, self.space.point(pt))
                .expect("point lies in the subspace");
            out.add_vector(&coords, m)?;
        }
        Ok(out)
    }

    /// Hyperplane-section `M|_H` re-coordinatized inside `H` (normal point `h`).
    pub fn hyperplane_section(&self, h: usize) -> Result<PointMultiset, GeometryError> {
        let normals = FqMatrix::from_rows(&[self.space.point(h)]).expect("single row");
        self.restrict_in_subspace(&normals)
    }
}

/// The columns of a full-length code as a point multiset.
pub fn multiset_of(code: &LinearCode) -> Result<PointMultiset, GeometryError> {
    let space = ProjectiveSpace::new(code.field(), code.k())?;
    let mut m = PointMultiset::empty(space);
    for j in 0..code.n() {
        let col = code.gen().column(j);
        if col.iter().all(|&v| v == 0) {
            return Err(CodeError::ZeroColumn(j).into());
        }
        m.add_vector(&col, 1)?;
    }
    Ok(m)
}

/// For each column, the index of its point.
pub fn column_points(code: &LinearCode) -> Result<Vec<usize>, GeometryError> {
    let space = ProjectiveSpace::new(code.field(), code.k())?;
    (0..code.n()).map(|j| space.index_of(&code.gen().column(j))).collect()
}

/// `wt(aG)` computed as `n - M(H_a)`.
pub fn weight_via_geometry(code: &LinearCode, msg: &[Elem]) -> Result<usize, GeometryError> {
    let m = multiset_of(code)?;
    let h = m.space().index_of(msg)?;
    Ok(code.n() - m.hyperplane_count(h) as usize)
}

/// `g_q(k, t)` with `t = d - (ceil(d / q^(k-1)) - 1) q^(k-1)`: the lower bound on
/// the number of endpoints of an `[n, k, d]_q` Griesmer code.
pub fn endpoint_lower_bound(q: u64, k: u64, d: u64) -> Result<u64, CodeError> {
    if k == 0 || d == 0 {
        return Err(CodeError::InvalidParameters("k and d must be positive".into()));
    }
    let top = q
        .checked_pow((k - 1) as u32)
        .ok_or_else(|| CodeError::InvalidParameters("q^(k-1) overflows".into()))?;
    let t = d - (d.div_ceil(top) - 1) * top;
    assert!(t >= 1, "t is positive for positive d");
    crate::code::griesmer_bound(q, k, t)
}

/// Whether every column spans a different point.
pub fn is_projective(code: &LinearCode) -> Result<bool, GeometryError> {
    Ok(multiset_of(code)?.gamma()? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<Field> {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn point_counts_and_order() {
        let s = ProjectiveSpace::new(&field(2), 3).unwrap();
        assert_eq!(s.num_points(), 7);
        assert_eq!(s.point(0), &[0, 0, 1]);
        assert_eq!(s.point(1), &[0, 1, 0]);
        assert_eq!(s.point(2), &[0, 1, 1]);
        assert_eq!(s.point(3), &[1, 0, 0]);
        assert_eq!(s.point(6), &[1, 1, 1]);
        let s = ProjectiveSpace::new(&field(3), 3).unwrap();
        assert_eq!(s.num_points(), 13);
    }

    #[test]
    fn index_formula_inverts_enumeration() {
        for (q, k) in [(2, 4), (3, 3), (4, 3), (5, 2)] {
            let f = field(q);
            let s = ProjectiveSpace::new(&f, k).unwrap();
            for (i, p) in s.points().iter().enumerate() {
                assert_eq!(s.index_of(p).unwrap(), i);
                for c in 1..f.q() {
                    let scaled: Vec<Elem> = p.iter().map(|&x| f.mul(c, x)).collect();
                    assert_eq!(s.index_of(&scaled).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn zero_vector_rejected() {
        let s = ProjectiveSpace::new(&field(2), 2).unwrap();
        assert_eq!(s.index_of(&[0, 0]), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn every_hyperplane_of_pg22_has_three_points() {
        let s = ProjectiveSpace::new(&field(2), 3).unwrap();
        let mut m = PointMultiset::empty(s.clone());
        for i in 0..7 {
            m.add(i, 1);
        }
        assert!(m.spectrum().iter().all(|&c| c == 3));
        assert_eq!(m.gamma().unwrap(), 1);
        assert_eq!(m.endpoints().len(), 7);
        assert_eq!(s.hyperplane_points(4).len(), 3);
    }

    #[test]
    fn endpoint_bound_examples() {
        assert_eq!(endpoint_lower_bound(2, 3, 4).unwrap(), 7);
        assert_eq!(endpoint_lower_bound(4, 3, 4).unwrap(), 6);
        // k = 1: t = d - (d - 1) = 1, so the bound is a single endpoint.
        assert_eq!(endpoint_lower_bound(2, 1, 5).unwrap(), 1);
    }

    #[test]
    fn restriction_errors_on_trivial_subspaces() {
        let s = ProjectiveSpace::new(&field(2), 3).unwrap();
        let m = PointMultiset::empty(s);
        let zero = FqMatrix::zeros(1, 3);
        assert!(matches!(
            m.restrict(&zero),
            Err(GeometryError::TrivialSubspace { dim: 3, .. })
        ));
        assert!(matches!(
            m.restrict(&FqMatrix::identity(3)),
            Err(GeometryError::TrivialSubspace { dim: 0, .. })
        ));
        assert!(m.gamma().is_err());
    }

    #[test]
    fn restriction_to_a_line_in_subspace_coordinates() {
        let f = field(2);
        let s = ProjectiveSpace::new(&f, 3).unwrap();
        let mut m = PointMultiset::empty(s.clone());
        for i in 0..7 {
            m.add(i, 1);
        }
        let sec = m.hyperplane_section(6).unwrap();
        assert_eq!(sec.space().k(), 2);
        assert_eq!(sec.total(), 3);
        assert_eq!(sec.gamma().unwrap(), 1);
        // A plane of PG(2,2) restricted to a point: one point.
        let normals = FqMatrix::from_rows(&[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(m.restrict(&normals).unwrap().total(), 1);
    }

    #[test]
    fn divisibility_with_witness() {
        let s = ProjectiveSpace::new(&field(2), 2).unwrap();
        let mut m = PointMultiset::empty(s);
        m.add(0, 1);
        m.add(1, 1);
        // Two points of PG(1,2): hyperplanes are single points, counts 1,1,0.
        let c = m.divisibility_check(2, 2);
        assert!(!c.holds);
        assert_eq!(c.witness, Some(0));
        assert!(m.divisibility_check(2, 1).holds);
    }
}
