//! Hunting for Griesmer codes as point multisets of PG(k-1, q).
//!
//! A multiset of `n = g_q(k, d)` points in which every hyperplane holds at
//! most `n - d` points is a Griesmer `[n, k, d]_q` code. Every code found is
//! re-verified by enumeration and checked against the open divisor bound.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::code::{griesmer_bound, nu_p, CodeError, LinearCode, WeightDistribution};
use crate::field::{make_field, Field, FieldError};
use crate::gcode::{write_gcode, GcodeError};
use crate::geometry::{GeometryError, ProjectiveSpace};
use crate::lab::{verify_theorem, LabError, Status, Theorem, TheoremVerdict};
use crate::matrix::FqMatrix;

/// Exhaustive search refuses instances with more candidate multisets.
pub const EXHAUSTIVE_CAP: u128 = 10_000_000;

/// Largest projective space the search builds incidence tables for.
pub const MAX_POINTS: usize = 10_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    Gcode(#[from] GcodeError),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("PG({km1}, {q}) has {points} points, above the limit of {MAX_POINTS}")]
    SpaceTooLarge { km1: usize, q: u32, points: usize },
    #[error("cannot serialise report")]
    Json(#[from] serde_json::Error),
    #[error("cannot write {}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Random,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "random" => Ok(Strategy::Random),
            _ => Err(format!("unknown strategy {s:?}; expected exhaustive or random")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchTask {
    pub p: u32,
    pub f: u32,
    pub k: usize,
    pub d: u64,
    pub strategy: Strategy,
    /// Candidates examined: DFS nodes when exhaustive, moves when random.
    pub budget: u64,
    pub seed: u64,
    /// Apply the parameter recipe for counterexample hunting. Off only for
    /// small smoke instances.
    pub enforce_recipe: bool,
}

/// The hunting recipe: non-prime `q >= 8`, `4 <= k <= q - 1` and
/// `f + 1 <= nu_p(d) < min(f(q-2), f(k-1))`.
pub fn check_recipe(p: u32, f: u32, k: usize, d: u64) -> Result<(), SearchError> {
    let q = (p as u64).pow(f);
    if f < 2 {
        return Err(SearchError::Constraint(format!("q = {q} is prime")));
    }
    if q < 8 {
        return Err(SearchError::Constraint(format!("q = {q} is below 8")));
    }
    if !(4..q).contains(&(k as u64)) {
        return Err(SearchError::Constraint(format!("k = {k} is outside [4, {}]", q - 1)));
    }
    if d == 0 {
        return Err(SearchError::Constraint("d must be positive".into()));
    }
    let nu = nu_p(d, p as u64) as u64;
    let f = f as u64;
    let hi = (f * (q - 2)).min(f * (k as u64 - 1));
    if nu < f + 1 || nu >= hi {
        return Err(SearchError::Constraint(format!(
            "nu_p(d) = {nu} is outside [{}, {hi})",
            f + 1
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct FoundCode {
    pub points: Vec<usize>,
    pub weight_distribution: WeightDistribution,
    pub conjecture: TheoremVerdict,
    pub gcode: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub task: SearchTask,
    pub q: u64,
    pub n: u64,
    pub gamma: u64,
    /// Strategy actually run; exhaustive falls back to random above the cap.
    pub strategy: Strategy,
    /// Number of candidate multisets, saturating at `u64::MAX`.
    pub candidate_multisets: u64,
    pub examined: u64,
    pub budget_exhausted: bool,
    /// Griesmer codes reached, duplicates included.
    pub hits: u64,
    pub codes: Vec<FoundCode>,
    pub conjecture_failures: usize,
    pub note: Option<String>,
}

/// Number of multisets of size `n` over `points` points with every
/// multiplicity at most `gamma`, saturating.
pub fn count_multisets(points: usize, n: usize, gamma: usize) -> u128 {
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for _ in 0..points {
        let mut next = vec![0u128; n + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for m in 0..=gamma.min(n - s) {
                next[s + m] = next[s + m].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[n]
}

struct Instance {
    field: std::sync::Arc<Field>,
    space: std::sync::Arc<ProjectiveSpace>,
    n: usize,
    gamma: u64,
    /// Largest admissible hyperplane count, `n - d`.
    cap: u32,
}

impl Instance {
    fn through(&self, pt: usize) -> &[u32] {
        self.space.hyperplane_points(pt)
    }

    fn code(&self, points: &[usize]) -> Result<LinearCode, CodeError> {
        let k = self.space.k();
        let mut gen = FqMatrix::zeros(k, points.len());
        for (j, &pt) in points.iter().enumerate() {
            for (i, &v) in self.space.point(pt).iter().enumerate() {
                gen.set(i, j, v);
            }
        }
        LinearCode::new(self.field.clone(), gen)
    }
}

struct Collector<'a> {
    inst: &'a Instance,
    seen: HashSet<WeightDistribution>,
    codes: Vec<FoundCode>,
    hits: u64,
    d: u64,
}

impl Collector<'_> {
    fn record(&mut self, points: &[usize]) -> Result<(), SearchError> {
        self.hits += 1;
        let mut points = points.to_vec();
        points.sort_unstable();
        let code = self.inst.code(&points)?;
        assert!(
            code.is_griesmer()? && code.min_distance()? as u64 == self.d,
            "hyperplane bound guarantees a Griesmer code"
        );
        let wd = code.weight_distribution()?.clone();
        if !self.seen.insert(wd.clone()) {
            return Ok(());
        }
        let id = format!("found-{:03}", self.codes.len());
        let conjecture = verify_theorem(&code, &id, Theorem::Conj1)?;
        self.codes.push(FoundCode {
            points,
            weight_distribution: wd,
            conjecture,
            gcode: write_gcode(&code),
        });
        Ok(())
    }
}

struct Dfs<'a, 'b> {
    inst: &'a Instance,
    counts: Vec<u32>,
    chosen: Vec<usize>,
    examined: u64,
    budget: u64,
    out: &'b mut Collector<'a>,
}

impl Dfs<'_, '_> {
    /// Extends `chosen` with points `>= start`. Returns false once the
    /// budget runs out.
    fn extend(&mut self, start: usize) -> Result<bool, SearchError> {
        if self.chosen.len() == self.inst.n {
            self.out.record(&self.chosen)?;
            return Ok(true);
        }
        let inst = self.inst;
        for pt in start..inst.space.num_points() {
            let mult = self.chosen.iter().rev().take_while(|&&c| c == pt).count() as u64;
            if mult >= inst.gamma {
                continue;
            }
            if self.examined >= self.budget {
                return Ok(false);
            }
            self.examined += 1;
            let through = inst.through(pt);
            let ok = through.iter().all(|&h| self.counts[h as usize] < inst.cap);
            if !ok {
                continue;
            }
            for &h in through {
                self.counts[h as usize] += 1;
            }
            self.chosen.push(pt);
            let go_on = self.extend(pt)?;
            self.chosen.pop();
            for &h in through {
                self.counts[h as usize] -= 1;
            }
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn random_search(inst: &Instance, budget: u64, seed: u64, out: &mut Collector<'_>) -> Result<u64, SearchError> {
    let np = inst.space.num_points();
    let cap = inst.cap;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stall_limit = 50 * np as u64;
    let mut examined = 0;

    'restart: while examined < budget {
        let mut mult = vec![0u64; np];
        let mut chosen = Vec::with_capacity(inst.n);
        while chosen.len() < inst.n {
            let pt = rng.gen_range(0..np);
            if mult[pt] < inst.gamma {
                mult[pt] += 1;
                chosen.push(pt);
            }
        }
        let mut counts = vec![0u32; np];
        for &pt in &chosen {
            for &h in inst.through(pt) {
                counts[h as usize] += 1;
            }
        }
        let mut excess: u64 = counts.iter().map(|&c| c.saturating_sub(cap) as u64).sum();
        let mut stall = 0;
        loop {
            if excess == 0 {
                out.record(&chosen)?;
                continue 'restart;
            }
            if examined >= budget || stall >= stall_limit {
                continue 'restart;
            }
            examined += 1;
            let slot = rng.gen_range(0..inst.n);
            let (old, new) = (chosen[slot], rng.gen_range(0..np));
            if old == new || mult[new] >= inst.gamma {
                stall += 1;
                continue;
            }
            let mut delta: i64 = 0;
            for &h in inst.through(old) {
                let c = &mut counts[h as usize];
                if *c > cap {
                    delta -= 1;
                }
                *c -= 1;
            }
            for &h in inst.through(new) {
                let c = &mut counts[h as usize];
                *c += 1;
                if *c > cap {
                    delta += 1;
                }
            }
            if delta > 0 {
                for &h in inst.through(new) {
                    counts[h as usize] -= 1;
                }
                for &h in inst.through(old) {
                    counts[h as usize] += 1;
                }
                stall += 1;
                continue;
            }
            stall = if delta < 0 { 0 } else { stall + 1 };
            excess = (excess as i64 + delta) as u64;
            mult[old] -= 1;
            mult[new] += 1;
            chosen[slot] = new;
        }
    }
    Ok(examined)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SearchError + '_ {
    move |source| SearchError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes every distinct code found, and each open-bound failure with its
/// verdict under `findings/`.
pub fn write_findings(report: &SearchReport, dir: &Path) -> Result<(), SearchError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (i, found) in report.codes.iter().enumerate() {
        let path = dir.join(format!("found-{i:03}.gcode"));
        std::fs::write(&path, &found.gcode).map_err(io_err(&path))?;
        if found.conjecture.status == Status::Fail {
            let fdir = dir.join("findings");
            std::fs::create_dir_all(&fdir).map_err(io_err(&fdir))?;
            let g = fdir.join(format!("finding-{i:03}.gcode"));
            std::fs::write(&g, &found.gcode).map_err(io_err(&g))?;
            let j = fdir.join(format!("finding-{i:03}.json"));
            let body = serde_json::to_string_pretty(&found.conjecture)?;
            std::fs::write(&j, body + "\n").map_err(io_err(&j))?;
        }
    }
    let path = dir.join("report.json");
    let body = serde_json::to_string_pretty(report)?;
    std::fs::write(&path, body + "\n").map_err(io_err(&path))?;
    Ok(())
}

pub fn search(task: &SearchTask) -> Result<SearchReport, SearchError> {
    if task.enforce_recipe {
        check_recipe(task.p, task.f, task.k, task.d)?;
    }
    if task.k < 2 || task.d == 0 {
        return Err(SearchError::Constraint("need k >= 2 and d >= 1".into()));
    }
    let field = make_field(task.p, task.f, None)?;
    let q = field.q() as u64;
    crate::code::check_guard(field.q(), task.k)?;
    let n = griesmer_bound(q, task.k as u64, task.d)?;
    let qk1 = q.checked_pow(task.k as u32 - 1).unwrap_or(u64::MAX);
    let gamma = task.d.div_ceil(qk1);
    let points = ProjectiveSpace::count_points(q, task.k);
    if points > MAX_POINTS as u64 {
        return Err(SearchError::SpaceTooLarge {
            km1: task.k - 1,
            q: field.q(),
            points: points as usize,
        });
    }
    let space = ProjectiveSpace::new(&field, task.k)?;
    let inst = Instance {
        field: field.clone(),
        space: space.clone(),
        n: n as usize,
        gamma,
        cap: (n - task.d) as u32,
    };
    let candidates = count_multisets(space.num_points(), inst.n, gamma as usize);
    let mut out = Collector {
        inst: &inst,
        seen: HashSet::new(),
        codes: Vec::new(),
        hits: 0,
        d: task.d,
    };

    let mut strategy = task.strategy;
    let mut note = None;
    if strategy == Strategy::Exhaustive && candidates > EXHAUSTIVE_CAP {
        strategy = Strategy::Random;
        note = Some(format!(
            "{candidates} candidate multisets exceed the exhaustive cap of {EXHAUSTIVE_CAP}; ran random"
        ));
    }
    let (examined, exhausted) = if task.budget == 0 {
        (0, true)
    } else {
        match strategy {
            Strategy::Exhaustive => {
                let mut dfs = Dfs {
                    inst: &inst,
                    counts: vec![0; space.num_points()],
                    chosen: Vec::with_capacity(inst.n),
                    examined: 0,
                    budget: task.budget,
                    out: &mut out,
                };
                let finished = dfs.extend(0)?;
                (dfs.examined, !finished)
            }
            Strategy::Random => {
                let examined = random_search(&inst, task.budget, task.seed, &mut out)?;
                (examined, true)
            }
        }
    };
    let conjecture_failures = out.codes.iter().filter(|c| c.conjecture.status == Status::Fail).count();
    Ok(SearchReport {
        task: task.clone(),
        q,
        n,
        gamma,
        strategy,
        candidate_multisets: u64::try_from(candidates).unwrap_or(u64::MAX),
        examined,
        budget_exhausted: exhausted,
        hits: out.hits,
        codes: out.codes,
        conjecture_failures,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn task(p: u32, f: u32, k: usize, d: u64, strategy: Strategy, budget: u64) -> SearchTask {
        SearchTask {
            p,
            f,
            k,
            d,
            strategy,
            budget,
            seed: 7,
            enforce_recipe: false,
        }
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(count_multisets(21, 6, 1), 54264);
        // Unrestricted multiplicity: binom(N + n - 1, n).
        assert_eq!(count_multisets(7, 3, 3), 84);
        assert_eq!(count_multisets(3, 5, 1), 0);
    }

    #[test]
    fn recipe() {
        assert!(check_recipe(2, 3, 4, 16).is_ok());
        assert!(matches!(check_recipe(7, 1, 4, 49), Err(SearchError::Constraint(_))));
        assert!(check_recipe(2, 2, 3, 8).is_err());
        assert!(check_recipe(2, 3, 8, 16).is_err());
        assert!(check_recipe(2, 3, 4, 8).is_err());
        assert!(check_recipe(2, 3, 4, 64).is_ok());
        assert!(check_recipe(2, 3, 4, 512).is_err());
    }

    #[test]
    fn zero_budget_is_empty() {
        let r = search(&task(2, 2, 3, 4, Strategy::Random, 0)).unwrap();
        assert_eq!((r.examined, r.hits, r.codes.len()), (0, 0, 0));
    }

    #[test]
    fn simplex_by_exhaustion() {
        let r = search(&task(2, 1, 3, 4, Strategy::Exhaustive, 1_000_000)).unwrap();
        assert!(!r.budget_exhausted);
        assert_eq!(r.hits, 1);
        assert_eq!(r.codes[0].points, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn random_finds_small_codes() {
        let r = search(&task(3, 1, 3, 6, Strategy::Random, 20_000)).unwrap();
        assert!(r.hits > 0);
        for c in &r.codes {
            assert!(crate::gcode::parse_gcode(&c.gcode).unwrap().is_griesmer().unwrap());
        }
    }
}
