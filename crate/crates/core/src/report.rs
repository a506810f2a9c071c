//! Per-code divisibility report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::code::{nu_p, CodeError, LinearCode, WeightDistribution};
use crate::geometry::{multiset_of, GeometryError};
use crate::lab::{verify_theorem, LabError, Status, Theorem, TheoremVerdict};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lab(#[from] LabError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub code: String,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub griesmer_length: u64,
    pub is_griesmer: bool,
    pub weight_distribution: WeightDistribution,
    pub divisor: u64,
    pub p_exponent: u32,
    pub gamma: u64,
    pub endpoints: usize,
    pub verdicts: Vec<TheoremVerdict>,
}

pub fn analyze(code: &LinearCode, id: &str) -> Result<DivisibilityReport, ReportError> {
    let d = code.min_distance()? as u64;
    let divisor = code.weight_distribution()?.divisor();
    let m = multiset_of(code)?;
    let verdicts = Theorem::ALL
        .iter()
        .map(|&t| verify_theorem(code, id, t))
        .collect::<Result<_, _>>()?;
    Ok(DivisibilityReport {
        code: id.to_string(),
        q: code.q() as u64,
        n: code.n(),
        k: code.k(),
        d,
        griesmer_length: code.griesmer_length()?,
        is_griesmer: code.is_griesmer()?,
        weight_distribution: code.weight_distribution()?.clone(),
        divisor,
        p_exponent: nu_p(divisor, code.field().p() as u64),
        gamma: m.gamma()?,
        endpoints: m.endpoints().len(),
        verdicts,
    })
}

impl DivisibilityReport {
    /// Plain-text body. The code id is left out so that the same code read
    /// from different places renders identically.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "q = {}", self.q);
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "k = {}", self.k);
        let _ = writeln!(s, "d = {}", self.d);
        let _ = writeln!(s, "g_q(k,d) = {}", self.griesmer_length);
        let _ = writeln!(s, "griesmer = {}", self.is_griesmer);
        let wd: Vec<String> = self
            .weight_distribution
            .counts()
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        let _ = writeln!(s, "weights = {}", wd.join(" "));
        let _ = writeln!(s, "divisor = {}", self.divisor);
        let _ = writeln!(s, "p_exponent = {}", self.p_exponent);
        let _ = writeln!(s, "gamma = {}", self.gamma);
        let _ = writeln!(s, "endpoints = {}", self.endpoints);
        for v in &self.verdicts {
            let status = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let _ = write!(s, "{:<6} {status}", v.theorem.name());
            if let Some(c) = v.claimed_divisor {
                let _ = write!(s, " claim={c}");
            }
            if let Some(r) = &v.reason {
                let _ = write!(s, " ({r})");
            }
            s.push('\n');
        }
        s
    }

    pub fn has_violation(&self) -> bool {
        self.verdicts.iter().any(TheoremVerdict::is_violation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::hexacode;

    #[test]
    fn hexacode_report() {
        let r = analyze(&hexacode().unwrap(), "hexacode").unwrap();
        assert_eq!((r.n, r.k, r.d, r.divisor, r.p_exponent), (6, 3, 4, 2, 1));
        assert!(r.is_griesmer && !r.has_violation());
        assert_eq!((r.gamma, r.endpoints), (1, 6));
        let text = r.render();
        assert!(text.contains("weights = 0:1 4:45 6:18\n"));
        assert!(!text.contains("hexacode"));
    }
}
