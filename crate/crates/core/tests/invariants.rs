use std::ops::ControlFlow;

use griesmer_core::code::weight;
use griesmer_core::derived::{agreement_profile, lift_min_weight, residual};
use griesmer_core::geometry::multiset_of;
use griesmer_core::lab::{corpus, CorpusEntry};
use griesmer_core::ward::{criterion_basis, max_divisor_exponent_with_basis, WardMode};
use griesmer_core::{Elem, FqMatrix, LinearCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn codewords(code: &LinearCode) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    code.for_each_codeword(|_, w| {
        out.push(w.to_vec());
        ControlFlow::Continue(())
    })
    .unwrap();
    out
}

fn small(max_qk: u64) -> Vec<CorpusEntry> {
    corpus()
        .unwrap()
        .into_iter()
        .filter(|e| (e.code.q() as u64).pow(e.code.k() as u32) <= max_qk)
        .collect()
}

#[test]
fn agreement_identity_on_all_pairs() {
    for e in small(4096) {
        let field = e.code.field();
        let words = codewords(&e.code);
        for a in words.iter().filter(|w| weight(w) > 0) {
            for b in &words {
                let prof = agreement_profile(field, a, b).unwrap();
                assert_eq!(prof.residual_weight + prof.total(), weight(b), "{}", e.id);
            }
        }
    }
}

#[test]
fn weight_at_most_q_times_residual_weight() {
    for e in corpus().unwrap() {
        let q = e.code.q() as usize;
        let (_, a) = e.code.min_weight_codeword().unwrap();
        let field = e.code.field();
        let span: Vec<Vec<Elem>> = field
            .elements()
            .map(|l| a.iter().map(|&x| field.mul(l, x)).collect())
            .collect();
        for b in codewords(&e.code) {
            if span.contains(&b) {
                continue;
            }
            let prof = agreement_profile(field, &a, &b).unwrap();
            assert!(weight(&b) <= q * prof.residual_weight, "{}", e.id);
        }
    }
}

#[test]
fn constant_weight_when_q_power_divides_d() {
    for e in corpus().unwrap() {
        let c = &e.code;
        let (q, k) = (c.q() as u64, c.k() as u32);
        let d = c.min_distance().unwrap() as u64;
        if d % q.pow(k - 1) == 0 {
            let wd = c.weight_distribution().unwrap();
            assert_eq!(wd.nonzero_weights(), vec![d as usize], "{}", e.id);
            assert_eq!(wd.count(d as usize), q.pow(k) - 1);
        }
    }
}

#[test]
fn lift_counts() {
    for e in corpus().unwrap() {
        let c = &e.code;
        if c.k() < 2 {
            continue;
        }
        let q = c.q() as usize;
        let d = c.min_distance().unwrap();
        let (_, a) = c.min_weight_codeword().unwrap();
        let res = residual(c, &a).unwrap().code;
        let dq = d.div_ceil(q);
        for cw in codewords(&res).iter().filter(|w| weight(w) == dq) {
            let lift = lift_min_weight(c, &a, cw).unwrap();
            assert_eq!(weight(&lift.word), d);
            if d % q == 0 {
                assert_eq!(lift.min_weight_preimages, q, "{}", e.id);
            } else {
                assert!(lift.min_weight_preimages + dq * q >= d + q, "{}", e.id);
            }
        }
    }
}

#[test]
fn column_ledger_accounts_for_every_column() {
    for e in corpus().unwrap() {
        let cert = griesmer_core::basis::construct_basis(&e.code).unwrap();
        let gamma = (cert.d as u64).div_ceil((e.code.q() as u64).pow(cert.k as u32 - 1)) as usize;
        assert!(cert.unit_columns.iter().all(|cols| cols.len() == gamma));
        assert_eq!(cert.remaining_columns, cert.n - cert.k * gamma, "{}", e.id);
        griesmer_core::basis::verify_basis(&e.code, &cert.matrix()).unwrap();
    }
}

fn ward_exponent(code: &LinearCode, rows: &FqMatrix, mode: WardMode) -> u32 {
    max_divisor_exponent_with_basis(code, rows, 8, mode).unwrap().exponent
}

#[test]
fn folded_and_bounded_modes_agree() {
    for e in corpus().unwrap() {
        let c = &e.code;
        if c.q() > 4 || c.k() > 3 {
            continue;
        }
        let rows = criterion_basis(c, 0).unwrap();
        let folded = ward_exponent(c, &rows, WardMode::Folded);
        // Six-fold tuples are slow on the larger fields; four already fold.
        let max_len = if c.q() == 4 && c.k() == 3 { 4 } else { 2 * c.k() };
        let bounded = ward_exponent(c, &rows, WardMode::Bounded { max_len });
        assert_eq!(folded, bounded, "{}", e.id);
    }
}

#[test]
fn scaling_a_basis_row_keeps_the_exponent() {
    for e in corpus().unwrap() {
        let c = &e.code;
        if c.q() != 4 || c.k() != 3 {
            continue;
        }
        let field = c.field();
        let rows = criterion_basis(c, 0).unwrap();
        let base = ward_exponent(c, &rows, WardMode::Folded);
        for i in 0..3 {
            for lambda in 1..4 {
                let mut scaled = rows.clone();
                for v in scaled.row_mut(i) {
                    *v = field.mul(lambda, *v);
                }
                assert_eq!(ward_exponent(c, &scaled, WardMode::Folded), base, "{} row {i}", e.id);
            }
        }
    }
}

#[test]
fn change_of_basis_keeps_the_exponent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for e in small(4096) {
        let c = &e.code;
        let field = c.field();
        let rows = criterion_basis(c, 0).unwrap();
        let base = ward_exponent(c, &rows, WardMode::Folded);
        let k = c.k();
        let change = loop {
            let mut m = FqMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, rng.gen_range(0..field.q()));
                }
            }
            if m.rank(field) == k {
                break m;
            }
        };
        let other = change.mul(field, &rows);
        assert_eq!(ward_exponent(c, &other, WardMode::Folded), base, "{}", e.id);
    }
}

#[test]
fn gamma_matches_distance_on_corpus() {
    for e in corpus().unwrap() {
        let c = &e.code;
        let qk1 = (c.q() as u64).pow(c.k() as u32 - 1);
        let d = c.min_distance().unwrap() as u64;
        assert_eq!(multiset_of(c).unwrap().gamma().unwrap(), d.div_ceil(qk1), "{}", e.id);
    }
}
