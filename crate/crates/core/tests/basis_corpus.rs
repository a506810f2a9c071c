use griesmer_core::basis::{construct_basis, verify_basis, BasisError, Clause};
use griesmer_core::constructions::{hexacode, ovoid, unital};
use griesmer_core::FqMatrix;

#[test]
fn hexacode_basis() {
    let h = hexacode().unwrap();
    let cert = construct_basis(&h).unwrap();
    assert_eq!(cert.e, 1);
    assert_eq!(cert.prefixes.len(), 2);
    assert_eq!(cert.prefixes[1].effective_length, 5);
    assert!(cert
        .omissions
        .iter()
        .all(|o| o.effective_length == 5 && o.min_distance == 4));
}

#[test]
fn ovoid3_and_unital2_bases() {
    for c in [ovoid(3).unwrap(), unital(2).unwrap(), ovoid(4).unwrap()] {
        let cert = construct_basis(&c).unwrap();
        assert!(!cert.constant_weight_shortcut);
    }
}

#[test]
fn hexacode_basis_with_weight_six_row_fails_prefix() {
    let h = hexacode().unwrap();
    // Find a weight-6 word and complete to a basis with it first.
    let mut six = None;
    h.for_each_codeword(|_, w| {
        if w.iter().all(|&v| v != 0) {
            six = Some(w.to_vec());
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    })
    .unwrap();
    let six = six.unwrap();
    let mut rows = vec![six];
    for r in h.gen().row_iter() {
        let mut cand = rows.clone();
        cand.push(r.to_vec());
        if FqMatrix::from_rows(&cand).unwrap().rank(h.field()) == cand.len() {
            rows = cand;
        }
    }
    let g = FqMatrix::from_rows(&rows).unwrap();
    match verify_basis(&h, &g) {
        Err(BasisError::Clause {
            clause: Clause::ConstantWeightPrefix(1),
            ..
        }) => {}
        other => panic!("unexpected {other:?}"),
    }
}
