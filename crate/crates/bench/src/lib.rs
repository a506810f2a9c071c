//! Fixtures shared by the benchmarks.

use griesmer_core::constructions::{ovoid, reed_solomon, unital};
use griesmer_core::search::{SearchTask, Strategy};
use griesmer_core::LinearCode;

/// Codes with `q^k` between a few hundred and a few thousand codewords.
pub fn codes() -> Vec<(&'static str, LinearCode)> {
    vec![
        ("rs(8,8,4)", reed_solomon(8, 8, 4).unwrap()),
        ("unital(3)", unital(3).unwrap()),
        ("ovoid(4)", ovoid(4).unwrap()),
    ]
}

/// The same code with an empty weight-distribution cache.
pub fn fresh(code: &LinearCode) -> LinearCode {
    LinearCode::new(code.field().clone(), code.gen().clone()).unwrap()
}

/// The `[6,3,4]_4` exhaustive smoke instance.
pub fn smoke_search() -> SearchTask {
    SearchTask {
        p: 2,
        f: 2,
        k: 3,
        d: 4,
        strategy: Strategy::Exhaustive,
        budget: 1_000_000,
        seed: 0,
        enforce_recipe: false,
    }
}
