//! Bundled example matrices, also shipped as files under `data/`.

use crate::cli::parse_matrix_csv;
use crate::matrix::StructureMatrix;

macro_rules! sample {
    ($(#[$doc:meta])* $name:ident, $file:literal) => {
        $(#[$doc])*
        pub fn $name() -> StructureMatrix {
            parse_matrix_csv(include_bytes!(concat!("../data/", $file)))
                .expect(concat!("bundled sample ", $file, " parses"))
        }
    };
}

sample!(
    /// Three states, `e3` absorbing, `e2` never re-entered.
    three_state_absorbing,
    "three_state_absorbing.csv"
);
sample!(
    /// Four states, irreducible with self-loops.
    four_state_irreducible,
    "four_state_irreducible.csv"
);
sample!(
    /// Not Markov: row `e1` sums to 1.37 and `e3^2 = 1.3 e1`.
    non_markov_three,
    "non_markov_three.csv"
);
sample!(
    /// Six states; `{e4, e5, e6}` is a closed 3-cycle fed by `{e1, e2, e3}`.
    six_state_closed_cycle,
    "six_state_closed_cycle.csv"
);
sample!(
    /// Seven states; closed classes `{e2, e5}` and `{e4, e7}`.
    seven_state_two_closed,
    "seven_state_two_closed.csv"
);
sample!(
    /// Three states, irreducible with period 2.
    period_two,
    "period_two.csv"
);
sample!(
    /// Eight states; closed classes `{e5}`, `{e3, e6}`, `{e7, e8}`.
    eight_state_partition,
    "eight_state_partition.csv"
);

/// Every sample with its file stem.
pub fn all() -> Vec<(&'static str, StructureMatrix)> {
    vec![
        ("three_state_absorbing", three_state_absorbing()),
        ("four_state_irreducible", four_state_irreducible()),
        ("non_markov_three", non_markov_three()),
        ("six_state_closed_cycle", six_state_closed_cycle()),
        ("seven_state_two_closed", seven_state_two_closed()),
        ("period_two", period_two()),
        ("eight_state_partition", eight_state_partition()),
    ]
}
