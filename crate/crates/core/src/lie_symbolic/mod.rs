//! Free Lie and free associative algebra machinery: commutator trees,
//! syntactically collected combinations, expansion into words, and
//! truncated power series over any associative algebra.

pub mod algebra;
mod assoc;
mod combo;
mod series;
mod tree;

pub use algebra::{ad_pow, AdModule, AssocAlgebra, Commutator, LinearSpace, RationalField};
pub use assoc::{expand_assoc, AssocPoly, AssocWord, FreeAssoc};
pub use combo::{FreeLie, LieCombo};
pub use series::{series_product, SeriesError, TruncSeries};
pub use tree::{CommTree, Generator};

/// Swaps the letters `X` and `Y`, leaving any other generator untouched.
pub fn swap_xy(g: Generator) -> Generator {
    match g {
        Generator::X => Generator::Y,
        Generator::Y => Generator::X,
        other => other,
    }
}
