//! Exact computations for rank-one loop algebra representations, quiver graphs,
//! l-weights of torus fixed points and ADHM data.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod adhm;
pub mod cartan;
pub mod exactalg;
pub mod fixedpoints;
pub mod linalg;
pub mod lweight;
pub mod par;
pub mod rank1rep;

/// Sign selecting the `+` or `-` half of a current or series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}
