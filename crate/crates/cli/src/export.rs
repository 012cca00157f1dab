//! Exact sparse-matrix export of P, K, R(u₀), T(u₀), S(u₀), B(u₀) and of
//! the mode series of a representation.

use std::fmt;
use std::str::FromStr;

use osp_yangian::{k_op, permutation_op, reflection_generator, twisted_generator, Rational};

use crate::formats::{to_pretty, MatrixJson, ModeSeriesJson};
use crate::runner::Selection;
use crate::{FormatError, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    P,
    K,
    R,
    T,
    S,
    B,
    Modes,
}

impl Target {
    pub fn needs_point(self) -> bool {
        matches!(self, Target::R | Target::T | Target::S | Target::B)
    }
}

impl FromStr for Target {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "P" => Target::P,
            "K" => Target::K,
            "R" => Target::R,
            "T" => Target::T,
            "S" => Target::S,
            "B" => Target::B,
            "modes" => Target::Modes,
            _ => return Err(UsageError::new("which", format!("expected one of P, K, R, T, S, B, modes (got {s:?})"))),
        })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Target::P => "P",
            Target::K => "K",
            Target::R => "R",
            Target::T => "T",
            Target::S => "S",
            Target::B => "B",
            Target::Modes => "modes",
        };
        f.write_str(s)
    }
}

/// The requested object as pretty JSON. `sel` supplies the space (its first
/// spec), the representation and the κ override.
pub fn export(sel: &Selection, which: Target, u0: Option<&Rational>) -> Result<String, FormatError> {
    let space = *sel.specs.first().ok_or_else(|| UsageError::new("M", "a spec is required"))?;
    let point = || u0.ok_or_else(|| UsageError::new("u0", format!("{which} needs an evaluation point")));
    let matrix = match which {
        Target::P => permutation_op(space),
        Target::K => k_op(space),
        Target::R => sel.rmatrix(space).eval(point()?)?,
        Target::T => sel.representation(space)?.monodromy(point()?)?,
        Target::S => twisted_generator(&sel.representation(space)?, point()?)?,
        Target::B => reflection_generator(&sel.representation(space)?, point()?)?,
        Target::Modes => {
            let rep = sel.representation(space)?;
            return Ok(to_pretty(&ModeSeriesJson::new(&rep, &rep.mode_expand(sel.n_max))));
        }
    };
    Ok(to_pretty(&MatrixJson::new(&matrix)))
}
