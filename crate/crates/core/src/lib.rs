//! Open logic programs under the stable model semantics.
//!
//! * [`syntax`], [`parse`], [`herbrand`]: programs, open programs, queries,
//!   grounding.
//! * [`stable`]: reduct, least models, stable model enumeration, entailment.
//! * [`open`]: completion normal forms and the four open-inference modes,
//!   decided by enumerating completions.
//! * [`pi`]: the translation of an open program into a single normal program
//!   whose stable models cover all completions, plus unfolding and export.
//! * [`abduce`]: abduction frameworks, skolem-budgeted open abduction and
//!   generalized skeptical consequences.

pub mod abduce;
pub mod cli;
pub mod error;
pub mod herbrand;
pub mod open;
pub mod par;
pub mod parse;
pub mod pi;
pub mod stable;
pub mod syntax;

pub use error::{Error, Result};
pub use parse::{parse_open_program, parse_program, parse_query};
pub use stable::{EntailMode, SolveConfig, Strategy};
pub use syntax::{
    Atom, Interpretation, OpenProgram, Program, Query, Rule, Signature, Symbol, Term,
};
