//! Parser, normal-form registry, verification reports and command-line
//! interface on top of [`tame_core`].

pub mod cli;
pub mod parser;
pub mod registry;
pub mod report;
pub mod theorems;
pub mod verify;

pub use cli::run_cli;
pub use parser::{parse, parse_derivation, parse_endomorphism, parse_poly, Kind, ParseError, Value};
pub use registry::{make_normal_form, standard_registry, Family, InvalidParams, NormalForm};
pub use verify::{verify_all, verify_form, Options, VerificationReport};
