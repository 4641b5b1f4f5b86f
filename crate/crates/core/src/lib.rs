//! Exact arithmetic for continued fractions, Ostrowski numeration, and best
//! linear Diophantine approximation.

pub mod cf;
pub mod error;
pub mod kernel;
pub mod expansion;
pub mod numeration;
pub mod oracle;
pub mod solver;
pub mod tables;

pub use cf::{convergents, series_partials, CfStream, Convergent, ConvergentTable, SeriesKind, SeriesReport};
pub use error::{Error, Result, Violation};
pub use expansion::{
    expand_absolute, expand_alternating, expand_real_absolute, expand_real_alternating,
    recover_absolute, recover_alternating, validate_absolute, validate_alternating,
    ExpansionResult, ExpansionStatus,
};
pub use numeration::{
    decode_counting, decode_integer, encode_counting, encode_integer, range_set, validate_left,
    validate_right, Admissibility, DigitString, RangeSet, RightMode, StringKind,
};
pub use oracle::{
    audit, brute_best, enumerate_admissible, AuditClaim, AuditReport, BruteVariant, EnumKind,
    Verdict, Witness,
};
pub use solver::{
    check_general_solution, classify, homogeneous, is_normal, solve, solve_backward,
    solve_forward, solve_total_over, solve_total_under, ApproximateTerm, Certificate,
    CertificateLine, Side, SolveOutput, SolveVariant, TailVerdict,
};
pub use kernel::{golden, silver, parse_number, parse_real, ParsedNumber, RatInterval, RealValue};
