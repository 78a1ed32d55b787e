//! Exact scalars (prime fields and rationals), truncated power series and
//! rational functions.

mod field;
mod series;

pub use field::{
    field_arith, parse_rational, render_rational, ArithOp, Field, FieldElem, FieldKind,
    PrimeField, RationalField,
};
pub use num_rational::BigRational;
pub use series::{Poly, RationalFunction, TruncatedSeries};
