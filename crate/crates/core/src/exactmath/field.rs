use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar arithmetic used by every linear-algebra routine in the crate.
///
/// Elements are plain values; the field object carries the modulus (if any),
/// so the same element type can serve many primes.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `(-1)^k` as a field element.
    fn sign(&self, odd: bool) -> Self::Elem {
        if odd {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }
}

/// The prime field GF(p) for an odd or even prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::invalid(format!("prime {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2)
        let mut base = *a as u64;
        let mut exp = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Ok(acc as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32> {
        let num = self.reduce_big(q.numer());
        let den = self.reduce_big(q.denom());
        if den == 0 {
            return Err(Error::invalid(format!(
                "coefficient {q} has denominator divisible by {}",
                self.p
            )));
        }
        Ok(self.mul(&num, &self.inv(&den)?))
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
}

/// Runtime description of a field, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Prime(u32),
    Rational,
}

impl FieldKind {
    pub fn validate(self) -> Result<Self> {
        if let FieldKind::Prime(p) = self {
            PrimeField::new(p)?;
        }
        Ok(self)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldKind::Prime(p) => p,
            FieldKind::Rational => 0,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime(p) => write!(f, "gf{p}"),
            FieldKind::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "q" | "qq" | "rational" | "rationals" => Ok(FieldKind::Rational),
            _ => {
                let digits = t
                    .strip_prefix("gf")
                    .or_else(|| t.strip_prefix("f"))
                    .ok_or_else(|| Error::invalid(format!("unknown field '{s}'")))?;
                let p: u32 = digits
                    .trim_start_matches(['(', '_'])
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| Error::invalid(format!("unknown field '{s}'")))?;
                FieldKind::Prime(p).validate()
            }
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field described by `$kind`.
///
/// The enclosing function must return `crate::Result`.
#[macro_export]
macro_rules! with_field {
    ($kind:expr, |$f:ident| $body:expr) => {
        match $kind {
            $crate::exactmath::FieldKind::Prime(p) => {
                let $f = $crate::exactmath::PrimeField::new(p)?;
                $body
            }
            $crate::exactmath::FieldKind::Rational => {
                let $f = $crate::exactmath::RationalField;
                $body
            }
        }
    };
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"3"`, `"-2"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse '{s}' as a rational"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A scalar tagged with its field, for callers that pick the field at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElem {
    Prime { p: u32, value: u32 },
    Rational(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldElem {
    pub fn prime(p: u32, value: i64) -> Result<Self> {
        let f = PrimeField::new(p)?;
        Ok(FieldElem::Prime {
            p,
            value: f.from_i64(value),
        })
    }

    pub fn rational(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem::Rational(BigRational::new(n.into(), d.into())))
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElem::Prime { p, .. } => FieldKind::Prime(*p),
            FieldElem::Rational(_) => FieldKind::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Prime { value, .. } => *value == 0,
            FieldElem::Rational(q) => q.is_zero(),
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.kind() != other.kind() {
            return Err(Error::MixedFields(
                self.kind().to_string(),
                other.kind().to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Prime { p, value: a }, FieldElem::Prime { value: b, .. }) => {
                FieldElem::Prime {
                    p: *p,
                    value: PrimeField { p: *p }.add(a, b),
                }
            }
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Prime { p, value: a }, FieldElem::Prime { value: b, .. }) => {
                FieldElem::Prime {
                    p: *p,
                    value: PrimeField { p: *p }.mul(a, b),
                }
            }
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElem::Prime { p, value } => FieldElem::Prime {
                p: *p,
                value: PrimeField { p: *p }.neg(value),
            },
            FieldElem::Rational(q) => FieldElem::Rational(-q),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElem::Prime { p, value } => Ok(FieldElem::Prime {
                p: *p,
                value: PrimeField { p: *p }.inv(value)?,
            }),
            FieldElem::Rational(q) => Ok(FieldElem::Rational(RationalField.inv(q)?)),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Prime { value, .. } => write!(f, "{value}"),
            FieldElem::Rational(q) => f.write_str(&render_rational(q)),
        }
    }
}

/// Single entry point for scalar arithmetic; `b` is required for binary ops.
pub fn field_arith(a: &FieldElem, b: Option<&FieldElem>, op: ArithOp) -> Result<FieldElem> {
    let need_b = || b.ok_or_else(|| Error::invalid("binary operation needs two operands"));
    match op {
        ArithOp::Add => a.add(need_b()?),
        ArithOp::Mul => a.mul(need_b()?),
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.inv(),
    }
}
