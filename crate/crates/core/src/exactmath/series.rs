use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::render_rational;
use crate::error::{Error, Result};

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A power series known exactly in degrees `0..=trunc_degree` and unknown above.
///
/// Every operation reports at most `trunc_degree + 1` coefficients; the result of
/// combining two series is only trusted up to the smaller truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops coefficients so exactly `trunc_degree + 1` remain.
    pub fn new(mut coeffs: Vec<BigRational>, trunc_degree: usize) -> Self {
        coeffs.resize(trunc_degree + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], trunc_degree: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect(), trunc_degree)
    }

    pub fn from_counts(counts: &[usize], trunc_degree: usize) -> Self {
        Self::new(counts.iter().map(|&c| q(c as i64)).collect(), trunc_degree)
    }

    pub fn zero(trunc_degree: usize) -> Self {
        Self::new(Vec::new(), trunc_degree)
    }

    pub fn one(trunc_degree: usize) -> Self {
        Self::new(vec![BigRational::one()], trunc_degree)
    }

    /// `c * t^d`, which is zero when `d` exceeds the truncation.
    pub fn monomial(c: BigRational, d: usize, trunc_degree: usize) -> Self {
        let mut s = Self::zero(trunc_degree);
        if d <= trunc_degree {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn trunc_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as integers, or `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.numer().clone()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn truncate(&self, trunc_degree: usize) -> Self {
        assert!(trunc_degree <= self.trunc_degree(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=trunc_degree].to_vec(), trunc_degree)
    }

    fn common(&self, other: &Self) -> usize {
        self.trunc_degree().min(other.trunc_degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self::new((0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(), n)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect(), self.trunc_degree())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.trunc_degree())
    }

    /// Cauchy product, truncated at the smaller of the two truncations.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.trunc_degree();
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out, n))
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.trunc_degree())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(render_rational).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.trunc_degree() + 1)
    }
}

/// Dense polynomial over Q, lowest degree first.
pub type Poly = Vec<BigRational>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    poly_trim(out)
}

/// A quotient of polynomials with a nonzero constant term in the denominator,
/// so that it expands as a power series at `t = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        let denominator = poly_trim(denominator);
        if denominator[0].is_zero() {
            return Err(Error::invalid("denominator vanishes at t = 0"));
        }
        Ok(RationalFunction {
            numerator: poly_trim(numerator),
            denominator,
        })
    }

    pub fn from_ints(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(
            numerator.iter().map(|&c| q(c)).collect(),
            denominator.iter().map(|&c| q(c)).collect(),
        )
    }

    pub fn polynomial(p: Poly) -> Self {
        Self::new(p, vec![BigRational::one()]).expect("constant denominator")
    }

    pub fn constant(c: i64) -> Self {
        Self::polynomial(vec![q(c)])
    }

    /// `c * t^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut p = vec![BigRational::zero(); d + 1];
        p[d] = q(c);
        Self::polynomial(p)
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.denominator
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = poly_add(
            &poly_mul(&self.numerator, &other.denominator),
            &poly_mul(&other.numerator, &self.denominator),
        );
        let den = poly_mul(&self.denominator, &other.denominator);
        Self::new(num, den).expect("product of denominators is nonzero at 0")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            poly_mul(&self.numerator, &other.numerator),
            poly_mul(&self.denominator, &other.denominator),
        )
        .expect("product of denominators is nonzero at 0")
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(
            self.numerator.iter().map(|x| x * q(c)).collect(),
            self.denominator.clone(),
        )
        .expect("denominator unchanged")
    }

    /// `1 / self`; requires a nonzero constant term in the numerator.
    pub fn recip(&self) -> Result<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    /// Power-series coefficients in degrees `0..=n`, by the linear recurrence
    /// the denominator imposes.
    pub fn expand(&self, n: usize) -> TruncatedSeries {
        let d0_inv = self.denominator[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self
                .numerator
                .get(k)
                .cloned()
                .unwrap_or_else(BigRational::zero);
            for j in 1..self.denominator.len().min(k + 1) {
                acc -= &self.denominator[j] * &out[k - j];
            }
            out.push(acc * &d0_inv);
        }
        TruncatedSeries::new(out, n)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| {
            p.iter()
                .map(render_rational)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "({}) / ({})", show(&self.numerator), show(&self.denominator))
    }
}
