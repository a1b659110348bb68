use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolyRing};
use std::fmt;

/// Quotient of two multivariate polynomials. Never reduced to lowest
/// terms; equality is tested by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(num: MultiPoly) -> RationalFunction {
        let den = num.ring().one();
        RationalFunction { num, den }
    }

    pub fn zero(ring: &PolyRing) -> RationalFunction {
        RationalFunction { num: ring.zero(), den: ring.one() }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }
    pub fn den(&self) -> &MultiPoly {
        &self.den
    }
    pub fn ring(&self) -> &PolyRing {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is the constant 1 or the
    /// numerator is divisible by it.
    pub fn to_poly(&self) -> Result<MultiPoly> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            self.num.exact_div(&self.den)
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        })
    }

    pub fn pow(&self, n: u64) -> Result<RationalFunction> {
        Ok(RationalFunction { num: self.num.pow(n)?, den: self.den.pow(n)? })
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(out, "{}", self.num)
        } else {
            write!(out, "({})/({})", self.num, self.den)
        }
    }
}
