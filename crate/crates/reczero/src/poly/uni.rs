use crate::error::{Error, Result};
use crate::ff::{Elt, Fq};
use crate::poly::{MultiPoly, PolyRing};
use std::fmt;

/// Dense univariate polynomial over F_q: coefficient vector with the
/// constant term first and no trailing zeros; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Fq,
    coeffs: Vec<Elt>,
}

impl UniPoly {
    pub fn new(field: Fq, mut coeffs: Vec<Elt>) -> UniPoly {
        while coeffs.last() == Some(&Elt::ZERO) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Fq) -> UniPoly {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: Fq, c: Elt) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    pub fn one(field: Fq) -> UniPoly {
        UniPoly::constant(field, Elt::ONE)
    }

    pub fn x(field: Fq) -> UniPoly {
        UniPoly { field, coeffs: vec![Elt::ZERO, Elt::ONE] }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs.get(i).copied().unwrap_or(Elt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elt::ONE
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elt {
        self.coeffs.last().copied().unwrap_or(Elt::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elt::ONE
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        UniPoly::new(f.clone(), out)
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![Elt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f.clone(), out)
    }

    pub fn mul_scalar(&self, c: Elt) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut n: u64) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field.clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division with remainder; the divisor may have any nonzero leading
    /// coefficient.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroInput);
        }
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elt::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            if !c.is_zero() {
                quot[k] = c;
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = f.sub(rem[k + j], f.mul(c, dc));
                }
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last() == Some(&Elt::ZERO) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(f.clone(), quot), UniPoly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.mul_scalar(self.field.inv(self.leading())?))
    }

    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mult = f.int((i as i64) % f.p() as i64);
            out.push(f.mul(c, mult));
        }
        UniPoly::new(f.clone(), out)
    }

    pub fn eval(&self, x: Elt) -> Elt {
        let f = &self.field;
        let mut acc = Elt::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// View in a multivariate ring, with this variable at index var_idx.
    pub fn to_multi(&self, ring: &PolyRing, var_idx: usize) -> MultiPoly {
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| {
            let mut exps = vec![0u32; ring.nvars()];
            exps[var_idx] = i as u32;
            (crate::poly::Monomial { exps }, c)
        });
        ring.from_terms(terms)
    }

    /// Extract from a multivariate polynomial that uses only variable var_idx.
    pub fn from_multi(p: &MultiPoly, var_idx: usize) -> Result<UniPoly> {
        let field = p.ring().field().clone();
        let mut coeffs: Vec<Elt> = Vec::new();
        for (m, c) in p.terms() {
            for (i, &e) in m.exps.iter().enumerate() {
                if e != 0 && i != var_idx {
                    return Err(Error::InvalidInput(format!(
                        "polynomial is not univariate in {}",
                        p.ring().vars()[var_idx]
                    )));
                }
            }
            let d = m.exps[var_idx] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Elt::ZERO);
            }
            coeffs[d] = *c;
        }
        Ok(UniPoly::new(field, coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let cs = f.elt_to_string(c);
            match i {
                0 => write!(out, "{cs}")?,
                _ => {
                    let xs = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                    if cs == "1" {
                        write!(out, "{xs}")?;
                    } else if cs.contains('+') || cs.contains('*') {
                        write!(out, "({cs})*{xs}")?;
                    } else {
                        write!(out, "{cs}*{xs}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
