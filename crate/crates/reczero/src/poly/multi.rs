use crate::error::{Error, Result};
use crate::ff::{Elt, Fq};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A polynomial ring F_q[x_1, ..., x_r]: the field plus the ordered list of
/// variable names. Cheap to clone; equality is field identity plus the
/// variable list.
#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingInner>);

#[derive(Debug)]
struct RingInner {
    field: Fq,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: Fq, vars: Vec<String>) -> PolyRing {
        PolyRing(Arc::new(RingInner { field, vars }))
    }

    pub fn field(&self) -> &Fq {
        &self.0.field
    }
    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    /// The same field with one extra variable appended.
    pub fn extended(&self, name: &str) -> PolyRing {
        let mut vars = self.0.vars.clone();
        vars.push(name.to_string());
        PolyRing::new(self.0.field.clone(), vars)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn constant(&self, c: Elt) -> MultiPoly {
        if c.is_zero() {
            self.zero()
        } else {
            MultiPoly { ring: self.clone(), terms: vec![(Monomial::unit(self.nvars()), c)] }
        }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(Elt::ONE)
    }

    pub fn int(&self, n: i64) -> MultiPoly {
        self.constant(self.field().int(n))
    }

    pub fn var(&self, idx: usize) -> MultiPoly {
        assert!(idx < self.nvars());
        let mut exps = vec![0u32; self.nvars()];
        exps[idx] = 1;
        MultiPoly { ring: self.clone(), terms: vec![(Monomial { exps }, Elt::ONE)] }
    }

    pub fn monomial(&self, m: Monomial, c: Elt) -> MultiPoly {
        assert_eq!(m.exps.len(), self.nvars());
        if c.is_zero() {
            self.zero()
        } else {
            MultiPoly { ring: self.clone(), terms: vec![(m, c)] }
        }
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Elt)>) -> MultiPoly {
        let mut map: BTreeMap<Monomial, Elt> = BTreeMap::new();
        let f = self.field();
        for (m, c) in terms {
            assert_eq!(m.exps.len(), self.nvars());
            let slot = map.entry(m).or_insert(Elt::ZERO);
            *slot = f.add(*slot, c);
        }
        MultiPoly {
            ring: self.clone(),
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.0.field == other.0.field && self.0.vars == other.0.vars
    }
}
impl Eq for PolyRing {}

/// Exponent vector, one slot per ring variable. Ordered lexicographically
/// in the declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Componentwise quotient, if divisible.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn checked_pow(&self, n: u32) -> Result<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for &a in &self.exps {
            exps.push(a.checked_mul(n).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

/// Sparse multivariate polynomial: terms sorted ascending in lex order,
/// no zero coefficients stored. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: Vec<(Monomial, Elt)>,
}

impl MultiPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Elt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit() && self.terms[0].1 == Elt::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_unit())
    }

    /// The constant value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Elt> {
        if self.is_zero() {
            Some(Elt::ZERO)
        } else if self.is_constant() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<&(Monomial, Elt)> {
        self.terms.last()
    }

    pub fn coeff(&self, m: &Monomial) -> Elt {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => self.terms[i].1,
            Err(_) => Elt::ZERO,
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.ring, other.ring);
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(self.terms[i].1, other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> MultiPoly {
        let f = self.ring.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, c: Elt) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        let f = self.ring.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: Elt) -> Result<MultiPoly> {
        if c.is_zero() {
            return Ok(self.ring.zero());
        }
        let f = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, a) in &self.terms {
            terms.push((k.checked_mul(m)?, f.mul(*a, c)));
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        // multiply the smaller operand into the larger
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_monomial(m, *c);
        }
        let f = self.ring.field();
        let mut map: BTreeMap<Monomial, Elt> = BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.checked_mul(mb)?;
                let slot = map.entry(m).or_insert(Elt::ZERO);
                *slot = f.add(*slot, f.mul(*ca, *cb));
            }
        }
        Ok(MultiPoly {
            ring: self.ring.clone(),
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.try_mul(other).expect("monomial exponent overflow")
    }

    /// f^p via the Frobenius endomorphism: coefficients to the p-th power,
    /// exponents multiplied by p. Term count is preserved.
    pub fn frob_power(&self) -> Result<MultiPoly> {
        let f = self.ring.field();
        let p = f.p() as u32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(p)?, f.frobenius(*c)));
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    fn small_pow(&self, mut d: u32) -> Result<MultiPoly> {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while d > 0 {
            if d & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            d >>= 1;
            if d > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// f^n by base-p splitting: f^n = prod_i (f^(p^i))^(d_i) with n = sum d_i p^i.
    /// The Frobenius factors keep powers of sparse polynomials sparse.
    pub fn pow(&self, n: u64) -> Result<MultiPoly> {
        if n == 0 {
            return Ok(self.ring.one());
        }
        let p = self.ring.field().p();
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % p) as u32);
            m /= p;
        }
        let mut result = self.ring.one();
        let mut frob = self.clone();
        for (i, &d) in digits.iter().enumerate() {
            if d > 0 {
                result = result.try_mul(&frob.small_pow(d)?)?;
            }
            if i + 1 < digits.len() {
                frob = frob.frob_power()?;
            }
        }
        Ok(result)
    }

    /// Exact division; errors with NotDivisible when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        debug_assert_eq!(self.ring, divisor.ring);
        if divisor.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_zero() {
            return Ok(self.ring.zero());
        }
        let f = self.ring.field();
        let (dm, dc) = divisor.leading().unwrap();
        let dc_inv = f.inv(*dc)?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Elt)> = Vec::new();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), *c)) {
            let qm = rm.checked_div(dm).ok_or(Error::NotDivisible)?;
            let qc = f.mul(rc, dc_inv);
            quot.push((qm.clone(), qc));
            let t = divisor.mul_monomial(&qm, f.neg(qc))?;
            rem = rem.add(&t);
        }
        quot.reverse();
        debug_assert!(quot.windows(2).all(|w| w[0].0 < w[1].0));
        Ok(MultiPoly { ring: self.ring.clone(), terms: quot })
    }

    /// Move this polynomial into another ring, sending variable i of the
    /// source to variable var_map[i] of the target.
    pub fn remap_vars(&self, target: &PolyRing, var_map: &[usize]) -> MultiPoly {
        assert_eq!(var_map.len(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[var_map[i]] += e;
            }
            terms.push((Monomial { exps }, *c));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0));
        MultiPoly { ring: target.clone(), terms }
    }

    /// Substitute the k-th power for variable idx (exponents multiplied by k).
    pub fn stretch_var(&self, idx: usize, k: u32) -> Result<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps[idx] = exps[idx].checked_mul(k).ok_or(Error::ExponentOverflow)?;
            terms.push((Monomial { exps }, *c));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    /// Returns c with self = c * other, if such a unit exists.
    pub fn proportional(&self, other: &MultiPoly) -> Result<Option<Elt>> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.terms.len() != other.terms.len() {
            return Ok(None);
        }
        let f = self.ring.field();
        let c = f.div(self.leading().unwrap().1, other.leading().unwrap().1)?;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            if ma != mb || *ca != f.mul(c, *cb) {
                return Ok(None);
            }
        }
        Ok(Some(c))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let field = self.ring.field();
        let vars = self.ring.vars();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let cs = field.elt_to_string(*c);
            let mut parts: Vec<String> = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(vars[i].clone()),
                    _ => parts.push(format!("{}^{}", vars[i], e)),
                }
            }
            if parts.is_empty() {
                write!(out, "{cs}")?;
            } else if cs == "1" {
                write!(out, "{}", parts.join("*"))?;
            } else if cs.contains('+') || cs.contains('*') {
                write!(out, "({cs})*{}", parts.join("*"))?;
            } else {
                write!(out, "{cs}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}
