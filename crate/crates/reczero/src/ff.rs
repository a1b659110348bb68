//! Exact arithmetic in F_p and F_{p^e}.
//!
//! A [`FieldCtx`] owns the characteristic, the extension modulus and the
//! discrete-log tables used for multiplication. Elements are stored as a
//! single index in `[0, q)` whose base-p digits are the coefficients of the
//! residue polynomial (constant term first). The context performs all
//! arithmetic; [`FqElement`] is a checked wrapper that carries its context.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_Q_CAP: u64 = 1 << 16;

/// Raw element of F_q relative to some context: the index in `[0, q)` whose
/// base-p digits are the coefficients over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elt(pub u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

static CTX_COUNTER: AtomicU64 = AtomicU64::new(1);

/// The coefficient field F_{p^e} with an explicit modulus.
pub struct FieldCtx {
    p: u64,
    e: usize,
    q: u64,
    /// Monic degree-e modulus over F_p, constant term first, length e+1.
    modulus: Vec<u64>,
    /// exp[i] = g^i for a fixed generator g of F_q^*, length q-1.
    exp: Vec<u32>,
    /// log[v] = i with exp[i] = v; log[0] is a sentinel.
    log: Vec<u32>,
    /// p^(e-1) mod (q-1), the inverse-Frobenius exponent.
    inv_frob_exp: u64,
    id: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(p={}, e={}, q={})", self.p, self.e, self.q)
    }
}

/// Shared handle to a field context.
#[derive(Clone, Debug)]
pub struct Fq(Arc<FieldCtx>);

impl std::ops::Deref for Fq {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Fq {}

impl Fq {
    /// Prime field F_p.
    pub fn prime(p: u64) -> Result<Fq> {
        Fq::new(p, 1, None, DEFAULT_Q_CAP)
    }

    /// F_{p^e} with the given modulus (constant term first), or the
    /// deterministic default modulus when none is given.
    pub fn new(p: u64, e: usize, modulus: Option<Vec<u64>>, q_cap: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadModulus("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(Error::FieldTooLarge(u64::MAX))?;
            if q > q_cap {
                return Err(Error::FieldTooLarge(q));
            }
        }
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(p, e)?,
        };
        if modulus.len() != e + 1 {
            return Err(Error::BadModulus(format!(
                "modulus must have {} coefficients, got {}",
                e + 1,
                modulus.len()
            )));
        }
        if modulus[e] != 1 {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus("modulus coefficients must lie in [0, p)".into()));
        }
        if e == 1 {
            if modulus != vec![0, 1] {
                return Err(Error::BadModulus(
                    "prime fields use the modulus t (coefficients [0, 1])".into(),
                ));
            }
        } else if !fp_is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus);
        }

        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            inv_frob_exp: 0,
            id: CTX_COUNTER.fetch_add(1, Ordering::Relaxed),
        };
        ctx.build_tables();
        ctx.inv_frob_exp = if q == 2 {
            0
        } else {
            let mut t = 1u64;
            for _ in 0..e - 1 {
                t = t * (p % (q - 1)) % (q - 1);
            }
            t
        };
        Ok(Fq(Arc::new(ctx)))
    }

    pub fn element(&self, v: Elt) -> FqElement {
        debug_assert!((v.0 as u64) < self.q);
        FqElement { ctx: self.clone(), v }
    }

    pub fn from_int(&self, n: i64) -> FqElement {
        self.element(self.int(n))
    }

    /// The extension generator `g` (the class of t), defined for e >= 2.
    pub fn generator_elt(&self) -> Elt {
        debug_assert!(self.e >= 2);
        Elt(self.p as u32)
    }
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Coefficients of an element over F_p, constant term first, length e.
    pub fn coeffs(&self, a: Elt) -> Vec<u64> {
        let mut v = a.0 as u64;
        let mut out = Vec::with_capacity(self.e);
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elt {
        let mut v: u64 = 0;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c % self.p;
        }
        debug_assert!(v < self.q);
        Elt(v as u32)
    }

    /// Image of an integer under Z -> F_q.
    pub fn int(&self, n: i64) -> Elt {
        let p = self.p as i64;
        Elt(n.rem_euclid(p) as u32)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![u32::MAX, 0];
            return;
        }
        // Factor q-1 and search for a multiplicative generator using the
        // slow polynomial product; then fill the log/antilog tables.
        let factors = distinct_prime_factors(self.q - 1);
        let mut gen = 0u32;
        'search: for cand in 1..self.q as u32 {
            if cand == 1 {
                continue;
            }
            for &f in &factors {
                if self.pow_slow(Elt(cand), (self.q - 1) / f) == Elt(1) {
                    continue 'search;
                }
            }
            gen = cand;
            break;
        }
        assert!(gen != 0, "no multiplicative generator found");
        let mut exp = vec![0u32; q - 1];
        let mut log = vec![u32::MAX; q];
        let mut acc = Elt(1);
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_slow(acc, Elt(gen));
        }
        debug_assert_eq!(acc, Elt(1));
        self.exp = exp;
        self.log = log;
    }

    fn mul_slow(&self, a: Elt, b: Elt) -> Elt {
        let pa = self.coeffs(a);
        let pb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * self.e];
        for (i, &ca) in pa.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % self.p;
            }
        }
        // reduce modulo the monic modulus
        for i in (self.e..2 * self.e).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.e {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = i - self.e + j;
                    prod[idx] = (prod[idx] + (self.p - m) * c) % self.p;
                }
            }
        }
        self.from_coeffs(&prod[..self.e])
    }

    fn pow_slow(&self, a: Elt, mut n: u64) -> Elt {
        let mut base = a;
        let mut acc = Elt(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.e == 1 {
            return Elt(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        let (mut va, mut vb) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.e {
            out += (va % self.p + vb % self.p) % self.p * mult;
            va /= self.p;
            vb /= self.p;
            mult *= self.p;
        }
        Elt(out as u32)
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.e == 1 {
            return Elt((((self.p - a.0 as u64) % self.p) % self.p) as u32);
        }
        if self.p == 2 {
            return a;
        }
        let mut va = a.0 as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.e {
            out += (self.p - va % self.p) % self.p * mult;
            va /= self.p;
            mult *= self.p;
        }
        Elt(out as u32)
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() || b.is_zero() {
            return Elt::ZERO;
        }
        let la = self.log[a.0 as usize] as u64;
        let lb = self.log[b.0 as usize] as u64;
        Elt(self.exp[((la + lb) % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let la = self.log[a.0 as usize] as u64;
        Ok(Elt(self.exp[((self.q - 1 - la) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elt, n: u64) -> Elt {
        if a.is_zero() {
            return if n == 0 { Elt::ONE } else { Elt::ZERO };
        }
        let la = self.log[a.0 as usize] as u64;
        let ln = ((la as u128 * n as u128) % (self.q - 1) as u128) as usize;
        Elt(self.exp[ln])
    }

    /// a^p, the Frobenius automorphism.
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.p)
    }

    /// The inverse of Frobenius, a |-> a^(p^(e-1)).
    pub fn inv_frobenius(&self, a: Elt) -> Elt {
        if self.e == 1 {
            return a;
        }
        self.pow(a, self.inv_frob_exp)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.q as u32).map(Elt)
    }

    pub fn units(&self) -> impl Iterator<Item = Elt> {
        (1..self.q as u32).map(Elt)
    }

    /// Render an element as an expression in the generator `g`,
    /// e.g. "0", "1", "g", "g+1", "2*g+2".
    pub fn elt_to_string(&self, a: Elt) -> String {
        if self.e == 1 {
            return format!("{}", a.0);
        }
        let coeffs = self.coeffs(a);
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// An F_q element together with its context; the checked public wrapper.
#[derive(Clone, Debug)]
pub struct FqElement {
    ctx: Fq,
    v: Elt,
}

impl FqElement {
    pub fn ctx(&self) -> &Fq {
        &self.ctx
    }
    pub fn raw(&self) -> Elt {
        self.v
    }
    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    pub fn coeffs(&self) -> Vec<u64> {
        self.ctx.coeffs(self.v)
    }

    fn same_ctx(&self, other: &FqElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn try_add(&self, other: &FqElement) -> Result<FqElement> {
        self.same_ctx(other)?;
        Ok(self.ctx.element(self.ctx.add(self.v, other.v)))
    }
    pub fn try_sub(&self, other: &FqElement) -> Result<FqElement> {
        self.same_ctx(other)?;
        Ok(self.ctx.element(self.ctx.sub(self.v, other.v)))
    }
    pub fn try_mul(&self, other: &FqElement) -> Result<FqElement> {
        self.same_ctx(other)?;
        Ok(self.ctx.element(self.ctx.mul(self.v, other.v)))
    }
    pub fn inv(&self) -> Result<FqElement> {
        Ok(self.ctx.element(self.ctx.inv(self.v)?))
    }
    pub fn pow(&self, n: u64) -> FqElement {
        self.ctx.element(self.ctx.pow(self.v, n))
    }
    /// Power by a nonnegative big integer, reducing the exponent modulo q-1.
    pub fn pow_big(&self, n: &num_bigint::BigUint) -> FqElement {
        use num_traits::Zero;
        if self.v.is_zero() {
            return if n.is_zero() { self.ctx.from_int(1) } else { self.ctx.from_int(0) };
        }
        let m = self.ctx.q() - 1;
        let r = (n % num_bigint::BigUint::from(m)).to_u64_digits();
        let r = if r.is_empty() { 0 } else { r[0] };
        self.pow(r)
    }
    pub fn frobenius(&self) -> FqElement {
        self.ctx.element(self.ctx.frobenius(self.v))
    }
    pub fn inv_frobenius(&self) -> FqElement {
        self.ctx.element(self.ctx.inv_frobenius(self.v))
    }
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.v == other.v
    }
}
impl Eq for FqElement {}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.elt_to_string(self.v))
    }
}

macro_rules! fq_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FqElement {
            type Output = FqElement;
            fn $method(self, rhs: &FqElement) -> FqElement {
                self.$checked(rhs).expect("field context mismatch")
            }
        }
    };
}
fq_binop!(Add, add, try_add);
fq_binop!(Sub, sub, try_sub);
fq_binop!(Mul, mul, try_mul);

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The lexicographically smallest monic irreducible of degree e over F_p
/// (the non-leading coefficients read as a base-p number, most significant
/// coefficient weighted highest).
pub fn default_modulus(p: u64, e: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 1 {
        return Ok(vec![0, 1]);
    }
    let mut bound: u64 = 1;
    for _ in 0..e {
        bound = bound.saturating_mul(p);
    }
    for k in 0..bound {
        let mut coeffs = Vec::with_capacity(e + 1);
        let mut v = k;
        for _ in 0..e {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        if fp_is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

// ---- dense univariate arithmetic over F_p, used by the modulus check ----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (j, &mc) in m.iter().enumerate().take(dm) {
                if mc != 0 {
                    let idx = shift + j;
                    r[idx] = (r[idx] + (p - mc) * c) % p;
                }
            }
        }
        r.pop();
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ca * cb) % p;
        }
    }
    fp_rem(&prod, m, p)
}

fn fp_powmod(a: &[u64], mut n: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = fp_rem(a, m, p);
    let mut acc = vec![1u64];
    while n > 0 {
        if n & 1 == 1 {
            acc = fp_mulmod(&acc, &base, m, p);
        }
        base = fp_mulmod(&base, &base, m, p);
        n >>= 1;
    }
    acc
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        // make y monic for the remainder step
        let lead = *y.last().unwrap();
        if lead != 1 {
            let inv = fp_inv_scalar(lead, p);
            for c in y.iter_mut() {
                *c = *c * inv % p;
            }
        }
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn fp_inv_scalar(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}

/// Irreducibility over F_p: no factor of degree <= e/2, checked via
/// gcd(X^(p^i) - X, f) = 1 for 1 <= i <= floor(e/2).
pub fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    if f[e] != 1 {
        return false;
    }
    let x = vec![0u64, 1];
    let mut xp = fp_rem(&x, f, p);
    for _ in 1..=e / 2 {
        xp = fp_powmod(&xp, p, f, p);
        // xp - x
        let mut diff = xp.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        let g = fp_gcd(&diff, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Fq {
        Fq::new(2, 2, Some(vec![1, 1, 1]), DEFAULT_Q_CAP).unwrap()
    }

    #[test]
    fn f4_generator_square() {
        let f = f4();
        let g = f.element(f.generator_elt());
        let gg = &g * &g;
        // g^2 = g + 1 is forced by reduction mod t^2 + t + 1
        assert_eq!(gg.coeffs(), vec![1, 1]);
    }

    #[test]
    fn f5_inverse() {
        let f = Fq::prime(5).unwrap();
        let two = f.from_int(2);
        assert_eq!(two.inv().unwrap(), f.from_int(3));
    }

    #[test]
    fn f4_pow_cycle() {
        // g^4 = g, by repeated multiplication
        let f = f4();
        let g = f.element(f.generator_elt());
        let mut acc = g.clone();
        for _ in 0..3 {
            acc = &acc * &g;
        }
        assert_eq!(acc, g);
        assert_eq!(g.pow(4), g);
    }

    #[test]
    fn frobenius_and_inverse_on_f4() {
        let f = f4();
        let g = f.element(f.generator_elt());
        let g1 = f.element(f.add(f.generator_elt(), Elt::ONE));
        assert_eq!(g.frobenius(), g1); // g^2 = g+1
        assert_eq!(g.inv_frobenius(), g1); // (g+1)^2 = g
        assert_eq!(g.inv_frobenius().frobenius(), g);
    }

    #[test]
    fn inv_frobenius_identity_on_prime_field() {
        let f = Fq::prime(7).unwrap();
        for a in f.elements() {
            assert_eq!(f.inv_frobenius(a), a);
        }
    }

    #[test]
    fn inv_frobenius_is_field_automorphism() {
        for (p, e) in [(2u64, 1usize), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = Fq::new(p, e, None, DEFAULT_Q_CAP).unwrap();
            if f.q() > 64 {
                continue;
            }
            for a in f.elements() {
                assert_eq!(f.frobenius(f.inv_frobenius(a)), a);
                for b in f.elements() {
                    assert_eq!(
                        f.inv_frobenius(f.add(a, b)),
                        f.add(f.inv_frobenius(a), f.inv_frobenius(b))
                    );
                    assert_eq!(
                        f.inv_frobenius(f.mul(a, b)),
                        f.mul(f.inv_frobenius(a), f.inv_frobenius(b))
                    );
                }
            }
        }
    }

    #[test]
    fn fermat_little_exhaustive() {
        for (p, e) in [(2u64, 1usize), (2, 4), (3, 2), (5, 1), (7, 1), (2, 6), (3, 3)] {
            let f = Fq::new(p, e, None, DEFAULT_Q_CAP).unwrap();
            assert!(f.q() <= 64 + 64); // small fields only
            for a in f.units() {
                assert_eq!(f.pow(a, f.q() - 1), Elt::ONE);
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        let f = Fq::new(3, 2, None, DEFAULT_Q_CAP).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                if !b.is_zero() {
                    assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                }
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(default_modulus(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(Fq::prime(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // t^2 + 1 = (t+1)^2 over F_2
        let r = Fq::new(2, 2, Some(vec![1, 0, 1]), DEFAULT_Q_CAP);
        assert_eq!(r.unwrap_err(), Error::ReducibleModulus);
    }

    #[test]
    fn division_by_zero_and_ctx_mismatch() {
        let f = Fq::prime(5).unwrap();
        assert_eq!(f.from_int(0).inv().unwrap_err(), Error::DivisionByZero);
        let f2 = Fq::prime(7).unwrap();
        let a = f.from_int(1);
        let b = f2.from_int(1);
        assert_eq!(a.try_add(&b).unwrap_err(), Error::CtxMismatch);
        // independently built contexts over the same modulus are compatible
        let f3 = Fq::prime(5).unwrap();
        assert_eq!(f.from_int(2).try_add(&f3.from_int(3)).unwrap(), f.from_int(0));
    }

    #[test]
    fn q_cap_enforced() {
        let r = Fq::new(2, 17, None, DEFAULT_Q_CAP);
        assert!(matches!(r.unwrap_err(), Error::FieldTooLarge(_)));
    }

    #[test]
    fn pow_big_reduces_mod_group_order() {
        use num_bigint::BigUint;
        let f = f4();
        let g = f.element(f.generator_elt());
        let n = BigUint::parse_bytes(b"1000000000000000000000000001", 10).unwrap();
        // 10^27 + 1 mod 3 = 2, so g^n = g^2
        assert_eq!(g.pow_big(&n), g.pow(2));
    }
}
