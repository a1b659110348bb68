//! Normal forms for zero sets: finite parts, arithmetic progressions, and
//! elementary nested sets
//!
//!     S_q(c0; c1, ..., cm) = { c0 + c1 q^k1 + ... + cm q^km : k_i in N } ∩ N
//!
//! with q a power of p, (q-1)c_i integral, the coefficient sum integral,
//! and some c_i positive. Coefficients are stored scaled by q-1 so all
//! arithmetic is integer-exact.

mod decompose;
mod intersect;
mod reconstruct;
mod solve;
mod tensor;
mod todfa;

pub use decompose::decompose;
pub use intersect::intersect;
pub use reconstruct::reconstruct_dfa;
pub use solve::{solve_vanishing, RectCoset};
pub use tensor::tensor_criterion;
pub use todfa::{ap_to_dfa, finite_to_dfa, nested_to_dfa, pnormal_to_dfa};

use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::seq::NormalizedPowerSum;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An elementary nested set, stored as q = p^r and the scaled integer
/// coefficients z_i = (q-1) c_i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementaryNested {
    p: u64,
    r: u32,
    /// z[0] is the scaled constant; z[1..] are the scaled moving
    /// coefficients, nonzero, at least one positive.
    z: Vec<BigInt>,
}

/// Builder outcome: a proper nested set, or the finitely many values the
/// data degenerates to (no moving slots, or all slots negative).
#[derive(Clone, Debug)]
pub enum NestedOrFinite {
    Nested(ElementaryNested),
    Finite(Vec<BigUint>),
}

impl ElementaryNested {
    pub fn new(p: u64, r: u32, z: Vec<BigInt>) -> Result<ElementaryNested> {
        if z.is_empty() {
            return Err(Error::InvalidInput("nested set needs a constant coefficient".into()));
        }
        let q = BigInt::from(p).pow(r);
        let qm1 = &q - 1;
        if z[1..].iter().any(|zi| zi.is_zero()) {
            return Err(Error::InvalidInput("zero moving coefficient".into()));
        }
        if !z[1..].iter().any(|zi| zi.is_positive()) {
            return Err(Error::InvalidInput(
                "nested set needs a positive moving coefficient".into(),
            ));
        }
        let sum: BigInt = z.iter().sum();
        if !qm1.is_zero() && !sum.mod_floor(&qm1).is_zero() {
            return Err(Error::InvalidInput(
                "coefficient sum is not divisible by q - 1".into(),
            ));
        }
        let mut z = z;
        z[1..].sort();
        Ok(ElementaryNested { p, r, z })
    }

    /// Normalize arbitrary scaled data: drop zero slots, and collapse to a
    /// finite value list when no positive slot remains.
    pub fn nested_or_finite(
        p: u64,
        r: u32,
        z: Vec<BigInt>,
        limits: &Limits,
    ) -> Result<NestedOrFinite> {
        let q = BigInt::from(p).pow(r);
        let qm1 = &q - 1;
        let sum: BigInt = z.iter().sum();
        if !sum.mod_floor(&qm1).is_zero() {
            return Err(Error::Internal("nested coefficient sum not 0 mod q-1".into()));
        }
        let mut slots: Vec<BigInt> = z[1..].iter().filter(|zi| !zi.is_zero()).cloned().collect();
        let z0 = z[0].clone();
        if slots.is_empty() {
            let (v, rem) = z0.div_rem(&qm1);
            if rem.is_zero() && !v.is_negative() {
                return Ok(NestedOrFinite::Finite(vec![v.to_biguint().unwrap()]));
            }
            return Ok(NestedOrFinite::Finite(Vec::new()));
        }
        if !slots.iter().any(|zi| zi.is_positive()) {
            // all moving coefficients negative: finitely many values
            let max_num = &z0 + slots.iter().sum::<BigInt>();
            let mut out = Vec::new();
            if !max_num.is_negative() {
                let vmax = max_num.div_floor(&qm1);
                let vmax_u = vmax
                    .to_u64()
                    .ok_or_else(|| Error::CapExceeded("degenerate nested set too wide".into()))?;
                if vmax_u as usize > limits.enumeration_cap {
                    return Err(Error::CapExceeded("degenerate nested set too wide".into()));
                }
                let mut full = vec![z0.clone()];
                full.append(&mut slots.clone());
                let probe = ElementaryNested { p, r, z: full };
                for v in 0..=vmax_u {
                    if probe.member_int(&BigInt::from(v)) {
                        out.push(BigUint::from(v));
                    }
                }
            }
            return Ok(NestedOrFinite::Finite(out));
        }
        let mut full = vec![z0];
        full.append(&mut slots);
        Ok(NestedOrFinite::Nested(ElementaryNested::new(p, r, full)?))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> BigUint {
        BigUint::from(self.p).pow(self.r)
    }
    /// Number of moving terms.
    pub fn order(&self) -> usize {
        self.z.len() - 1
    }
    /// Scaled coefficients (q-1)c_i, constant first.
    pub fn scaled_coeffs(&self) -> &[BigInt] {
        &self.z
    }

    /// Decides membership of an integer (negative targets are allowed; the
    /// public set is the intersection with N). Depth-first search over
    /// exponents in descending slot order with interval pruning.
    pub fn member_int(&self, n: &BigInt) -> bool {
        let q = BigInt::from(self.p).pow(self.r);
        let qm1 = &q - 1;
        let target = n * &qm1 - &self.z[0];
        let slots: Vec<&BigInt> = self.z[1..].iter().collect();
        // exponent cap: q^L > (q-1)|n| + sum |z_i|
        let mut budget = n.abs() * &qm1 + BigInt::from(2);
        for s in &slots {
            budget += s.abs();
        }
        let mut cap = 0u32;
        let mut power = BigInt::one();
        while power <= budget {
            power *= &q;
            cap += 1;
        }
        search_exponents(&slots, &target, cap, &q)
    }

    pub fn member(&self, n: &BigUint) -> bool {
        self.member_int(&BigInt::from(n.clone()))
    }

    /// All members below the bound, by membership scan over the residue
    /// class of the constant term modulo q-1... the class pruning keeps the
    /// scan linear in bound/(q-1).
    pub fn members_below(&self, bound: &BigUint, limits: &Limits) -> Result<Vec<BigUint>> {
        let q = BigInt::from(self.p).pow(self.r);
        let qm1 = &q - 1;
        let sum: BigInt = self.z.iter().sum();
        debug_assert!(sum.mod_floor(&qm1).is_zero());
        // every member is congruent to (z0 + sum z_i)/(q-1) ... values are
        // unconstrained mod q-1 in general, so scan all residues but cap.
        let b = BigInt::from(bound.clone());
        let count = (&b).to_u64().unwrap_or(u64::MAX);
        if count as usize > limits.enumeration_cap {
            return Err(Error::CapExceeded("nested member scan too wide".into()));
        }
        let mut out = Vec::new();
        let mut v = BigInt::zero();
        while v < b {
            if self.member_int(&v) {
                out.push(v.to_biguint().unwrap());
            }
            v += 1;
        }
        Ok(out)
    }

    /// The image {k n + j : n in set}: q is unchanged, the constant picks
    /// up j and everything scales by k. Exact whenever the underlying
    /// unrestricted-exponent set has no negative integer values that the
    /// map would push into N; the caller handles that rare spur.
    pub fn affine(&self, k: u64, j: u64) -> Result<ElementaryNested> {
        let q = BigInt::from(self.p).pow(self.r);
        let qm1 = &q - 1;
        let mut z = Vec::with_capacity(self.z.len());
        z.push(&qm1 * BigInt::from(j) + &self.z[0] * BigInt::from(k));
        for zi in &self.z[1..] {
            z.push(zi * BigInt::from(k));
        }
        ElementaryNested::new(self.p, self.r, z)
    }

    /// `S_q(c0; c1, ..., cm)` with coefficients in lowest integer terms.
    pub fn render(&self) -> String {
        let q = self.q();
        let qm1 = BigInt::from(q.clone()) - 1;
        let coeff = |z: &BigInt| {
            let g = z.gcd(&qm1);
            let (num, den) = (z / &g, &qm1 / &g);
            if den.is_one() {
                format!("{num}")
            } else {
                format!("{num}/{den}")
            }
        };
        let mut parts = vec![format!("{}", coeff(&self.z[0]))];
        let moving: Vec<String> = self.z[1..].iter().map(&coeff).collect();
        parts.push(moving.join(", "));
        format!("S_{}({}; {})", q, parts[0], parts[1])
    }

    /// Negative integers of the unrestricted-exponent set in [lo, -1];
    /// used to certify affine images exact.
    pub fn negative_members_from(&self, lo: i64) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut v = lo;
        while v < 0 {
            let vb = BigInt::from(v);
            if self.member_int(&vb) {
                out.push(vb);
            }
            v += 1;
        }
        out
    }
}

fn search_exponents(slots: &[&BigInt], target: &BigInt, cap: u32, q: &BigInt) -> bool {
    if slots.is_empty() {
        return target.is_zero();
    }
    // interval pruning: achievable range with exponents in [0, cap]
    let mut max_reach = BigInt::zero();
    let mut min_reach = BigInt::zero();
    let qcap = q.pow(cap);
    for s in slots {
        if s.is_positive() {
            max_reach += *s * &qcap;
            min_reach += *s;
        } else {
            max_reach += *s;
            min_reach += *s * &qcap;
        }
    }
    if *target > max_reach || *target < min_reach {
        return false;
    }
    let (first, rest) = slots.split_first().unwrap();
    let mut power = BigInt::one();
    for _ in 0..=cap {
        let remaining = target - *first * &power;
        if search_exponents(rest, &remaining, cap, q) {
            return true;
        }
        power *= q;
    }
    false
}

/// An infinite arithmetic progression {offset + period * k : k in N}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Progression {
    pub offset: u64,
    pub period: u64,
}

impl Progression {
    pub fn member(&self, n: &BigUint) -> bool {
        let off = BigUint::from(self.offset);
        if *n < off {
            return false;
        }
        ((n - off) % BigUint::from(self.period)).is_zero()
    }
}

/// A zero set in normal form: a finite set, infinite arithmetic
/// progressions, and elementary nested sets, together with the exact loop
/// families it was extracted from (when it came from an automaton).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNormalForm {
    pub p: u64,
    pub finite: Vec<BigUint>,
    pub aps: Vec<Progression>,
    pub nested: Vec<ElementaryNested>,
    pub provenance: Option<Vec<UpFamily>>,
}

/// A loop family: the set of numerals u_m w_m^{k_m} ... u_1 w_1^{k_1} u_0
/// over independent repetition counts. Words are stored in numeral order
/// (most significant digit first); u has one more entry than w.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UpFamily {
    pub u: Vec<Vec<u32>>,
    pub w: Vec<Vec<u32>>,
}

impl PNormalForm {
    pub fn empty(p: u64) -> PNormalForm {
        PNormalForm { p, finite: Vec::new(), aps: Vec::new(), nested: Vec::new(), provenance: None }
    }

    pub fn member(&self, n: &BigUint) -> bool {
        self.finite.binary_search(n).is_ok()
            || self.aps.iter().any(|ap| ap.member(n))
            || self.nested.iter().any(|s| s.member(n))
    }

    /// Sort and deduplicate all parts; set equality is unaffected.
    pub fn canonicalize(&mut self) {
        self.finite.sort();
        self.finite.dedup();
        self.aps.sort();
        self.aps.dedup();
        self.nested.sort_by(|a, b| {
            (a.q(), a.order(), &a.z).cmp(&(b.q(), b.order(), &b.z))
        });
        self.nested.dedup();
        if let Some(fams) = &mut self.provenance {
            fams.sort();
            fams.dedup();
        }
    }

    pub fn is_empty_form(&self) -> bool {
        self.finite.is_empty() && self.aps.is_empty() && self.nested.is_empty()
    }

    /// The image under n -> k n + j, part by part. Nested parts whose
    /// unrestricted-exponent closure contains negative integers that the
    /// map would land in N are rejected here; the pipeline falls back to
    /// the automaton route for those.
    pub fn affine_image(&self, k: u64, j: u64) -> Result<PNormalForm> {
        if k == 0 {
            return Err(Error::InvalidInput("affine step must be positive".into()));
        }
        let mut out = PNormalForm::empty(self.p);
        for v in &self.finite {
            out.finite.push(v * BigUint::from(k) + BigUint::from(j));
        }
        for ap in &self.aps {
            out.aps.push(Progression {
                offset: j + k * ap.offset,
                period: k * ap.period,
            });
        }
        for s in &self.nested {
            if j >= k {
                let lo = -((j / k) as i64) - 1;
                let spurious = s.negative_members_from(lo);
                let spurious: Vec<&BigInt> = spurious
                    .iter()
                    .filter(|v| (BigInt::from(k) * *v + BigInt::from(j)) >= BigInt::zero())
                    .collect();
                if !spurious.is_empty() {
                    return Err(Error::UnsupportedIntersection(format!(
                        "affine image of {} by ({k}, {j}) picks up negative preimages",
                        s.render()
                    )));
                }
            }
            out.nested.push(s.affine(k, j)?);
        }
        out.canonicalize();
        Ok(out)
    }

    /// Textual rendering: finite set, progressions `j + k*N`, nested sets
    /// `S_q(c0; c1, ..., cm)` with coefficients in lowest terms.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if !self.finite.is_empty() {
            let vals: Vec<String> = self.finite.iter().map(|v| v.to_string()).collect();
            parts.push(format!("{{{}}}", vals.join(", ")));
        }
        for ap in &self.aps {
            parts.push(format!("{} + {}*N", ap.offset, ap.period));
        }
        for s in &self.nested {
            parts.push(s.render());
        }
        if parts.is_empty() {
            "{}".to_string()
        } else {
            parts.join(" ∪ ")
        }
    }

    pub fn union_with(&mut self, other: PNormalForm) {
        debug_assert_eq!(self.p, other.p);
        self.finite.extend(other.finite);
        self.aps.extend(other.aps);
        self.nested.extend(other.nested);
        match (&mut self.provenance, other.provenance) {
            (Some(a), Some(b)) => a.extend(b),
            (prov, _) => *prov = None,
        }
        self.canonicalize();
    }
}

/// Density counters: |S ∩ [0, N)|, the max count over sliding windows, and
/// a fitted log-growth exponent for diagnostics.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub count: BigUint,
    pub window: u64,
    pub window_max: u64,
    pub fitted_log_exponent: f64,
}

pub fn density(dfa: &Dfa, bound: &BigUint, window: u64, limits: &Limits) -> Result<DensityReport> {
    let count = dfa.count_below(bound)?;
    let members = dfa.enumerate_below(bound, limits.enumeration_cap)?;
    let mut window_max = 0u64;
    let mut lo = 0usize;
    let wb = BigUint::from(window.max(1)) - BigUint::one();
    for hi in 0..members.len() {
        while &members[hi] - &members[lo] > wb {
            lo += 1;
        }
        window_max = window_max.max((hi - lo + 1) as u64);
    }
    // fit count(2^t) ~ t^kappa by least squares on the log-log points
    let mut points = Vec::new();
    let mut t = 2u32;
    loop {
        let b = BigUint::from(2u64).pow(t);
        if b > *bound {
            break;
        }
        let c = dfa.count_below(&b)?;
        if c > BigUint::zero() {
            let cf = c.to_f64().unwrap_or(f64::MAX);
            points.push(((t as f64).ln(), cf.ln()));
        }
        t += 1;
    }
    let fitted = if points.len() >= 2 {
        let n = points.len() as f64;
        let sx: f64 = points.iter().map(|(x, _)| x).sum();
        let sy: f64 = points.iter().map(|(_, y)| y).sum();
        let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
        let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    } else {
        0.0
    };
    Ok(DensityReport { count, window, window_max, fitted_log_exponent: fitted })
}

/// The a-priori complexity bound q^(d^2 k^4 p^4) for univariate pieces with
/// alpha degrees <= k (k >= 2) and beta degrees <= (p-1)k, reported
/// alongside the measured minimal state count.
#[derive(Clone, Debug)]
pub struct CompBoundReport {
    /// Exponent E with bound = q^E.
    pub exponent: u64,
    pub q: u64,
    /// log2 of the bound, for display.
    pub log2_bound: f64,
    pub actual_states: usize,
}

pub fn comp_bound_report(piece: &NormalizedPowerSum, actual_states: usize) -> Result<CompBoundReport> {
    let ring = piece.ring();
    if ring.nvars() != 1 {
        return Err(Error::PreconditionUnmet(
            "complexity bound applies to univariate pieces".into(),
        ));
    }
    let p = ring.field().p();
    let q = ring.field().q();
    let k = piece.alpha_degree().max(2);
    if piece.beta_degree() > (p - 1) * k {
        return Err(Error::PreconditionUnmet(format!(
            "beta degree {} exceeds (p-1)k = {}",
            piece.beta_degree(),
            (p - 1) * k
        )));
    }
    let d = piece.order() as u64;
    let exponent = d
        .checked_mul(d)
        .and_then(|x| x.checked_mul(k.checked_pow(4)?))
        .and_then(|x| x.checked_mul(p.checked_pow(4)?))
        .ok_or_else(|| Error::CapExceeded("complexity exponent overflow".into()))?;
    let log2_bound = exponent as f64 * (q as f64).log2();
    // assert actual <= q^exponent
    let within = if log2_bound >= 63.0 {
        true
    } else {
        (actual_states as u64) <= q.pow(exponent as u32)
    };
    if !within {
        return Err(Error::BoundViolated(format!(
            "measured {actual_states} states exceed q^{exponent}"
        )));
    }
    Ok(CompBoundReport { exponent, q, log2_bound, actual_states })
}
