//! Sequence representations and their reduction to simple nondegenerate
//! pieces.
//!
//! A sequence enters either as a power sum `a(n) = sum_i beta_i alpha_i^n`
//! with rational-function data, or as a recurrence with initial terms.
//! [`make_simple_nondegenerate`] splits it along residue classes `kn + j`
//! into pieces that are either identically zero (an arithmetic progression
//! of zeroes) or power sums with pairwise non-proportional polynomial
//! alphas, the shape the automaton builder requires.

use crate::error::{Error, Result};
use crate::ff::Elt;
use crate::limits::Limits;
use crate::poly::{
    rational_roots_in_polyring, sylvester_resultant, MultiPoly, PolyRing, RationalFunction,
    UniPoly, VarPoly,
};

/// Power sum with rational-function data: terms (beta_i, alpha_i).
#[derive(Clone, Debug)]
pub struct PowerSumSeq {
    ring: PolyRing,
    terms: Vec<(RationalFunction, RationalFunction)>,
}

impl PowerSumSeq {
    pub fn new(ring: PolyRing, terms: Vec<(RationalFunction, RationalFunction)>) -> Result<Self> {
        for (beta, alpha) in &terms {
            if alpha.is_zero() {
                return Err(Error::ZeroAlpha);
            }
            if beta.is_zero() {
                return Err(Error::InvalidInput("zero beta in power sum".into()));
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if terms[i].1 == terms[j].1 {
                    return Err(Error::InvalidInput(format!(
                        "alphas {} and {} coincide; merge their betas",
                        i, j
                    )));
                }
            }
        }
        Ok(PowerSumSeq { ring, terms })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }
    pub fn terms(&self) -> &[(RationalFunction, RationalFunction)] {
        &self.terms
    }
    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// Exact value of a(n).
    pub fn evaluate(&self, n: u64, limits: &Limits) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero(&self.ring);
        for (beta, alpha) in &self.terms {
            let deg = alpha
                .num()
                .total_degree()
                .unwrap_or(0)
                .max(alpha.den().total_degree().unwrap_or(0));
            if deg.saturating_mul(n) > limits.eval_degree_budget {
                return Err(Error::BudgetExceeded(format!(
                    "evaluating alpha^{n} of degree {deg}"
                )));
            }
            acc = acc.add(&beta.mul(&alpha.pow(n)?));
        }
        Ok(acc)
    }

    /// Clear denominators: alphas and betas become polynomials while the
    /// zero set is preserved (the sequence is scaled by gamma * c^n with
    /// gamma, c nonzero).
    pub fn normalize(&self) -> Result<NormalizedPowerSum> {
        let ring = &self.ring;
        let mut alphas = Vec::with_capacity(self.terms.len());
        let mut betas = Vec::with_capacity(self.terms.len());
        for (i, (_, alpha)) in self.terms.iter().enumerate() {
            let mut a = alpha.num().clone();
            for (j, (_, other)) in self.terms.iter().enumerate() {
                if i != j {
                    a = a.mul(other.den());
                }
            }
            alphas.push(a);
        }
        for (i, (beta, _)) in self.terms.iter().enumerate() {
            let mut b = beta.num().clone();
            for (j, (other, _)) in self.terms.iter().enumerate() {
                if i != j {
                    b = b.mul(other.den());
                }
            }
            betas.push(b);
        }
        let terms: Vec<(MultiPoly, MultiPoly)> = betas.into_iter().zip(alphas).collect();
        for (beta, alpha) in &terms {
            if alpha.is_zero() {
                return Err(Error::ZeroAlpha);
            }
            debug_assert!(!beta.is_zero());
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                debug_assert_ne!(terms[i].1, terms[j].1, "distinctness lost in normalization");
            }
        }
        Ok(NormalizedPowerSum::new(ring.clone(), terms))
    }
}

/// Power sum with polynomial data (denominators cleared).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPowerSum {
    ring: PolyRing,
    /// (beta_i, alpha_i), alphas pairwise distinct and nonzero, betas nonzero.
    terms: Vec<(MultiPoly, MultiPoly)>,
    alpha_degree: u64,
    beta_degree: u64,
}

impl NormalizedPowerSum {
    pub fn new(ring: PolyRing, terms: Vec<(MultiPoly, MultiPoly)>) -> Self {
        let alpha_degree =
            terms.iter().filter_map(|(_, a)| a.total_degree()).max().unwrap_or(0);
        let beta_degree = terms.iter().filter_map(|(b, _)| b.total_degree()).max().unwrap_or(0);
        NormalizedPowerSum { ring, terms, alpha_degree, beta_degree }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }
    pub fn terms(&self) -> &[(MultiPoly, MultiPoly)] {
        &self.terms
    }
    pub fn order(&self) -> usize {
        self.terms.len()
    }
    /// Max total degree of the alphas.
    pub fn alpha_degree(&self) -> u64 {
        self.alpha_degree
    }
    /// Max total degree of the betas.
    pub fn beta_degree(&self) -> u64 {
        self.beta_degree
    }
    pub fn is_zero_seq(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, n: u64, limits: &Limits) -> Result<MultiPoly> {
        if self.alpha_degree.saturating_mul(n) > limits.eval_degree_budget {
            return Err(Error::BudgetExceeded(format!("power degree {n}")));
        }
        let mut acc = self.ring.zero();
        for (beta, alpha) in &self.terms {
            acc = acc.add(&beta.mul(&alpha.pow(n)?));
        }
        Ok(acc)
    }

    /// Zero positions among n = 0..n_max, by incremental evaluation.
    pub fn zero_scan(&self, n_max: u64, limits: &Limits) -> Result<Vec<bool>> {
        if self.alpha_degree.saturating_mul(n_max) > limits.eval_degree_budget {
            return Err(Error::BudgetExceeded(format!("zero scan to {n_max}")));
        }
        let mut powers: Vec<MultiPoly> = self.terms.iter().map(|_| self.ring.one()).collect();
        let mut out = Vec::with_capacity(n_max as usize + 1);
        for _ in 0..=n_max {
            let mut acc = self.ring.zero();
            for ((beta, _), pw) in self.terms.iter().zip(&powers) {
                acc = acc.add(&beta.mul(pw));
            }
            out.push(acc.is_zero());
            for ((_, alpha), pw) in self.terms.iter().zip(powers.iter_mut()) {
                *pw = pw.mul(alpha);
            }
        }
        Ok(out)
    }

    /// No two alphas proportional over F_q^*, no zero beta, alphas distinct:
    /// the certificate required by the automaton builder.
    pub fn certify_simple_nondegenerate(&self) -> Result<()> {
        for (beta, alpha) in &self.terms {
            if beta.is_zero() || alpha.is_zero() {
                return Err(Error::Internal("zero term in certified piece".into()));
            }
        }
        for i in 0..self.terms.len() {
            for j in i + 1..self.terms.len() {
                if self.terms[i].1.proportional(&self.terms[j].1)?.is_some() {
                    return Err(Error::Internal(format!(
                        "alphas {i} and {j} are proportional; piece is degenerate"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Recurrence a(n+d) = coeffs[d-1] a(n+d-1) + ... + coeffs[0] a(n) with
/// initial terms a(0..d). Coefficients are univariate rational functions.
#[derive(Clone, Debug)]
pub struct Recurrence {
    ring: PolyRing,
    coeffs: Vec<RationalFunction>,
    initial: Vec<RationalFunction>,
}

impl Recurrence {
    pub fn new(
        ring: PolyRing,
        coeffs: Vec<RationalFunction>,
        initial: Vec<RationalFunction>,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("recurrence order must be at least 1".into()));
        }
        if coeffs.len() != initial.len() {
            return Err(Error::InvalidInput(format!(
                "recurrence of order {} needs {} initial terms, got {}",
                coeffs.len(),
                coeffs.len(),
                initial.len()
            )));
        }
        Ok(Recurrence { ring, coeffs, initial })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }
    pub fn initial(&self) -> &[RationalFunction] {
        &self.initial
    }

    /// Values a(0..=n) by direct iteration with rational arithmetic.
    pub fn evaluate_prefix(&self, n: u64, limits: &Limits) -> Result<Vec<RationalFunction>> {
        let d = self.order();
        let mut vals = self.initial.clone();
        while (vals.len() as u64) <= n {
            let mut next = RationalFunction::zero(&self.ring);
            let base = vals.len() - d;
            for (i, g) in self.coeffs.iter().enumerate() {
                next = next.add(&g.mul(&vals[base + i]));
            }
            if next.num().total_degree().unwrap_or(0) > limits.eval_degree_budget {
                return Err(Error::BudgetExceeded("recurrence iteration degree".into()));
            }
            vals.push(next);
        }
        vals.truncate(n as usize + 1);
        Ok(vals)
    }

    pub fn evaluate(&self, n: u64, limits: &Limits) -> Result<RationalFunction> {
        Ok(self.evaluate_prefix(n, limits)?.pop().unwrap())
    }

    /// The common denominator of the coefficients (product, no gcd).
    fn scale_factor(&self) -> MultiPoly {
        let mut d = self.ring.one();
        for g in &self.coeffs {
            d = d.mul(g.den());
        }
        d
    }

    /// Scaled sequence b(n) = D^n a(n): same zero set, polynomial companion
    /// coefficients. Returns (polynomial coefficients, scaled initial terms).
    pub fn scaled_polynomial_form(&self) -> Result<(Vec<MultiPoly>, Vec<RationalFunction>)> {
        let d = self.order();
        let scale = self.scale_factor();
        let mut poly_coeffs = Vec::with_capacity(d);
        for (i, g) in self.coeffs.iter().enumerate() {
            // gamma_i * D^(d-i) is exactly divisible by den(gamma_i)
            let pw = scale.pow((d - i) as u64)?;
            let num = g.num().mul(&pw);
            poly_coeffs.push(num.exact_div(g.den())?);
        }
        let mut initial = Vec::with_capacity(d);
        let mut pw = RationalFunction::from_poly(self.ring.one());
        let scale_rf = RationalFunction::from_poly(scale);
        for a in &self.initial {
            initial.push(a.mul(&pw));
            pw = pw.mul(&scale_rf);
        }
        Ok((poly_coeffs, initial))
    }

    /// Values of the sequence scaled by D^n and by the product of the
    /// initial-term denominators: every value is polynomial and the zero
    /// set is untouched.
    pub fn cleared_polynomial_values(&self, n_max: u64, limits: &Limits) -> Result<Vec<MultiPoly>> {
        let (coeffs, initial) = self.scaled_polynomial_form()?;
        let mut vals: Vec<MultiPoly> = Vec::with_capacity(n_max as usize + 1);
        for (i, v) in initial.iter().enumerate() {
            let mut c = v.num().clone();
            for (j, w) in initial.iter().enumerate() {
                if i != j {
                    c = c.mul(w.den());
                }
            }
            vals.push(c);
        }
        let d = self.order();
        let max_cdeg = coeffs.iter().filter_map(|c| c.total_degree()).max().unwrap_or(0);
        if max_cdeg.saturating_mul(n_max) > limits.eval_degree_budget {
            return Err(Error::BudgetExceeded(format!("recurrence iteration to {n_max}")));
        }
        while (vals.len() as u64) <= n_max {
            let base = vals.len() - d;
            let mut next = self.ring.zero();
            for (i, g) in coeffs.iter().enumerate() {
                next = next.add(&g.mul(&vals[base + i]));
            }
            vals.push(next);
        }
        vals.truncate(n_max as usize + 1);
        Ok(vals)
    }

    /// Zero positions among n = 0..n_max.
    pub fn zero_scan(&self, n_max: u64, limits: &Limits) -> Result<Vec<bool>> {
        Ok(self
            .cleared_polynomial_values(n_max, limits)?
            .iter()
            .map(|v| v.is_zero())
            .collect())
    }
}

/// One residue class of the sectioned sequence.
#[derive(Clone, Debug)]
pub enum PieceKind {
    /// The section is identically zero: contributes the full progression.
    Zero,
    Seq(NormalizedPowerSum),
}

#[derive(Clone, Debug)]
pub struct SectionPiece {
    /// Residue within the section step (before the global offset).
    pub residue: u64,
    pub step: u64,
    pub kind: PieceKind,
}

/// Result of reducing a sequence to simple nondegenerate pieces:
/// Z(a) = prefix_zeros  ∪  ⋃_j { k*n + (offset + residue_j) : n in Z(piece_j) }.
#[derive(Clone, Debug)]
pub struct SectionDecomposition {
    pub step: u64,
    /// Number of leading indices stripped to make the sequence basic.
    pub offset: u64,
    /// Zero positions among the stripped indices.
    pub prefix_zeros: Vec<u64>,
    pub pieces: Vec<SectionPiece>,
    /// Order of the underlying sequence (for complexity reporting).
    pub order: usize,
}

/// The section (T a)(n) = a(kn + j) of a normalized power sum: alphas are
/// raised to the k-th power and betas pick up alpha^j; terms with equal new
/// alphas merge, and full cancellation yields the zero piece.
pub fn section_power_sum(seq: &NormalizedPowerSum, k: u64, j: u64) -> Result<PieceKind> {
    debug_assert!(k >= 1 && j < k.max(1));
    let mut merged: Vec<(MultiPoly, MultiPoly)> = Vec::new();
    for (beta, alpha) in seq.terms() {
        let new_alpha = alpha.pow(k)?;
        let new_beta = beta.mul(&alpha.pow(j)?);
        if let Some((b, _)) = merged.iter_mut().find(|(_, a)| *a == new_alpha) {
            *b = b.add(&new_beta);
        } else {
            merged.push((new_beta, new_alpha));
        }
    }
    merged.retain(|(b, _)| !b.is_zero());
    if merged.is_empty() {
        Ok(PieceKind::Zero)
    } else {
        Ok(PieceKind::Seq(NormalizedPowerSum::new(seq.ring().clone(), merged)))
    }
}

/// Companion polynomial shared by all sections (T a)(n) = a(kn + j) of a
/// recurrence with monic companion P, via the resultant
/// Q(E) = Res_F(F^k - E, P(F)), sign-normalized to be monic. The identity
/// Q(E^k) = P(E) U(E) is asserted exactly.
pub fn section_recurrence(
    work: &PolyRing,
    outer_f: usize,
    outer_e: usize,
    companion: &VarPoly,
    k: u64,
) -> Result<VarPoly> {
    debug_assert!(k >= 1);
    debug_assert!(companion.is_monic());
    let d = companion.degree().unwrap();
    let e_var = work.var(outer_e);
    // F^k - E
    let mut a_coeffs = vec![e_var.neg()];
    a_coeffs.extend((1..k).map(|_| work.zero()));
    a_coeffs.push(work.one());
    let a = VarPoly::new(work.clone(), outer_f, a_coeffs);
    let q_raw = sylvester_resultant(&a, companion)?;

    // sign-normalize: (-1)^(d(k+1)) Q is monic of degree d in E
    let sign_negative = (d as u64 * (k + 1)) % 2 == 1;
    let q_signed = if sign_negative { q_raw.neg() } else { q_raw.clone() };
    let q = VarPoly::from_multi(&q_signed, outer_e);
    if q.degree() != Some(d) || !q.is_monic() {
        return Err(Error::Internal("sectioned companion is not monic of the input degree".into()));
    }

    // U(E) = Res_F(F^(k-1) + F^(k-2) E + ... + E^(k-1), P(F))
    if k > 1 {
        let s_coeffs: Vec<MultiPoly> =
            (0..k).map(|i| e_var.pow(k - 1 - i)).collect::<Result<_>>()?;
        let s = VarPoly::new(work.clone(), outer_f, s_coeffs);
        let u_raw = sylvester_resultant(&s, companion)?;
        let f_minus_e = VarPoly::new(work.clone(), outer_f, vec![e_var.neg(), work.one()]);
        let p_of_e = {
            // P with E substituted for the eliminated variable
            let coeffs = companion.coeffs().to_vec();
            VarPoly::new(work.clone(), outer_e, coeffs).to_multi()
        };
        let lhs = q_raw.stretch_var(outer_e, k as u32)?;
        let rhs = p_of_e.mul(&u_raw);
        if lhs != rhs {
            return Err(Error::Internal("section identity Q(E^k) = P(E) U(E) failed".into()));
        }
        // the first factor of the split is P(E) itself
        debug_assert_eq!(sylvester_resultant(&f_minus_e, companion)?, p_of_e);
    }
    Ok(q)
}

/// Input representation accepted by the pipeline.
#[derive(Clone, Debug)]
pub enum SequenceRep {
    PowerSum(PowerSumSeq),
    Recurrence(Recurrence),
}

impl SequenceRep {
    pub fn ring(&self) -> &PolyRing {
        match self {
            SequenceRep::PowerSum(s) => s.ring(),
            SequenceRep::Recurrence(r) => r.ring(),
        }
    }

    pub fn evaluate(&self, n: u64, limits: &Limits) -> Result<RationalFunction> {
        match self {
            SequenceRep::PowerSum(s) => s.evaluate(n, limits),
            SequenceRep::Recurrence(r) => r.evaluate(n, limits),
        }
    }

    /// Zero positions among 0..=n_max, the brute-force oracle.
    pub fn zero_scan(&self, n_max: u64, limits: &Limits) -> Result<Vec<bool>> {
        match self {
            SequenceRep::PowerSum(s) => s.normalize()?.zero_scan(n_max, limits),
            SequenceRep::Recurrence(r) => r.zero_scan(n_max, limits),
        }
    }
}

/// Smallest power of p that is >= d.
fn p_power_at_least(p: u64, d: u64) -> u64 {
    let mut q = 1;
    while q < d {
        q *= p;
    }
    q
}

/// Split a sequence into simple nondegenerate (or identically zero) pieces.
///
/// Power sums are sectioned with step q-1: the torsion units of the
/// rational function field are exactly F_q^*, so ratios that survive the
/// sectioning are certified non-torsion by proportionality tests.
/// Recurrences additionally multiply the step by the smallest p-power >= d
/// before factoring the sectioned companion and solving for the betas.
pub fn make_simple_nondegenerate(rep: &SequenceRep, limits: &Limits) -> Result<SectionDecomposition> {
    match rep {
        SequenceRep::PowerSum(seq) => {
            let normalized = seq.normalize()?;
            let order = normalized.order();
            if normalized.is_zero_seq() {
                return Ok(SectionDecomposition {
                    step: 1,
                    offset: 0,
                    prefix_zeros: Vec::new(),
                    pieces: vec![SectionPiece { residue: 0, step: 1, kind: PieceKind::Zero }],
                    order,
                });
            }
            let q = normalized.ring().field().q();
            let k = (q - 1).max(1);
            let mut pieces = Vec::with_capacity(k as usize);
            for j in 0..k {
                let kind = section_power_sum(&normalized, k, j)?;
                if let PieceKind::Seq(piece) = &kind {
                    piece.certify_simple_nondegenerate()?;
                }
                pieces.push(SectionPiece { residue: j, step: k, kind });
            }
            Ok(SectionDecomposition { step: k, offset: 0, prefix_zeros: Vec::new(), pieces, order })
        }
        SequenceRep::Recurrence(rec) => make_simple_nondegenerate_recurrence(rec, limits),
    }
}

fn make_simple_nondegenerate_recurrence(
    rec: &Recurrence,
    limits: &Limits,
) -> Result<SectionDecomposition> {
    let ring = rec.ring().clone();
    if ring.nvars() != 1 {
        return Err(Error::InvalidInput(
            "recurrence conversion supports exactly one variable; supply a power sum instead"
                .into(),
        ));
    }
    let (mut coeffs, mut initial) = rec.scaled_polynomial_form()?;
    let order = rec.order();

    // strip factors of the shift from the companion until it is basic,
    // recording zero positions among the skipped leading indices
    let mut offset = 0u64;
    let mut prefix_zeros = Vec::new();
    while !coeffs.is_empty() && coeffs[0].is_zero() {
        if initial[0].is_zero() {
            prefix_zeros.push(offset);
        }
        coeffs.remove(0);
        initial.remove(0);
        offset += 1;
        if coeffs.is_empty() {
            // companion was a pure shift power: the tail is identically zero
            return Ok(SectionDecomposition {
                step: 1,
                offset,
                prefix_zeros,
                pieces: vec![SectionPiece { residue: 0, step: 1, kind: PieceKind::Zero }],
                order,
            });
        }
    }
    let d = coeffs.len();
    let field = ring.field().clone();
    let q = field.q();
    let p = field.p();
    let step = (q - 1).max(1) * p_power_at_least(p, d as u64);

    // work ring with the two resultant variables appended
    let work = ring.extended("__E").extended("__F");
    let outer_e = work.nvars() - 2;
    let outer_f = work.nvars() - 1;
    let embed: Vec<usize> = (0..ring.nvars()).collect();
    let mut companion_coeffs: Vec<MultiPoly> =
        coeffs.iter().map(|c| c.remap_vars(&work, &embed).neg()).collect();
    companion_coeffs.push(work.one());
    let companion = VarPoly::new(work.clone(), outer_f, companion_coeffs);

    let sectioned = section_recurrence(&work, outer_f, outer_e, &companion, step)?;
    let report = rational_roots_in_polyring(&sectioned, 0)?;
    if report.zero_multiplicity != 0 {
        return Err(Error::Internal("sectioned companion of a basic sequence has root 0".into()));
    }
    if report.cofactor_degree != 0 {
        return Err(Error::NonSplit(format!(
            "cofactor of degree {} remains; supply the sequence in power-sum form",
            report.cofactor_degree
        )));
    }
    let roots: Vec<UniPoly> = report.roots.iter().map(|(r, _)| r.clone()).collect();
    let s = roots.len();
    debug_assert!(s >= 1);

    // polynomial values of the scaled basic sequence (a further constant
    // scaling clears the initial denominators; zero sets are unaffected)
    let basic = Recurrence::new(
        ring.clone(),
        coeffs.iter().map(|c| RationalFunction::from_poly(c.clone())).collect(),
        initial.clone(),
    )?;
    let need = step * s as u64 - 1;
    let values: Vec<RationalFunction> = basic
        .cleared_polynomial_values(need, limits)?
        .into_iter()
        .map(RationalFunction::from_poly)
        .collect();

    let root_polys: Vec<MultiPoly> = roots.iter().map(|r| r.to_multi(&ring, 0)).collect();
    let mut pieces = Vec::with_capacity(step as usize);
    for j in 0..step {
        // Vandermonde system sum_l c_l delta_l^i = b(i*step + j), i < s
        let mut matrix = Vec::with_capacity(s);
        let mut rhs = Vec::with_capacity(s);
        for i in 0..s as u64 {
            let row: Vec<RationalFunction> = root_polys
                .iter()
                .map(|r| Ok(RationalFunction::from_poly(r.pow(i)?)))
                .collect::<Result<_>>()?;
            matrix.push(row);
            rhs.push(values[(i * step + j) as usize].clone());
        }
        let betas = solve_linear_rational(matrix, rhs)?;
        let terms: Vec<(RationalFunction, RationalFunction)> = betas
            .into_iter()
            .zip(root_polys.iter())
            .filter(|(b, _)| !b.is_zero())
            .map(|(b, r)| (b, RationalFunction::from_poly(r.clone())))
            .collect();
        let kind = if terms.is_empty() {
            PieceKind::Zero
        } else {
            let piece = PowerSumSeq::new(ring.clone(), terms)?.normalize()?;
            piece.certify_simple_nondegenerate()?;
            PieceKind::Seq(piece)
        };
        pieces.push(SectionPiece { residue: j, step, kind });
    }
    Ok(SectionDecomposition { step, offset, prefix_zeros, pieces, order })
}

/// Gaussian elimination over the rational function field (no gcd
/// reduction; pivoting on any nonzero entry).
fn solve_linear_rational(
    mut matrix: Vec<Vec<RationalFunction>>,
    mut rhs: Vec<RationalFunction>,
) -> Result<Vec<RationalFunction>> {
    let n = matrix.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !matrix[r][col].is_zero())
            .ok_or(Error::SingularVandermonde)?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = matrix[col][col].clone();
        for r in 0..n {
            if r != col && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].div(&inv)?;
                for c in col..n {
                    let t = factor.mul(&matrix[col][c]);
                    matrix[r][c] = matrix[r][c].sub(&t);
                }
                let t = factor.mul(&rhs[col]);
                rhs[r] = rhs[r].sub(&t);
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(rhs[i].div(&matrix[i][i])?);
    }
    Ok(out)
}

/// Convenience constructors shared by fixtures and tests.
pub fn rf_int(ring: &PolyRing, n: i64) -> RationalFunction {
    RationalFunction::from_poly(ring.int(n))
}

pub fn rf_elt(ring: &PolyRing, e: Elt) -> RationalFunction {
    RationalFunction::from_poly(ring.constant(e))
}
