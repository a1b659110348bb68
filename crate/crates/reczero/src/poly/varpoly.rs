use crate::error::{Error, Result};
use crate::ff::Elt;
use crate::poly::{Monomial, MultiPoly, PolyRing};

/// Dense polynomial in one distinguished ring variable, with coefficients
/// that are polynomials in the remaining variables. Coefficient index i
/// multiplies the i-th power of the distinguished variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarPoly {
    ring: PolyRing,
    outer: usize,
    coeffs: Vec<MultiPoly>,
}

impl VarPoly {
    pub fn new(ring: PolyRing, outer: usize, mut coeffs: Vec<MultiPoly>) -> VarPoly {
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        debug_assert!(coeffs
            .iter()
            .all(|c| c.terms().iter().all(|(m, _)| m.exps[outer] == 0)));
        VarPoly { ring, outer, coeffs }
    }

    pub fn zero(ring: PolyRing, outer: usize) -> VarPoly {
        VarPoly { ring, outer, coeffs: Vec::new() }
    }

    /// Group a multivariate polynomial by the powers of one variable.
    pub fn from_multi(p: &MultiPoly, outer: usize) -> VarPoly {
        let ring = p.ring().clone();
        let mut coeffs: Vec<MultiPoly> = Vec::new();
        for (m, c) in p.terms() {
            let d = m.exps[outer] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, ring.zero());
            }
            let mut exps = m.exps.clone();
            exps[outer] = 0;
            coeffs[d] = coeffs[d].add(&ring.monomial(Monomial { exps }, *c));
        }
        VarPoly::new(ring, outer, coeffs)
    }

    pub fn to_multi(&self) -> MultiPoly {
        let mut acc = self.ring.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut exps = vec![0u32; self.ring.nvars()];
            exps[self.outer] = i as u32;
            acc = acc.add(&c.mul_monomial(&Monomial { exps }, Elt::ONE).expect("overflow"));
        }
        acc
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }
    pub fn outer(&self) -> usize {
        self.outer
    }
    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> MultiPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }
    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()) == Some(true)
    }

    pub fn add(&self, other: &VarPoly) -> VarPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        VarPoly::new(self.ring.clone(), self.outer, out)
    }

    pub fn neg(&self) -> VarPoly {
        VarPoly {
            ring: self.ring.clone(),
            outer: self.outer,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &VarPoly) -> VarPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &VarPoly) -> VarPoly {
        if self.is_zero() || other.is_zero() {
            return VarPoly::zero(self.ring.clone(), self.outer);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        VarPoly::new(self.ring.clone(), self.outer, out)
    }

    pub fn mul_scalar(&self, c: Elt) -> VarPoly {
        VarPoly {
            ring: self.ring.clone(),
            outer: self.outer,
            coeffs: self.coeffs.iter().map(|a| a.mul_scalar(c)).collect(),
        }
    }

    /// Horner evaluation at a polynomial value of the outer variable.
    pub fn eval(&self, at: &MultiPoly) -> MultiPoly {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// nonzero constant.
    pub fn divrem(&self, divisor: &VarPoly) -> Result<(VarPoly, VarPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroInput)?;
        let lead = divisor.leading().unwrap().as_constant().ok_or_else(|| {
            Error::InvalidInput("division requires a constant leading coefficient".into())
        })?;
        let f = self.ring.field();
        let lead_inv = f.inv(lead)?;
        let mut rem: Vec<MultiPoly> = self.coeffs.clone();
        let mut quot = vec![self.ring.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().mul_scalar(lead_inv);
            if !c.is_zero() {
                quot[k] = c.clone();
                for (j, dcf) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dcf));
                }
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().map(|c| c.is_zero()) == Some(true) {
                rem.pop();
            }
        }
        Ok((
            VarPoly::new(self.ring.clone(), self.outer, quot),
            VarPoly::new(self.ring.clone(), self.outer, rem),
        ))
    }
}

/// Resultant of A and B with respect to their distinguished variable: the
/// determinant of the Sylvester matrix over the coefficient ring, computed
/// by fraction-free elimination (cofactor expansion for small matrices).
pub fn sylvester_resultant(a: &VarPoly, b: &VarPoly) -> Result<MultiPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    debug_assert_eq!(a.ring(), b.ring());
    debug_assert_eq!(a.outer(), b.outer());
    let ring = a.ring().clone();
    let n = a.degree().unwrap();
    let m = b.degree().unwrap();
    if n == 0 {
        return a.coeff(0).pow(m as u64);
    }
    if m == 0 {
        return b.coeff(0).pow(n as u64);
    }
    let size = n + m;
    let mut mat = vec![vec![ring.zero(); size]; size];
    for i in 0..m {
        for j in 0..=n {
            mat[i][i + j] = a.coeff(n - j);
        }
    }
    for i in 0..n {
        for j in 0..=m {
            mat[m + i][i + j] = b.coeff(m - j);
        }
    }
    if size <= 4 {
        det_cofactor(&ring, &mat)
    } else {
        det_bareiss(&ring, mat)
    }
}

fn det_cofactor(ring: &PolyRing, mat: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = mat.len();
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut acc = ring.zero();
    for (i, row) in mat.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = mat
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let sub = det_cofactor(ring, &minor)?;
        let term = row[0].mul(&sub);
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Bareiss fraction-free elimination; every division is exact over the
/// coefficient domain.
fn det_bareiss(ring: &PolyRing, mut mat: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = mat.len();
    let mut sign_negative = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return Ok(ring.zero());
            };
            mat.swap(k, r);
            sign_negative = !sign_negative;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.exact_div(&prev).map_err(|_| {
                    Error::Internal("Bareiss division was not exact".into())
                })?;
            }
            mat[i][k] = ring.zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    Ok(if sign_negative { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;

    // ring F_5[x, F, E]; outer variable F at index 1, E at index 2
    fn setup() -> PolyRing {
        PolyRing::new(Fq::prime(5).unwrap(), vec!["x".into(), "F".into(), "E".into()])
    }

    #[test]
    fn resultant_linear_case_is_evaluation() {
        // Res_F(F - a, B(F)) = B(a)
        let r = setup();
        let a = r.var(0).add(&r.int(2)); // a = x + 2
        let lin = VarPoly::new(r.clone(), 1, vec![a.neg(), r.one()]);
        // B = F^3 + 4F + x
        let b = VarPoly::new(r.clone(), 1, vec![r.var(0), r.int(4), r.zero(), r.one()]);
        let res = sylvester_resultant(&lin, &b).unwrap();
        assert_eq!(res, b.eval(&a));
    }

    #[test]
    fn resultant_quadratic_example() {
        // Res_F(F^2 - E, F^2 - 3F + 2) = (E-1)(E-4) = E^2 + 4 over F_5
        let r = setup();
        let e = r.var(2);
        let a = VarPoly::new(r.clone(), 1, vec![e.neg(), r.zero(), r.one()]);
        let b = VarPoly::new(r.clone(), 1, vec![r.int(2), r.int(-3), r.one()]);
        let res = sylvester_resultant(&a, &b).unwrap();
        let expected = e.mul(&e).add(&r.int(4));
        assert_eq!(res, expected);
    }

    #[test]
    fn resultant_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let r = setup();
        for _ in 0..25 {
            let mut rand_poly = |deg: usize| {
                let coeffs: Vec<MultiPoly> = (0..=deg)
                    .map(|_| {
                        let c0 = r.int(rng.gen_range(0..5));
                        let c1 = r.var(0).mul_scalar(r.field().int(rng.gen_range(0..5)));
                        c0.add(&c1)
                    })
                    .collect();
                VarPoly::new(r.clone(), 1, coeffs)
            };
            let a = rand_poly(2);
            let b = rand_poly(2);
            let c = rand_poly(1);
            if a.is_zero() || b.is_zero() || c.is_zero() {
                continue;
            }
            let lhs = sylvester_resultant(&a, &b.mul(&c)).unwrap();
            let rhs = sylvester_resultant(&a, &b)
                .unwrap()
                .mul(&sylvester_resultant(&a, &c).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn resultant_power_split_identity() {
        // Res_F(F^k - E^k, P) = Res_F(F - E, P) * Res_F(F^(k-1) + ... + E^(k-1), P)
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let r = setup();
        let e = r.var(2);
        for _ in 0..20 {
            let k = rng.gen_range(2..=4u32);
            let d = rng.gen_range(1..=3usize);
            let coeffs: Vec<MultiPoly> = (0..d)
                .map(|_| r.int(rng.gen_range(0..5)).add(&r.var(0).mul_scalar(r.field().int(rng.gen_range(0..2)))))
                .chain(std::iter::once(r.one()))
                .collect();
            let p = VarPoly::new(r.clone(), 1, coeffs);

            let mut fk_ek = vec![e.pow(k as u64).unwrap().neg()];
            fk_ek.extend((1..k).map(|_| r.zero()));
            fk_ek.push(r.one());
            let a = VarPoly::new(r.clone(), 1, fk_ek);

            let f_e = VarPoly::new(r.clone(), 1, vec![e.neg(), r.one()]);
            let cyclo: Vec<MultiPoly> = (0..k).map(|i| e.pow((k - 1 - i) as u64).unwrap()).collect();
            let s = VarPoly::new(r.clone(), 1, cyclo);

            let lhs = sylvester_resultant(&a, &p).unwrap();
            let rhs = sylvester_resultant(&f_e, &p)
                .unwrap()
                .mul(&sylvester_resultant(&s, &p).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn divrem_by_monic_linear() {
        let r = setup();
        let rho = r.var(0).add(&r.int(1));
        let lin = VarPoly::new(r.clone(), 1, vec![rho.neg(), r.one()]);
        let q = VarPoly::new(r.clone(), 1, vec![r.var(0), r.int(3), r.one()]);
        let prod = q.mul(&lin);
        let (quot, rem) = prod.divrem(&lin).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, q);
    }
}
