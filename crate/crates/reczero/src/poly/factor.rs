use crate::error::{Error, Result};
use crate::ff::{Elt, Fq};
use crate::poly::{UniPoly, VarPoly};
use std::collections::BTreeMap;

/// Factorization of a univariate polynomial into a unit times monic
/// irreducible powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elt,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Fq) -> UniPoly {
        let mut acc = UniPoly::constant(field.clone(), self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }
}

/// Berlekamp factorization over F_q. Handles the derivative-zero case by
/// p-th root extraction of coefficients (F_q is perfect).
pub fn berlekamp_factor(f: &UniPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = f.field().clone();
    let unit = f.leading();
    let monic = f.monic()?;
    let mut map: BTreeMap<Vec<Elt>, u32> = BTreeMap::new();
    if monic.degree().unwrap() > 0 {
        factor_monic(&monic, 1, &mut map)?;
    }
    let factors: Vec<(UniPoly, u32)> = map
        .into_iter()
        .map(|(coeffs, m)| (UniPoly::new(field.clone(), coeffs), m))
        .collect();
    let result = Factorization { unit, factors };
    debug_assert_eq!(result.expand(&field), *f);
    Ok(result)
}

fn add_factor(map: &mut BTreeMap<Vec<Elt>, u32>, f: &UniPoly, mult: u32) {
    *map.entry(f.coeffs().to_vec()).or_insert(0) += mult;
}

fn factor_monic(f: &UniPoly, mult: u32, out: &mut BTreeMap<Vec<Elt>, u32>) -> Result<()> {
    let field = f.field().clone();
    if f.degree() == Some(1) {
        add_factor(out, f, mult);
        return Ok(());
    }
    let df = f.derivative();
    if df.is_zero() {
        // f(x) = g(x)^p with g's coefficients the p-th roots of f's
        let p = field.p() as usize;
        let deg = f.degree().unwrap();
        debug_assert_eq!(deg % p, 0);
        let mut coeffs = Vec::with_capacity(deg / p + 1);
        for i in (0..=deg).step_by(p) {
            coeffs.push(field.inv_frobenius(f.coeff(i)));
        }
        let g = UniPoly::new(field, coeffs);
        debug_assert_eq!(g.pow(p as u64), *f);
        return factor_monic(&g, mult * p as u32, out);
    }
    let d = f.gcd(&df)?;
    if d.is_one() {
        for g in berlekamp_squarefree(f)? {
            add_factor(out, &g, mult);
        }
        return Ok(());
    }
    let (quot, rem) = f.divrem(&d)?;
    debug_assert!(rem.is_zero());
    factor_monic(&d, mult, out)?;
    factor_monic(&quot, mult, out)
}

/// Berlekamp splitting of a monic squarefree polynomial into its monic
/// irreducible factors.
fn berlekamp_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let field = f.field().clone();
    let n = f.degree().unwrap();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    // rows of the q-power map: x^(q*i) mod f
    let xq = UniPoly::x(field.clone()).powmod(field.q(), f)?;
    let mut rows: Vec<Vec<Elt>> = Vec::with_capacity(n);
    let mut acc = UniPoly::one(field.clone());
    for _ in 0..n {
        let mut row = vec![Elt::ZERO; n];
        for (i, &c) in acc.coeffs().iter().enumerate() {
            row[i] = c;
        }
        rows.push(row);
        acc = acc.mul(&xq).rem(f)?;
    }
    // v * (Q - I) = 0  <=>  (Q - I)^T v^T = 0
    let mut mat = vec![vec![Elt::ZERO; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            mat[j][i] = c;
        }
    }
    for i in 0..n {
        mat[i][i] = field.sub(mat[i][i], Elt::ONE);
    }
    let basis = nullspace(&field, mat);
    if basis.len() <= 1 {
        return Ok(vec![f.clone()]);
    }
    let v = basis
        .iter()
        .map(|b| UniPoly::new(field.clone(), b.clone()))
        .find(|v| v.degree().unwrap_or(0) >= 1)
        .ok_or_else(|| Error::Internal("no separating element in Berlekamp subalgebra".into()))?;
    let mut out = Vec::new();
    for c in field.elements() {
        let g = f.gcd(&v.sub(&UniPoly::constant(field.clone(), c)))?;
        if g.degree().unwrap_or(0) >= 1 {
            debug_assert!(g.degree() < f.degree());
            out.extend(berlekamp_squarefree(&g)?);
        }
    }
    debug_assert_eq!(
        out.iter().map(|g| g.degree().unwrap()).sum::<usize>(),
        n,
        "Berlekamp split lost degree"
    );
    Ok(out)
}

/// Basis of the right nullspace of a square matrix over F_q.
fn nullspace(field: &Fq, mut mat: Vec<Vec<Elt>>) -> Vec<Vec<Elt>> {
    let n = mat.len();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, r);
        let inv = field.inv(mat[row][col]).unwrap();
        for c in mat[row].iter_mut() {
            *c = field.mul(*c, inv);
        }
        for r2 in 0..n {
            if r2 != row && !mat[r2][col].is_zero() {
                let factor = mat[r2][col];
                let pivot_row = mat[row].clone();
                for (c2, pc) in mat[r2].iter_mut().zip(&pivot_row) {
                    *c2 = field.sub(*c2, field.mul(factor, *pc));
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Elt::ZERO; n];
        v[free] = Elt::ONE;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = field.neg(mat[r][free]);
        }
        basis.push(v);
    }
    basis
}

impl UniPoly {
    /// self^n mod m by repeated squaring.
    pub fn powmod(&self, mut n: u64, m: &UniPoly) -> Result<UniPoly> {
        let mut base = self.rem(m)?;
        let mut acc = UniPoly::one(self.field().clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }
}

/// Roots in F_q[x] of a monic polynomial in the distinguished variable with
/// univariate coefficients, found by factoring the constant term and
/// testing unit multiples of its monic divisors. Reports the degree of the
/// unfactored cofactor so callers can detect companion polynomials that do
/// not split over F_q[x].
#[derive(Clone, Debug)]
pub struct RootReport {
    /// Multiplicity of the zero root (power of the outer variable dividing P).
    pub zero_multiplicity: u32,
    pub roots: Vec<(UniPoly, u32)>,
    pub cofactor_degree: usize,
}

const DIVISOR_CAP: usize = 500_000;

pub fn rational_roots_in_polyring(p: &VarPoly, inner: usize) -> Result<RootReport> {
    if !p.is_monic() {
        return Err(Error::InvalidInput("root search requires a monic polynomial".into()));
    }
    let field = p.ring().field().clone();
    // strip powers of the outer variable
    let mut coeffs: Vec<UniPoly> = p
        .coeffs()
        .iter()
        .map(|c| UniPoly::from_multi(c, inner))
        .collect::<Result<_>>()?;
    let mut zero_multiplicity = 0u32;
    while coeffs.first().map(|c| c.is_zero()) == Some(true) {
        coeffs.remove(0);
        zero_multiplicity += 1;
    }
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(RootReport { zero_multiplicity, roots: Vec::new(), cofactor_degree: 0 });
    }
    // degree bound for any root in F_q[x]
    let mut bound = 0usize;
    for (j, c) in coeffs.iter().enumerate().take(d) {
        if let Some(deg) = c.degree() {
            bound = bound.max(deg / (d - j));
        }
    }
    let c0 = coeffs[0].clone();
    let fact = berlekamp_factor(&c0)?;
    // enumerate monic divisors of the constant term with degree <= bound
    let mut divisors: Vec<UniPoly> = vec![UniPoly::one(field.clone())];
    for (g, m) in &fact.factors {
        let mut next = Vec::new();
        for div in &divisors {
            let mut acc = div.clone();
            next.push(acc.clone());
            for _ in 0..*m {
                acc = acc.mul(g);
                if acc.degree().unwrap() > bound {
                    break;
                }
                next.push(acc.clone());
            }
        }
        next.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        next.dedup();
        if next.len() > DIVISOR_CAP {
            return Err(Error::CapExceeded(format!(
                "too many divisor candidates ({})",
                next.len()
            )));
        }
        divisors = next;
    }
    let mut roots: Vec<(UniPoly, u32)> = Vec::new();
    let mut reduced = coeffs;
    for div in &divisors {
        for u in field.units() {
            let cand = div.mul_scalar(u);
            // Horner evaluation of the reduced polynomial at the candidate
            let mut acc = UniPoly::zero(field.clone());
            for c in reduced.iter().rev() {
                acc = acc.mul(&cand).add(c);
            }
            if !acc.is_zero() {
                continue;
            }
            // synthetic division by (outer - cand), repeated for multiplicity
            let mut mult = 0u32;
            loop {
                let dd = reduced.len() - 1;
                if dd == 0 {
                    break;
                }
                let mut quot: Vec<UniPoly> = vec![UniPoly::zero(field.clone()); dd];
                let mut carry = UniPoly::zero(field.clone());
                for i in (0..dd).rev() {
                    carry = reduced[i + 1].add(&carry.mul(&cand));
                    quot[i] = carry.clone();
                }
                let rem = reduced[0].add(&carry.mul(&cand));
                if rem.is_zero() {
                    mult += 1;
                    reduced = quot;
                } else {
                    break;
                }
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.coeffs().cmp(b.0.coeffs()));
    Ok(RootReport { zero_multiplicity, roots, cofactor_degree: reduced.len() - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::ff::DEFAULT_Q_CAP;

    fn f2x(coeffs: &[u64]) -> UniPoly {
        let f = Fq::prime(2).unwrap();
        UniPoly::new(f.clone(), coeffs.iter().map(|&c| f.int(c as i64)).collect())
    }

    #[test]
    fn berlekamp_basic_split() {
        // x^2 + x = x(x+1) over F_2
        let f = f2x(&[0, 1, 1]);
        let fact = berlekamp_factor(&f).unwrap();
        assert_eq!(fact.unit, Elt::ONE);
        assert_eq!(fact.factors.len(), 2);
        assert!(fact.factors.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn berlekamp_classic_quartic() {
        // x^4 + x = x(x+1)(x^2+x+1) over F_2
        let f = f2x(&[0, 1, 0, 0, 1]);
        let fact = berlekamp_factor(&f).unwrap();
        let degs: Vec<usize> = fact.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(fact.factors.len(), 3);
        assert_eq!(degs.iter().sum::<usize>(), 4);
        assert!(degs.contains(&2));
        assert_eq!(fact.expand(f.field()), f);
    }

    #[test]
    fn berlekamp_irreducible_cubic() {
        // x^3 - x - 1 over F_3 has no roots and degree 3, hence irreducible
        let f3 = Fq::prime(3).unwrap();
        let f = UniPoly::new(f3.clone(), vec![f3.int(-1), f3.int(-1), Elt::ZERO, Elt::ONE]);
        let fact = berlekamp_factor(&f).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0], (f.clone(), 1));
    }

    #[test]
    fn berlekamp_pure_power_derivative_zero() {
        // (x^2+x+1)^2 = x^4+x^2+1 over F_2 has zero derivative
        let f = f2x(&[1, 0, 1, 0, 1]);
        let fact = berlekamp_factor(&f).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0].1, 2);
        assert_eq!(fact.expand(f.field()), f);
    }

    #[test]
    fn berlekamp_roundtrip_exhaustive_small() {
        // all monic polynomials of degree <= 4 over F_2 and degree <= 3 over F_3
        for (p, maxdeg) in [(2u64, 4usize), (3, 3)] {
            let f = Fq::prime(p).unwrap();
            let total = p.pow(maxdeg as u32);
            for deg in 1..=maxdeg {
                let count = p.pow(deg as u32);
                let _ = total;
                for k in 0..count {
                    let mut coeffs: Vec<Elt> = Vec::new();
                    let mut v = k;
                    for _ in 0..deg {
                        coeffs.push(f.int((v % p) as i64));
                        v /= p;
                    }
                    coeffs.push(Elt::ONE);
                    let poly = UniPoly::new(f.clone(), coeffs);
                    let fact = berlekamp_factor(&poly).unwrap();
                    assert_eq!(fact.expand(&f), poly);
                }
            }
        }
    }

    #[test]
    fn berlekamp_roundtrip_random_f9() {
        use rand::{Rng, SeedableRng};
        let f9 = Fq::new(3, 2, None, DEFAULT_Q_CAP).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let deg = rng.gen_range(1..=6);
            let mut coeffs: Vec<Elt> =
                (0..deg).map(|_| Elt(rng.gen_range(0..9) as u32)).collect();
            coeffs.push(Elt(rng.gen_range(1..9) as u32));
            let poly = UniPoly::new(f9.clone(), coeffs);
            let fact = berlekamp_factor(&poly).unwrap();
            assert_eq!(fact.expand(&f9), poly);
            for (g, _) in &fact.factors {
                // irreducibility spot check: no roots for deg >= 2
                if g.degree().unwrap() >= 2 {
                    for a in f9.elements() {
                        assert!(!g.eval(a).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rational_roots_cubic_companion() {
        // E^3 - (2x+2)E^2 + (x^2+3x+1)E - (x^2+x) has roots {x+1, x, 1} over F_5
        let f5 = Fq::prime(5).unwrap();
        let r = PolyRing::new(f5.clone(), vec!["x".into(), "E".into()]);
        let x = r.var(0);
        let c2 = x.mul_scalar(f5.int(2)).add(&r.int(2)).neg();
        let c1 = x.mul(&x).add(&x.mul_scalar(f5.int(3))).add(&r.int(1));
        let c0 = x.mul(&x).add(&x).neg();
        let p = VarPoly::new(r.clone(), 1, vec![c0, c1, c2, r.one()]);
        let report = rational_roots_in_polyring(&p, 0).unwrap();
        assert_eq!(report.zero_multiplicity, 0);
        assert_eq!(report.cofactor_degree, 0);
        let roots: Vec<String> = report.roots.iter().map(|(g, _)| format!("{g}")).collect();
        assert_eq!(report.roots.len(), 3);
        assert!(roots.contains(&"x+1".to_string()));
        assert!(roots.contains(&"x".to_string()));
        assert!(roots.contains(&"1".to_string()));
    }

    #[test]
    fn rational_roots_quartic_over_f4() {
        // E^4 + E + (x^4+x) = (E-x)(E-x-1)(E-x-g)(E-x-1-g) over F_4
        let f4 = Fq::new(2, 2, Some(vec![1, 1, 1]), DEFAULT_Q_CAP).unwrap();
        let r = PolyRing::new(f4.clone(), vec!["x".into(), "E".into()]);
        let x = r.var(0);
        let c0 = x.pow(4).unwrap().add(&x);
        let p = VarPoly::new(r.clone(), 1, vec![c0, r.one(), r.zero(), r.zero(), r.one()]);
        let report = rational_roots_in_polyring(&p, 0).unwrap();
        assert_eq!(report.cofactor_degree, 0);
        assert_eq!(report.roots.len(), 4);
        assert!(report.roots.iter().all(|(_, m)| *m == 1));
        assert!(report.roots.iter().all(|(g, _)| g.degree() == Some(1)));
    }

    #[test]
    fn rational_roots_char2_square() {
        // E^2 + 1 = (E+1)^2 over F_2[x]
        let f2 = Fq::prime(2).unwrap();
        let r = PolyRing::new(f2.clone(), vec!["x".into(), "E".into()]);
        let p = VarPoly::new(r.clone(), 1, vec![r.one(), r.zero(), r.one()]);
        let report = rational_roots_in_polyring(&p, 0).unwrap();
        assert_eq!(report.roots.len(), 1);
        assert_eq!(report.roots[0].1, 2);
        assert_eq!(report.cofactor_degree, 0);
    }

    #[test]
    fn rational_roots_nonsplit_cofactor() {
        // E^2 - x does not split over F_2[x]
        let f2 = Fq::prime(2).unwrap();
        let r = PolyRing::new(f2.clone(), vec!["x".into(), "E".into()]);
        let p = VarPoly::new(r.clone(), 1, vec![r.var(0).neg(), r.zero(), r.one()]);
        let report = rational_roots_in_polyring(&p, 0).unwrap();
        assert!(report.roots.is_empty());
        assert_eq!(report.cofactor_degree, 2);
    }
}
