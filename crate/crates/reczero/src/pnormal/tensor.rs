//! Sufficient vanishing certificates: if the sum of tensors
//! beta_i alpha_i^(c_0) (x) alpha_i^(c_1) (x) ... (x) alpha_i^(c_r)
//! vanishes — computed here in disjoint variable copies, which embed in
//! the field tensor product — then S_q(c_0; c_1, ..., c_r) is contained in
//! the zero set.

use crate::error::{Error, Result};
use crate::poly::PolyRing;
use crate::seq::NormalizedPowerSum;

/// Evaluate the certificate for exponents c = (c_0, ..., c_r), all
/// nonnegative. The tensor is taken over the coefficient field of the
/// piece; callers arrange for q to match (the decomposition's q must be a
/// power containing the field).
pub fn tensor_criterion(piece: &NormalizedPowerSum, c: &[i64]) -> Result<bool> {
    if c.is_empty() {
        return Err(Error::InvalidInput("certificate needs at least c_0".into()));
    }
    if c.iter().any(|&ci| ci < 0) {
        return Err(Error::NegativeExponent);
    }
    let ring = piece.ring();
    let copies = c.len();
    let nv = ring.nvars();
    let mut vars = Vec::with_capacity(copies * nv);
    for copy in 0..copies {
        for v in ring.vars() {
            vars.push(format!("{v}__{copy}"));
        }
    }
    let big = PolyRing::new(ring.field().clone(), vars);
    let maps: Vec<Vec<usize>> = (0..copies)
        .map(|copy| (0..nv).map(|i| copy * nv + i).collect())
        .collect();
    let mut acc = big.zero();
    for (beta, alpha) in piece.terms() {
        let mut term = beta.remap_vars(&big, &maps[0]);
        term = term.mul(&alpha.remap_vars(&big, &maps[0]).pow(c[0] as u64)?);
        for (copy, &ci) in c.iter().enumerate().skip(1) {
            term = term.mul(&alpha.remap_vars(&big, &maps[copy]).pow(ci as u64)?);
        }
        acc = acc.add(&term);
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;
    use crate::poly::RationalFunction;
    use crate::seq::{rf_int, PowerSumSeq};

    fn prop1(p: u64) -> NormalizedPowerSum {
        let r = PolyRing::new(
            Fq::prime(p).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        );
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let terms = vec![
            (1, x.add(&y).add(&z)),
            (-1, x.add(&y)),
            (-1, x.add(&z)),
            (-1, y.add(&z)),
            (1, x),
            (1, y),
            (1, z),
        ];
        PowerSumSeq::new(
            r.clone(),
            terms
                .into_iter()
                .map(|(b, a)| (rf_int(&r, b), RationalFunction::from_poly(a)))
                .collect(),
        )
        .unwrap()
        .normalize()
        .unwrap()
    }

    #[test]
    fn certificates_for_power_sums_of_linear_forms() {
        for p in [2u64, 3] {
            let piece = prop1(p);
            assert!(tensor_criterion(&piece, &[0, 1]).unwrap());
            assert!(tensor_criterion(&piece, &[0, 1, 1]).unwrap());
            assert!(!tensor_criterion(&piece, &[0, 1, 1, 1]).unwrap());
        }
    }

    #[test]
    fn negative_exponents_rejected() {
        let piece = prop1(2);
        assert!(matches!(
            tensor_criterion(&piece, &[0, -1]),
            Err(Error::NegativeExponent)
        ));
    }
}
