//! Exact solution of vanishing sums of q-powers: the solution set of
//! c_1 q^(l_1) + ... + c_r q^(l_r) = 0 over N^r is a finite union of
//! rectangular cosets. Two maximal exponents must sit within a computable
//! distance D of each other, so folding l_i = l_j + k for k <= D reduces
//! the variable count; a fold that cancels exactly frees the tied pair as
//! a diagonal generator.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

/// base + sum_g k_g * gen_g with pairwise orthogonal nonzero 0/1
/// generators: tied coordinates move together.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RectCoset {
    pub base: Vec<u64>,
    pub gens: Vec<Vec<u8>>,
}

impl RectCoset {
    pub fn dims(&self) -> usize {
        self.base.len()
    }

    pub fn contains(&self, point: &[u64]) -> bool {
        debug_assert_eq!(point.len(), self.dims());
        let mut covered = vec![false; self.dims()];
        for g in &self.gens {
            let mut shift: Option<i128> = None;
            for (c, &bit) in g.iter().enumerate() {
                if bit == 1 {
                    covered[c] = true;
                    let d = point[c] as i128 - self.base[c] as i128;
                    match shift {
                        None => {
                            if d < 0 {
                                return false;
                            }
                            shift = Some(d);
                        }
                        Some(s) => {
                            if d != s {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        for c in 0..self.dims() {
            if !covered[c] && point[c] != self.base[c] {
                return false;
            }
        }
        true
    }

    /// Pin coordinate c to an exact value: either the coordinate is fixed
    /// (must match) or its generator's parameter becomes determined.
    pub fn pinned(&self, coord: usize, value: u64) -> Option<RectCoset> {
        if let Some(gi) = self.gens.iter().position(|g| g[coord] == 1) {
            if value < self.base[coord] {
                return None;
            }
            let shift = value - self.base[coord];
            let mut base = self.base.clone();
            for (c, &bit) in self.gens[gi].iter().enumerate() {
                if bit == 1 {
                    base[c] += shift;
                }
            }
            let mut gens = self.gens.clone();
            gens.remove(gi);
            Some(RectCoset { base, gens })
        } else if self.base[coord] == value {
            Some(self.clone())
        } else {
            None
        }
    }

    /// Drop a coordinate (after pinning it).
    pub fn projected(&self, coord: usize) -> RectCoset {
        let mut base = self.base.clone();
        base.remove(coord);
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.remove(coord);
                g
            })
            .filter(|g| g.iter().any(|&b| b == 1))
            .collect();
        RectCoset { base, gens }
    }
}

const COSET_CAP: usize = 200_000;

/// Solutions of sum_i coeffs[i] * q^(l_i) = 0 over N^r, as rectangular
/// cosets (possibly overlapping). All coefficients must be nonzero.
pub fn solve_vanishing(coeffs: &[BigInt], q: &BigUint) -> Result<Vec<RectCoset>> {
    if coeffs.iter().any(|c| c.is_zero()) {
        return Err(Error::ZeroInput);
    }
    if *q < BigUint::from(2u32) {
        return Err(Error::InvalidInput("base q must be at least 2".into()));
    }
    let qi = BigInt::from(q.clone());
    let mut out = solve_rec(coeffs, &qi)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn solve_rec(coeffs: &[BigInt], q: &BigInt) -> Result<Vec<RectCoset>> {
    let r = coeffs.len();
    if r == 0 {
        return Ok(vec![RectCoset { base: Vec::new(), gens: Vec::new() }]);
    }
    if r == 1 {
        return Ok(Vec::new());
    }
    // D: for every i, |c_i| q^D exceeds the sum of the others
    let mut d = 0u32;
    'outer: loop {
        let qd = q.pow(d);
        for i in 0..r {
            let others: BigInt = coeffs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, c)| c.abs())
                .sum();
            if coeffs[i].abs() * &qd <= others {
                d += 1;
                continue 'outer;
            }
        }
        break;
    }
    let mut out: Vec<RectCoset> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            for k in 0..=d {
                // substitute l_i = l_j + k
                let fold = &coeffs[i] * q.pow(k) + &coeffs[j];
                let mut sub_coeffs: Vec<BigInt> = Vec::with_capacity(r - 1);
                // coordinate maps from sub-problem back to this level
                let mut sub_vars: Vec<usize> = Vec::new();
                for (t, c) in coeffs.iter().enumerate() {
                    if t == i {
                        continue;
                    }
                    if t == j {
                        if fold.is_zero() {
                            continue;
                        }
                        sub_coeffs.push(fold.clone());
                    } else {
                        sub_coeffs.push(c.clone());
                    }
                    sub_vars.push(t);
                }
                let subs = solve_rec(&sub_coeffs, q)?;
                for sub in subs {
                    let mut base = vec![0u64; r];
                    let mut gens: Vec<Vec<u8>> = sub
                        .gens
                        .iter()
                        .map(|g| {
                            let mut full = vec![0u8; r];
                            for (sc, &bit) in g.iter().enumerate() {
                                full[sub_vars[sc]] = bit;
                            }
                            full
                        })
                        .collect();
                    for (sc, &b) in sub.base.iter().enumerate() {
                        base[sub_vars[sc]] = b;
                    }
                    if fold.is_zero() {
                        // l_j is free and l_i rides along at distance k
                        base[i] = k as u64;
                        base[j] = 0;
                        let mut g = vec![0u8; r];
                        g[i] = 1;
                        g[j] = 1;
                        gens.push(g);
                    } else {
                        base[i] = base[j] + k as u64;
                        for g in gens.iter_mut() {
                            if g[j] == 1 {
                                g[i] = 1;
                            }
                        }
                    }
                    out.push(RectCoset { base, gens });
                    if out.len() > COSET_CAP {
                        return Err(Error::CapExceeded("coset recursion exploded".into()));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn solve(c: &[i64], q: u64) -> Vec<RectCoset> {
        let coeffs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        solve_vanishing(&coeffs, &BigUint::from(q)).unwrap()
    }

    fn brute_force(c: &[i64], q: u64, max_exp: u64) -> Vec<Vec<u64>> {
        let r = c.len();
        let mut out = Vec::new();
        let total = (max_exp + 1).pow(r as u32);
        for idx in 0..total {
            let mut point = Vec::with_capacity(r);
            let mut v = idx;
            for _ in 0..r {
                point.push(v % (max_exp + 1));
                v /= max_exp + 1;
            }
            let sum: i128 = c
                .iter()
                .zip(&point)
                .map(|(&ci, &li)| ci as i128 * (q as i128).pow(li as u32))
                .sum();
            if sum == 0 {
                out.push(point);
            }
        }
        out
    }

    fn matches_brute(c: &[i64], q: u64, max_exp: u64) {
        let cosets = solve(c, q);
        let brute = brute_force(c, q, max_exp);
        let total = (max_exp + 1).pow(c.len() as u32);
        for idx in 0..total {
            let mut point = Vec::with_capacity(c.len());
            let mut v = idx;
            for _ in 0..c.len() {
                point.push(v % (max_exp + 1));
                v /= max_exp + 1;
            }
            let in_cosets = cosets.iter().any(|cs| cs.contains(&point));
            let in_brute = brute.contains(&point);
            assert_eq!(in_cosets, in_brute, "c = {c:?}, q = {q}, point = {point:?}");
        }
    }

    #[test]
    fn diagonal_solution() {
        // q^a = q^b forces a = b
        let cosets = solve(&[1, -1], 2);
        assert_eq!(cosets.len(), 1);
        assert_eq!(cosets[0].base, vec![0, 0]);
        assert_eq!(cosets[0].gens, vec![vec![1, 1]]);
    }

    #[test]
    fn positive_sum_has_no_solution() {
        assert!(solve(&[1, 1], 2).is_empty());
    }

    #[test]
    fn two_against_double() {
        // 2^a + 2^b = 2 * 2^c forces a = b = c
        matches_brute(&[1, 1, -2], 2, 8);
    }

    #[test]
    fn brute_force_agreement_handpicked() {
        matches_brute(&[1, -1], 2, 6);
        matches_brute(&[1, 1, -2], 2, 6);
        matches_brute(&[1, 2, -3], 2, 6);
        matches_brute(&[3, -1, -2], 3, 6);
        matches_brute(&[1, 1, 1, -3], 2, 5);
        matches_brute(&[4, -1, -3], 4, 5);
        matches_brute(&[2, -8, 6], 2, 6);
    }

    #[test]
    fn brute_force_agreement_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let q = *[2u64, 3, 4].iter().nth(rng.gen_range(0..3)).unwrap();
            let r = rng.gen_range(2..=4usize);
            let coeffs: Vec<i64> = (0..r)
                .map(|_| {
                    let mut v = 0i64;
                    while v == 0 {
                        v = rng.gen_range(-8..=8);
                    }
                    v
                })
                .collect();
            // D + 4 window per the exactness contract
            let coeffs_big: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
            let mut d = 0u64;
            loop {
                let qd = BigInt::from(q).pow(d as u32);
                let ok = (0..r).all(|i| {
                    let others: BigInt = coeffs_big
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, c)| c.abs())
                        .sum();
                    coeffs_big[i].abs() * &qd > others
                });
                if ok {
                    break;
                }
                d += 1;
            }
            matches_brute(&coeffs, q, d + 4);
        }
    }

    #[test]
    fn pinned_slices() {
        // solutions of q^a - q^b = 0 with b pinned to 3
        let cosets = solve(&[1, -1], 2);
        let sliced: Vec<RectCoset> =
            cosets.iter().filter_map(|c| c.pinned(1, 3)).collect();
        assert_eq!(sliced.len(), 1);
        assert_eq!(sliced[0].base, vec![3, 3]);
        assert!(sliced[0].gens.is_empty());
    }
}
