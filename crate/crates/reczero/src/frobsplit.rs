//! Frobenius splitting of F_q[x_1,...,x_r] and the induced transition maps
//! on coefficient vectors.
//!
//! Every polynomial decomposes as f = sum_h pi_h(f)^p x^h over the residue
//! classes h in {0..p-1}^r. The maps pi_h are additive and twisted-linear:
//! pi_h(c f) = c^(1/p) pi_h(f). For a power-sum piece b(n) = sum_k w_k
//! alpha_k^n the section b(pn + t) splits through these maps while the
//! component polynomials stay inside a fixed degree bound, which is what
//! makes the zero-automaton state space finite.

use crate::error::{Error, Result};
use crate::ff::Elt;
use crate::poly::{Monomial, MultiPoly, PolyRing};
use crate::seq::NormalizedPowerSum;

/// One residue class of exponent vectors modulo p, i.e. one basis monomial
/// x^h of the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitIndex {
    pub residues: Vec<u32>,
    /// Index in [0, p^r), residues read as base-p digits (first variable
    /// least significant).
    pub linear: usize,
}

/// All p^r split indices of a ring, in linear order.
pub fn split_indices(ring: &PolyRing) -> Vec<SplitIndex> {
    let p = ring.field().p() as u32;
    let r = ring.nvars();
    let count = (p as usize).pow(r as u32);
    let mut out = Vec::with_capacity(count);
    for linear in 0..count {
        let mut residues = Vec::with_capacity(r);
        let mut v = linear;
        for _ in 0..r {
            residues.push((v % p as usize) as u32);
            v /= p as usize;
        }
        out.push(SplitIndex { residues, linear });
    }
    out
}

/// The h-component of the splitting: monomials with exponents congruent to
/// h componentwise contribute inv_frobenius(c) * x^((e-h)/p).
pub fn pi_component(f: &MultiPoly, h: &SplitIndex) -> MultiPoly {
    let ring = f.ring();
    let field = ring.field();
    let p = field.p() as u32;
    let terms = f.terms().iter().filter_map(|(m, c)| {
        let mut exps = Vec::with_capacity(m.exps.len());
        for (e, r) in m.exps.iter().zip(&h.residues) {
            if e % p != *r {
                return None;
            }
            exps.push((e - r) / p);
        }
        Some((Monomial { exps }, field.inv_frobenius(*c)))
    });
    ring.from_terms(terms)
}

/// Reassemble f from its components: sum_h pi_h(f)^p x^h.
pub fn recombine(components: &[(SplitIndex, MultiPoly)], ring: &PolyRing) -> Result<MultiPoly> {
    let mut acc = ring.zero();
    for (h, part) in components {
        let monomial = Monomial { exps: h.residues.clone() };
        acc = acc.add(&part.frob_power()?.mul_monomial(&monomial, Elt::ONE)?);
    }
    Ok(acc)
}

/// A d-tuple of polynomials w, standing for the sequence
/// n -> sum_k w_k alpha_k^n relative to a piece's alphas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    pub components: Vec<MultiPoly>,
}

impl CoeffVector {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Value of the represented sequence at n = 0.
    pub fn component_sum(&self, ring: &PolyRing) -> MultiPoly {
        let mut acc = ring.zero();
        for c in &self.components {
            acc = acc.add(c);
        }
        acc
    }

    pub fn max_degree(&self) -> u64 {
        self.components.iter().filter_map(|c| c.total_degree()).max().unwrap_or(0)
    }
}

/// Precomputed data for the digit transitions of one piece.
#[derive(Clone, Debug)]
pub struct SplitContext {
    piece: NormalizedPowerSum,
    indices: Vec<SplitIndex>,
    /// alpha_k^t for 0 <= t < p.
    alpha_powers: Vec<Vec<MultiPoly>>,
    degree_bound: u64,
}

impl SplitContext {
    /// Degree bound D = max(alpha degree, beta degree). The closure
    /// inequality floor((D + (p-1)A)/p) <= D is checked once here; the
    /// per-transition assertion backs it up at runtime.
    pub fn new(piece: NormalizedPowerSum) -> Result<SplitContext> {
        piece.certify_simple_nondegenerate()?;
        let ring = piece.ring().clone();
        let p = ring.field().p();
        let a = piece.alpha_degree();
        let d = a.max(piece.beta_degree());
        if (d + (p - 1) * a) / p > d {
            return Err(Error::DegreeClosureViolated(format!(
                "bound D = {d} does not absorb digit transitions (A = {a}, p = {p})"
            )));
        }
        let mut alpha_powers = Vec::with_capacity(piece.terms().len());
        for (_, alpha) in piece.terms() {
            let mut powers = Vec::with_capacity(p as usize);
            let mut acc = ring.one();
            for _ in 0..p {
                powers.push(acc.clone());
                acc = acc.mul(alpha);
            }
            alpha_powers.push(powers);
        }
        Ok(SplitContext {
            indices: split_indices(&ring),
            piece,
            alpha_powers,
            degree_bound: d,
        })
    }

    pub fn piece(&self) -> &NormalizedPowerSum {
        &self.piece
    }
    pub fn ring(&self) -> &PolyRing {
        self.piece.ring()
    }
    pub fn indices(&self) -> &[SplitIndex] {
        &self.indices
    }
    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    /// The vector of betas: the piece itself as a coefficient vector.
    pub fn initial_vector(&self) -> CoeffVector {
        CoeffVector { components: self.piece.terms().iter().map(|(b, _)| b.clone()).collect() }
    }

    /// Images of v under reading digit t: one vector per split index h,
    /// with component k equal to pi_h(w_k * alpha_k^t). If v represents the
    /// sequence b then b(pn + t) vanishes exactly where all the outputs'
    /// sequences vanish.
    pub fn digit_transition(&self, v: &CoeffVector, t: u32) -> Result<Vec<CoeffVector>> {
        debug_assert_eq!(v.components.len(), self.piece.terms().len());
        let scaled: Vec<MultiPoly> = v
            .components
            .iter()
            .zip(&self.alpha_powers)
            .map(|(w, powers)| w.mul(&powers[t as usize]))
            .collect();
        let mut out = Vec::with_capacity(self.indices.len());
        for h in &self.indices {
            let components: Vec<MultiPoly> = scaled.iter().map(|f| pi_component(f, h)).collect();
            let vec = CoeffVector { components };
            if vec.max_degree() > self.degree_bound {
                return Err(Error::DegreeClosureViolated(format!(
                    "transition output degree {} exceeds bound {}",
                    vec.max_degree(),
                    self.degree_bound
                )));
            }
            out.push(vec);
        }
        Ok(out)
    }
}

/// Coordinates of a coefficient vector: (component index, monomial) pairs
/// in (index, lex) order.
type Coord = (usize, Monomial);

/// Canonical basis of the F_q-span of the given vectors: reduced row
/// echelon form with coordinates ordered by (component index, monomial).
/// Idempotent, and invariant under permutation and rescaling of the input.
pub fn rref_subspace(ring: &PolyRing, vectors: &[CoeffVector]) -> Vec<CoeffVector> {
    let field = ring.field();
    // collect the coordinate support
    let mut coords: Vec<Coord> = Vec::new();
    for v in vectors {
        for (k, c) in v.components.iter().enumerate() {
            for (m, _) in c.terms() {
                coords.push((k, m.clone()));
            }
        }
    }
    coords.sort();
    coords.dedup();
    if coords.is_empty() {
        return Vec::new();
    }
    let ncols = coords.len();
    let col_of = |k: usize, m: &Monomial| coords.binary_search_by(|c| (c.0, &c.1).cmp(&(k, m))).unwrap();
    let mut rows: Vec<Vec<Elt>> = Vec::new();
    for v in vectors {
        let mut row = vec![Elt::ZERO; ncols];
        for (k, c) in v.components.iter().enumerate() {
            for (m, e) in c.terms() {
                row[col_of(k, m)] = *e;
            }
        }
        rows.push(row);
    }
    // Gauss-Jordan
    let mut pivot_rows: Vec<Vec<Elt>> = Vec::new();
    for col in 0..ncols {
        let Some(r) = rows.iter().position(|row| !row[col].is_zero()) else {
            continue;
        };
        let mut pivot = rows.swap_remove(r);
        let inv = field.inv(pivot[col]).unwrap();
        for c in pivot.iter_mut() {
            *c = field.mul(*c, inv);
        }
        for row in rows.iter_mut().chain(pivot_rows.iter_mut()) {
            if !row[col].is_zero() {
                let factor = row[col];
                for (x, pc) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(factor, *pc));
                }
            }
        }
        rows.retain(|row| row.iter().any(|c| !c.is_zero()));
        pivot_rows.push(pivot);
    }
    // rows are already in pivot-column order by construction
    let ncomp = vectors.first().map(|v| v.components.len()).unwrap_or(0);
    pivot_rows
        .iter()
        .map(|row| {
            let mut components = vec![ring.zero(); ncomp];
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let (k, m) = &coords[i];
                    components[*k] =
                        components[*k].add(&ring.monomial(m.clone(), *c));
                }
            }
            CoeffVector { components }
        })
        .collect()
}

/// Hashable canonical key of a subspace, from its rref basis.
pub type SubspaceKey = Vec<Vec<(usize, Vec<u32>, u32)>>;

pub fn subspace_key(basis: &[CoeffVector]) -> SubspaceKey {
    basis
        .iter()
        .map(|v| {
            let mut row = Vec::new();
            for (k, c) in v.components.iter().enumerate() {
                for (m, e) in c.terms() {
                    row.push((k, m.exps.clone(), e.0));
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;
    use crate::limits::Limits;
    use crate::poly::RationalFunction;
    use crate::seq::{rf_int, PowerSumSeq};
    use rand::{Rng, SeedableRng};

    fn ring_f2_x() -> PolyRing {
        PolyRing::new(Fq::prime(2).unwrap(), vec!["x".into()])
    }

    fn random_poly(ring: &PolyRing, rng: &mut impl Rng, maxdeg: u32) -> MultiPoly {
        let q = ring.field().q();
        let mut acc = ring.zero();
        for _ in 0..rng.gen_range(0..8) {
            let exps: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..=maxdeg)).collect();
            let c = Elt(rng.gen_range(0..q) as u32);
            acc = acc.add(&ring.monomial(Monomial { exps }, c));
        }
        acc
    }

    #[test]
    fn pi_component_worked_example() {
        // f = x^3 + x^2 + 1 over F_2: pi_0 = x + 1, pi_1 = x
        let r = ring_f2_x();
        let x = r.var(0);
        let f = x.pow(3).unwrap().add(&x.pow(2).unwrap()).add(&r.one());
        let hs = split_indices(&r);
        let p0 = pi_component(&f, &hs[0]);
        let p1 = pi_component(&f, &hs[1]);
        assert_eq!(p0, x.add(&r.one()));
        assert_eq!(p1, x);
        // recombination: (x+1)^2 * 1 + x^2 * x = f
        let back = recombine(&[(hs[0].clone(), p0), (hs[1].clone(), p1)], &r).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn pi_of_constants() {
        let r = PolyRing::new(Fq::prime(3).unwrap(), vec!["x".into(), "y".into()]);
        let hs = split_indices(&r);
        assert_eq!(hs.len(), 9);
        for h in &hs {
            let part = pi_component(&r.one(), h);
            if h.linear == 0 {
                assert!(part.is_one());
            } else {
                assert!(part.is_zero());
            }
        }
    }

    #[test]
    fn pi_twisted_linearity() {
        // pi_h(g^p f) = g pi_h(f) and pi_h(c f) = c^(1/p) pi_h(f)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f4 = Fq::new(2, 2, Some(vec![1, 1, 1]), crate::ff::DEFAULT_Q_CAP).unwrap();
        let r = PolyRing::new(f4.clone(), vec!["x".into(), "y".into()]);
        for _ in 0..40 {
            let f = random_poly(&r, &mut rng, 5);
            let g = random_poly(&r, &mut rng, 2);
            let lam = Elt(rng.gen_range(0..4) as u32);
            for h in split_indices(&r) {
                let lhs = pi_component(&g.frob_power().unwrap().mul(&f), &h);
                let rhs = g.mul(&pi_component(&f, &h));
                assert_eq!(lhs, rhs);
                let lhs2 = pi_component(&f.mul_scalar(lam), &h);
                let rhs2 = pi_component(&f, &h).mul_scalar(f4.inv_frobenius(lam));
                assert_eq!(lhs2, rhs2);
            }
        }
    }

    #[test]
    fn recombination_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for p in [2u64, 3] {
            let r = PolyRing::new(
                Fq::prime(p).unwrap(),
                vec!["x".into(), "y".into(), "z".into()],
            );
            let hs = split_indices(&r);
            for _ in 0..30 {
                let f = random_poly(&r, &mut rng, 12);
                let parts: Vec<(SplitIndex, MultiPoly)> =
                    hs.iter().map(|h| (h.clone(), pi_component(&f, h))).collect();
                assert_eq!(recombine(&parts, &r).unwrap(), f);
            }
        }
    }

    fn ex2_context(p: u64) -> SplitContext {
        let r = PolyRing::new(Fq::prime(p).unwrap(), vec!["x".into()]);
        let x = r.var(0);
        let seq = PowerSumSeq::new(
            r.clone(),
            vec![
                (rf_int(&r, 1), RationalFunction::from_poly(x.add(&r.one()))),
                (rf_int(&r, -1), RationalFunction::from_poly(x.clone())),
                (rf_int(&r, -1), rf_int(&r, 1)),
            ],
        )
        .unwrap();
        SplitContext::new(seq.normalize().unwrap()).unwrap()
    }

    #[test]
    fn digit_transition_worked_example() {
        // ex2 over F_2: betas (1,1,1), alphas (x+1, x, 1); digit 1,
        // component h = 0 gives (pi_0(x+1), pi_0(x), pi_0(1)) = (1, 0, 1)
        let ctx = ex2_context(2);
        let v = ctx.initial_vector();
        let outs = ctx.digit_transition(&v, 1).unwrap();
        let r = ctx.ring().clone();
        assert_eq!(outs[0].components, vec![r.one(), r.zero(), r.one()]);
        assert_eq!(outs[1].components, vec![r.one(), r.one(), r.zero()]);
    }

    #[test]
    fn digit_transition_of_zero_vector() {
        let ctx = ex2_context(3);
        let zero = CoeffVector { components: vec![ctx.ring().zero(); 3] };
        for t in 0..3 {
            for out in ctx.digit_transition(&zero, t).unwrap() {
                assert!(out.is_zero());
            }
        }
    }

    #[test]
    fn transition_semantics_against_evaluation() {
        // reconstruct b(pn + t) from the transition outputs and compare
        let limits = Limits::default();
        for p in [2u64, 3] {
            let ctx = ex2_context(p);
            let r = ctx.ring().clone();
            let v = ctx.initial_vector();
            for t in 0..p as u32 {
                let outs = ctx.digit_transition(&v, t).unwrap();
                for n in 0..=15u64 {
                    // sum_h (sum_k out_h_k alpha_k^n)^p x^h should equal b(pn+t)
                    let mut parts = Vec::new();
                    for (h, out) in ctx.indices().iter().zip(&outs) {
                        let mut val = r.zero();
                        for ((_, alpha), w) in ctx.piece().terms().iter().zip(&out.components) {
                            val = val.add(&w.mul(&alpha.pow(n).unwrap()));
                        }
                        parts.push((h.clone(), val));
                    }
                    let lhs = recombine(&parts, &r).unwrap();
                    let rhs = ctx.piece().evaluate(p * n + t as u64, &limits).unwrap();
                    assert_eq!(lhs, rhs, "p = {p}, t = {t}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn degree_bound_holds_on_random_vectors() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let ctx = ex2_context(3);
        let d = ctx.degree_bound();
        for _ in 0..50 {
            let v = CoeffVector {
                components: (0..3)
                    .map(|_| random_poly(ctx.ring(), &mut rng, d as u32))
                    .collect(),
            };
            for t in 0..3 {
                for out in ctx.digit_transition(&v, t).unwrap() {
                    assert!(out.max_degree() <= d);
                }
            }
        }
    }

    #[test]
    fn rref_canonical_forms() {
        let r = PolyRing::new(Fq::prime(5).unwrap(), vec!["x".into()]);
        let x = r.var(0);
        let v = CoeffVector { components: vec![x.add(&r.int(2)), r.int(3)] };
        let two_v = CoeffVector {
            components: v.components.iter().map(|c| c.mul_scalar(Elt(2))).collect(),
        };
        let b1 = rref_subspace(&r, &[v.clone(), two_v.clone()]);
        assert_eq!(b1.len(), 1);
        let b2 = rref_subspace(&r, &[two_v, v]);
        assert_eq!(b1, b2);
        assert_eq!(rref_subspace(&r, &[]), Vec::<CoeffVector>::new());
        // idempotence
        assert_eq!(rref_subspace(&r, &b1), b1);
    }

    #[test]
    fn rref_permutation_invariance_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let r = PolyRing::new(Fq::prime(3).unwrap(), vec!["x".into(), "y".into()]);
        for _ in 0..25 {
            let mut vecs: Vec<CoeffVector> = (0..4)
                .map(|_| CoeffVector {
                    components: (0..2).map(|_| random_poly(&r, &mut rng, 3)).collect(),
                })
                .collect();
            let canon = rref_subspace(&r, &vecs);
            for _ in 0..4 {
                let i = rng.gen_range(0..vecs.len());
                let j = rng.gen_range(0..vecs.len());
                vecs.swap(i, j);
            }
            assert_eq!(rref_subspace(&r, &vecs), canon);
            assert_eq!(subspace_key(&canon), subspace_key(&rref_subspace(&r, &vecs)));
        }
    }

    #[test]
    fn transition_well_defined_on_subspaces() {
        // span of images of a basis equals span of images of a rescaled,
        // recombined basis of the same subspace
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let ctx = ex2_context(2);
        let r = ctx.ring().clone();
        let v1 = ctx.initial_vector();
        let outs1 = ctx.digit_transition(&v1, 1).unwrap();
        let base = rref_subspace(&r, &outs1);
        for _ in 0..10 {
            // random invertible combination of the base vectors
            let mut alt: Vec<CoeffVector> = base.clone();
            let n = alt.len();
            for _ in 0..6 {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    let scaled: Vec<MultiPoly> =
                        alt[j].components.iter().map(|c| c.clone()).collect();
                    alt[i] = CoeffVector {
                        components: alt[i]
                            .components
                            .iter()
                            .zip(&scaled)
                            .map(|(a, b)| a.add(b))
                            .collect(),
                    };
                }
            }
            let mut img_base = Vec::new();
            let mut img_alt = Vec::new();
            for t in 0..2 {
                for v in &base {
                    img_base.extend(ctx.digit_transition(v, t).unwrap());
                }
                for v in &alt {
                    img_alt.extend(ctx.digit_transition(v, t).unwrap());
                }
            }
            assert_eq!(
                subspace_key(&rref_subspace(&r, &img_base)),
                subspace_key(&rref_subspace(&r, &img_alt))
            );
        }
    }
}
