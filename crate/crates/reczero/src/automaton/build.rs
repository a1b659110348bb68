use super::Dfa;
use crate::error::{Error, Result};
use crate::frobsplit::{rref_subspace, subspace_key, CoeffVector, SplitContext, SubspaceKey};
use crate::limits::Limits;
use crate::seq::NormalizedPowerSum;
use std::collections::HashMap;

/// Build the automaton recognizing {n : piece(n) = 0}, reading base-p
/// digits least significant first.
///
/// States are canonical F_q-subspaces of coefficient vectors. The initial
/// state is the span of the beta vector; reading digit t maps a subspace to
/// the span of all splitting components of its basis vectors scaled by
/// alpha^t; a state accepts when every basis vector sums to zero (the
/// represented sequences all vanish at n = 0). The result is exact but not
/// minimal; callers minimize.
pub fn build_zero_dfa(piece: &NormalizedPowerSum, limits: &Limits) -> Result<Dfa> {
    let ctx = SplitContext::new(piece.clone())?;
    let ring = ctx.ring().clone();
    let p = ring.field().p() as u32;

    let initial_basis = rref_subspace(&ring, &[ctx.initial_vector()]);
    if initial_basis.is_empty() {
        return Err(Error::Internal("zero piece reached the automaton builder".into()));
    }

    let mut index: HashMap<SubspaceKey, usize> = HashMap::new();
    let mut bases: Vec<Vec<CoeffVector>> = vec![initial_basis.clone()];
    index.insert(subspace_key(&initial_basis), 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();

    let mut i = 0;
    while i < bases.len() {
        let basis = bases[i].clone();
        let mut row = Vec::with_capacity(p as usize);
        for t in 0..p {
            let mut images: Vec<CoeffVector> = Vec::new();
            for v in &basis {
                images.extend(ctx.digit_transition(v, t)?);
            }
            let next_basis = rref_subspace(&ring, &images);
            debug_assert!(
                !next_basis.is_empty(),
                "nonzero subspace mapped to the zero subspace"
            );
            let key = subspace_key(&next_basis);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = bases.len();
                    if id >= limits.state_cap {
                        return Err(Error::StateExplosion(id));
                    }
                    index.insert(key, id);
                    bases.push(next_basis);
                    id
                }
            };
            row.push(id);
        }
        accepting.push(basis.iter().all(|v| v.component_sum(&ring).is_zero()));
        delta.push(row);
        i += 1;
    }
    let dfa = Dfa::new(p, delta, 0, accepting)?;
    dfa.check_value_consistency()?;
    Ok(dfa)
}
