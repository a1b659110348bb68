//! Automata for normal-form parts, built directly from the numeric data
//! (no provenance needed): kernel construction for finite sets, residue
//! tracking for progressions, and a carry simulation for nested sets.
//! These realizers make every normal form comparable by exact automaton
//! equivalence.

use super::{ElementaryNested, PNormalForm, Progression};
use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::limits::Limits;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::collections::HashMap;

/// Kernel construction: the state after reading low digits u (i digits) is
/// the set {(v - u) / p^i : v in F, v ≡ u mod p^i}; accepting iff it
/// contains 0.
pub fn finite_to_dfa(p: u32, values: &[BigUint]) -> Dfa {
    let start: BTreeSet<BigUint> = values.iter().cloned().collect();
    let mut index: HashMap<Vec<BigUint>, usize> = HashMap::new();
    let key = |s: &BTreeSet<BigUint>| s.iter().cloned().collect::<Vec<_>>();
    let mut states = vec![start.clone()];
    index.insert(key(&start), 0);
    let mut delta = Vec::new();
    let mut accepting = Vec::new();
    let pb = BigUint::from(p);
    let mut i = 0;
    while i < states.len() {
        let cur = states[i].clone();
        let mut row = Vec::with_capacity(p as usize);
        for t in 0..p {
            let tb = BigUint::from(t);
            let next: BTreeSet<BigUint> = cur
                .iter()
                .filter(|v| (*v % &pb) == tb)
                .map(|v| (v - &tb) / &pb)
                .collect();
            let k = key(&next);
            let id = *index.entry(k).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        accepting.push(cur.contains(&BigUint::zero()));
        i += 1;
    }
    Dfa::new(p, delta, 0, accepting).expect("kernel construction is total").minimize()
}

/// {offset + period k : k in N} as an automaton: track the value so far
/// modulo the period, saturated against the offset, along with the power
/// of p at the current position.
pub fn ap_to_dfa(p: u32, ap: &Progression) -> Result<Dfa> {
    let n = ap.period.max(1);
    let m = ap.offset;
    // state: (value mod n, min(value, m), p^i mod n, min(p^i, m+1))
    type St = (u64, u64, u64, u64);
    let start: St = (0, 0, 1 % n, 1.min(m + 1));
    let mut index: HashMap<St, usize> = HashMap::new();
    let mut states = vec![start];
    index.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (vmod, vsat, pmod, pcap) = states[i];
        let mut row = Vec::with_capacity(p as usize);
        for t in 0..p as u64 {
            let nvmod = (vmod + t * pmod) % n;
            let nvsat = (vsat + t.saturating_mul(pcap)).min(m);
            let npmod = (pmod * p as u64) % n;
            let npcap = (pcap.saturating_mul(p as u64)).min(m + 1);
            let st = (nvmod, nvsat, npmod, npcap);
            let id = *index.entry(st).or_insert_with(|| {
                states.push(st);
                states.len() - 1
            });
            row.push(id);
            if states.len() > 4_000_000 {
                return Err(Error::CapExceeded("progression automaton too large".into()));
            }
        }
        delta.push(row);
        accepting.push(vmod == m % n && vsat == m);
        i += 1;
    }
    Ok(Dfa::new(p, delta, 0, accepting)?.minimize())
}

/// Carry simulation recognizing {n : (q-1) n = z_0 + sum z_i q^(k_i)}.
/// Base-p digits are grouped into base-q digits (q = p^r); at each q-digit
/// position a nondeterministic choice places a subset of the unplaced
/// slots. Acceptance closes over trailing zero digits.
pub fn nested_to_dfa(s: &ElementaryNested, limits: &Limits) -> Result<Dfa> {
    let p = s.p() as u32;
    let r = s.r();
    let z = s.scaled_coeffs();
    let slots: Vec<BigInt> = z[1..].to_vec();
    let nslots = slots.len();
    debug_assert!(nslots <= 20);
    let q = BigInt::from(s.q());
    let qm1 = &q - 1;
    // carries contract toward a band of width ~ sum|z_i|/(q-1); the initial
    // carry z_0 may start outside it and decay, so admit both
    let span: BigInt = slots.iter().map(|c| c.abs()).sum::<BigInt>() + z[0].abs();
    let band = (&span + &qm1 * &qm1) / &qm1 + BigInt::from(2);
    let carry_bound = band.max(z[0].abs() + BigInt::one());

    // NFA state: (mask of placed slots, carry, phase, partial digit)
    type St = (u32, BigInt, u32, u64);
    let full: u32 = (1u32 << nslots) - 1;
    let start: St = (0, z[0].clone(), 0, 0);
    let mut index: HashMap<St, usize> = HashMap::new();
    let mut states: Vec<St> = vec![start.clone()];
    index.insert(start, 0);
    let mut edges: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (mask, carry, phase, partial) = states[i].clone();
        let mut row: Vec<Vec<usize>> = vec![Vec::new(); p as usize];
        for t in 0..p as u64 {
            let new_partial = partial + t * (p as u64).pow(phase);
            let mut succs: Vec<St> = Vec::new();
            if phase + 1 < r {
                succs.push((mask, carry.clone(), phase + 1, new_partial));
            } else {
                // full base-q digit assembled: place any subset of slots
                let g = BigInt::from(new_partial);
                let mut sub = mask ^ full; // unplaced slots
                loop {
                    // iterate subsets of the unplaced set (including empty)
                    let placed: BigInt = (0..nslots)
                        .filter(|k| (sub >> k) & 1 == 1)
                        .map(|k| slots[k].clone())
                        .sum();
                    let num = &carry + &placed - &qm1 * &g;
                    let (div, rem) = num.div_rem(&q);
                    if rem.is_zero() && div.abs() <= carry_bound {
                        succs.push((mask | sub, div, 0, 0));
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & (mask ^ full);
                }
            }
            for st in succs {
                let id = *index.entry(st.clone()).or_insert_with(|| {
                    states.push(st);
                    states.len() - 1
                });
                row[t as usize].push(id);
                if states.len() > limits.state_cap * 16 {
                    return Err(Error::StateExplosion(states.len()));
                }
            }
        }
        edges.push(row);
        i += 1;
    }
    // acceptance: can reach (full, 0, phase 0) by feeding zero digits
    let goal: Vec<bool> = states
        .iter()
        .map(|(mask, carry, phase, _)| *mask == full && carry.is_zero() && *phase == 0)
        .collect();
    let mut zero_accepting = goal.clone();
    // backward closure over zero-digit edges
    loop {
        let mut changed = false;
        for (s_idx, row) in edges.iter().enumerate() {
            if !zero_accepting[s_idx] && row[0].iter().any(|&t| zero_accepting[t]) {
                zero_accepting[s_idx] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let nfa = Nfa {
        p,
        edges,
        eps: vec![Vec::new(); states.len()],
        initials: vec![0],
        accepting: zero_accepting,
    };
    let dfa = nfa.determinize().minimize();
    dfa.check_value_consistency()?;
    Ok(dfa)
}

/// Union automaton of a whole normal form.
pub fn pnormal_to_dfa(form: &PNormalForm, limits: &Limits) -> Result<Dfa> {
    let p = form.p as u32;
    let mut acc = finite_to_dfa(p, &form.finite);
    for ap in &form.aps {
        acc = acc.union(&ap_to_dfa(p, ap)?).minimize();
    }
    for s in &form.nested {
        acc = acc.union(&nested_to_dfa(s, limits)?).minimize();
    }
    Ok(acc)
}
