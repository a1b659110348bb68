//! Extraction of the normal form from a zero automaton.
//!
//! In the trim automaton of a simple nondegenerate piece, every nontrivial
//! strongly connected component is a simple cycle (each member state has a
//! single in-component successor). An accepted run therefore decomposes
//! uniquely into acyclic connector segments interleaved with full turns of
//! the entry cycles, so the language is a finite union of loop families
//!
//!     seg_0 (loop_1)^k1 seg_1 ... (loop_m)^km seg_m      (reading order)
//!
//! over independent repetition counts. Unifying loop lengths to their lcm
//! and expanding the position arithmetic turns each family into an
//! elementary nested set over q = p^lcm.

use super::{ElementaryNested, NestedOrFinite, PNormalForm, UpFamily};
use crate::automaton::{tarjan_sccs, Dfa, PartialDfa};
use crate::error::{Error, Result};
use crate::limits::Limits;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

/// Reading-order family: segments between loop events, and the loop words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct RawFamily {
    segments: Vec<Vec<u32>>,
    loops: Vec<Vec<u32>>,
}

/// Decompose a minimized automaton built from a simple nondegenerate piece
/// into a normal form. `order_bound`, when given, asserts the loop-count
/// bound m <= d - 2 from the structure theorem.
pub fn decompose(dfa: &Dfa, order_bound: Option<usize>, limits: &Limits) -> Result<PNormalForm> {
    let p = dfa.p() as u64;
    let trim = dfa.trim();
    let mut form = PNormalForm::empty(p);
    form.provenance = Some(Vec::new());
    let Some(initial) = trim.initial else {
        return Ok(form); // empty language
    };
    let cycles = CycleStructure::analyze(&trim)?;
    let families = enumerate_families(&trim, &cycles, initial, limits)?;

    if let Some(d) = order_bound {
        for fam in &families {
            if fam.loops.len() + 2 > d {
                return Err(Error::Internal(format!(
                    "family with {} loops violates the order bound {} - 2",
                    fam.loops.len(),
                    d
                )));
            }
        }
    }

    let mut provenance = Vec::new();
    for fam in &families {
        provenance.push(fam.to_numeral_family());
        for uniform in unify_loop_lengths(fam, limits)? {
            match family_to_nested(&uniform, p, limits)? {
                NestedOrFinite::Nested(s) => form.nested.push(s),
                NestedOrFinite::Finite(vals) => form.finite.extend(vals),
            }
        }
    }
    provenance.sort();
    provenance.dedup();
    form.provenance = Some(provenance);
    form.canonicalize();

    // safety net: sampled members of every emitted nested set are accepted
    for s in &form.nested {
        for v in s.members_below(&BigUint::from(4096u64), limits)? {
            if !dfa.member(&v) {
                return Err(Error::Internal(format!(
                    "decomposition emitted {} which contains non-member {v}",
                    s.render()
                )));
            }
        }
    }
    Ok(form)
}

/// Per-state cycle data of the trim automaton.
struct CycleStructure {
    /// scc id per trim state.
    scc_id: Vec<usize>,
    /// for states on a cycle: the digit of the unique in-component edge.
    cycle_digit: Vec<Option<u32>>,
    /// for states on a cycle: the in-component successor.
    cycle_next: Vec<Option<usize>>,
    /// whether the scc is a nontrivial (cycle) component.
    scc_is_cycle: Vec<bool>,
    scc_len: Vec<usize>,
}

impl CycleStructure {
    fn analyze(trim: &PartialDfa) -> Result<CycleStructure> {
        let n = trim.original.len();
        let succ = |i: usize| -> Vec<usize> { trim.delta[i].iter().flatten().copied().collect() };
        let sccs = tarjan_sccs(n, succ);
        let mut scc_id = vec![0usize; n];
        for (id, scc) in sccs.iter().enumerate() {
            for &s in scc {
                scc_id[s] = id;
            }
        }
        let mut cycle_digit = vec![None; n];
        let mut cycle_next = vec![None; n];
        let mut scc_is_cycle = vec![false; sccs.len()];
        let mut scc_len = vec![0usize; sccs.len()];
        for (id, scc) in sccs.iter().enumerate() {
            scc_len[id] = scc.len();
            let has_self_loop = scc.len() == 1 && {
                let s = scc[0];
                trim.delta[s].iter().flatten().any(|&t| t == s)
            };
            let nontrivial = scc.len() > 1 || has_self_loop;
            if !nontrivial {
                continue;
            }
            scc_is_cycle[id] = true;
            for &s in scc {
                let mut internal: Vec<(u32, usize)> = Vec::new();
                for (t, target) in trim.delta[s].iter().enumerate() {
                    if let Some(v) = target {
                        if scc_id[*v] == id {
                            internal.push((t as u32, *v));
                        }
                    }
                }
                if internal.len() != 1 {
                    return Err(Error::NonCycleScc);
                }
                cycle_digit[s] = Some(internal[0].0);
                cycle_next[s] = Some(internal[0].1);
            }
        }
        Ok(CycleStructure { scc_id, cycle_digit, cycle_next, scc_is_cycle, scc_len })
    }

    /// The loop word at a cycle state, in reading order.
    fn loop_word(&self, start: usize) -> Vec<u32> {
        let mut word = Vec::new();
        let mut s = start;
        loop {
            word.push(self.cycle_digit[s].unwrap());
            s = self.cycle_next[s].unwrap();
            if s == start {
                break;
            }
        }
        word
    }
}

const FAMILY_CAP: usize = 100_000;

fn enumerate_families(
    trim: &PartialDfa,
    cycles: &CycleStructure,
    initial: usize,
    _limits: &Limits,
) -> Result<Vec<RawFamily>> {
    let mut out: Vec<RawFamily> = Vec::new();
    let mut segments: Vec<Vec<u32>> = Vec::new();
    let mut loops: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    visit(trim, cycles, initial, &mut segments, &mut loops, &mut current, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Depth-first enumeration over the condensation order. Entering a cycle
/// component designates a loop at the entry state (covering zero or more
/// full turns), then walks the arc toward each exit or acceptance point.
fn visit(
    trim: &PartialDfa,
    cycles: &CycleStructure,
    state: usize,
    segments: &mut Vec<Vec<u32>>,
    loops: &mut Vec<Vec<u32>>,
    current: &mut Vec<u32>,
    out: &mut Vec<RawFamily>,
) -> Result<()> {
    let scc = cycles.scc_id[state];
    if cycles.scc_is_cycle[scc] {
        // close the running segment and open a loop at the entry state
        segments.push(current.clone());
        loops.push(cycles.loop_word(state));
        let saved = current.clone();
        current.clear();
        let len = cycles.scc_len[scc].max(1);
        let cycle_len = loops.last().unwrap().len().max(len);
        let mut u = state;
        for _ in 0..cycle_len {
            emit_and_exit(trim, cycles, u, scc, segments, loops, current, out)?;
            current.push(cycles.cycle_digit[u].unwrap());
            u = cycles.cycle_next[u].unwrap();
        }
        current.clear();
        current.extend(saved);
        loops.pop();
        segments.pop();
    } else {
        emit_and_exit_trivial(trim, cycles, state, segments, loops, current, out)?;
    }
    Ok(())
}

fn emit_and_exit(
    trim: &PartialDfa,
    cycles: &CycleStructure,
    u: usize,
    scc: usize,
    segments: &mut Vec<Vec<u32>>,
    loops: &mut Vec<Vec<u32>>,
    current: &mut Vec<u32>,
    out: &mut Vec<RawFamily>,
) -> Result<()> {
    if trim.accepting[u] {
        let mut segs = segments.clone();
        segs.push(current.clone());
        out.push(RawFamily { segments: segs, loops: loops.clone() });
        if out.len() > FAMILY_CAP {
            return Err(Error::CapExceeded("loop-family enumeration exploded".into()));
        }
    }
    for (t, target) in trim.delta[u].iter().enumerate() {
        if let Some(v) = target {
            if cycles.scc_id[*v] != scc {
                current.push(t as u32);
                visit(trim, cycles, *v, segments, loops, current, out)?;
                current.pop();
            }
        }
    }
    Ok(())
}

fn emit_and_exit_trivial(
    trim: &PartialDfa,
    cycles: &CycleStructure,
    s: usize,
    segments: &mut Vec<Vec<u32>>,
    loops: &mut Vec<Vec<u32>>,
    current: &mut Vec<u32>,
    out: &mut Vec<RawFamily>,
) -> Result<()> {
    if trim.accepting[s] {
        let mut segs = segments.clone();
        segs.push(current.clone());
        out.push(RawFamily { segments: segs, loops: loops.clone() });
        if out.len() > FAMILY_CAP {
            return Err(Error::CapExceeded("loop-family enumeration exploded".into()));
        }
    }
    for (t, target) in trim.delta[s].iter().enumerate() {
        if let Some(v) = target {
            debug_assert_ne!(*v, s, "trivial component with a self edge");
            current.push(t as u32);
            visit(trim, cycles, *v, segments, loops, current, out)?;
            current.pop();
        }
    }
    Ok(())
}

impl RawFamily {
    /// Convert to numeral order: reverse each digit word. Reading-order
    /// block i corresponds to the numeral word u_i of the published form.
    fn to_numeral_family(&self) -> UpFamily {
        UpFamily {
            u: self.segments.iter().map(|s| s.iter().rev().copied().collect()).collect(),
            w: self.loops.iter().map(|s| s.iter().rev().copied().collect()).collect(),
        }
    }
}

const RESIDUE_CAP: usize = 65_536;

/// Split repetition counts into residue classes so that all loops of the
/// family share the same length r = lcm of the loop lengths.
fn unify_loop_lengths(fam: &RawFamily, _limits: &Limits) -> Result<Vec<RawFamily>> {
    if fam.loops.is_empty() {
        return Ok(vec![fam.clone()]);
    }
    let lens: Vec<usize> = fam.loops.iter().map(|w| w.len()).collect();
    let r = lens.iter().fold(1usize, |acc, &l| acc.lcm(&l));
    let reps: Vec<usize> = lens.iter().map(|&l| r / l).collect();
    let total: usize = reps.iter().product();
    if total > RESIDUE_CAP {
        return Err(Error::CapExceeded("loop-length unification blowup".into()));
    }
    let mut out = Vec::with_capacity(total);
    let mut residues = vec![0usize; fam.loops.len()];
    loop {
        // segments absorb the residual turns, loops become r-digit words
        let mut segments = fam.segments.clone();
        let mut loops = Vec::with_capacity(fam.loops.len());
        for (i, w) in fam.loops.iter().enumerate() {
            for _ in 0..residues[i] {
                segments[i].extend(w.iter().copied());
            }
            let mut stretched = Vec::with_capacity(r);
            for _ in 0..reps[i] {
                stretched.extend(w.iter().copied());
            }
            loops.push(stretched);
        }
        out.push(RawFamily { segments, loops });
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == residues.len() {
                return Ok(out);
            }
            residues[i] += 1;
            if residues[i] < reps[i] {
                break;
            }
            residues[i] = 0;
            i += 1;
        }
    }
}

/// Value of a digit word in reading order (position 0 is least
/// significant).
fn word_value(word: &[u32], p: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let pb = BigInt::from(p);
    for &d in word.iter().rev() {
        acc = acc * &pb + BigInt::from(d);
    }
    acc
}

/// Expand the value arithmetic of a uniform family into scaled nested-set
/// coefficients over q = p^r.
fn family_to_nested(fam: &RawFamily, p: u64, limits: &Limits) -> Result<NestedOrFinite> {
    let m = fam.loops.len();
    if m == 0 {
        let v = word_value(&fam.segments[0], p);
        return Ok(NestedOrFinite::Finite(vec![v.to_biguint().unwrap()]));
    }
    let r = fam.loops[0].len();
    debug_assert!(fam.loops.iter().all(|w| w.len() == r));
    let q = BigInt::from(p).pow(r as u32);
    let qm1 = &q - 1;
    let pb = BigInt::from(p);
    // offsets p^(t_0 + ... + t_(i-1)) of each block
    let mut seg_vals = Vec::with_capacity(m + 1);
    let mut loop_vals = Vec::with_capacity(m);
    let mut shift = BigInt::from(1u32);
    for (i, seg) in fam.segments.iter().enumerate() {
        seg_vals.push(word_value(seg, p) * &shift);
        if i < m {
            loop_vals.push(word_value(&fam.loops[i], p) * &shift);
        }
        shift *= pb.pow(seg.len() as u32);
    }
    // scaled coefficients: Z_0 = (q-1)B_0 - W_1, Z_i = (q-1)B_i + W_i - W_(i+1),
    // Z_m = (q-1)B_m + W_m
    let mut z = Vec::with_capacity(m + 1);
    z.push(&seg_vals[0] * &qm1 - &loop_vals[0]);
    for i in 1..m {
        z.push(&seg_vals[i] * &qm1 + &loop_vals[i - 1] - &loop_vals[i]);
    }
    z.push(&seg_vals[m] * &qm1 + &loop_vals[m - 1]);
    ElementaryNested::nested_or_finite(p, r as u32, z, limits)
}
