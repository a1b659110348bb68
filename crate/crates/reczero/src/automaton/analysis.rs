use super::{tarjan_sccs, Dfa};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::Zero;

/// Reachable-and-co-reachable view of an automaton. Transitions that leave
/// the live part are absent; the initial state is absent when the language
/// is empty.
#[derive(Clone, Debug)]
pub struct PartialDfa {
    pub p: u32,
    /// Original state ids of the live states.
    pub original: Vec<usize>,
    pub delta: Vec<Vec<Option<usize>>>,
    pub initial: Option<usize>,
    pub accepting: Vec<bool>,
}

impl Dfa {
    /// Keep states reachable from the initial state and co-reachable to an
    /// accepting state.
    pub fn trim(&self) -> PartialDfa {
        let n = self.num_states();
        let mut reach = vec![false; n];
        let mut queue = vec![self.initial()];
        reach[self.initial()] = true;
        while let Some(s) = queue.pop() {
            for t in 0..self.p() {
                let v = self.step(s, t);
                if !reach[v] {
                    reach[v] = true;
                    queue.push(v);
                }
            }
        }
        let mut coreach = vec![false; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for t in 0..self.p() {
                preds[self.step(s, t)].push(s);
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&s| self.is_accepting(s)).collect();
        for &s in &queue {
            coreach[s] = true;
        }
        while let Some(s) = queue.pop() {
            for &u in &preds[s] {
                if !coreach[u] {
                    coreach[u] = true;
                    queue.push(u);
                }
            }
        }
        let live: Vec<usize> = (0..n).filter(|&s| reach[s] && coreach[s]).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &s) in live.iter().enumerate() {
            index[s] = i;
        }
        let delta: Vec<Vec<Option<usize>>> = live
            .iter()
            .map(|&s| {
                (0..self.p())
                    .map(|t| {
                        let v = self.step(s, t);
                        if reach[v] && coreach[v] {
                            Some(index[v])
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let initial = if reach[self.initial()] && coreach[self.initial()] {
            Some(index[self.initial()])
        } else {
            None
        };
        let accepting = live.iter().map(|&s| self.is_accepting(s)).collect();
        PartialDfa { p: self.p(), original: live, delta, initial, accepting }
    }

    /// Smallest accepted value. Canonical numerals of accepted values have
    /// length at most the state count (pump down and strip high zeroes), so
    /// a bounded scan over exact lengths is complete.
    pub fn min_value(&self) -> Option<BigUint> {
        if self.is_accepting(self.initial()) {
            return Some(BigUint::zero());
        }
        if self.is_empty_language() {
            return None;
        }
        let mut best: Option<BigUint> = None;
        for len in 1..=self.num_states() + 1 {
            if let Some(v) = self.extreme_value_of_length(len, false) {
                best = Some(match best {
                    Some(b) if b <= v => b,
                    _ => v,
                });
            }
        }
        best
    }

    /// Largest accepted value of a finite value set; None when the set is
    /// infinite. The finiteness check tracks whether the most significant
    /// consumed digit is nonzero and looks for live cycles.
    pub fn max_value(&self) -> Option<BigUint> {
        if !self.is_value_set_finite() {
            return None;
        }
        let mut best: Option<BigUint> = None;
        for len in 1..=self.num_states() + 1 {
            if let Some(v) = self.extreme_value_of_length(len, true) {
                best = Some(match best {
                    Some(b) if b >= v => b,
                    _ => v,
                });
            }
        }
        if best.is_none() && self.is_accepting(self.initial()) {
            best = Some(BigUint::zero());
        }
        best
    }

    /// Min or max value over accepted canonical words of exactly this many
    /// digits (most significant digit nonzero).
    fn extreme_value_of_length(&self, len: usize, maximize: bool) -> Option<BigUint> {
        let n = self.num_states();
        let p = BigUint::from(self.p());
        // v[s] = extreme of the suffix value from position i at state s
        let mut v: Vec<Option<BigUint>> = (0..n)
            .map(|s| if self.is_accepting(s) { Some(BigUint::zero()) } else { None })
            .collect();
        for i in (0..len).rev() {
            let tmin = if i == len - 1 { 1 } else { 0 };
            let mut next: Vec<Option<BigUint>> = vec![None; n];
            for (s, slot) in next.iter_mut().enumerate() {
                for t in tmin..self.p() {
                    if let Some(sub) = &v[self.step(s, t)] {
                        let cand = BigUint::from(t) + sub * &p;
                        let better = match slot {
                            None => true,
                            Some(cur) => {
                                if maximize {
                                    cand > *cur
                                } else {
                                    cand < *cur
                                }
                            }
                        };
                        if better {
                            *slot = Some(cand);
                        }
                    }
                }
            }
            v = next;
        }
        v[self.initial()].clone()
    }

    /// Whether the set of accepted values is finite: no cycle in the live
    /// part of the canonical-numeral automaton.
    pub fn is_value_set_finite(&self) -> bool {
        // product with one bit: was the last consumed digit nonzero
        let n = self.num_states();
        let idx = |s: usize, f: usize| s * 2 + f;
        let n2 = 2 * n;
        let step2 = |x: usize, t: u32| {
            let s = x / 2;
            idx(self.step(s, t), (t != 0) as usize)
        };
        let acc2 = |x: usize| x % 2 == 1 && self.is_accepting(x / 2);
        // reachable
        let start = idx(self.initial(), 0);
        let mut reach = vec![false; n2];
        reach[start] = true;
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for t in 0..self.p() {
                let y = step2(x, t);
                if !reach[y] {
                    reach[y] = true;
                    queue.push(y);
                }
            }
        }
        // co-reachable
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n2];
        for x in 0..n2 {
            for t in 0..self.p() {
                preds[step2(x, t)].push(x);
            }
        }
        let mut coreach = vec![false; n2];
        let mut queue: Vec<usize> = (0..n2).filter(|&x| acc2(x)).collect();
        for &x in &queue {
            coreach[x] = true;
        }
        while let Some(x) = queue.pop() {
            for &u in &preds[x] {
                if !coreach[u] {
                    coreach[u] = true;
                    queue.push(u);
                }
            }
        }
        // cycle detection on the live subgraph
        let live: Vec<usize> = (0..n2).filter(|&x| reach[x] && coreach[x]).collect();
        let mut pos = vec![usize::MAX; n2];
        for (i, &x) in live.iter().enumerate() {
            pos[x] = i;
        }
        let succ = |i: usize| -> Vec<usize> {
            let x = live[i];
            let mut out = Vec::new();
            for t in 0..self.p() {
                let y = step2(x, t);
                if pos[y] != usize::MAX {
                    out.push(pos[y]);
                }
            }
            out
        };
        for scc in tarjan_sccs(live.len(), succ) {
            if scc.len() > 1 {
                return false;
            }
            let i = scc[0];
            if succ(i).contains(&i) {
                return false;
            }
        }
        true
    }
}

/// Complexity and structural report of a minimized complete automaton,
/// with the kernel bounds asserted: a nonempty set has its least element
/// below p^(states-2), and a finite set also its largest.
#[derive(Clone, Debug)]
pub struct KernelReport {
    /// Number of states of the minimal complete automaton.
    pub complexity: usize,
    pub is_empty: bool,
    pub min_element: Option<BigUint>,
    pub finite: bool,
    pub max_element: Option<BigUint>,
    pub reachable: Vec<bool>,
    pub co_reachable: Vec<bool>,
    /// Strongly connected components of the live part, reverse topological.
    pub sccs: Vec<Vec<usize>>,
}

pub fn kernel_report(d: &Dfa) -> Result<KernelReport> {
    let minimized = d.minimize();
    if minimized.num_states() != d.num_states() {
        return Err(Error::PreconditionUnmet(format!(
            "kernel report needs a minimized automaton ({} states, minimal {})",
            d.num_states(),
            minimized.num_states()
        )));
    }
    let n = d.num_states();
    let trim = d.trim();
    let mut reachable = vec![false; n];
    for &s in &d.reachable_states() {
        reachable[s] = true;
    }
    let mut co_reachable = vec![false; n];
    for &s in &trim.original {
        co_reachable[s] = true;
    }
    let succ = |i: usize| -> Vec<usize> {
        trim.delta[i].iter().flatten().copied().collect()
    };
    let sccs = tarjan_sccs(trim.original.len(), succ)
        .into_iter()
        .map(|scc| scc.into_iter().map(|i| trim.original[i]).collect())
        .collect();

    let is_empty = d.is_empty_language();
    let min_element = d.min_value();
    let finite = d.is_value_set_finite();
    let max_element = d.max_value();
    if n >= 2 {
        let bound = BigUint::from(d.p()).pow(n as u32 - 2);
        if let Some(m) = &min_element {
            if *m >= bound {
                return Err(Error::BoundViolated(format!(
                    "min element {m} is not below p^(complexity - 2) = {bound}"
                )));
            }
        }
        if finite {
            if let Some(m) = &max_element {
                if *m >= bound {
                    return Err(Error::BoundViolated(format!(
                        "max element {m} of a finite set is not below {bound}"
                    )));
                }
            }
        }
    }
    Ok(KernelReport {
        complexity: n,
        is_empty,
        min_element,
        finite,
        max_element,
        reachable,
        co_reachable,
        sccs,
    })
}
