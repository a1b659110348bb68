//! Complete deterministic finite automata over the digit alphabet
//! {0, ..., p-1}, reading base-p numerals least significant digit first.
//!
//! A word w is identified with the value sum w_i p^i; every automaton here
//! is value-consistent: appending a zero digit (a leading numeric zero)
//! never changes acceptance, so languages are in bijection with subsets of
//! the naturals.

mod analysis;
mod build;
mod nfa;

pub use analysis::{kernel_report, KernelReport, PartialDfa};
pub use build::build_zero_dfa;
pub use nfa::Nfa;

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    p: u32,
    /// delta[s][t] for each state s and digit t.
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

/// Stable serialization of an automaton.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct AutomatonDoc {
    pub p: u32,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(p: u32, delta: Vec<Vec<usize>>, initial: usize, accepting: Vec<bool>) -> Result<Dfa> {
        let n = delta.len();
        if n == 0 || p == 0 {
            return Err(Error::InvalidInput("automaton needs at least one state".into()));
        }
        if accepting.len() != n || initial >= n {
            return Err(Error::InvalidInput("inconsistent automaton tables".into()));
        }
        for row in &delta {
            if row.len() != p as usize || row.iter().any(|&t| t >= n) {
                return Err(Error::InvalidInput("transition table is not total".into()));
            }
        }
        Ok(Dfa { p, delta, initial, accepting })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }
    pub fn step(&self, s: usize, digit: u32) -> usize {
        self.delta[s][digit as usize]
    }
    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// The single-state automaton for the empty set or for all of N.
    pub fn trivial(p: u32, accept_all: bool) -> Dfa {
        Dfa { p, delta: vec![vec![0; p as usize]], initial: 0, accepting: vec![accept_all] }
    }

    /// acceptance(w) must equal acceptance(w 0) everywhere reachable.
    pub fn check_value_consistency(&self) -> Result<()> {
        for s in self.reachable_states() {
            if self.accepting[s] != self.accepting[self.delta[s][0]] {
                return Err(Error::Internal(format!(
                    "zero-append closure fails at state {s}"
                )));
            }
        }
        Ok(())
    }

    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Membership of a value: feed base-p digits LSB first.
    pub fn member(&self, n: &BigUint) -> bool {
        let mut s = self.initial;
        let mut rest = n.clone();
        let p = BigUint::from(self.p);
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&p);
            let digit = r.to_u64_digits().first().copied().unwrap_or(0) as u32;
            s = self.step(s, digit);
            rest = q;
        }
        self.accepting[s]
    }

    pub fn member_u64(&self, n: u64) -> bool {
        self.member(&BigUint::from(n))
    }

    /// Moore partition refinement to the canonical minimal complete DFA,
    /// with states renumbered in breadth-first order from the initial state
    /// over digits 0..p-1.
    pub fn minimize(&self) -> Dfa {
        // restrict to reachable states first
        let order = self.reachable_states();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            index[s] = i;
        }
        let n = order.len();
        let delta: Vec<Vec<usize>> = order
            .iter()
            .map(|&s| self.delta[s].iter().map(|&t| index[t]).collect())
            .collect();
        let accepting: Vec<bool> = order.iter().map(|&s| self.accepting[s]).collect();

        let mut class: Vec<usize> = accepting.iter().map(|&a| a as usize).collect();
        loop {
            let mut sig_map: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0usize; n];
            for s in 0..n {
                let mut sig = Vec::with_capacity(self.p as usize + 1);
                sig.push(class[s]);
                sig.extend(delta[s].iter().map(|&t| class[t]));
                let id = sig_map.len();
                next[s] = *sig_map.entry(sig).or_insert(id);
            }
            if next == class {
                break;
            }
            class = next;
        }
        // quotient, then canonical BFS numbering
        let nclasses = class.iter().max().unwrap() + 1;
        let mut rep = vec![usize::MAX; nclasses];
        for s in 0..n {
            if rep[class[s]] == usize::MAX {
                rep[class[s]] = s;
            }
        }
        let mut number = vec![usize::MAX; nclasses];
        let mut order2 = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        number[class[0]] = 0;
        order2.push(class[0]);
        queue.push_back(class[0]);
        while let Some(c) = queue.pop_front() {
            for t in 0..self.p as usize {
                let tc = class[delta[rep[c]][t]];
                if number[tc] == usize::MAX {
                    number[tc] = order2.len();
                    order2.push(tc);
                    queue.push_back(tc);
                }
            }
        }
        let m = order2.len();
        let new_delta: Vec<Vec<usize>> = order2
            .iter()
            .map(|&c| delta[rep[c]].iter().map(|&t| number[class[t]]).collect())
            .collect();
        let new_accepting: Vec<bool> = order2.iter().map(|&c| accepting[rep[c]]).collect();
        debug_assert_eq!(m, nclasses);
        Dfa { p: self.p, delta: new_delta, initial: 0, accepting: new_accepting }
    }

    fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.p, other.p);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut states = vec![(self.initial, other.initial)];
        index.insert((self.initial, other.initial), 0);
        let mut delta = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (a, b) = states[i];
            let mut row = Vec::with_capacity(self.p as usize);
            for t in 0..self.p {
                let pair = (self.step(a, t), other.step(b, t));
                let next = *index.entry(pair).or_insert_with(|| {
                    states.push(pair);
                    states.len() - 1
                });
                row.push(next);
            }
            delta.push(row);
            accepting.push(op(self.accepting[a], other.accepting[b]));
            i += 1;
        }
        Dfa { p: self.p, delta, initial: 0, accepting }
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a || b)
    }
    pub fn intersection(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }
    pub fn difference(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && !b)
    }
    pub fn symmetric_difference(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            p: self.p,
            delta: self.delta.clone(),
            initial: self.initial,
            accepting: self.accepting.iter().map(|&a| !a).collect(),
        }
    }

    pub fn is_empty_language(&self) -> bool {
        !self.reachable_states().iter().any(|&s| self.accepting[s])
    }

    /// Exact language equality via emptiness of the symmetric difference.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.symmetric_difference(other).is_empty_language()
    }

    /// Number of accepted values in [0, bound), by digit dynamic
    /// programming over fixed-length words with a low-digits-don't-exceed
    /// flag. Relies on (and asserts) zero-append closure, which makes
    /// fixed-length word counts equal value counts.
    pub fn count_below(&self, bound: &BigUint) -> Result<BigUint> {
        self.check_value_consistency()?;
        if bound.is_zero() {
            return Ok(BigUint::zero());
        }
        let m = bound - BigUint::one();
        let digits = to_digits(&m, self.p);
        // dp[(state, flag)]: flag = low digits so far <= m's low digits
        let mut dp: HashMap<(usize, bool), BigUint> = HashMap::new();
        dp.insert((self.initial, true), BigUint::one());
        for &md in &digits {
            let mut next: HashMap<(usize, bool), BigUint> = HashMap::new();
            for ((s, flag), count) in &dp {
                for t in 0..self.p {
                    let nf = t < md || (t == md && *flag);
                    let ns = self.step(*s, t);
                    *next.entry((ns, nf)).or_insert_with(BigUint::zero) += count;
                }
            }
            dp = next;
        }
        let mut total = BigUint::zero();
        for ((s, flag), count) in dp {
            if flag && self.accepting[s] {
                total += count;
            }
        }
        Ok(total)
    }

    /// Sorted accepted values below the bound. Digit DFS pruned by a
    /// can-still-accept table; capped to guard against huge answers.
    pub fn enumerate_below(&self, bound: &BigUint, cap: usize) -> Result<Vec<BigUint>> {
        self.check_value_consistency()?;
        if bound.is_zero() {
            return Ok(Vec::new());
        }
        let m = bound - BigUint::one();
        let digits = to_digits(&m, self.p);
        let len = digits.len();
        // possible[i][state][flag]: some completion of positions i.. accepts
        let mut possible = vec![vec![[false; 2]; self.num_states()]; len + 1];
        for s in 0..self.num_states() {
            possible[len][s][1] = self.accepting[s];
        }
        for i in (0..len).rev() {
            let md = digits[i];
            for s in 0..self.num_states() {
                for flag in 0..2 {
                    let mut ok = false;
                    for t in 0..self.p {
                        let nf = t < md || (t == md && flag == 1);
                        if possible[i + 1][self.step(s, t)][nf as usize] {
                            ok = true;
                            break;
                        }
                    }
                    possible[i][s][flag] = ok;
                }
            }
        }
        let mut out = Vec::new();
        let mut stack: Vec<(usize, usize, bool, BigUint, BigUint)> =
            vec![(0, self.initial, true, BigUint::zero(), BigUint::one())];
        while let Some((i, s, flag, value, place)) = stack.pop() {
            if i == len {
                if flag && self.accepting[s] {
                    out.push(value);
                    if out.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "more than {cap} members below the bound"
                        )));
                    }
                }
                continue;
            }
            let md = digits[i];
            for t in (0..self.p).rev() {
                let nf = t < md || (t == md && flag);
                let ns = self.step(s, t);
                if possible[i + 1][ns][nf as usize] {
                    stack.push((
                        i + 1,
                        ns,
                        nf,
                        &value + &place * BigUint::from(t),
                        &place * BigUint::from(self.p),
                    ));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Rewire the initial state along one digit: the automaton for
    /// {n : p n + t in S}.
    pub fn preimage_rewire(&self, t: u32) -> Dfa {
        let mut out = self.clone();
        out.initial = self.step(self.initial, t);
        out
    }

    /// Automaton for the affine image {k n + j : n in S}, built from a
    /// carry nondeterministic simulation of the digit arithmetic and then
    /// determinized.
    pub fn affine_image(&self, k: u64, j: u64) -> Result<Dfa> {
        if k == 0 {
            return Err(Error::InvalidInput("affine step must be positive".into()));
        }
        let p = self.p as u64;
        // NFA states: (automaton state, carry)
        let mut index: HashMap<(usize, u64), usize> = HashMap::new();
        let mut states = vec![(self.initial, j)];
        index.insert((self.initial, j), 0);
        let mut edges: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (s, carry) = states[i];
            let mut row: Vec<Vec<usize>> = vec![Vec::new(); self.p as usize];
            for t in 0..p {
                let tot = k * t + carry;
                let digit = (tot % p) as usize;
                let ncarry = tot / p;
                let pair = (self.step(s, t as u32), ncarry);
                let next = *index.entry(pair).or_insert_with(|| {
                    states.push(pair);
                    states.len() - 1
                });
                row[digit].push(next);
            }
            edges.push(row);
            accepting.push(carry == 0 && self.accepting[s]);
            i += 1;
        }
        let nfa = Nfa {
            p: self.p,
            edges,
            eps: vec![Vec::new(); states.len()],
            initials: vec![0],
            accepting,
        };
        Ok(nfa.determinize().minimize())
    }

    pub fn to_document(&self) -> AutomatonDoc {
        AutomatonDoc {
            p: self.p,
            states: self.num_states(),
            initial: self.initial,
            accepting: (0..self.num_states()).filter(|&s| self.accepting[s]).collect(),
            delta: self.delta.clone(),
        }
    }

    pub fn from_document(doc: &AutomatonDoc) -> Result<Dfa> {
        let mut accepting = vec![false; doc.states];
        for &s in &doc.accepting {
            if s >= doc.states {
                return Err(Error::InvalidInput("accepting state out of range".into()));
            }
            accepting[s] = true;
        }
        Dfa::new(doc.p, doc.delta.clone(), doc.initial, accepting)
    }

    /// Graphviz rendering: the initial state is drawn square, accepting
    /// states are filled.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "digraph dfa {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for s in 0..self.num_states() {
            let mut attrs = Vec::new();
            if s == self.initial {
                attrs.push("shape=square".to_string());
            }
            if self.accepting[s] {
                attrs.push("style=filled".to_string());
            }
            if attrs.is_empty() {
                writeln!(out, "  q{s};").unwrap();
            } else {
                writeln!(out, "  q{s} [{}];", attrs.join(", ")).unwrap();
            }
        }
        for s in 0..self.num_states() {
            // merge parallel edges into one label
            let mut by_target: Vec<(usize, Vec<String>)> = Vec::new();
            for (t, &target) in self.delta[s].iter().enumerate() {
                if let Some((_, labels)) = by_target.iter_mut().find(|(tg, _)| *tg == target) {
                    labels.push(t.to_string());
                } else {
                    by_target.push((target, vec![t.to_string()]));
                }
            }
            for (target, labels) in by_target {
                writeln!(out, "  q{s} -> q{target} [label=\"{}\"];", labels.join(",")).unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

pub(crate) fn to_digits(n: &BigUint, p: u32) -> Vec<u32> {
    if n.is_zero() {
        return vec![0];
    }
    let mut digits = Vec::new();
    let mut rest = n.clone();
    let pb = BigUint::from(p);
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&pb);
        digits.push(r.to_u64_digits().first().copied().unwrap_or(0) as u32);
        rest = q;
    }
    digits
}

/// Tarjan's strongly connected components, in reverse topological order.
pub(crate) fn tarjan_sccs(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    struct State {
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        counter: usize,
        sccs: Vec<Vec<usize>>,
    }
    let mut st = State {
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        counter: 0,
        sccs: Vec::new(),
    };
    // iterative Tarjan to avoid recursion depth limits
    for root in 0..n {
        if st.index[root].is_some() {
            continue;
        }
        let mut call_stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        st.index[root] = Some(st.counter);
        st.low[root] = st.counter;
        st.counter += 1;
        st.stack.push(root);
        st.on_stack[root] = true;
        while let Some((v, succs, mut i)) = call_stack.pop() {
            let mut descended = false;
            while i < succs.len() {
                let w = succs[i];
                i += 1;
                match st.index[w] {
                    None => {
                        call_stack.push((v, succs, i));
                        st.index[w] = Some(st.counter);
                        st.low[w] = st.counter;
                        st.counter += 1;
                        st.stack.push(w);
                        st.on_stack[w] = true;
                        call_stack.push((w, succ(w), 0));
                        descended = true;
                        break;
                    }
                    Some(widx) => {
                        if st.on_stack[w] {
                            st.low[v] = st.low[v].min(widx);
                        }
                    }
                }
            }
            if descended {
                continue;
            }
            if st.low[v] == st.index[v].unwrap() {
                let mut comp = Vec::new();
                loop {
                    let w = st.stack.pop().unwrap();
                    st.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                st.sccs.push(comp);
            }
            if let Some((parent, _, _)) = call_stack.last() {
                let pv = *parent;
                st.low[pv] = st.low[pv].min(st.low[v]);
            }
        }
    }
    st.sccs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{Fq, DEFAULT_Q_CAP};
    use crate::limits::Limits;
    use crate::poly::{PolyRing, RationalFunction};
    use crate::seq::{
        make_simple_nondegenerate, rf_int, PieceKind, PowerSumSeq, SequenceRep,
    };

    fn limits() -> Limits {
        Limits::default()
    }

    pub(crate) fn ex2_piece(p: u64) -> crate::seq::NormalizedPowerSum {
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
        seq.normalize().unwrap()
    }

    /// The 7-term trivariate sequence with zero set {2^n} ∪ {2^n + 2^m}.
    pub(crate) fn prop1_piece(p: u64) -> crate::seq::NormalizedPowerSum {
        let r = PolyRing::new(
            Fq::prime(p).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        );
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let terms = vec![
            (rf_int(&r, 1), x.add(&y).add(&z)),
            (rf_int(&r, -1), x.add(&y)),
            (rf_int(&r, -1), x.add(&z)),
            (rf_int(&r, -1), y.add(&z)),
            (rf_int(&r, 1), x.clone()),
            (rf_int(&r, 1), y.clone()),
            (rf_int(&r, 1), z.clone()),
        ];
        let seq = PowerSumSeq::new(
            r.clone(),
            terms
                .into_iter()
                .map(|(b, a)| (b, RationalFunction::from_poly(a)))
                .collect(),
        )
        .unwrap();
        seq.normalize().unwrap()
    }

    #[test]
    fn ex2_automaton_has_three_states() {
        let dfa = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        assert_eq!(dfa.num_states(), 3);
        dfa.check_value_consistency().unwrap();
        assert!(dfa.member_u64(1024));
        assert!(!dfa.member_u64(3));
        assert!(!dfa.member_u64(0));
        assert_eq!(dfa.is_accepting(dfa.initial()), dfa.member_u64(0));
    }

    #[test]
    fn zero_automaton_matches_oracle_scan() {
        for p in [2u64, 3] {
            let piece = ex2_piece(p);
            let dfa = build_zero_dfa(&piece, &limits()).unwrap().minimize();
            let scan = piece.zero_scan(500, &limits()).unwrap();
            for (n, &z) in scan.iter().enumerate() {
                assert_eq!(dfa.member_u64(n as u64), z, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn prop1_automaton_accepts_one_or_two_bit_numbers() {
        let piece = prop1_piece(2);
        let dfa = build_zero_dfa(&piece, &limits()).unwrap().minimize();
        for n in 0..512u64 {
            let expected = n.count_ones() == 1 || n.count_ones() == 2;
            assert_eq!(dfa.member_u64(n), expected, "n = {n}");
        }
    }

    #[test]
    fn single_term_piece_accepts_nothing() {
        let r = PolyRing::new(Fq::prime(2).unwrap(), vec!["x".into()]);
        let seq = PowerSumSeq::new(
            r.clone(),
            vec![(rf_int(&r, 1), RationalFunction::from_poly(r.var(0)))],
        )
        .unwrap();
        let dfa = build_zero_dfa(&seq.normalize().unwrap(), &limits()).unwrap();
        assert!(dfa.is_empty_language());
        assert_eq!(dfa.minimize().num_states(), 1);
    }

    #[test]
    fn minimize_is_idempotent_and_canonical() {
        let dfa = build_zero_dfa(&ex2_piece(3), &limits()).unwrap();
        let m1 = dfa.minimize();
        let m2 = m1.minimize();
        assert_eq!(m1, m2);
    }

    #[test]
    fn minimized_states_have_distinct_residuals() {
        // Myhill-Nerode sampling: probe words of length <= 12 distinguish
        // every pair of states of the minimized automaton
        let dfa = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        let n = dfa.num_states();
        let mut probes: Vec<Vec<bool>> = vec![Vec::new(); n];
        for len in 0..=12u32 {
            for w in 0u64..(2u64.pow(len)) {
                for s in 0..n {
                    let mut cur = s;
                    for i in 0..len {
                        cur = dfa.step(cur, ((w >> i) & 1) as u32);
                    }
                    probes[s].push(dfa.is_accepting(cur));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                assert_ne!(probes[i], probes[j], "states {i} and {j} are equivalent");
            }
        }
    }

    #[test]
    fn boolean_ops_and_equivalence() {
        let a = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        let empty = Dfa::trivial(2, false);
        assert!(a.union(&empty).equivalent(&a));
        assert!(a.symmetric_difference(&a).is_empty_language());
        assert!(a.equivalent(&a.minimize()));
        let b = build_zero_dfa(&prop1_piece(2), &limits()).unwrap().minimize();
        assert!(!a.equivalent(&b)); // 3 = 2^0 + 2^1 is only in prop1's set
        assert!(a.intersection(&b).equivalent(&a)); // powers of two are one-bit
        // product state bound
        let prod = a.union(&b).minimize();
        assert!(prod.num_states() <= a.num_states() * b.num_states());
    }

    #[test]
    fn count_below_formulas() {
        let prop1 = build_zero_dfa(&prop1_piece(2), &limits()).unwrap().minimize();
        for t in 3u32..=10 {
            let count = prop1.count_below(&BigUint::from(2u64).pow(t)).unwrap();
            let expected = t as u64 + (t as u64 * (t as u64 - 1)) / 2;
            assert_eq!(count, BigUint::from(expected), "t = {t}");
        }
        let ex2 = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        for t in 1u32..=12 {
            assert_eq!(
                ex2.count_below(&BigUint::from(2u64).pow(t)).unwrap(),
                BigUint::from(t as u64)
            );
        }
    }

    #[test]
    fn enumerate_matches_member_scan() {
        let dfa = build_zero_dfa(&prop1_piece(2), &limits()).unwrap().minimize();
        let listed = dfa.enumerate_below(&BigUint::from(300u64), 10_000).unwrap();
        let scanned: Vec<BigUint> = (0..300u64)
            .filter(|&n| dfa.member_u64(n))
            .map(BigUint::from)
            .collect();
        assert_eq!(listed, scanned);
    }

    #[test]
    fn member_on_big_integers() {
        let dfa = build_zero_dfa(&prop1_piece(2), &limits()).unwrap().minimize();
        // 2^100 + 1 has two one-bits
        let n = BigUint::from(2u64).pow(100) + BigUint::one();
        assert!(dfa.member(&n));
        let m = BigUint::from(2u64).pow(100) + BigUint::from(3u64);
        assert!(!dfa.member(&m));
    }

    #[test]
    fn kernel_report_on_singleton_sets() {
        // S = {0}: two states; S = {5}: five states, max 5 < 2^(5-2)
        let zero_only = Dfa::new(
            2,
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec![true, false],
        )
        .unwrap();
        let rep = kernel_report(&zero_only).unwrap();
        assert_eq!(rep.complexity, 2);
        assert_eq!(rep.min_element, Some(BigUint::zero()));
        assert!(rep.finite);
        assert_eq!(rep.max_element, Some(BigUint::zero()));

        // {5}: states track the remaining numeral 101, 10, 1, accept, dead
        let five = Dfa::new(
            2,
            vec![
                vec![4, 1], // expect LSB 1
                vec![2, 4], // expect 0
                vec![4, 3], // expect 1
                vec![3, 4], // accept, absorb zeros
                vec![4, 4], // dead
            ],
            0,
            vec![false, false, false, true, false],
        )
        .unwrap();
        assert!(five.member_u64(5));
        for n in 0..40u64 {
            assert_eq!(five.member_u64(n), n == 5);
        }
        let rep = kernel_report(&five.minimize()).unwrap();
        assert_eq!(rep.complexity, 5);
        assert_eq!(rep.min_element, Some(BigUint::from(5u64)));
        assert!(rep.finite);
        assert_eq!(rep.max_element, Some(BigUint::from(5u64)));
    }

    #[test]
    fn kernel_report_ex2() {
        let dfa = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        let rep = kernel_report(&dfa).unwrap();
        assert_eq!(rep.complexity, 3);
        assert_eq!(rep.min_element, Some(BigUint::one()));
        assert!(!rep.finite);
        assert_eq!(rep.max_element, None);
        assert!(!rep.is_empty);
    }

    #[test]
    fn affine_image_window_check() {
        let dfa = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        let image = dfa.affine_image(3, 1).unwrap();
        image.check_value_consistency().unwrap();
        for n in 0..3000u64 {
            let expected = n >= 1 && (n - 1) % 3 == 0 && dfa.member_u64((n - 1) / 3);
            assert_eq!(image.member_u64(n), expected, "n = {n}");
        }
        // identity image
        let same = dfa.affine_image(1, 0).unwrap();
        assert!(same.equivalent(&dfa));
    }

    #[test]
    fn preimage_rewire_matches_sectioned_build() {
        // the automaton for {n : p n + j in S} is the rewired automaton
        for p in [2u64, 3] {
            let piece = ex2_piece(p);
            let dfa = build_zero_dfa(&piece, &limits()).unwrap().minimize();
            for j in 0..p as u32 {
                let rewired = dfa.preimage_rewire(j).minimize();
                match crate::seq::section_power_sum(&piece, p, j as u64).unwrap() {
                    PieceKind::Seq(sectioned) => {
                        let direct =
                            build_zero_dfa(&sectioned, &limits()).unwrap().minimize();
                        assert!(direct.equivalent(&rewired), "p = {p}, j = {j}");
                    }
                    PieceKind::Zero => {
                        assert!(rewired.complement().is_empty_language());
                    }
                }
            }
        }
    }

    #[test]
    fn state_cap_reported() {
        let mut limits = limits();
        limits.state_cap = 2;
        let err = build_zero_dfa(&ex2_piece(2), &limits).unwrap_err();
        assert!(matches!(err, Error::StateExplosion(_)));
    }

    #[test]
    fn document_roundtrip_and_dot_shape() {
        let dfa = build_zero_dfa(&ex2_piece(2), &limits()).unwrap().minimize();
        let doc = dfa.to_document();
        let back = Dfa::from_document(&doc).unwrap();
        assert_eq!(back, dfa);
        let dot = dfa.to_dot();
        assert!(dot.contains("shape=square"));
        assert!(dot.contains("style=filled"));
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: AutomatonDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
    }

    #[test]
    fn pieces_to_union_matches_full_zero_set() {
        // assemble the sectioned pieces of the torsion example with affine
        // images and compare against the oracle
        let r = PolyRing::new(Fq::prime(5).unwrap(), vec!["x".into()]);
        let x = r.var(0);
        let seq = PowerSumSeq::new(
            r.clone(),
            vec![
                (rf_int(&r, 1), RationalFunction::from_poly(x.clone())),
                (
                    rf_int(&r, 1),
                    RationalFunction::from_poly(x.mul_scalar(r.field().int(2))),
                ),
            ],
        )
        .unwrap();
        let rep = SequenceRep::PowerSum(seq.clone());
        let dec = make_simple_nondegenerate(&rep, &limits()).unwrap();
        let mut union = Dfa::trivial(5, false);
        for piece in &dec.pieces {
            let part = match &piece.kind {
                PieceKind::Zero => Dfa::trivial(5, true),
                PieceKind::Seq(s) => build_zero_dfa(s, &limits()).unwrap().minimize(),
            };
            let image = part.affine_image(piece.step, dec.offset + piece.residue).unwrap();
            union = union.union(&image).minimize();
        }
        let oracle = rep.zero_scan(400, &limits()).unwrap();
        for (n, &z) in oracle.iter().enumerate() {
            assert_eq!(union.member_u64(n as u64), z, "n = {n}");
        }
    }
}
