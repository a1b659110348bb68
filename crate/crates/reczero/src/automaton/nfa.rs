use super::Dfa;
use std::collections::{BTreeSet, HashMap};

/// Nondeterministic automaton with epsilon edges, used by the subset
/// constructions (reconstruction from loop families, affine images,
/// reverse determinization). Not part of the public language API.
#[derive(Clone, Debug)]
pub struct Nfa {
    pub p: u32,
    /// edges[s][digit] = successor list.
    pub edges: Vec<Vec<Vec<usize>>>,
    pub eps: Vec<Vec<usize>>,
    pub initials: Vec<usize>,
    pub accepting: Vec<bool>,
}

impl Nfa {
    pub fn empty(p: u32) -> Nfa {
        Nfa { p, edges: Vec::new(), eps: Vec::new(), initials: Vec::new(), accepting: Vec::new() }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.edges.push(vec![Vec::new(); self.p as usize]);
        self.eps.push(Vec::new());
        self.accepting.push(accepting);
        self.accepting.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, digit: u32, to: usize) {
        self.edges[from][digit as usize].push(to);
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    fn eps_closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction; the result is complete (the empty subset is the
    /// dead state).
    pub fn determinize(&self) -> Dfa {
        let mut initial: BTreeSet<usize> = self.initials.iter().copied().collect();
        self.eps_closure(&mut initial);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let init_key: Vec<usize> = initial.iter().copied().collect();
        let mut subsets = vec![initial];
        index.insert(init_key, 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let current = subsets[i].clone();
            let mut row = Vec::with_capacity(self.p as usize);
            for t in 0..self.p as usize {
                let mut next: BTreeSet<usize> = BTreeSet::new();
                for &s in &current {
                    next.extend(self.edges[s][t].iter().copied());
                }
                self.eps_closure(&mut next);
                let key: Vec<usize> = next.iter().copied().collect();
                let id = *index.entry(key).or_insert_with(|| {
                    subsets.push(next);
                    subsets.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            accepting.push(current.iter().any(|&s| self.accepting[s]));
            i += 1;
        }
        Dfa::new(self.p, delta, 0, accepting).expect("subset construction is total")
    }

    /// The reverse NFA: edges flipped, accepting and initial exchanged.
    /// Determinizing it yields a most-significant-digit-first automaton for
    /// the same numeral language.
    pub fn from_reversed_dfa(dfa: &Dfa) -> Nfa {
        let n = dfa.num_states();
        let mut nfa = Nfa::empty(dfa.p());
        for s in 0..n {
            nfa.add_state(s == dfa.initial());
        }
        for s in 0..n {
            for t in 0..dfa.p() {
                nfa.add_edge(dfa.step(s, t), t, s);
            }
        }
        nfa.initials = (0..n).filter(|&s| dfa.is_accepting(s)).collect();
        nfa
    }
}
