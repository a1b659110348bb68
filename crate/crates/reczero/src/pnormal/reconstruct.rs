//! Round-trip verifier: rebuild an automaton from the exact loop families
//! a decomposition was extracted from. The rebuilt automaton must be
//! equivalent to the source; this checks the family enumeration itself,
//! independently of the nested-set value arithmetic.

use super::{PNormalForm, UpFamily};
use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};

/// Build the recognizer of the union of the provenance families:
/// concatenation chains for the literal words with a cycle at each loop
/// anchor, determinized and minimized.
pub fn reconstruct_dfa(form: &PNormalForm) -> Result<Dfa> {
    let p = form.p as u32;
    let families = form
        .provenance
        .as_ref()
        .ok_or_else(|| Error::PreconditionUnmet("form carries no provenance".into()))?;
    let mut nfa = Nfa::empty(p);
    let start = nfa.add_state(false);
    nfa.initials = vec![start];
    for fam in families {
        add_family(&mut nfa, start, fam);
    }
    Ok(nfa.determinize().minimize())
}

fn add_family(nfa: &mut Nfa, start: usize, fam: &UpFamily) {
    // words are stored in numeral order; the automaton reads them reversed
    let mut cursor = start;
    let m = fam.w.len();
    debug_assert_eq!(fam.u.len(), m + 1);
    for i in 0..=m {
        // literal segment u_i, reading order
        for &digit in fam.u[i].iter().rev() {
            let next = nfa.add_state(false);
            nfa.add_edge(cursor, digit, next);
            cursor = next;
        }
        if i < m {
            // loop w_(i+1) anchored at the current state
            let anchor = cursor;
            let word: Vec<u32> = fam.w[i].iter().rev().copied().collect();
            let mut c = anchor;
            for (k, &digit) in word.iter().enumerate() {
                let target = if k + 1 == word.len() {
                    anchor
                } else {
                    nfa.add_state(false)
                };
                nfa.add_edge(c, digit, target);
                c = target;
            }
        }
    }
    // the family's words end here
    let end = nfa.add_state(true);
    nfa.add_eps(cursor, end);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use num_bigint::BigUint;

    #[test]
    fn empty_form_reconstructs_empty_automaton() {
        let mut form = PNormalForm::empty(2);
        form.provenance = Some(Vec::new());
        let dfa = reconstruct_dfa(&form).unwrap();
        assert!(dfa.is_empty_language());
    }

    #[test]
    fn single_family_powers_of_two() {
        // numerals 1 0^k: u_0 = [], w_1 = [0], u_1 = [1]
        let mut form = PNormalForm::empty(2);
        form.provenance = Some(vec![UpFamily {
            u: vec![vec![], vec![1]],
            w: vec![vec![0]],
        }]);
        let dfa = reconstruct_dfa(&form).unwrap();
        for n in 0..256u64 {
            assert_eq!(dfa.member_u64(n), n.is_power_of_two(), "n = {n}");
        }
        let _ = Limits::default();
        let _ = BigUint::from(0u32);
    }
}
