/// Caps and budgets for the enumeration-heavy algorithms. All limits are
/// configurable through the input document's `options` object.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest permitted field size; several algorithms enumerate F_q.
    pub q_cap: u64,
    /// Total-degree budget for exact sequence evaluation.
    pub eval_degree_budget: u64,
    /// State cap for the automaton builder.
    pub state_cap: usize,
    /// Trial-division cap for multiplicative-order computations.
    pub factor_cap: u64,
    /// Cap on enumerated members in window scans.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            q_cap: crate::ff::DEFAULT_Q_CAP,
            eval_degree_budget: 1_000_000,
            state_cap: 100_000,
            factor_cap: 1 << 20,
            enumeration_cap: 2_000_000,
        }
    }
}
