//! Sparse three-mode kets and ladder-operator monomials.
//!
//! Used to evaluate expectation values directly from the operator definitions,
//! independently of the sector bookkeeping.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use super::state::MultiSectorState;

/// Ladder operator on mode `a` (radiation), `b` (lower level) or `c` (pump).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    A,
    ADag,
    B,
    BDag,
    C,
    CDag,
}

impl Ladder {
    fn mode(self) -> usize {
        match self {
            Ladder::A | Ladder::ADag => 0,
            Ladder::B | Ladder::BDag => 1,
            Ladder::C | Ladder::CDag => 2,
        }
    }

    fn raises(self) -> bool {
        matches!(self, Ladder::ADag | Ladder::BDag | Ladder::CDag)
    }
}

/// Ket stored as occupation triple `[n_a, n_b, n_c]` to amplitude.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseKet(pub BTreeMap<[u32; 3], C64>);

impl SparseKet {
    pub fn from_state(state: &MultiSectorState) -> Self {
        let mut map = BTreeMap::new();
        for (s, w) in state.sectors.iter().zip(&state.weights) {
            for (m, amp) in s.amplitudes.iter().enumerate() {
                *map.entry(s.sector.basis(m)).or_insert(C64::new(0.0, 0.0)) += w * amp;
            }
        }
        Self(map)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.values().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `ops` right to left, i.e. `ops = [A, B]` is the operator `a b`.
    pub fn apply(&self, ops: &[Ladder]) -> SparseKet {
        let mut current = self.0.clone();
        for &op in ops.iter().rev() {
            let mut next = BTreeMap::new();
            let k = op.mode();
            for (occ, amp) in current {
                let n = occ[k];
                let mut out = occ;
                let factor = if op.raises() {
                    out[k] = n + 1;
                    ((n + 1) as f64).sqrt()
                } else {
                    if n == 0 {
                        continue;
                    }
                    out[k] = n - 1;
                    (n as f64).sqrt()
                };
                *next.entry(out).or_insert(C64::new(0.0, 0.0)) += amp * factor;
            }
            current = next;
        }
        SparseKet(current)
    }

    /// `<psi| O |psi> / <psi|psi>`.
    pub fn expectation(&self, ops: &[Ladder]) -> C64 {
        let image = self.apply(ops);
        let overlap: C64 = image
            .0
            .iter()
            .filter_map(|(occ, amp)| self.0.get(occ).map(|bra| bra.conj() * amp))
            .sum();
        overlap / self.norm_sqr()
    }
}
