//! Sector-resolved states and pump preparation.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{invalid, Error, Result};

/// Invariant block a [`SectorState`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Parametric chain `|m, m>`, `m = 0..=cutoff`.
    Chain { cutoff: usize },
    /// Trilinear sector `|m, m, N - m>`, `m = 0..=N`, with `N = n_r + n_c`.
    Pump { excitations: usize },
}

impl Sector {
    pub fn dim(&self) -> usize {
        match *self {
            Sector::Chain { cutoff } => cutoff + 1,
            Sector::Pump { excitations } => excitations + 1,
        }
    }

    /// Conserved label: the cutoff for a chain, `N` for a pump sector.
    pub fn label(&self) -> usize {
        match *self {
            Sector::Chain { cutoff } => cutoff,
            Sector::Pump { excitations } => excitations,
        }
    }

    /// Occupations `(n_r, n_b, n_c)` of basis state `m`.
    pub fn basis(&self, m: usize) -> [u32; 3] {
        match *self {
            Sector::Chain { .. } => [m as u32, m as u32, 0],
            Sector::Pump { excitations } => [m as u32, m as u32, (excitations - m) as u32],
        }
    }
}

/// Amplitudes of the system inside one conserved block.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    pub sector: Sector,
    pub amplitudes: Vec<C64>,
    /// Accumulated evolution time.
    pub time: f64,
}

impl SectorState {
    /// `|0, 0>` on a chain of length `cutoff + 1`.
    pub fn chain_vacuum(cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(invalid("cutoff", cutoff as f64, "must be at least 1"));
        }
        Ok(Self::initial(Sector::Chain { cutoff }))
    }

    /// `|0, 0, N>`: no photons, no lower-level occupation, `N` pump quanta.
    pub fn pump_fock(excitations: usize) -> Self {
        Self::initial(Sector::Pump { excitations })
    }

    fn initial(sector: Sector) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); sector.dim()];
        amplitudes[0] = C64::new(1.0, 0.0);
        Self {
            sector,
            amplitudes,
            time: 0.0,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|psi_m|^2`: probability of `m` photons (and `m` lower-level occupations).
    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// State of the pump mode before the c-number replacement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PumpKind {
    /// Number state `|N>`.
    Fock { n: usize },
    /// Coherent state `|gamma>` with real amplitude.
    Coherent { gamma: f64 },
    /// Pump already replaced by a c-number (parametric chain).
    Parametric,
}

impl PumpKind {
    /// Amplitude scale `sqrt(<c^dag c>)` used to match `G = g * gamma`.
    pub fn amplitude(&self) -> f64 {
        match *self {
            PumpKind::Fock { n } => (n as f64).sqrt(),
            PumpKind::Coherent { gamma } => gamma,
            PumpKind::Parametric => 1.0,
        }
    }

    pub fn mean_occupation(&self) -> f64 {
        match *self {
            PumpKind::Fock { n } => n as f64,
            PumpKind::Coherent { gamma } => gamma * gamma,
            PumpKind::Parametric => f64::NAN,
        }
    }
}

/// Superposition of independent sectors `sum_N c_N |psi_N>`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiSectorState {
    /// Sorted by ascending label.
    pub sectors: Vec<SectorState>,
    /// `c_N`, aligned with `sectors`.
    pub weights: Vec<C64>,
    pub pump: PumpKind,
    /// Probability discarded by truncating the pump distribution.
    pub leakage: f64,
}

impl From<SectorState> for MultiSectorState {
    fn from(s: SectorState) -> Self {
        let pump = match s.sector {
            Sector::Chain { .. } => PumpKind::Parametric,
            Sector::Pump { excitations } => PumpKind::Fock { n: excitations },
        };
        Self {
            sectors: vec![s],
            weights: vec![C64::new(1.0, 0.0)],
            pump,
            leakage: 0.0,
        }
    }
}

impl MultiSectorState {
    /// `sum_N |c_N|^2 <psi_N|psi_N>`.
    pub fn norm_sqr(&self) -> f64 {
        self.sectors
            .iter()
            .zip(&self.weights)
            .map(|(s, w)| w.norm_sqr() * s.norm_sqr())
            .sum()
    }

    pub fn time(&self) -> f64 {
        self.sectors.first().map_or(0.0, |s| s.time)
    }

    /// Index of the pump sector with label `n`.
    pub fn position(&self, n: usize) -> Option<usize> {
        self.sectors
            .binary_search_by_key(&n, |s| s.sector.label())
            .ok()
    }
}

/// `|c_N|^2 = e^{-gamma^2} gamma^{2N} / N!`.
pub fn poisson_weight(gamma: f64, n: usize) -> f64 {
    if gamma == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let g2 = gamma * gamma;
    (-g2 + n as f64 * g2.ln() - ln_factorial(n as u64)).exp()
}

/// Poisson probability of finding more than `n_max` pump quanta.
pub fn poisson_tail(gamma: f64, n_max: usize) -> f64 {
    let mean = gamma * gamma;
    let mut tail = 0.0;
    let mut n = n_max + 1;
    loop {
        let p = poisson_weight(gamma, n);
        tail += p;
        if n as f64 > mean && (p == 0.0 || p < 1e-18 * tail) {
            break;
        }
        n += 1;
    }
    tail
}

/// Smallest `n_max` whose Poisson tail is below `tolerance`.
pub fn coherent_n_max(gamma: f64, tolerance: f64) -> Result<usize> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(invalid("gamma", gamma, "must be non-negative and finite"));
    }
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(invalid("tolerance", tolerance, "must lie in (0, 1)"));
    }
    let mut n = (gamma * gamma).floor() as usize;
    while poisson_tail(gamma, n) >= tolerance {
        n += 1;
    }
    while n > 0 && poisson_tail(gamma, n - 1) < tolerance {
        n -= 1;
    }
    Ok(n)
}

/// Initial state `|0, 0> (x) |pump>` split into sectors.
///
/// A coherent pump is truncated at `n_max` (chosen from `tolerance` when `None`);
/// the discarded Poisson tail must stay below `tolerance` and is recorded as leakage.
pub fn prepare_pump(
    kind: PumpKind,
    n_max: Option<usize>,
    tolerance: f64,
) -> Result<MultiSectorState> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(invalid("tolerance", tolerance, "must lie in (0, 1)"));
    }
    match kind {
        PumpKind::Fock { n } => {
            if let Some(limit) = n_max {
                if n > limit {
                    return Err(invalid("n", n as f64, "Fock pump exceeds n_max"));
                }
            }
            Ok(SectorState::pump_fock(n).into())
        }
        PumpKind::Coherent { gamma } => {
            if !(gamma >= 0.0) || !gamma.is_finite() {
                return Err(invalid("gamma", gamma, "must be non-negative and finite"));
            }
            let n_max = match n_max {
                Some(n) => n,
                None => coherent_n_max(gamma, tolerance)?,
            };
            let tail = poisson_tail(gamma, n_max);
            if tail > tolerance {
                return Err(Error::PumpTail {
                    n_max,
                    tail,
                    tolerance,
                });
            }
            let sectors = (0..=n_max).map(SectorState::pump_fock).collect();
            let weights = (0..=n_max)
                .map(|n| C64::new(poisson_weight(gamma, n).sqrt(), 0.0))
                .collect();
            Ok(MultiSectorState {
                sectors,
                weights,
                pump: kind,
                leakage: tail,
            })
        }
        PumpKind::Parametric => Err(Error::InvalidSpec(
            "a c-number pump has no sector decomposition; use a chain state".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_zero_is_vacuum() {
        let s = prepare_pump(PumpKind::Coherent { gamma: 0.0 }, None, 1e-10).unwrap();
        assert_eq!(s.sectors.len(), 1);
        assert_eq!(s.sectors[0].sector.label(), 0);
        assert_eq!(s.weights[0], C64::new(1.0, 0.0));
        assert_eq!(s.leakage, 0.0);
    }

    #[test]
    fn coherent_weights_have_poisson_mean() {
        let s = prepare_pump(PumpKind::Coherent { gamma: 3.0 }, None, 1e-12).unwrap();
        let norm: f64 = s.weights.iter().map(|w| w.norm_sqr()).sum();
        let mean: f64 = s
            .sectors
            .iter()
            .zip(&s.weights)
            .map(|(sec, w)| sec.sector.label() as f64 * w.norm_sqr())
            .sum();
        assert!((norm + s.leakage - 1.0).abs() < 1e-12);
        assert!((mean / norm - 9.0).abs() < 1e-9);
    }

    #[test]
    fn fock_and_coherent_match_mean_occupation() {
        assert_eq!(PumpKind::Fock { n: 100 }.mean_occupation(), 100.0);
        assert!((PumpKind::Coherent { gamma: 10.0 }.mean_occupation() - 100.0).abs() < 1e-12);
        let f = prepare_pump(PumpKind::Fock { n: 100 }, None, 1e-10).unwrap();
        assert_eq!(f.sectors.len(), 1);
        assert_eq!(f.sectors[0].amplitudes.len(), 101);
    }

    #[test]
    fn short_truncation_is_rejected() {
        let err = prepare_pump(PumpKind::Coherent { gamma: 3.0 }, Some(9), 1e-8).unwrap_err();
        assert!(matches!(err, Error::PumpTail { n_max: 9, .. }));
        assert!(prepare_pump(PumpKind::Fock { n: 12 }, Some(10), 1e-8).is_err());
        assert!(prepare_pump(PumpKind::Parametric, None, 1e-8).is_err());
    }

    #[test]
    fn auto_n_max_is_minimal() {
        let n = coherent_n_max(5.0, 1e-10).unwrap();
        assert!(poisson_tail(5.0, n) < 1e-10);
        assert!(poisson_tail(5.0, n - 1) >= 1e-10);
    }

    #[test]
    fn tail_agrees_with_direct_complement() {
        let head: f64 = (0..=12).map(|n| poisson_weight(2.5, n)).sum();
        assert!((poisson_tail(2.5, 12) - (1.0 - head)).abs() < 1e-14);
    }

    #[test]
    fn basis_labels() {
        let s = Sector::Pump { excitations: 7 };
        assert_eq!(s.basis(0), [0, 0, 7]);
        assert_eq!(s.basis(7), [7, 7, 0]);
        assert_eq!(Sector::Chain { cutoff: 4 }.basis(3), [3, 3, 0]);
    }
}
