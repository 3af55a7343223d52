//! Moments of numerically evolved states.

use num_complex::Complex64 as C64;

use super::ladder::{Ladder, SparseKet};
use super::state::{MultiSectorState, Sector};
use crate::moments::{MomentSet, MomentSource};

/// Computes a [`MomentSet`] from a sector-resolved state, normalized by the
/// retained norm.
///
/// Populations come from per-sector sums. `<ab>` maps sector `N` onto `N - 1`
/// (or stays on the chain), so it is a contraction of adjacent sectors. The
/// moments that change `n_r - n_b` (`<a>`, `<b>`, `<a^2>`, `<b^2>`, `<a^dag b>`)
/// are evaluated from the operator definitions on the full sparse ket rather
/// than set to zero.
pub fn moments_from_state(state: &MultiSectorState) -> MomentSet {
    let source = match state.pump {
        super::state::PumpKind::Parametric => MomentSource::BilinearNumeric,
        _ => MomentSource::TrilinearNumeric,
    };
    let norm = state.norm_sqr();
    if norm == 0.0 {
        return MomentSet::vacuum(source);
    }

    let mut n_r = 0.0;
    let mut n_b = 0.0;
    let mut n_r_sq = 0.0;
    for (s, w) in state.sectors.iter().zip(&state.weights) {
        let weight = w.norm_sqr();
        let (mut r, mut b, mut rr) = (0.0, 0.0, 0.0);
        for (m, amp) in s.amplitudes.iter().enumerate() {
            let [na, nb, _] = s.sector.basis(m);
            let p = amp.norm_sqr();
            r += na as f64 * p;
            b += nb as f64 * p;
            rr += (na as f64).powi(2) * p;
        }
        n_r += weight * r;
        n_b += weight * b;
        n_r_sq += weight * rr;
    }

    let ket = SparseKet::from_state(state);
    MomentSet {
        mean_a: ket.expectation(&[Ladder::A]),
        mean_b: ket.expectation(&[Ladder::B]),
        n_r: n_r / norm,
        n_a: n_b / norm,
        aa: ket.expectation(&[Ladder::A, Ladder::A]),
        bb: ket.expectation(&[Ladder::B, Ladder::B]),
        ab: pair_correlation(state) / norm,
        adag_b: ket.expectation(&[Ladder::ADag, Ladder::B]),
        n_r_sq: n_r_sq / norm,
        source,
        leakage: state.leakage,
    }
}

/// Unnormalized `<psi| a b |psi>` by sector contraction.
///
/// `a b |m, m, N - m> = m |m - 1, m - 1, N - m>`: index `m - 1` of sector `N - 1`,
/// or of the same chain.
pub fn pair_correlation(state: &MultiSectorState) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    for (idx, (s, w)) in state.sectors.iter().zip(&state.weights).enumerate() {
        let (target, wt) = match s.sector {
            Sector::Chain { .. } => (idx, *w),
            Sector::Pump { excitations } => {
                if excitations == 0 {
                    continue;
                }
                match state.position(excitations - 1) {
                    Some(j) => (j, state.weights[j]),
                    None => continue,
                }
            }
        };
        let bra = &state.sectors[target].amplitudes;
        let mut acc = C64::new(0.0, 0.0);
        for m in 1..s.amplitudes.len() {
            acc += bra[m - 1].conj() * s.amplitudes[m] * m as f64;
        }
        total += wt.conj() * w * acc;
    }
    total
}

/// `<c^dag c>` of the pump mode.
pub fn pump_occupation(state: &MultiSectorState) -> f64 {
    SparseKet::from_state(state)
        .expectation(&[Ladder::CDag, Ladder::C])
        .re
}

/// Expectations of the conserved combinations `n_r - n_b` and `n_r + n_c`,
/// evaluated from the operator definitions.
pub fn conserved_charges(state: &MultiSectorState) -> (f64, f64) {
    let ket = SparseKet::from_state(state);
    let photons = ket.apply(&[Ladder::ADag, Ladder::A]);
    let lower = ket.apply(&[Ladder::BDag, Ladder::B]);
    let pump = ket.apply(&[Ladder::CDag, Ladder::C]);
    let norm = ket.norm_sqr();
    let mut imbalance = 0.0;
    let mut total = 0.0;
    for (occ, amp) in &ket.0 {
        let bra = amp.conj();
        let r = photons.0.get(occ).map_or(0.0, |v| (bra * v).re);
        let b = lower.0.get(occ).map_or(0.0, |v| (bra * v).re);
        let c = pump.0.get(occ).map_or(0.0, |v| (bra * v).re);
        imbalance += r - b;
        total += r + c;
    }
    (imbalance / norm, total / norm)
}
