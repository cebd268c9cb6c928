//! Repeat-until-success projection onto the symmetric subspace.
//!
//! One round: permute the current tableau's second-row qubits to the end,
//! run the inverse Clebsch-Gordan cascade to decouple them, measure the
//! decoupled qubits in the computational basis and drop them from the
//! register, then re-measure the nested angular-momentum path of the
//! survivors to derive a new tableau. Rounds repeat until the path is
//! single-row, shrinking the register each time, so termination is
//! guaranteed.
//!
//! Discarding the measured qubits is what keeps the logical content exact:
//! permutations and `J^2` projectors act on the tableau-label factor of
//! the Schur-Weyl decomposition alone, and the cascade preserves ladder
//! positions, so every measurement branch carries the sector's ladder
//! coordinates through unchanged (up to a common scalar) as long as the
//! occupied rungs stay clear of sector tops. Re-coupling the measured
//! qubits instead would tie branch weights to the rung index and deform
//! the logical amplitudes irreversibly. The per-rung images are tracked
//! explicitly and handed to the caller, which uses them for the return
//! map to the codespace and for the amplitude-rebalancing record.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::{sample_outcome, FullState, Permutation, SymmetricState};
use crate::schur::{inverse_cg_step, schur_basis, CoupledBasis};
use crate::syndrome::measure_syt_tracked;
use crate::tableaux::StandardYoungTableau;

/// Log of one projection round.
#[derive(Debug, Clone)]
pub struct RoundRecord {
    /// 1-based targets of the qubit permutation applied first.
    pub permutation: Vec<usize>,
    /// Computational outcome on the decoupled qubits (first decoupled
    /// qubit is the most significant bit).
    pub measured_bits: usize,
    /// Number of qubits decoupled, measured and dropped this round.
    pub decoupled: usize,
    /// Register size after the round.
    pub retained: usize,
    /// Doubled angular-momentum path measured on the survivors.
    pub new_path: Vec<usize>,
}

/// Result of the repeat-until-success projection.
#[derive(Debug, Clone)]
pub struct RusOutcome {
    /// Final state, on the retained register.
    pub state: FullState,
    pub retained_qubits: usize,
    /// False when `max_rounds` was exhausted; the state is returned as-is
    /// (on whatever register the last completed round left).
    pub success: bool,
    pub rounds: Vec<RoundRecord>,
    /// On success: image of each input ladder vector `|l_T0>` under the
    /// realized branch map, as raw (sub-normalized) Dicke coordinates on
    /// the retained register. Empty on failure.
    pub ladder_images: Vec<DVector<Complex64>>,
}

/// Project a tableau-sector state onto the symmetric subspace of a
/// (possibly smaller) register by the repeat-until-success cascade,
/// starting from the known syndrome `t0`.
pub fn project_symmetric_rus<R: Rng + ?Sized>(
    state: &FullState,
    t0: &StandardYoungTableau,
    rng: &mut R,
    max_rounds: usize,
) -> Result<RusOutcome> {
    let n = state.n_qubits();
    if t0.n() != n {
        return Err(Error::OutOfRange(format!(
            "tableau on {} boxes given for {n} qubits",
            t0.n()
        )));
    }
    let cb0 = CoupledBasis::build(t0)?;
    let leak = cb0.out_of_sector_norm(state);
    if leak > 1e-7 {
        return Err(Error::Decode(format!(
            "input has out-of-sector norm {leak:.3e} for tableau {t0}"
        )));
    }
    let mut st = state.clone();
    let mut columns: Vec<FullState> = cb0.vectors().to_vec();
    let mut current = t0.clone();
    let mut rounds = Vec::new();
    while !current.is_single_row() {
        if rounds.len() >= max_rounds {
            return Ok(RusOutcome {
                retained_qubits: st.n_qubits(),
                state: st,
                success: false,
                rounds,
                ladder_images: Vec::new(),
            });
        }
        let n_cur = st.n_qubits();
        let r2 = current.diagram().r2();
        let perm = Permutation::send_to_end(n_cur, &current.row2_positions())?;
        st = perm.apply(&st);
        for col in &mut columns {
            *col = perm.apply(col);
        }
        let basis = schur_basis(n_cur)?;
        for k in ((n_cur - r2 + 1)..=n_cur).rev() {
            st = inverse_cg_step(&st, k, &basis)?;
            for col in &mut columns {
                *col = inverse_cg_step(col, k, &basis)?;
            }
        }
        // measure the decoupled qubits jointly and drop them
        let suffix = 1usize << r2;
        let mut probs = vec![0.0f64; suffix];
        for (x, a) in st.amplitudes().iter().enumerate() {
            probs[x & (suffix - 1)] += a.norm_sqr();
        }
        let bits = sample_outcome(&probs, rng)?;
        let m = n_cur - r2;
        let slice = |s: &FullState| -> FullState {
            let mut out = FullState::zeros(m);
            for prefix in 0..1usize << m {
                out.amplitudes_mut()[prefix] = s.amplitudes()[(prefix << r2) | bits];
            }
            out
        };
        st = slice(&st);
        st.normalize();
        for col in &mut columns {
            *col = slice(col);
        }
        // re-measure the angular-momentum path of the survivors
        let (next, synd) = measure_syt_tracked(&st, rng, &mut columns)?;
        st = next;
        rounds.push(RoundRecord {
            permutation: perm.targets_one_based(),
            measured_bits: bits,
            decoupled: r2,
            retained: m,
            new_path: synd.j2_path().to_vec(),
        });
        current = synd.tableau().clone();
    }
    // extract the per-rung images; on success each column lies in the
    // symmetric sector of the retained register
    let m = st.n_qubits();
    let mut ladder_images = Vec::with_capacity(columns.len());
    for col in &columns {
        let sym = SymmetricState::project(col);
        let res = (col.norm_sqr() - sym.norm_sqr()).max(0.0).sqrt();
        if res > 1e-7 {
            return Err(Error::Decode(format!(
                "tracked ladder image left the symmetric sector (residual {res:.3e})"
            )));
        }
        ladder_images.push(DVector::from_column_slice(sym.dicke_amplitudes()));
    }
    Ok(RusOutcome {
        state: st,
        retained_qubits: m,
        success: true,
        rounds,
        ladder_images,
    })
}
