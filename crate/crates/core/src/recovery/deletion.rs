//! Simplified recovery for deletion errors.
//!
//! Deleting `t` qubits keeps a symmetric state symmetric on the survivors
//! but shifts its Dicke weights down by the (unknown) number `a` of
//! deleted excitations. For a gnu-type code with gap `g >= t + 1` the
//! branches occupy distinct weight classes modulo `g`, so a modulo
//! measurement reveals `a`, and a subspace-mapping unitary `V_a` returns
//! the branch to a canonical code on `N - t` qubits: the gnu-amplitude
//! codewords at weights `g k + s - a`, truncated to the surviving register
//! and renormalized, keeping the parity labels `k`. For shifts `s >= t`
//! nothing truncates and the output is exactly the shifted gnu code with
//! shift `s - a`.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::codes::PICode;
use crate::error::{Error, Result};
use crate::hilbert::{binomial, sample_outcome, FullState, SymmetricState, C0};
use crate::linalg::unitary_from_map;

/// Result of one deletion-recovery run.
#[derive(Debug, Clone)]
pub struct DeletionRecovery {
    /// Recovered state on the surviving `N - t` qubits.
    pub state: SymmetricState,
    /// The canonical code the state was mapped into.
    pub recovered_code: PICode,
    /// Deletion shift `a` inferred from the modulo measurement.
    pub shift: usize,
    /// Raw modulo-measurement outcome.
    pub modulo_outcome: usize,
    /// Signed shift parameter of the recovered code's weight classes.
    pub recovered_shift: i64,
}

/// The normalized deletion-branch codewords of `code` after `t` deletions
/// with shift `a`, in Dicke coordinates on `N - t` qubits.
pub fn branch_codewords(code: &PICode, t: usize, a: usize) -> Result<Vec<DVector<Complex64>>> {
    let n = code.n_qubits();
    if t == 0 || t >= n {
        return Err(Error::BadSupport(format!(
            "must delete between 1 and N-1 qubits, got {t}"
        )));
    }
    if a > t {
        return Err(Error::InconsistentShift { a, t });
    }
    let m = n - t;
    let mut out = Vec::with_capacity(code.dimension());
    for j in 0..code.dimension() {
        let mut v = DVector::from_element(m + 1, C0);
        for (w, c) in code.codeword_amplitudes(j).iter().enumerate() {
            if c.norm() <= 1e-14 || w < a || w - a > m {
                continue;
            }
            let coeff = ((binomial(m, w - a) as f64) / (binomial(n, w) as f64)).sqrt();
            v[w - a] += c * coeff;
        }
        let norm = v.norm();
        if norm < 1e-12 {
            return Err(Error::Decode(format!(
                "codeword {j} has no support after {t} deletions with shift {a}"
            )));
        }
        out.push(v / Complex64::new(norm, 0.0));
    }
    Ok(out)
}

/// The canonical target code on `N - t` qubits for shift `a`: gnu binomial
/// amplitudes at weights `g k + s - a`, truncated to the register and
/// renormalized, with parity labels preserved.
pub fn deletion_target_code(code: &PICode, t: usize, a: usize) -> Result<(PICode, i64)> {
    let params = code
        .gnu_params()
        .ok_or_else(|| Error::UnsupportedParameter("deletion recovery needs a gnu code".into()))?;
    let n_after = code.n_qubits() - t;
    let shift = params.s as i64 - a as i64;
    let scale = 2f64.powf(-((params.n as f64 - 1.0) / 2.0));
    let mut codewords = Vec::with_capacity(2);
    for j in 0..2usize {
        let mut amps = vec![C0; n_after + 1];
        for k in (j..=params.n).step_by(2) {
            let w = params.g as i64 * k as i64 + shift;
            if w < 0 || w > n_after as i64 {
                continue;
            }
            amps[w as usize] =
                Complex64::new(scale * (binomial(params.n, k) as f64).sqrt(), 0.0);
        }
        let norm: f64 = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::Decode(format!(
                "target codeword {j} is empty on {n_after} qubits at shift {shift}"
            )));
        }
        for c in &mut amps {
            *c /= norm;
        }
        codewords.push(amps);
    }
    Ok((PICode::from_codewords(n_after, codewords)?, shift))
}

/// Correct `t` deletions: measure the Dicke weight modulo `g`, infer the
/// shift `a`, and apply the subspace-mapping unitary sending the branch
/// codewords to the canonical target codewords.
pub fn correct_deletions<R: Rng + ?Sized>(
    state: &FullState,
    code: &PICode,
    t: usize,
    rng: &mut R,
) -> Result<DeletionRecovery> {
    let params = code
        .gnu_params()
        .ok_or_else(|| Error::UnsupportedParameter("deletion recovery needs a gnu code".into()))?;
    if params.g < t + 1 {
        return Err(Error::UnsupportedParameter(format!(
            "gap g = {} cannot resolve {t} deletions (need g >= t + 1)",
            params.g
        )));
    }
    let m = code.n_qubits() - t;
    if state.n_qubits() != m {
        return Err(Error::OutOfRange(format!(
            "expected a state on N - t = {m} qubits, got {}",
            state.n_qubits()
        )));
    }
    // the surviving register must still be symmetric
    let sym = SymmetricState::project(state);
    if (sym.norm_sqr() - state.norm_sqr()).abs() > 1e-9 {
        return Err(Error::Decode(
            "post-deletion state is not in the symmetric subspace".into(),
        ));
    }
    // modulo-g measurement is a Dicke-weight class measurement here
    let g = params.g;
    let amps = sym.dicke_amplitudes();
    let mut probs = vec![0.0f64; g];
    for (w, c) in amps.iter().enumerate() {
        probs[w % g] += c.norm_sqr();
    }
    let a_meas = sample_outcome(&probs, rng)?;
    let mut collapsed = DVector::from_element(m + 1, C0);
    for (w, c) in amps.iter().enumerate() {
        if w % g == a_meas {
            collapsed[w] = *c;
        }
    }
    collapsed /= Complex64::new(collapsed.norm(), 0.0);

    // branch shift from the measured class: surviving weights are
    // g k + s - a, so the class is (s - a) mod g
    let a = (params.s as i64 - a_meas as i64).rem_euclid(g as i64) as usize;
    if a > t {
        return Err(Error::InconsistentShift { a, t });
    }

    let sources = branch_codewords(code, t, a)?;
    let (target, recovered_shift) = deletion_target_code(code, t, a)?;
    let targets: Vec<DVector<Complex64>> = (0..target.dimension())
        .map(|j| DVector::from_column_slice(target.codeword_amplitudes(j)))
        .collect();
    let v = unitary_from_map(&sources, &targets, m + 1)?;
    let mapped = &v * collapsed;
    let out = SymmetricState::from_dicke_amplitudes(m, mapped.iter().copied().collect())?;
    Ok(DeletionRecovery {
        state: out,
        recovered_code: target,
        shift: a,
        modulo_outcome: a_meas,
        recovered_shift,
    })
}
