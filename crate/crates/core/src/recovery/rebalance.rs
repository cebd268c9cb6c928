//! Adaptive amplitude rebalancing.
//!
//! Working inside the symmetric subspace, the protocol deforms the relative
//! scale of the two logical amplitudes by repeated two-outcome projective
//! measurements. With `E = J^z` (which has equal diagonal and vanishing
//! off-diagonal codeword elements on any PI code of distance at least two),
//! Gram-Schmidt gives primed partners `|0'_L>`, `|1'_L>` and the four
//! orthonormal states
//!
//! ```text
//! |0_w>  = (sqrt(3+w) |0_L> + sqrt(1-w) |0'_L>)/2
//! |1_w>  = (sqrt(3-w) |1_L> + sqrt(1+w) |1'_L>)/2
//! |0~_w> = (sqrt(1-w) |0_L> - sqrt(3+w) |0'_L>)/2
//! |1~_w> = (sqrt(1+w) |1_L> - sqrt(3-w) |1'_L>)/2
//! ```
//!
//! Projecting `cos t |0_L> + e^{ip} sin t |1_L>` onto the span of the first
//! pair succeeds with probability `(3 + w cos 2t)/4 >= 5/8` for
//! `w in [-1/2, 1/2]` and deforms the amplitude ratio by
//! `sqrt((3-w)/(3+w))`; the failure branch deforms by `sqrt((1+w)/(1-w))`.
//! Choosing `w` adaptively steers the cumulative ratio to any target.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::codes::PICode;
use crate::error::{Error, Result};
use crate::hilbert::{sample_outcome, SymmetricState, C0};

/// Largest admissible per-step deformation parameter.
pub const W_MAX: f64 = 0.5;

/// The logical pair and its `J^z` Gram-Schmidt partners, in Dicke
/// coordinates.
#[derive(Debug, Clone)]
pub struct RebalanceBasis {
    n: usize,
    zero: DVector<Complex64>,
    one: DVector<Complex64>,
    zero_p: DVector<Complex64>,
    one_p: DVector<Complex64>,
}

fn jz_apply(n: usize, v: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_iterator(
        n + 1,
        v.iter()
            .enumerate()
            .map(|(w, a)| a * Complex64::new(n as f64 / 2.0 - w as f64, 0.0)),
    )
}

impl RebalanceBasis {
    /// Build for codewords 0 and 1 of a PI code, with `E = J^z`.
    pub fn build(code: &PICode) -> Result<Self> {
        if code.dimension() < 2 {
            return Err(Error::InvalidCode("rebalancing needs two codewords".into()));
        }
        let n = code.n_qubits();
        let zero = DVector::from_column_slice(code.codeword_amplitudes(0));
        let one = DVector::from_column_slice(code.codeword_amplitudes(1));
        let e_zero = jz_apply(n, &zero);
        let e_one = jz_apply(n, &one);
        // E must not connect distinct codewords and must have equal
        // diagonal elements
        if zero.dotc(&e_one).norm() > 1e-10 || one.dotc(&e_zero).norm() > 1e-10 {
            return Err(Error::KlViolation(
                "J^z connects the logical codewords".into(),
            ));
        }
        let d0 = zero.dotc(&e_zero);
        let d1 = one.dotc(&e_one);
        if (d0 - d1).norm() > 1e-10 {
            return Err(Error::KlViolation(format!(
                "J^z diagonal elements differ: {d0} vs {d1}"
            )));
        }
        let mut zero_p = e_zero - &zero * d0;
        let mut one_p = e_one - &one * d1;
        let scale = (n as f64) / 2.0;
        if zero_p.norm() < 1e-10 * scale.max(1.0) || one_p.norm() < 1e-10 * scale.max(1.0) {
            return Err(Error::OperatorChoice);
        }
        zero_p /= Complex64::new(zero_p.norm(), 0.0);
        one_p /= Complex64::new(one_p.norm(), 0.0);
        Ok(Self {
            n,
            zero,
            one,
            zero_p,
            one_p,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// The four orthonormal measurement states for deformation `w`.
    pub fn w_states(
        &self,
        w: f64,
    ) -> (
        DVector<Complex64>,
        DVector<Complex64>,
        DVector<Complex64>,
        DVector<Complex64>,
    ) {
        let c = |x: f64| Complex64::new(x.sqrt() / 2.0, 0.0);
        let zero_w = &self.zero * c(3.0 + w) + &self.zero_p * c(1.0 - w);
        let one_w = &self.one * c(3.0 - w) + &self.one_p * c(1.0 + w);
        let zero_bar = &self.zero * c(1.0 - w) - &self.zero_p * c(3.0 + w);
        let one_bar = &self.one * c(1.0 + w) - &self.one_p * c(3.0 - w);
        (zero_w, one_w, zero_bar, one_bar)
    }
}

/// The rank-2 projector pair `(Pi_w, Pi~_w)` in Dicke coordinates.
pub fn rebalance_projectors(
    code: &PICode,
    w: f64,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    if w.abs() > 1.0 {
        return Err(Error::OutOfRange(format!("|w| = {} > 1", w.abs())));
    }
    let basis = RebalanceBasis::build(code)?;
    let (zw, ow, zb, ob) = basis.w_states(w);
    let rank2 = |a: &DVector<Complex64>, b: &DVector<Complex64>| {
        let dim = a.len();
        let mut p = DMatrix::from_element(dim, dim, C0);
        for r in 0..dim {
            for c in 0..dim {
                p[(r, c)] = a[r] * a[c].conj() + b[r] * b[c].conj();
            }
        }
        p
    };
    Ok((rank2(&zw, &ow), rank2(&zb, &ob)))
}

/// Outcome bit convention: 0 records a success (projection onto the
/// preferred space), 1 a failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RebalanceStep {
    pub w: f64,
    pub success: bool,
}

/// Log of an adaptive rebalancing run.
#[derive(Debug, Clone)]
pub struct RebalanceRecord {
    pub steps: Vec<RebalanceStep>,
    /// Cumulative (unnormalized) amplitude factors applied to each codeword.
    pub factor_zero: f64,
    pub factor_one: f64,
    /// Ratio still to apply when the run stopped.
    pub residual_ratio: f64,
    pub converged: bool,
}

impl RebalanceRecord {
    pub fn outcome_bits(&self) -> Vec<u8> {
        self.steps.iter().map(|s| u8::from(!s.success)).collect()
    }
}

/// One projective rebalancing step at fixed `w`. Returns the post-step
/// state (mapped back to the codespace) and whether the preferred outcome
/// occurred.
pub fn rebalance_step<R: Rng + ?Sized>(
    state: &SymmetricState,
    basis: &RebalanceBasis,
    w: f64,
    rng: &mut R,
) -> Result<(SymmetricState, bool)> {
    if w.abs() > W_MAX + 1e-12 {
        return Err(Error::OutOfRange(format!(
            "|w| = {} exceeds the working interval 1/2",
            w.abs()
        )));
    }
    let v = DVector::from_column_slice(state.dicke_amplitudes());
    let (zw, ow, zb, ob) = basis.w_states(w);
    let c_zw = zw.dotc(&v);
    let c_ow = ow.dotc(&v);
    let c_zb = zb.dotc(&v);
    let c_ob = ob.dotc(&v);
    let p1 = c_zw.norm_sqr() + c_ow.norm_sqr();
    let p2 = c_zb.norm_sqr() + c_ob.norm_sqr();
    let p3 = (1.0 - p1 - p2).max(0.0);
    let outcome = sample_outcome(&[p1, p2, p3], rng)?;
    if outcome == 2 {
        return Err(Error::CodespaceLeak(p3));
    }
    let success = outcome == 0;
    // conditional return to the codespace: the unique two-dimensional
    // isometry sending the measured pair back to the logical pair
    let unnormalized = if success {
        &basis.zero * c_zw + &basis.one * c_ow
    } else {
        &basis.zero * c_zb + &basis.one * c_ob
    };
    let norm = unnormalized.norm();
    let post = SymmetricState::from_dicke_amplitudes(
        basis.n,
        (unnormalized / Complex64::new(norm, 0.0))
            .iter()
            .copied()
            .collect(),
    )?;
    Ok((post, success))
}

/// Per-step amplitude factors `(on |0_L>, on |1_L>)`.
fn step_factors(w: f64, success: bool) -> (f64, f64) {
    if success {
        ((3.0 + w).sqrt(), (3.0 - w).sqrt())
    } else {
        ((1.0 - w).sqrt(), (1.0 + w).sqrt())
    }
}

/// Adaptively rebalance until the cumulative amplitude-ratio factor applied
/// to `tan` of the logical mixing angle reaches `tan_factor` within `tol`.
///
/// Each step picks the `w` that would finish in one successful projection,
/// clamped to the working interval `[-1/2, 1/2]`.
pub fn rebalance<R: Rng + ?Sized>(
    state: &SymmetricState,
    basis: &RebalanceBasis,
    tan_factor: f64,
    rng: &mut R,
    max_steps: usize,
    tol: f64,
) -> Result<(SymmetricState, RebalanceRecord)> {
    if tan_factor <= 0.0 || !tan_factor.is_finite() {
        return Err(Error::OutOfRange(format!(
            "tan factor {tan_factor} must be positive and finite"
        )));
    }
    let mut remaining = tan_factor;
    let mut current = state.clone();
    let mut record = RebalanceRecord {
        steps: Vec::new(),
        factor_zero: 1.0,
        factor_one: 1.0,
        residual_ratio: remaining,
        converged: false,
    };
    while (remaining - 1.0).abs() > tol {
        if record.steps.len() >= max_steps {
            record.residual_ratio = remaining;
            return Ok((current, record));
        }
        // exact-hit choice: sqrt((3-w)/(3+w)) = remaining
        let rho2 = remaining * remaining;
        let w = (3.0 * (1.0 - rho2) / (1.0 + rho2)).clamp(-W_MAX, W_MAX);
        let (post, success) = rebalance_step(&current, basis, w, rng)?;
        current = post;
        let (f0, f1) = step_factors(w, success);
        record.factor_zero *= f0;
        record.factor_one *= f1;
        remaining /= f1 / f0;
        record.steps.push(RebalanceStep { w, success });
    }
    record.residual_ratio = remaining;
    record.converged = true;
    Ok((current, record))
}
