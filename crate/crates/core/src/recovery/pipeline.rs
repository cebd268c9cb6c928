//! End-to-end decoding drivers: the Schur-cascade pipeline
//! (symmetrize, syndrome, Knill-Laflamme recovery, symmetric projection,
//! return map, amplitude rebalancing), the teleportation route, and the
//! deletion route. Per-tableau artifacts (coupled basis, correctible
//! decomposition, T-code) are cached so repeated trajectories only pay for
//! state evolution.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::codes::PICode;
use crate::error::{Error, Result};
use crate::hilbert::{FullState, LocalOperator, SymmetricState, C0};
use crate::noise::{delete_qubits, sample_channel, symmetrize, KrausChannel};
use crate::recovery::deletion::correct_deletions;
use crate::recovery::rebalance::{rebalance, RebalanceBasis};
use crate::recovery::teleport::{teleport, TeleportRecord};
use crate::recovery::{
    build_t_code, correctible_decomposition, kl_recover, CorrectibleDecomposition, TCode,
};
use crate::schur::rus::project_symmetric_rus;
use crate::schur::CoupledBasis;
use crate::syndrome::measure_syt;
use crate::tableaux::StandardYoungTableau;

/// Cached per-tableau decoding artifacts.
pub struct SectorData {
    pub basis: CoupledBasis,
    pub decomposition: CorrectibleDecomposition,
    pub tcode: TCode,
}

/// A code together with the error span its decoder corrects, plus caches.
pub struct DecoderContext {
    code: PICode,
    kraus_span: Vec<LocalOperator>,
    rebalance_basis: Option<RebalanceBasis>,
    sectors: Mutex<HashMap<String, Arc<SectorData>>>,
}

impl DecoderContext {
    /// Decoder for weight-one errors: the spanning set is the identity
    /// plus every single-qubit Pauli.
    pub fn for_weight_one(code: PICode) -> Result<Self> {
        if code.dimension() != 2 {
            return Err(Error::InvalidCode(
                "the general-error pipeline drives two-codeword codes".into(),
            ));
        }
        let n = code.n_qubits();
        let mut kraus_span = vec![LocalOperator::identity()];
        kraus_span.extend(LocalOperator::weight_one_paulis(n));
        let rebalance_basis = match RebalanceBasis::build(&code) {
            Ok(b) => Some(b),
            Err(Error::OperatorChoice) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            code,
            kraus_span,
            rebalance_basis,
            sectors: Mutex::new(HashMap::new()),
        })
    }

    pub fn code(&self) -> &PICode {
        &self.code
    }

    /// Per-tableau artifacts, built on first use.
    pub fn sector(&self, t: &StandardYoungTableau) -> Result<Arc<SectorData>> {
        let key = t.yy_string();
        {
            let map = self.sectors.lock().expect("sector cache poisoned");
            if let Some(s) = map.get(&key) {
                return Ok(s.clone());
            }
        }
        let basis = CoupledBasis::build(t)?;
        let decomposition = correctible_decomposition(&self.code, &self.kraus_span, t)?;
        let tcode = build_t_code(&self.code, t)?;
        let data = Arc::new(SectorData {
            basis,
            decomposition,
            tcode,
        });
        let mut map = self.sectors.lock().expect("sector cache poisoned");
        Ok(map.entry(key).or_insert(data).clone())
    }
}

/// Trajectory log of the Schur-cascade pipeline.
#[derive(Debug, Clone)]
pub struct GeneralQecOutcome {
    pub fidelity: f64,
    pub syndrome: String,
    pub j2_path: Vec<usize>,
    pub modulo_outcome: usize,
    pub rus_rounds: usize,
    pub rus_success: bool,
    /// Register size the symmetric projection ended on, before the return
    /// map re-encoded into the full code.
    pub projected_qubits: usize,
    pub rebalance_steps: usize,
    pub rebalance_converged: bool,
    /// Logical amplitude-ratio deformation undone by rebalancing.
    pub deformation_ratio: f64,
}

/// Run one trajectory of the Schur-cascade pipeline for a fixed error
/// operator: encode, corrupt, symmetrize, measure the tableau syndrome,
/// recover in-sector, project back to the symmetric subspace, return to
/// the codespace, rebalance, and score against the ideal encoding.
pub fn run_general_qec<R: Rng + ?Sized>(
    ctx: &DecoderContext,
    error: &LocalOperator,
    alphas: &[Complex64],
    rng: &mut R,
    max_rus_rounds: usize,
    max_rebalance_steps: usize,
) -> Result<GeneralQecOutcome> {
    let target = ctx.code.encode(alphas)?;
    let mut corrupted = error.apply(&target.embed())?;
    let norm = corrupted.normalize();
    if norm < 1e-12 {
        return Err(Error::Decode("error operator annihilated the state".into()));
    }
    let (sym, _) = symmetrize(&corrupted, rng);
    decode_symmetrized(ctx, &sym, &target, rng, max_rus_rounds, max_rebalance_steps)
}

/// Run one trajectory with a sampled channel branch instead of a fixed
/// operator. Returns the branch index alongside the outcome.
pub fn run_channel_qec<R: Rng + ?Sized>(
    ctx: &DecoderContext,
    channel: &KrausChannel,
    alphas: &[Complex64],
    rng: &mut R,
    max_rus_rounds: usize,
    max_rebalance_steps: usize,
) -> Result<(GeneralQecOutcome, usize)> {
    let target = ctx.code.encode(alphas)?;
    let (corrupted, branch) = sample_channel(&target.embed(), channel, rng)?;
    let (sym, _) = symmetrize(&corrupted, rng);
    let outcome = decode_symmetrized(ctx, &sym, &target, rng, max_rus_rounds, max_rebalance_steps)?;
    Ok((outcome, branch))
}

fn decode_symmetrized<R: Rng + ?Sized>(
    ctx: &DecoderContext,
    sym: &FullState,
    target: &SymmetricState,
    rng: &mut R,
    max_rus_rounds: usize,
    max_rebalance_steps: usize,
) -> Result<GeneralQecOutcome> {
    let n = ctx.code.n_qubits();
    let (collapsed, synd) = measure_syt(sym, rng)?;
    let sector = ctx.sector(synd.tableau())?;
    let (recovered, modulo_outcome) = kl_recover(
        &collapsed,
        &sector.basis,
        &sector.decomposition,
        &sector.tcode,
        rng,
    )?;
    let rus = project_symmetric_rus(&recovered, synd.tableau(), rng, max_rus_rounds)?;
    if !rus.success {
        let out_sym = SymmetricState::project(&rus.state);
        return Ok(GeneralQecOutcome {
            fidelity: if rus.retained_qubits == n {
                out_sym.fidelity(target)
            } else {
                0.0
            },
            syndrome: synd.tableau().yy_string(),
            j2_path: synd.j2_path().to_vec(),
            modulo_outcome,
            rus_rounds: rus.rounds.len(),
            rus_success: false,
            projected_qubits: rus.retained_qubits,
            rebalance_steps: 0,
            rebalance_converged: false,
            deformation_ratio: f64::NAN,
        });
    }
    // image of each T-codeword under the realized branch, on the retained
    // register (known from the tracked rung images alone)
    let m = rus.retained_qubits;
    let mut images = Vec::with_capacity(2);
    let mut norms = Vec::with_capacity(2);
    for j in 0..2 {
        let mut u = DVector::from_element(m + 1, C0);
        for (l, c) in sector.tcode.codeword_coords(j).iter().enumerate() {
            u += &rus.ladder_images[l] * *c;
        }
        let nj = u.norm();
        if nj < 1e-9 {
            return Err(Error::Decode(format!(
                "projection branch annihilated logical word {j}"
            )));
        }
        images.push(u / Complex64::new(nj, 0.0));
        norms.push(nj);
    }
    let cross = images[0].dotc(&images[1]).norm();
    if cross > 1e-8 {
        return Err(Error::Decode(format!(
            "codeword images overlap after projection ({cross:.3e})"
        )));
    }
    let out_sym = SymmetricState::project(&rus.state);
    if (out_sym.norm_sqr() - 1.0).abs() > 1e-8 {
        return Err(Error::Decode(format!(
            "post-projection state is not symmetric (residual {:.3e})",
            (out_sym.norm_sqr() - 1.0).abs()
        )));
    }
    // return map: the record-determined isometry sending each codeword
    // image on the retained register back to the full codeword; in
    // coordinates, read off the logical amplitudes and re-encode
    let out_coords = DVector::from_column_slice(out_sym.dicke_amplitudes());
    let logical: Vec<Complex64> = images.iter().map(|u| u.dotc(&out_coords)).collect();
    let captured: f64 = logical.iter().map(|c| c.norm_sqr()).sum();
    if (captured - 1.0).abs() > 1e-7 {
        return Err(Error::Decode(format!(
            "projected state leaks outside the recovered code (weight {captured:.6})"
        )));
    }
    let lnorm = captured.sqrt();
    let mut state_coords = DVector::from_element(n + 1, C0);
    for j in 0..2 {
        state_coords +=
            DVector::from_column_slice(ctx.code.codeword_amplitudes(j)) * (logical[j] / lnorm);
    }
    let state =
        SymmetricState::from_dicke_amplitudes(n, state_coords.iter().copied().collect())?;

    // the residual deformation is a pure logical amplitude ratio
    let ratio = norms[0] / norms[1];
    let (state, rebalance_record) = match (&ctx.rebalance_basis, (ratio - 1.0).abs() > 1e-11) {
        (Some(basis), _) => {
            let (s, r) = rebalance(&state, basis, ratio, rng, max_rebalance_steps, 1e-9)?;
            (s, Some(r))
        }
        (None, false) => (state, None),
        (None, true) => {
            return Err(Error::OperatorChoice);
        }
    };
    Ok(GeneralQecOutcome {
        fidelity: state.fidelity(target),
        syndrome: synd.tableau().yy_string(),
        j2_path: synd.j2_path().to_vec(),
        modulo_outcome,
        rus_rounds: rus.rounds.len(),
        rus_success: true,
        projected_qubits: m,
        rebalance_steps: rebalance_record.as_ref().map_or(0, |r| r.steps.len()),
        rebalance_converged: rebalance_record.as_ref().map_or(true, |r| r.converged),
        deformation_ratio: ratio,
    })
}

/// Trajectory log of the teleportation route.
#[derive(Debug, Clone)]
pub struct TeleportQecOutcome {
    pub fidelity: f64,
    pub syndrome: String,
    pub modulo_outcome: usize,
    pub record: TeleportRecord,
}

/// Decode by teleporting the recovered T-code onto a fresh register of the
/// same code (no Schur cascade, no rebalancing).
pub fn run_teleport_qec<R: Rng + ?Sized>(
    ctx: &DecoderContext,
    error: &LocalOperator,
    alphas: &[Complex64],
    rng: &mut R,
) -> Result<TeleportQecOutcome> {
    let target = ctx.code.encode(alphas)?;
    let mut corrupted = error.apply(&target.embed())?;
    corrupted.normalize();
    let (sym, _) = symmetrize(&corrupted, rng);
    let (collapsed, synd) = measure_syt(&sym, rng)?;
    let sector = ctx.sector(synd.tableau())?;
    let (recovered, modulo_outcome) = kl_recover(
        &collapsed,
        &sector.basis,
        &sector.decomposition,
        &sector.tcode,
        rng,
    )?;
    let coords = sector.basis.coords(&recovered);
    let (out, record) = teleport(&coords, &sector.tcode, &ctx.code, &ctx.code, rng)?;
    Ok(TeleportQecOutcome {
        fidelity: out.fidelity(&target),
        syndrome: synd.tableau().yy_string(),
        modulo_outcome,
        record,
    })
}

/// Trajectory log of the deletion route.
#[derive(Debug, Clone)]
pub struct DeletionQecOutcome {
    pub fidelity: f64,
    pub deleted_positions: Vec<usize>,
    pub observed_pattern: usize,
    pub shift: usize,
    pub modulo_outcome: usize,
    pub recovered_shift: i64,
}

/// Encode, delete `t` qubits (the last ones unless positions are given),
/// run the deletion decoder, and score against the recovered code's ideal
/// encoding.
pub fn run_deletion_qec<R: Rng + ?Sized>(
    code: &PICode,
    t: usize,
    positions: Option<&[usize]>,
    alphas: &[Complex64],
    rng: &mut R,
) -> Result<DeletionQecOutcome> {
    let n = code.n_qubits();
    if t == 0 || t >= n {
        return Err(Error::BadSupport(format!(
            "must delete between 1 and N-1 qubits, got {t}"
        )));
    }
    let default_positions: Vec<usize> = (n - t + 1..=n).collect();
    let positions = positions.map_or(default_positions, |p| p.to_vec());
    let encoded = code.encode_full(alphas)?;
    let (survivor, event) = delete_qubits(&encoded, &positions, rng)?;
    let rec = correct_deletions(&survivor, code, t, rng)?;
    let target = rec.recovered_code.encode(alphas)?;
    Ok(DeletionQecOutcome {
        fidelity: rec.state.fidelity(&target),
        deleted_positions: positions,
        observed_pattern: event.pattern,
        shift: rec.shift,
        modulo_outcome: rec.modulo_outcome,
        recovered_shift: rec.recovered_shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{Axis, C1};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_logical(rng: &mut impl Rng) -> [Complex64; 2] {
        let v = [
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ];
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / norm, v[1] / norm]
    }

    #[test]
    fn identity_error_round_trips() {
        let ctx = DecoderContext::for_weight_one(PICode::gnu(3, 3, 1.0, 0).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = run_general_qec(
            &ctx,
            &LocalOperator::identity(),
            &[C1, C0],
            &mut rng,
            16,
            64,
        )
        .unwrap();
        assert_eq!(out.syndrome, "000000000");
        assert_eq!(out.rus_rounds, 0);
        assert!(out.fidelity > 1.0 - 1e-10, "fidelity {}", out.fidelity);
    }

    #[test]
    fn single_pauli_errors_are_corrected() {
        let ctx = DecoderContext::for_weight_one(PICode::gnu(3, 3, 1.0, 0).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for op in [
            LocalOperator::pauli(Axis::X, 5),
            LocalOperator::pauli(Axis::Y, 1),
            LocalOperator::pauli(Axis::Z, 9),
        ] {
            for _ in 0..5 {
                let alphas = random_logical(&mut rng);
                let out = run_general_qec(&ctx, &op, &alphas, &mut rng, 64, 256).unwrap();
                assert!(out.rus_success);
                assert!(
                    out.fidelity > 1.0 - 1e-8,
                    "{}: fidelity {} (syndrome {})",
                    op.label(),
                    out.fidelity,
                    out.syndrome
                );
            }
        }
    }

    #[test]
    fn sampled_channel_trajectories_are_corrected() {
        let ctx = DecoderContext::for_weight_one(PICode::gnu(3, 3, 1.0, 0).unwrap()).unwrap();
        let channel = KrausChannel::weight_one_pauli(9, 0.7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let alphas = random_logical(&mut rng);
            let (out, _branch) =
                run_channel_qec(&ctx, &channel, &alphas, &mut rng, 64, 256).unwrap();
            assert!(out.fidelity > 1.0 - 1e-8, "fidelity {}", out.fidelity);
        }
    }

    #[test]
    fn teleport_route_corrects_single_paulis() {
        let ctx = DecoderContext::for_weight_one(PICode::gnu(3, 3, 1.0, 0).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for op in [
            LocalOperator::pauli(Axis::X, 2),
            LocalOperator::pauli(Axis::Z, 4),
        ] {
            for _ in 0..5 {
                let alphas = random_logical(&mut rng);
                let out = run_teleport_qec(&ctx, &op, &alphas, &mut rng).unwrap();
                assert!(
                    out.fidelity > 1.0 - 1e-9,
                    "{}: fidelity {}",
                    op.label(),
                    out.fidelity
                );
            }
        }
    }

    #[test]
    fn deletion_route_recovers() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let alphas = random_logical(&mut rng);
            let out = run_deletion_qec(&code, 1, None, &alphas, &mut rng).unwrap();
            assert!(out.fidelity > 1.0 - 1e-9, "fidelity {}", out.fidelity);
        }
        // arbitrary positions behave identically in distribution
        let out = run_deletion_qec(&code, 1, Some(&[2]), &[C1, C0], &mut rng).unwrap();
        assert!(out.fidelity > 1.0 - 1e-9);
    }
}
