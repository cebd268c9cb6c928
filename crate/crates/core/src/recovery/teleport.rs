//! Teleportation-based decoding.
//!
//! The register-B state (a T-code of a shifted gnu code with odd gap `g`)
//! is teleported onto a fresh PI-code register A: entangle with a logical
//! controlled-`X_schur` whose control reads A's Dicke-weight class modulo
//! `2g`, measure B's ladder position modulo `2g` to obtain a logical-Z
//! outcome, and apply `X_schur` on A when the outcome decodes to logical
//! one. The ancilla is prepared as `(|0_L> - i |1_L>)/sqrt(2)`, which is
//! `|+_L>` with the logical phase gate absorbed so that the `i` carried by
//! `X_schur` cancels and A receives the logical state exactly.
//!
//! The modulo outcome decodes through `sigma = (a + r2 - s) mod 2g`, which
//! is zero on the logical-zero class for every tableau; each run is also
//! cross-checked against the direct logical-Z oracle (overlaps with the
//! T-code codewords) and any disagreement is surfaced as a calibration
//! error.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::codes::PICode;
use crate::error::{Error, Result};
use crate::hilbert::{sample_outcome, FullState, SymmetricState, C0, CI};
use crate::recovery::TCode;
use crate::schur::CoupledBasis;

/// Branch log of one teleportation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeleportRecord {
    /// Modulo-measurement outcome on register B (modulus `2g`).
    pub modulo_outcome: usize,
    /// Decoded window index `sigma`.
    pub sigma: usize,
    /// Logical-Z declaration on register B.
    pub declared_one: bool,
    /// Whether the `X_schur` correction was applied on register A.
    pub corrected: bool,
}

struct TeleportPlan {
    g: usize,
    s_a: usize,
    s_b: usize,
    r2_b: usize,
}

fn validate(code_a: &PICode, code_b: &PICode, tcode_b: &TCode) -> Result<TeleportPlan> {
    let pa = code_a
        .gnu_params()
        .ok_or_else(|| Error::UnsupportedParameter("register A must be a gnu code".into()))?;
    let pb = code_b
        .gnu_params()
        .ok_or_else(|| Error::UnsupportedParameter("register B must be a gnu code".into()))?;
    if pa.g != pb.g {
        return Err(Error::UnsupportedParameter(format!(
            "gaps differ: {} vs {}",
            pa.g, pb.g
        )));
    }
    if pa.g % 2 == 0 {
        return Err(Error::UnsupportedParameter(format!(
            "teleportation requires an odd gap, got g = {}",
            pa.g
        )));
    }
    if code_a.dimension() != 2 || code_b.dimension() != 2 {
        return Err(Error::UnsupportedParameter(
            "both codes must encode a single logical qubit".into(),
        ));
    }
    // X_schur must act as the logical bit flip on both registers: the
    // controlled flip pairs B's modulo classes and the correction step
    // flips A, and both need the weight supports mirrored about N/2.
    for (name, code) in [("A", code_a), ("B", code_b)] {
        let n = code.n_qubits();
        for w in 0..=n {
            let dev =
                (code.codeword_amplitudes(0)[w] - code.codeword_amplitudes(1)[n - w]).norm();
            if dev > 1e-9 {
                return Err(Error::Calibration(format!(
                    "register {name} code is not reflection symmetric (weight {w}, deviation \
                     {dev:.3e}); X_schur does not implement its logical X"
                )));
            }
        }
    }
    Ok(TeleportPlan {
        g: pa.g,
        s_a: pa.s,
        s_b: pb.s,
        r2_b: tcode_b.tableau().diagram().r2(),
    })
}

/// `sigma` and the logical-Z window decision for a modulo outcome `a`.
fn decode_window(a: usize, plan: &TeleportPlan) -> (usize, bool) {
    let two_g = 2 * plan.g;
    let sigma = (a as i64 + plan.r2_b as i64 - plan.s_b as i64).rem_euclid(two_g as i64) as usize;
    let half = (plan.g - 1) / 2;
    let declared_zero = sigma <= half || sigma >= two_g - half;
    (sigma, !declared_zero)
}

fn controls_flip(w_a: usize, plan: &TeleportPlan) -> bool {
    let two_g = 2 * plan.g;
    (w_a as i64 - plan.s_a as i64).rem_euclid(two_g as i64) as usize == plan.g
}

/// Logical-Z oracle on the collapsed B coordinates: which codeword image
/// dominates.
fn logical_z_oracle(coords: &DVector<Complex64>, tcode_b: &TCode) -> Result<bool> {
    let p0 = tcode_b.codeword_coords(0).dotc(coords).norm_sqr();
    let p1 = tcode_b.codeword_coords(1).dotc(coords).norm_sqr();
    let total = coords.norm().powi(2);
    if (p0 + p1 - total).abs() > 1e-6 * total.max(1e-12) {
        return Err(Error::Calibration(
            "collapsed register B left the T-code span".into(),
        ));
    }
    Ok(p1 > p0)
}

/// The phase-adjusted ancilla `(|0_L> - i |1_L>)/sqrt(2)` in Dicke
/// coordinates.
fn ancilla(code_a: &PICode) -> DVector<Complex64> {
    let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let z = DVector::from_column_slice(code_a.codeword_amplitudes(0));
    let o = DVector::from_column_slice(code_a.codeword_amplitudes(1));
    z * r - o * (CI * r)
}

/// Teleport a T-code state from register B onto a fresh register A, in the
/// compressed `(Dicke of A) x (ladder of B)` representation.
pub fn teleport<R: Rng + ?Sized>(
    state_b: &DVector<Complex64>,
    tcode_b: &TCode,
    code_b: &PICode,
    code_a: &PICode,
    rng: &mut R,
) -> Result<(SymmetricState, TeleportRecord)> {
    let plan = validate(code_a, code_b, tcode_b)?;
    let n_a = code_a.n_qubits();
    let dim_b = tcode_b.ladder_dim();
    if state_b.len() != dim_b {
        return Err(Error::OutOfRange("register B coordinate length mismatch".into()));
    }
    let anc = ancilla(code_a);
    // joint[(w_a, l)] = anc[w_a] * psi_b[l]
    let mut joint = DMatrix::from_element(n_a + 1, dim_b, C0);
    for w in 0..=n_a {
        for l in 0..dim_b {
            joint[(w, l)] = anc[w] * state_b[l];
        }
    }
    // controlled X_schur on B: ladder reflection times i on flipping rows
    for w in 0..=n_a {
        if !controls_flip(w, &plan) {
            continue;
        }
        let row: Vec<Complex64> = (0..dim_b).map(|l| joint[(w, l)]).collect();
        for l in 0..dim_b {
            joint[(w, l)] = CI * row[dim_b - 1 - l];
        }
    }
    // modulo measurement of the ladder position on B, modulus 2g
    let two_g = 2 * plan.g;
    let mut probs = vec![0.0f64; two_g];
    for w in 0..=n_a {
        for l in 0..dim_b {
            probs[l % two_g] += joint[(w, l)].norm_sqr();
        }
    }
    let a = sample_outcome(&probs, rng)?;
    for w in 0..=n_a {
        for l in 0..dim_b {
            if l % two_g != a {
                joint[(w, l)] = C0;
            }
        }
    }
    let norm = joint.norm();
    joint /= Complex64::new(norm, 0.0);

    let (sigma, declared_one) = decode_window(a, &plan);
    if declared_one {
        // X_schur on A: Dicke reflection times i
        let old = joint.clone();
        for w in 0..=n_a {
            for l in 0..dim_b {
                joint[(w, l)] = CI * old[(n_a - w, l)];
            }
        }
    }
    // the collapsed joint state must factor as (A state) x (B state)
    let mut best_row = 0usize;
    let mut best = -1.0f64;
    for w in 0..=n_a {
        let r: f64 = (0..dim_b).map(|l| joint[(w, l)].norm_sqr()).sum();
        if r > best {
            best = r;
            best_row = w;
        }
    }
    let mut b_ref = DVector::from_iterator(dim_b, (0..dim_b).map(|l| joint[(best_row, l)]));
    b_ref /= Complex64::new(b_ref.norm(), 0.0);
    let mut a_vec = DVector::from_element(n_a + 1, C0);
    for w in 0..=n_a {
        for l in 0..dim_b {
            a_vec[w] += joint[(w, l)] * b_ref[l].conj();
        }
    }
    let mut residual = 0.0f64;
    for w in 0..=n_a {
        for l in 0..dim_b {
            residual += (joint[(w, l)] - a_vec[w] * b_ref[l]).norm_sqr();
        }
    }
    if residual.sqrt() > 1e-8 {
        return Err(Error::Decode(format!(
            "registers did not disentangle (residual {:.3e})",
            residual.sqrt()
        )));
    }
    // cross-check the window decode against the logical-Z oracle
    let oracle_one = logical_z_oracle(&b_ref, tcode_b)?;
    if oracle_one != declared_one {
        return Err(Error::Calibration(format!(
            "window decode declared logical {} but the T-code overlap oracle says {}",
            u8::from(declared_one),
            u8::from(oracle_one)
        )));
    }
    a_vec /= Complex64::new(a_vec.norm(), 0.0);
    let out = SymmetricState::from_dicke_amplitudes(n_a, a_vec.iter().copied().collect())?;
    Ok((
        out,
        TeleportRecord {
            modulo_outcome: a,
            sigma,
            declared_one,
            corrected: declared_one,
        },
    ))
}

/// Dense two-register ground truth for [`teleport`]: the same protocol on
/// the full `2^{N_A + N_B}` state vector.
pub fn teleport_dense<R: Rng + ?Sized>(
    state_b: &DVector<Complex64>,
    tcode_b: &TCode,
    code_b: &PICode,
    code_a: &PICode,
    rng: &mut R,
) -> Result<(FullState, TeleportRecord)> {
    let plan = validate(code_a, code_b, tcode_b)?;
    let n_a = code_a.n_qubits();
    let n_b = code_b.n_qubits();
    if n_a + n_b > 14 {
        return Err(Error::SizeLimit(format!(
            "dense teleport capped at N_A + N_B <= 14, got {}",
            n_a + n_b
        )));
    }
    let basis_b = CoupledBasis::build(tcode_b.tableau())?;
    let dim_b = tcode_b.ladder_dim();
    let anc_full = SymmetricState::from_dicke_amplitudes(
        n_a,
        ancilla(code_a).iter().copied().collect(),
    )?
    .embed();
    let b_full = basis_b.from_coords(state_b);
    let mut joint = anc_full.tensor(&b_full);
    let size_b = 1usize << n_b;

    let slice_coords = |joint: &FullState, x_a: usize| -> DVector<Complex64> {
        let mut slice = FullState::zeros(n_b);
        for y in 0..size_b {
            slice.amplitudes_mut()[y] = joint.amplitudes()[(x_a << n_b) | y];
        }
        basis_b.coords(&slice)
    };

    // controlled X_schur on B, control on A's weight class
    let mut out = FullState::zeros(n_a + n_b);
    for x_a in 0..1usize << n_a {
        let w_a = x_a.count_ones() as usize;
        if controls_flip(w_a, &plan) {
            let coords = slice_coords(&joint, x_a);
            let mut reflected = DVector::from_element(dim_b, C0);
            for l in 0..dim_b {
                reflected[l] = CI * coords[dim_b - 1 - l];
            }
            let new_slice = basis_b.from_coords(&reflected);
            for y in 0..size_b {
                out.amplitudes_mut()[(x_a << n_b) | y] = new_slice.amplitudes()[y];
            }
        } else {
            for y in 0..size_b {
                out.amplitudes_mut()[(x_a << n_b) | y] = joint.amplitudes()[(x_a << n_b) | y];
            }
        }
    }
    joint = out;

    // modulo measurement on B
    let two_g = 2 * plan.g;
    let mut probs = vec![0.0f64; two_g];
    let mut all_coords = Vec::with_capacity(1 << n_a);
    for x_a in 0..1usize << n_a {
        let coords = slice_coords(&joint, x_a);
        for l in 0..dim_b {
            probs[l % two_g] += coords[l].norm_sqr();
        }
        all_coords.push(coords);
    }
    let a = sample_outcome(&probs, rng)?;
    let mut collapsed = FullState::zeros(n_a + n_b);
    for (x_a, coords) in all_coords.iter().enumerate() {
        let mut kept = DVector::from_element(dim_b, C0);
        for l in (a..dim_b).step_by(two_g) {
            kept[l] = coords[l];
        }
        let slice = basis_b.from_coords(&kept);
        for y in 0..size_b {
            collapsed.amplitudes_mut()[(x_a << n_b) | y] = slice.amplitudes()[y];
        }
    }
    collapsed.normalize();
    joint = collapsed;

    let (sigma, declared_one) = decode_window(a, &plan);
    if declared_one {
        // X_schur on A: transversal flip times i (symmetric sector)
        let mut out = FullState::zeros(n_a + n_b);
        let mask = (1usize << n_a) - 1;
        for x_a in 0..1usize << n_a {
            let src = (!x_a) & mask;
            for y in 0..size_b {
                out.amplitudes_mut()[(x_a << n_b) | y] =
                    CI * joint.amplitudes()[(src << n_b) | y];
            }
        }
        joint = out;
    }

    // disentangle: contract against the dominant B slice
    let mut best_row = 0usize;
    let mut best = -1.0f64;
    for x_a in 0..1usize << n_a {
        let r: f64 = (0..size_b)
            .map(|y| joint.amplitudes()[(x_a << n_b) | y].norm_sqr())
            .sum();
        if r > best {
            best = r;
            best_row = x_a;
        }
    }
    let mut b_ref = FullState::zeros(n_b);
    for y in 0..size_b {
        b_ref.amplitudes_mut()[y] = joint.amplitudes()[(best_row << n_b) | y];
    }
    b_ref.normalize();
    let mut a_state = FullState::zeros(n_a);
    for x_a in 0..1usize << n_a {
        let mut acc = C0;
        for y in 0..size_b {
            acc += joint.amplitudes()[(x_a << n_b) | y] * b_ref.amplitudes()[y].conj();
        }
        a_state.amplitudes_mut()[x_a] = acc;
    }
    let product = a_state.tensor(&b_ref);
    let mut diff = joint.clone();
    diff.add_scaled(&product, -Complex64::new(1.0, 0.0));
    if diff.norm() > 1e-8 {
        return Err(Error::Decode(format!(
            "registers did not disentangle (residual {:.3e})",
            diff.norm()
        )));
    }
    let oracle_one = logical_z_oracle(&basis_b.coords(&b_ref), tcode_b)?;
    if oracle_one != declared_one {
        return Err(Error::Calibration(format!(
            "window decode declared logical {} but the T-code overlap oracle says {}",
            u8::from(declared_one),
            u8::from(oracle_one)
        )));
    }
    a_state.normalize();
    Ok((
        a_state,
        TeleportRecord {
            modulo_outcome: a,
            sigma,
            declared_one,
            corrected: declared_one,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::C1;
    use crate::recovery::build_t_code;
    use crate::tableaux::StandardYoungTableau;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gnu9() -> PICode {
        PICode::gnu(3, 3, 1.0, 0).unwrap()
    }

    fn random_logical(rng: &mut impl Rng) -> [Complex64; 2] {
        let v = [
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ];
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / norm, v[1] / norm]
    }

    #[test]
    fn codeword_teleports_exactly() {
        let code = gnu9();
        let t = StandardYoungTableau::single_row(9);
        let tc = build_t_code(&code, &t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            let psi_b = tc.encode_coords(&[C1, C0]).unwrap();
            let (out, _) = teleport(&psi_b, &tc, &code, &code, &mut rng).unwrap();
            assert!(out.fidelity(&code.codeword(0)) > 1.0 - 1e-12);
        }
    }

    #[test]
    fn teleport_is_syt_agnostic() {
        let code = gnu9();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for yy in ["000000000", "000000001", "000001001", "000010101"] {
            let t = StandardYoungTableau::parse_yy(yy).unwrap();
            let tc = build_t_code(&code, &t).unwrap();
            for _ in 0..20 {
                let alphas = random_logical(&mut rng);
                let psi_b = tc.encode_coords(&alphas).unwrap();
                let (out, _) = teleport(&psi_b, &tc, &code, &code, &mut rng).unwrap();
                let target = code.encode(&alphas).unwrap();
                assert!(
                    out.fidelity(&target) > 1.0 - 1e-9,
                    "tableau {yy}: fidelity {}",
                    out.fidelity(&target)
                );
            }
        }
    }

    #[test]
    fn branch_frequencies_match_joint_born_weights() {
        // oracle: the pre-measurement joint state puts weight
        // (|alpha|^2 + |beta|^2)/2 = 1/2 on each logical-Z class, for any
        // input; the record must not leak the teleported state
        let code = gnu9();
        let t = StandardYoungTableau::single_row(9);
        let tc = build_t_code(&code, &t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alphas = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let trials = 4000;
        let mut ones = 0usize;
        for _ in 0..trials {
            let psi_b = tc.encode_coords(&alphas).unwrap();
            let (_, rec) = teleport(&psi_b, &tc, &code, &code, &mut rng).unwrap();
            if rec.declared_one {
                ones += 1;
            }
        }
        let f = ones as f64 / trials as f64;
        let sigma = (0.25 / trials as f64).sqrt();
        assert!((f - 0.5).abs() < 4.0 * sigma, "frequency {f}");
    }

    #[test]
    fn even_gap_is_rejected() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(4);
        let tc = build_t_code(&code, &t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let psi_b = tc.encode_coords(&[C1, C0]).unwrap();
        assert!(matches!(
            teleport(&psi_b, &tc, &code, &code, &mut rng),
            Err(Error::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn shifted_register_a_is_rejected_as_uncalibrated() {
        // a shifted code is not reflection symmetric: X_schur is not its
        // logical X and the correction step would corrupt the output
        let code_b = gnu9();
        let code_a = PICode::gnu(3, 3, 1.0, 1).unwrap();
        let t = StandardYoungTableau::single_row(9);
        let tc = build_t_code(&code_b, &t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let psi_b = tc.encode_coords(&[C1, C0]).unwrap();
        assert!(matches!(
            teleport(&psi_b, &tc, &code_b, &code_a, &mut rng),
            Err(Error::Calibration(_))
        ));
    }

    #[test]
    fn shifted_register_b_is_rejected_as_uncalibrated() {
        // a shifted B support is not mirrored about N/2: the controlled
        // flip would scatter its modulo classes instead of pairing them
        let code_b = PICode::gnu(3, 3, 1.0, 2).unwrap();
        let code_a = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(11);
        let tc = build_t_code(&code_b, &t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi_b = tc.encode_coords(&[C1, Complex64::new(0.0, 0.0)]).unwrap();
        assert!(matches!(
            teleport(&psi_b, &tc, &code_b, &code_a, &mut rng),
            Err(Error::Calibration(_))
        ));
    }

    #[test]
    fn dense_and_compressed_runs_agree() {
        // small register A (3 qubits) against the 9-qubit register B
        let code_a = PICode::gnu(3, 1, 1.0, 0).unwrap();
        let code_b = gnu9();
        for yy in ["000000000", "000000001"] {
            let t = StandardYoungTableau::parse_yy(yy).unwrap();
            let tc = build_t_code(&code_b, &t).unwrap();
            let mut rng_c = ChaCha8Rng::seed_from_u64(11);
            let mut rng_d = ChaCha8Rng::seed_from_u64(11);
            for trial in 0..10 {
                let alphas = random_logical(&mut rng_c);
                let _ = random_logical(&mut rng_d); // keep streams aligned
                let psi_b = tc.encode_coords(&alphas).unwrap();
                let (out_c, rec_c) = teleport(&psi_b, &tc, &code_b, &code_a, &mut rng_c).unwrap();
                let (out_d, rec_d) =
                    teleport_dense(&psi_b, &tc, &code_b, &code_a, &mut rng_d).unwrap();
                assert_eq!(rec_c, rec_d, "trial {trial} branch mismatch");
                let dense_as_sym = SymmetricState::project(&out_d);
                assert!(
                    out_c.fidelity(&dense_as_sym) > 1.0 - 1e-9,
                    "trial {trial}: dense/compressed disagree"
                );
                let target = code_a.encode(&alphas).unwrap();
                assert!(out_c.fidelity(&target) > 1.0 - 1e-9);
                assert!(dense_as_sym.fidelity(&target) > 1.0 - 1e-9);
            }
        }
    }
}
