//! Error channels applied by pure-state trajectory sampling.
//!
//! Mixed states are never materialized: Kraus channels are unraveled by
//! Born-weighted branch sampling, and qubit deletion is unraveled by
//! measuring the deleted qubits in the computational basis before dropping
//! them. For symmetric inputs the deletion branches depend only on the
//! number of deleted excitations, which reappears downstream as the modulo
//! syndrome.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::codes::PICode;
use crate::error::{Error, Result};
use crate::hilbert::{
    sample_outcome, FullState, LocalOperator, Permutation, C0, C1,
};

/// A trace-preserving channel given by weight-`t` Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    ops: Vec<LocalOperator>,
}

impl KrausChannel {
    /// Validate `sum_i K_i† K_i = I` on the full `n`-qubit space.
    pub fn new(n: usize, ops: Vec<LocalOperator>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::NotTracePreserving { deviation: 1.0 });
        }
        if n > 12 {
            return Err(Error::SizeLimit(format!(
                "trace-preservation check capped at N <= 12, got {n}"
            )));
        }
        let dim = 1usize << n;
        let mut sum = DMatrix::from_element(dim, dim, C0);
        for k in &ops {
            let m = k.embed(n)?;
            sum += m.adjoint() * m;
        }
        for i in 0..dim {
            sum[(i, i)] -= C1;
        }
        let deviation = sum.norm();
        if deviation > 1e-9 {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { ops })
    }

    pub fn identity() -> Self {
        Self {
            ops: vec![LocalOperator::identity()],
        }
    }

    /// With probability `p`, a uniformly random weight-one Pauli on a
    /// uniformly random qubit.
    pub fn weight_one_pauli(n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidCode(format!("probability {p} out of [0,1]")));
        }
        let mut ops = vec![LocalOperator::identity().scaled(Complex64::new((1.0 - p).sqrt(), 0.0))];
        let c = Complex64::new((p / (3.0 * n as f64)).sqrt(), 0.0);
        for op in LocalOperator::weight_one_paulis(n) {
            ops.push(op.scaled(c));
        }
        KrausChannel::new(n, ops)
    }

    /// Amplitude damping of strength `gamma` on a uniformly random qubit.
    pub fn amplitude_damping(n: usize, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidCode(format!("gamma {gamma} out of [0,1]")));
        }
        let c = Complex64::new((1.0 / n as f64).sqrt(), 0.0);
        let k0 = DMatrix::from_row_slice(
            2,
            2,
            &[C1, C0, C0, Complex64::new((1.0 - gamma).sqrt(), 0.0)],
        );
        let k1 = DMatrix::from_row_slice(
            2,
            2,
            &[C0, Complex64::new(gamma.sqrt(), 0.0), C0, C0],
        );
        let mut ops = Vec::with_capacity(2 * n);
        for q in 1..=n {
            ops.push(LocalOperator::new(vec![q], k0.clone(), format!("K0@{q}"))?.scaled(c));
            ops.push(LocalOperator::new(vec![q], k1.clone(), format!("K1@{q}"))?.scaled(c));
        }
        KrausChannel::new(n, ops)
    }

    pub fn operators(&self) -> &[LocalOperator] {
        &self.ops
    }

    /// Parse a Kraus-operator file: repeated blocks of
    /// `kraus q1 [q2 ...]` followed by `2^t` rows of `2^t` complex entries
    /// written as `re,im` pairs.
    pub fn parse_kraus_file(n: usize, text: &str) -> Result<Self> {
        let mut ops: Vec<LocalOperator> = Vec::new();
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        while let Some(header) = lines.next() {
            let mut tok = header.split_whitespace();
            if tok.next() != Some("kraus") {
                return Err(Error::InvalidCode(format!(
                    "expected 'kraus' header, got {header:?}"
                )));
            }
            let support: Vec<usize> = tok
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidCode(format!("bad qubit index {t:?}")))
                })
                .collect::<Result<_>>()?;
            let dim = 1usize << support.len();
            let mut entries = Vec::with_capacity(dim * dim);
            for _ in 0..dim {
                let row = lines.next().ok_or_else(|| {
                    Error::InvalidCode("truncated Kraus matrix block".into())
                })?;
                for cell in row.split_whitespace() {
                    let mut parts = cell.split(',');
                    let re: f64 = parts
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| Error::InvalidCode(format!("bad entry {cell:?}")))?;
                    let im: f64 = parts
                        .next()
                        .map(|v| {
                            v.parse()
                                .map_err(|_| Error::InvalidCode(format!("bad entry {cell:?}")))
                        })
                        .transpose()?
                        .unwrap_or(0.0);
                    entries.push(Complex64::new(re, im));
                }
            }
            if entries.len() != dim * dim {
                return Err(Error::InvalidCode("Kraus matrix has wrong entry count".into()));
            }
            let label = format!("kraus{}@{:?}", ops.len(), support);
            ops.push(LocalOperator::new(
                support,
                DMatrix::from_row_slice(dim, dim, &entries),
                label,
            )?);
        }
        KrausChannel::new(n, ops)
    }
}

/// Sample one Kraus branch: branch `i` with probability `||K_i psi||^2`.
pub fn sample_channel<R: Rng + ?Sized>(
    state: &FullState,
    channel: &KrausChannel,
    rng: &mut R,
) -> Result<(FullState, usize)> {
    let images: Vec<FullState> = channel
        .ops
        .iter()
        .map(|k| k.apply(state))
        .collect::<Result<_>>()?;
    let probs: Vec<f64> = images.iter().map(|s| s.norm_sqr()).collect();
    let branch = sample_outcome(&probs, rng)
        .map_err(|_| Error::NotTracePreserving {
            deviation: (probs.iter().sum::<f64>() - 1.0).abs(),
        })?;
    let mut post = images[branch].clone();
    post.normalize();
    Ok((post, branch))
}

/// Record of an unraveled deletion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionEvent {
    /// 1-based deleted qubit positions.
    pub positions: Vec<usize>,
    /// Bits observed on the deleted qubits (first position = MSB).
    pub pattern: usize,
    /// Number of deleted excitations, `a = popcount(pattern)`: the Dicke
    /// weight shift of the surviving register.
    pub shift: usize,
}

fn split_masks(n: usize, positions: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let t = positions.len();
    if t == 0 || t >= n {
        return Err(Error::BadSupport(format!(
            "must delete between 1 and N-1 qubits, got {t} of {n}"
        )));
    }
    let mut is_deleted = vec![false; n];
    for &q in positions {
        if q == 0 || q > n {
            return Err(Error::BadSupport(format!("qubit {q} out of 1..={n}")));
        }
        if is_deleted[q - 1] {
            return Err(Error::BadSupport(format!("qubit {q} deleted twice")));
        }
        is_deleted[q - 1] = true;
    }
    // bit positions counted from the MSB, in qubit order
    let deleted: Vec<usize> = (0..n).filter(|&i| is_deleted[i]).map(|i| n - 1 - i).collect();
    let kept: Vec<usize> = (0..n).filter(|&i| !is_deleted[i]).map(|i| n - 1 - i).collect();
    Ok((deleted, kept))
}

/// All deletion branches of `state`, exactly: for each bit pattern on the
/// deleted positions, the unnormalized surviving state and its probability.
pub fn deletion_branches(
    state: &FullState,
    positions: &[usize],
) -> Result<Vec<(usize, f64, FullState)>> {
    let n = state.n_qubits();
    let (deleted, kept) = split_masks(n, positions)?;
    let t = deleted.len();
    let m = n - t;
    let mut branches = Vec::with_capacity(1 << t);
    for pattern in 0..1usize << t {
        let mut sub = FullState::zeros(m);
        for y in 0..1usize << m {
            let mut x = 0usize;
            for (pos, &b) in deleted.iter().enumerate() {
                x |= ((pattern >> (t - 1 - pos)) & 1) << b;
            }
            for (pos, &b) in kept.iter().enumerate() {
                x |= ((y >> (m - 1 - pos)) & 1) << b;
            }
            sub.amplitudes_mut()[y] = state.amplitudes()[x];
        }
        let p = sub.norm_sqr();
        branches.push((pattern, p, sub));
    }
    Ok(branches)
}

/// Delete qubits at the given positions, sampling the traced-out register
/// in the computational basis. Returns the surviving renormalized state.
pub fn delete_qubits<R: Rng + ?Sized>(
    state: &FullState,
    positions: &[usize],
    rng: &mut R,
) -> Result<(FullState, DeletionEvent)> {
    let branches = deletion_branches(state, positions)?;
    let probs: Vec<f64> = branches.iter().map(|(_, p, _)| *p).collect();
    let outcome = sample_outcome(&probs, rng).map_err(|_| Error::Unnormalized(1.0))?;
    let (pattern, _, mut post) = branches.into_iter().nth(outcome).unwrap();
    post.normalize();
    Ok((
        post,
        DeletionEvent {
            positions: positions.to_vec(),
            pattern,
            shift: pattern.count_ones() as usize,
        },
    ))
}

/// Apply a uniformly random qubit-label permutation.
pub fn symmetrize<R: Rng + ?Sized>(state: &FullState, rng: &mut R) -> (FullState, Permutation) {
    let sigma = Permutation::random(state.n_qubits(), rng);
    (sigma.apply(state), sigma)
}

/// Result of one symmetrizing-lemma proportionality check.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub holds: bool,
    /// The scalar `g` with `Pi A† P_sigma† P_tau B Pi = g Pi`.
    pub scalar: Complex64,
    /// Operator-norm residual of the proportionality.
    pub residual: f64,
}

/// Check `Pi A† P_sigma† P_tau B Pi = g Pi` for a PI code with projector
/// `Pi`, weight-`t` operators `A`, `B` and permutations `sigma`, `tau`.
pub fn symmetrizing_lemma_check(
    code: &PICode,
    a: &LocalOperator,
    b: &LocalOperator,
    sigma: &Permutation,
    tau: &Permutation,
    tol: f64,
) -> Result<LemmaReport> {
    let m = code.dimension();
    let xs: Vec<FullState> = (0..m)
        .map(|j| Ok(sigma.apply(&a.apply(&code.codeword_full(j))?)))
        .collect::<Result<_>>()?;
    let ys: Vec<FullState> = (0..m)
        .map(|k| Ok(tau.apply(&b.apply(&code.codeword_full(k))?)))
        .collect::<Result<_>>()?;
    // G_{jk} = <sigma A j_L | tau B k_L>; the code-space restriction of the
    // sandwiched operator, so the residual of G - gI is the full residual.
    let mut g = DMatrix::from_element(m, m, C0);
    for j in 0..m {
        for k in 0..m {
            g[(j, k)] = xs[j].inner(&ys[k]);
        }
    }
    let scalar: Complex64 = (0..m).map(|j| g[(j, j)]).sum::<Complex64>() / m as f64;
    for j in 0..m {
        g[(j, j)] -= scalar;
    }
    let residual = g.norm();
    Ok(LemmaReport {
        holds: residual <= tol,
        scalar,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::PICode;
    use crate::hilbert::{dicke_state, Axis};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_channel_keeps_state() {
        let ch = KrausChannel::identity();
        let st = dicke_state(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (post, branch) = sample_channel(&st, &ch, &mut rng).unwrap();
        assert_eq!(branch, 0);
        assert!(post.fidelity(&st) > 1.0 - 1e-12);
    }

    #[test]
    fn non_tp_channel_rejected() {
        let half = LocalOperator::identity().scaled(Complex64::new(0.5, 0.0));
        assert!(KrausChannel::new(2, vec![half]).is_err());
    }

    #[test]
    fn full_depolarizing_branch_statistics() {
        // p = 1 on one qubit: X, Y, Z each 1/3
        let ch = KrausChannel::weight_one_pauli(1, 1.0).unwrap();
        let st = FullState::basis(1, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let trials = 10_000;
        let mut counts = [0usize; 4];
        for _ in 0..trials {
            let (_, branch) = sample_channel(&st, &ch, &mut rng).unwrap();
            counts[branch] += 1;
        }
        assert_eq!(counts[0], 0, "identity branch has zero amplitude at p = 1");
        let sigma = ((1.0 / 3.0) * (2.0 / 3.0) / trials as f64).sqrt();
        for &c in &counts[1..] {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 3.0).abs() < 3.0 * sigma, "branch frequency {f}");
        }
    }

    #[test]
    fn random_kraus_branch_leaves_codespace() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let st = code.codeword_full(0);
        let ch = KrausChannel::amplitude_damping(9, 0.4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut saw_leak = false;
        for _ in 0..20 {
            let (post, _) = sample_channel(&st, &ch, &mut rng).unwrap();
            let in_code: f64 = (0..2)
                .map(|j| post.inner(&code.codeword_full(j)).norm_sqr())
                .sum();
            if in_code < 1.0 - 1e-6 {
                saw_leak = true;
            }
        }
        assert!(saw_leak, "damping branches should generically leave the codespace");
    }

    #[test]
    fn delete_all_zeros_state() {
        let st = dicke_state(4, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (post, ev) = delete_qubits(&st, &[4], &mut rng).unwrap();
        assert_eq!(ev.shift, 0);
        assert!(post.fidelity(&dicke_state(3, 0).unwrap()) > 1.0 - 1e-12);
    }

    #[test]
    fn delete_dicke_mixture_weights() {
        let st = dicke_state(4, 2).unwrap();
        let branches = deletion_branches(&st, &[4]).unwrap();
        assert_eq!(branches.len(), 2);
        let (p0, p1) = (branches[0].1, branches[1].1);
        assert!((p0 - 0.5).abs() < 1e-12);
        assert!((p1 - 0.5).abs() < 1e-12);
        let b0 = branches[0].2.clone().normalized();
        let b1 = branches[1].2.clone().normalized();
        assert!(b0.fidelity(&dicke_state(3, 2).unwrap()) > 1.0 - 1e-12);
        assert!(b1.fidelity(&dicke_state(3, 1).unwrap()) > 1.0 - 1e-12);
    }

    /// Eq.-level oracle: the deletion branch of a symmetric state with
    /// shift `a` has amplitude `a_w sqrt(C(N-t, w-a) / C(N, w))` on
    /// `|D^{N-t}_{w-a}>`.
    fn psia_delete(code_amps: &[Complex64], n: usize, t: usize, a: usize) -> FullState {
        let m = n - t;
        let mut out = FullState::zeros(m);
        for (w, c) in code_amps.iter().enumerate() {
            if c.norm() == 0.0 || w < a || w - a > m {
                continue;
            }
            let coeff = ((crate::hilbert::binomial(m, w - a) as f64)
                / (crate::hilbert::binomial(n, w) as f64))
                .sqrt();
            let d = dicke_state(m, w - a).unwrap();
            out.add_scaled(&d, c * coeff);
        }
        out
    }

    #[test]
    fn deletion_branches_match_psia_formula() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let plus = code.encode(&[r, r]).unwrap();
        let full = plus.embed();
        let branches = deletion_branches(&full, &[4]).unwrap();
        for (pattern, p, sub) in branches {
            let a = pattern.count_ones() as usize;
            let expect = psia_delete(plus.dicke_amplitudes(), 4, 1, a);
            assert!((p - expect.norm_sqr()).abs() < 1e-12);
            let mut diff = sub.clone();
            diff.add_scaled(&expect, -C1);
            assert!(diff.norm() < 1e-12);
        }
    }

    #[test]
    fn deletion_matches_partial_trace_oracle() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let alphas = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let full = code.encode_full(&alphas).unwrap();
        let positions = [2usize];
        let branches = deletion_branches(&full, &positions).unwrap();

        // dense partial trace over qubit 2
        let n = 4usize;
        let m = 3usize;
        let dim_red = 1usize << m;
        let mut rho = DMatrix::from_element(dim_red, dim_red, C0);
        let (deleted, kept) = super::split_masks(n, &positions).unwrap();
        for b in 0..2usize {
            let mut slice = vec![C0; dim_red];
            for y in 0..dim_red {
                let mut x = 0usize;
                x |= b << deleted[0];
                for (pos, &bit) in kept.iter().enumerate() {
                    x |= ((y >> (m - 1 - pos)) & 1) << bit;
                }
                slice[y] = full.amplitudes()[x];
            }
            for r in 0..dim_red {
                for c in 0..dim_red {
                    rho[(r, c)] += slice[r] * slice[c].conj();
                }
            }
        }
        let mut rho_branches = DMatrix::from_element(dim_red, dim_red, C0);
        for (_, _, sub) in &branches {
            for r in 0..dim_red {
                for c in 0..dim_red {
                    rho_branches[(r, c)] += sub.amplitudes()[r] * sub.amplitudes()[c].conj();
                }
            }
        }
        assert!((rho - rho_branches).norm() < 1e-12);
    }

    #[test]
    fn deletion_branch_distribution_is_position_independent() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let full = code.codeword_full(0);
        let mut reference: Option<Vec<f64>> = None;
        for q in 1..=4 {
            let mut probs: Vec<f64> = deletion_branches(&full, &[q])
                .unwrap()
                .iter()
                .map(|(_, p, _)| *p)
                .collect();
            probs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            match &reference {
                None => reference = Some(probs),
                Some(r) => {
                    for (x, y) in r.iter().zip(&probs) {
                        assert!((x - y).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn deleting_everything_is_rejected() {
        let st = dicke_state(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(delete_qubits(&st, &[1, 2], &mut rng).is_err());
    }

    #[test]
    fn symmetrize_fixes_symmetric_states() {
        let st = dicke_state(4, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let (post, _) = symmetrize(&st, &mut rng);
            assert!(post.fidelity(&st) > 1.0 - 1e-12);
        }
    }

    #[test]
    fn symmetrize_orbit_statistics() {
        let st = FullState::basis(2, 0b01);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let trials = 10_000;
        let mut stay = 0usize;
        for _ in 0..trials {
            let (post, _) = symmetrize(&st, &mut rng);
            if post.fidelity(&st) > 0.5 {
                stay += 1;
            }
        }
        let f = stay as f64 / trials as f64;
        let sigma = (0.25 / trials as f64).sqrt();
        assert!((f - 0.5).abs() < 3.0 * sigma);
    }

    #[test]
    fn single_qubit_error_orbit_is_uniform() {
        let st = dicke_state(3, 0).unwrap();
        let flipped = LocalOperator::pauli(Axis::X, 1).apply(&st).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 9_000;
        let mut counts = [0usize; 3];
        for _ in 0..trials {
            let (post, _) = symmetrize(&flipped, &mut rng);
            for q in 0..3 {
                if post.fidelity(&FullState::basis(3, 1 << (2 - q))) > 0.5 {
                    counts[q] += 1;
                }
            }
        }
        let sigma = ((1.0 / 3.0) * (2.0 / 3.0) / trials as f64).sqrt();
        for &c in &counts {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 3.0).abs() < 3.0 * sigma, "orbit frequency {f}");
        }
    }

    #[test]
    fn lemma_identity_case() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let id = LocalOperator::identity();
        let p = Permutation::identity(4);
        let report = symmetrizing_lemma_check(&code, &id, &id, &p, &p, 1e-10).unwrap();
        assert!(report.holds);
        assert!((report.scalar - C1).norm() < 1e-12);
    }

    #[test]
    fn lemma_holds_for_distance_three() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let a = LocalOperator::pauli(Axis::X, 1);
        let b = LocalOperator::pauli(Axis::X, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let sigma = Permutation::random(9, &mut rng);
            let tau = Permutation::random(9, &mut rng);
            let report = symmetrizing_lemma_check(&code, &a, &b, &sigma, &tau, 1e-9).unwrap();
            assert!(report.holds, "residual {}", report.residual);
        }
    }

    #[test]
    fn lemma_counterexample_for_distance_two() {
        // d = 2 < 2t + 1 at t = 1: some weight-1 pair must violate
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let id = Permutation::identity(4);
        let paulis = LocalOperator::weight_one_paulis(4);
        let mut found = false;
        for a in &paulis {
            for b in &paulis {
                let report =
                    symmetrizing_lemma_check(&code, a, b, &id, &id, 1e-9).unwrap();
                if !report.holds {
                    found = true;
                }
            }
        }
        assert!(found, "expected a proportionality violation for the d=2 code");
    }
}
