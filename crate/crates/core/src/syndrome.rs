//! Stage-1 syndrome extraction: sequential measurement of the nested total
//! angular momenta `J^2_[2], ..., J^2_[N]`, collapsing the state onto a
//! standard Young tableau, plus the modulo magnetic-number measurement.
//!
//! Eigenprojectors of `J^2_[k]` are evaluated matrix-free as spectral
//! polynomials: the admissible eigenvalues `j (j + 1)` are known exactly,
//! so the projector onto one of them is the product of `(J^2 - lambda') /
//! (lambda - lambda')` over the other candidates. No floating-point
//! diagonalization is involved, which keeps degenerate projectors clean.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::{
    admissible_j2, apply_j_squared, sample_outcome, FullState, ProjectorSet, C0,
};
use crate::schur::{schur_basis, CoupledBasis};
use crate::tableaux::StandardYoungTableau;

/// Guard for sequential syndrome measurement.
pub const MAX_SYNDROME_QUBITS: usize = 14;

/// The stage-1 syndrome: a standard Young tableau with its measured path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SytSyndrome {
    tableau: StandardYoungTableau,
}

impl SytSyndrome {
    pub fn new(tableau: StandardYoungTableau) -> Self {
        Self { tableau }
    }

    pub fn tableau(&self) -> &StandardYoungTableau {
        &self.tableau
    }

    /// Doubled sector spin `2 j_T`.
    pub fn j2(&self) -> usize {
        self.tableau.j2()
    }

    /// Measured doubled spins `2 j_1, ..., 2 j_N`.
    pub fn j2_path(&self) -> &[usize] {
        self.tableau.j2_path()
    }

    /// Serialize as the Young-Yamanouchi string plus the doubled path,
    /// e.g. `"0010110;1,2,1,2,3,2,3"`.
    pub fn serialize(&self) -> String {
        let path: Vec<String> = self.j2_path().iter().map(|j| j.to_string()).collect();
        format!("{};{}", self.tableau.yy_string(), path.join(","))
    }
}

fn eigenvalue(j2: usize) -> f64 {
    let j = j2 as f64 / 2.0;
    j * (j + 1.0)
}

/// Apply, matrix-free, the spectral projector of `J^2_[k]` onto the doubled
/// spin `target_j2`.
pub fn j_squared_projector_apply(
    state: &FullState,
    k: usize,
    target_j2: usize,
) -> Result<FullState> {
    let candidates = admissible_j2(k);
    if !candidates.contains(&target_j2) {
        return Err(Error::OutOfRange(format!(
            "2j = {target_j2} is not admissible for k = {k}"
        )));
    }
    let target = eigenvalue(target_j2);
    let mut v = state.clone();
    for &other in &candidates {
        if other == target_j2 {
            continue;
        }
        let lambda = eigenvalue(other);
        let mut next = apply_j_squared(&v, k)?;
        next.add_scaled(&v, Complex64::new(-lambda, 0.0));
        next.scale(Complex64::new(1.0 / (target - lambda), 0.0));
        v = next;
    }
    Ok(v)
}

/// Projectively measure `J^2_[k]`, also pushing the sampled projector
/// through `tracked` (without renormalizing those columns).
pub(crate) fn measure_j_squared_tracked<R: Rng + ?Sized>(
    state: &FullState,
    k: usize,
    rng: &mut R,
    tracked: &mut [FullState],
) -> Result<(FullState, usize)> {
    let candidates = admissible_j2(k);
    let mut filtered = Vec::with_capacity(candidates.len());
    let mut probs = Vec::with_capacity(candidates.len());
    for &j2 in &candidates {
        let f = j_squared_projector_apply(state, k, j2)?;
        probs.push(f.norm_sqr());
        filtered.push(f);
    }
    let outcome = sample_outcome(&probs, rng)?;
    let mut post = filtered.swap_remove(outcome);
    post.normalize();
    for col in tracked.iter_mut() {
        *col = j_squared_projector_apply(col, k, candidates[outcome])?;
    }
    Ok((post, candidates[outcome]))
}

/// Projectively measure `J^2_[k]` and return the collapsed state with the
/// observed doubled spin.
pub fn measure_j_squared<R: Rng + ?Sized>(
    state: &FullState,
    k: usize,
    rng: &mut R,
) -> Result<(FullState, usize)> {
    measure_j_squared_tracked(state, k, rng, &mut [])
}

pub(crate) fn measure_syt_tracked<R: Rng + ?Sized>(
    state: &FullState,
    rng: &mut R,
    tracked: &mut [FullState],
) -> Result<(FullState, SytSyndrome)> {
    let n = state.n_qubits();
    if n > MAX_SYNDROME_QUBITS {
        return Err(Error::SizeLimit(format!(
            "syndrome measurement capped at N <= {MAX_SYNDROME_QUBITS}, got {n}"
        )));
    }
    let mut path = Vec::with_capacity(n);
    path.push(1usize);
    let mut current = state.clone();
    for k in 2..=n {
        let (next, j2) = measure_j_squared_tracked(&current, k, rng, tracked)?;
        current = next;
        path.push(j2);
    }
    let tableau = StandardYoungTableau::from_j2_path(&path)?;
    Ok((current, SytSyndrome::new(tableau)))
}

/// Measure the full nested sequence `J^2_[2], ..., J^2_[N]` and collapse
/// onto a standard Young tableau sector.
pub fn measure_syt<R: Rng + ?Sized>(
    state: &FullState,
    rng: &mut R,
) -> Result<(FullState, SytSyndrome)> {
    measure_syt_tracked(state, rng, &mut [])
}

/// Outcome of a modulo magnetic-number measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuloOutcome {
    pub g: usize,
    pub a: usize,
}

/// Ladder positions of each modulo class: `classes[a] = {l : l mod g = a}`.
pub fn modulo_classes(dim: usize, g: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); g];
    for l in 0..dim {
        classes[l % g].push(l);
    }
    classes
}

/// The restriction `Pi^T_{mod,g,a}` of the modulo projector to one tableau
/// sector, as a dense matrix on the full space.
pub fn sector_modulo_projector(
    basis: &CoupledBasis,
    g: usize,
    a: usize,
) -> Result<DMatrix<Complex64>> {
    if g == 0 {
        return Err(Error::OutOfRange("modulus must be positive".into()));
    }
    if a >= g {
        return Err(Error::OutOfRange(format!("class a = {a} >= g = {g}")));
    }
    let n = basis.tableau().n();
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    for l in (a..basis.dim()).step_by(g) {
        let v = basis.vector(l);
        for (r, ar) in v.amplitudes().iter().enumerate() {
            if ar.norm() == 0.0 {
                continue;
            }
            for (c, ac) in v.amplitudes().iter().enumerate() {
                m[(r, c)] += ar * ac.conj();
            }
        }
    }
    Ok(m)
}

/// The full-space projector `Q_{g,a}` onto all ladder states whose position
/// `m + j_T` is `a` modulo `g`.
pub fn modulo_projector_full(n: usize, g: usize, a: usize) -> Result<DMatrix<Complex64>> {
    if g == 0 {
        return Err(Error::OutOfRange("modulus must be positive".into()));
    }
    if a >= g {
        return Err(Error::OutOfRange(format!("class a = {a} >= g = {g}")));
    }
    let basis = schur_basis(n)?;
    let level = basis.level(n);
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    for (_, j2, col) in &level.paths {
        for l in (a..=*j2).step_by(g) {
            let v = level.matrix.column(col + l);
            for r in 0..dim {
                if v[r].norm() == 0.0 {
                    continue;
                }
                for c in 0..dim {
                    m[(r, c)] += v[r] * v[c].conj();
                }
            }
        }
    }
    Ok(m)
}

/// All `Q_{g,0}, ..., Q_{g,g-1}` as a validated projector set.
pub fn modulo_projector_set(n: usize, g: usize) -> Result<ProjectorSet> {
    let projectors: Vec<DMatrix<Complex64>> = (0..g)
        .map(|a| modulo_projector_full(n, g, a))
        .collect::<Result<_>>()?;
    ProjectorSet::new(n, projectors)
}

/// Modulo magnetic-number measurement on an arbitrary state, via the full
/// Schur basis.
pub fn modulo_meas<R: Rng + ?Sized>(
    state: &FullState,
    g: usize,
    rng: &mut R,
) -> Result<(FullState, ModuloOutcome)> {
    if g == 0 {
        return Err(Error::OutOfRange("modulus must be positive".into()));
    }
    let basis = schur_basis(state.n_qubits())?;
    let level = basis.level(state.n_qubits());
    let coords = basis.top_coords(state);
    let mut probs = vec![0.0f64; g];
    for (_, j2, col) in &level.paths {
        for l in 0..=*j2 {
            probs[l % g] += coords[col + l].norm_sqr();
        }
    }
    let a = sample_outcome(&probs, rng)?;
    let mut kept = coords.clone();
    for (_, j2, col) in &level.paths {
        for l in 0..=*j2 {
            if l % g != a {
                kept[col + l] = C0;
            }
        }
    }
    let mut post = basis.from_top_coords(&kept);
    post.normalize();
    Ok((post, ModuloOutcome { g, a }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::PICode;
    use crate::hilbert::{dicke_state, Axis, LocalOperator};
    use crate::noise::{deletion_branches, symmetrize};
    use crate::tableaux::{diagrams, enumerate_syts};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn filters_are_projectors_on_coupled_vectors() {
        for n in 2..=5 {
            for d in diagrams(n) {
                for t in enumerate_syts(&d).unwrap() {
                    let cb = CoupledBasis::build(&t).unwrap();
                    for v in cb.vectors() {
                        for (k, &j2) in t.j2_path().iter().enumerate().skip(1) {
                            let k = k + 1;
                            let kept = j_squared_projector_apply(v, k, j2).unwrap();
                            assert!(kept.fidelity(v) > 1.0 - 1e-11);
                            for &other in &admissible_j2(k) {
                                if other != j2 {
                                    let gone =
                                        j_squared_projector_apply(v, k, other).unwrap();
                                    assert!(gone.norm() < 1e-10);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_states_give_single_row_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=6 {
            let st = dicke_state(n, n / 2).unwrap();
            let (post, synd) = measure_syt(&st, &mut rng).unwrap();
            assert!(synd.tableau().is_single_row());
            assert_eq!(synd.j2_path(), (1..=n).collect::<Vec<_>>());
            assert!(post.fidelity(&st) > 1.0 - 1e-11);
        }
    }

    #[test]
    fn singlet_gives_row2_path() {
        let t = StandardYoungTableau::parse_yy("01").unwrap();
        let cb = CoupledBasis::build(&t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (_, synd) = measure_syt(cb.vector(0), &mut rng).unwrap();
        assert_eq!(synd.tableau().yy_string(), "01");
        assert_eq!(synd.serialize(), "01;1,0");
    }

    #[test]
    fn measurement_is_idempotent_in_distribution() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let st = code.codeword_full(0);
        let err = LocalOperator::pauli(Axis::Y, 2).apply(&st).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let (post, synd) = measure_syt(&err, &mut rng).unwrap();
            let (post2, synd2) = measure_syt(&post, &mut rng).unwrap();
            assert_eq!(synd, synd2);
            assert!(post2.fidelity(&post) > 1.0 - 1e-10);
        }
    }

    #[test]
    fn error_position_does_not_affect_sector_distribution() {
        // exact sector probabilities via coupled bases
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let st = code.codeword_full(0);
        let mut dists = Vec::new();
        for q in [1usize, 3] {
            let err = LocalOperator::pauli(Axis::X, q).apply(&st).unwrap();
            let mut dist = Vec::new();
            for d in diagrams(4) {
                for t in enumerate_syts(&d).unwrap() {
                    let cb = CoupledBasis::build(&t).unwrap();
                    let p: f64 = cb.coords(&err).iter().map(|c| c.norm_sqr()).sum();
                    dist.push(p);
                }
            }
            dists.push(dist);
        }
        // per-tableau probabilities may differ between positions, but the
        // per-shape distribution is permutation covariant
        let shape_sums = |dist: &[f64]| -> Vec<f64> {
            // diagrams(4) yields shapes (4,0), (3,1), (2,2) with 1, 3, 2 SYTs
            vec![
                dist[0],
                dist[1..4].iter().sum(),
                dist[4..6].iter().sum(),
            ]
        };
        let a = shape_sums(&dists[0]);
        let b = shape_sums(&dists[1]);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetrized_error_distribution_is_position_invariant() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let st = code.codeword_full(0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 2000;
        let mut hist = [[0usize; 2]; 2];
        for (i, q) in [1usize, 4].iter().enumerate() {
            let err = LocalOperator::pauli(Axis::X, *q).apply(&st).unwrap();
            for _ in 0..trials {
                let (sym, _) = symmetrize(&err, &mut rng);
                let (_, synd) = measure_syt(&sym, &mut rng).unwrap();
                if synd.tableau().is_single_row() {
                    hist[i][0] += 1;
                } else {
                    hist[i][1] += 1;
                }
            }
        }
        let f0 = hist[0][0] as f64 / trials as f64;
        let f1 = hist[1][0] as f64 / trials as f64;
        let sigma = (2.0 * 0.25 / trials as f64).sqrt();
        assert!((f0 - f1).abs() < 4.0 * sigma, "{f0} vs {f1}");
    }

    #[test]
    fn error_on_gnu9_reaches_both_shapes() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let st = code.codeword_full(0);
        let err = LocalOperator::pauli(Axis::X, 1).apply(&st).unwrap();
        let single = CoupledBasis::build(&StandardYoungTableau::single_row(9)).unwrap();
        let p_single: f64 = single.coords(&err).iter().map(|c| c.norm_sqr()).sum();
        assert!(p_single > 1e-3 && p_single < 1.0 - 1e-3);
    }

    #[test]
    fn modulo_identity_for_g_one() {
        let q = modulo_projector_full(3, 1, 0).unwrap();
        assert!((q - DMatrix::identity(8, 8)).norm() < 1e-10);
    }

    #[test]
    fn modulo_sets_are_complete() {
        for n in 2..=5 {
            for g in 2..=4 {
                modulo_projector_set(n, g).expect("valid projector set");
            }
        }
        assert!(modulo_projector_full(3, 2, 2).is_err());
        assert!(modulo_projector_full(3, 0, 0).is_err());
    }

    #[test]
    fn symmetric_modulo_classes_are_weight_classes() {
        // Q_{2,0} restricted to the symmetric sector keeps even weights
        let n = 4;
        let q = modulo_projector_full(n, 2, 0).unwrap();
        for w in 0..=n {
            let d = dicke_state(n, w).unwrap();
            let image = d.apply_matrix(&q);
            let expect = if w % 2 == 0 { 1.0 } else { 0.0 };
            assert!((image.norm_sqr() - expect).abs() < 1e-10, "w = {w}");
        }
    }

    #[test]
    fn sector_modulo_rank_example() {
        // symmetric sector of 9 qubits, g = 3, a = 0: weights 0, 3, 6, 9
        let cb = CoupledBasis::build(&StandardYoungTableau::single_row(9)).unwrap();
        let p = sector_modulo_projector(&cb, 3, 0).unwrap();
        let trace: Complex64 = (0..512).map(|i| p[(i, i)]).sum();
        assert!((trace.re - 4.0).abs() < 1e-9);
        assert!(trace.im.abs() < 1e-12);
    }

    #[test]
    fn dicke_modulo_outcomes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = dicke_state(2, 1).unwrap();
        let (_, out) = modulo_meas(&d, 2, &mut rng).unwrap();
        assert_eq!(out.a, 1);

        let d = dicke_state(4, 2).unwrap();
        let (_, out) = modulo_meas(&d, 2, &mut rng).unwrap();
        assert_eq!(out.a, 0);
    }

    #[test]
    fn gnu_codeword_modulo_class() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let st = code.codeword_full(1);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (post, out) = modulo_meas(&st, 3, &mut rng).unwrap();
        assert_eq!(out.a, 0, "weights 3 and 9 are 0 mod 3");
        assert!(post.fidelity(&st) > 1.0 - 1e-10);
    }

    #[test]
    fn deletion_shift_shows_up_as_modulo_outcome() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let plus = code.encode_full(&[r, r]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (pattern, _, sub) in deletion_branches(&plus, &[4]).unwrap() {
            let a_del = pattern.count_ones() as usize;
            let branch = sub.normalized();
            let (_, out) = modulo_meas(&branch, 2, &mut rng).unwrap();
            // s = 0: surviving weights are -a_del mod 2 = a_del mod 2
            assert_eq!(out.a, a_del % 2);
        }
    }
}
