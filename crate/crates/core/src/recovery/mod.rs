//! Stage-2 decoding: T-codes, Knill-Laflamme recovery inside a tableau
//! sector, amplitude rebalancing, teleportation, and deletion recovery.
//!
//! A T-code is the image of a PI code inside the magnetic ladder of a
//! tableau sector: the amplitude on Dicke weight `k` moves to the ladder
//! vector at physical magnetic number `m = k - N/2` (ladder position
//! `k - r2`). Weights whose magnetic number falls outside `[-j_T, j_T]`
//! are truncated and the codeword renormalized; the truncated sets of the
//! two gnu codewords are mirror images, which is what makes the ladder
//! reflection `X_schur` act as the logical bit flip on every T-code.

pub mod deletion;
pub mod pipeline;
pub mod rebalance;
pub mod teleport;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::codes::PICode;
use crate::error::{Error, Result};
use crate::hilbert::{sample_outcome, FullState, LocalOperator, SymmetricState, C0, CI};
use crate::linalg::{orthonormality_deviation, unitary_from_map};
use crate::schur::{schur_basis, CoupledBasis};
use crate::syndrome::modulo_classes;
use crate::tableaux::StandardYoungTableau;

/// A PI code carried into one tableau sector.
#[derive(Debug, Clone)]
pub struct TCode {
    tableau: StandardYoungTableau,
    /// Normalized codeword coordinates over ladder positions `0 ..= 2 j_T`.
    codewords: Vec<DVector<Complex64>>,
    /// Norms of the codeword images before renormalization.
    image_norms: Vec<f64>,
    /// Dicke weights truncated away, per codeword.
    dropped_weights: Vec<Vec<usize>>,
}

impl TCode {
    pub fn tableau(&self) -> &StandardYoungTableau {
        &self.tableau
    }

    pub fn dimension(&self) -> usize {
        self.codewords.len()
    }

    /// Ladder dimension `2 j_T + 1`.
    pub fn ladder_dim(&self) -> usize {
        self.tableau.j2() + 1
    }

    pub fn codeword_coords(&self, j: usize) -> &DVector<Complex64> {
        &self.codewords[j]
    }

    /// True when any codeword lost weight components to the sector edges.
    pub fn is_subnormalized(&self) -> bool {
        self.image_norms.iter().any(|&n| n < 1.0 - 1e-10)
    }

    pub fn image_norms(&self) -> &[f64] {
        &self.image_norms
    }

    pub fn dropped_weights(&self, j: usize) -> &[usize] {
        &self.dropped_weights[j]
    }

    /// Codeword as a full state via the sector basis.
    pub fn codeword_full(&self, basis: &CoupledBasis, j: usize) -> FullState {
        basis.from_coords(&self.codewords[j])
    }

    /// Encode logical amplitudes inside the sector.
    pub fn encode_coords(&self, alphas: &[Complex64]) -> Result<DVector<Complex64>> {
        if alphas.len() != self.dimension() {
            return Err(Error::InvalidCode(format!(
                "expected {} logical amplitudes",
                self.dimension()
            )));
        }
        let mut out = DVector::from_element(self.ladder_dim(), C0);
        for (a, w) in alphas.iter().zip(&self.codewords) {
            out += w * *a;
        }
        let n = out.norm();
        if n < 1e-12 {
            return Err(Error::Unnormalized(1.0));
        }
        Ok(out / Complex64::new(n, 0.0))
    }
}

/// Carry a PI code into the sector of tableau `t`.
///
/// Fails when some codeword loses its entire support (the tableau cannot
/// host the code).
pub fn build_t_code(code: &PICode, t: &StandardYoungTableau) -> Result<TCode> {
    let n = code.n_qubits();
    if t.n() != n {
        return Err(Error::OutOfRange(format!(
            "tableau on {} boxes given for {n} qubits",
            t.n()
        )));
    }
    let r2 = t.diagram().r2();
    let dim = t.j2() + 1;
    let mut codewords = Vec::new();
    let mut image_norms = Vec::new();
    let mut dropped_weights = Vec::new();
    for j in 0..code.dimension() {
        let amps = code.codeword_amplitudes(j);
        let mut coords = DVector::from_element(dim, C0);
        let mut dropped = Vec::new();
        for (w, a) in amps.iter().enumerate() {
            if a.norm() <= 1e-14 {
                continue;
            }
            if w < r2 || w > n - r2 {
                dropped.push(w);
            } else {
                coords[w - r2] = *a;
            }
        }
        let norm = coords.norm();
        if norm < 1e-12 {
            return Err(Error::UncorrectibleTableau(format!(
                "codeword {j} of the code has no support inside tableau {t}"
            )));
        }
        coords /= Complex64::new(norm, 0.0);
        codewords.push(coords);
        image_norms.push(norm);
        dropped_weights.push(dropped);
    }
    // codewords of a correctible tableau stay orthonormal
    let dev = orthonormality_deviation(&codewords);
    if dev > 1e-10 {
        return Err(Error::UncorrectibleTableau(format!(
            "codeword images overlap by {dev:.3e} inside tableau {t}"
        )));
    }
    Ok(TCode {
        tableau: t.clone(),
        codewords,
        image_norms,
        dropped_weights,
    })
}

/// The Gram-Schmidt decomposition of a sector into correctible spaces.
#[derive(Debug, Clone)]
pub struct CorrectibleDecomposition {
    tableau: StandardYoungTableau,
    logical_dim: usize,
    /// `v[k][j]`: orthonormal sector coordinates, `k < r_t`, `j < M`.
    v: Vec<Vec<DVector<Complex64>>>,
    /// Shared expansion `Pi^T K_i |j_L> = sum_k expansion[(k, i)] v[k][j]`.
    expansion: DMatrix<Complex64>,
}

impl CorrectibleDecomposition {
    pub fn tableau(&self) -> &StandardYoungTableau {
        &self.tableau
    }

    /// Number of correctible spaces `r_T`.
    pub fn r(&self) -> usize {
        self.v.len()
    }

    pub fn vector(&self, k: usize, j: usize) -> &DVector<Complex64> {
        &self.v[k][j]
    }

    pub fn expansion(&self) -> &DMatrix<Complex64> {
        &self.expansion
    }

    pub fn logical_dim(&self) -> usize {
        self.logical_dim
    }

    /// Projector onto the uncorrectible remainder of the sector (in sector
    /// coordinates).
    pub fn residual_projector(&self) -> DMatrix<Complex64> {
        let dim = self.tableau.j2() + 1;
        let mut p = DMatrix::identity(dim, dim);
        for vk in &self.v {
            for vkj in vk {
                for r in 0..dim {
                    for c in 0..dim {
                        p[(r, c)] -= vkj[r] * vkj[c].conj();
                    }
                }
            }
        }
        p
    }
}

/// Gram-Schmidt over the projected error images `Pi^T K_i |j_L>`.
///
/// The Knill-Laflamme condition makes the Gram matrix of the images
/// independent of `j`; the orthonormalization is therefore run with shared
/// coefficients for all logical words, and any mismatch (or any cross-word
/// overlap) is reported as a KL violation.
pub fn correctible_decomposition(
    code: &PICode,
    kraus: &[LocalOperator],
    t: &StandardYoungTableau,
) -> Result<CorrectibleDecomposition> {
    let basis = CoupledBasis::build(t)?;
    let m = code.dimension();
    let n_ops = kraus.len();
    let mut images: Vec<Vec<DVector<Complex64>>> = Vec::with_capacity(n_ops);
    let mut scale: f64 = 0.0;
    for op in kraus {
        let mut per_j = Vec::with_capacity(m);
        for j in 0..m {
            let u = basis.coords(&op.apply(&code.codeword_full(j))?);
            scale = scale.max(u.norm());
            per_j.push(u);
        }
        images.push(per_j);
    }
    let tol = 1e-8 * scale.max(1e-12);
    // cross-word orthogonality of every pair of images
    for a in &images {
        for b in &images {
            for j in 0..m {
                for k in 0..m {
                    if j != k && a[j].dotc(&b[k]).norm() > tol.max(1e-9) {
                        return Err(Error::KlViolation(format!(
                            "projected images of words {j} and {k} overlap in tableau {t}"
                        )));
                    }
                }
            }
        }
    }
    let mut v: Vec<Vec<DVector<Complex64>>> = Vec::new();
    let mut expansion_cols: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..n_ops {
        let mut coeffs = Vec::with_capacity(v.len() + 1);
        let mut w: Vec<DVector<Complex64>> = images[i].clone();
        for vk in &v {
            // shared projection coefficient, consistency-checked across j
            let c = vk[0].dotc(&w[0]);
            for j in 1..m {
                let cj = vk[j].dotc(&w[j]);
                if (cj - c).norm() > 10.0 * tol.max(1e-9) {
                    return Err(Error::KlViolation(format!(
                        "Gram-Schmidt coefficients differ across logical words in tableau {t} \
                         ({:.3e})",
                        (cj - c).norm()
                    )));
                }
            }
            for j in 0..m {
                w[j] -= &vk[j] * c;
            }
            coeffs.push(c);
        }
        let norm = w[0].norm();
        for wj in &w {
            if (wj.norm() - norm).abs() > 10.0 * tol.max(1e-9) {
                return Err(Error::KlViolation(format!(
                    "residual norms differ across logical words in tableau {t}"
                )));
            }
        }
        if norm > tol {
            for wj in &mut w {
                *wj /= Complex64::new(norm, 0.0);
            }
            v.push(w);
            coeffs.push(Complex64::new(norm, 0.0));
        }
        expansion_cols.push(coeffs);
    }
    let r = v.len();
    let sector_dim = t.j2() + 1;
    if m * r > sector_dim {
        return Err(Error::KlViolation(format!(
            "pigeon-hole bound violated: M r_T = {} > 2 j_T + 1 = {sector_dim}",
            m * r
        )));
    }
    // final orthonormality audit per logical word
    for j in 0..m {
        let cols: Vec<DVector<Complex64>> = v.iter().map(|vk| vk[j].clone()).collect();
        let dev = orthonormality_deviation(&cols);
        if dev > 1e-8 {
            return Err(Error::KlViolation(format!(
                "decomposition vectors lost orthonormality ({dev:.3e})"
            )));
        }
    }
    let mut expansion = DMatrix::from_element(r, n_ops, C0);
    for (i, col) in expansion_cols.iter().enumerate() {
        for (k, c) in col.iter().enumerate() {
            if k < r {
                expansion[(k, i)] = *c;
            }
        }
    }
    Ok(CorrectibleDecomposition {
        tableau: t.clone(),
        logical_dim: m,
        v,
        expansion,
    })
}

/// The recovery unitary `W_T` (sector coordinates): sends `v[k][j]` to the
/// ladder state at position `j r_T + k`, completed on the complement.
pub fn recovery_w(decomp: &CorrectibleDecomposition) -> Result<DMatrix<Complex64>> {
    let dim = decomp.tableau.j2() + 1;
    let r = decomp.r();
    let mut sources = Vec::with_capacity(decomp.logical_dim * r);
    let mut targets = Vec::with_capacity(decomp.logical_dim * r);
    for j in 0..decomp.logical_dim {
        for k in 0..r {
            sources.push(decomp.v[k][j].clone());
            let mut e = DVector::from_element(dim, C0);
            e[j * r + k] = Complex64::new(1.0, 0.0);
            targets.push(e);
        }
    }
    unitary_from_map(&sources, &targets, dim)
}

/// The block unitary `V_{T,k}` for modulo outcome `a = k - 1`: sends the
/// ladder state at `j r_T + a` to the `j`-th T-code codeword.
pub fn recovery_v(decomp: &CorrectibleDecomposition, tcode: &TCode, a: usize) -> Result<DMatrix<Complex64>> {
    let dim = decomp.tableau.j2() + 1;
    let r = decomp.r();
    if a >= r {
        return Err(Error::Decode(format!("modulo outcome {a} >= r_T = {r}")));
    }
    let mut sources = Vec::with_capacity(decomp.logical_dim);
    let mut targets = Vec::with_capacity(decomp.logical_dim);
    for j in 0..decomp.logical_dim {
        let mut e = DVector::from_element(dim, C0);
        e[j * r + a] = Complex64::new(1.0, 0.0);
        sources.push(e);
        targets.push(tcode.codeword_coords(j).clone());
    }
    unitary_from_map(&sources, &targets, dim)
}

/// Knill-Laflamme recovery inside a tableau sector: apply `W_T`, measure
/// the ladder position modulo `r_T`, then apply `V_{T,a+1}`. The output is
/// the input's logical content re-expressed in the T-code.
pub fn kl_recover<R: Rng + ?Sized>(
    state: &FullState,
    basis: &CoupledBasis,
    decomp: &CorrectibleDecomposition,
    tcode: &TCode,
    rng: &mut R,
) -> Result<(FullState, usize)> {
    let mut coords = basis.coords(state);
    let leak = basis.out_of_sector_norm(state);
    if leak > 1e-7 {
        return Err(Error::Decode(format!(
            "input has out-of-sector norm {leak:.3e}"
        )));
    }
    let nrm = coords.norm();
    if nrm < 1e-12 {
        return Err(Error::Decode("input vanishes in the sector".into()));
    }
    coords /= Complex64::new(nrm, 0.0);

    let w = recovery_w(decomp)?;
    coords = &w * coords;

    let r = decomp.r();
    let dim = decomp.tableau.j2() + 1;
    // support must sit below M r_T after W when the error is in the span
    let live: f64 = (decomp.logical_dim * r..dim)
        .map(|l| coords[l].norm_sqr())
        .sum();
    if live > 1e-9 {
        return Err(Error::Decode(format!(
            "state leaks outside the correctible spaces (weight {live:.3e})"
        )));
    }
    let classes = modulo_classes(dim, r);
    let probs: Vec<f64> = classes
        .iter()
        .map(|c| c.iter().map(|&l| coords[l].norm_sqr()).sum())
        .collect();
    let a = sample_outcome(&probs, rng)?;
    for (cls, positions) in classes.iter().enumerate() {
        if cls != a {
            for &l in positions {
                coords[l] = C0;
            }
        }
    }
    let nrm = coords.norm();
    coords /= Complex64::new(nrm, 0.0);

    let v = recovery_v(decomp, tcode, a)?;
    coords = &v * coords;
    Ok((basis.from_coords(&coords), a))
}

/// The ladder reflection `X_schur` on a `(2 j_T + 1)`-dimensional sector:
/// `|l> -> i |2 j_T - l>`. Conjugation reverses `J^z`, and on T-codes of
/// reflection-symmetric gnu codes it acts as the logical bit flip (times
/// the phase `i`).
pub fn x_schur_ladder(dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(dim, dim, C0);
    for l in 0..dim {
        m[(dim - 1 - l, l)] = CI;
    }
    m
}

/// `X_schur` on the symmetric subspace: Dicke weight `w -> N - w`, times `i`.
pub fn x_schur_symmetric(state: &SymmetricState) -> SymmetricState {
    let n = state.n_qubits();
    let amps = state.dicke_amplitudes();
    let reflected: Vec<Complex64> = (0..=n).map(|w| CI * amps[n - w]).collect();
    SymmetricState::from_dicke_amplitudes(n, reflected).expect("length preserved")
}

/// Dense `X_schur` on the full space: `|T, m> -> i |T, -m>` for every
/// tableau sector.
pub fn x_schur_full(n: usize) -> Result<DMatrix<Complex64>> {
    let basis = schur_basis(n)?;
    let level = basis.level(n);
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    for (_, j2, col) in &level.paths {
        for l in 0..=*j2 {
            let src = level.matrix.column(col + l);
            let dst = level.matrix.column(col + (j2 - l));
            for r in 0..dim {
                if dst[r].norm() == 0.0 {
                    continue;
                }
                for c in 0..dim {
                    m[(r, c)] += CI * dst[r] * src[c].conj();
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::paulis_of_weight;
    use crate::hilbert::{jz, C1};
    use crate::noise::symmetrize;
    use crate::syndrome::measure_syt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn weight1_with_identity(n: usize) -> Vec<LocalOperator> {
        let mut ops = vec![LocalOperator::identity()];
        ops.extend(LocalOperator::weight_one_paulis(n));
        ops
    }

    #[test]
    fn single_row_t_code_is_the_code_itself() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(9);
        let tc = build_t_code(&code, &t).unwrap();
        assert!(!tc.is_subnormalized());
        for j in 0..2 {
            for (l, c) in tc.codeword_coords(j).iter().enumerate() {
                assert!((c - code.codeword_amplitudes(j)[l]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn one_box_t_code_truncates_extreme_weights() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let t = StandardYoungTableau::parse_yy("000000001").unwrap();
        let tc = build_t_code(&code, &t).unwrap();
        assert!(tc.is_subnormalized());
        // weight 0 leaves the ladder (magnetic number -9/2 < -7/2)
        assert_eq!(tc.dropped_weights(0), &[0]);
        assert_eq!(tc.dropped_weights(1), &[9]);
        // survivors: weight 6 at ladder 5, weight 3 at ladder 2
        assert!((tc.codeword_coords(0)[5] - C1).norm() < 1e-12);
        assert!((tc.codeword_coords(1)[2] - C1).norm() < 1e-12);
        assert!((tc.image_norms()[0] - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn too_small_sector_is_rejected() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        // r2 = 4: ladder spans weights 4..5 only; both codewords vanish
        let t = StandardYoungTableau::parse_yy("010101010").unwrap();
        assert!(matches!(
            build_t_code(&code, &t),
            Err(Error::UncorrectibleTableau(_))
        ));
    }

    #[test]
    fn trivial_decomposition_is_the_code() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(9);
        let d = correctible_decomposition(&code, &[LocalOperator::identity()], &t).unwrap();
        assert_eq!(d.r(), 1);
        for j in 0..2 {
            let overlap = d
                .vector(0, j)
                .dotc(&DVector::from_column_slice(code.codeword_amplitudes(j)));
            assert!((overlap.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn weight1_decomposition_obeys_pigeonhole() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(9);
        let d = correctible_decomposition(&code, &weight1_with_identity(9), &t).unwrap();
        assert!(d.r() >= 1 && d.r() <= 5, "r_T = {}", d.r());
        // expansion reproduces the images
        let basis = CoupledBasis::build(&t).unwrap();
        for (i, op) in weight1_with_identity(9).iter().enumerate() {
            for j in 0..2 {
                let u = basis.coords(&op.apply(&code.codeword_full(j)).unwrap());
                let mut rebuilt = DVector::from_element(basis.dim(), C0);
                for k in 0..d.r() {
                    rebuilt += d.vector(k, j) * d.expansion()[(k, i)];
                }
                assert!((u - rebuilt).norm() < 1e-8, "op {i} word {j}");
            }
        }
    }

    #[test]
    fn uncorrectible_channel_raises_kl_violation() {
        let code = PICode::gnu(2, 2, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(4);
        let mut ops = weight1_with_identity(4);
        ops.extend(paulis_of_weight(4, 2));
        assert!(matches!(
            correctible_decomposition(&code, &ops, &t),
            Err(Error::KlViolation(_))
        ));
    }

    #[test]
    fn kl_recover_restores_trivial_channel() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let t = StandardYoungTableau::single_row(9);
        let basis = CoupledBasis::build(&t).unwrap();
        let d = correctible_decomposition(&code, &[LocalOperator::identity()], &t).unwrap();
        let tc = build_t_code(&code, &t).unwrap();
        let alphas = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let input = code.encode_full(&alphas).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (out, a) = kl_recover(&input, &basis, &d, &tc, &mut rng).unwrap();
        assert_eq!(a, 0, "r_T = 1 forces outcome 0");
        assert!(out.fidelity(&input) > 1.0 - 1e-10);
    }

    #[test]
    fn kl_recover_corrects_single_paulis_through_syndrome() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let kraus = weight1_with_identity(9);
        for (trial, op) in [
            LocalOperator::pauli(crate::hilbert::Axis::X, 3),
            LocalOperator::pauli(crate::hilbert::Axis::Y, 7),
            LocalOperator::pauli(crate::hilbert::Axis::Z, 1),
        ]
        .iter()
        .enumerate()
        {
            let alphas = [Complex64::new(0.48, 0.36), Complex64::new(0.6, -0.53)];
            let norm = (alphas[0].norm_sqr() + alphas[1].norm_sqr()).sqrt();
            let alphas = [alphas[0] / norm, alphas[1] / norm];
            let encoded = code.encode_full(&alphas).unwrap();
            let erred = op.apply(&encoded).unwrap();
            let (sym, _) = symmetrize(&erred, &mut rng);
            let (collapsed, synd) = measure_syt(&sym, &mut rng).unwrap();
            let t = synd.tableau().clone();
            let basis = CoupledBasis::build(&t).unwrap();
            let d = correctible_decomposition(&code, &kraus, &t).unwrap();
            let tc = build_t_code(&code, &t).unwrap();
            let (out, _) = kl_recover(&collapsed, &basis, &d, &tc, &mut rng).unwrap();
            // output must match the T-code image of the logical input
            let expect_coords = tc.encode_coords(&alphas).unwrap();
            let expect = basis.from_coords(&expect_coords);
            assert!(
                out.fidelity(&expect) > 1.0 - 1e-9,
                "trial {trial}: fidelity {}",
                out.fidelity(&expect)
            );
        }
    }

    #[test]
    fn x_schur_algebra() {
        for dim in 1..=6 {
            let x = x_schur_ladder(dim);
            let sq = &x * &x;
            let expect = DMatrix::<Complex64>::identity(dim, dim) * (-C1);
            assert!((sq - expect).norm() < 1e-12, "X^2 = -I");
        }
        // integer-j sector: the central rung is fixed up to the phase i
        let x = x_schur_ladder(3);
        let mut center = DVector::from_element(3, C0);
        center[1] = C1;
        let image = &x * &center;
        assert!((image[1] - CI).norm() < 1e-12);
    }

    #[test]
    fn x_schur_flips_gnu_codewords() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        let zero = code.codeword(0);
        let one = code.codeword(1);
        let flipped = x_schur_symmetric(&zero);
        let overlap = one.inner(&flipped);
        assert!((overlap - CI).norm() < 1e-12, "X_schur |0_L> = i |1_L>");
    }

    #[test]
    fn x_schur_full_reverses_jz() {
        for n in 1..=4 {
            let x = x_schur_full(n).unwrap();
            let sq = &x * &x;
            let expect = DMatrix::<Complex64>::identity(1 << n, 1 << n) * (-C1);
            assert!((sq - expect).norm() < 1e-10);
            let z = jz(n).matrix().clone();
            let conj = x.adjoint() * &z * &x;
            assert!((conj + z).norm() < 1e-10, "X† Jz X = -Jz");
        }
    }

    #[test]
    fn x_schur_acts_as_logical_x_on_t_codes() {
        let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
        for yy in ["000000000", "000000001", "000010000"] {
            let t = StandardYoungTableau::parse_yy(yy).unwrap();
            let tc = build_t_code(&code, &t).unwrap();
            let x = x_schur_ladder(tc.ladder_dim());
            let image = &x * tc.codeword_coords(0);
            let overlap = tc.codeword_coords(1).dotc(&image);
            assert!((overlap - CI).norm() < 1e-10, "tableau {yy}");
        }
    }
}
