//! Dense N-qubit state vectors, collective angular-momentum operators,
//! permutations and projective measurement.
//!
//! Basis convention, fixed once for the whole crate: the computational
//! basis is ordered by bitstring value with qubit 1 as the most significant
//! bit, so `|x_1 ... x_N>` has index `x_1 2^{N-1} + ... + x_N`. The weight
//! of a basis state is its popcount (number of qubits in `|1>`).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub(crate) const C0: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C1: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const CI: Complex64 = Complex64::new(0.0, 1.0);

/// Probability below which a measurement outcome is never sampled.
pub const PROB_FLOOR: f64 = 1e-12;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Dense state vector over the 2^N computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    n: usize,
    amp: Vec<Complex64>,
}

impl FullState {
    pub fn from_amplitudes(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() != 1 << n {
            return Err(Error::OutOfRange(format!(
                "amplitude vector has length {}, expected 2^{n}",
                amp.len()
            )));
        }
        Ok(Self { n, amp })
    }

    /// Computational basis state `|x>`.
    pub fn basis(n: usize, x: usize) -> Self {
        let mut amp = vec![C0; 1 << n];
        amp[x] = C1;
        Self { n, amp }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            amp: vec![C0; 1 << n],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&mut self) -> f64 {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amp {
                *a /= n;
            }
        }
        n
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amp {
            *a *= c;
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: Complex64) {
        for (a, b) in self.amp.iter_mut().zip(&other.amp) {
            *a += c * b;
        }
    }

    /// `|self> ⊗ |other>`, with `self` on the most significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amp = vec![C0; self.amp.len() * other.amp.len()];
        for (i, a) in self.amp.iter().enumerate() {
            if *a == C0 {
                continue;
            }
            for (j, b) in other.amp.iter().enumerate() {
                amp[(i << other.n) | j] = a * b;
            }
        }
        Self {
            n: self.n + other.n,
            amp,
        }
    }

    pub fn to_vector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.amp)
    }

    pub fn from_vector(n: usize, v: &DVector<Complex64>) -> Result<Self> {
        Self::from_amplitudes(n, v.iter().copied().collect())
    }

    /// Apply a dense operator. The matrix dimension must match.
    pub fn apply_matrix(&self, m: &DMatrix<Complex64>) -> Self {
        let v = m * self.to_vector();
        Self {
            n: self.n,
            amp: v.iter().copied().collect(),
        }
    }
}

/// Uniform-superposition Dicke state `|D^N_w>`.
pub fn dicke_state(n: usize, w: usize) -> Result<FullState> {
    if w > n {
        return Err(Error::OutOfRange(format!("weight {w} > N = {n}")));
    }
    let mut st = FullState::zeros(n);
    let c = Complex64::new(1.0 / (binomial(n, w) as f64).sqrt(), 0.0);
    for x in 0..1usize << n {
        if (x.count_ones() as usize) == w {
            st.amp[x] = c;
        }
    }
    Ok(st)
}

/// State in the symmetric subspace, stored by Dicke-weight amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n: usize,
    dicke_amp: Vec<Complex64>,
}

impl SymmetricState {
    pub fn from_dicke_amplitudes(n: usize, dicke_amp: Vec<Complex64>) -> Result<Self> {
        if dicke_amp.len() != n + 1 {
            return Err(Error::OutOfRange(format!(
                "Dicke amplitude vector has length {}, expected N + 1 = {}",
                dicke_amp.len(),
                n + 1
            )));
        }
        Ok(Self { n, dicke_amp })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dicke_amplitudes(&self) -> &[Complex64] {
        &self.dicke_amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dicke_amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> f64 {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            for a in &mut self.dicke_amp {
                *a /= n;
            }
        }
        n
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.dicke_amp
            .iter()
            .zip(&other.dicke_amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Expand into the full 2^N space.
    pub fn embed(&self) -> FullState {
        let mut st = FullState::zeros(self.n);
        let scale: Vec<f64> = (0..=self.n)
            .map(|w| 1.0 / (binomial(self.n, w) as f64).sqrt())
            .collect();
        for x in 0..1usize << self.n {
            let w = x.count_ones() as usize;
            st.amp[x] = self.dicke_amp[w] * scale[w];
        }
        st
    }

    /// Project a full state onto the symmetric subspace.
    ///
    /// Round-trips exactly with [`SymmetricState::embed`]; on general input
    /// the result is the (sub-normalized) symmetric component.
    pub fn project(state: &FullState) -> Self {
        let n = state.n;
        let mut dicke_amp = vec![C0; n + 1];
        for (x, a) in state.amp.iter().enumerate() {
            dicke_amp[x.count_ones() as usize] += a;
        }
        for (w, a) in dicke_amp.iter_mut().enumerate() {
            *a /= (binomial(n, w) as f64).sqrt();
        }
        Self { n, dicke_amp }
    }
}

/// Dense Hermitian observable.
#[derive(Debug, Clone)]
pub struct Observable {
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl Observable {
    pub fn new(n: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != 1 << n || matrix.ncols() != 1 << n {
            return Err(Error::OutOfRange("observable dimension mismatch".into()));
        }
        let dev = hermiticity_deviation(&matrix);
        if dev > 1e-12 {
            return Err(Error::OutOfRange(format!(
                "matrix is not Hermitian (deviation {dev:.3e})"
            )));
        }
        Ok(Self { n, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, state: &FullState) -> FullState {
        state.apply_matrix(&self.matrix)
    }

    pub fn expectation(&self, state: &FullState) -> f64 {
        state.inner(&self.apply(state)).re
    }
}

fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Pauli axes for single-qubit operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn matrix(self) -> DMatrix<Complex64> {
        match self {
            Axis::X => DMatrix::from_row_slice(2, 2, &[C0, C1, C1, C0]),
            Axis::Y => DMatrix::from_row_slice(2, 2, &[C0, -CI, CI, C0]),
            Axis::Z => DMatrix::from_row_slice(2, 2, &[C1, C0, C0, -C1]),
        }
    }

    pub fn label(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

/// Apply a single-qubit Pauli on qubit `q` (1-based) without building a matrix.
pub fn apply_pauli(state: &FullState, axis: Axis, q: usize) -> Result<FullState> {
    let n = state.n;
    if q == 0 || q > n {
        return Err(Error::BadSupport(format!("qubit {q} out of 1..={n}")));
    }
    let bit = 1usize << (n - q);
    let mut out = FullState::zeros(n);
    match axis {
        Axis::X => {
            for x in 0..state.amp.len() {
                out.amp[x ^ bit] = state.amp[x];
            }
        }
        Axis::Y => {
            for x in 0..state.amp.len() {
                // Y|0> = i|1>, Y|1> = -i|0>
                let c = if x & bit == 0 { CI } else { -CI };
                out.amp[x ^ bit] = c * state.amp[x];
            }
        }
        Axis::Z => {
            for x in 0..state.amp.len() {
                let s = if x & bit == 0 { 1.0 } else { -1.0 };
                out.amp[x] = s * state.amp[x];
            }
        }
    }
    Ok(out)
}

/// Matrix-free `J^axis_[k] = (1/2) sum_{i<=k} sigma^axis_i`.
pub fn apply_j_component(state: &FullState, axis: Axis, k: usize) -> Result<FullState> {
    let mut out = FullState::zeros(state.n);
    for q in 1..=k {
        out.add_scaled(&apply_pauli(state, axis, q)?, C1);
    }
    out.scale(Complex64::new(0.5, 0.0));
    Ok(out)
}

/// Matrix-free total angular momentum squared of the first `k` qubits.
pub fn apply_j_squared(state: &FullState, k: usize) -> Result<FullState> {
    let mut out = FullState::zeros(state.n);
    for axis in Axis::ALL {
        let once = apply_j_component(state, axis, k)?;
        out.add_scaled(&apply_j_component(&once, axis, k)?, C1);
    }
    Ok(out)
}

/// Collective `J^z` over all qubits; diagonal with entry `(N - 2 w)/2`
/// on weight-`w` basis states.
pub fn jz(n: usize) -> Observable {
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    for x in 0..dim {
        let w = x.count_ones() as f64;
        m[(x, x)] = Complex64::new((n as f64 - 2.0 * w) / 2.0, 0.0);
    }
    Observable { n, matrix: m }
}

/// Collective `J^x` over all qubits.
pub fn jx(n: usize) -> Observable {
    j_component(n, Axis::X, n)
}

/// Collective `J^y` over all qubits.
pub fn jy(n: usize) -> Observable {
    j_component(n, Axis::Y, n)
}

fn j_component(n: usize, axis: Axis, k: usize) -> Observable {
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    for col in 0..dim {
        let basis = FullState::basis(n, col);
        let image = apply_j_component(&basis, axis, k).expect("valid support");
        for (row, a) in image.amp.iter().enumerate() {
            m[(row, col)] += a;
        }
    }
    Observable { n, matrix: m }
}

/// Dense `J^2_[k]` on `N` qubits (identity on qubits `k+1..N`).
///
/// Eigenvalues are `j (j + 1)` with `j` drawn from the nested set `T_k`.
pub fn j_squared(n: usize, k: usize) -> Result<Observable> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} out of 1..={n}")));
    }
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    for col in 0..dim {
        let basis = FullState::basis(n, col);
        let image = apply_j_squared(&basis, k)?;
        for (row, a) in image.amp.iter().enumerate() {
            m[(row, col)] += a;
        }
    }
    Ok(Observable { n, matrix: m })
}

/// Doubled total-spin values `2 j` admissible for `k` coupled qubits
/// (the set `T_k`), largest first.
pub fn admissible_j2(k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j2 = k;
    loop {
        out.push(j2);
        if j2 < 2 {
            break;
        }
        j2 -= 2;
    }
    out
}

/// A complete set of projectors for a projective measurement.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    n: usize,
    projectors: Vec<DMatrix<Complex64>>,
}

impl ProjectorSet {
    pub fn new(n: usize, projectors: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let dim = 1usize << n;
        let mut sum = DMatrix::from_element(dim, dim, C0);
        for p in &projectors {
            if p.nrows() != dim || p.ncols() != dim {
                return Err(Error::OutOfRange("projector dimension mismatch".into()));
            }
            let herm = hermiticity_deviation(p);
            let idem = (p * p - p).norm();
            if herm > 1e-10 || idem > 1e-10 {
                return Err(Error::IncompleteProjectors {
                    deviation: herm.max(idem),
                });
            }
            sum += p;
        }
        for i in 0..dim {
            sum[(i, i)] -= C1;
        }
        let deviation = sum.norm();
        if deviation > 1e-10 {
            return Err(Error::IncompleteProjectors { deviation });
        }
        Ok(Self { n, projectors })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projector(&self, i: usize) -> &DMatrix<Complex64> {
        &self.projectors[i]
    }
}

/// Sample an outcome index given Born probabilities.
///
/// Probabilities are renormalized when their sum strays from one by less
/// than 1e-9 and rejected otherwise; outcomes below [`PROB_FLOOR`] are
/// never sampled.
pub(crate) fn sample_outcome<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> Result<usize> {
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::IncompleteProjectors {
            deviation: (total - 1.0).abs(),
        });
    }
    let u: f64 = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_valid = None;
    for (i, &p) in probs.iter().enumerate() {
        if p < PROB_FLOOR {
            continue;
        }
        last_valid = Some(i);
        acc += p;
        if u < acc {
            return Ok(i);
        }
    }
    last_valid.ok_or_else(|| Error::IncompleteProjectors { deviation: 1.0 })
}

/// Projective measurement of `state` with respect to a complete projector set.
///
/// Returns the collapsed, renormalized state and the sampled outcome index.
pub fn proj_meas<R: Rng + ?Sized>(
    state: &FullState,
    projectors: &ProjectorSet,
    rng: &mut R,
) -> Result<(FullState, usize)> {
    let images: Vec<FullState> = projectors
        .projectors
        .iter()
        .map(|p| state.apply_matrix(p))
        .collect();
    let probs: Vec<f64> = images.iter().map(|s| s.norm_sqr()).collect();
    let outcome = sample_outcome(&probs, rng)?;
    let mut post = images[outcome].clone();
    post.normalize();
    Ok((post, outcome))
}

/// A permutation of qubit labels `1..N`.
///
/// `P_sigma |x_1 ... x_N> = |y_1 ... y_N>` with `y_{sigma(i)} = x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    /// 0-based: qubit `i+1` moves to position `targets[i] + 1`.
    targets: Vec<usize>,
}

impl Permutation {
    /// Build from 1-based targets `sigma(1), ..., sigma(N)`.
    pub fn new(sigma: &[usize]) -> Result<Self> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &t in sigma {
            if t == 0 || t > n || seen[t - 1] {
                return Err(Error::BadPermutation);
            }
            seen[t - 1] = true;
        }
        Ok(Self {
            targets: sigma.iter().map(|&t| t - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            targets: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    /// 1-based targets `sigma(1), ..., sigma(N)`.
    pub fn targets_one_based(&self) -> Vec<usize> {
        self.targets.iter().map(|&t| t + 1).collect()
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut targets: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            targets.swap(i, j);
        }
        Self { targets }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.targets.len()];
        for (i, &t) in self.targets.iter().enumerate() {
            inv[t] = i;
        }
        Self { targets: inv }
    }

    /// Move the listed (1-based) qubits to the end, preserving relative order
    /// on both the listed and unlisted qubits.
    pub fn send_to_end(n: usize, qubits: &[usize]) -> Result<Self> {
        let mut is_listed = vec![false; n];
        for &q in qubits {
            if q == 0 || q > n {
                return Err(Error::BadSupport(format!("qubit {q} out of 1..={n}")));
            }
            if is_listed[q - 1] {
                return Err(Error::BadSupport(format!("qubit {q} listed twice")));
            }
            is_listed[q - 1] = true;
        }
        let mut targets = vec![0usize; n];
        let mut front = 0;
        let mut back = n - qubits.len();
        for i in 0..n {
            if is_listed[i] {
                targets[i] = back;
                back += 1;
            } else {
                targets[i] = front;
                front += 1;
            }
        }
        Ok(Self { targets })
    }

    /// Bit-reshuffled basis index under the permutation.
    pub fn apply_index(&self, x: usize) -> usize {
        let n = self.targets.len();
        let mut y = 0usize;
        for (i, &t) in self.targets.iter().enumerate() {
            let bit = (x >> (n - 1 - i)) & 1;
            y |= bit << (n - 1 - t);
        }
        y
    }

    pub fn apply(&self, state: &FullState) -> FullState {
        let mut out = FullState::zeros(state.n);
        for (x, a) in state.amp.iter().enumerate() {
            out.amp[self.apply_index(x)] = *a;
        }
        out
    }

    /// Dense unitary matrix representation.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.targets.len();
        let mut m = DMatrix::from_element(dim, dim, C0);
        for x in 0..dim {
            m[(self.apply_index(x), x)] = C1;
        }
        m
    }
}

/// A local operator on a few qubits: Kraus branch, Pauli product, or any
/// weight-`t` matrix together with its support.
#[derive(Debug, Clone)]
pub struct LocalOperator {
    /// 1-based distinct support qubits; the first listed qubit is the most
    /// significant bit of the local index.
    support: Vec<usize>,
    matrix: DMatrix<Complex64>,
    label: String,
}

impl LocalOperator {
    pub fn new(support: Vec<usize>, matrix: DMatrix<Complex64>, label: impl Into<String>) -> Result<Self> {
        let t = support.len();
        if matrix.nrows() != 1 << t || matrix.ncols() != 1 << t {
            return Err(Error::BadSupport(format!(
                "matrix dimension {} does not match support size {t}",
                matrix.nrows()
            )));
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != support.len() || sorted.iter().any(|&q| q == 0) {
            return Err(Error::BadSupport("support indices must be distinct and positive".into()));
        }
        Ok(Self {
            support,
            matrix,
            label: label.into(),
        })
    }

    pub fn identity() -> Self {
        Self {
            support: vec![],
            matrix: DMatrix::from_element(1, 1, C1),
            label: "I".into(),
        }
    }

    /// Single-qubit Pauli on qubit `q`.
    pub fn pauli(axis: Axis, q: usize) -> Self {
        Self {
            support: vec![q],
            matrix: axis.matrix(),
            label: format!("{}{}", axis.label(), q),
        }
    }

    /// All weight-one Paulis on `n` qubits.
    pub fn weight_one_paulis(n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(3 * n);
        for q in 1..=n {
            for axis in Axis::ALL {
                out.push(Self::pauli(axis, q));
            }
        }
        out
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            support: self.support.clone(),
            matrix: &self.matrix * c,
            label: self.label.clone(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            support: self.support.clone(),
            matrix: self.matrix.adjoint(),
            label: format!("{}†", self.label),
        }
    }

    /// Apply to a state. No normalization is performed: Kraus branches are
    /// sub-normalized by design.
    pub fn apply(&self, state: &FullState) -> Result<FullState> {
        let n = state.n;
        let t = self.support.len();
        if t == 0 {
            let mut out = state.clone();
            out.scale(self.matrix[(0, 0)]);
            return Ok(out);
        }
        if self.support.iter().any(|&q| q > n) {
            return Err(Error::BadSupport(format!(
                "support {:?} exceeds N = {n}",
                self.support
            )));
        }
        let bits: Vec<usize> = self.support.iter().map(|&q| n - q).collect();
        let mut out = FullState::zeros(n);
        for x in 0..state.amp.len() {
            let a = state.amp[x];
            if a == C0 {
                continue;
            }
            let mut col = 0usize;
            for (pos, &b) in bits.iter().enumerate() {
                col |= ((x >> b) & 1) << (t - 1 - pos);
            }
            let cleared = bits.iter().fold(x, |acc, &b| acc & !(1 << b));
            for row in 0..1usize << t {
                let c = self.matrix[(row, col)];
                if c == C0 {
                    continue;
                }
                let mut y = cleared;
                for (pos, &b) in bits.iter().enumerate() {
                    y |= ((row >> (t - 1 - pos)) & 1) << b;
                }
                out.amp[y] += c * a;
            }
        }
        Ok(out)
    }

    /// Dense matrix on the full 2^N space.
    pub fn embed(&self, n: usize) -> Result<DMatrix<Complex64>> {
        let dim = 1usize << n;
        let mut m = DMatrix::from_element(dim, dim, C0);
        for col in 0..dim {
            let image = self.apply(&FullState::basis(n, col))?;
            for (row, a) in image.amp.iter().enumerate() {
                m[(row, col)] += a;
            }
        }
        Ok(m)
    }
}

/// Apply a weight-`t` local operator to a state (spec-level convenience).
pub fn apply_weight_t_operator(state: &FullState, op: &LocalOperator) -> Result<FullState> {
    op.apply(state)
}
