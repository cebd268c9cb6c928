//! Coupled (Schur-Weyl) basis construction and inverse Clebsch-Gordan steps.
//!
//! For a standard Young tableau `T` with sector spin `j_T`, the coupled
//! basis consists of `2 j_T + 1` joint eigenvectors of every nested
//! `J^2_[k]` along `T`'s Bratteli path. Vectors are indexed by the ladder
//! position `l = 0 ..= 2 j_T` counted from the bottom of the magnetic
//! ladder (`m = l - j_T` with spin-up on `|1>`), so a vector at ladder
//! position `l` is supported on computational states of Hamming weight
//! `l + r2`. On the single-row tableau the ladder vector `l` is exactly the
//! Dicke state `|D^N_l>`.
//!
//! Couplings use the Condon-Shortley convention: all coefficients real,
//! and the coupled vector built by
//!
//! ```text
//! |j'+1/2, m> =  sqrt((j'+m+1/2)/(2j'+1)) |j', m-1/2>|1>
//!             +  sqrt((j'-m+1/2)/(2j'+1)) |j', m+1/2>|0>
//! |j'-1/2, m> = -sqrt((j'-m+1/2)/(2j'+1)) |j', m-1/2>|1>
//!             +  sqrt((j'+m+1/2)/(2j'+1)) |j', m+1/2>|0>
//! ```

pub mod rus;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{FullState, C0};
use crate::tableaux::StandardYoungTableau;

/// Guard for building a single tableau's coupled basis.
pub const MAX_COUPLED_QUBITS: usize = 14;
/// Guard for materializing the full per-level Schur bases.
pub const MAX_SCHUR_BASIS_QUBITS: usize = 11;

/// Direction of one Bratteli step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Up,
    Down,
}

/// Clebsch-Gordan coefficient for attaching one qubit.
///
/// `j2_parent` is the doubled parent spin, `step` the branch, `m2_child`
/// the doubled child magnetic number, and `bit` the attached qubit value
/// (1 contributes `+1/2`). Returns zero when the parent magnetic number
/// falls outside its ladder.
fn cg(j2_parent: usize, step: Step, m2_child: i64, bit: u8) -> f64 {
    let jp = j2_parent as i64;
    let m2_parent = if bit == 1 { m2_child - 1 } else { m2_child + 1 };
    if m2_parent.abs() > jp {
        return 0.0;
    }
    let denom = 2.0 * (jp as f64 + 1.0);
    match (step, bit) {
        (Step::Up, 1) => (((jp + m2_child + 1) as f64) / denom).sqrt(),
        (Step::Up, 0) => (((jp - m2_child + 1) as f64) / denom).sqrt(),
        (Step::Down, 1) => -(((jp - m2_child + 1) as f64) / denom).sqrt(),
        (Step::Down, 0) => (((jp + m2_child + 1) as f64) / denom).sqrt(),
        _ => unreachable!(),
    }
}

/// The coupled basis `{|l_T>}` of one tableau sector.
#[derive(Debug, Clone)]
pub struct CoupledBasis {
    tableau: StandardYoungTableau,
    vectors: Vec<FullState>,
}

impl CoupledBasis {
    /// Build by recursive coupling along the tableau's Bratteli path.
    pub fn build(tableau: &StandardYoungTableau) -> Result<Self> {
        let n = tableau.n();
        if n > MAX_COUPLED_QUBITS {
            return Err(Error::SizeLimit(format!(
                "coupled basis capped at N <= {MAX_COUPLED_QUBITS}, got {n}"
            )));
        }
        // level 1: |l=0> = |0>, |l=1> = |1>
        let mut vectors = vec![FullState::basis(1, 0), FullState::basis(1, 1)];
        let mut j2_prev = 1usize;
        for k in 2..=n {
            let down = tableau.yy()[k - 1];
            let j2 = if down { j2_prev - 1 } else { j2_prev + 1 };
            let step = if down { Step::Down } else { Step::Up };
            let mut next = Vec::with_capacity(j2 + 1);
            for l in 0..=j2 {
                let m2 = 2 * l as i64 - j2 as i64;
                let mut v = FullState::zeros(k);
                for (bit, dm) in [(1u8, -1i64), (0u8, 1i64)] {
                    let c = cg(j2_prev, step, m2, bit);
                    if c == 0.0 {
                        continue;
                    }
                    let m2p = m2 + dm;
                    let lp = ((m2p + j2_prev as i64) / 2) as usize;
                    let parent = &vectors[lp];
                    let cc = Complex64::new(c, 0.0);
                    for (x, a) in parent.amplitudes().iter().enumerate() {
                        if *a != C0 {
                            v.amplitudes_mut()[(x << 1) | bit as usize] += cc * a;
                        }
                    }
                }
                next.push(v);
            }
            vectors = next;
            j2_prev = j2;
        }
        Ok(Self {
            tableau: tableau.clone(),
            vectors,
        })
    }

    pub fn tableau(&self) -> &StandardYoungTableau {
        &self.tableau
    }

    pub fn j2(&self) -> usize {
        self.tableau.j2()
    }

    /// Magnetic dimension `2 j_T + 1`.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[FullState] {
        &self.vectors
    }

    /// Ladder vector at position `l` (Hamming weight `l + r2`).
    pub fn vector(&self, l: usize) -> &FullState {
        &self.vectors[l]
    }

    /// Sector coordinates `<l_T | psi>`.
    pub fn coords(&self, state: &FullState) -> DVector<Complex64> {
        DVector::from_iterator(self.dim(), self.vectors.iter().map(|v| v.inner(state)))
    }

    /// Reassemble a full state from sector coordinates.
    pub fn from_coords(&self, coords: &DVector<Complex64>) -> FullState {
        let mut out = FullState::zeros(self.tableau.n());
        for (v, c) in self.vectors.iter().zip(coords.iter()) {
            out.add_scaled(v, *c);
        }
        out
    }

    /// Norm of the component of `state` outside the sector span.
    pub fn out_of_sector_norm(&self, state: &FullState) -> f64 {
        let coords = self.coords(state);
        let inside: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
        (state.norm_sqr() - inside).max(0.0).sqrt()
    }
}

/// One level of the full Schur basis: every coupled vector on the first
/// `k` qubits, columns ordered by (lexicographic path, ladder position).
#[derive(Debug)]
pub struct LevelBasis {
    pub k: usize,
    /// `(yy path, doubled sector spin, first column index)` per path.
    pub paths: Vec<(Vec<bool>, usize, usize)>,
    /// 2^k x 2^k unitary whose columns are the coupled vectors.
    pub matrix: DMatrix<Complex64>,
    /// For each column: the decoupled slot `(parent column at level k-1, bit)`
    /// under the inverse Clebsch-Gordan step.
    pub decouple_slot: Vec<(usize, u8)>,
}

/// Full per-level Schur bases for a register of `n` qubits.
#[derive(Debug)]
pub struct SchurBasis {
    n: usize,
    levels: Vec<LevelBasis>,
}

impl SchurBasis {
    fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("need at least one qubit".into()));
        }
        if n > MAX_SCHUR_BASIS_QUBITS {
            return Err(Error::SizeLimit(format!(
                "full Schur basis capped at N <= {MAX_SCHUR_BASIS_QUBITS}, got {n}"
            )));
        }
        let mut levels: Vec<LevelBasis> = Vec::with_capacity(n);
        levels.push(LevelBasis {
            k: 1,
            paths: vec![(vec![false], 1, 0)],
            matrix: DMatrix::identity(2, 2),
            decouple_slot: vec![(0, 0), (0, 1)],
        });
        for k in 2..=n {
            let prev = &levels[k - 2];
            let dim = 1usize << k;
            let mut matrix = DMatrix::from_element(dim, dim, C0);
            let mut paths = Vec::new();
            let mut decouple_slot = Vec::new();
            let mut col = 0usize;
            for (pyy, pj2, pcol) in &prev.paths {
                for (down, step) in [(false, Step::Up), (true, Step::Down)] {
                    if down && *pj2 == 0 {
                        continue;
                    }
                    let j2 = if down { pj2 - 1 } else { pj2 + 1 };
                    let mut yy = pyy.clone();
                    yy.push(down);
                    paths.push((yy, j2, col));
                    for l in 0..=j2 {
                        let m2 = 2 * l as i64 - j2 as i64;
                        for (bit, dm) in [(1u8, -1i64), (0u8, 1i64)] {
                            let c = cg(*pj2, step, m2, bit);
                            if c == 0.0 {
                                continue;
                            }
                            let lp = ((m2 + dm + *pj2 as i64) / 2) as usize;
                            let cc = Complex64::new(c, 0.0);
                            for x in 0..1usize << (k - 1) {
                                let a = prev.matrix[(x, pcol + lp)];
                                if a != C0 {
                                    matrix[((x << 1) | bit as usize, col + l)] += cc * a;
                                }
                            }
                        }
                        // decoupled slot: down-steps and the up-step top rung
                        // land on bit 1, all other up rungs on bit 0
                        decouple_slot.push(if down {
                            (pcol + l, 1)
                        } else if l == j2 {
                            (pcol + j2 - 1, 1)
                        } else {
                            (pcol + l, 0)
                        });
                    }
                    col += j2 + 1;
                }
            }
            debug_assert_eq!(col, dim);
            levels.push(LevelBasis {
                k,
                paths,
                matrix,
                decouple_slot,
            });
        }
        Ok(Self { n, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self, k: usize) -> &LevelBasis {
        &self.levels[k - 1]
    }

    /// Column range of a path at its level.
    pub fn column_of(&self, tableau: &StandardYoungTableau) -> Option<usize> {
        let level = self.level(tableau.n());
        level
            .paths
            .iter()
            .find(|(yy, _, _)| yy == tableau.yy())
            .map(|(_, _, col)| *col)
    }

    /// Coordinates of a state over the complete top-level coupled basis.
    pub fn top_coords(&self, state: &FullState) -> DVector<Complex64> {
        let level = self.level(self.n);
        level.matrix.ad_mul(&state.to_vector())
    }

    pub fn from_top_coords(&self, coords: &DVector<Complex64>) -> FullState {
        let level = self.level(self.n);
        FullState::from_vector(self.n, &(&level.matrix * coords)).expect("dimension matches")
    }
}

static SCHUR_CACHE: OnceLock<Mutex<HashMap<usize, Arc<SchurBasis>>>> = OnceLock::new();

/// Cached full Schur basis for `n` qubits.
pub fn schur_basis(n: usize) -> Result<Arc<SchurBasis>> {
    let cache = SCHUR_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("schur cache poisoned");
    if let Some(b) = map.get(&n) {
        return Ok(b.clone());
    }
    let built = Arc::new(SchurBasis::build(n)?);
    map.insert(n, built.clone());
    Ok(built)
}

/// Apply the inverse Clebsch-Gordan step at level `k`: rotate the coupled
/// basis of qubits `1..k` into (coupled basis of `1..k-1`) tensor (qubit
/// `k` computational). Ladder positions are preserved; qubit `k` records a
/// down-step as `|1>`, an up-step as `|0>`, with the stretched top rung of
/// each up sector written to `(top of parent, |1>)`.
pub fn inverse_cg_step(state: &FullState, k: usize, basis: &SchurBasis) -> Result<FullState> {
    cg_step_inner(state, k, basis, false)
}

/// Adjoint of [`inverse_cg_step`] (recouples qubit `k`).
pub fn forward_cg_step(state: &FullState, k: usize, basis: &SchurBasis) -> Result<FullState> {
    cg_step_inner(state, k, basis, true)
}

fn cg_step_inner(state: &FullState, k: usize, basis: &SchurBasis, forward: bool) -> Result<FullState> {
    let n = state.n_qubits();
    if k < 2 || k > n {
        return Err(Error::OutOfRange(format!("level k = {k} out of 2..={n}")));
    }
    if basis.n() < k {
        return Err(Error::OutOfRange(format!(
            "Schur basis holds {} levels, need {k}",
            basis.n()
        )));
    }
    let level = basis.level(k);
    let prev = basis.level(k - 1);
    let dim_k = 1usize << k;
    let half = 1usize << (k - 1);
    let suffix = 1usize << (n - k);
    let mut out = FullState::zeros(n);
    let mut block = DVector::from_element(dim_k, C0);
    for y in 0..suffix {
        for x in 0..dim_k {
            block[x] = state.amplitudes()[x * suffix + y];
        }
        let result = if forward {
            // decoupled-slot coords from the (parent ⊗ bit) frame
            let slot_evens = prev.matrix.ad_mul(&even_part(&block, half));
            let slot_odds = prev.matrix.ad_mul(&odd_part(&block, half));
            let mut coords = DVector::from_element(dim_k, C0);
            for (col, &(pcol, bit)) in level.decouple_slot.iter().enumerate() {
                coords[col] = if bit == 0 {
                    slot_evens[pcol]
                } else {
                    slot_odds[pcol]
                };
            }
            &level.matrix * coords
        } else {
            let coords = level.matrix.ad_mul(&block);
            let mut slots = DVector::from_element(dim_k, C0);
            for (col, &(pcol, bit)) in level.decouple_slot.iter().enumerate() {
                slots[(pcol << 1) | bit as usize] = coords[col];
            }
            // expand parent coords back to amplitudes on qubits 1..k-1
            unshuffle_pairs(
                &(&prev.matrix * even_part(&slots, half)),
                &(&prev.matrix * odd_part(&slots, half)),
            )
        };
        for x in 0..dim_k {
            out.amplitudes_mut()[x * suffix + y] = result[x];
        }
    }
    Ok(out)
}

/// Gather `[v[0], v[2], ...]` and `[v[1], v[3], ...]` into `(x', b)` layout
/// `slots[(x' << 1) | b]` -> matrix-friendly pair columns.
fn even_part(slots: &DVector<Complex64>, half: usize) -> DVector<Complex64> {
    DVector::from_iterator(half, (0..half).map(|x| slots[x << 1]))
}

fn odd_part(slots: &DVector<Complex64>, half: usize) -> DVector<Complex64> {
    DVector::from_iterator(half, (0..half).map(|x| slots[(x << 1) | 1]))
}

fn unshuffle_pairs(evens: &DVector<Complex64>, odds: &DVector<Complex64>) -> DVector<Complex64> {
    let half = evens.len();
    let mut out = DVector::from_element(2 * half, C0);
    for x in 0..half {
        out[x << 1] = evens[x];
        out[(x << 1) | 1] = odds[x];
    }
    out
}
