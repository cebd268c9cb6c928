//! Permutation-invariant code construction and distance certification.
//!
//! The workhorse family is the shifted gnu code on `N = g n u + s` qubits,
//! whose codeword `|j_L>` carries amplitude `2^{-(n-1)/2} C(n,k)^{1/2}` on
//! Dicke weight `g k + s` for every `k = j (mod 2)`, `0 <= k <= n`. The
//! square-root exponent is positive: the printed form with a negative
//! exponent does not normalize (already at n = 2 its squared norm is 1/4),
//! while the positive exponent normalizes exactly because binomial
//! coefficients of fixed parity sum to `2^{n-1}`.
//!
//! Arbitrary PI codes are accepted as explicit weight-to-amplitude tables.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{binomial, Axis, FullState, LocalOperator, SymmetricState, C0};

/// Parameters of a shifted gnu code.
///
/// `u` may be fractional (the codeword formula only involves `g`, `n`, `s`);
/// it enters through the qubit count `N = g n u + s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnuParams {
    pub g: usize,
    pub n: usize,
    pub u: f64,
    pub s: usize,
}

/// A permutation-invariant code: `M` orthonormal codewords in the symmetric
/// subspace of `N` qubits, stored by Dicke-weight amplitude.
#[derive(Debug, Clone)]
pub struct PICode {
    n_qubits: usize,
    codewords: Vec<Vec<Complex64>>,
    gnu: Option<GnuParams>,
}

impl PICode {
    /// Build from explicit Dicke-amplitude tables, validating orthonormality.
    pub fn from_codewords(n_qubits: usize, codewords: Vec<Vec<Complex64>>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidCode("code needs at least one codeword".into()));
        }
        for (j, c) in codewords.iter().enumerate() {
            if c.len() != n_qubits + 1 {
                return Err(Error::InvalidCode(format!(
                    "codeword {j} has {} amplitudes, expected N + 1 = {}",
                    c.len(),
                    n_qubits + 1
                )));
            }
            let norm: f64 = c.iter().map(|a| a.norm_sqr()).sum();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidCode(format!(
                    "codeword {j} has norm^2 = {norm}"
                )));
            }
        }
        for j in 0..codewords.len() {
            for k in j + 1..codewords.len() {
                let overlap: Complex64 = codewords[j]
                    .iter()
                    .zip(&codewords[k])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                if overlap.norm() > 1e-10 {
                    return Err(Error::InvalidCode(format!(
                        "codewords {j} and {k} overlap by {:.3e}",
                        overlap.norm()
                    )));
                }
            }
        }
        Ok(Self {
            n_qubits,
            codewords,
            gnu: None,
        })
    }

    /// The shifted gnu code with parameters `(g, n, u, s)`.
    pub fn gnu(g: usize, n: usize, u: f64, s: usize) -> Result<Self> {
        if g == 0 || n == 0 {
            return Err(Error::InvalidCode("g and n must be positive".into()));
        }
        if u < 1.0 {
            return Err(Error::InvalidCode(format!("u = {u} must be at least 1")));
        }
        let gnu_f = g as f64 * n as f64 * u;
        if (gnu_f - gnu_f.round()).abs() > 1e-9 {
            return Err(Error::InvalidCode(format!(
                "g n u = {gnu_f} is not an integer"
            )));
        }
        let n_qubits = gnu_f.round() as usize + s;
        let mut code = Self::gnu_on_qubits(g, n, s, n_qubits)?;
        code.gnu = Some(GnuParams { g, n, u, s });
        Ok(code)
    }

    /// gnu-amplitude codewords placed on an explicit qubit count.
    ///
    /// Weights that exceed `n_qubits` are truncated and the codeword is
    /// renormalized; this is how deletion recovery constructs its shrunken
    /// target codes. The untruncated case requires `g n + s <= n_qubits`.
    pub fn gnu_on_qubits(g: usize, n: usize, s: usize, n_qubits: usize) -> Result<Self> {
        if s > n_qubits {
            return Err(Error::InvalidCode(format!(
                "shift s = {s} exceeds qubit count {n_qubits}"
            )));
        }
        let mut codewords = Vec::with_capacity(2);
        for j in 0..2usize {
            let mut amps = vec![C0; n_qubits + 1];
            let scale = 2f64.powf(-((n as f64 - 1.0) / 2.0));
            for k in (j..=n).step_by(2) {
                let w = g * k + s;
                if w > n_qubits {
                    continue;
                }
                amps[w] = Complex64::new(scale * (binomial(n, k) as f64).sqrt(), 0.0);
            }
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return Err(Error::InvalidCode(format!(
                    "codeword {j} has empty support on {n_qubits} qubits"
                )));
            }
            for a in &mut amps {
                *a /= norm;
            }
            codewords.push(amps);
        }
        Self::from_codewords(n_qubits, codewords)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Logical dimension `M`.
    pub fn dimension(&self) -> usize {
        self.codewords.len()
    }

    pub fn gnu_params(&self) -> Option<GnuParams> {
        self.gnu
    }

    /// Dicke amplitudes of codeword `j`.
    pub fn codeword_amplitudes(&self, j: usize) -> &[Complex64] {
        &self.codewords[j]
    }

    /// Weights carrying nonzero amplitude in codeword `j`.
    pub fn support(&self, j: usize) -> Vec<usize> {
        self.codewords[j]
            .iter()
            .enumerate()
            .filter_map(|(w, a)| (a.norm() > 1e-14).then_some(w))
            .collect()
    }

    pub fn codeword(&self, j: usize) -> SymmetricState {
        SymmetricState::from_dicke_amplitudes(self.n_qubits, self.codewords[j].clone())
            .expect("codeword length validated")
    }

    pub fn codeword_full(&self, j: usize) -> FullState {
        self.codeword(j).embed()
    }

    /// Encode logical amplitudes into the symmetric subspace.
    pub fn encode(&self, alphas: &[Complex64]) -> Result<SymmetricState> {
        if alphas.len() != self.dimension() {
            return Err(Error::InvalidCode(format!(
                "expected {} logical amplitudes, got {}",
                self.dimension(),
                alphas.len()
            )));
        }
        let norm: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Unnormalized((norm - 1.0).abs()));
        }
        let mut amps = vec![C0; self.n_qubits + 1];
        for (alpha, word) in alphas.iter().zip(&self.codewords) {
            for (a, c) in amps.iter_mut().zip(word) {
                *a += alpha * c;
            }
        }
        SymmetricState::from_dicke_amplitudes(self.n_qubits, amps)
    }

    pub fn encode_full(&self, alphas: &[Complex64]) -> Result<FullState> {
        Ok(self.encode(alphas)?.embed())
    }

    /// Serialize as the key/value code-definition format.
    pub fn to_definition_string(&self) -> String {
        if let Some(p) = self.gnu {
            return format!("gnu {} {} {} {}\n", p.g, p.n, p.u, p.s);
        }
        let mut out = String::new();
        out.push_str(&format!("qubits {}\n", self.n_qubits));
        for word in &self.codewords {
            out.push_str("codeword\n");
            for (w, a) in word.iter().enumerate() {
                if a.norm() > 1e-15 {
                    out.push_str(&format!("{w} {:.17e} {:.17e}\n", a.re, a.im));
                }
            }
        }
        out
    }

    /// Parse the code-definition format: either a single `gnu g n u s` line
    /// or a `qubits N` header followed by `codeword` sections with
    /// `w amplitude_re amplitude_im` lines.
    pub fn parse_definition(text: &str) -> Result<Self> {
        let mut gnu: Option<(usize, usize, f64, usize)> = None;
        let mut n_qubits: Option<usize> = None;
        let mut tables: Vec<Vec<(usize, Complex64)>> = Vec::new();
        let bad = |line: &str, why: &str| Error::InvalidCode(format!("line {line:?}: {why}"));
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next().unwrap() {
                "gnu" => {
                    let vals: Vec<&str> = tok.collect();
                    if vals.len() != 4 {
                        return Err(bad(line, "expected gnu g n u s"));
                    }
                    gnu = Some((
                        vals[0].parse().map_err(|_| bad(line, "bad g"))?,
                        vals[1].parse().map_err(|_| bad(line, "bad n"))?,
                        vals[2].parse().map_err(|_| bad(line, "bad u"))?,
                        vals[3].parse().map_err(|_| bad(line, "bad s"))?,
                    ));
                }
                "qubits" => {
                    let v = tok.next().ok_or_else(|| bad(line, "missing count"))?;
                    n_qubits = Some(v.parse().map_err(|_| bad(line, "bad qubit count"))?);
                }
                "codeword" => tables.push(Vec::new()),
                w => {
                    let table = tables
                        .last_mut()
                        .ok_or_else(|| bad(line, "amplitude before any codeword line"))?;
                    let w: usize = w.parse().map_err(|_| bad(line, "bad weight"))?;
                    let re: f64 = tok
                        .next()
                        .ok_or_else(|| bad(line, "missing re"))?
                        .parse()
                        .map_err(|_| bad(line, "bad re"))?;
                    let im: f64 = tok
                        .next()
                        .map(|v| v.parse().map_err(|_| bad(line, "bad im")))
                        .transpose()?
                        .unwrap_or(0.0);
                    table.push((w, Complex64::new(re, im)));
                }
            }
        }
        if let Some((g, n, u, s)) = gnu {
            if !tables.is_empty() {
                return Err(Error::InvalidCode(
                    "give either gnu parameters or amplitude tables, not both".into(),
                ));
            }
            return Self::gnu(g, n, u, s);
        }
        let n_qubits =
            n_qubits.ok_or_else(|| Error::InvalidCode("missing qubits line".into()))?;
        if tables.is_empty() {
            return Err(Error::InvalidCode("no codewords given".into()));
        }
        let mut codewords = Vec::new();
        for table in tables {
            let mut amps = vec![C0; n_qubits + 1];
            for (w, a) in table {
                if w > n_qubits {
                    return Err(Error::InvalidCode(format!("weight {w} exceeds N = {n_qubits}")));
                }
                amps[w] += a;
            }
            codewords.push(amps);
        }
        Self::from_codewords(n_qubits, codewords)
    }
}

/// Outcome of a Knill-Laflamme check: the worst-violating pair and matrix
/// element, with the deviation from `delta_{jk} c_{E,F}`.
#[derive(Debug, Clone)]
pub struct KlWitness {
    pub error_a: String,
    pub error_b: String,
    pub logical_j: usize,
    pub logical_k: usize,
    pub deviation: f64,
}

/// Check the Knill-Laflamme condition `<j_L| E† F |k_L> = delta_{jk} c_{E,F}`
/// over all pairs from the given error set.
pub fn kl_check(code: &PICode, errors: &[LocalOperator], tol: f64) -> Result<(bool, KlWitness)> {
    let n = code.n_qubits();
    for e in errors {
        if e.support().iter().any(|&q| q > n) {
            return Err(Error::BadSupport(format!(
                "operator {} acts outside 1..={n}",
                e.label()
            )));
        }
    }
    let m = code.dimension();
    let images: Vec<Vec<FullState>> = errors
        .iter()
        .map(|e| {
            (0..m)
                .map(|j| e.apply(&code.codeword_full(j)))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut worst = KlWitness {
        error_a: String::new(),
        error_b: String::new(),
        logical_j: 0,
        logical_k: 0,
        deviation: 0.0,
    };
    for (ia, a) in errors.iter().enumerate() {
        for (ib, b) in errors.iter().enumerate() {
            // G_{jk} = <a j_L | b k_L>; require G = c I
            let mut g = vec![vec![C0; m]; m];
            for j in 0..m {
                for k in 0..m {
                    g[j][k] = images[ia][j].inner(&images[ib][k]);
                }
            }
            let c: Complex64 = (0..m).map(|j| g[j][j]).sum::<Complex64>() / m as f64;
            for j in 0..m {
                for k in 0..m {
                    let target = if j == k { c } else { C0 };
                    let dev = (g[j][k] - target).norm();
                    if dev > worst.deviation {
                        worst = KlWitness {
                            error_a: a.label().to_string(),
                            error_b: b.label().to_string(),
                            logical_j: j,
                            logical_k: k,
                            deviation: dev,
                        };
                    }
                }
            }
        }
    }
    Ok((worst.deviation <= tol, worst))
}

/// All Pauli products of weight exactly `t` on `n` qubits.
pub fn paulis_of_weight(n: usize, t: usize) -> Vec<LocalOperator> {
    let mut out = Vec::new();
    let mut support = Vec::with_capacity(t);
    fn rec(n: usize, t: usize, start: usize, support: &mut Vec<usize>, out: &mut Vec<LocalOperator>) {
        if support.len() == t {
            let mut ops = vec![0usize; t];
            loop {
                let mut matrix = Axis::ALL[ops[0]].matrix();
                let mut label = format!("{}{}", Axis::ALL[ops[0]].label(), support[0]);
                for (i, &o) in ops.iter().enumerate().skip(1) {
                    matrix = matrix.kronecker(&Axis::ALL[o].matrix());
                    label.push(' ');
                    label.push(Axis::ALL[o].label());
                    label.push_str(&support[i].to_string());
                }
                out.push(
                    LocalOperator::new(support.clone(), matrix, label)
                        .expect("valid by construction"),
                );
                // next axis combination
                let mut i = t;
                loop {
                    if i == 0 {
                        return;
                    }
                    i -= 1;
                    if ops[i] < 2 {
                        ops[i] += 1;
                        for o in ops.iter_mut().skip(i + 1) {
                            *o = 0;
                        }
                        break;
                    }
                }
            }
        }
        for q in start..=n {
            support.push(q);
            rec(n, t, q + 1, support, out);
            support.pop();
        }
    }
    if t == 0 {
        return vec![LocalOperator::identity()];
    }
    rec(n, t, 1, &mut support, &mut out);
    out
}

/// Largest `d <= d_max` such that every Pauli of weight below `d` satisfies
/// the Knill-Laflamme error-detection condition.
pub fn distance(code: &PICode, d_max: usize) -> Result<usize> {
    if code.dimension() < 2 {
        return Err(Error::InvalidCode(
            "distance needs at least two codewords".into(),
        ));
    }
    let m = code.dimension();
    let words: Vec<FullState> = (0..m).map(|j| code.codeword_full(j)).collect();
    let mut d = 1;
    for w in 1..d_max {
        let mut detected = true;
        'paulis: for p in paulis_of_weight(code.n_qubits(), w) {
            let images: Vec<FullState> = words
                .iter()
                .map(|c| p.apply(c))
                .collect::<Result<_>>()?;
            let c: Complex64 = (0..m).map(|j| words[j].inner(&images[j])).sum::<Complex64>() / m as f64;
            for j in 0..m {
                for k in 0..m {
                    let target = if j == k { c } else { C0 };
                    if (words[j].inner(&images[k]) - target).norm() > 1e-9 {
                        detected = false;
                        break 'paulis;
                    }
                }
            }
        }
        if !detected {
            break;
        }
        d = w + 1;
    }
    Ok(d)
}
