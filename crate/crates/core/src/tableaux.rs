//! Two-row Young diagrams and standard Young tableaux.
//!
//! Tableaux are stored in the Young-Yamanouchi encoding: bit `k` of the
//! vector is 1 exactly when symbol `k+1` sits in the second row of the
//! tableau. Equivalently, a tableau is a Bratteli path `j_1, ..., j_N` of
//! half-integer total spins with `j_1 = 1/2` and steps of `±1/2` that never
//! go below zero; bit `k` records a downward step.
//!
//! All half-integers are carried as doubled integers (`2j`), keeping every
//! combinatorial quantity exact.

use crate::error::{Error, Result};

/// Size guard for tableau enumeration.
pub const MAX_ENUMERATION_QUBITS: usize = 24;

/// A two-row Young diagram with `r1 >= r2` boxes per row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    r1: usize,
    r2: usize,
}

impl YoungDiagram {
    pub fn new(r1: usize, r2: usize) -> Result<Self> {
        if r1 < r2 {
            return Err(Error::InvalidDiagram { r1, r2 });
        }
        Ok(Self { r1, r2 })
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    /// Total box count `N = r1 + r2`.
    pub fn n(&self) -> usize {
        self.r1 + self.r2
    }

    /// Doubled total angular momentum `2 j = r1 - r2` of the sector.
    pub fn j2(&self) -> usize {
        self.r1 - self.r2
    }

    /// Parse the `"r1,r2"` form used on the command line.
    pub fn parse(s: &str) -> Result<Self> {
        let mut it = s.split(',');
        let bad = || Error::InvalidCode(format!("cannot parse diagram {s:?}, expected \"r1,r2\""));
        let r1 = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let r2 = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        Self::new(r1, r2)
    }
}

impl std::fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.r1, self.r2)
    }
}

/// All two-row diagrams with `n` boxes, widest first.
pub fn diagrams(n: usize) -> Vec<YoungDiagram> {
    (0..=n / 2)
        .map(|r2| YoungDiagram { r1: n - r2, r2 })
        .collect()
}

/// A standard Young tableau of two-row shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardYoungTableau {
    diagram: YoungDiagram,
    yy: Vec<bool>,
    /// Doubled Bratteli path `2 j_1, ..., 2 j_N`.
    j2_path: Vec<usize>,
}

impl StandardYoungTableau {
    /// Build from a Young-Yamanouchi bit vector, validating prefix dominance.
    pub fn from_yy(yy: &[bool]) -> Result<Self> {
        if yy.is_empty() {
            return Err(Error::InvalidPath("empty tableau".into()));
        }
        let mut j2: isize = 0;
        let mut j2_path = Vec::with_capacity(yy.len());
        for (k, &down) in yy.iter().enumerate() {
            j2 += if down { -1 } else { 1 };
            if j2 < 0 {
                return Err(Error::InvalidPath(format!(
                    "prefix dominance violated at symbol {}",
                    k + 1
                )));
            }
            j2_path.push(j2 as usize);
        }
        let r2 = yy.iter().filter(|&&b| b).count();
        let diagram = YoungDiagram::new(yy.len() - r2, r2)?;
        Ok(Self {
            diagram,
            yy: yy.to_vec(),
            j2_path,
        })
    }

    /// Build from a doubled Bratteli path `2 j_1, ..., 2 j_N`.
    ///
    /// Fails unless `j_1 = 1/2`, every step is `±1/2` and no `j_k` is
    /// negative.
    pub fn from_j2_path(j2_path: &[usize]) -> Result<Self> {
        if j2_path.first() != Some(&1) {
            return Err(Error::InvalidPath("path must start at j = 1/2".into()));
        }
        let mut yy = Vec::with_capacity(j2_path.len());
        let mut prev: usize = 0;
        for &j2 in j2_path {
            if j2 == prev + 1 {
                yy.push(false);
            } else if prev > 0 && j2 == prev - 1 {
                yy.push(true);
            } else {
                return Err(Error::InvalidPath(format!(
                    "step from 2j={prev} to 2j={j2} is not ±1/2"
                )));
            }
            prev = j2;
        }
        Self::from_yy(&yy)
    }

    /// Parse a Young-Yamanouchi bit string such as `"0010110"`.
    pub fn parse_yy(s: &str) -> Result<Self> {
        let yy: Vec<bool> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidPath(format!("bad character {c:?} in {s:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::from_yy(&yy)
    }

    /// The unique single-row tableau on `n` boxes.
    pub fn single_row(n: usize) -> Self {
        Self::from_yy(&vec![false; n]).expect("single row is always valid")
    }

    pub fn diagram(&self) -> YoungDiagram {
        self.diagram
    }

    pub fn n(&self) -> usize {
        self.yy.len()
    }

    pub fn yy(&self) -> &[bool] {
        &self.yy
    }

    /// Doubled total spins along the measurement path.
    pub fn j2_path(&self) -> &[usize] {
        &self.j2_path
    }

    /// Doubled sector spin `2 j_T = r1 - r2`.
    pub fn j2(&self) -> usize {
        self.diagram.j2()
    }

    pub fn is_single_row(&self) -> bool {
        self.diagram.r2 == 0
    }

    /// Young-Yamanouchi bit string, e.g. `"0010110"`.
    pub fn yy_string(&self) -> String {
        self.yy.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Positions (1-based qubit labels) of the second-row symbols.
    pub fn row2_positions(&self) -> Vec<usize> {
        self.yy
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i + 1))
            .collect()
    }
}

impl std::fmt::Display for StandardYoungTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.yy_string())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
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

/// Number of standard Young tableaux of the given two-row shape,
/// `C(N, r1) (2 r1 - N + 1) / (r1 + 1)`, evaluated exactly.
pub fn syt_count(diagram: &YoungDiagram) -> u128 {
    let n = diagram.n();
    let r1 = diagram.r1();
    let num = binomial(n, r1) * (2 * r1 - n + 1) as u128;
    debug_assert_eq!(num % (r1 + 1) as u128, 0);
    num / (r1 + 1) as u128
}

/// Number of semistandard tableaux filled with 1 and 2: `r1 - r2 + 1`,
/// the magnetic dimension `2 j_T + 1` of the sector.
pub fn ssyt_count(diagram: &YoungDiagram) -> u128 {
    (diagram.r1() - diagram.r2() + 1) as u128
}

/// All standard Young tableaux of the given shape, in lexicographic
/// Young-Yamanouchi order.
pub fn enumerate_syts(diagram: &YoungDiagram) -> Result<Vec<StandardYoungTableau>> {
    let n = diagram.n();
    if n > MAX_ENUMERATION_QUBITS {
        return Err(Error::SizeLimit(format!(
            "enumeration capped at N <= {MAX_ENUMERATION_QUBITS}, got N = {n}"
        )));
    }
    let mut out = Vec::new();
    let mut yy = Vec::with_capacity(n);
    fill(diagram, &mut yy, 0, 0, &mut out);
    Ok(out)
}

fn fill(
    diagram: &YoungDiagram,
    yy: &mut Vec<bool>,
    ones: usize,
    pos: usize,
    out: &mut Vec<StandardYoungTableau>,
) {
    if pos == diagram.n() {
        out.push(StandardYoungTableau::from_yy(yy).expect("construction preserves validity"));
        return;
    }
    let zeros = pos - ones;
    // lexicographic order: try 0 before 1
    if zeros < diagram.r1() {
        yy.push(false);
        fill(diagram, yy, ones, pos + 1, out);
        yy.pop();
    }
    if ones < diagram.r2() && zeros > ones {
        yy.push(true);
        fill(diagram, yy, ones + 1, pos + 1, out);
        yy.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Count ballot sequences directly, independent of the closed form.
    fn brute_count(diagram: &YoungDiagram) -> u128 {
        let n = diagram.n();
        let mut count = 0u128;
        for mask in 0u32..(1 << n) {
            let mut ones = 0usize;
            let mut ok = true;
            for k in 0..n {
                if mask >> k & 1 == 1 {
                    ones += 1;
                }
                if 2 * ones > k + 1 {
                    ok = false;
                    break;
                }
            }
            if ok && ones == diagram.r2() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn syt_count_matches_examples() {
        for n in 1..=8 {
            assert_eq!(syt_count(&YoungDiagram::new(n, 0).unwrap()), 1);
        }
        assert_eq!(syt_count(&YoungDiagram::new(2, 1).unwrap()), 2);
        assert_eq!(syt_count(&YoungDiagram::new(4, 2).unwrap()), 9);
    }

    #[test]
    fn syt_count_matches_brute_force() {
        for n in 1..=12 {
            for d in diagrams(n) {
                assert_eq!(syt_count(&d), brute_count(&d), "diagram {d}");
            }
        }
    }

    #[test]
    fn invalid_diagram_rejected() {
        assert!(YoungDiagram::new(1, 2).is_err());
    }

    #[test]
    fn ssyt_count_examples() {
        assert_eq!(ssyt_count(&YoungDiagram::new(4, 2).unwrap()), 3);
        for n in 1..=10 {
            assert_eq!(ssyt_count(&YoungDiagram::new(n, 0).unwrap()), (n + 1) as u128);
        }
        assert_eq!(ssyt_count(&YoungDiagram::new(3, 3).unwrap()), 1);
    }

    #[test]
    fn schur_weyl_dimension_identity() {
        for n in 1..=12 {
            let total: u128 = diagrams(n)
                .iter()
                .map(|d| syt_count(d) * ssyt_count(d))
                .sum();
            assert_eq!(total, 1u128 << n, "N = {n}");
        }
    }

    #[test]
    fn enumeration_matches_count_and_order() {
        for n in 1..=10 {
            for d in diagrams(n) {
                let all = enumerate_syts(&d).unwrap();
                assert_eq!(all.len() as u128, syt_count(&d), "diagram {d}");
                let strings: Vec<String> = all.iter().map(|t| t.yy_string()).collect();
                let mut sorted = strings.clone();
                sorted.sort();
                assert_eq!(strings, sorted, "lexicographic order for {d}");
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let two_one = enumerate_syts(&YoungDiagram::new(2, 1).unwrap()).unwrap();
        let strings: Vec<String> = two_one.iter().map(|t| t.yy_string()).collect();
        assert_eq!(strings, vec!["001", "010"]);

        let one = enumerate_syts(&YoungDiagram::new(1, 0).unwrap()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].yy_string(), "0");

        let three = enumerate_syts(&YoungDiagram::new(3, 0).unwrap()).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].yy_string(), "000");
    }

    #[test]
    fn enumeration_size_guard() {
        let d = YoungDiagram::new(20, 10).unwrap();
        assert!(matches!(enumerate_syts(&d), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn paths_round_trip() {
        for n in 1..=9 {
            for d in diagrams(n) {
                for t in enumerate_syts(&d).unwrap() {
                    let back = StandardYoungTableau::from_j2_path(t.j2_path()).unwrap();
                    assert_eq!(back, t);
                }
            }
        }
    }

    #[test]
    fn path_examples() {
        // monotone path is the single row
        let t = StandardYoungTableau::from_j2_path(&[1, 2, 3]).unwrap();
        assert_eq!(t.yy_string(), "000");
        // one decrease
        let t = StandardYoungTableau::from_j2_path(&[1, 2, 1]).unwrap();
        assert_eq!(t.yy_string(), "001");
        // path with a kink in the middle, ending at j = 5/2
        let t = StandardYoungTableau::from_j2_path(&[1, 2, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(t.yy_string(), "0010000");
        assert_eq!(t.j2(), 5);
    }

    #[test]
    fn bad_paths_rejected() {
        assert!(StandardYoungTableau::from_j2_path(&[2, 3]).is_err());
        assert!(StandardYoungTableau::from_j2_path(&[1, 3]).is_err());
        assert!(StandardYoungTableau::from_j2_path(&[1, 2, 2]).is_err());
        assert!(StandardYoungTableau::from_j2_path(&[1, 0, 1, 0, 1, 0, 0]).is_err());
        assert!(StandardYoungTableau::parse_yy("100").is_err());
        // the lone decrease to zero is the valid singlet
        assert_eq!(
            StandardYoungTableau::from_j2_path(&[1, 0]).unwrap().yy_string(),
            "01"
        );
    }

    #[test]
    fn j_final_matches_shape() {
        for n in 1..=9 {
            for d in diagrams(n) {
                for t in enumerate_syts(&d).unwrap() {
                    assert_eq!(*t.j2_path().last().unwrap(), d.j2());
                    assert_eq!(t.row2_positions().len(), d.r2());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn enumerated_tableaux_satisfy_prefix_dominance(n in 1usize..=12, seed in 0usize..64) {
            let ds = diagrams(n);
            let d = ds[seed % ds.len()];
            for t in enumerate_syts(&d).unwrap() {
                let mut ones = 0usize;
                for (k, &b) in t.yy().iter().enumerate() {
                    if b { ones += 1; }
                    prop_assert!(2 * ones <= k + 1);
                }
                prop_assert_eq!(ones, d.r2());
            }
        }
    }
}
