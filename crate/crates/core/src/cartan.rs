//! Affine Cartan data for the six families handled here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six affine families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// A_{2n}^{(2)}
    A2even,
    /// D_{n+1}^{(2)}
    Dtwist,
    /// A_{2n-1}^{(2)}
    A2odd,
    /// D_n^{(1)}
    D1,
    /// B_n^{(1)}
    B1,
    /// C_n^{(1)}
    C1,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::A2even,
        Family::Dtwist,
        Family::A2odd,
        Family::D1,
        Family::B1,
        Family::C1,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Family::A2even => "A2even",
            Family::Dtwist => "Dtwist",
            Family::A2odd => "A2odd",
            Family::D1 => "D1",
            Family::B1 => "B1",
            Family::C1 => "C1",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A2even => 1,
            Family::Dtwist | Family::C1 => 2,
            Family::A2odd | Family::B1 => 3,
            Family::D1 => 4,
        }
    }

    /// Families whose coordinates carry the extra `x0` entry.
    pub fn has_x0(self) -> bool {
        matches!(self, Family::Dtwist | Family::B1)
    }

    /// Families with a slack group of empty-ish slices (level minus the coordinate sum).
    pub fn has_slack(self) -> bool {
        matches!(self, Family::A2even | Family::Dtwist | Family::C1)
    }

    /// Families whose node 0 hangs off node 2 (ground-state period 2).
    pub fn is_forked(self) -> bool {
        matches!(self, Family::A2odd | Family::D1 | Family::B1)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.token() == s)
            .ok_or_else(|| Error::Parse {
                what: "family",
                input: s.to_string(),
            })
    }
}

/// An element of P_cl written in the fundamental weights: `Σ k_i Λ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalWeight(pub Vec<i64>);

impl ClassicalWeight {
    pub fn zero(rank: usize) -> Self {
        ClassicalWeight(vec![0; rank + 1])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

impl fmt::Display for ClassicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.0)
    }
}

impl FromStr for ClassicalWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_csv(s, "weight").map(ClassicalWeight)
    }
}

impl Add for &ClassicalWeight {
    type Output = ClassicalWeight;

    fn add(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassicalWeight {
    type Output = ClassicalWeight;

    fn sub(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ClassicalWeight {
    type Output = ClassicalWeight;

    fn neg(self) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&ClassicalWeight> for i64 {
    type Output = ClassicalWeight;

    fn mul(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// A combination `Σ m_i α_i` of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

pub(crate) fn write_csv(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn parse_csv(s: &str, what: &'static str) -> Result<Vec<i64>> {
    let bad = || Error::Parse {
        what,
        input: s.to_string(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
        .collect()
}

/// Cartan matrix plus the canonical central element and null root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineDatum {
    pub family: Family,
    pub rank: usize,
    /// `cartan[i][j] = <h_i, α_j>`
    pub cartan: Vec<Vec<i64>>,
    pub central: Vec<i64>,
    pub null_root: Vec<i64>,
}

/// Builds the Cartan datum, numbering nodes as in the Dynkin diagrams this
/// crate follows (for the forked families node 0 hangs off node 2).
pub fn build_datum(family: Family, rank: usize) -> Result<AffineDatum> {
    let n = rank;
    if n < family.min_rank() {
        return Err(Error::RankOutOfRange {
            family: family.token(),
            min: family.min_rank(),
            got: n,
        });
    }
    let mut a = vec![vec![0i64; n + 1]; n + 1];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // bond(i, j, a_ij, a_ji)
    let mut bond = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let (central, null_root);
    match family {
        Family::A2even if n == 1 => {
            bond(0, 1, -4, -1);
            central = vec![1, 2];
            null_root = vec![2, 1];
        }
        Family::A2even | Family::Dtwist | Family::C1 => {
            for i in 1..n - 1 {
                bond(i, i + 1, -1, -1);
            }
            match family {
                Family::A2even => {
                    bond(0, 1, -2, -1);
                    bond(n - 1, n, -2, -1);
                    central = std::iter::once(1).chain(std::iter::repeat(2).take(n)).collect();
                    null_root = std::iter::repeat(2).take(n).chain(std::iter::once(1)).collect();
                }
                Family::Dtwist => {
                    bond(0, 1, -2, -1);
                    bond(n - 1, n, -1, -2);
                    central = std::iter::once(1)
                        .chain(std::iter::repeat(2).take(n - 1))
                        .chain(std::iter::once(1))
                        .collect();
                    null_root = vec![1; n + 1];
                }
                _ => {
                    bond(0, 1, -1, -2);
                    bond(n - 1, n, -2, -1);
                    central = vec![1; n + 1];
                    null_root = std::iter::once(1)
                        .chain(std::iter::repeat(2).take(n - 1))
                        .chain(std::iter::once(1))
                        .collect();
                }
            }
        }
        Family::A2odd | Family::B1 => {
            bond(0, 2, -1, -1);
            bond(1, 2, -1, -1);
            for i in 2..n - 1 {
                bond(i, i + 1, -1, -1);
            }
            if family == Family::A2odd {
                bond(n - 1, n, -2, -1);
                central = [1, 1]
                    .into_iter()
                    .chain(std::iter::repeat(2).take(n - 1))
                    .collect();
                null_root = [1, 1]
                    .into_iter()
                    .chain(std::iter::repeat(2).take(n - 2))
                    .chain(std::iter::once(1))
                    .collect();
            } else {
                bond(n - 1, n, -1, -2);
                central = [1, 1]
                    .into_iter()
                    .chain(std::iter::repeat(2).take(n - 2))
                    .chain(std::iter::once(1))
                    .collect();
                null_root = [1, 1]
                    .into_iter()
                    .chain(std::iter::repeat(2).take(n - 1))
                    .collect();
            }
        }
        Family::D1 => {
            bond(0, 2, -1, -1);
            bond(1, 2, -1, -1);
            for i in 2..n - 2 {
                bond(i, i + 1, -1, -1);
            }
            bond(n - 2, n - 1, -1, -1);
            bond(n - 2, n, -1, -1);
            central = [1, 1]
                .into_iter()
                .chain(std::iter::repeat(2).take(n - 3))
                .chain([1, 1])
                .collect();
            null_root = central.clone();
        }
    }
    Ok(AffineDatum {
        family,
        rank,
        cartan: a,
        central,
        null_root,
    })
}

impl AffineDatum {
    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.rank
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i > self.rank {
            Err(Error::NodeIndex {
                index: i,
                max: self.rank,
            })
        } else {
            Ok(())
        }
    }

    fn check_weight(&self, w: &ClassicalWeight) -> Result<()> {
        if w.0.len() != self.rank + 1 {
            Err(Error::Arity {
                expected: self.rank + 1,
                got: w.0.len(),
            })
        } else {
            Ok(())
        }
    }

    /// `<c, λ>`
    pub fn level(&self, w: &ClassicalWeight) -> i64 {
        self.central.iter().zip(&w.0).map(|(c, k)| c * k).sum()
    }

    /// Shifts root coefficients by the multiple of `δ` that leaves the
    /// smallest `k_j / δ_j` in `[0, 1)`. `cl(δ) = 0`, so the classical
    /// weight is unchanged.
    pub fn reduce_mod_delta(&self, k: &mut [i64]) {
        let m = k
            .iter()
            .zip(&self.null_root)
            .map(|(a, d)| a.div_euclid(*d))
            .min()
            .unwrap_or(0);
        for (a, d) in k.iter_mut().zip(&self.null_root) {
            *a -= m * d;
        }
    }

    /// `cl(α_j)` as a weight, i.e. column `j` of the Cartan matrix.
    pub fn cl_simple_root(&self, j: usize) -> Result<ClassicalWeight> {
        self.check_node(j)?;
        Ok(self.alpha(j))
    }

    pub(crate) fn alpha(&self, j: usize) -> ClassicalWeight {
        ClassicalWeight(self.cartan.iter().map(|row| row[j]).collect())
    }

    /// `cl(Σ m_j α_j)`
    pub fn cl_root(&self, m: &RootVector) -> ClassicalWeight {
        ClassicalWeight(
            self.cartan
                .iter()
                .map(|row| row.iter().zip(&m.0).map(|(a, m)| a * m).sum())
                .collect(),
        )
    }

    /// `<h_i, λ>`
    pub fn pairing(&self, i: usize, w: &ClassicalWeight) -> Result<i64> {
        self.check_node(i)?;
        self.check_weight(w)?;
        Ok(w.0[i])
    }

    /// All dominant weights of level `l`, lexicographically ordered.
    pub fn dominant_weights_of_level(&self, l: i64) -> Vec<ClassicalWeight> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank + 1];
        self.fill_dominant(0, l, &mut cur, &mut out);
        out
    }

    fn fill_dominant(&self, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<ClassicalWeight>) {
        if i == cur.len() {
            if left == 0 {
                out.push(ClassicalWeight(cur.clone()));
            }
            return;
        }
        let c = self.central[i];
        for k in 0..=left / c {
            cur[i] = k;
            self.fill_dominant(i + 1, left - c * k, cur, out);
        }
        cur[i] = 0;
    }

    pub fn parse_weight(&self, s: &str) -> Result<ClassicalWeight> {
        let w: ClassicalWeight = s.parse()?;
        self.check_weight(&w)?;
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(f: Family, n: usize) -> AffineDatum {
        build_datum(f, n).unwrap()
    }

    fn w(xs: &[i64]) -> ClassicalWeight {
        ClassicalWeight(xs.to_vec())
    }

    #[test]
    fn central_and_null_root_examples() {
        assert_eq!(d(Family::A2even, 2).central, vec![1, 2, 2]);
        assert_eq!(d(Family::C1, 2).central, vec![1, 1, 1]);
        assert_eq!(d(Family::B1, 3).null_root, vec![1, 1, 2, 2]);
    }

    #[test]
    fn a2_rank_one_matrix() {
        assert_eq!(d(Family::A2even, 1).cartan, vec![vec![2, -4], vec![-1, 2]]);
        assert_eq!(d(Family::A2even, 1).cl_simple_root(0).unwrap(), w(&[2, -1]));
    }

    #[test]
    fn b3_column_three() {
        // the short root end: a_{23} = -1, a_{32} = 2 * -1
        assert_eq!(d(Family::B1, 3).cl_simple_root(3).unwrap(), w(&[0, 0, -1, 2]));
        assert_eq!(d(Family::B1, 3).cartan[3], vec![0, 0, -2, 2]);
    }

    #[test]
    fn rank_errors_name_the_minimum() {
        let e = build_datum(Family::D1, 3).unwrap_err();
        assert_eq!(
            e,
            Error::RankOutOfRange {
                family: "D1",
                min: 4,
                got: 3
            }
        );
        assert!(e.to_string().contains("minimum is 4"));
    }

    #[test]
    fn levels() {
        assert_eq!(d(Family::B1, 3).level(&w(&[1, 0, 0, 1])), 2);
        assert_eq!(d(Family::A2even, 2).level(&w(&[0, 1, 0])), 2);
        for f in Family::ALL {
            let dd = d(f, f.min_rank());
            assert_eq!(dd.level(&ClassicalWeight::zero(dd.rank)), 0);
        }
    }

    #[test]
    fn dominant_weight_lists() {
        let a4 = d(Family::A2even, 2);
        assert_eq!(
            a4.dominant_weights_of_level(2),
            vec![w(&[0, 0, 1]), w(&[0, 1, 0]), w(&[2, 0, 0])]
        );
        let b3 = d(Family::B1, 3);
        let got = b3.dominant_weights_of_level(2);
        let mut want = vec![
            w(&[2, 0, 0, 0]),
            w(&[0, 2, 0, 0]),
            w(&[1, 1, 0, 0]),
            w(&[0, 0, 1, 0]),
            w(&[0, 0, 0, 2]),
            w(&[1, 0, 0, 1]),
            w(&[0, 1, 0, 1]),
        ];
        want.sort();
        assert_eq!(got, want);
        for f in Family::ALL {
            let dd = d(f, f.min_rank());
            assert_eq!(
                dd.dominant_weights_of_level(0),
                vec![ClassicalWeight::zero(dd.rank)]
            );
        }
    }

    #[test]
    fn pairings() {
        let b3 = d(Family::B1, 3);
        assert_eq!(b3.pairing(0, &w(&[2, 0, 0, 0])).unwrap(), 2);
        assert_eq!(b3.pairing(2, &w(&[1, 0, 0, 1])).unwrap(), 0);
        for i in 0..=3 {
            for j in 0..=3 {
                let a = b3.cl_simple_root(j).unwrap();
                assert_eq!(b3.pairing(i, &a).unwrap(), b3.cartan[i][j]);
            }
        }
        assert!(b3.pairing(4, &w(&[0, 0, 0, 0])).is_err());
        assert!(b3.pairing(0, &w(&[0, 0, 0])).is_err());
    }

    #[test]
    fn family_tokens_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.token().parse::<Family>().unwrap(), f);
        }
        assert!("E8".parse::<Family>().is_err());
    }
}
