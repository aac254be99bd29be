//! Coordinate vectors `(x_1..x_n [,x_0], xbar_n..xbar_1)` and the Kashiwara
//! rule table shared by the perfect crystals and the limit crystal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{parse_csv, AffineDatum, Family};
use crate::error::{Error, Result};

/// A coordinate vector. `x[i-1]` is `x_i` and `xbar[i-1]` is `xbar_i`;
/// `x0` stays 0 for families without that entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrystalVector {
    pub x: Vec<i64>,
    pub x0: i64,
    pub xbar: Vec<i64>,
}

/// Elements of the limit crystal use the same coordinates.
pub type BInfVector = CrystalVector;

/// One coordinate slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    X(usize),
    X0,
    Xbar(usize),
}

impl CrystalVector {
    pub fn zero(rank: usize) -> Self {
        CrystalVector {
            x: vec![0; rank],
            x0: 0,
            xbar: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn xi(&self, i: usize) -> i64 {
        self.x[i - 1]
    }

    pub fn xbari(&self, i: usize) -> i64 {
        self.xbar[i - 1]
    }

    pub fn get(&self, s: Slot) -> i64 {
        match s {
            Slot::X(i) => self.x[i - 1],
            Slot::X0 => self.x0,
            Slot::Xbar(i) => self.xbar[i - 1],
        }
    }

    pub fn get_mut(&mut self, s: Slot) -> &mut i64 {
        match s {
            Slot::X(i) => &mut self.x[i - 1],
            Slot::X0 => &mut self.x0,
            Slot::Xbar(i) => &mut self.xbar[i - 1],
        }
    }

    /// `Σ (x_i + xbar_i)`, without `x0`.
    pub fn sum(&self) -> i64 {
        self.x.iter().chain(&self.xbar).sum()
    }

    /// Slots in text order: `x_1..x_n, [x_0,] xbar_n..xbar_1`.
    pub fn slots(family: Family, rank: usize) -> Vec<Slot> {
        let mut v: Vec<Slot> = (1..=rank).map(Slot::X).collect();
        if family.has_x0() {
            v.push(Slot::X0);
        }
        v.extend((1..=rank).rev().map(Slot::Xbar));
        v
    }

    /// Flat tuple in text order.
    pub fn to_tuple(&self, family: Family) -> Vec<i64> {
        Self::slots(family, self.rank())
            .into_iter()
            .map(|s| self.get(s))
            .collect()
    }

    pub fn from_tuple(family: Family, rank: usize, t: &[i64]) -> Result<Self> {
        let slots = Self::slots(family, rank);
        if t.len() != slots.len() {
            return Err(Error::Arity {
                expected: slots.len(),
                got: t.len(),
            });
        }
        let mut v = CrystalVector::zero(rank);
        for (s, &val) in slots.into_iter().zip(t) {
            *v.get_mut(s) = val;
        }
        Ok(v)
    }

    /// Text form `x1,..,xn|x0|xbar_n,..,xbar_1`; the middle segment only
    /// when the family has `x0`.
    pub fn display(&self, family: Family) -> VectorText<'_> {
        VectorText { v: self, family }
    }

    /// Accepts the text form or a flat comma list of the right arity.
    pub fn parse(family: Family, rank: usize, s: &str) -> Result<Self> {
        let flat: String = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .replace('|', ",");
        let t = parse_csv(&flat, "coordinates")?;
        Self::from_tuple(family, rank, &t)
    }
}

pub struct VectorText<'a> {
    v: &'a CrystalVector,
    family: Family,
}

impl fmt::Display for VectorText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join =
            |xs: &mut dyn Iterator<Item = &i64>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|", join(&mut self.v.x.iter()))?;
        if self.family.has_x0() {
            write!(f, "{}|", self.v.x0)?;
        }
        write!(f, "{}", join(&mut self.v.xbar.iter().rev()))
    }
}

/// A coordinate change: each entry adds the given amount to a slot.
pub type Delta = Vec<(Slot, i64)>;

fn mv(from: Slot, to: Slot) -> Delta {
    vec![(from, -1), (to, 1)]
}

/// What a node does to the coordinates: all candidate deltas, and which one
/// applies to a given vector.
pub(crate) struct NodeRule {
    pub cases: Vec<Delta>,
    chooser: fn(&CrystalVector, usize, usize) -> usize,
}

impl NodeRule {
    pub fn choose(&self, v: &CrystalVector, i: usize, n: usize) -> &Delta {
        &self.cases[(self.chooser)(v, i, n)]
    }
}

fn interior(v: &CrystalVector, i: usize, _n: usize) -> usize {
    usize::from(v.xi(i + 1) < v.xbari(i + 1))
}

fn forked_zero(v: &CrystalVector, _i: usize, _n: usize) -> usize {
    usize::from(v.xi(2) < v.xbari(2))
}

fn slack_zero(v: &CrystalVector, _i: usize, _n: usize) -> usize {
    usize::from(v.xi(1) < v.xbari(1))
}

fn paired_zero(v: &CrystalVector, _i: usize, _n: usize) -> usize {
    let (a, b) = (v.xi(1), v.xbari(1));
    if a >= b {
        0
    } else if a == b - 1 {
        1
    } else {
        2
    }
}

fn first(_v: &CrystalVector, _i: usize, _n: usize) -> usize {
    0
}

fn toggle(v: &CrystalVector, _i: usize, _n: usize) -> usize {
    usize::from(v.x0 != 0)
}

fn spin_minus(v: &CrystalVector, _i: usize, n: usize) -> usize {
    usize::from(v.xbari(n) != 0)
}

fn spin_plus(v: &CrystalVector, _i: usize, n: usize) -> usize {
    usize::from(v.xi(n) < 1)
}

/// The rule table for node `i`.
pub(crate) fn node_rule(datum: &AffineDatum, i: usize) -> NodeRule {
    use Slot::{Xbar, X, X0};
    let n = datum.rank;
    let fam = datum.family;
    let interior_rule = |i: usize| NodeRule {
        cases: vec![mv(X(i), X(i + 1)), mv(Xbar(i + 1), Xbar(i))],
        chooser: interior,
    };
    if fam == Family::D1 && i == n - 1 {
        return NodeRule {
            cases: vec![mv(X(n - 1), X(n)), mv(Xbar(n), Xbar(n - 1))],
            chooser: spin_minus,
        };
    }
    if fam == Family::D1 && i == n {
        return NodeRule {
            cases: vec![mv(X(n), Xbar(n - 1)), mv(X(n - 1), Xbar(n))],
            chooser: spin_plus,
        };
    }
    if i == n {
        return if fam.has_x0() {
            NodeRule {
                cases: vec![vec![(X(n), -1), (X0, 1)], vec![(X0, -1), (Xbar(n), 1)]],
                chooser: toggle,
            }
        } else {
            NodeRule {
                cases: vec![mv(X(n), Xbar(n))],
                chooser: first,
            }
        };
    }
    if i == 0 {
        return match fam {
            Family::A2odd | Family::D1 | Family::B1 => NodeRule {
                cases: vec![mv(Xbar(1), X(2)), mv(Xbar(2), X(1))],
                chooser: forked_zero,
            },
            Family::A2even | Family::Dtwist => NodeRule {
                cases: vec![vec![(X(1), 1)], vec![(Xbar(1), -1)]],
                chooser: slack_zero,
            },
            Family::C1 => NodeRule {
                cases: vec![
                    vec![(X(1), 2)],
                    vec![(X(1), 1), (Xbar(1), -1)],
                    vec![(Xbar(1), -2)],
                ],
                chooser: paired_zero,
            },
        };
    }
    interior_rule(i)
}

pub(crate) fn apply(v: &CrystalVector, d: &Delta, sign: i64) -> CrystalVector {
    let mut out = v.clone();
    for &(s, k) in d {
        *out.get_mut(s) += sign * k;
    }
    out
}

/// The coordinate result of the rule for node `i`, before any membership test.
pub(crate) fn raw_ftilde(datum: &AffineDatum, i: usize, v: &CrystalVector) -> CrystalVector {
    let rule = node_rule(datum, i);
    apply(v, rule.choose(v, i, datum.rank), 1)
}

/// Inverse by verification: undo each case and keep candidates that are
/// members and map forward to `v`. More than one survivor is a rule-table bug.
pub(crate) fn raw_etilde(
    datum: &AffineDatum,
    i: usize,
    v: &CrystalVector,
    member: impl Fn(&CrystalVector) -> bool,
) -> Result<Option<CrystalVector>> {
    let rule = node_rule(datum, i);
    let mut found: Option<CrystalVector> = None;
    for case in &rule.cases {
        let cand = apply(v, case, -1);
        if member(&cand) && raw_ftilde(datum, i, &cand) == *v {
            match &found {
                Some(prev) if *prev != cand => {
                    return Err(Error::Internal(format!(
                        "two preimages under e{i} of {:?}",
                        v.to_tuple(datum.family)
                    )))
                }
                _ => found = Some(cand),
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_datum;

    #[test]
    fn text_form_round_trip() {
        let v = CrystalVector::from_tuple(Family::B1, 3, &[1, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(v.display(Family::B1).to_string(), "1,0,0|1|0,0,0");
        assert_eq!(CrystalVector::parse(Family::B1, 3, "1,0,0|1|0,0,0").unwrap(), v);
        assert_eq!(CrystalVector::parse(Family::B1, 3, "(1,0,0,1,0,0,0)").unwrap(), v);
        let c = CrystalVector::from_tuple(Family::C1, 2, &[1, 0, 0, 1]).unwrap();
        assert_eq!(c.display(Family::C1).to_string(), "1,0|0,1");
        assert_eq!(c.xbari(1), 1);
        assert!(CrystalVector::parse(Family::C1, 2, "1,0,0").is_err());
    }

    #[test]
    fn every_node_has_a_rule() {
        for fam in Family::ALL {
            let d = build_datum(fam, fam.min_rank() + 1).unwrap();
            let v = CrystalVector::zero(d.rank);
            for i in d.nodes() {
                let r = node_rule(&d, i);
                assert!(!r.cases.is_empty());
                let _ = raw_ftilde(&d, i, &v);
            }
        }
    }
}
