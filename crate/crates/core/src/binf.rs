//! The limit crystal `B_∞`, extended columns, and virtual Young walls
//! realizing `B(∞)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{AffineDatum, ClassicalWeight, Family};
use crate::coords::{raw_etilde, raw_ftilde, BInfVector, CrystalVector, Slot};
use crate::error::{Error, Result};
use crate::perfect::closed_form;
use crate::wall::{tensor_target, FactorStats, VertexStats};

/// `B_∞` over one affine datum.
#[derive(Debug, Clone)]
pub struct LimitCrystal {
    pub datum: AffineDatum,
}

impl LimitCrystal {
    pub fn new(datum: AffineDatum) -> Self {
        LimitCrystal { datum }
    }

    pub fn family(&self) -> Family {
        self.datum.family
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Slack count of the virtual column (negative values allowed).
    pub fn slack(&self, b: &BInfVector) -> i64 {
        match self.family() {
            Family::A2even | Family::C1 => -b.sum(),
            Family::Dtwist => -b.sum() - b.x0,
            _ => 0,
        }
    }

    pub fn is_member(&self, b: &BInfVector) -> bool {
        let n = self.rank();
        if b.x.len() != n || b.xbar.len() != n {
            return false;
        }
        let fam = self.family();
        if fam.has_x0() {
            if !(0..=1).contains(&b.x0) {
                return false;
            }
        } else if b.x0 != 0 {
            return false;
        }
        let s = b.sum();
        match fam {
            Family::A2even | Family::Dtwist => true,
            Family::C1 => s % 2 == 0,
            Family::A2odd => s == 0,
            Family::D1 => s == 0 && (b.xi(n) == 0 || b.xbari(n) == 0) && b.xi(n) >= 0 && b.xbari(n) >= 0,
            Family::B1 => b.x0 + s == 0,
        }
    }

    /// Membership test on a flat tuple in text order.
    pub fn contains(&self, tuple: &[i64]) -> Result<bool> {
        let b = CrystalVector::from_tuple(self.family(), self.rank(), tuple)?;
        Ok(self.is_member(&b))
    }

    /// Total on `B_∞`.
    pub fn ftilde(&self, i: usize, b: &BInfVector) -> Result<BInfVector> {
        if i > self.rank() {
            return Err(Error::NodeIndex {
                index: i,
                max: self.rank(),
            });
        }
        let out = raw_ftilde(&self.datum, i, b);
        if !self.is_member(&out) {
            return Err(Error::Internal(format!("f{i} left the limit crystal")));
        }
        Ok(out)
    }

    pub fn etilde(&self, i: usize, b: &BInfVector) -> Result<Option<BInfVector>> {
        if i > self.rank() {
            return Err(Error::NodeIndex {
                index: i,
                max: self.rank(),
            });
        }
        raw_etilde(&self.datum, i, b, |c| self.is_member(c))
    }

    pub fn epsilon_phi(&self, i: usize, b: &BInfVector) -> (i64, i64) {
        closed_form(self.family(), self.rank(), self.slack(b), i, b)
    }

    /// `wt(b) = Σ (φ_i - ε_i) Λ_i`, zero at `b_∞`.
    pub fn weight(&self, b: &BInfVector) -> ClassicalWeight {
        ClassicalWeight(
            self.datum
                .nodes()
                .map(|i| {
                    let (e, p) = self.epsilon_phi(i, b);
                    p - e
                })
                .collect(),
        )
    }
}

/// A count in `Z≥0 ∪ {∞}`; serializes the infinite value as `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(u64),
    Inf,
}

impl Serialize for Extended {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_u64(*v),
            Extended::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Extended::Finite(v)),
            Raw::S(s) if s == "inf" => Ok(Extended::Inf),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad extended count {s:?}"))),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Inf => f.write_str("inf"),
        }
    }
}

/// Slices above (`u`) and below (`v`) the virtual line, per coordinate group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedColumn {
    pub x: Vec<(Extended, Extended)>,
    pub x0: Option<(Extended, Extended)>,
    pub xbar: Vec<(Extended, Extended)>,
    pub slack: Option<(Extended, Extended)>,
}

fn split(v: i64) -> (Extended, Extended) {
    (
        Extended::Finite(v.max(0) as u64),
        Extended::Finite((-v).max(0) as u64),
    )
}

fn difference(p: (Extended, Extended)) -> Result<Option<i64>> {
    match p {
        (Extended::Finite(u), Extended::Finite(v)) => Ok(Some(u as i64 - v as i64)),
        (Extended::Inf, Extended::Inf) => Ok(None),
        _ => Err(Error::Parse {
            what: "extended column",
            input: "one-sided infinite pair".into(),
        }),
    }
}

impl LimitCrystal {
    /// The canonical representative: `min(u, v) = 0` in every pair.
    pub fn extend_column(&self, b: &BInfVector) -> ExtendedColumn {
        let fam = self.family();
        ExtendedColumn {
            x: b.x.iter().map(|&v| split(v)).collect(),
            x0: fam.has_x0().then(|| split(b.x0)),
            xbar: b.xbar.iter().map(|&v| split(v)).collect(),
            slack: fam.has_slack().then(|| split(self.slack(b))),
        }
    }

    /// All-`∞` column: the ground state.
    pub fn ground_extended(&self) -> ExtendedColumn {
        let inf = (Extended::Inf, Extended::Inf);
        let fam = self.family();
        ExtendedColumn {
            x: vec![inf; self.rank()],
            x0: fam.has_x0().then_some(inf),
            xbar: vec![inf; self.rank()],
            slack: fam.has_slack().then_some(inf),
        }
    }

    /// Differences `u - v`; a pair `(∞, ∞)` reads as zero.
    pub fn collapse_extended(&self, e: &ExtendedColumn) -> Result<BInfVector> {
        let n = self.rank();
        if e.x.len() != n || e.xbar.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: e.x.len().min(e.xbar.len()),
            });
        }
        let mut b = CrystalVector::zero(n);
        for k in 0..n {
            b.x[k] = difference(e.x[k])?.unwrap_or(0);
            b.xbar[k] = difference(e.xbar[k])?.unwrap_or(0);
        }
        if let Some(p) = e.x0 {
            b.x0 = difference(p)?.unwrap_or(0);
        }
        Ok(b)
    }

    /// Two extended columns are the same virtual column iff they collapse alike.
    pub fn equivalent(&self, a: &ExtendedColumn, b: &ExtendedColumn) -> Result<bool> {
        Ok(self.collapse_extended(a)? == self.collapse_extended(b)?)
    }
}

/// A reduced virtual wall: `cols[k]` at position `k`, everything beyond is
/// `b_∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BInfWall {
    pub cols: Vec<BInfVector>,
    pub moves: Vec<i64>,
}

impl LimitCrystal {
    pub fn empty_wall(&self) -> BInfWall {
        BInfWall {
            cols: Vec::new(),
            moves: vec![0; self.rank() + 1],
        }
    }

    /// Drops trailing `b_∞` columns.
    pub fn normalized(&self, mut y: BInfWall) -> BInfWall {
        self.normalize(&mut y);
        y
    }

    fn normalize(&self, y: &mut BInfWall) {
        while y
            .cols
            .last()
            .is_some_and(|c| c.x.iter().chain(&c.xbar).all(|&v| v == 0) && c.x0 == 0)
        {
            y.cols.pop();
        }
        self.datum.reduce_mod_delta(&mut y.moves);
    }

    /// `u_∞` first, then `c_{N-1} … c_0`.
    fn factors(&self, y: &BInfWall) -> Vec<FactorStats> {
        let n = self.rank();
        let mut out = vec![FactorStats {
            eps: vec![0; n + 1],
            phi: vec![0; n + 1],
        }];
        for c in y.cols.iter().rev() {
            let (eps, phi) = self.datum.nodes().map(|i| self.epsilon_phi(i, c)).unzip();
            out.push(FactorStats { eps, phi });
        }
        out
    }

    pub fn wall_ftilde(&self, i: usize, y: &BInfWall) -> Result<BInfWall> {
        if i > self.rank() {
            return Err(Error::NodeIndex {
                index: i,
                max: self.rank(),
            });
        }
        let mut cur = y.clone();
        loop {
            let t = tensor_target(i, &self.factors(&cur), false);
            if t == 0 {
                cur.cols.push(CrystalVector::zero(self.rank()));
                continue;
            }
            let k = cur.cols.len() - t;
            cur.cols[k] = self.ftilde(i, &cur.cols[k])?;
            cur.moves[i] += 1;
            self.normalize(&mut cur);
            return Ok(cur);
        }
    }

    pub fn wall_etilde(&self, i: usize, y: &BInfWall) -> Result<Option<BInfWall>> {
        if i > self.rank() {
            return Err(Error::NodeIndex {
                index: i,
                max: self.rank(),
            });
        }
        let t = tensor_target(i, &self.factors(y), true);
        if t == 0 {
            return Ok(None);
        }
        let k = y.cols.len() - t;
        let Some(c) = self.etilde(i, &y.cols[k])? else {
            return Ok(None);
        };
        let mut out = y.clone();
        out.cols[k] = c;
        out.moves[i] -= 1;
        self.normalize(&mut out);
        Ok(Some(out))
    }

    /// `-Σ k_i cl(α_i)`.
    pub fn wall_weight(&self, y: &BInfWall) -> ClassicalWeight {
        let mut w = ClassicalWeight::zero(self.rank());
        for (j, k) in y.moves.iter().enumerate() {
            w = &w - &(*k * &self.datum.alpha(j));
        }
        w
    }

    pub fn wall_stats(&self, y: &BInfWall) -> VertexStats {
        let factors = self.factors(y);
        let mut eps = Vec::new();
        let mut phi = Vec::new();
        for i in self.datum.nodes() {
            let (mut e, mut p) = (0i64, 0i64);
            for f in &factors[1..] {
                let (e2, p2) = (f.eps[i], f.phi[i]);
                let (w1, w2) = (p - e, p2 - e2);
                (e, p) = (e.max(e2 - w1), p2.max(p + w2));
            }
            eps.push(e);
            phi.push(p);
        }
        VertexStats {
            weight: self.wall_weight(y),
            eps,
            phi,
        }
    }

    /// `"c_{N-1} | … | c_0"`, or `Y_empty` for the highest wall.
    pub fn wall_text(&self, y: &BInfWall) -> String {
        if y.cols.is_empty() {
            return "Y_empty".into();
        }
        let fam = self.family();
        let cols: Vec<String> = y.cols.iter().rev().map(|c| c.display(fam).to_string()).collect();
        cols.join(" | ")
    }

    /// Virtual-slice counts of one column, keyed by coordinate slot (and
    /// `None` for the slack group).
    pub fn slice_counts(&self, b: &BInfVector) -> Vec<(Option<Slot>, i64)> {
        let fam = self.family();
        let mut out: Vec<(Option<Slot>, i64)> = CrystalVector::slots(fam, self.rank())
            .into_iter()
            .map(|s| (Some(s), b.get(s)))
            .collect();
        if fam.has_slack() {
            out.push((None, self.slack(b)));
        }
        out
    }
}
