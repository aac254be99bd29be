//! Level-l perfect crystals `B^(l)` on coordinate vectors.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::Rational64;

use crate::cartan::{AffineDatum, ClassicalWeight, Family};
use crate::coords::{raw_etilde, raw_ftilde, CrystalVector, Slot};
use crate::error::{Error, Result};

/// `B^(l)` for one datum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectCrystal {
    pub datum: AffineDatum,
    pub level: i64,
}

/// The element `b` of a ground-state pair, together with its partner `b'`
/// when the ground-state path has period 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPair {
    pub b: CrystalVector,
    pub b_prime: Option<CrystalVector>,
}

impl MinimalPair {
    /// The column sitting at wall position 0.
    pub fn position_zero(&self) -> &CrystalVector {
        self.b_prime.as_ref().unwrap_or(&self.b)
    }
}

/// Outcome of the perfect-crystal checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrystalReport {
    pub size: usize,
    pub connected: bool,
    pub unique_maximal: bool,
    /// Node left out of the classical part used for `unique_maximal`.
    pub classical_node: usize,
    /// Unique maximal weight read with node 0 removed, for every family.
    pub unique_maximal_node_zero: bool,
    pub level_bound: bool,
    pub minimal_vectors: bool,
    /// Human-readable counterexamples, one per failure.
    pub counterexamples: Vec<String>,
}

impl CrystalReport {
    pub fn passed(&self) -> bool {
        self.connected && self.unique_maximal && self.level_bound && self.minimal_vectors
    }
}

fn pos(a: i64) -> i64 {
    a.max(0)
}

impl PerfectCrystal {
    pub fn new(datum: AffineDatum, level: i64) -> Self {
        PerfectCrystal { datum, level }
    }

    pub fn family(&self) -> Family {
        self.datum.family
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Slack `l'`: the number of slack slices of the column.
    pub fn slack(&self, b: &CrystalVector) -> i64 {
        match self.family() {
            Family::C1 => 2 * self.level - b.sum(),
            Family::A2even | Family::Dtwist => self.level - b.sum() - b.x0,
            _ => 0,
        }
    }

    pub fn is_member(&self, b: &CrystalVector) -> bool {
        let n = self.rank();
        if b.x.len() != n || b.xbar.len() != n {
            return false;
        }
        if b.x.iter().chain(&b.xbar).any(|&v| v < 0) {
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
        let l = self.level;
        match fam {
            Family::A2even => s <= l,
            Family::Dtwist => b.x0 + s <= l,
            Family::C1 => s <= 2 * l && s % 2 == 0,
            Family::A2odd => s == l,
            Family::D1 => s == l && (b.xi(n) == 0 || b.xbari(n) == 0),
            Family::B1 => b.x0 + s == l,
        }
    }

    /// Membership test on a flat tuple in text order.
    pub fn contains(&self, tuple: &[i64]) -> Result<bool> {
        let v = CrystalVector::from_tuple(self.family(), self.rank(), tuple)?;
        Ok(self.is_member(&v))
    }

    /// All members, lexicographic on the text-order tuple.
    pub fn enumerate(&self) -> Vec<CrystalVector> {
        let slots = CrystalVector::slots(self.family(), self.rank());
        let cap = 2 * self.level;
        let mut out = Vec::new();
        let mut cur = vec![0i64; slots.len()];
        fill(&slots, 0, cap, &mut cur, &mut |t| {
            let v = CrystalVector::from_tuple(self.family(), self.rank(), t).expect("arity");
            if self.is_member(&v) {
                out.push(v);
            }
        });
        out
    }

    pub fn ftilde(&self, i: usize, b: &CrystalVector) -> Option<CrystalVector> {
        let out = raw_ftilde(&self.datum, i, b);
        self.is_member(&out).then_some(out)
    }

    pub fn etilde(&self, i: usize, b: &CrystalVector) -> Result<Option<CrystalVector>> {
        raw_etilde(&self.datum, i, b, |c| self.is_member(c))
    }

    /// `(ε_i, φ_i)` by iterating the operators.
    pub fn epsilon_phi(&self, i: usize, b: &CrystalVector) -> (i64, i64) {
        let mut phi = 0;
        let mut cur = b.clone();
        while let Some(next) = self.ftilde(i, &cur) {
            phi += 1;
            cur = next;
        }
        let mut eps = 0;
        let mut cur = b.clone();
        while let Ok(Some(prev)) = self.etilde(i, &cur) {
            eps += 1;
            cur = prev;
        }
        (eps, phi)
    }

    pub fn epsilon(&self, b: &CrystalVector) -> ClassicalWeight {
        ClassicalWeight(self.datum.nodes().map(|i| self.epsilon_phi(i, b).0).collect())
    }

    pub fn phi(&self, b: &CrystalVector) -> ClassicalWeight {
        ClassicalWeight(self.datum.nodes().map(|i| self.epsilon_phi(i, b).1).collect())
    }

    /// `wt(b) = Σ (φ_i - ε_i) Λ_i`
    pub fn weight(&self, b: &CrystalVector) -> ClassicalWeight {
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

    /// The ground-state pair for a dominant `λ` of this level.
    pub fn minimal_vector(&self, lambda: &ClassicalWeight) -> Result<MinimalPair> {
        let d = &self.datum;
        if lambda.0.len() != d.rank + 1 {
            return Err(Error::Arity {
                expected: d.rank + 1,
                got: lambda.0.len(),
            });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let got = d.level(lambda);
        if got != self.level {
            return Err(Error::WrongLevel {
                weight: lambda.to_string(),
                expected: self.level,
                got,
            });
        }
        let n = d.rank;
        let k = &lambda.0;
        let mut b = CrystalVector::zero(n);
        let swap = |b: &CrystalVector| {
            let mut c = b.clone();
            std::mem::swap(&mut c.x[0], &mut c.xbar[0]);
            c
        };
        let pair = match d.family {
            Family::A2even | Family::C1 => {
                b.x.copy_from_slice(&k[1..=n]);
                b.xbar.copy_from_slice(&k[1..=n]);
                MinimalPair { b, b_prime: None }
            }
            Family::Dtwist => {
                b.x0 = k[n] % 2;
                b.x[..n - 1].copy_from_slice(&k[1..n]);
                b.xbar[..n - 1].copy_from_slice(&k[1..n]);
                b.x[n - 1] = (k[n] - b.x0) / 2;
                b.xbar[n - 1] = b.x[n - 1];
                MinimalPair { b, b_prime: None }
            }
            Family::B1 | Family::A2odd | Family::D1 => {
                b.x[0] = k[0];
                b.xbar[0] = k[1];
                let top = match d.family {
                    Family::B1 => n - 1,
                    Family::A2odd => n,
                    _ => n - 2,
                };
                b.x[1..top].copy_from_slice(&k[2..=top]);
                b.xbar[1..top].copy_from_slice(&k[2..=top]);
                match d.family {
                    Family::B1 => {
                        b.x0 = k[n] % 2;
                        b.x[n - 1] = (k[n] - b.x0) / 2;
                        b.xbar[n - 1] = b.x[n - 1];
                    }
                    Family::D1 => {
                        let m = k[n - 1].min(k[n]);
                        b.x[n - 2] = m;
                        b.xbar[n - 2] = m;
                        b.x[n - 1] = pos(k[n - 1] - k[n]);
                        b.xbar[n - 1] = pos(k[n] - k[n - 1]);
                    }
                    _ => {}
                }
                let mut bp = swap(&b);
                if d.family == Family::D1 {
                    // the partner also trades the two spin nodes
                    std::mem::swap(&mut bp.x[n - 1], &mut bp.xbar[n - 1]);
                }
                MinimalPair { b, b_prime: Some(bp) }
            }
        };
        debug_assert!(self.is_member(&pair.b));
        Ok(pair)
    }

    /// Checks connectivity, the unique maximal weight, the level bound and
    /// the minimal vectors.
    pub fn verify_perfect(&self) -> CrystalReport {
        self.verify_elements(&self.enumerate())
    }

    /// Same checks over an explicit element set. `ε`/`φ` keep their values from
    /// the full crystal; `B⊗B` edges leaving the set are dropped.
    pub fn verify_elements(&self, elements: &[CrystalVector]) -> CrystalReport {
        let d = &self.datum;
        let set: HashSet<&CrystalVector> = elements.iter().collect();
        let ft = |i: usize, b: &CrystalVector| self.ftilde(i, b).filter(|c| set.contains(c));
        let et = |i: usize, b: &CrystalVector| self.etilde(i, b).ok().flatten().filter(|c| set.contains(c));
        let stats: Vec<(Vec<i64>, Vec<i64>)> = elements
            .iter()
            .map(|b| d.nodes().map(|i| self.epsilon_phi(i, b)).unzip())
            .collect();
        let weights: Vec<Vec<i64>> = stats
            .iter()
            .map(|(e, p)| p.iter().zip(e).map(|(p, e)| p - e).collect())
            .collect();
        let mut report = CrystalReport {
            size: elements.len(),
            ..Default::default()
        };
        let show = |b: &CrystalVector| b.display(d.family).to_string();

        // B ⊗ B is connected
        let idx: HashMap<&CrystalVector, usize> = elements.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let m = elements.len();
        let mut seen = vec![false; m * m];
        let mut stack = Vec::new();
        if m > 0 {
            seen[0] = true;
            stack.push((0usize, 0usize));
        }
        let mut reached = usize::from(m > 0);
        while let Some((p, q)) = stack.pop() {
            for i in d.nodes() {
                let (b1, b2) = (&elements[p], &elements[q]);
                let (e1, p1) = (stats[p].0[i], stats[p].1[i]);
                let e2 = stats[q].0[i];
                let _ = e1;
                let mut nbrs = Vec::new();
                // f on the tensor product
                if p1 > e2 {
                    if let Some(c) = ft(i, b1) {
                        nbrs.push((idx[&c], q));
                    }
                } else if let Some(c) = ft(i, b2) {
                    nbrs.push((p, idx[&c]));
                }
                // e on the tensor product
                if p1 >= e2 {
                    if let Some(c) = et(i, b1) {
                        nbrs.push((idx[&c], q));
                    }
                } else if let Some(c) = et(i, b2) {
                    nbrs.push((p, idx[&c]));
                }
                for (a, b) in nbrs {
                    if !seen[a * m + b] {
                        seen[a * m + b] = true;
                        reached += 1;
                        stack.push((a, b));
                    }
                }
            }
        }
        report.connected = reached == m * m;
        if !report.connected {
            report.counterexamples.push(format!(
                "B⊗B has {reached} of {} elements in the root component",
                m * m
            ));
        }

        // a unique element of maximal weight over the classical part
        report.classical_node = self.classical_node();
        report.unique_maximal = self.has_unique_top(&weights, report.classical_node);
        report.unique_maximal_node_zero = self.has_unique_top(&weights, 0);
        if !report.unique_maximal {
            report.counterexamples.push(format!(
                "no weight dominates all others over the roots j != {}",
                report.classical_node
            ));
        }

        // <c, ε(b)> ≥ l
        report.level_bound = true;
        for (b, (e, _)) in elements.iter().zip(&stats) {
            let lv: i64 = d.central.iter().zip(e).map(|(c, e)| c * e).sum();
            if lv < self.level {
                report.level_bound = false;
                report
                    .counterexamples
                    .push(format!("<c, ε({})> = {lv} < {}", show(b), self.level));
            }
        }

        // unique b^λ and b_λ for every dominant λ of level l
        report.minimal_vectors = true;
        for lam in d.dominant_weights_of_level(self.level) {
            let by_eps = stats.iter().filter(|(e, _)| *e == lam.0).count();
            let by_phi = stats.iter().filter(|(_, p)| *p == lam.0).count();
            if by_eps != 1 || by_phi != 1 {
                report.minimal_vectors = false;
                report.counterexamples.push(format!(
                    "λ = {lam}: {by_eps} elements with ε = λ, {by_phi} with φ = λ"
                ));
            }
        }
        report
    }

    /// The node removed to get the classical part for the maximal-weight check. For
    /// `A2even` this is `n`: removing node 0 leaves a C-type root lattice that
    /// misses the zero weight of `B^(l)` (see `unique_maximal_node_zero`).
    pub fn classical_node(&self) -> usize {
        match self.family() {
            Family::A2even => self.rank(),
            _ => 0,
        }
    }

    fn has_unique_top(&self, weights: &[Vec<i64>], skip: usize) -> bool {
        let mut distinct: Vec<&Vec<i64>> = weights.iter().collect();
        distinct.sort();
        distinct.dedup();
        distinct
            .iter()
            .find(|cand| weights.iter().all(|w| self.finite_dominates(cand, w, skip)))
            .is_some_and(|top| weights.iter().filter(|x| x == top).count() == 1)
    }

    /// True when `top - w` is a nonnegative integer combination of
    /// `cl(α_j)`, `j ≠ skip`.
    fn finite_dominates(&self, top: &[i64], w: &[i64], skip: usize) -> bool {
        let d = &self.datum;
        let keep: Vec<usize> = d.nodes().filter(|&j| j != skip).collect();
        let diff: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
        let mut m: Vec<Vec<Rational64>> = keep
            .iter()
            .map(|&r| {
                let mut row: Vec<Rational64> = keep
                    .iter()
                    .map(|&c| Rational64::from_integer(d.cartan[r][c]))
                    .collect();
                row.push(Rational64::from_integer(diff[r]));
                row
            })
            .collect();
        let Some(sol) = solve(&mut m) else {
            return false;
        };
        if sol
            .iter()
            .any(|x| !x.is_integer() || *x < Rational64::from_integer(0))
        {
            return false;
        }
        let rest: Rational64 = keep
            .iter()
            .zip(&sol)
            .map(|(&c, x)| Rational64::from_integer(d.cartan[skip][c]) * x)
            .sum();
        rest == Rational64::from_integer(diff[skip])
    }

    /// The printed closed forms (only meaningful for the B family).
    pub fn closed_form_b(&self, i: usize, b: &CrystalVector) -> (i64, i64) {
        closed_form(self.family(), self.rank(), self.slack(b), i, b)
    }
}

/// Closed forms of `(ε_i, φ_i)` in terms of the coordinates and the slack.
pub(crate) fn closed_form(fam: Family, n: usize, slack: i64, i: usize, b: &CrystalVector) -> (i64, i64) {
    let x = |k: usize| b.xi(k);
    let xb = |k: usize| b.xbari(k);
    if fam == Family::D1 && i == n - 1 {
        return (xb(n - 1) + x(n), x(n - 1) + xb(n));
    }
    if fam == Family::D1 && i == n {
        return (xb(n - 1) + xb(n), x(n - 1) + x(n));
    }
    if i == n {
        return if fam.has_x0() {
            (2 * xb(n) + b.x0, 2 * x(n) + b.x0)
        } else {
            (xb(n), x(n))
        };
    }
    if i == 0 {
        return match fam {
            Family::A2odd | Family::D1 | Family::B1 => (x(1) + pos(x(2) - xb(2)), xb(1) + pos(xb(2) - x(2))),
            Family::A2even | Family::Dtwist => (slack + 2 * pos(x(1) - xb(1)), slack + 2 * pos(xb(1) - x(1))),
            Family::C1 => (slack / 2 + pos(x(1) - xb(1)), slack / 2 + pos(xb(1) - x(1))),
        };
    }
    (
        xb(i) + pos(x(i + 1) - xb(i + 1)),
        x(i) + pos(xb(i + 1) - x(i + 1)),
    )
}

fn fill(slots: &[Slot], k: usize, left: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if k == slots.len() {
        f(cur);
        return;
    }
    let hi = if slots[k] == Slot::X0 { left.min(1) } else { left };
    for v in 0..=hi {
        cur[k] = v;
        fill(slots, k + 1, left - v, cur, f);
    }
    cur[k] = 0;
}

/// Gauss-Jordan on an augmented square system; `None` when singular.
#[allow(clippy::needless_range_loop)]
pub(crate) fn solve(m: &mut [Vec<Rational64>]) -> Option<Vec<Rational64>> {
    let n = m.len();
    let zero = Rational64::from_integer(0);
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != zero)?;
        m.swap(col, piv);
        let p = m[col][col];
        for c in col..=n {
            m[col][c] /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != zero {
                let f = m[r][col];
                for c in col..=n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n]).collect())
}

/// Weight multiset of a crystal, handy for comparing realizations.
pub fn weight_table(c: &PerfectCrystal) -> BTreeMap<ClassicalWeight, usize> {
    let mut out = BTreeMap::new();
    for b in c.enumerate() {
        *out.entry(c.weight(&b)).or_insert(0) += 1;
    }
    out
}
