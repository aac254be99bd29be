//! Level-l Young walls as λ-paths: an explicit prefix of columns in front of
//! the ground-state wall.

use std::fmt;

use crate::cartan::{AffineDatum, ClassicalWeight};
use crate::column::{materialize, read_coords, RenderFormat};
use crate::coords::CrystalVector;
use crate::error::{Error, Result};
use crate::perfect::PerfectCrystal;

/// The ground-state wall `Y_λ`. `columns[k]` sits at position `k` (mod period).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundStateWall {
    pub lambda: ClassicalWeight,
    pub period: usize,
    pub columns: Vec<CrystalVector>,
}

impl GroundStateWall {
    pub fn at(&self, k: usize) -> &CrystalVector {
        &self.columns[k % self.period]
    }
}

pub fn ground_state(crystal: &PerfectCrystal, lambda: &ClassicalWeight) -> Result<GroundStateWall> {
    let pair = crystal.minimal_vector(lambda)?;
    // b' = b for forked families when lambda_0 = lambda_1: period 1
    let columns = match pair.b_prime {
        Some(bp) if bp != pair.b => vec![bp, pair.b],
        _ => vec![pair.b],
    };
    Ok(GroundStateWall {
        lambda: lambda.clone(),
        period: columns.len(),
        columns,
    })
}

/// A wall: `cols[k]` is the column at position `k`; positions from
/// `cols.len()` on are ground columns. Normalized walls never end in a
/// ground-equal column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungWall {
    pub cols: Vec<CrystalVector>,
    /// `k_i`: number of `i`-blocks added since `Y_λ`.
    pub moves: Vec<i64>,
}

/// Where the `i`-signature puts the operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Column(usize),
    Tail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureResolution {
    pub i: usize,
    pub eps: i64,
    pub phi: i64,
    pub f_position: Option<Position>,
    pub e_position: Option<usize>,
}

/// `ε`, `φ` and weight of one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexStats {
    pub weight: ClassicalWeight,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
}

/// `B(λ)` realized by Young walls over `B^(l)`.
#[derive(Debug, Clone)]
pub struct WallCrystal {
    pub crystal: PerfectCrystal,
    pub ground: GroundStateWall,
}

impl WallCrystal {
    pub fn new(crystal: PerfectCrystal, lambda: &ClassicalWeight) -> Result<Self> {
        let ground = ground_state(&crystal, lambda)?;
        Ok(WallCrystal { crystal, ground })
    }

    pub fn datum(&self) -> &AffineDatum {
        &self.crystal.datum
    }

    pub fn highest(&self) -> YoungWall {
        YoungWall {
            cols: Vec::new(),
            moves: vec![0; self.datum().rank + 1],
        }
    }

    /// `λ_N = φ(ground column at N)`: the weight of the untouched tail.
    pub fn tail_weight(&self, n: usize) -> ClassicalWeight {
        self.crystal.phi(self.ground.at(n))
    }

    /// Trims trailing ground columns and takes the block counts modulo `δ`,
    /// so a wall is determined by its columns.
    pub fn normalize(&self, y: &mut YoungWall) {
        while let Some(last) = y.cols.last() {
            if last == self.ground.at(y.cols.len() - 1) {
                y.cols.pop();
            } else {
                break;
            }
        }
        self.datum().reduce_mod_delta(&mut y.moves);
    }

    /// Resolves the `i`-signature: tail `+`'s, then per column from `N-1`
    /// down to 0 its `ε_i` `-`'s followed by `φ_i` `+`'s, with adjacent
    /// `+-` pairs cancelled.
    pub fn signature(&self, i: usize, y: &YoungWall) -> SignatureResolution {
        let n = y.cols.len();
        // unmatched +'s, leftmost first: (position, count)
        let mut plus: Vec<(Position, i64)> = Vec::new();
        let mut minus = 0i64;
        let mut rightmost_minus = None;
        let tail = self.tail_weight(n).0[i];
        if tail > 0 {
            plus.push((Position::Tail, tail));
        }
        for k in (0..n).rev() {
            let (e, p) = self.crystal.epsilon_phi(i, &y.cols[k]);
            let mut e = e;
            while e > 0 {
                match plus.last_mut() {
                    Some((_, c)) => {
                        let take = (*c).min(e);
                        *c -= take;
                        e -= take;
                        if *c == 0 {
                            plus.pop();
                        }
                    }
                    None => {
                        minus += e;
                        rightmost_minus = Some(k);
                        e = 0;
                    }
                }
            }
            if p > 0 {
                plus.push((Position::Column(k), p));
            }
        }
        let phi = plus.iter().map(|(_, c)| c).sum();
        SignatureResolution {
            i,
            eps: minus,
            phi,
            f_position: plus.first().map(|(pos, _)| *pos),
            e_position: rightmost_minus,
        }
    }

    pub fn ftilde(&self, i: usize, y: &YoungWall) -> Result<Option<YoungWall>> {
        let sig = self.signature(i, y);
        let Some(pos) = sig.f_position else {
            return Ok(None);
        };
        let mut out = y.clone();
        let k = match pos {
            Position::Column(k) => k,
            Position::Tail => {
                let k = out.cols.len();
                out.cols.push(self.ground.at(k).clone());
                k
            }
        };
        let c = self
            .crystal
            .ftilde(i, &out.cols[k])
            .ok_or_else(|| Error::Internal(format!("f{i} selected column {k} with no room")))?;
        out.cols[k] = c;
        out.moves[i] += 1;
        self.normalize(&mut out);
        Ok(Some(out))
    }

    pub fn etilde(&self, i: usize, y: &YoungWall) -> Result<Option<YoungWall>> {
        let sig = self.signature(i, y);
        let Some(k) = sig.e_position else {
            return Ok(None);
        };
        let mut out = y.clone();
        let c = self
            .crystal
            .etilde(i, &out.cols[k])?
            .ok_or_else(|| Error::Internal(format!("e{i} selected column {k} with nothing to remove")))?;
        out.cols[k] = c;
        out.moves[i] -= 1;
        self.normalize(&mut out);
        Ok(Some(out))
    }

    /// `wt = λ - Σ k_i cl(α_i)` with `ε`/`φ` from the signature.
    pub fn stats(&self, y: &YoungWall) -> VertexStats {
        let d = self.datum();
        let mut weight = self.ground.lambda.clone();
        for (j, k) in y.moves.iter().enumerate() {
            weight = &weight - &(*k * &d.alpha(j));
        }
        let (eps, phi) = d
            .nodes()
            .map(|i| {
                let s = self.signature(i, y);
                (s.eps, s.phi)
            })
            .unzip();
        VertexStats { weight, eps, phi }
    }

    /// The weight read off the columns: `λ_N + Σ wt(c_k)`.
    pub fn path_weight(&self, y: &YoungWall) -> ClassicalWeight {
        let mut w = self.tail_weight(y.cols.len());
        for c in &y.cols {
            w = &w + &self.crystal.weight(c);
        }
        w
    }

    /// Membership of every column, normalization, reducedness of the
    /// materialized columns and agreement of both weight readings.
    pub fn validate(&self, y: &YoungWall) -> bool {
        if y.moves.len() != self.datum().rank + 1 {
            return false;
        }
        if !y.cols.iter().all(|c| self.crystal.is_member(c)) {
            return false;
        }
        if y.cols
            .last()
            .is_some_and(|c| c == self.ground.at(y.cols.len() - 1))
        {
            return false;
        }
        let reduced = y.cols.iter().all(|c| {
            let col = materialize(&self.crystal, c);
            col.is_reduced() && read_coords(&col).ok().as_ref() == Some(c)
        });
        reduced && self.stats(y).weight == self.path_weight(y)
    }

    /// `"λ ; c_{N-1} | … | c_0"`
    pub fn text(&self, y: &YoungWall) -> String {
        let fam = self.crystal.family();
        let cols: Vec<String> = y.cols.iter().rev().map(|c| c.display(fam).to_string()).collect();
        if cols.is_empty() {
            format!("{} ;", self.ground.lambda)
        } else {
            format!("{} ; {}", self.ground.lambda, cols.join(" | "))
        }
    }

    /// Wall text back to a wall; the weight is rebuilt from the columns.
    pub fn parse(&self, s: &str) -> Result<YoungWall> {
        let bad = || Error::Parse {
            what: "wall",
            input: s.to_string(),
        };
        let (lam, rest) = s.split_once(';').ok_or_else(bad)?;
        if self.datum().parse_weight(lam.trim())? != self.ground.lambda {
            return Err(bad());
        }
        let fam = self.crystal.family();
        let mut cols = Vec::new();
        if !rest.trim().is_empty() {
            for part in rest.split(" | ") {
                cols.push(CrystalVector::parse(fam, self.datum().rank, part)?);
            }
        }
        cols.reverse();
        self.from_columns(cols).ok_or_else(bad)
    }

    /// Builds a wall from explicit columns (position 0 first), recovering the
    /// block counts from the weight.
    pub fn from_columns(&self, cols: Vec<CrystalVector>) -> Option<YoungWall> {
        let mut y = YoungWall {
            cols,
            moves: vec![0; self.datum().rank + 1],
        };
        self.normalize(&mut y);
        let diff = &self.ground.lambda - &self.path_weight(&y);
        y.moves = self.root_coefficients(&diff)?;
        self.datum().reduce_mod_delta(&mut y.moves);
        self.validate(&y).then_some(y)
    }

    /// Nonnegative `k` with `Σ k_j cl(α_j) = w` and `k` minimal (some `k_j`
    /// zero); `cl(δ) = 0` makes the coefficients unique up to multiples of `δ`.
    fn root_coefficients(&self, w: &ClassicalWeight) -> Option<Vec<i64>> {
        let d = self.datum();
        // Solve with k_0 free: try k_0 = 0,1,... and the rest by elimination.
        let n = d.rank;
        for k0 in 0..=64i64 {
            let target: Vec<i64> = (0..=n).map(|r| w.0[r] - k0 * d.cartan[r][0]).collect();
            if let Some(rest) = solve_integer(d, &target) {
                let mut k = vec![k0];
                k.extend(rest);
                if k.iter().all(|&x| x >= 0) {
                    // remove full δ multiples
                    let m = (0..=n).map(|j| k[j] / d.null_root[j]).min().unwrap_or(0);
                    return Some((0..=n).map(|j| k[j] - m * d.null_root[j]).collect());
                }
            }
        }
        None
    }

    pub fn render(&self, y: &YoungWall, format: RenderFormat) -> String {
        let mut out = String::new();
        let n = y.cols.len().max(1);
        for k in (0..n).rev() {
            let c = y.cols.get(k).unwrap_or_else(|| self.ground.at(k));
            let col = materialize(&self.crystal, c);
            out.push_str(&format!("% position {k}\n"));
            out.push_str(&crate::column::render_column(&col, format));
        }
        out
    }
}

/// Integer solution of rows `1..=n` of `A k = target` over columns `1..=n`,
/// checked against row 0.
fn solve_integer(d: &AffineDatum, target: &[i64]) -> Option<Vec<i64>> {
    use num_rational::Rational64;
    let n = d.rank;
    let mut m: Vec<Vec<Rational64>> = (1..=n)
        .map(|r| {
            let mut row: Vec<Rational64> = (1..=n)
                .map(|c| Rational64::from_integer(d.cartan[r][c]))
                .collect();
            row.push(Rational64::from_integer(target[r]));
            row
        })
        .collect();
    let sol = crate::perfect::solve(&mut m)?;
    if sol.iter().any(|x| !x.is_integer()) {
        return None;
    }
    let sol: Vec<i64> = sol.iter().map(|x| x.to_integer()).collect();
    let row0: i64 = (1..=n).map(|c| d.cartan[0][c] * sol[c - 1]).sum();
    (row0 == target[0]).then_some(sol)
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Column(k) => write!(f, "column {k}"),
            Position::Tail => f.write_str("tail"),
        }
    }
}

/// `(ε, φ, wt)` of one tensor factor, for the recursive tensor rule.
#[derive(Debug, Clone)]
pub(crate) struct FactorStats {
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
}

/// Which factor of `F_0 ⊗ F_1 ⊗ … ⊗ F_m` (leftmost first) the operator hits,
/// by the two-factor rule applied from the right end inward. `None` for `f`
/// never happens; `e` on the leftmost factor is reported as index 0.
pub(crate) fn tensor_target(i: usize, factors: &[FactorStats], raise: bool) -> usize {
    // prefix (ε, φ) of F_0 ⊗ … ⊗ F_k
    let mut pre: Vec<(i64, i64)> = Vec::with_capacity(factors.len());
    for (k, f) in factors.iter().enumerate() {
        let (e2, p2) = (f.eps[i], f.phi[i]);
        if k == 0 {
            pre.push((e2, p2));
        } else {
            let (e1, p1) = pre[k - 1];
            // <h_i, wt> = φ - ε for every factor here
            let w1 = p1 - e1;
            let w2 = p2 - e2;
            pre.push((e1.max(e2 - w1), p2.max(p1 + w2)));
        }
    }
    let mut k = factors.len() - 1;
    while k > 0 {
        let phi_left = pre[k - 1].1;
        let eps_right = factors[k].eps[i];
        let go_left = if raise {
            phi_left >= eps_right
        } else {
            phi_left > eps_right
        };
        if !go_left {
            return k;
        }
        k -= 1;
    }
    0
}

impl WallCrystal {
    fn factors(&self, y: &YoungWall) -> Vec<FactorStats> {
        let n = self.datum().rank;
        let tail = self.tail_weight(y.cols.len());
        let mut out = vec![FactorStats {
            eps: vec![0; n + 1],
            phi: tail.0.clone(),
        }];
        for c in y.cols.iter().rev() {
            let (eps, phi) = self
                .datum()
                .nodes()
                .map(|i| self.crystal.epsilon_phi(i, c))
                .unzip();
            out.push(FactorStats { eps, phi });
        }
        out
    }

    /// `F̃_i` by the recursive two-factor rule instead of the signature.
    pub fn ftilde_by_tensor_rule(&self, i: usize, y: &YoungWall) -> Result<Option<YoungWall>> {
        let mut cur = y.clone();
        loop {
            let factors = self.factors(&cur);
            let t = tensor_target(i, &factors, false);
            if t == 0 {
                if factors[0].phi[i] <= 0 {
                    return Ok(None);
                }
                // the tail hit: expose one more ground column and retry
                let k = cur.cols.len();
                cur.cols.push(self.ground.at(k).clone());
                continue;
            }
            let k = cur.cols.len() - t;
            let Some(c) = self.crystal.ftilde(i, &cur.cols[k]) else {
                return Ok(None);
            };
            cur.cols[k] = c;
            cur.moves[i] += 1;
            self.normalize(&mut cur);
            return Ok(Some(cur));
        }
    }

    /// `Ẽ_i` by the recursive two-factor rule.
    pub fn etilde_by_tensor_rule(&self, i: usize, y: &YoungWall) -> Result<Option<YoungWall>> {
        let factors = self.factors(y);
        let t = tensor_target(i, &factors, true);
        if t == 0 {
            return Ok(None);
        }
        let k = y.cols.len() - t;
        let Some(c) = self.crystal.etilde(i, &y.cols[k])? else {
            return Ok(None);
        };
        let mut out = y.clone();
        out.cols[k] = c;
        out.moves[i] -= 1;
        self.normalize(&mut out);
        Ok(Some(out))
    }
}

/// `B(λ)` as `B(λ_N) ⊗ B^(l)^{⊗N}` with a fixed number of explicit factors.
/// States list all `N` factors, position 0 first.
#[derive(Debug, Clone)]
pub struct PathCrystal {
    pub walls: WallCrystal,
    pub factors: usize,
}

impl PathCrystal {
    pub fn new(walls: WallCrystal, factors: usize) -> Self {
        PathCrystal { walls, factors }
    }

    pub fn highest(&self) -> Vec<CrystalVector> {
        (0..self.factors)
            .map(|k| self.walls.ground.at(k).clone())
            .collect()
    }

    fn factor_stats(&self, p: &[CrystalVector]) -> Vec<FactorStats> {
        let d = self.walls.datum();
        let tail = self.walls.tail_weight(p.len());
        let mut out = vec![FactorStats {
            eps: vec![0; d.rank + 1],
            phi: tail.0,
        }];
        for c in p.iter().rev() {
            let (eps, phi) = d.nodes().map(|i| self.walls.crystal.epsilon_phi(i, c)).unzip();
            out.push(FactorStats { eps, phi });
        }
        out
    }

    fn act(&self, i: usize, p: &[CrystalVector], raise: bool) -> Result<Option<Vec<CrystalVector>>> {
        let factors = self.factor_stats(p);
        let t = tensor_target(i, &factors, raise);
        if t == 0 {
            if raise || factors[0].phi[i] <= 0 {
                return Ok(None);
            }
            return Err(Error::PathOverflow(self.factors));
        }
        let k = p.len() - t;
        let c = if raise {
            self.walls.crystal.etilde(i, &p[k])?
        } else {
            self.walls.crystal.ftilde(i, &p[k])
        };
        Ok(c.map(|c| {
            let mut out = p.to_vec();
            out[k] = c;
            out
        }))
    }

    pub fn ftilde(&self, i: usize, p: &[CrystalVector]) -> Result<Option<Vec<CrystalVector>>> {
        self.act(i, p, false)
    }

    pub fn etilde(&self, i: usize, p: &[CrystalVector]) -> Result<Option<Vec<CrystalVector>>> {
        self.act(i, p, true)
    }

    /// `ε`, `φ` of the whole tensor product and `wt = λ_N + Σ wt(c_k)`.
    pub fn stats(&self, p: &[CrystalVector]) -> VertexStats {
        let d = self.walls.datum();
        let factors = self.factor_stats(p);
        let mut eps = Vec::new();
        let mut phi = Vec::new();
        for i in d.nodes() {
            let (mut e, mut f) = (factors[0].eps[i], factors[0].phi[i]);
            for fs in &factors[1..] {
                let (e2, p2) = (fs.eps[i], fs.phi[i]);
                let w1 = f - e;
                let w2 = p2 - e2;
                let ne = e.max(e2 - w1);
                let nf = p2.max(f + w2);
                e = ne;
                f = nf;
            }
            eps.push(e);
            phi.push(f);
        }
        let mut weight = self.walls.tail_weight(p.len());
        for c in p {
            weight = &weight + &self.walls.crystal.weight(c);
        }
        VertexStats { weight, eps, phi }
    }

    pub fn text(&self, p: &[CrystalVector]) -> String {
        let fam = self.walls.crystal.family();
        let cols: Vec<String> = p.iter().rev().map(|c| c.display(fam).to_string()).collect();
        format!("{} ; {}", self.walls.ground.lambda, cols.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_datum, Family};

    fn walls(f: Family, n: usize, lam: &[i64]) -> WallCrystal {
        let d = build_datum(f, n).unwrap();
        let l = d.level(&ClassicalWeight(lam.to_vec()));
        WallCrystal::new(PerfectCrystal::new(d, l), &ClassicalWeight(lam.to_vec())).unwrap()
    }

    fn t(f: Family, v: &CrystalVector) -> Vec<i64> {
        v.to_tuple(f)
    }

    #[test]
    fn ground_state_examples() {
        let w = walls(Family::A2even, 2, &[2, 0, 0]);
        assert_eq!(w.ground.period, 1);
        assert_eq!(t(Family::A2even, w.ground.at(0)), vec![0, 0, 0, 0]);

        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        assert_eq!(w.ground.period, 2);
        assert_eq!(t(Family::B1, w.ground.at(0)), vec![0, 0, 0, 0, 0, 0, 2]);
        assert_eq!(t(Family::B1, w.ground.at(1)), vec![2, 0, 0, 0, 0, 0, 0]);

        let w = walls(Family::D1, 4, &[0, 0, 0, 1, 1]);
        for g in &w.ground.columns {
            assert_eq!((g.xi(3), g.xbari(3), g.xi(4), g.xbari(4)), (1, 1, 0, 0));
        }
    }

    #[test]
    fn signature_examples() {
        let w = walls(Family::A2even, 1, &[2, 0]);
        let y = w.highest();
        let s = w.signature(0, &y);
        assert_eq!((s.eps, s.phi, s.f_position), (0, 2, Some(Position::Tail)));
        let s = w.signature(1, &y);
        assert_eq!((s.eps, s.phi), (0, 0));
        let y1 = w.ftilde(0, &y).unwrap().unwrap();
        assert_eq!(t(Family::A2even, &y1.cols[0]), vec![1, 0]);
        let s = w.signature(0, &y1);
        assert_eq!((s.eps, s.e_position), (1, Some(0)));
    }

    #[test]
    fn highest_weight_wall() {
        for lam in build_datum(Family::B1, 3).unwrap().dominant_weights_of_level(2) {
            let w = walls(Family::B1, 3, &lam.0);
            let y = w.highest();
            let st = w.stats(&y);
            assert_eq!(st.weight, lam);
            assert_eq!(st.phi, lam.0);
            for i in 0..=3 {
                assert_eq!(w.etilde(i, &y).unwrap(), None);
            }
            assert!(w.validate(&y));
        }
    }

    #[test]
    fn f_then_e_and_engines_agree() {
        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        let mut layer = vec![w.highest()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for y in &layer {
                for i in 0..=3 {
                    let a = w.ftilde(i, y).unwrap();
                    assert_eq!(a, w.ftilde_by_tensor_rule(i, y).unwrap());
                    if let Some(z) = a {
                        assert_eq!(w.etilde(i, &z).unwrap().as_ref(), Some(y));
                        assert_eq!(w.etilde_by_tensor_rule(i, &z).unwrap().as_ref(), Some(y));
                        assert!(w.validate(&z));
                        assert_eq!(w.stats(&z).weight, w.path_weight(&z));
                        next.push(z);
                    }
                }
            }
            layer = next;
        }
    }

    #[test]
    fn text_round_trip() {
        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        let y = w.ftilde(0, &w.highest()).unwrap().unwrap();
        let y = w.ftilde(2, &y).unwrap().unwrap();
        let s = w.text(&y);
        assert_eq!(w.parse(&s).unwrap(), y);
        assert_eq!(w.text(&w.highest()), "2,0,0,0 ;");
        assert!(w.from_columns(vec![CrystalVector::zero(3)]).is_none());
    }

    #[test]
    fn non_member_column_fails_validation() {
        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        let mut y = w.highest();
        y.cols
            .push(CrystalVector::from_tuple(Family::B1, 3, &[5, 0, 0, 0, 0, 0, 0]).unwrap());
        assert!(!w.validate(&y));
    }

    #[test]
    fn path_overflow_is_reported() {
        let w = walls(Family::A2even, 1, &[2, 0]);
        let p = PathCrystal::new(w, 1);
        let mut layer = vec![p.highest()];
        let mut hit = false;
        for _ in 0..6 {
            let mut next = Vec::new();
            for s in &layer {
                for i in 0..=1 {
                    match p.ftilde(i, s) {
                        Ok(Some(n)) => next.push(n),
                        Ok(None) => {}
                        Err(Error::PathOverflow(1)) => hit = true,
                        Err(e) => panic!("{e}"),
                    }
                }
            }
            layer = next;
        }
        assert!(hit);
    }
}
