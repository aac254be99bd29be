//! Level-l Young columns as lists of slices.
//!
//! A slice is a stack of block colors read bottom to top. Its blocks follow
//! the family's periodic stacking pattern; one period is the δ-slice.
//! Half-depth layers hold two blocks side by side and may be half filled at
//! the top of a slice.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cartan::Family;
use crate::coords::{node_rule, CrystalVector, Slot};
use crate::error::{Error, Result};
use crate::perfect::PerfectCrystal;

/// One layer of the stacking pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Full(usize),
    /// Two half-depth blocks; the stored order is the drawing order.
    Half(usize, usize),
}

/// A slice group of a reduced column: the slack group or one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    Slack,
    Coord(SlotKey),
}

/// Serializable mirror of [`Slot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SlotKey {
    X(usize),
    X0,
    Xbar(usize),
}

impl From<Slot> for SlotKey {
    fn from(s: Slot) -> Self {
        match s {
            Slot::X(i) => SlotKey::X(i),
            Slot::X0 => SlotKey::X0,
            Slot::Xbar(i) => SlotKey::Xbar(i),
        }
    }
}

impl From<SlotKey> for Slot {
    fn from(s: SlotKey) -> Self {
        match s {
            SlotKey::X(i) => Slot::X(i),
            SlotKey::X0 => Slot::X0,
            SlotKey::Xbar(i) => Slot::Xbar(i),
        }
    }
}

/// A colored block with its shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredBlock {
    pub color: usize,
    /// Half depth (drawn as a triangle).
    pub half: bool,
    /// Width `1/(2l)` instead of `1/l`.
    pub narrow: bool,
}

/// The stacking pattern of a family and the reduced-column template.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnPattern {
    pub family: Family,
    pub rank: usize,
    pub layers: Vec<Layer>,
    /// Group slices in layout order, left to right.
    templates: Vec<(Group, Vec<usize>)>,
}

impl ColumnPattern {
    pub fn new(family: Family, rank: usize) -> Self {
        let n = rank;
        let mut layers = Vec::new();
        let forked = family.is_forked();
        if forked {
            layers.push(Layer::Half(1, 0));
            let top = if family == Family::D1 { n - 2 } else { n - 1 };
            layers.extend((2..=top).map(Layer::Full));
        } else {
            layers.push(Layer::Half(0, 0));
            layers.extend((1..n).map(Layer::Full));
        }
        match family {
            Family::Dtwist | Family::B1 => layers.push(Layer::Half(n, n)),
            Family::D1 => layers.push(Layer::Half(n - 1, n)),
            _ => layers.push(Layer::Full(n)),
        }
        let bottom_full = if forked { 2 } else { 1 };
        let down_from = if family == Family::D1 { n - 2 } else { n - 1 };
        layers.extend((bottom_full..=down_from).rev().map(Layer::Full));

        let cycle: Vec<usize> = layers
            .iter()
            .flat_map(|l| match *l {
                Layer::Full(c) => vec![c],
                Layer::Half(a, b) => vec![a, b],
            })
            .collect();
        let pre = |k: usize| cycle[..k].to_vec();
        let mut t: Vec<(Group, Vec<usize>)> = Vec::new();
        let c = |s: Slot| Group::Coord(s.into());
        if forked {
            t.push((c(Slot::X(1)), vec![0]));
            t.push((c(Slot::Xbar(1)), vec![1]));
            let last_plain = if family == Family::D1 { n - 1 } else { n };
            for k in 2..=last_plain {
                t.push((c(Slot::X(k)), pre(k)));
            }
            match family {
                Family::A2odd => {
                    for i in (2..=n).rev() {
                        t.push((c(Slot::Xbar(i)), pre(n + 1 + (n - i))));
                    }
                }
                Family::B1 => {
                    t.push((c(Slot::X0), pre(n + 1)));
                    for i in (2..=n).rev() {
                        t.push((c(Slot::Xbar(i)), pre(n + 2 + (n - i))));
                    }
                }
                _ => {
                    let mut xn = pre(n - 1);
                    xn.push(n - 1);
                    let mut xbn = pre(n - 1);
                    xbn.push(n);
                    t.push((c(Slot::X(n)), xn));
                    t.push((c(Slot::Xbar(n)), xbn));
                    for i in (2..n).rev() {
                        t.push((c(Slot::Xbar(i)), pre(n + 1 + (n - 1 - i))));
                    }
                }
            }
        } else {
            t.push((Group::Slack, vec![0]));
            for k in 1..=n {
                t.push((c(Slot::X(k)), pre(k + 1)));
            }
            let base = if family == Family::Dtwist {
                t.push((c(Slot::X0), pre(n + 2)));
                n + 3
            } else {
                n + 2
            };
            for i in (1..=n).rev() {
                t.push((c(Slot::Xbar(i)), pre(base + (n - i))));
            }
        }
        debug_assert_eq!(t.last().map(|(_, s)| s.len()), Some(cycle.len()));
        ColumnPattern {
            family,
            rank,
            layers,
            templates: t,
        }
    }

    /// Number of blocks in one δ-slice.
    pub fn cycle_len(&self) -> usize {
        self.templates.last().map_or(0, |(_, s)| s.len())
    }

    /// The δ-slice as a color sequence.
    pub fn delta_slice(&self) -> Vec<usize> {
        self.templates.last().map(|(_, s)| s.clone()).unwrap_or_default()
    }

    /// Groups in layout order, left to right.
    pub fn groups(&self) -> impl Iterator<Item = Group> + '_ {
        self.templates.iter().map(|(g, _)| *g)
    }

    pub fn template(&self, g: Group) -> &[usize] {
        &self
            .templates
            .iter()
            .find(|(h, _)| *h == g)
            .expect("group of this family")
            .1
    }

    fn layout_index(&self, g: Group) -> usize {
        self.templates
            .iter()
            .position(|(h, _)| *h == g)
            .unwrap_or(usize::MAX)
    }

    /// Reads `blocks` as a prefix of the periodic pattern and returns it with
    /// full half-depth layers put in drawing order, or `None` when the stack
    /// does not follow the pattern.
    pub fn canonical(&self, blocks: &[usize]) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(blocks.len());
        let mut k = 0;
        for layer in self.layers.iter().cycle() {
            if k == blocks.len() {
                break;
            }
            match *layer {
                Layer::Full(c) => {
                    if blocks[k] != c {
                        return None;
                    }
                    out.push(c);
                    k += 1;
                }
                Layer::Half(a, b) => {
                    if k + 1 == blocks.len() {
                        if blocks[k] != a && blocks[k] != b {
                            return None;
                        }
                        out.push(blocks[k]);
                        k += 1;
                    } else {
                        let (p, q) = (blocks[k], blocks[k + 1]);
                        if !((p, q) == (a, b) || (p, q) == (b, a)) {
                            return None;
                        }
                        out.extend([a, b]);
                        k += 2;
                    }
                }
            }
        }
        Some(out)
    }

    /// The group of a reduced slice.
    pub fn classify(&self, slice: &[usize]) -> Option<Group> {
        let canon = self.canonical(slice)?;
        self.templates.iter().find(|(_, s)| *s == canon).map(|(g, _)| *g)
    }

    pub fn is_half(&self, color: usize) -> bool {
        self.layers
            .iter()
            .any(|l| matches!(*l, Layer::Half(a, b) if a == color || b == color))
    }

    /// Shapes of the blocks of a slice.
    pub fn blocks(&self, slice: &[usize]) -> Vec<ColoredBlock> {
        slice
            .iter()
            .map(|&c| ColoredBlock {
                color: c,
                half: self.is_half(c),
                narrow: self.family == Family::C1,
            })
            .collect()
    }
}

/// Slices per column at level `l`.
pub fn slices_per_column(family: Family, level: i64) -> usize {
    let l = usize::try_from(level).unwrap_or(0);
    if family == Family::C1 {
        2 * l
    } else {
        l
    }
}

/// A level-l Young column; slices are listed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungColumn {
    pub family: Family,
    pub rank: usize,
    pub level: i64,
    pub slices: Vec<Vec<usize>>,
}

impl YoungColumn {
    pub fn pattern(&self) -> ColumnPattern {
        ColumnPattern::new(self.family, self.rank)
    }

    pub fn block_count(&self) -> usize {
        self.slices.iter().map(Vec::len).sum()
    }

    /// Number of blocks of each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.rank + 1];
        for c in self.slices.iter().flatten() {
            out[*c] += 1;
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        let p = self.pattern();
        self.slices.iter().all(|s| p.classify(s).is_some())
    }

    /// Slices separated by `" | "`, blocks bottom to top separated by `"."`.
    pub fn slice_text(&self) -> String {
        self.slices
            .iter()
            .map(|s| s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("."))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// Inverse of [`slice_text`](Self::slice_text). An empty slice is written `-`.
    pub fn parse_slices(family: Family, rank: usize, level: i64, s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "column slices",
            input: s.to_string(),
        };
        let mut slices = Vec::new();
        for part in s.split('|') {
            let part = part.trim();
            if part == "-" || part.is_empty() {
                slices.push(Vec::new());
                continue;
            }
            let blocks: std::result::Result<Vec<usize>, _> =
                part.split('.').map(|t| t.trim().parse::<usize>()).collect();
            slices.push(blocks.map_err(|_| bad())?);
        }
        if slices.len() != slices_per_column(family, level) {
            return Err(bad());
        }
        let p = ColumnPattern::new(family, rank);
        for sl in &slices {
            if sl.iter().any(|&c| c > rank) || p.canonical(sl).is_none() {
                return Err(Error::BadSlice(sl.clone()));
            }
        }
        Ok(YoungColumn {
            family,
            rank,
            level,
            slices,
        })
    }
}

/// The reduced column `C_b`.
pub fn materialize(crystal: &PerfectCrystal, b: &CrystalVector) -> YoungColumn {
    let fam = crystal.family();
    let p = ColumnPattern::new(fam, crystal.rank());
    let mut slices = Vec::new();
    for g in p.groups() {
        let count = match g {
            Group::Slack => crystal.slack(b),
            Group::Coord(s) => b.get(s.into()),
        };
        for _ in 0..count.max(0) {
            slices.push(p.template(g).to_vec());
        }
    }
    YoungColumn {
        family: fam,
        rank: crystal.rank(),
        level: crystal.level,
        slices,
    }
}

/// The map Φ: group counts of a reduced column.
pub fn read_coords(c: &YoungColumn) -> Result<CrystalVector> {
    let p = c.pattern();
    let mut v = CrystalVector::zero(c.rank);
    for s in &c.slices {
        match p.classify(s) {
            Some(Group::Coord(k)) => *v.get_mut(k.into()) += 1,
            Some(Group::Slack) => {}
            None => return Err(Error::NotReduced),
        }
    }
    Ok(v)
}

/// Removes every removable δ-slice, rightmost first, then puts the slices in
/// template order.
pub fn reduce_column(c: &YoungColumn) -> YoungColumn {
    let p = c.pattern();
    let period = p.cycle_len();
    let mut slices: Vec<Vec<usize>> = c.slices.clone();
    while let Some(k) = slices.iter().rposition(|s| s.len() > period) {
        slices[k].drain(..period);
    }
    for s in &mut slices {
        if let Some(canon) = p.canonical(s) {
            *s = canon;
        }
    }
    sort_slices(&p, &mut slices);
    YoungColumn { slices, ..c.clone() }
}

fn sort_slices(p: &ColumnPattern, slices: &mut [Vec<usize>]) {
    slices.sort_by_key(|s| {
        let g = p.classify(s).map_or(usize::MAX, |g| p.layout_index(g));
        (g, s.len())
    });
}

/// Slice groups losing one slice each when node `i` acts on `b`.
fn source_groups(crystal: &PerfectCrystal, i: usize, b: &CrystalVector) -> Vec<Group> {
    let rule = node_rule(&crystal.datum, i);
    let delta = rule.choose(b, i, crystal.rank());
    let mut out = Vec::new();
    let mut coord_change = 0;
    for &(s, k) in delta {
        if s != Slot::X0 || crystal.family() == Family::Dtwist {
            coord_change += k;
        }
        for _ in 0..(-k).max(0) {
            out.push(Group::Coord(s.into()));
        }
    }
    if crystal.family().has_slack() {
        for _ in 0..coord_change.max(0) {
            out.push(Group::Slack);
        }
    }
    out
}

fn blocks_per_step(crystal: &PerfectCrystal, i: usize) -> usize {
    if crystal.family() == Family::C1 && i == 0 {
        2
    } else {
        1
    }
}

/// Adds `i`-blocks on the slices the rule selects, then reduces. Node 0 of
/// `C1` adds two half-depth 0-blocks; when the rule names a single slice both
/// go on it. `None` when a required slice is missing.
pub fn column_ftilde(crystal: &PerfectCrystal, i: usize, c: &YoungColumn) -> Result<Option<YoungColumn>> {
    let p = c.pattern();
    let b = read_coords(c)?;
    let mut slices = c.slices.clone();
    let mut used = vec![false; slices.len()];
    let sources = source_groups(crystal, i, &b);
    let mut picked = Vec::new();
    for g in &sources {
        let Some(k) = (0..slices.len())
            .rev()
            .find(|&k| !used[k] && p.classify(&slices[k]) == Some(*g))
        else {
            return Ok(None);
        };
        used[k] = true;
        picked.push(k);
    }
    let mut left = blocks_per_step(crystal, i);
    for (n, &k) in picked.iter().enumerate() {
        let here = if n + 1 == picked.len() { left } else { 1 };
        for _ in 0..here {
            slices[k].push(i);
        }
        left -= here;
        if p.canonical(&slices[k]).is_none() {
            return Err(Error::Internal(format!(
                "{i}-block does not fit on slice {:?}",
                slices[k]
            )));
        }
    }
    Ok(Some(reduce_column(&YoungColumn { slices, ..c.clone() })))
}

/// Stacks left after taking one `i`-block off the top of `s`; `lift` also
/// tries `s` sitting on one more δ-slice.
fn removals(p: &ColumnPattern, s: &[usize], i: usize, lift: bool) -> Vec<Vec<usize>> {
    let mut bases = vec![s.to_vec()];
    if lift {
        let mut t = p.delta_slice();
        t.extend_from_slice(s);
        bases.push(t);
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for t in bases {
        // either block of a full half-depth layer on top can come off
        let len = t.len();
        for at in len.saturating_sub(2)..len {
            if t[at] != i {
                continue;
            }
            let mut u = t.clone();
            u.remove(at);
            if p.canonical(&u).is_some() && !out.contains(&u) {
                out.push(u);
            }
        }
    }
    out
}

/// Removes the top `i`-block(s) of a slice, or of a slice with one more
/// δ-slice underneath, keeping the unique choice that `column_ftilde` maps
/// back to `c`.
pub fn column_etilde(crystal: &PerfectCrystal, i: usize, c: &YoungColumn) -> Result<Option<YoungColumn>> {
    let p = c.pattern();
    read_coords(c)?;
    let mut edits: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let singles: Vec<(usize, Vec<usize>)> = c
        .slices
        .iter()
        .enumerate()
        .flat_map(|(k, s)| removals(&p, s, i, true).into_iter().map(move |u| (k, u)))
        .collect();
    if blocks_per_step(crystal, i) == 1 {
        edits.extend(singles.into_iter().map(|e| vec![e]));
    } else {
        for (a, ea) in singles.iter().enumerate() {
            for eb in &singles[a + 1..] {
                if ea.0 != eb.0 {
                    edits.push(vec![ea.clone(), eb.clone()]);
                }
            }
            for u in removals(&p, &ea.1, i, false) {
                edits.push(vec![(ea.0, u)]);
            }
        }
    }
    let mut found: Option<YoungColumn> = None;
    for edit in edits {
        let mut slices = c.slices.clone();
        for (k, t) in edit {
            slices[k] = t;
        }
        let cand = reduce_column(&YoungColumn { slices, ..c.clone() });
        if !cand.is_reduced() || !crystal.is_member(&read_coords(&cand)?) {
            continue;
        }
        if column_ftilde(crystal, i, &cand)?.as_ref() == Some(c) {
            match &found {
                Some(prev) if *prev != cand => {
                    return Err(Error::Internal(format!("two preimages under column e{i}")))
                }
                _ => found = Some(cand),
            }
        }
    }
    Ok(found)
}

/// `(ε_i, φ_i)`: the number of `i`-removals and `i`-additions in a row.
pub fn column_counts(crystal: &PerfectCrystal, i: usize, c: &YoungColumn) -> Result<(i64, i64)> {
    let mut phi = 0;
    let mut cur = c.clone();
    while let Some(next) = column_ftilde(crystal, i, &cur)? {
        phi += 1;
        cur = next;
    }
    let mut eps = 0;
    let mut cur = c.clone();
    while let Some(prev) = column_etilde(crystal, i, &cur)? {
        eps += 1;
        cur = prev;
    }
    Ok((eps, phi))
}

/// Output format of [`render_column`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Tikz,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(RenderFormat::Text),
            "tikz" => Ok(RenderFormat::Tikz),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn render_column(c: &YoungColumn, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => render_text(c),
        RenderFormat::Tikz => render_tikz(c),
    }
}

/// One text row per block level, top row first. Full blocks print as the
/// color; half-depth blocks carry `◣` (front) or `◥` (back).
fn render_text(c: &YoungColumn) -> String {
    let p = c.pattern();
    let digits = c.rank.to_string().len();
    let width = digits + 2;
    let height = c.slices.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in (0..height).rev() {
        let mut line = String::new();
        for s in &c.slices {
            let cell = match s.get(row) {
                None => String::new(),
                Some(&col) if p.is_half(col) => {
                    let glyph = if is_back_half(&p, s, row) { '◥' } else { '◣' };
                    format!("{col:>digits$}{glyph}")
                }
                Some(&col) => format!("{col:>digits$}"),
            };
            let _ = write!(line, "│{cell:<w$}", w = width - 1);
        }
        line.push('│');
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&"─".repeat(width * c.slices.len().max(1) + 1));
    out.push('\n');
    out
}

/// Whether the block at `row` is the second block of a full half-depth layer.
fn is_back_half(p: &ColumnPattern, s: &[usize], row: usize) -> bool {
    let mut k = 0;
    for layer in p.layers.iter().cycle() {
        if k > row {
            return false;
        }
        match layer {
            Layer::Full(_) => k += 1,
            Layer::Half(..) => {
                if row == k + 1 && k + 1 < s.len() {
                    return true;
                }
                k += 2;
            }
        }
    }
    false
}

fn render_tikz(c: &YoungColumn) -> String {
    let p = c.pattern();
    let n = c.slices.len().max(1);
    let w = 1.0 / n as f64;
    let mut out = String::from("\\begin{tikzpicture}[x=2cm,y=0.5cm]\n");
    let _ = writeln!(out, "  \\draw (0,0) -- (1,0);");
    for (k, s) in c.slices.iter().enumerate() {
        let x0 = k as f64 * w;
        let x1 = x0 + w;
        let mut y = 0.0f64;
        let mut row = 0;
        while row < s.len() {
            let col = s[row];
            if p.is_half(col) {
                let back = row + 1 < s.len() && is_back_half(&p, s, row + 1);
                let _ = writeln!(
                    out,
                    "  \\draw ({x0:.4},{y:.1}) -- ({x1:.4},{y:.1}) -- ({x0:.4},{:.1}) -- cycle; \\node[font=\\tiny] at ({:.4},{:.2}) {{{col}}};",
                    y + 1.0,
                    x0 + w / 3.0,
                    y + 0.3
                );
                if back {
                    let top = s[row + 1];
                    let _ = writeln!(
                        out,
                        "  \\draw ({x1:.4},{y:.1}) -- ({x1:.4},{:.1}) -- ({x0:.4},{:.1}) -- cycle; \\node[font=\\tiny] at ({:.4},{:.2}) {{{top}}};",
                        y + 1.0,
                        y + 1.0,
                        x0 + 2.0 * w / 3.0,
                        y + 0.7
                    );
                    row += 1;
                }
            } else {
                let _ = writeln!(
                    out,
                    "  \\draw ({x0:.4},{y:.1}) rectangle ({x1:.4},{:.1}); \\node[font=\\tiny] at ({:.4},{:.2}) {{{col}}};",
                    y + 1.0,
                    x0 + w / 2.0,
                    y + 0.5
                );
            }
            y += 1.0;
            row += 1;
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_datum;

    fn pc(f: Family, n: usize, l: i64) -> PerfectCrystal {
        PerfectCrystal::new(build_datum(f, n).unwrap(), l)
    }

    fn v(c: &PerfectCrystal, t: &[i64]) -> CrystalVector {
        CrystalVector::from_tuple(c.family(), c.rank(), t).unwrap()
    }

    #[test]
    fn delta_slices() {
        let d = |f, n| ColumnPattern::new(f, n).delta_slice();
        assert_eq!(d(Family::A2even, 2), vec![0, 0, 1, 2, 1]);
        assert_eq!(d(Family::Dtwist, 2), vec![0, 0, 1, 2, 2, 1]);
        assert_eq!(d(Family::A2odd, 3), vec![1, 0, 2, 3, 2]);
        assert_eq!(d(Family::D1, 4), vec![1, 0, 2, 3, 4, 2]);
        assert_eq!(d(Family::B1, 3), vec![1, 0, 2, 3, 3, 2]);
        assert_eq!(d(Family::C1, 2), vec![0, 0, 1, 2, 1]);
    }

    #[test]
    fn materialize_examples() {
        let a2 = pc(Family::A2even, 1, 2);
        let col = materialize(&a2, &v(&a2, &[0, 0]));
        assert_eq!(col.slices, vec![vec![0], vec![0]]);
        assert!(ColumnPattern::new(Family::A2even, 1).is_half(0));

        let b3 = pc(Family::B1, 3, 2);
        let col = materialize(&b3, &v(&b3, &[2, 0, 0, 0, 0, 0, 0]));
        assert_eq!(col.slices, vec![vec![0], vec![0]]);

        let d3 = pc(Family::Dtwist, 2, 1);
        let col = materialize(&d3, &v(&d3, &[0, 0, 1, 0, 0]));
        assert_eq!(col.slices, vec![vec![0, 0, 1, 2]]);
        let p = col.pattern();
        assert!(p.blocks(&col.slices[0])[3].half);
    }

    #[test]
    fn level_fifteen_example_reduces() {
        // the drawn non-reduced B4 column, slices left to right
        let raw = "0 | 0 | 1 | 1 | 1.0 | 1.0.2 | 1.0.2 | 1.0.2.3 | 1.0.2.3.4 | 1.0.2.3.4.4 \
                   | 1.0.2.3.4.4.3 | 1.0.2.3.4.4.3 | 1.0.2.3.4.4.3.2 | 1.0.2.3.4.4.3.2.1 \
                   | 1.0.2.3.4.4.3.2.1.0.2";
        let col = YoungColumn::parse_slices(Family::B1, 4, 15, raw).unwrap();
        assert!(!col.is_reduced());
        let red = reduce_column(&col);
        assert!(red.is_reduced());
        assert_eq!(
            read_coords(&red).unwrap().to_tuple(Family::B1),
            vec![2, 1, 3, 1, 1, 1, 2, 1, 3]
        );
        assert_eq!(reduce_column(&red), red);
    }

    #[test]
    fn one_delta_slice_plus_a_zero_block_leaves_the_zero_block() {
        let c = pc(Family::A2even, 1, 1);
        let mut s = ColumnPattern::new(Family::A2even, 1).delta_slice();
        s.push(0);
        let col = YoungColumn {
            family: Family::A2even,
            rank: 1,
            level: 1,
            slices: vec![s],
        };
        let red = reduce_column(&col);
        assert_eq!(red.slices, vec![vec![0]]);
        assert_eq!(read_coords(&red).unwrap(), v(&c, &[0, 0]));
    }

    #[test]
    fn f1_example_on_level_fifteen_column() {
        let c = pc(Family::B1, 4, 15);
        let b = v(&c, &[2, 1, 2, 2, 1, 1, 1, 2, 3]);
        let col = materialize(&c, &b);
        let out = column_ftilde(&c, 1, &col).unwrap().unwrap();
        assert_eq!(
            read_coords(&out).unwrap().to_tuple(Family::B1),
            vec![2, 1, 2, 2, 1, 1, 1, 1, 4]
        );
        assert_eq!(column_etilde(&c, 1, &out).unwrap(), Some(col));
    }

    #[test]
    fn a2_zero_action_matches_coordinates() {
        let c = pc(Family::A2even, 1, 2);
        let g = materialize(&c, &v(&c, &[0, 0]));
        let out = column_ftilde(&c, 0, &g).unwrap().unwrap();
        assert_eq!(Some(read_coords(&out).unwrap()), c.ftilde(0, &v(&c, &[0, 0])));
        assert_eq!(column_counts(&c, 0, &g).unwrap(), (2, 2));
    }

    #[test]
    fn b3_counts_example() {
        let c = pc(Family::B1, 3, 2);
        let col = materialize(&c, &v(&c, &[1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(column_counts(&c, 0, &col).unwrap(), (1, 1));
    }

    #[test]
    fn intertwines_with_the_coordinate_crystal() {
        for fam in Family::ALL {
            for l in 1..=2 {
                let c = pc(fam, fam.min_rank(), l);
                for b in c.enumerate() {
                    let col = materialize(&c, &b);
                    assert_eq!(read_coords(&col).unwrap(), b);
                    for i in c.datum.nodes() {
                        let f = column_ftilde(&c, i, &col).unwrap();
                        assert_eq!(
                            f.map(|x| read_coords(&x).unwrap()),
                            c.ftilde(i, &b),
                            "{fam} l={l} f{i} {}",
                            b.display(fam)
                        );
                        let e = column_etilde(&c, i, &col).unwrap();
                        assert_eq!(
                            e.map(|x| read_coords(&x).unwrap()),
                            c.etilde(i, &b).unwrap(),
                            "{fam} l={l} e{i} {}",
                            b.display(fam)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn render_golden_and_empty() {
        let c = pc(Family::A2even, 1, 2);
        let g = materialize(&c, &v(&c, &[0, 0]));
        let text = render_column(&g, RenderFormat::Text);
        assert_eq!(text, "│0◣│0◣│\n───────\n");
        assert_eq!(text, render_column(&g, RenderFormat::Text));
        let empty = YoungColumn {
            family: Family::A2even,
            rank: 1,
            level: 1,
            slices: vec![vec![]],
        };
        assert_eq!(render_column(&empty, RenderFormat::Text), "────\n");
        assert!(render_column(&g, RenderFormat::Tikz).starts_with("\\begin{tikzpicture}"));
        assert!("svg".parse::<RenderFormat>().is_err());
    }
}
