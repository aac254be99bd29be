//! The transcribed example figures and the translation of their drawn walls
//! into canonical state strings.

use std::collections::BTreeSet;

use crate::binf::{BInfWall, LimitCrystal};
use crate::cartan::build_datum;
use crate::column::{read_coords, reduce_column, ColumnPattern, Group, YoungColumn};
use crate::coords::CrystalVector;
use crate::error::{Error, Result};
use crate::export::parse_document;
use crate::graph::{generate, CrystalGraph, RealizationTag};
use crate::perfect::PerfectCrystal;
use crate::wall::WallCrystal;

/// One transcribed figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    A2,
    B3,
    D3,
    C2,
    D3Binf,
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::B3, Figure::A2, Figure::D3, Figure::C2, Figure::D3Binf];

    pub fn name(self) -> &'static str {
        match self {
            Figure::A2 => "A2even rank 1, 2L0",
            Figure::B3 => "B1 rank 3, 2L0",
            Figure::D3 => "Dtwist rank 2, 2L0",
            Figure::C2 => "C1 rank 2, 2L0",
            Figure::D3Binf => "Dtwist rank 2, B(inf)",
        }
    }

    pub fn document(self) -> &'static str {
        match self {
            Figure::A2 => include_str!("../fixtures/a2_2l0.json"),
            Figure::B3 => include_str!("../fixtures/b3_2l0.json"),
            Figure::D3 => include_str!("../fixtures/d3_2l0.json"),
            Figure::C2 => include_str!("../fixtures/c2_2l0.json"),
            Figure::D3Binf => include_str!("../fixtures/d3_binf.json"),
        }
    }

    pub fn fixture(self) -> Result<CrystalGraph> {
        parse_document(self.document())
    }
}

/// A drawn wall (` / ` between columns, leftmost first) as the wall text
/// used by the generator.
pub fn drawn_wall_key(walls: &WallCrystal, drawn: &str) -> Result<String> {
    let fam = walls.crystal.family();
    let (n, l) = (walls.crystal.rank(), walls.crystal.level);
    let mut cols = Vec::new();
    for part in drawn.split(" / ") {
        let col = YoungColumn::parse_slices(fam, n, l, part)?;
        cols.push(read_coords(&reduce_column(&col))?);
    }
    cols.reverse();
    let y = walls.from_columns(cols).ok_or_else(|| Error::Parse {
        what: "drawn wall",
        input: drawn.to_string(),
    })?;
    Ok(walls.text(&y))
}

/// A drawn virtual wall (`blocks x count` slices) as `B(∞)` wall text. The
/// slack group is implied by the other counts, and the ` / ` breaks of the
/// transcription are ignored.
pub fn drawn_binf_key(limit: &LimitCrystal, drawn: &str) -> Result<String> {
    if drawn.trim() == "Y_empty" {
        return Ok(limit.wall_text(&limit.empty_wall()));
    }
    let bad = || Error::Parse {
        what: "drawn virtual wall",
        input: drawn.to_string(),
    };
    let p = ColumnPattern::new(limit.family(), limit.rank());
    let order: Vec<Group> = p.groups().collect();
    // Slices run left to right without gaps; a column ends where the group
    // order starts over.
    let mut cols = Vec::new();
    let mut cur = CrystalVector::zero(limit.rank());
    let mut last: Option<usize> = None;
    for slice in drawn.split(" / ").flat_map(|part| part.split(" | ")) {
        let (blocks, count) = slice.trim().split_once('x').ok_or_else(bad)?;
        let count: i64 = count.parse().map_err(|_| bad())?;
        let blocks: Vec<usize> = blocks
            .split('.')
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let g = p
            .classify(&blocks)
            .ok_or_else(|| Error::BadSlice(blocks.clone()))?;
        let rank = order.iter().position(|h| *h == g).ok_or_else(bad)?;
        if last.is_some_and(|r| rank <= r) {
            cols.push(std::mem::replace(&mut cur, CrystalVector::zero(limit.rank())));
        }
        last = Some(rank);
        if let Group::Coord(s) = g {
            *cur.get_mut(s.into()) += count;
        }
    }
    cols.push(cur);
    cols.reverse();
    let y = limit.normalized(BInfWall {
        cols,
        moves: vec![0; limit.rank() + 1],
    });
    Ok(limit.wall_text(&y))
}

/// Outcome of checking one figure against a fresh generation.
#[derive(Debug, Clone)]
pub struct FigureCheck {
    pub figure: Figure,
    pub drawn_depth: usize,
    pub fixture_counts: Vec<usize>,
    pub generated_counts: Vec<usize>,
    pub problems: Vec<String>,
    pub generated: CrystalGraph,
}

impl FigureCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }

    /// The figure draws the whole generated prefix.
    pub fn complete(&self) -> bool {
        self.fixture_counts == self.generated_counts
    }
}

type StateKey = dyn Fn(&str) -> Result<String>;

/// Generates the figure's crystal to the drawn depth and compares it with
/// the transcription.
pub fn check_figure(fig: Figure) -> Result<FigureCheck> {
    let fixture = fig.fixture()?;
    let depth = fixture.max_depth();
    let datum = build_datum(fixture.family, fixture.rank)?;
    let (generated, key): (CrystalGraph, Box<StateKey>) = match fixture.realization {
        RealizationTag::Binf => {
            let limit = LimitCrystal::new(datum);
            let g = generate(&limit, depth, 1_000_000)?;
            (g, Box::new(move |s| drawn_binf_key(&limit, s)))
        }
        _ => {
            let walls = WallCrystal::new(PerfectCrystal::new(datum, fixture.level), &fixture.highest_weight)?;
            let g = generate(&walls, depth, 1_000_000)?;
            (g, Box::new(move |s| drawn_wall_key(&walls, s)))
        }
    };
    let problems = embed(&fixture, &generated, &*key);
    Ok(FigureCheck {
        figure: fig,
        drawn_depth: depth,
        fixture_counts: fixture.depth_counts(),
        generated_counts: generated.depth_counts(),
        problems,
        generated,
    })
}

/// Matches every drawn vertex to the generated vertex with the same state
/// and compares weights, depths and edges among the matched vertices.
/// Generated vertices the figure leaves out are not problems.
pub fn embed(drawn: &CrystalGraph, full: &CrystalGraph, key: &dyn Fn(&str) -> Result<String>) -> Vec<String> {
    let mut problems = Vec::new();
    let mut map = vec![None; drawn.vertices.len()];
    let mut back = vec![None; full.vertices.len()];
    for (u, dv) in drawn.vertices.iter().enumerate() {
        let k = match key(&dv.state) {
            Ok(k) => k,
            Err(e) => {
                problems.push(format!("drawn vertex {u}: {e}"));
                continue;
            }
        };
        let Some(v) = full.find(&k) else {
            problems.push(format!("drawn vertex {u} ({k}) is not generated"));
            continue;
        };
        let fv = &full.vertices[v];
        if dv.weight != fv.weight {
            problems.push(format!(
                "drawn vertex {u}: weight {} but generated {}",
                dv.weight, fv.weight
            ));
        }
        if dv.depth != fv.depth {
            problems.push(format!(
                "drawn vertex {u}: depth {} but generated {}",
                dv.depth, fv.depth
            ));
        }
        if let Some(w) = back[v] {
            problems.push(format!("drawn vertices {w} and {u} are the same wall"));
        }
        map[u] = Some(v);
        back[v] = Some(u);
    }
    let drawn_edges: BTreeSet<(usize, usize, usize)> = drawn
        .edges
        .iter()
        .filter_map(|e| Some((map[e.from]?, e.color, map[e.to]?)))
        .collect();
    let full_edges: BTreeSet<(usize, usize, usize)> =
        full.edges.iter().map(|e| (e.from, e.color, e.to)).collect();
    for &(a, c, b) in drawn_edges.difference(&full_edges) {
        problems.push(format!(
            "drawn {c}-arrow from vertex {} to {} is not a generated edge",
            back[a].unwrap_or(usize::MAX),
            back[b].unwrap_or(usize::MAX)
        ));
    }
    for &(a, c, b) in &full_edges {
        if let (Some(u), Some(w)) = (back[a], back[b]) {
            if !drawn_edges.contains(&(a, c, b)) {
                problems.push(format!(
                    "generated {c}-edge between drawn vertices {u} and {w} is not drawn"
                ));
            }
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    #[test]
    fn fixtures_load() {
        let a2 = Figure::A2.fixture().unwrap();
        assert_eq!(&a2.depth_counts()[..4], &[1, 1, 2, 2]);
        for f in Figure::ALL {
            f.fixture().unwrap();
        }
    }

    #[test]
    fn drawn_root_walls() {
        for f in Figure::ALL {
            let fx = f.fixture().unwrap();
            let check = check_figure(f).unwrap();
            assert_eq!(
                fx.vertices[0].weight,
                check.generated.vertices[0].weight,
                "{}",
                f.name()
            );
        }
    }

    #[test]
    fn fully_drawn_figures_match() {
        for f in [Figure::B3, Figure::A2, Figure::C2, Figure::D3Binf] {
            let c = check_figure(f).unwrap();
            assert!(c.passed(), "{}: {:?}", f.name(), c.problems);
            assert!(c.complete(), "{}", f.name());
        }
    }

    #[test]
    fn drawn_walls_are_reduced_before_reading() {
        let d = build_datum(Family::A2even, 1).unwrap();
        let w = WallCrystal::new(PerfectCrystal::new(d, 2), &"2,0".parse().unwrap()).unwrap();
        assert_eq!(
            drawn_wall_key(&w, "0 | 0.0 / 0 | 0.0.1.0").unwrap(),
            drawn_wall_key(&w, "0 | 0.0 / 0 | 0").unwrap()
        );
    }

    #[test]
    fn binf_drawn_child() {
        let limit = LimitCrystal::new(build_datum(Family::Dtwist, 2).unwrap());
        assert_eq!(drawn_binf_key(&limit, "0x-1 | 0.0x1").unwrap(), "1,0|0|0,0");
        assert_eq!(drawn_binf_key(&limit, "Y_empty").unwrap(), "Y_empty");
        // one column of four groups, transcribed across a column break
        assert_eq!(
            drawn_binf_key(&limit, "0x-1 | 0.0x1 / 0.0.1x-1 | 0.0.1.2x1").unwrap(),
            "1,-1|1|0,0"
        );
        // the group order starts over: two columns
        assert_eq!(
            drawn_binf_key(&limit, "0x-1 | 0.0x1 / 0x-1 | 0.0.1x1").unwrap(),
            "1,0|0|0,0 | 0,1|0|0,0"
        );
    }
}
