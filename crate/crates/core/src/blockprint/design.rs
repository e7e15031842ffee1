//! Block designs: chords drawn across a base shape.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{BaseShape, BoundaryPoint, Chord, ChordKind, Point, Polygon};
use crate::{seed, Error, Result};

/// Chord endpoints stay this fraction of an edge away from its corners.
pub const CORNER_MARGIN: f64 = 0.05;
/// Curved chords draw their bulge factor from `[-MAX_BULGE, MAX_BULGE]`.
pub const MAX_BULGE: f64 = 0.4;
/// Region keys are bitmasks, one bit per chord.
pub const MAX_BLOCK_CHORDS: usize = 64;
pub const MAX_RECURSION_DEPTH: u32 = 12;

// Split acceptance for recursive divide: each half keeps between a quarter
// and three quarters of the parent's area and is not a sliver.
const MIN_SPLIT_SHARE: f64 = 0.25;
const MIN_FATNESS: f64 = 0.03;
const SPLIT_ATTEMPTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivideStyle {
    /// Chords join points on the outer edges of the block.
    BlockDivide,
    /// Every region is split in two, level by level. Chords are stored in
    /// heap order: chord `j` splits the region produced as child `j` of the
    /// previous level (children of chord `j` are `2j + 1` and `2j + 2`).
    RecursiveDivide,
}

/// Which chord shapes `block_divide` may draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ChordStyle {
    Straight,
    Curved,
    #[default]
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockDesign {
    pub shape: BaseShape,
    pub style: DivideStyle,
    pub seed: u64,
    pub chords: Vec<Chord>,
}

impl BlockDesign {
    /// Checks the structural invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        let outer = self.shape.polygon();
        match self.style {
            DivideStyle::BlockDivide => {
                if self.chords.is_empty() || self.chords.len() > MAX_BLOCK_CHORDS {
                    return Err(Error::invalid("chords", format!("{} chords", self.chords.len())));
                }
                for ch in &self.chords {
                    if ch.from.edge >= outer.len() || ch.to.edge >= outer.len() {
                        return Err(Error::invalid("chords", "edge index out of range"));
                    }
                }
            }
            DivideStyle::RecursiveDivide => {
                if !(self.chords.len() + 1).is_power_of_two() {
                    return Err(Error::invalid("chords", "recursive designs need 2^d - 1 chords"));
                }
            }
        }
        for ch in &self.chords {
            if ch.from.edge == ch.to.edge {
                return Err(Error::invalid("chords", "chord endpoints share an edge"));
            }
            if ![ch.from.t, ch.to.t, ch.curvature].iter().all(|v| v.is_finite())
                || !(0.0..=1.0).contains(&ch.from.t)
                || !(0.0..=1.0).contains(&ch.to.t)
            {
                return Err(Error::invalid("chords", "non-finite or out-of-range chord parameter"));
            }
        }
        Ok(())
    }

    /// Recursion depth of a recursive design, `None` for block divide.
    pub fn depth(&self) -> Option<u32> {
        match self.style {
            DivideStyle::RecursiveDivide => Some((self.chords.len() + 1).trailing_zeros()),
            DivideStyle::BlockDivide => None,
        }
    }

    /// Leaf polygons of a recursive design in key order. Block-divide
    /// regions can be curved and are only available through [`RegionLocator`].
    pub fn leaf_regions(&self) -> Option<Vec<Polygon>> {
        self.depth()?;
        let mut nodes = vec![self.shape.polygon()];
        for (j, ch) in self.chords.iter().enumerate() {
            let (below, above) = split_convex(&nodes[j], ch);
            nodes.push(below);
            nodes.push(above);
        }
        Some(nodes.split_off(self.chords.len()))
    }

    pub fn locator(&self) -> RegionLocator {
        RegionLocator::new(self)
    }
}

/// Maps points in block coordinates to a region key.
///
/// Recursive designs are a binary space partition, so the key is the leaf
/// index. For block divide the key is the bitmask of chord sides; crossing a
/// chord always flips a bit, so neighbouring faces never share a key.
#[derive(Debug, Clone)]
pub struct RegionLocator {
    inner: LocatorKind,
}

#[derive(Debug, Clone)]
enum LocatorKind {
    Tree(Vec<Chord>),
    Sides(Vec<Polygon>),
}

impl RegionLocator {
    fn new(design: &BlockDesign) -> Self {
        let inner = match design.style {
            DivideStyle::RecursiveDivide => LocatorKind::Tree(design.chords.clone()),
            DivideStyle::BlockDivide => {
                let outer = design.shape.polygon();
                LocatorKind::Sides(design.chords.iter().map(|ch| side_polygon(&outer, ch)).collect())
            }
        };
        RegionLocator { inner }
    }

    pub fn key(&self, p: Point) -> u64 {
        match &self.inner {
            LocatorKind::Tree(chords) => {
                let mut j = 0;
                while j < chords.len() {
                    j = 2 * j + 1 + usize::from(chords[j].line_side(p));
                }
                (j - chords.len()) as u64
            }
            LocatorKind::Sides(sides) => sides
                .iter()
                .enumerate()
                .fold(0u64, |k, (i, poly)| if poly.contains(p) { k | (1 << i) } else { k }),
        }
    }
}

/// The part of `outer` bounded by the chord and the boundary walk from the
/// chord's end back round to its start.
fn side_polygon(outer: &Polygon, ch: &Chord) -> Polygon {
    let n = outer.len();
    let mut vertices = ch.polyline();
    let mut v = (ch.to.edge + 1) % n;
    loop {
        vertices.push(outer.vertices[v]);
        if v == ch.from.edge {
            break;
        }
        v = (v + 1) % n;
    }
    Polygon::new(vertices)
}

/// Splits a convex polygon along a straight chord whose endpoints lie on two
/// of its edges. Returns `(non-positive side, positive side)` relative to
/// [`Chord::line_side`].
fn split_convex(poly: &Polygon, ch: &Chord) -> (Polygon, Polygon) {
    let n = poly.len();
    let walk = |from: &BoundaryPoint, first: Point, to: &BoundaryPoint, last: Point| {
        let mut vs = vec![first];
        let mut v = (from.edge + 1) % n;
        loop {
            vs.push(poly.vertices[v]);
            if v == to.edge {
                break;
            }
            v = (v + 1) % n;
        }
        vs.push(last);
        Polygon::new(vs)
    };
    let a = walk(&ch.from, ch.start, &ch.to, ch.end);
    let b = walk(&ch.to, ch.end, &ch.from, ch.start);
    if ch.line_side(a.centroid()) {
        (b, a)
    } else {
        (a, b)
    }
}

fn draw_edge_pair(rng: &mut impl Rng, n_edges: usize) -> (usize, usize) {
    let e1 = rng.random_range(0..n_edges);
    let e2 = (e1 + rng.random_range(1..n_edges)) % n_edges;
    (e1, e2)
}

fn draw_t(rng: &mut impl Rng) -> f64 {
    rng.random_range(CORNER_MARGIN..=1.0 - CORNER_MARGIN)
}

/// Draws `n_chords` chords across the block, each joining two distinct outer
/// edges. Mixed straight and curved chords.
pub fn block_divide(shape: BaseShape, n_chords: usize, seed: u64) -> Result<BlockDesign> {
    block_divide_with(shape, n_chords, ChordStyle::Mixed, seed)
}

pub fn block_divide_with(shape: BaseShape, n_chords: usize, style: ChordStyle, seed: u64) -> Result<BlockDesign> {
    if n_chords < 1 {
        return Err(Error::invalid("n_chords", "at least one chord is required"));
    }
    if n_chords > MAX_BLOCK_CHORDS {
        return Err(Error::invalid("n_chords", format!("at most {MAX_BLOCK_CHORDS} chords")));
    }
    let outer = shape.polygon();
    let mut rng = seed::rng(seed);
    let chords = (0..n_chords)
        .map(|_| {
            let (e1, e2) = draw_edge_pair(&mut rng, outer.len());
            let from = BoundaryPoint { edge: e1, t: draw_t(&mut rng) };
            let to = BoundaryPoint { edge: e2, t: draw_t(&mut rng) };
            let mut ch = Chord::straight(&outer, from, to);
            let curved = match style {
                ChordStyle::Straight => false,
                ChordStyle::Curved => true,
                ChordStyle::Mixed => rng.random_bool(0.5),
            };
            if curved {
                ch.kind = ChordKind::Curved;
                ch.curvature = fit_bulge(&outer, &ch, rng.random_range(-MAX_BULGE..=MAX_BULGE));
            }
            ch
        })
        .collect();
    Ok(BlockDesign {
        shape,
        style: DivideStyle::BlockDivide,
        seed,
        chords,
    })
}

/// Halves the bulge until the arc's control point is strictly inside the
/// block; a quadratic arc stays inside the hull of its control points, so
/// the chord then never leaves the block.
fn fit_bulge(outer: &Polygon, ch: &Chord, bulge: f64) -> f64 {
    let mut probe = *ch;
    probe.curvature = bulge;
    for _ in 0..32 {
        if outer.inside_margin(probe.control()) > 1e-9 {
            return probe.curvature;
        }
        probe.curvature /= 2.0;
    }
    0.0
}

/// Recursively splits the block: level `k` splits each of the `2^k` regions
/// with a straight chord between two of its edges, giving `2^depth` regions.
pub fn recursive_divide(shape: BaseShape, depth: u32, seed: u64) -> Result<BlockDesign> {
    if depth > MAX_RECURSION_DEPTH {
        return Err(Error::invalid("depth", format!("at most {MAX_RECURSION_DEPTH}")));
    }
    let mut rng = seed::rng(seed);
    let n_chords = (1usize << depth) - 1;
    let mut nodes = vec![shape.polygon()];
    let mut chords = Vec::with_capacity(n_chords);
    for j in 0..n_chords {
        let ch = choose_split(&nodes[j], &mut rng);
        let (below, above) = split_convex(&nodes[j], &ch);
        nodes.push(below);
        nodes.push(above);
        chords.push(ch);
    }
    Ok(BlockDesign {
        shape,
        style: DivideStyle::RecursiveDivide,
        seed,
        chords,
    })
}

fn split_quality(poly: &Polygon, ch: &Chord) -> f64 {
    let (a, b) = split_convex(poly, ch);
    let share = a.area() / poly.area();
    let balance = share.min(1.0 - share) / MIN_SPLIT_SHARE;
    let fat = a.fatness().min(b.fatness()) / MIN_FATNESS;
    balance.min(fat)
}

/// Rejection-samples a split; keeps the best candidate if none qualifies.
fn choose_split(poly: &Polygon, rng: &mut impl Rng) -> Chord {
    let mut best: Option<(f64, Chord)> = None;
    for _ in 0..SPLIT_ATTEMPTS {
        let (e1, e2) = draw_edge_pair(rng, poly.len());
        let ch = Chord::straight(
            poly,
            BoundaryPoint { edge: e1, t: draw_t(rng) },
            BoundaryPoint { edge: e2, t: draw_t(rng) },
        );
        let q = split_quality(poly, &ch);
        if q >= 1.0 {
            return ch;
        }
        if best.as_ref().is_none_or(|(bq, _)| q > *bq) {
            best = Some((q, ch));
        }
    }
    best.expect("at least one split attempt").1
}
