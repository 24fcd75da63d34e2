//! Convex realizations: construction, exact verification, export.

mod constructions;
pub mod export;
pub mod geometry;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::code::{Codeword, NeuralCode, NeuronId};
use crate::decider::{decide, Status};
use crate::error::{Error, Result};
use crate::topology::{classify_small_complex, minimal_code, nerve};

use constructions::{Cell, Layout};
pub use geometry::{Point, Q};

/// An open region: interval on the line or convex polygon in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Interval(Q, Q),
    /// Vertices in counterclockwise order.
    Polygon(Vec<Point>),
}

/// One open convex region per neuron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub dimension: u8,
    pub regions: BTreeMap<NeuronId, Region>,
}

/// Which construction produced a realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionTag {
    /// A lone facet, used inside [`ConstructionTag::DisconnectedGlue`].
    Interval1D,
    /// Two intersecting facets, used inside [`ConstructionTag::DisconnectedGlue`].
    PairChain1D,
    PoFChain1D,
    L18Case1,
    L18Case2,
    L18Case3,
    L21CaseB1,
    L21CaseB2,
    L21CaseB3,
    L22Case2a,
    L22Case2b,
    L22Case3a,
    L22Case3b,
    L22Case4,
    DisconnectedGlue(Vec<ConstructionTag>),
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionTag::DisconnectedGlue(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "DisconnectedGlue({})", inner.join(", "))
            }
            other => write!(f, "{other:?}"),
        }
    }
}

impl Serialize for ConstructionTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Realization {
    /// Checks nonemptiness and convexity of every region.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.dimension != 1 && self.dimension != 2 {
            return Err(format!("unsupported dimension {}", self.dimension));
        }
        for (&i, r) in &self.regions {
            if i == 0 || i > crate::code::MAX_NEURONS {
                return Err(format!("neuron index {i} out of range"));
            }
            match (self.dimension, r) {
                (1, Region::Interval(p, q)) => {
                    if p >= q {
                        return Err(format!("neuron {i}: empty interval"));
                    }
                }
                (2, Region::Polygon(ps)) => {
                    geometry::check_convex_polygon(ps).map_err(|e| format!("neuron {i}: {e}"))?;
                }
                _ => return Err(format!("neuron {i}: region does not match dimension {}", self.dimension)),
            }
        }
        Ok(())
    }

    /// Moves every region; used to confirm translation invariance.
    pub fn translated(&self, dx: Q, dy: Q) -> Realization {
        let regions = self
            .regions
            .iter()
            .map(|(&i, r)| {
                let r = match r {
                    Region::Interval(p, q) => Region::Interval(p + dx, q + dx),
                    Region::Polygon(ps) => Region::Polygon(ps.iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect()),
                };
                (i, r)
            })
            .collect();
        Realization { dimension: self.dimension, regions }
    }

    /// Scales every coordinate by a positive factor.
    pub fn scaled(&self, k: Q) -> Realization {
        assert!(k > Q::from_integer(0));
        let regions = self
            .regions
            .iter()
            .map(|(&i, r)| {
                let r = match r {
                    Region::Interval(p, q) => Region::Interval(p * k, q * k),
                    Region::Polygon(ps) => Region::Polygon(ps.iter().map(|p| Point::new(p.x * k, p.y * k)).collect()),
                };
                (i, r)
            })
            .collect();
        Realization { dimension: self.dimension, regions }
    }
}

/// The code generated by the regions, computed exactly.
pub fn code_of_realization(r: &Realization) -> Result<NeuralCode> {
    r.validate().map_err(Error::InvalidRealization)?;
    Ok(match r.dimension {
        1 => {
            let iv: Vec<(NeuronId, Q, Q)> = r
                .regions
                .iter()
                .map(|(&i, reg)| match reg {
                    Region::Interval(p, q) => (i, *p, *q),
                    Region::Polygon(_) => unreachable!("validated"),
                })
                .collect();
            geometry::code_of_intervals(&iv)
        }
        _ => {
            let polys: Vec<(NeuronId, Vec<Point>)> = r
                .regions
                .iter()
                .map(|(&i, reg)| match reg {
                    Region::Polygon(ps) => (i, ps.clone()),
                    Region::Interval(..) => unreachable!("validated"),
                })
                .collect();
            geometry::code_of_polygons(&polys)
        }
    })
}

/// Outcome of [`verify_realization`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    /// Target codewords the realization does not produce.
    pub missing: Vec<Codeword>,
    /// Produced codewords absent from the target.
    pub extra: Vec<Codeword>,
    /// Validation failure, if any.
    pub reason: Option<String>,
}

/// Validates the regions and compares the generated code with `target`.
pub fn verify_realization(r: &Realization, target: &NeuralCode) -> Verification {
    let code = match code_of_realization(r) {
        Ok(c) => c,
        Err(e) => return Verification { ok: false, reason: Some(e.to_string()), ..Default::default() },
    };
    let missing: Vec<Codeword> = target.codewords().iter().copied().filter(|w| !code.contains(*w)).collect();
    let extra: Vec<Codeword> = code.codewords().iter().copied().filter(|w| !target.contains(*w)).collect();
    let absent: Vec<NeuronId> = target.support().iter().filter(|i| !r.regions.contains_key(i)).collect();
    let reason = (!absent.is_empty()).then(|| format!("no region for neurons {absent:?}"));
    Verification { ok: missing.is_empty() && extra.is_empty() && reason.is_none(), missing, extra, reason }
}

/// Builds a realization from the construction covering this code.
///
/// Requires a CONVEX verdict. `Ok(None)` means the code lies outside the
/// constructive families (including codes strictly larger than their
/// minimal code and codes that are convex only by max-intersection
/// completeness). The result is always re-verified before it is returned.
pub fn build_realization(code: &NeuralCode) -> Result<Option<(Realization, ConstructionTag)>> {
    let d = decide(code);
    if d.status != Status::Convex {
        return Err(Error::Precondition(format!("realization requires a CONVEX verdict, got {}", d.status)));
    }
    // gaps below the largest mentioned index are harmless; a declared count
    // beyond it names neurons that could only have empty regions
    if code.n() > code.support().max_neuron() {
        return Err(Error::Precondition(format!(
            "declared {} neurons but only indices up to {} occur in codewords",
            code.n(),
            code.support().max_neuron()
        )));
    }
    let facets = code.facets();
    if minimal_code(&facets).codewords() != code.codewords() {
        return Ok(None);
    }
    let Some((layout, tag)) = layout_for(&facets, true) else {
        return Ok(None);
    };
    let r = realize_layout(&layout, code.support());
    let v = verify_realization(&r, code);
    if !v.ok {
        return Err(Error::InvalidRealization(format!(
            "construction {tag} failed verification: missing {:?}, extra {:?}, {:?}",
            v.missing, v.extra, v.reason
        )));
    }
    Ok(Some((r, tag)))
}

fn layout_for(facets: &[Codeword], allow_glue: bool) -> Option<(Layout, ConstructionTag)> {
    let n = nerve(facets).ok()?;
    let comps = n.components();
    if comps.len() > 1 {
        if !allow_glue {
            return None;
        }
        return glue(facets, &comps);
    }
    match facets.len() {
        3 => Some((constructions::pof_chain([facets[0], facets[1], facets[2]])?, ConstructionTag::PoFChain1D)),
        4 => {
            let k = classify_small_complex(&n).ok()?;
            let mut f = [Codeword::EMPTY; 4];
            for (i, &face) in facets.iter().enumerate() {
                f[(k.reference_label(i as NeuronId + 1)? - 1) as usize] = face;
            }
            match k.class.id() {
                18 => constructions::l18(f),
                21 => constructions::l21(f),
                22 => constructions::l22(f),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Lays nerve components side by side with disjoint horizontal extents.
fn glue(facets: &[Codeword], comps: &[Codeword]) -> Option<(Layout, ConstructionTag)> {
    let mut parts = Vec::new();
    for comp in comps {
        let sub: Vec<Codeword> = comp.iter().map(|i| facets[(i - 1) as usize]).collect();
        let part = match sub.len() {
            1 => (Layout::chain(&sub), ConstructionTag::Interval1D),
            2 => (Layout::chain(&[sub[0], sub[0].intersection(sub[1]), sub[1]]), ConstructionTag::PairChain1D),
            _ => layout_for(&sub, false)?,
        };
        parts.push(part);
    }
    let planar = parts.iter().any(|(l, _)| l.dimension == 2);
    let mut cells = Vec::new();
    let mut cursor = Q::from_integer(0);
    let mut tags = Vec::new();
    for (layout, tag) in parts {
        let layout = if planar { layout.lifted() } else { layout };
        let (lo, hi) = layout.x_range();
        let moved = layout.shifted(cursor - lo);
        cursor += hi - lo + Q::from_integer(1);
        cells.extend(moved.cells);
        tags.push(tag);
    }
    Some((Layout { dimension: if planar { 2 } else { 1 }, cells }, ConstructionTag::DisconnectedGlue(tags)))
}

/// Region of each neuron = hull of the cells whose label contains it.
fn realize_layout(layout: &Layout, support: Codeword) -> Realization {
    let mut regions = BTreeMap::new();
    for i in support.iter() {
        let cells: Vec<&Cell> = layout.cells.iter().filter(|(l, _)| l.contains(i)).map(|(_, c)| c).collect();
        if cells.is_empty() {
            continue;
        }
        let region = if layout.dimension == 1 {
            let lo = cells.iter().map(|c| match c {
                Cell::Interval(p, _) => *p,
                Cell::Polygon(_) => unreachable!(),
            });
            let hi = cells.iter().map(|c| match c {
                Cell::Interval(_, q) => *q,
                Cell::Polygon(_) => unreachable!(),
            });
            Region::Interval(lo.min().unwrap(), hi.max().unwrap())
        } else {
            let pts: Vec<Point> = cells
                .iter()
                .flat_map(|c| match c {
                    Cell::Polygon(ps) => ps.clone(),
                    Cell::Interval(..) => unreachable!(),
                })
                .collect();
            Region::Polygon(geometry::convex_hull(&pts))
        };
        regions.insert(i, region);
    }
    Realization { dimension: layout.dimension, regions }
}
