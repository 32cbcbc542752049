//! The thirty causally generated topologies.
//!
//! Each topology is one of the ten relations paired with one of three
//! constructions. Subbases come from relation futures and pasts, with apex
//! membership decided by the relation's reflexivity.
//!
//! Notational slips in the usual listing are corrected here: the
//! horismos intersection base uses `(C^S ∪ C^T) ∖ {x}` (not `∩`), the
//! irreflexive-horismos subbase uses past light cones `C_-^L`, and the
//! complement-of-chronology subbases use `C_-^L` where `C_-L` is printed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{Point, Scalar};
use crate::regions::{BallAtom, ConeKind, Orientation, Region};
use crate::relations::{dual_relation, RelationId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    /// Subbase of relation futures and pasts; basic opens are diamonds.
    OrderSubbase,
    /// Subbase of complements of futures and pasts.
    Interval,
    /// Reed intersection of the interval topology with the Euclidean one.
    IntersectionWithE,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::OrderSubbase => "order",
            ConstructionKind::Interval => "interval",
            ConstructionKind::IntersectionWithE => "intersection",
        }
    }

    fn offset(self) -> u8 {
        match self {
            ConstructionKind::OrderSubbase => 1,
            ConstructionKind::Interval => 2,
            ConstructionKind::IntersectionWithE => 3,
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relations in catalog block order: block `i` covers indices `3i+1..=3i+3`.
const BLOCKS: [RelationId; 10] = [
    RelationId::Chronology,
    RelationId::Horismos,
    RelationId::Chorology,
    RelationId::IrrHorismos,
    RelationId::ReflChronology,
    RelationId::IrrCausal,
    RelationId::Causal,
    RelationId::ReflChorology,
    RelationId::IrrComplChronology,
    RelationId::ComplChronology,
];

/// A topology of the catalog, indexed 1..=30.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopologyId(u8);

impl TopologyId {
    pub fn new(index: u8) -> Result<Self> {
        if (1..=30).contains(&index) {
            Ok(TopologyId(index))
        } else {
            Err(Error::Parse(format!(
                "topology index out of range: {index}"
            )))
        }
    }

    pub fn all() -> impl Iterator<Item = TopologyId> {
        (1..=30).map(TopologyId)
    }

    pub fn of_kind(kind: ConstructionKind) -> impl Iterator<Item = TopologyId> {
        TopologyId::all().filter(move |t| t.kind() == kind)
    }

    pub fn from_parts(relation: RelationId, kind: ConstructionKind) -> TopologyId {
        let block = BLOCKS
            .iter()
            .position(|r| *r == relation)
            .expect("all relations listed") as u8;
        TopologyId(3 * block + kind.offset())
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn relation(self) -> RelationId {
        BLOCKS[((self.0 - 1) / 3) as usize]
    }

    pub fn kind(self) -> ConstructionKind {
        match self.0 % 3 {
            1 => ConstructionKind::OrderSubbase,
            2 => ConstructionKind::Interval,
            _ => ConstructionKind::IntersectionWithE,
        }
    }

    pub fn display_name(self) -> String {
        let symbol = self.relation().symbol();
        match self.kind() {
            ConstructionKind::OrderSubbase => format!("T_{{{symbol}}}"),
            ConstructionKind::Interval => format!("T_in^{{{symbol}}}"),
            ConstructionKind::IntersectionWithE => format!("Z_in^{{{symbol}}}"),
        }
    }

    /// Whether the canonical interval core at `x` omits `x` itself.
    pub fn is_anchorless(self) -> bool {
        self.kind() != ConstructionKind::OrderSubbase && self.relation().reflexive()
    }

    /// Axis along which neighborhood diamonds are laid out.
    fn diamond_axis(self) -> Point {
        match self.relation() {
            RelationId::Horismos | RelationId::IrrHorismos => Point::ints(1, 1),
            RelationId::Chorology
            | RelationId::ReflChorology
            | RelationId::ComplChronology
            | RelationId::IrrComplChronology => Point::ints(0, 1),
            _ => Point::ints(1, 0),
        }
    }

    /// Canonical basic-open set as a formula string.
    pub fn formula(self) -> &'static str {
        FORMULAS[self.0 as usize - 1]
    }

    fn expect_kind(self, allowed: &[ConstructionKind], expected: &'static str) -> Result<()> {
        if allowed.contains(&self.kind()) {
            Ok(())
        } else {
            Err(Error::InvalidKind {
                tid: self.0,
                actual: self.kind().name(),
                expected,
            })
        }
    }
}

const FORMULAS: [&str; 30] = [
    "C_+^T(a) ∩ C_-^T(b)",
    "C^S(x) ∪ C^L(x)",
    "B_eps(x) ∩ [C^S(x) ∪ C^L(x)]",
    "[C_+^L(a) ∪ {a}] ∩ [C_-^L(b) ∪ {b}]",
    "[C^S(x) ∪ C^T(x)] ∖ {x}",
    "B_eps(x) ∩ [(C^S(x) ∪ C^T(x)) ∖ {x}]",
    "C_+^S(a) ∩ C_-^S(b)",
    "C^T(x) ∪ C^L(x)",
    "B_eps(x) ∩ [C^T(x) ∪ C^L(x)]",
    "[C_+^L(a) ∖ {a}] ∩ [C_-^L(b) ∖ {b}]",
    "[C^T(x) ∪ C^S(x)] ∪ {x}",
    "B_eps(x) ∩ [(C^T(x) ∪ C^S(x)) ∪ {x}]",
    "[C_+^T(a) ∪ {a}] ∩ [C_-^T(b) ∪ {b}]",
    "[C^S(x) ∪ C^L(x)] ∖ {x}",
    "B_eps(x) ∩ [(C^S(x) ∪ C^L(x)) ∖ {x}]",
    "[(C_+^T(a) ∪ C_+^L(a)) ∖ {a}] ∩ [(C_-^T(b) ∪ C_-^L(b)) ∖ {b}]",
    "C^S(x)",
    "B_eps(x) ∩ C^S(x)",
    "[C_+^T(a) ∪ C_+^L(a)] ∩ [C_-^T(b) ∪ C_-^L(b)]",
    "C^S(x) ∖ {x}",
    "B_eps(x) ∩ [C^S(x) ∖ {x}]",
    "[C_+^S(a) ∪ {a}] ∩ [C_-^S(b) ∪ {b}]",
    "[C^T(x) ∪ C^L(x)] ∖ {x}",
    "B_eps(x) ∩ [(C^T(x) ∪ C^L(x)) ∖ {x}]",
    "[(C_+^S(a) ∪ C_+^L(a)) ∖ {a}] ∩ [(C_-^S(b) ∪ C_-^L(b)) ∖ {b}]",
    "C^T(x)",
    "B_eps(x) ∩ C^T(x)",
    "[C_+^S(a) ∪ C_+^L(a)] ∩ [C_-^S(b) ∪ C_-^L(b)]",
    "C^T(x) ∖ {x}",
    "B_eps(x) ∩ (C^T(x) ∖ {x})",
];

impl fmt::Display for TopologyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for TopologyId {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let index: u8 = text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a topology index: {text:?}")))?;
        TopologyId::new(index)
    }
}

impl Serialize for TopologyId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.0)
    }
}

impl<'de> Deserialize<'de> for TopologyId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        TopologyId::new(u8::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

fn cone_union(x: &Point, parts: &[(ConeKind, Orientation)], apex_included: bool) -> Region {
    let mut atoms: Vec<Region> = parts
        .iter()
        .map(|(kind, orientation)| Region::cone(x, *kind, *orientation, apex_included))
        .collect();
    if atoms.len() == 1 {
        atoms.pop().unwrap()
    } else {
        Region::union(atoms)
    }
}

/// `{y : x R y}`.
pub fn future_set(r: RelationId, x: &Point) -> Region {
    cone_union(x, r.future_cones(), r.reflexive())
}

/// `{y : y R x}`.
pub fn past_set(r: RelationId, x: &Point) -> Region {
    let parts: Vec<_> = r
        .future_cones()
        .iter()
        .map(|(kind, orientation)| (*kind, orientation.opposite()))
        .collect();
    cone_union(x, &parts, r.reflexive())
}

pub fn subbase_at(tid: TopologyId, x: &Point) -> Result<Vec<Region>> {
    tid.expect_kind(&[ConstructionKind::OrderSubbase], "order")?;
    Ok(vec![
        future_set(tid.relation(), x),
        past_set(tid.relation(), x),
    ])
}

/// `future(a) ∩ past(b)`.
pub fn diamond(tid: TopologyId, a: &Point, b: &Point) -> Result<Region> {
    tid.expect_kind(&[ConstructionKind::OrderSubbase], "order")?;
    Ok(Region::intersection(vec![
        future_set(tid.relation(), a),
        past_set(tid.relation(), b),
    ]))
}

/// `M ∖ (future(x) ∪ past(x))`, as set-builder complement.
pub fn interval_core_set_builder(tid: TopologyId, x: &Point) -> Result<Region> {
    tid.expect_kind(
        &[
            ConstructionKind::Interval,
            ConstructionKind::IntersectionWithE,
        ],
        "interval or intersection",
    )?;
    let r = tid.relation();
    Ok(Region::complement(Region::union(vec![
        future_set(r, x),
        past_set(r, x),
    ])))
}

/// The canonical interval basic open at `x`, in explicit cone form.
pub fn interval_core(tid: TopologyId, x: &Point) -> Result<Region> {
    use ConeKind::{Light, Space, Time};
    tid.expect_kind(
        &[
            ConstructionKind::Interval,
            ConstructionKind::IntersectionWithE,
        ],
        "interval or intersection",
    )?;
    let both = |kind, apex_in| Region::cone(x, kind, Orientation::Both, apex_in);
    let pair = |a, b, apex_in| Region::union(vec![both(a, apex_in), both(b, apex_in)]);
    let region = match tid.relation() {
        RelationId::Chronology => pair(Space, Light, true),
        RelationId::Horismos => pair(Space, Time, false),
        RelationId::Chorology => pair(Time, Light, true),
        RelationId::IrrHorismos => pair(Time, Space, true),
        RelationId::ReflChronology => pair(Space, Light, false),
        RelationId::IrrCausal => both(Space, true),
        RelationId::Causal => both(Space, false),
        RelationId::ReflChorology => pair(Time, Light, false),
        RelationId::IrrComplChronology => both(Time, true),
        RelationId::ComplChronology => both(Time, false),
    };
    Ok(region)
}

/// Intersection of all subbasic complements `M ∖ future(a)` and `M ∖ past(a)`
/// over the anchor set.
fn interval_region(tid: TopologyId, anchors: &[Point]) -> Result<Region> {
    let mut parts = Vec::with_capacity(anchors.len());
    for (i, a) in anchors.iter().enumerate() {
        parts.push(if i == 0 {
            interval_core(tid, a)?
        } else {
            interval_core_set_builder(tid, a)?
        });
    }
    Ok(match parts.len() {
        0 => Region::All,
        1 => parts.pop().unwrap(),
        _ => Region::intersection(parts),
    })
}

/// Parameters of a basic open set, by construction kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicParams {
    Diamond {
        a: Point,
        b: Point,
    },
    Anchors(Vec<Point>),
    /// Ball radius ε (not squared).
    Radius(Scalar),
}

/// A basic open set of `tid` required to contain `x`.
pub fn basic_open(tid: TopologyId, x: &Point, params: &BasicParams) -> Result<Region> {
    let region = match (tid.kind(), params) {
        (ConstructionKind::OrderSubbase, BasicParams::Diamond { a, b }) => diamond(tid, a, b)?,
        (ConstructionKind::Interval, BasicParams::Anchors(anchors)) => {
            if anchors.is_empty() {
                return Err(Error::InvalidParams("anchor set is empty".into()));
            }
            interval_region(tid, anchors)?
        }
        (ConstructionKind::IntersectionWithE, BasicParams::Radius(eps)) => {
            let ball = BallAtom::with_radius(x.clone(), eps)
                .map_err(|e| Error::InvalidParams(e.to_string()))?;
            Region::intersection(vec![Region::ball(ball), interval_core(tid, x)?])
        }
        (kind, params) => {
            return Err(Error::InvalidParams(format!(
                "{params:?} does not fit a topology of kind {kind}"
            )))
        }
    };
    if !region.contains(x) {
        return Err(Error::InvalidParams(format!(
            "basic open of topology {tid} does not contain {x}"
        )));
    }
    Ok(region)
}

/// Same construction, conjugate relation under the time/space swap.
pub fn dual_topology(tid: TopologyId) -> TopologyId {
    TopologyId::from_parts(dual_relation(tid.relation()), tid.kind())
}

/// Which neighborhood system a family draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Euclidean,
    Topology(TopologyId),
}

impl Family {
    pub fn dual(self) -> Family {
        match self {
            Family::Euclidean => Family::Euclidean,
            Family::Topology(tid) => Family::Topology(dual_topology(tid)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Euclidean => f.write_str("E"),
            Family::Topology(tid) => write!(f, "{tid}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        if text.eq_ignore_ascii_case("e") {
            Ok(Family::Euclidean)
        } else {
            text.parse().map(Family::Topology)
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Family::Euclidean => serializer.serialize_str("E"),
            Family::Topology(tid) => tid.serialize(serializer),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyParam {
    /// ε for balls, δ for diamonds; ignored by interval families.
    Scale(Scalar),
    /// Extra anchors refining an interval core.
    Anchors(Vec<Point>),
}

/// A parameterized local basis at `anchor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodFamily {
    pub family: Family,
    pub anchor: Point,
}

pub fn neighborhood_family(tid: TopologyId, x: &Point) -> NeighborhoodFamily {
    NeighborhoodFamily {
        family: Family::Topology(tid),
        anchor: x.clone(),
    }
}

impl NeighborhoodFamily {
    pub fn euclidean(x: &Point) -> Self {
        NeighborhoodFamily {
            family: Family::Euclidean,
            anchor: x.clone(),
        }
    }

    /// Smaller scale parameter gives a smaller member.
    pub fn monotone(&self) -> bool {
        match self.family {
            Family::Euclidean => true,
            Family::Topology(tid) => tid.kind() != ConstructionKind::Interval,
        }
    }

    /// The member for `param`. Members are not required to contain the
    /// anchor: cores of reflexive relations omit their own apex.
    pub fn member(&self, param: &FamilyParam) -> Result<Region> {
        let x = &self.anchor;
        let positive = |v: &Scalar| {
            if v.is_positive() {
                Ok(v.clone())
            } else {
                Err(Error::InvalidParams(format!(
                    "scale must be positive, got {v}"
                )))
            }
        };
        let tid = match self.family {
            Family::Euclidean => {
                return match param {
                    FamilyParam::Scale(eps) => Ok(Region::ball(BallAtom::with_radius(
                        x.clone(),
                        &positive(eps)?,
                    )?)),
                    FamilyParam::Anchors(_) => Err(Error::InvalidParams(
                        "Euclidean family takes a radius".into(),
                    )),
                }
            }
            Family::Topology(tid) => tid,
        };
        match (tid.kind(), param) {
            (ConstructionKind::OrderSubbase, FamilyParam::Scale(delta)) => {
                let offset = tid.diamond_axis().scale(&positive(delta)?);
                diamond(tid, &(x - &offset), &(x + &offset))
            }
            (ConstructionKind::Interval, FamilyParam::Scale(_)) => interval_core(tid, x),
            (ConstructionKind::Interval, FamilyParam::Anchors(extra)) => {
                let mut anchors = vec![x.clone()];
                anchors.extend(extra.iter().cloned());
                interval_region(tid, &anchors)
            }
            (ConstructionKind::IntersectionWithE, FamilyParam::Scale(eps)) => {
                let ball = BallAtom::with_radius(x.clone(), &positive(eps)?)?;
                Ok(Region::intersection(vec![
                    Region::ball(ball),
                    interval_core(tid, x)?,
                ]))
            }
            (kind, param) => Err(Error::InvalidParams(format!(
                "{param:?} is not a parameter of a {kind} family"
            ))),
        }
    }
}
