//! Verification harness: comparability with the Euclidean topology,
//! sequence convergence against neighborhood families, and the light-cone
//! audit of canonical basic opens.
//!
//! Every witness stored in a report can be replayed through the exact
//! region oracles with `reverify`.

use serde::{Deserialize, Serialize};

use crate::catalog::{
    future_set, interval_core, neighborhood_family, past_set, ConstructionKind, Family,
    FamilyParam, NeighborhoodFamily, TopologyId,
};
use crate::error::{Error, Result};
use crate::geometry::{euclid_sq, Point, Scalar};
use crate::regions::{
    contains_punctured_light_cone, escape_point, probe_directions, BallAtom, Region,
};
use crate::sampling::grid;

/// Anchors used by the catalog and the audits: `(0,0)`, `(3,−2)`, `(−5/2, 7/3)`.
pub fn standard_anchors() -> Vec<Point> {
    vec![
        Point::origin(),
        Point::ints(3, -2),
        Point::new(Scalar::new(-5, 2), Scalar::new(7, 3)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparabilityClaim {
    StrictlyFinerThanE,
    IncomparableWithE,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `center ∈ region`, `point ∉ region`, `|point − center|² < delta_sq`,
    /// and `center + (point − center)/2^k ∉ region` for `k ≤ persistence`.
    Puncture {
        region: Region,
        center: Point,
        point: Point,
        delta_sq: Scalar,
        persistence: u32,
    },
    /// `point ∈ region`, `|point − center|² ≥ radius_sq`.
    Escape {
        region: Region,
        center: Point,
        point: Point,
        radius_sq: Scalar,
    },
    /// `region = ball ∩ …`, confirmed on `samples_checked` lattice points.
    Inclusion {
        region: Region,
        ball: BallAtom,
        samples_checked: usize,
    },
}

impl Witness {
    pub fn reverify(&self) -> bool {
        match self {
            Witness::Puncture {
                region,
                center,
                point,
                delta_sq,
                persistence,
            } => {
                region.contains(center)
                    && euclid_sq(&(point - center)) < *delta_sq
                    && persists_outside(region, center, &(point - center), *persistence)
            }
            Witness::Escape {
                region,
                center,
                point,
                radius_sq,
            } => region.contains(point) && euclid_sq(&(point - center)) >= *radius_sq,
            Witness::Inclusion {
                region,
                ball,
                samples_checked,
            } => {
                let structural = matches!(
                    region,
                    Region::Intersection { of } if of.first() == Some(&Region::Ball(ball.clone()))
                );
                structural && inclusion_samples(region, ball) == Some(*samples_checked)
            }
        }
    }
}

/// Checks every lattice point of the region near the ball lies in the ball;
/// returns the number of lattice points examined.
fn inclusion_samples(region: &Region, ball: &BallAtom) -> Option<usize> {
    let pts = grid(&ball.center, 12, &Scalar::new(1, 4));
    pts.iter()
        .all(|p| !region.contains(p) || ball.contains(p))
        .then_some(pts.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparabilityReport {
    pub tid: TopologyId,
    pub claim: ComparabilityClaim,
    pub finer_witnesses: Vec<Witness>,
    pub coarser_witnesses: Vec<Witness>,
    /// Anchors at which a required witness could not be produced.
    pub failures: Vec<String>,
    pub verdict: bool,
}

impl ComparabilityReport {
    pub fn reverify(&self) -> bool {
        self.finer_witnesses
            .iter()
            .chain(&self.coarser_witnesses)
            .all(Witness::reverify)
    }
}

const PUNCTURE_DELTA_SQ: (i64, i64) = (1, 16);
/// Number of further halvings over which a puncture must stay outside.
const PUNCTURE_PERSISTENCE: u32 = 24;

/// `center + offset/2^k ∉ region` for every `k` in `0..=persistence`.
fn persists_outside(region: &Region, center: &Point, offset: &Point, persistence: u32) -> bool {
    let half = Scalar::new(1, 2);
    let mut step = offset.clone();
    for _ in 0..=persistence {
        if region.contains(&(center + &step)) {
            return false;
        }
        step = step.scale(&half);
    }
    true
}

/// Looks for a point of `region` near which the region is not Euclidean-open:
/// first `x`, then candidates at distance 1/2 and 1/4 along the probe
/// directions. A direction counts only if its excluded points persist down
/// the dyadic scales.
fn find_puncture(region: &Region, x: &Point) -> Option<Witness> {
    let delta_sq = Scalar::new(PUNCTURE_DELTA_SQ.0, PUNCTURE_DELTA_SQ.1);
    let half = Scalar::new(1, 2);
    let mut candidates = vec![x.clone()];
    for scale in [Scalar::new(1, 2), Scalar::new(1, 4)] {
        candidates.extend(probe_directions().iter().map(|d| x + &d.scale(&scale)));
    }
    candidates
        .into_iter()
        .filter(|c| region.contains(c))
        .find_map(|center| {
            probe_directions().iter().find_map(|dir| {
                let mut offset = dir.clone();
                while euclid_sq(&offset) >= delta_sq {
                    offset = offset.scale(&half);
                }
                persists_outside(region, &center, &offset, PUNCTURE_PERSISTENCE).then(|| {
                    Witness::Puncture {
                        region: region.clone(),
                        point: &center + &offset,
                        center: center.clone(),
                        delta_sq: delta_sq.clone(),
                        persistence: PUNCTURE_PERSISTENCE,
                    }
                })
            })
        })
}

fn require_kind(tid: TopologyId, kind: ConstructionKind, expected: &'static str) -> Result<()> {
    if tid.kind() == kind {
        Ok(())
    } else {
        Err(Error::InvalidKind {
            tid: tid.index(),
            actual: tid.kind().name(),
            expected,
        })
    }
}

/// Checks that an intersection topology is strictly finer than E at each
/// anchor: its basic open with ε = 1 lies inside the ball, and it is not
/// Euclidean-open (a puncture witness exists).
pub fn check_strictly_finer_than_e(
    tid: TopologyId,
    anchors: &[Point],
) -> Result<ComparabilityReport> {
    require_kind(tid, ConstructionKind::IntersectionWithE, "intersection")?;
    let mut report = ComparabilityReport {
        tid,
        claim: ComparabilityClaim::StrictlyFinerThanE,
        finer_witnesses: Vec::new(),
        coarser_witnesses: Vec::new(),
        failures: Vec::new(),
        verdict: false,
    };
    for x in anchors {
        let region = neighborhood_family(tid, x).member(&FamilyParam::Scale(Scalar::one()))?;
        let ball = BallAtom::with_radius(x.clone(), &Scalar::one())?;
        match inclusion_samples(&region, &ball) {
            Some(samples_checked) => report.coarser_witnesses.push(Witness::Inclusion {
                region: region.clone(),
                ball,
                samples_checked,
            }),
            None => report
                .failures
                .push(format!("basic open at {x} leaves its ball")),
        }
        match find_puncture(&region, x) {
            Some(w) => report.finer_witnesses.push(w),
            None => report.failures.push(format!(
                "no puncture witness at {x}: the basic open is Euclidean-open at every probed point"
            )),
        }
    }
    report.verdict = report.failures.is_empty() && !anchors.is_empty() && report.reverify();
    Ok(report)
}

/// Checks that an interval topology is incomparable with E at each anchor:
/// some open set (the core or a subbasic complement) is not Euclidean-open,
/// and the core escapes the unit ball.
pub fn check_incomparable_with_e(
    tid: TopologyId,
    anchors: &[Point],
) -> Result<ComparabilityReport> {
    require_kind(tid, ConstructionKind::Interval, "interval")?;
    let mut report = ComparabilityReport {
        tid,
        claim: ComparabilityClaim::IncomparableWithE,
        finer_witnesses: Vec::new(),
        coarser_witnesses: Vec::new(),
        failures: Vec::new(),
        verdict: false,
    };
    let r = tid.relation();
    for x in anchors {
        let core = interval_core(tid, x)?;
        let open_sets = [
            core.clone(),
            Region::complement(future_set(r, x)),
            Region::complement(past_set(r, x)),
        ];
        match open_sets.iter().find_map(|u| find_puncture(u, x)) {
            Some(w) => report.finer_witnesses.push(w),
            None => report.failures.push(format!(
                "no puncture witness at {x}: core and subbasic sets are Euclidean-open at every probed point"
            )),
        }
        let ball = BallAtom::new(x.clone(), Scalar::one())?;
        match escape_point(&core, &ball).point {
            Some(point) => report.coarser_witnesses.push(Witness::Escape {
                region: core,
                center: x.clone(),
                point,
                radius_sq: ball.radius_sq,
            }),
            None => report
                .failures
                .push(format!("core at {x} fits inside the unit ball")),
        }
    }
    report.verdict = report.failures.is_empty() && !anchors.is_empty() && report.reverify();
    Ok(report)
}

/// Runs whichever comparability check applies to the kind of `tid`.
pub fn check_comparability(tid: TopologyId, anchors: &[Point]) -> Result<ComparabilityReport> {
    match tid.kind() {
        ConstructionKind::Interval => check_incomparable_with_e(tid, anchors),
        ConstructionKind::IntersectionWithE => check_strictly_finer_than_e(tid, anchors),
        ConstructionKind::OrderSubbase => Err(Error::InvalidKind {
            tid: tid.index(),
            actual: "order",
            expected: "interval or intersection",
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedTerm {
    /// 1-based position in the sequence.
    pub index: usize,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberOutcome {
    pub param: FamilyParam,
    /// Least index from which every term lies in the member.
    pub tail_index: Option<usize>,
    pub first_escape: Option<IndexedTerm>,
    pub last_escape: Option<IndexedTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub family: Family,
    pub limit: Point,
    pub converged: bool,
    pub members: Vec<MemberOutcome>,
    pub witness_member: Option<Region>,
    pub witness_param: Option<FamilyParam>,
    pub witness_term: Option<IndexedTerm>,
    /// Convergence is affirmed only relative to the tested family.
    pub relative_to_family: bool,
}

impl ConvergenceReport {
    /// Replays the refutation: the witness member must exclude the witness
    /// term and the final term of `seq`.
    pub fn reverify(&self, seq: &[Point]) -> bool {
        match (&self.witness_member, &self.witness_term) {
            (Some(member), Some(term)) => {
                !self.converged
                    && seq.get(term.index - 1) == Some(&term.point)
                    && !member.contains(&term.point)
                    && seq.last().is_some_and(|last| !member.contains(last))
            }
            (None, None) => self.converged,
            _ => false,
        }
    }
}

/// Tests `seq → limit` against the family members for `params`.
pub fn converges(
    seq: &[Point],
    limit: &Point,
    family: Family,
    params: &[FamilyParam],
) -> Result<ConvergenceReport> {
    if seq.is_empty() {
        return Err(Error::InvalidParameter("sequence is empty".into()));
    }
    if params.is_empty() {
        return Err(Error::InvalidParams("no family parameters".into()));
    }
    let fam = NeighborhoodFamily {
        family,
        anchor: limit.clone(),
    };
    let mut report = ConvergenceReport {
        family,
        limit: limit.clone(),
        converged: true,
        members: Vec::with_capacity(params.len()),
        witness_member: None,
        witness_param: None,
        witness_term: None,
        relative_to_family: true,
    };
    for param in params {
        let member = fam.member(param)?;
        let escapes: Vec<usize> = seq
            .iter()
            .enumerate()
            .filter(|(_, p)| !member.contains(p))
            .map(|(i, _)| i + 1)
            .collect();
        let term = |index: usize| IndexedTerm {
            index,
            point: seq[index - 1].clone(),
        };
        let tail_index = match escapes.last() {
            None => Some(1),
            Some(&last) if last < seq.len() => Some(last + 1),
            Some(_) => None,
        };
        let outcome = MemberOutcome {
            param: param.clone(),
            tail_index,
            first_escape: escapes.first().map(|&i| term(i)),
            last_escape: escapes.last().map(|&i| term(i)),
        };
        if tail_index.is_none() && report.converged {
            report.converged = false;
            report.witness_member = Some(member);
            report.witness_param = Some(param.clone());
            report.witness_term = outcome.first_escape.clone();
        }
        report.members.push(outcome);
    }
    Ok(report)
}

/// Default family parameters for a topology: ε or δ in {1, 1/2, 1/4}, or the
/// canonical core for interval topologies.
pub fn default_params(family: Family) -> Vec<FamilyParam> {
    match family {
        Family::Topology(tid) if tid.kind() == ConstructionKind::Interval => {
            vec![FamilyParam::Scale(Scalar::one())]
        }
        _ => [Scalar::one(), Scalar::new(1, 2), Scalar::new(1, 4)]
            .into_iter()
            .map(FamilyParam::Scale)
            .collect(),
    }
}

/// `x_k = (1/k, 1/k)` for `k = 1..=n`, approaching the origin along the
/// future null ray.
pub fn null_sequence(n_terms: usize) -> Vec<Point> {
    (1..=n_terms as i64)
        .map(|k| Point::new(Scalar::new(1, k), Scalar::new(1, k)))
        .collect()
}

/// Convergence of the null sequence to the origin in `tid`'s canonical family.
/// Cores containing the null ray admit convergence; the rest refute it.
pub fn null_sequence_experiment(tid: TopologyId, n_terms: usize) -> Result<ConvergenceReport> {
    if n_terms < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 terms, got {n_terms}"
        )));
    }
    let family = Family::Topology(tid);
    converges(
        &null_sequence(n_terms),
        &Point::origin(),
        family,
        &default_params(family),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LctGroup {
    /// Topologies 2, 3, 8, 9, 14, 15, 23, 24.
    StatedHolds,
    /// Topologies 5, 6, 11, 12, 17, 18, 20, 21, 26, 27, 29, 30.
    StatedFails,
}

impl LctGroup {
    pub fn of(tid: TopologyId) -> Option<LctGroup> {
        match tid.index() {
            2 | 3 | 8 | 9 | 14 | 15 | 23 | 24 => Some(LctGroup::StatedHolds),
            5 | 6 | 11 | 12 | 17 | 18 | 20 | 21 | 26 | 27 | 29 | 30 => Some(LctGroup::StatedFails),
            _ => None,
        }
    }

    /// The light-cone containment asserted alongside each group: the
    /// "holds" group is said not to contain the light cone, the "fails"
    /// group is said to contain it.
    pub fn stated_containment(self) -> bool {
        matches!(self, LctGroup::StatedFails)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctAuditRow {
    pub tid: TopologyId,
    pub formula: String,
    pub computed_contains_light_cone: bool,
    pub stated_lct_group: LctGroup,
    pub stated_contains_light_cone: bool,
    pub discrepancy_flag: bool,
}

/// Light-cone containment of every interval/intersection core, checked at
/// each anchor; anchors must agree.
pub fn lct_audit(anchors: &[Point]) -> Result<Vec<LctAuditRow>> {
    if anchors.is_empty() {
        return Err(Error::InvalidParameter("lct audit needs an anchor".into()));
    }
    TopologyId::all()
        .filter(|t| t.kind() != ConstructionKind::OrderSubbase)
        .map(|tid| {
            let mut values = anchors
                .iter()
                .map(|x| contains_punctured_light_cone(&interval_core(tid, x)?, x));
            let first = values.next().expect("nonempty")?;
            for value in values {
                if value? != first {
                    return Err(Error::InternalConsistency(format!(
                        "light-cone containment of topology {tid} depends on the anchor"
                    )));
                }
            }
            let group = LctGroup::of(tid).expect("interval and intersection kinds are grouped");
            let stated = group.stated_containment();
            Ok(LctAuditRow {
                tid,
                formula: tid.formula().to_string(),
                computed_contains_light_cone: first,
                stated_lct_group: group,
                stated_contains_light_cone: stated,
                discrepancy_flag: first != stated,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub index: TopologyId,
    pub relation: String,
    pub symbol: String,
    pub kind: ConstructionKind,
    pub name: String,
    pub formula: String,
    /// The comparability with E stated alongside the topology.
    pub comparability: String,
    /// Whether the harness could certify that comparability.
    pub comparability_verified: Option<bool>,
    pub contains_light_cone: Option<bool>,
}

/// The full 30-row table, with comparability and light-cone columns computed
/// at the standard anchors.
pub fn catalog_table() -> Result<Vec<CatalogRow>> {
    let anchors = standard_anchors();
    let audit = lct_audit(&anchors)?;
    TopologyId::all()
        .map(|tid| {
            let (comparability, verified) = match tid.kind() {
                ConstructionKind::OrderSubbase => ("not-stated", None),
                ConstructionKind::Interval => (
                    "incomparable-with-E",
                    Some(check_incomparable_with_e(tid, &anchors)?.verdict),
                ),
                ConstructionKind::IntersectionWithE => (
                    "finer-than-E",
                    Some(check_strictly_finer_than_e(tid, &anchors)?.verdict),
                ),
            };
            let light = audit
                .iter()
                .find(|row| row.tid == tid)
                .map(|row| row.computed_contains_light_cone);
            Ok(CatalogRow {
                index: tid,
                relation: tid.relation().name().to_string(),
                symbol: tid.relation().symbol().to_string(),
                kind: tid.kind(),
                name: tid.display_name(),
                formula: tid.formula().to_string(),
                comparability: comparability.to_string(),
                comparability_verified: verified,
                contains_light_cone: light,
            })
        })
        .collect()
}
