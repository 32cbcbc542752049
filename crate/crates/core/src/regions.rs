//! Symbolic regions of the plane: cone and ball atoms combined with boolean
//! operators, with exact membership.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{classify, euclid_sq, CausalClass, Point, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    Time,
    Light,
    Space,
    /// Time ∪ Light.
    Causal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Future,
    Past,
    Plus,
    Minus,
    Both,
}

impl Orientation {
    pub fn opposite(self) -> Orientation {
        match self {
            Orientation::Future => Orientation::Past,
            Orientation::Past => Orientation::Future,
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
            Orientation::Both => Orientation::Both,
        }
    }

    fn swapped(self) -> Orientation {
        match self {
            Orientation::Future => Orientation::Plus,
            Orientation::Plus => Orientation::Future,
            Orientation::Past => Orientation::Minus,
            Orientation::Minus => Orientation::Past,
            Orientation::Both => Orientation::Both,
        }
    }

    fn admits(self, d: &Point) -> bool {
        match self {
            Orientation::Future => d.t.is_positive(),
            Orientation::Past => d.t.is_negative(),
            Orientation::Plus => d.s.is_positive(),
            Orientation::Minus => d.s.is_negative(),
            Orientation::Both => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeAtom {
    pub apex: Point,
    pub kind: ConeKind,
    pub orientation: Orientation,
    pub apex_included: bool,
}

impl ConeAtom {
    pub fn contains(&self, p: &Point) -> bool {
        if *p == self.apex {
            return self.apex_included;
        }
        self.admits_direction(&(p - &self.apex))
    }

    /// Membership of `apex + d` for `d ≠ 0`; constant along open half-rays.
    fn admits_direction(&self, d: &Point) -> bool {
        let class = classify(&Point::origin(), d);
        let kind_ok = match self.kind {
            ConeKind::Time => class.is_timelike(),
            ConeKind::Light => class.is_lightlike(),
            ConeKind::Space => class.is_spacelike(),
            ConeKind::Causal => class.is_timelike() || class.is_lightlike(),
        };
        kind_ok && class != CausalClass::Equal && self.orientation.admits(d)
    }
}

/// An open Euclidean ball, stored by squared radius.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBall")]
pub struct BallAtom {
    pub center: Point,
    pub radius_sq: Scalar,
}

#[derive(Deserialize)]
struct RawBall {
    center: Point,
    radius_sq: Scalar,
}

impl TryFrom<RawBall> for BallAtom {
    type Error = Error;
    fn try_from(raw: RawBall) -> Result<Self> {
        BallAtom::new(raw.center, raw.radius_sq)
    }
}

impl BallAtom {
    pub fn new(center: Point, radius_sq: Scalar) -> Result<Self> {
        if !radius_sq.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "ball radius_sq must be positive, got {radius_sq}"
            )));
        }
        Ok(BallAtom { center, radius_sq })
    }

    /// The ball of radius `radius` (not squared).
    pub fn with_radius(center: Point, radius: &Scalar) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        BallAtom::new(center, radius.square())
    }

    pub fn contains(&self, p: &Point) -> bool {
        euclid_sq(&(p - &self.center)) < self.radius_sq
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Region {
    Cone(ConeAtom),
    Ball(BallAtom),
    Singleton {
        point: Point,
    },
    All,
    Empty,
    Union {
        of: Vec<Region>,
    },
    Intersection {
        of: Vec<Region>,
    },
    Complement {
        of: Box<Region>,
    },
    Difference {
        left: Box<Region>,
        right: Box<Region>,
    },
}

impl Region {
    pub fn cone(
        apex: &Point,
        kind: ConeKind,
        orientation: Orientation,
        apex_included: bool,
    ) -> Region {
        Region::Cone(ConeAtom {
            apex: apex.clone(),
            kind,
            orientation,
            apex_included,
        })
    }

    pub fn ball(ball: BallAtom) -> Region {
        Region::Ball(ball)
    }

    pub fn singleton(point: &Point) -> Region {
        Region::Singleton {
            point: point.clone(),
        }
    }

    pub fn union(of: Vec<Region>) -> Region {
        Region::Union { of }
    }

    pub fn intersection(of: Vec<Region>) -> Region {
        Region::Intersection { of }
    }

    pub fn complement(of: Region) -> Region {
        Region::Complement { of: Box::new(of) }
    }

    pub fn difference(left: Region, right: Region) -> Region {
        Region::Difference {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        contains(self, p)
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            Region::Union { of } | Region::Intersection { of } => {
                1 + of.iter().map(Region::size).sum::<usize>()
            }
            Region::Complement { of } => 1 + of.size(),
            Region::Difference { left, right } => 1 + left.size() + right.size(),
            _ => 1,
        }
    }

    /// Image of the region under `(t, s) ↦ (s, t)`: time and space kinds
    /// exchange, future/past become plus/minus, balls map to balls.
    pub fn swap_region(&self) -> Region {
        match self {
            Region::Cone(atom) => {
                let apex = atom.apex.swap();
                let orientation = atom.orientation.swapped();
                let included = atom.apex_included;
                match atom.kind {
                    ConeKind::Time => Region::cone(&apex, ConeKind::Space, orientation, included),
                    ConeKind::Space => Region::cone(&apex, ConeKind::Time, orientation, included),
                    ConeKind::Light => Region::cone(&apex, ConeKind::Light, orientation, included),
                    ConeKind::Causal => Region::union(vec![
                        Region::cone(&apex, ConeKind::Space, orientation, included),
                        Region::cone(&apex, ConeKind::Light, orientation, included),
                    ]),
                }
            }
            Region::Ball(ball) => Region::Ball(BallAtom {
                center: ball.center.swap(),
                radius_sq: ball.radius_sq.clone(),
            }),
            Region::Singleton { point } => Region::singleton(&point.swap()),
            Region::All => Region::All,
            Region::Empty => Region::Empty,
            Region::Union { of } => Region::union(of.iter().map(Region::swap_region).collect()),
            Region::Intersection { of } => {
                Region::intersection(of.iter().map(Region::swap_region).collect())
            }
            Region::Complement { of } => Region::complement(of.swap_region()),
            Region::Difference { left, right } => {
                Region::difference(left.swap_region(), right.swap_region())
            }
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, parts: &[Region], op: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, part) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{part}")?;
            }
            write!(f, ")")
        };
        match self {
            Region::Cone(atom) => {
                let kind = match atom.kind {
                    ConeKind::Time => "T",
                    ConeKind::Light => "L",
                    ConeKind::Space => "S",
                    ConeKind::Causal => "T∪L",
                };
                let orient = match atom.orientation {
                    Orientation::Future | Orientation::Plus => "_+",
                    Orientation::Past | Orientation::Minus => "_-",
                    Orientation::Both => "",
                };
                write!(f, "C{orient}^{kind}{}", atom.apex)?;
                if !atom.apex_included {
                    write!(f, "∖{{apex}}")?;
                }
                Ok(())
            }
            Region::Ball(ball) => write!(f, "B[r²={}]{}", ball.radius_sq, ball.center),
            Region::Singleton { point } => write!(f, "{{{point}}}"),
            Region::All => write!(f, "M"),
            Region::Empty => write!(f, "∅"),
            Region::Union { of } => join(f, of, "∪"),
            Region::Intersection { of } => join(f, of, "∩"),
            Region::Complement { of } => write!(f, "M∖{of}"),
            Region::Difference { left, right } => write!(f, "({left} ∖ {right})"),
        }
    }
}

/// Exact membership by structural recursion.
pub fn contains(reg: &Region, p: &Point) -> bool {
    match reg {
        Region::Cone(atom) => atom.contains(p),
        Region::Ball(ball) => ball.contains(p),
        Region::Singleton { point } => point == p,
        Region::All => true,
        Region::Empty => false,
        Region::Union { of } => of.iter().any(|r| contains(r, p)),
        Region::Intersection { of } => of.iter().all(|r| contains(r, p)),
        Region::Complement { of } => !contains(of, p),
        Region::Difference { left, right } => contains(left, p) && !contains(right, p),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub found: bool,
    pub point: Option<Point>,
}

impl ProbeResult {
    fn found(point: Point) -> Self {
        ProbeResult {
            found: true,
            point: Some(point),
        }
    }

    fn not_found() -> Self {
        ProbeResult {
            found: false,
            point: None,
        }
    }
}

/// The eight axis and null directions, in probe order.
pub fn probe_directions() -> [Point; 8] {
    [
        Point::ints(1, 0),
        Point::ints(-1, 0),
        Point::ints(0, 1),
        Point::ints(0, -1),
        Point::ints(1, 1),
        Point::ints(1, -1),
        Point::ints(-1, 1),
        Point::ints(-1, -1),
    ]
}

/// The four null directions from an event.
pub fn null_directions() -> [Point; 4] {
    [
        Point::ints(1, 1),
        Point::ints(1, -1),
        Point::ints(-1, 1),
        Point::ints(-1, -1),
    ]
}

/// A point of `reg` outside `ball`, found by doubling along each probe
/// direction from the ball's center until the point leaves the ball.
pub fn escape_point(reg: &Region, ball: &BallAtom) -> ProbeResult {
    let two = Scalar::int(2);
    for dir in probe_directions() {
        let mut n = Scalar::one();
        let mut offset = dir.clone();
        while euclid_sq(&offset) <= ball.radius_sq {
            n = &n * &two;
            offset = dir.scale(&n);
        }
        let candidate = &ball.center + &offset;
        if contains(reg, &candidate) {
            return ProbeResult::found(candidate);
        }
    }
    ProbeResult::not_found()
}

/// A point within `sqrt(delta_sq)` of `x` that is not in `reg`. Probes the
/// eight directions at the largest dyadic scale that fits.
pub fn puncture_point(reg: &Region, x: &Point, delta_sq: &Scalar) -> Result<ProbeResult> {
    if !delta_sq.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "delta_sq must be positive, got {delta_sq}"
        )));
    }
    if !contains(reg, x) {
        return Err(Error::Precondition(format!("{x} is not in the region")));
    }
    let half = Scalar::new(1, 2);
    for dir in probe_directions() {
        let mut offset = dir.clone();
        while euclid_sq(&offset) >= *delta_sq {
            offset = offset.scale(&half);
        }
        let candidate = x + &offset;
        if !contains(reg, &candidate) {
            return Ok(ProbeResult::found(candidate));
        }
    }
    Ok(ProbeResult::not_found())
}

/// Membership along the open half-ray `x + c·dir`, `c > 0`, when it is
/// decidable from the tree alone.
fn ray_membership(reg: &Region, x: &Point, dir: &Point) -> Option<bool> {
    match reg {
        Region::Cone(atom) if atom.apex == *x => Some(atom.admits_direction(dir)),
        Region::Cone(_) | Region::Ball(_) => None,
        Region::Singleton { point } => {
            let d = point - x;
            let on_ray = !d.is_origin()
                && (&d.t * &dir.s == &d.s * &dir.t)
                && d.t.sign() == dir.t.sign()
                && d.s.sign() == dir.s.sign();
            if on_ray {
                None
            } else {
                Some(false)
            }
        }
        Region::All => Some(true),
        Region::Empty => Some(false),
        Region::Union { of } => {
            let parts: Vec<_> = of.iter().map(|r| ray_membership(r, x, dir)).collect();
            if parts.contains(&Some(true)) {
                Some(true)
            } else {
                parts
                    .into_iter()
                    .try_fold(false, |acc, b| b.map(|b| acc || b))
            }
        }
        Region::Intersection { of } => {
            let parts: Vec<_> = of.iter().map(|r| ray_membership(r, x, dir)).collect();
            if parts.contains(&Some(false)) {
                Some(false)
            } else {
                parts
                    .into_iter()
                    .try_fold(true, |acc, b| b.map(|b| acc && b))
            }
        }
        Region::Complement { of } => ray_membership(of, x, dir).map(|b| !b),
        Region::Difference { left, right } => {
            match (ray_membership(left, x, dir), ray_membership(right, x, dir)) {
                (Some(false), _) | (_, Some(true)) => Some(false),
                (Some(l), Some(r)) => Some(l && !r),
                _ => None,
            }
        }
    }
}

/// Whether `C^L(x) ∖ {x} ⊆ reg`, decided symbolically from the cone atoms
/// anchored at `x` and cross-checked on 100 rational points of each null
/// half-ray.
pub fn contains_punctured_light_cone(reg: &Region, x: &Point) -> Result<bool> {
    let mut symbolic = true;
    let mut sampled = true;
    for dir in null_directions() {
        let on_ray = ray_membership(reg, x, &dir).ok_or_else(|| {
            Error::NotCanonical(format!("membership along {dir} from {x} is not constant"))
        })?;
        symbolic &= on_ray;
        for k in 1..=100 {
            let p = x + &dir.scale(&Scalar::new(k, 10));
            sampled &= contains(reg, &p);
        }
    }
    if symbolic != sampled {
        return Err(Error::InternalConsistency(format!(
            "light-cone containment at {x}: symbolic {symbolic}, sampled {sampled}"
        )));
    }
    Ok(symbolic)
}

/// Row-major membership raster. Row 0 is the largest time coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl Bitmap {
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.width + col]
    }

    /// Binary PGM (`P5`), 255 for members and 0 otherwise.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.cells.iter().map(|&b| if b { 255u8 } else { 0 }));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 2);
        for row in self.cells.chunks(self.width) {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// The lattice of a window: `resolution = (width, height)` samples along
/// space and time respectively, endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: Point,
    pub hi: Point,
    pub width: usize,
    pub height: usize,
}

impl Window {
    pub fn new(lo: Point, hi: Point, resolution: (usize, usize)) -> Result<Self> {
        let (width, height) = resolution;
        if lo.t >= hi.t || lo.s >= hi.s {
            return Err(Error::InvalidWindow(format!(
                "corners {lo} and {hi} are not strictly ordered"
            )));
        }
        if width == 0 || height == 0 {
            return Err(Error::InvalidWindow(
                "resolution must be at least 1×1".into(),
            ));
        }
        Ok(Window {
            lo,
            hi,
            width,
            height,
        })
    }

    fn coordinate(lo: &Scalar, hi: &Scalar, index: usize, count: usize) -> Scalar {
        if count == 1 {
            return (lo + hi) / Scalar::int(2);
        }
        lo + &((hi - lo) * Scalar::int(index as i64) / Scalar::int(count as i64 - 1))
    }

    pub fn point(&self, row: usize, col: usize) -> Point {
        let t = Window::coordinate(&self.hi.t, &self.lo.t, row, self.height);
        let s = Window::coordinate(&self.lo.s, &self.hi.s, col, self.width);
        Point::new(t, s)
    }

    fn row(&self, reg: &Region, row: usize) -> Vec<bool> {
        (0..self.width)
            .map(|col| contains(reg, &self.point(row, col)))
            .collect()
    }
}

pub fn sample_grid(reg: &Region, window: &Window) -> Bitmap {
    let cells = (0..window.height)
        .flat_map(|row| window.row(reg, row))
        .collect();
    Bitmap {
        width: window.width,
        height: window.height,
        cells,
    }
}

/// Same raster as [`sample_grid`], with rows split across `threads` workers.
pub fn sample_grid_parallel(reg: &Region, window: &Window, threads: usize) -> Bitmap {
    let threads = threads.clamp(1, window.height);
    let chunk = window.height.div_ceil(threads);
    let rows: Vec<Vec<bool>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let range = (w * chunk)..((w + 1) * chunk).min(window.height);
                scope.spawn(move || {
                    range
                        .flat_map(|row| window.row(reg, row))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("render worker"))
            .collect()
    });
    Bitmap {
        width: window.width,
        height: window.height,
        cells: rows.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{grid, random_point, random_region};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn o() -> Point {
        Point::origin()
    }

    fn unit_ball(radius_sq: i64) -> BallAtom {
        BallAtom::new(o(), Scalar::int(radius_sq)).unwrap()
    }

    #[test]
    fn contains_examples() {
        let space = Region::cone(&o(), ConeKind::Space, Orientation::Both, false);
        assert!(space.contains(&Point::ints(0, 1)));
        assert!(!Region::ball(unit_ball(1)).contains(&Point::ints(1, 0)));
        let causal = Region::cone(&o(), ConeKind::Causal, Orientation::Future, false);
        assert!(causal.contains(&Point::ints(2, 2)));
        assert!(!causal.contains(&Point::ints(2, 3)));
        assert!(!causal.contains(&o()));
    }

    #[test]
    fn ball_rejects_nonpositive_radius() {
        assert!(BallAtom::new(o(), Scalar::zero()).is_err());
        let json = r#"{"type":"ball","center":["0/1","0/1"],"radius_sq":"-1/1"}"#;
        assert!(serde_json::from_str::<Region>(json).is_err());
    }

    #[test]
    fn escape_examples() {
        let space = Region::cone(&o(), ConeKind::Space, Orientation::Both, false);
        assert_eq!(
            escape_point(&space, &unit_ball(1)).point,
            Some(Point::ints(0, 2))
        );
        let time = Region::cone(&o(), ConeKind::Time, Orientation::Both, true);
        assert_eq!(
            escape_point(&time, &unit_ball(100)).point,
            Some(Point::ints(16, 0))
        );
        let single = Region::singleton(&o());
        assert!(!escape_point(&single, &unit_ball(1)).found);
        assert!(!escape_point(&Region::Empty, &unit_ball(1)).found);
    }

    #[test]
    fn puncture_examples() {
        let space_light = Region::union(vec![
            Region::cone(&o(), ConeKind::Space, Orientation::Both, true),
            Region::cone(&o(), ConeKind::Light, Orientation::Both, true),
        ]);
        let delta_sq = Scalar::new(1, 9);
        let q = puncture_point(&space_light, &o(), &delta_sq)
            .unwrap()
            .point
            .unwrap();
        assert!(q.s.is_zero() && q.t.is_positive());
        assert!(euclid_sq(&q) < delta_sq);
        assert!(!space_light.contains(&q));

        let ball = Region::ball(unit_ball(1));
        assert!(
            !puncture_point(&ball, &o(), &Scalar::new(1, 4))
                .unwrap()
                .found
        );

        let time = Region::cone(&o(), ConeKind::Time, Orientation::Both, true);
        let q = puncture_point(&time, &o(), &Scalar::one())
            .unwrap()
            .point
            .unwrap();
        assert!(q.t.is_zero() && q.s.is_positive());
    }

    #[test]
    fn puncture_requires_membership() {
        let time = Region::cone(&o(), ConeKind::Time, Orientation::Both, false);
        assert!(matches!(
            puncture_point(&time, &o(), &Scalar::one()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn light_cone_containment_examples() {
        let x = Point::new(Scalar::new(3, 2), Scalar::int(-1));
        let space = Region::cone(&x, ConeKind::Space, Orientation::Both, true);
        let light = Region::cone(&x, ConeKind::Light, Orientation::Both, true);
        let time = Region::cone(&x, ConeKind::Time, Orientation::Both, true);
        let with_light = Region::union(vec![space.clone(), light]);
        assert!(contains_punctured_light_cone(&with_light, &x).unwrap());
        assert!(!contains_punctured_light_cone(&space, &x).unwrap());
        let deleted = Region::difference(Region::union(vec![time, space]), Region::singleton(&x));
        assert!(!contains_punctured_light_cone(&deleted, &x).unwrap());
    }

    #[test]
    fn light_cone_containment_needs_canonical_region() {
        let off_anchor = Region::cone(&Point::ints(5, 0), ConeKind::Light, Orientation::Both, true);
        assert!(matches!(
            contains_punctured_light_cone(&off_anchor, &o()),
            Err(Error::NotCanonical(_))
        ));
    }

    fn window(res: usize) -> Window {
        Window::new(Point::ints(-1, -1), Point::ints(1, 1), (res, res)).unwrap()
    }

    #[test]
    fn sample_grid_examples() {
        assert!(sample_grid(&Region::All, &window(2))
            .cells
            .iter()
            .all(|b| *b));
        assert!(sample_grid(&Region::Empty, &window(2))
            .cells
            .iter()
            .all(|b| !*b));

        let time = Region::cone(&o(), ConeKind::Time, Orientation::Both, true);
        let raster = sample_grid(&time, &window(3));
        let expected = [
            [false, true, false],
            [false, true, false],
            [false, true, false],
        ];
        for (row, cells) in expected.iter().enumerate() {
            for (col, want) in cells.iter().enumerate() {
                assert_eq!(raster.get(row, col), *want, "row {row} col {col}");
            }
        }
        assert_eq!(window(3).point(0, 1), Point::ints(1, 0));
        assert_eq!(raster.to_csv(), "0,1,0\n0,1,0\n0,1,0\n");
        assert_eq!(&raster.to_pgm()[..11], b"P5\n3 3\n255\n");
    }

    #[test]
    fn degenerate_window_rejected() {
        assert!(Window::new(Point::ints(1, -1), Point::ints(1, 1), (2, 2)).is_err());
        assert!(Window::new(Point::ints(-1, -1), Point::ints(1, 1), (0, 2)).is_err());
    }

    #[test]
    fn parallel_render_matches_serial() {
        let reg = Region::difference(
            Region::cone(&o(), ConeKind::Causal, Orientation::Future, true),
            Region::ball(unit_ball(1)),
        );
        let w = Window::new(Point::ints(-3, -3), Point::ints(3, 3), (17, 13)).unwrap();
        assert_eq!(sample_grid(&reg, &w), sample_grid_parallel(&reg, &w, 4));
    }

    #[test]
    fn cone_partition() {
        let x = Point::new(Scalar::new(1, 3), Scalar::int(2));
        let cones: Vec<Region> = [ConeKind::Time, ConeKind::Light, ConeKind::Space]
            .into_iter()
            .map(|k| Region::cone(&x, k, Orientation::Both, false))
            .collect();
        for p in grid(&x, 6, &Scalar::new(1, 3)).iter().filter(|p| **p != x) {
            assert_eq!(cones.iter().filter(|c| c.contains(p)).count(), 1, "{p}");
        }
    }

    #[test]
    fn region_json_round_trip() {
        let reg = Region::intersection(vec![
            Region::ball(BallAtom::new(Point::ints(1, 2), Scalar::new(1, 4)).unwrap()),
            Region::complement(Region::cone(&o(), ConeKind::Light, Orientation::Past, true)),
        ]);
        let text = serde_json::to_string(&reg).unwrap();
        assert!(text.contains(r#""radius_sq":"1/4""#));
        assert_eq!(serde_json::from_str::<Region>(&text).unwrap(), reg);
    }

    proptest! {
        #[test]
        fn combinators_are_sound(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_region(&mut rng, 3);
            let b = random_region(&mut rng, 3);
            let p = random_point(&mut rng);
            let (ina, inb) = (a.contains(&p), b.contains(&p));
            prop_assert_eq!(Region::complement(a.clone()).contains(&p), !ina);
            prop_assert_eq!(Region::union(vec![a.clone(), b.clone()]).contains(&p), ina || inb);
            prop_assert_eq!(Region::intersection(vec![a.clone(), b.clone()]).contains(&p), ina && inb);
            prop_assert_eq!(Region::difference(a.clone(), b.clone()).contains(&p), ina && !inb);
        }

        #[test]
        fn swap_covariance(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let reg = random_region(&mut rng, 3);
            for _ in 0..8 {
                let p = random_point(&mut rng);
                prop_assert_eq!(reg.swap_region().contains(&p.swap()), reg.contains(&p));
            }
        }

        #[test]
        fn probes_self_certify(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let reg = random_region(&mut rng, 2);
            let center = random_point(&mut rng);
            let ball = BallAtom::new(center.clone(), Scalar::new(9, 4)).unwrap();
            let esc = escape_point(&reg, &ball);
            if let Some(p) = esc.point {
                prop_assert!(reg.contains(&p) && !ball.contains(&p));
            }
            if reg.contains(&center) {
                let delta_sq = Scalar::new(1, 16);
                if let Some(q) = puncture_point(&reg, &center, &delta_sq).unwrap().point {
                    prop_assert!(!reg.contains(&q));
                    prop_assert!(euclid_sq(&(&q - &center)) < delta_sq);
                }
            }
        }
    }
}
