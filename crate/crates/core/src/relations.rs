//! The ten causal relations of the Minkowski plane and automorphism checks.
//!
//! Orientation convention: "future" is strictly larger `t`, "plus" is
//! strictly larger `s`. The light part of the complement-of-chronology
//! relations is the light boundary of the plus space cone (null
//! displacements with `s > 0`), which makes `≪ᶜ` a partial order and the
//! exact swap dual of the causal order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{classify, q_form, AffineMap, CausalClass, Point};
use crate::regions::{ConeKind, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationId {
    Chronology,
    Horismos,
    Chorology,
    IrrHorismos,
    ReflChronology,
    Causal,
    IrrCausal,
    ReflChorology,
    ComplChronology,
    IrrComplChronology,
}

impl RelationId {
    pub const ALL: [RelationId; 10] = [
        RelationId::Chronology,
        RelationId::Horismos,
        RelationId::Chorology,
        RelationId::IrrHorismos,
        RelationId::ReflChronology,
        RelationId::Causal,
        RelationId::IrrCausal,
        RelationId::ReflChorology,
        RelationId::ComplChronology,
        RelationId::IrrComplChronology,
    ];

    /// Index 1..=10 in the standard listing.
    pub fn index(self) -> u8 {
        RelationId::ALL.iter().position(|r| *r == self).unwrap() as u8 + 1
    }

    pub fn from_index(index: u8) -> Option<RelationId> {
        (1..=10)
            .contains(&index)
            .then(|| RelationId::ALL[index as usize - 1])
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationId::Chronology => "chronology",
            RelationId::Horismos => "horismos",
            RelationId::Chorology => "chorology",
            RelationId::IrrHorismos => "irr-horismos",
            RelationId::ReflChronology => "refl-chronology",
            RelationId::Causal => "causal",
            RelationId::IrrCausal => "irr-causal",
            RelationId::ReflChorology => "refl-chorology",
            RelationId::ComplChronology => "compl-chronology",
            RelationId::IrrComplChronology => "irr-compl-chronology",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelationId::Chronology => "≪",
            RelationId::Horismos => "→",
            RelationId::Chorology => "<",
            RelationId::IrrHorismos => "→^irr",
            RelationId::ReflChronology => "≪^=",
            RelationId::Causal => "≺",
            RelationId::IrrCausal => "≪^(→irr)",
            RelationId::ReflChorology => "≤",
            RelationId::ComplChronology => "≪^c",
            RelationId::IrrComplChronology => "<^(→irr)",
        }
    }

    pub fn reflexive(self) -> bool {
        matches!(
            self,
            RelationId::Horismos
                | RelationId::ReflChronology
                | RelationId::Causal
                | RelationId::ReflChorology
                | RelationId::ComplChronology
        )
    }

    /// Cone atoms whose union (apex included iff reflexive) is the future set
    /// `{y : x R y}`. Past sets use the opposite orientations.
    pub fn future_cones(self) -> &'static [(ConeKind, Orientation)] {
        use ConeKind::*;
        use Orientation::*;
        match self {
            RelationId::Chronology | RelationId::ReflChronology => &[(Time, Future)],
            RelationId::Horismos | RelationId::IrrHorismos => &[(Light, Future)],
            RelationId::Chorology | RelationId::ReflChorology => &[(Space, Plus)],
            RelationId::Causal | RelationId::IrrCausal => &[(Causal, Future)],
            RelationId::ComplChronology | RelationId::IrrComplChronology => {
                &[(Space, Plus), (Light, Plus)]
            }
        }
    }

    /// Predicate on the displacement `d = y − x ≠ 0`.
    fn holds_off_diagonal(self, class: CausalClass, d: &Point) -> bool {
        use CausalClass::*;
        match self {
            RelationId::Chronology | RelationId::ReflChronology => class == TimelikeFuture,
            RelationId::Horismos | RelationId::IrrHorismos => class == LightlikeFuture,
            RelationId::Chorology | RelationId::ReflChorology => class == SpacelikePlus,
            RelationId::Causal | RelationId::IrrCausal => {
                matches!(class, TimelikeFuture | LightlikeFuture)
            }
            RelationId::ComplChronology | RelationId::IrrComplChronology => {
                class == SpacelikePlus || (class.is_lightlike() && d.s.is_positive())
            }
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    /// Accepts the kebab-case name or the index 1..=10.
    fn from_str(text: &str) -> Result<Self> {
        if let Ok(index) = text.parse::<u8>() {
            return RelationId::from_index(index)
                .ok_or_else(|| Error::Parse(format!("relation index out of range: {index}")));
        }
        RelationId::ALL
            .into_iter()
            .find(|r| r.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown relation: {text:?}")))
    }
}

impl Serialize for RelationId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for RelationId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether `x R y`.
pub fn relates(r: RelationId, x: &Point, y: &Point) -> bool {
    match classify(x, y) {
        CausalClass::Equal => r.reflexive(),
        class => r.holds_off_diagonal(class, &(y - x)),
    }
}

/// The relation conjugate to `r` under the time/space swap.
///
/// Exact for eight relations. Horismos and its irreflexive form are their
/// own partners but the conjugation identity only holds off the
/// anti-diagonal null line: swap sends the future null ray along `(1, −1)`
/// to the past null ray along `(−1, 1)`.
pub fn dual_relation(r: RelationId) -> RelationId {
    use RelationId::*;
    match r {
        Chronology => Chorology,
        Chorology => Chronology,
        ReflChronology => ReflChorology,
        ReflChorology => ReflChronology,
        Causal => ComplChronology,
        ComplChronology => Causal,
        IrrCausal => IrrComplChronology,
        IrrComplChronology => IrrCausal,
        Horismos => Horismos,
        IrrHorismos => IrrHorismos,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `x R y` differs from `f(x) R f(y)`.
    Forward,
    /// `x R y` differs from `f⁻¹(x) R f⁻¹(y)`.
    Inverse,
    /// The image of a null ray is not null; `y − x` is the image direction.
    NullImage,
    /// Parallel rays with non-parallel images; `x`, `y` are the image directions.
    Parallel,
    /// Equal intervals on parallel rays with unequal images; `x`, `y` are the image intervals.
    EqualIntervals,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub x: Point,
    pub y: Point,
    pub check: CheckKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationReport {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub samples_checked: usize,
}

impl PreservationReport {
    fn pass(samples_checked: usize) -> Self {
        PreservationReport {
            holds: true,
            counterexample: None,
            samples_checked,
        }
    }

    fn fail(counterexample: Counterexample, samples_checked: usize) -> Self {
        PreservationReport {
            holds: false,
            counterexample: Some(counterexample),
            samples_checked,
        }
    }
}

/// Checks on the sample that `m` and its inverse both preserve `r`.
pub fn preserves(
    m: &AffineMap,
    r: RelationId,
    sample: &[(Point, Point)],
) -> Result<PreservationReport> {
    let inverse = m.inverse()?;
    for (checked, (x, y)) in sample.iter().enumerate() {
        let before = relates(r, x, y);
        if before != relates(r, &m.apply(x), &m.apply(y)) {
            let cx = Counterexample {
                x: x.clone(),
                y: y.clone(),
                check: CheckKind::Forward,
            };
            return Ok(PreservationReport::fail(cx, checked + 1));
        }
        if before != relates(r, &inverse.apply(x), &inverse.apply(y)) {
            let cx = Counterexample {
                x: x.clone(),
                y: y.clone(),
                check: CheckKind::Inverse,
            };
            return Ok(PreservationReport::fail(cx, checked + 1));
        }
    }
    Ok(PreservationReport::pass(sample.len()))
}

/// Polarization: a linear map preserves `Q` iff it does so on `e0`, `e1`
/// and `e0 + e1`.
pub fn preserves_q(m: &AffineMap) -> bool {
    [Point::ints(1, 0), Point::ints(0, 1), Point::ints(1, 1)]
        .iter()
        .all(|e| q_form(&m.apply_linear(e)) == q_form(e))
}

pub fn is_orthochronous(m: &AffineMap) -> bool {
    preserves_q(m) && m.apply_linear(&Point::ints(1, 0)).t.is_positive()
}

pub fn is_orthochorous(m: &AffineMap) -> bool {
    preserves_q(m) && m.apply_linear(&Point::ints(0, 1)).s.is_positive()
}

/// A null line through `base` with direction proportional to `(1, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullRay {
    pub base: Point,
    pub direction: Point,
}

impl NullRay {
    pub fn new(base: Point, direction: Point) -> Result<Self> {
        if direction.is_origin() || !q_form(&direction).is_zero() {
            return Err(Error::Precondition(format!(
                "ray direction {direction} is not a nonzero null vector"
            )));
        }
        Ok(NullRay { base, direction })
    }
}

fn cross(u: &Point, v: &Point) -> crate::geometry::Scalar {
    &u.t * &v.s - &u.s * &v.t
}

/// Checks that `m` sends null lines to null lines, parallel rays to parallel
/// rays, and equal intervals on parallel rays to equal intervals.
pub fn check_light_ray_geometry(m: &AffineMap, rays: &[NullRay]) -> Result<PreservationReport> {
    if !m.is_invertible() {
        return Err(Error::SingularMap);
    }
    let mut checked = 0;
    let images: Vec<Point> = rays
        .iter()
        .map(|ray| m.apply_linear(&ray.direction))
        .collect();
    for (ray, image) in rays.iter().zip(&images) {
        checked += 1;
        if !q_form(image).is_zero() {
            let x = m.apply(&ray.base);
            let y = &x + image;
            let cx = Counterexample {
                x,
                y,
                check: CheckKind::NullImage,
            };
            return Ok(PreservationReport::fail(cx, checked));
        }
    }
    for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            if !cross(&rays[i].direction, &rays[j].direction).is_zero() {
                continue;
            }
            checked += 1;
            if !cross(&images[i], &images[j]).is_zero() {
                let cx = Counterexample {
                    x: images[i].clone(),
                    y: images[j].clone(),
                    check: CheckKind::Parallel,
                };
                return Ok(PreservationReport::fail(cx, checked));
            }
            // the same displacement laid off on both rays
            let step = &rays[i].direction;
            let on_i = &m.apply(&(&rays[i].base + step)) - &m.apply(&rays[i].base);
            let on_j = &m.apply(&(&rays[j].base + step)) - &m.apply(&rays[j].base);
            if on_i != on_j {
                let cx = Counterexample {
                    x: on_i,
                    y: on_j,
                    check: CheckKind::EqualIntervals,
                };
                return Ok(PreservationReport::fail(cx, checked));
            }
        }
    }
    Ok(PreservationReport::pass(checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{boost_from_parameter, Scalar};
    use crate::sampling::{grid, random_pairs};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn swap_pair(x: &Point, y: &Point) -> (Point, Point) {
        (x.swap(), y.swap())
    }

    #[test]
    fn relates_examples() {
        let o = Point::origin();
        assert!(relates(RelationId::Chronology, &o, &Point::ints(1, 0)));
        let x = Point::new(Scalar::new(3, 7), Scalar::int(-2));
        assert!(!relates(RelationId::Chronology, &x, &x));
        assert!(relates(RelationId::Horismos, &x, &x));
        assert!(relates(RelationId::ComplChronology, &o, &Point::ints(1, 1)));
        assert!(!relates(
            RelationId::ComplChronology,
            &o,
            &Point::ints(1, 0)
        ));
    }

    /// The complement-of-chronology oracle, written directly from signs of
    /// the displacement rather than through `classify`.
    #[test]
    fn complement_of_chronology_matches_sign_oracle() {
        let pts = grid(&Point::origin(), 3, &Scalar::new(1, 2));
        for x in &pts {
            for y in &pts {
                let d = y - x;
                let q = q_form(&d);
                let oracle = d.is_origin() || (!q.is_positive() && d.s.is_positive());
                assert_eq!(
                    relates(RelationId::ComplChronology, x, y),
                    oracle,
                    "{x} {y}"
                );
            }
        }
    }

    #[test]
    fn reflexivity_table() {
        let expected = [
            false, true, false, false, true, true, false, true, true, false,
        ];
        let x = Point::new(Scalar::new(-5, 3), Scalar::new(1, 9));
        for (r, want) in RelationId::ALL.iter().zip(expected) {
            assert_eq!(r.reflexive(), want, "{r}");
            assert_eq!(relates(*r, &x, &x), want, "{r}");
        }
    }

    #[test]
    fn names_and_indices_round_trip() {
        for r in RelationId::ALL {
            assert_eq!(r.name().parse::<RelationId>().unwrap(), r);
            assert_eq!(r.index().to_string().parse::<RelationId>().unwrap(), r);
        }
        assert!("11".parse::<RelationId>().is_err());
        assert!("time".parse::<RelationId>().is_err());
    }

    #[test]
    fn pair_exclusivity() {
        use RelationId::*;
        let pts = grid(&Point::origin(), 2, &Scalar::new(1, 2));
        for x in &pts {
            for y in pts.iter().filter(|y| *y != x) {
                let hits = [Chronology, IrrHorismos, Chorology]
                    .iter()
                    .flat_map(|r| [relates(*r, x, y), relates(*r, y, x)])
                    .filter(|b| *b)
                    .count();
                assert_eq!(hits, 1, "{x} {y}");
            }
        }
    }

    #[test]
    fn pointwise_decompositions() {
        use RelationId::*;
        let pts = grid(&Point::ints(1, -1), 2, &Scalar::new(1, 2));
        for x in &pts {
            for y in &pts {
                let rel = |r| relates(r, x, y);
                let diag = x == y;
                let plus_null = q_form(&(y - x)).is_zero() && y.s > x.s;
                assert_eq!(rel(Causal), rel(Chronology) || rel(Horismos));
                assert_eq!(rel(ComplChronology), rel(ReflChorology) || plus_null);
                assert_eq!(rel(IrrCausal), rel(Causal) && !diag);
                assert_eq!(rel(IrrComplChronology), rel(ComplChronology) && !diag);
                assert_eq!(rel(ReflChronology), rel(Chronology) || diag);
                assert_eq!(rel(ReflChorology), rel(Chorology) || diag);
                assert_eq!(rel(IrrHorismos), rel(Horismos) && !diag);
            }
        }
    }

    #[test]
    fn dual_relation_examples() {
        assert_eq!(dual_relation(RelationId::Chronology), RelationId::Chorology);
        assert_eq!(dual_relation(RelationId::Horismos), RelationId::Horismos);
        for r in RelationId::ALL {
            assert_eq!(dual_relation(dual_relation(r)), r);
        }
    }

    #[test]
    fn duality_conjugation_on_grid() {
        let pts = grid(&Point::origin(), 2, &Scalar::new(1, 2));
        for r in RelationId::ALL {
            let exact = !matches!(r, RelationId::Horismos | RelationId::IrrHorismos);
            for x in &pts {
                for y in &pts {
                    let (sx, sy) = swap_pair(x, y);
                    let agrees = relates(dual_relation(r), &sx, &sy) == relates(r, x, y);
                    let d = y - x;
                    let anti_diagonal_null = !d.is_origin() && d.t == -&d.s;
                    if exact || !anti_diagonal_null {
                        assert!(agrees, "{r} {x} {y}");
                    } else {
                        assert!(!agrees, "{r} {x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn preserves_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sample = random_pairs(&mut rng, 1000);
        let boost = boost_from_parameter(&Scalar::int(2)).unwrap();
        assert!(
            preserves(&boost, RelationId::Chronology, &sample)
                .unwrap()
                .holds
        );

        let mut with_pair = vec![(Point::origin(), Point::ints(1, 0))];
        with_pair.extend(sample.iter().cloned());
        let report = preserves(
            &AffineMap::time_reflection(),
            RelationId::Chronology,
            &with_pair,
        )
        .unwrap();
        assert!(!report.holds);
        let cx = report.counterexample.unwrap();
        assert_eq!(
            (cx.x.clone(), cx.y.clone()),
            (Point::origin(), Point::ints(1, 0))
        );
        assert_eq!(cx.check, CheckKind::Forward);
        // replay
        let m = AffineMap::time_reflection();
        assert_ne!(
            relates(RelationId::Chronology, &cx.x, &cx.y),
            relates(RelationId::Chronology, &m.apply(&cx.x), &m.apply(&cx.y))
        );

        assert!(
            preserves(
                &AffineMap::time_reflection(),
                RelationId::Chorology,
                &sample
            )
            .unwrap()
            .holds
        );
    }

    #[test]
    fn preserves_rejects_singular_map() {
        let singular = AffineMap::dilatation(Scalar::zero());
        assert_eq!(
            preserves(&singular, RelationId::Chronology, &[]),
            Err(Error::SingularMap)
        );
    }

    #[test]
    fn orthochronous_and_orthochorous() {
        let boost = boost_from_parameter(&Scalar::int(2)).unwrap();
        assert!(is_orthochronous(&boost) && is_orthochorous(&boost));
        assert!(!is_orthochronous(&AffineMap::time_reflection()));
        assert!(is_orthochorous(&AffineMap::time_reflection()));
        assert!(is_orthochronous(&AffineMap::space_reflection()));
        assert!(!is_orthochorous(&AffineMap::space_reflection()));
        // positive dilatation keeps orientation but not Q
        assert!(!is_orthochronous(&AffineMap::dilatation(Scalar::int(2))));
    }

    #[test]
    fn light_ray_examples() {
        let through_origin = NullRay::new(Point::origin(), Point::ints(1, 1)).unwrap();
        let boost = boost_from_parameter(&Scalar::int(2)).unwrap();
        assert_eq!(
            boost.apply_linear(&through_origin.direction),
            Point::ints(2, 2)
        );
        assert!(
            check_light_ray_geometry(&boost, std::slice::from_ref(&through_origin))
                .unwrap()
                .holds
        );

        let rotation = AffineMap::linear(
            Scalar::new(3, 5),
            Scalar::new(-4, 5),
            Scalar::new(4, 5),
            Scalar::new(3, 5),
        );
        let report =
            check_light_ray_geometry(&rotation, std::slice::from_ref(&through_origin)).unwrap();
        assert!(!report.holds);
        let cx = report.counterexample.unwrap();
        assert_eq!(cx.check, CheckKind::NullImage);
        let image = &cx.y - &cx.x;
        assert_eq!(image, Point::new(Scalar::new(-1, 5), Scalar::new(7, 5)));
        assert_eq!(q_form(&image), Scalar::new(-48, 25));

        let rays = [
            through_origin,
            NullRay::new(Point::ints(0, 3), Point::ints(2, 2)).unwrap(),
            NullRay::new(Point::ints(1, 0), Point::ints(1, -1)).unwrap(),
        ];
        assert!(
            check_light_ray_geometry(&AffineMap::identity(), &rays)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn null_ray_rejects_non_null_direction() {
        assert!(NullRay::new(Point::origin(), Point::ints(1, 0)).is_err());
        assert!(NullRay::new(Point::origin(), Point::origin()).is_err());
    }

    /// Lemma-1 style check on concrete families: whenever a map preserves
    /// chronology on the sample it also preserves horismos.
    #[test]
    fn chronology_preservers_preserve_horismos() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sample = random_pairs(&mut rng, 300);
        sample.push((Point::origin(), Point::ints(2, 2)));
        sample.push((Point::origin(), Point::ints(3, -3)));
        let maps = [
            boost_from_parameter(&Scalar::new(5, 2)).unwrap(),
            AffineMap::translation(Point::new(Scalar::new(1, 3), Scalar::int(-4))),
            AffineMap::dilatation(Scalar::new(7, 3)),
            boost_from_parameter(&Scalar::int(3))
                .unwrap()
                .compose(&AffineMap::dilatation(Scalar::new(1, 2)))
                .compose(&AffineMap::translation(Point::ints(2, 5))),
            AffineMap::time_reflection(),
            AffineMap::space_reflection(),
        ];
        for m in &maps {
            if preserves(m, RelationId::Chronology, &sample).unwrap().holds {
                assert!(preserves(m, RelationId::Horismos, &sample).unwrap().holds);
            }
        }
    }

    /// Contrast for chorology: the time reflection preserves `<` but not `→`.
    #[test]
    fn chorology_preserver_need_not_preserve_horismos() {
        let sample = vec![
            (Point::origin(), Point::ints(1, 1)),
            (Point::origin(), Point::ints(0, 1)),
        ];
        let m = AffineMap::time_reflection();
        assert!(preserves(&m, RelationId::Chorology, &sample).unwrap().holds);
        assert!(!preserves(&m, RelationId::Horismos, &sample).unwrap().holds);
    }
}
