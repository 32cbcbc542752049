//! Exact rational geometry of the Minkowski plane.
//!
//! Events are pairs `(t, s)` of exact rationals; `t` is the time coordinate
//! and `s` the space coordinate. The quadratic form is `Q(v) = t² − s²`.
//! Every sign test in this crate reduces to comparing rationals, so no
//! predicate ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(value: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn square(&self) -> Self {
        Scalar(&self.0 * &self.0)
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The `"p/q"` form used in serialized output, always with a denominator.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Scalar {
    fn from(value: BigRational) -> Self {
        Scalar(value)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::int(value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"a/b"` or the integer shorthand `"a"`. Decimal points are rejected.
    fn from_str(token: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational literal: {token:?}"));
        let token = token.trim();
        let (numer, denom) = match token.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (token, "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| bad())?;
        let denom: BigInt = denom.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {token:?}")));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

struct ScalarVisitor;

impl serde::de::Visitor<'_> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational literal \"a/b\" or an integer")
    }

    fn visit_str<E: serde::de::Error>(self, text: &str) -> std::result::Result<Scalar, E> {
        text.parse().map_err(E::custom)
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
        Ok(Scalar::int(v))
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
        Ok(Scalar(BigRational::from_integer(BigInt::from(v))))
    }
}

/// Reads `"a/b"`, `"a"` or a JSON integer; floats are rejected.
impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// An event `(t, s)` of the Minkowski plane. Also used for displacement vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub t: Scalar,
    pub s: Scalar,
}

impl Point {
    pub fn new(t: Scalar, s: Scalar) -> Self {
        Point { t, s }
    }

    /// Integer-coordinate shorthand.
    pub fn ints(t: i64, s: i64) -> Self {
        Point::new(Scalar::int(t), Scalar::int(s))
    }

    pub fn origin() -> Self {
        Point::default()
    }

    pub fn is_origin(&self) -> bool {
        self.t.is_zero() && self.s.is_zero()
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point::new(&self.t * k, &self.s * k)
    }

    /// Exchanges the time and space coordinates.
    pub fn swap(&self) -> Point {
        Point::new(self.s.clone(), self.t.clone())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.s)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Parses `"t,s"`, each coordinate a rational literal.
    fn from_str(text: &str) -> Result<Self> {
        let (t, s) = text
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"t,s\", got {text:?}")))?;
        Ok(Point::new(t.parse()?, s.parse()?))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.t, &self.s).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (t, s) = <(Scalar, Scalar)>::deserialize(deserializer)?;
        Ok(Point::new(t, s))
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.t + &rhs.t, &self.s + &rhs.s)
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.t - &rhs.t, &self.s - &rhs.s)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.t, -&self.s)
    }
}

/// Causal position of `y` relative to `x`. The seven classes partition all
/// ordered pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Equal,
    TimelikeFuture,
    TimelikePast,
    LightlikeFuture,
    LightlikePast,
    SpacelikePlus,
    SpacelikeMinus,
}

impl CausalClass {
    pub const ALL: [CausalClass; 7] = [
        CausalClass::Equal,
        CausalClass::TimelikeFuture,
        CausalClass::TimelikePast,
        CausalClass::LightlikeFuture,
        CausalClass::LightlikePast,
        CausalClass::SpacelikePlus,
        CausalClass::SpacelikeMinus,
    ];

    /// The class of `x` relative to `y` given the class of `y` relative to `x`.
    pub fn reversed(self) -> CausalClass {
        use CausalClass::*;
        match self {
            Equal => Equal,
            TimelikeFuture => TimelikePast,
            TimelikePast => TimelikeFuture,
            LightlikeFuture => LightlikePast,
            LightlikePast => LightlikeFuture,
            SpacelikePlus => SpacelikeMinus,
            SpacelikeMinus => SpacelikePlus,
        }
    }

    pub fn is_timelike(self) -> bool {
        matches!(
            self,
            CausalClass::TimelikeFuture | CausalClass::TimelikePast
        )
    }

    pub fn is_lightlike(self) -> bool {
        matches!(
            self,
            CausalClass::LightlikeFuture | CausalClass::LightlikePast
        )
    }

    pub fn is_spacelike(self) -> bool {
        matches!(
            self,
            CausalClass::SpacelikePlus | CausalClass::SpacelikeMinus
        )
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `Q(v) = t² − s²`.
pub fn q_form(v: &Point) -> Scalar {
    v.t.square() - v.s.square()
}

/// Squared Euclidean norm `t² + s²`. Ball radii are compared squared.
pub fn euclid_sq(v: &Point) -> Scalar {
    v.t.square() + v.s.square()
}

/// Classifies `y` relative to `x`.
pub fn classify(x: &Point, y: &Point) -> CausalClass {
    let d = y - x;
    if d.is_origin() {
        return CausalClass::Equal;
    }
    // d ≠ 0 with Q ≥ 0 forces t ≠ 0; Q < 0 forces s ≠ 0.
    match q_form(&d).sign() {
        Ordering::Greater if d.t.is_positive() => CausalClass::TimelikeFuture,
        Ordering::Greater => CausalClass::TimelikePast,
        Ordering::Equal if d.t.is_positive() => CausalClass::LightlikeFuture,
        Ordering::Equal => CausalClass::LightlikePast,
        Ordering::Less if d.s.is_positive() => CausalClass::SpacelikePlus,
        Ordering::Less => CausalClass::SpacelikeMinus,
    }
}

/// An exact affine map `p ↦ linear · p + translation`.
///
/// `linear` is row-major: `linear[0]` produces the time coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineMap {
    pub linear: [[Scalar; 2]; 2],
    pub translation: Point,
}

impl AffineMap {
    pub fn new(linear: [[Scalar; 2]; 2], translation: Point) -> Self {
        AffineMap {
            linear,
            translation,
        }
    }

    pub fn linear(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        AffineMap::new([[a, b], [c, d]], Point::origin())
    }

    pub fn identity() -> Self {
        AffineMap::linear(Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    pub fn translation(by: Point) -> Self {
        AffineMap {
            translation: by,
            ..AffineMap::identity()
        }
    }

    /// Uniform scaling by `k`; `k > 0` for a causal automorphism.
    pub fn dilatation(k: Scalar) -> Self {
        AffineMap::linear(k.clone(), Scalar::zero(), Scalar::zero(), k)
    }

    /// `diag(−1, 1)`: reverses time, keeps space.
    pub fn time_reflection() -> Self {
        AffineMap::linear(
            -Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::one(),
        )
    }

    /// `diag(1, −1)`: keeps time, reverses space.
    pub fn space_reflection() -> Self {
        AffineMap::linear(
            Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
            -Scalar::one(),
        )
    }

    /// The orthochronous boost with rational parameter `k > 0`:
    /// `[[c, h], [h, c]]` with `c = (k + 1/k)/2`, `h = (k − 1/k)/2`.
    pub fn boost(k: &Scalar) -> Result<Self> {
        boost_from_parameter(k)
    }

    pub fn det(&self) -> Scalar {
        let [[a, b], [c, d]] = &self.linear;
        a * d - b * c
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Applies only the linear part (maps displacement vectors).
    pub fn apply_linear(&self, v: &Point) -> Point {
        let [[a, b], [c, d]] = &self.linear;
        Point::new(a * &v.t + b * &v.s, c * &v.t + d * &v.s)
    }

    pub fn apply(&self, p: &Point) -> Point {
        &self.apply_linear(p) + &self.translation
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let [[a, b], [c, d]] = &self.linear;
        let [[e, f], [g, h]] = &inner.linear;
        let linear = [
            [a * e + b * g, a * f + b * h],
            [c * e + d * g, c * f + d * h],
        ];
        AffineMap::new(linear, self.apply(&inner.translation))
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let det = self.det();
        let inv_det = det.recip().ok_or(Error::SingularMap)?;
        let [[a, b], [c, d]] = &self.linear;
        let linear = [[d * &inv_det, -b * &inv_det], [-c * &inv_det, a * &inv_det]];
        let partial = AffineMap::new(linear, Point::origin());
        let translation = -&partial.apply_linear(&self.translation);
        Ok(AffineMap::new(partial.linear, translation))
    }
}

/// Applies `m` to `p`.
pub fn apply_map(m: &AffineMap, p: &Point) -> Point {
    m.apply(p)
}

/// Rational parametrization of the orthochronous boosts. `c² − h² = 1` holds
/// exactly for every `k > 0`, so the result leaves `Q` invariant.
pub fn boost_from_parameter(k: &Scalar) -> Result<AffineMap> {
    if !k.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "boost parameter must be positive, got {k}"
        )));
    }
    let inv = k.recip().expect("positive");
    let two = Scalar::int(2);
    let c = (k + &inv) / &two;
    let h = (k - &inv) / &two;
    Ok(AffineMap::linear(c.clone(), h.clone(), h, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn pt(t: Scalar, s: Scalar) -> Point {
        Point::new(t, s)
    }

    #[test]
    fn q_form_examples() {
        assert_eq!(q_form(&Point::ints(3, 1)), Scalar::int(8));
        assert_eq!(q_form(&Point::ints(1, 1)), Scalar::zero());
        assert_eq!(q_form(&Point::ints(0, 1)), Scalar::int(-1));
    }

    #[test]
    fn euclid_sq_examples() {
        assert_eq!(euclid_sq(&Point::ints(3, 4)), Scalar::int(25));
        assert_eq!(euclid_sq(&Point::origin()), Scalar::zero());
        assert_eq!(euclid_sq(&pt(r(1, 2), r(1, 2))), r(1, 2));
    }

    #[test]
    fn classify_examples() {
        let o = Point::origin();
        assert_eq!(
            classify(&o, &Point::ints(1, 0)),
            CausalClass::TimelikeFuture
        );
        assert_eq!(
            classify(&o, &Point::ints(-1, 1)),
            CausalClass::LightlikePast
        );
        assert_eq!(
            classify(&o, &Point::ints(0, -2)),
            CausalClass::SpacelikeMinus
        );
        assert_eq!(classify(&o, &o), CausalClass::Equal);
    }

    #[test]
    fn apply_map_examples() {
        let p = Point::ints(7, -2);
        assert_eq!(apply_map(&AffineMap::identity(), &p), p);
        let boost = boost_from_parameter(&Scalar::int(2)).unwrap();
        assert_eq!(apply_map(&boost, &Point::ints(1, 0)), pt(r(5, 4), r(3, 4)));
        let shift = AffineMap::translation(Point::ints(1, 1));
        assert_eq!(apply_map(&shift, &Point::origin()), Point::ints(1, 1));
    }

    #[test]
    fn boost_examples() {
        assert_eq!(
            boost_from_parameter(&Scalar::one()).unwrap(),
            AffineMap::identity()
        );

        let b2 = boost_from_parameter(&Scalar::int(2)).unwrap();
        assert_eq!(b2.linear[0][0], r(5, 4));
        assert_eq!(b2.linear[0][1], r(3, 4));
        assert_eq!(b2.det(), Scalar::one());

        let b3 = boost_from_parameter(&Scalar::int(3)).unwrap();
        assert_eq!(b3.linear[0][0], r(5, 3));
        assert_eq!(b3.linear[0][1], r(4, 3));
        assert!(q_form(&b3.apply(&Point::ints(1, 1))).is_zero());
    }

    #[test]
    fn boost_rejects_nonpositive_parameter() {
        assert!(matches!(
            boost_from_parameter(&Scalar::zero()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(boost_from_parameter(&Scalar::int(-3)).is_err());
    }

    #[test]
    fn singular_map_has_no_inverse() {
        let m = AffineMap::linear(Scalar::one(), Scalar::one(), Scalar::one(), Scalar::one());
        assert!(matches!(m.inverse(), Err(Error::SingularMap)));
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!("3/6".parse::<Scalar>().unwrap(), r(1, 2));
        assert_eq!("-4".parse::<Scalar>().unwrap(), Scalar::int(-4));
        assert!("1.5".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert_eq!(r(2, -4).to_fraction_string(), "-1/2");
        assert_eq!(Scalar::int(3).to_fraction_string(), "3/1");
        assert_eq!(
            "1/2,-3".parse::<Point>().unwrap(),
            pt(r(1, 2), Scalar::int(-3))
        );
    }

    /// Exhaustive check of the swap duality over a sign grid: swap carries
    /// timelike-future to spacelike-plus and past to minus; null classes go
    /// to the null class whose time sign is the old space sign.
    #[test]
    fn swap_duality_on_sign_grid() {
        let coords: Vec<Scalar> = (-3..=3).map(Scalar::int).collect();
        let o = Point::origin();
        for t in &coords {
            for s in &coords {
                let d = pt(t.clone(), s.clone());
                let before = classify(&o, &d);
                let after = classify(&o, &d.swap());
                assert_eq!(q_form(&d.swap()), -q_form(&d));
                let expected = match before {
                    CausalClass::Equal => CausalClass::Equal,
                    CausalClass::TimelikeFuture => CausalClass::SpacelikePlus,
                    CausalClass::TimelikePast => CausalClass::SpacelikeMinus,
                    CausalClass::SpacelikePlus => CausalClass::TimelikeFuture,
                    CausalClass::SpacelikeMinus => CausalClass::TimelikePast,
                    CausalClass::LightlikeFuture | CausalClass::LightlikePast => {
                        if d.s.is_positive() {
                            CausalClass::LightlikeFuture
                        } else {
                            CausalClass::LightlikePast
                        }
                    }
                };
                assert_eq!(after, expected, "d = {d}");
            }
        }
    }

    pub(crate) fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Scalar::new(n, d))
    }

    fn small_point() -> impl Strategy<Value = Point> {
        (small_scalar(), small_scalar()).prop_map(|(t, s)| Point::new(t, s))
    }

    fn positive_scalar() -> impl Strategy<Value = Scalar> {
        (1i64..=40, 1i64..=12).prop_map(|(n, d)| Scalar::new(n, d))
    }

    proptest! {
        #[test]
        fn q_plus_twice_space_square_is_euclid(v in small_point()) {
            prop_assert_eq!(q_form(&v) + Scalar::int(2) * v.s.square(), euclid_sq(&v));
        }

        #[test]
        fn classify_reverses_under_argument_swap(x in small_point(), y in small_point()) {
            prop_assert_eq!(classify(&y, &x), classify(&x, &y).reversed());
        }

        #[test]
        fn boost_preserves_q(k in positive_scalar(), v in small_point()) {
            let boost = boost_from_parameter(&k).unwrap();
            prop_assert_eq!(q_form(&boost.apply(&v)), q_form(&v));
        }

        #[test]
        fn boost_composition_multiplies_parameters(k1 in positive_scalar(), k2 in positive_scalar()) {
            let lhs = boost_from_parameter(&k1).unwrap().compose(&boost_from_parameter(&k2).unwrap());
            let rhs = boost_from_parameter(&(&k1 * &k2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_undoes_map(
            a in small_scalar(), b in small_scalar(), c in small_scalar(), d in small_scalar(),
            shift in small_point(), p in small_point(),
        ) {
            let m = AffineMap::new([[a, b], [c, d]], shift);
            prop_assume!(m.is_invertible());
            let inv = m.inverse().unwrap();
            prop_assert_eq!(inv.apply(&m.apply(&p)), p.clone());
            prop_assert_eq!(m.compose(&inv), AffineMap::identity());
        }
    }

    #[test]
    fn json_round_trip() {
        let p = Point::new(Scalar::new(-3, 4), Scalar::int(2));
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"["-3/4","2/1"]"#);
        assert_eq!(serde_json::from_str::<Point>(&text).unwrap(), p);
        assert_eq!(
            serde_json::from_str::<Point>(r#"[-3, "2"]"#).unwrap(),
            Point::ints(-3, 2)
        );
        assert!(serde_json::from_str::<Scalar>("0.5").is_err());
        assert!(serde_json::from_str::<Scalar>(r#""1/0""#).is_err());
    }
}
