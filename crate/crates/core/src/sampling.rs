//! Deterministic rational sample generators shared by checks and tests.

use rand::Rng;

use crate::geometry::{Point, Scalar};
use crate::regions::{BallAtom, ConeKind, Orientation, Region};

/// A random rational `n/d` with `|n| ≤ max_numer` and `1 ≤ d ≤ max_denom`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, max_numer: i64, max_denom: i64) -> Scalar {
    let n = rng.gen_range(-max_numer..=max_numer);
    let d = rng.gen_range(1..=max_denom);
    Scalar::new(n, d)
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> Point {
    Point::new(random_scalar(rng, 60, 12), random_scalar(rng, 60, 12))
}

/// Random pairs, with a bias toward null, timelike and spacelike
/// displacements so every causal class shows up.
pub fn random_pairs<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<(Point, Point)> {
    (0..count)
        .map(|_| {
            let x = random_point(rng);
            let y = match rng.gen_range(0..4) {
                0 => {
                    let a = random_scalar(rng, 40, 9);
                    let sign = if rng.gen_bool(0.5) { a.clone() } else { -&a };
                    &x + &Point::new(a, sign)
                }
                1 => x.clone(),
                _ => random_point(rng),
            };
            (x, y)
        })
        .collect()
}

/// The `(2n+1)²` lattice `center + spacing·(i, j)` for `i, j ∈ −n..=n`,
/// row-major with `i` (time) outer.
pub fn grid(center: &Point, half: i64, spacing: &Scalar) -> Vec<Point> {
    let mut out = Vec::with_capacity(((2 * half + 1) * (2 * half + 1)) as usize);
    for i in -half..=half {
        for j in -half..=half {
            let offset = Point::new(Scalar::int(i) * spacing, Scalar::int(j) * spacing);
            out.push(center + &offset);
        }
    }
    out
}

fn random_atom<R: Rng + ?Sized>(rng: &mut R) -> Region {
    let apex = Point::new(random_scalar(rng, 6, 2), random_scalar(rng, 6, 2));
    match rng.gen_range(0..10) {
        0..=5 => {
            let kind = [
                ConeKind::Time,
                ConeKind::Light,
                ConeKind::Space,
                ConeKind::Causal,
            ][rng.gen_range(0..4)];
            let orientation = [
                Orientation::Future,
                Orientation::Past,
                Orientation::Plus,
                Orientation::Minus,
                Orientation::Both,
            ][rng.gen_range(0..5)];
            Region::cone(&apex, kind, orientation, rng.gen_bool(0.5))
        }
        6 | 7 => {
            let radius_sq = Scalar::new(rng.gen_range(1..=50), rng.gen_range(1..=4));
            Region::ball(BallAtom::new(apex, radius_sq).expect("positive radius"))
        }
        8 => Region::singleton(&apex),
        _ => {
            if rng.gen_bool(0.5) {
                Region::All
            } else {
                Region::Empty
            }
        }
    }
}

/// A random expression tree of depth at most `depth`.
pub fn random_region<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Region {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_atom(rng);
    }
    match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(1..=3);
            Region::union((0..n).map(|_| random_region(rng, depth - 1)).collect())
        }
        1 => {
            let n = rng.gen_range(1..=3);
            Region::intersection((0..n).map(|_| random_region(rng, depth - 1)).collect())
        }
        2 => Region::complement(random_region(rng, depth - 1)),
        _ => Region::difference(random_region(rng, depth - 1), random_region(rng, depth - 1)),
    }
}
