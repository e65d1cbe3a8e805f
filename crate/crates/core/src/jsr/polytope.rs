use serde::Serialize;

use super::hull::{convex_hull_3d, hull_tol, Facet};
use super::{MatrixFamily, ProductWord};
use crate::error::{Error, Result};
use crate::format::round_sig;
use crate::linalg::{eigenvalues, eigenvector, spectral_radius, Vec3};
use crate::scalar::{eps, lit, real_of, Real};

/// A centrally symmetric polytope stored as one representative per
/// antipodal vertex pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope3<T> {
    half: Vec<Vec3<T>>,
    facets: Vec<Facet<T>>,
}

impl<T: Real> Polytope3<T> {
    /// Balanced hull `conv(+-points)`, keeping only extreme pairs.
    pub fn balanced(points: &[Vec3<T>]) -> Result<Self> {
        let all: Vec<Vec3<T>> = points.iter().flat_map(|&p| [p, -p]).collect();
        let hull = convex_hull_3d(&all)?;
        let scale = all.iter().map(|p| p.norm()).fold(T::zero(), T::max);
        let close = |a: &Vec3<T>, b: &Vec3<T>| (*a - *b).norm() <= hull_tol::<T>() * scale;
        let mut half: Vec<Vec3<T>> = Vec::new();
        for v in &hull.vertices {
            if !half.iter().any(|h| close(h, v) || close(&-*h, v)) {
                half.push(*v);
            }
        }
        Ok(Self { half, facets: hull.facets })
    }

    /// All vertices, each pair as `v, -v`.
    pub fn vertices(&self) -> Vec<Vec3<T>> {
        self.half.iter().flat_map(|&v| [v, -v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.half.len()
    }

    pub fn half_vertices(&self) -> &[Vec3<T>] {
        &self.half
    }

    pub fn facets(&self) -> &[Facet<T>] {
        &self.facets
    }

    /// Largest facet violation of `p`; non-positive inside.
    pub fn violation(&self, p: &Vec3<T>) -> T {
        self.facets.iter().map(|f| f.violation(p)).fold(T::neg_infinity(), T::max)
    }

    pub fn escapes(&self, p: &Vec3<T>, tol: T) -> bool {
        self.facets.iter().any(|f| f.violation(p) > tol * (T::one() + f.offset.abs()))
    }
}

/// Result of a successful run.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeRun<T> {
    pub polytope: Polytope3<T>,
    /// Round in which no image escaped.
    pub rounds: usize,
    /// `max(0, facet violation)` over every vertex image `X v / growth`.
    pub max_violation: T,
    /// `rho(candidate)^{1/len}`, the normalization.
    pub growth: T,
    /// Vertex count after each round.
    pub round_vertices: Vec<usize>,
}

impl<T: Real> PolytopeRun<T> {
    pub fn to_json(&self) -> serde_json::Value {
        let f = |x: T| round_sig(x.to_f64().expect("finite"));
        let vertices: Vec<[f64; 3]> = self.polytope.vertices().iter().map(|v| v.0.map(f)).collect();
        serde_json::json!({
            "vertices": vertices,
            "rounds": self.rounds,
            "max_violation": f(self.max_violation),
        })
    }
}

/// Why a run did not produce an invariant polytope.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolytopeFailure {
    pub rounds: usize,
    pub vertex_count: usize,
    /// One image that still escaped in the last round.
    pub escaping: [f64; 3],
    pub violation: f64,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum PolytopeError {
    #[error("vertices still escaping after {} rounds ({} vertices)", .0.rounds, .0.vertex_count)]
    NotInvariant(PolytopeFailure),
    #[error(transparent)]
    Numeric(#[from] Error),
}

/// Representation of `conv(+-H)` good enough for containment tests while
/// `H` does not yet span space.
enum Body<T> {
    Line { dir: Vec3<T>, reach: T },
    Plane { normal: Vec3<T>, e1: Vec3<T>, e2: Vec3<T>, polygon: Vec<[T; 2]> },
    Solid(Polytope3<T>),
}

fn cross2<T: Real>(o: [T; 2], a: [T; 2], b: [T; 2]) -> T {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull of planar points (monotone chain).
fn hull_2d<T: Real>(mut pts: Vec<[T; 2]>) -> Vec<[T; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut lower: Vec<[T; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross2(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[T; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl<T: Real> Body<T> {
    fn build(half: &[Vec3<T>]) -> Result<Self> {
        let scale = half.iter().map(|p| p.norm()).fold(T::zero(), T::max);
        if scale == T::zero() {
            return Err(Error::Degenerate("zero seed vector"));
        }
        let flat = lit::<T>(1e-9).max(eps::<T>(1e4)) * scale;
        let dir = half.iter().fold(half[0], |a, p| if p.norm() > a.norm() { *p } else { a }).normalized();
        let off_line =
            half.iter()
                .map(|p| p.cross(&dir))
                .fold(Vec3::zero(), |a, c| if c.norm() > a.norm() { c } else { a });
        if off_line.norm() <= flat {
            let reach = half.iter().map(|p| p.dot(&dir).abs()).fold(T::zero(), T::max);
            return Ok(Body::Line { dir, reach });
        }
        let normal = off_line.normalized();
        if half.iter().all(|p| p.dot(&normal).abs() <= flat) {
            let e1 = dir;
            let e2 = normal.cross(&e1).normalized();
            let pts: Vec<[T; 2]> =
                half.iter().flat_map(|p| [[p.dot(&e1), p.dot(&e2)], [-p.dot(&e1), -p.dot(&e2)]]).collect();
            return Ok(Body::Plane { normal, e1, e2, polygon: hull_2d(pts) });
        }
        Ok(Body::Solid(Polytope3::balanced(half)?))
    }

    fn escapes(&self, p: &Vec3<T>, tol: T) -> bool {
        match self {
            Body::Line { dir, reach } => {
                p.cross(dir).norm() > tol * (T::one() + *reach)
                    || p.dot(dir).abs() > *reach + tol * (T::one() + *reach)
            }
            Body::Plane { normal, e1, e2, polygon } => {
                let reach = polygon.iter().map(|q| q[0].hypot(q[1])).fold(T::zero(), T::max);
                let slack = tol * (T::one() + reach);
                if p.dot(normal).abs() > slack {
                    return true;
                }
                let q = [p.dot(e1), p.dot(e2)];
                (0..polygon.len()).any(|i| {
                    let a = polygon[i];
                    let b = polygon[(i + 1) % polygon.len()];
                    let edge = (b[0] - a[0]).hypot(b[1] - a[1]);
                    cross2(a, b, q) / edge < -slack
                })
            }
            Body::Solid(poly) => poly.escapes(p, tol),
        }
    }
}

/// Leading eigenvector of the candidate product (real part, or imaginary
/// part when the real part vanishes).
fn leading_direction<T: Real>(word: &ProductWord<T>) -> Result<Vec3<T>> {
    let eig = eigenvalues(&word.product);
    let top = eig.iter().copied().fold(eig[0], |a, z| if z.norm() > a.norm() { z } else { a });
    let v = eigenvector(&word.product, top);
    let re = v.map(|z| z.re);
    let im = v.map(|z| z.im);
    let pick = if re.norm() >= im.norm() { re } else { im };
    if pick.norm() == T::zero() {
        return Err(Error::Degenerate("candidate eigenvector vanished"));
    }
    Ok(pick.normalized())
}

/// The invariant polytope algorithm with a balanced body.
///
/// Seeds with the leading eigenvector of `candidate` (and its images along
/// the candidate's cyclic word), then repeatedly maps the newest vertices by
/// every family member divided by `rho(candidate)^{1/len}`. Images outside
/// the current body by more than `tol (1 + |offset|)` become vertices;
/// the run succeeds in the first round where nothing escapes.
pub fn invariant_polytope<T: Real>(
    family: &MatrixFamily<T>,
    candidate: &ProductWord<T>,
    max_rounds: usize,
    tol: T,
) -> Result<PolytopeRun<T>, PolytopeError> {
    if candidate.is_empty() {
        return Err(Error::Degenerate("empty candidate word").into());
    }
    let rho = spectral_radius(&candidate.product);
    if rho.is_nan() || rho <= T::zero() {
        return Err(Error::ZeroSpectralRadius.into());
    }
    let growth = rho.powf(T::one() / real_of::<T, usize>(candidate.len()));
    let mats = family.scaled_down(growth);
    let mats = mats.matrices();

    let v0 = leading_direction(candidate)?;
    let mut half = vec![v0];
    let mut cur = v0;
    for &i in candidate.letters.iter().rev().take(candidate.len() - 1) {
        cur = mats[i] * cur;
        half.push(cur);
    }
    let mut body = Body::build(&half)?;
    let mut fresh = half.clone();
    let mut round_vertices = Vec::new();

    for round in 1..=max_rounds {
        let mut escaped: Vec<Vec3<T>> = Vec::new();
        for p in &fresh {
            for x in mats {
                let image = *x * *p;
                if body.escapes(&image, tol) {
                    escaped.push(image);
                }
            }
        }
        if escaped.is_empty() {
            let polytope = match body {
                Body::Solid(p) => p,
                _ => return Err(Error::Degenerate("invariant set does not span space").into()),
            };
            round_vertices.push(polytope.vertex_count());
            let max_violation = polytope
                .half_vertices()
                .iter()
                .flat_map(|v| mats.iter().map(move |x| *x * *v))
                .map(|img| polytope.violation(&img))
                .fold(T::zero(), T::max);
            return Ok(PolytopeRun { polytope, rounds: round, max_violation, growth, round_vertices });
        }
        if round == max_rounds {
            let worst = escaped[0];
            let violation = match &body {
                Body::Solid(p) => p.violation(&worst),
                _ => T::infinity(),
            };
            return Err(PolytopeError::NotInvariant(PolytopeFailure {
                rounds: round,
                vertex_count: 2 * (half.len() + escaped.len()),
                escaping: worst.0.map(|x| x.to_f64().unwrap_or(f64::NAN)),
                violation: violation.to_f64().unwrap_or(f64::NAN),
            }));
        }
        half.extend(escaped.iter().copied());
        body = Body::build(&half)?;
        if let Body::Solid(p) = &body {
            half = p.half_vertices().to_vec();
            round_vertices.push(p.vertex_count());
        } else {
            round_vertices.push(2 * half.len());
        }
        let keep =
            |e: &Vec3<T>| half.iter().any(|h| (*h - *e).norm() == T::zero() || (*h + *e).norm() == T::zero());
        fresh = escaped.into_iter().filter(keep).collect();
    }
    unreachable!("loop returns on its last round")
}
