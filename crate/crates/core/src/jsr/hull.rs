//! Incremental convex hull in three dimensions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::scalar::{eps, lit, Real};

/// Relative tolerance for visibility and coplanarity.
pub const HULL_TOL: f64 = 1e-10;

/// [`HULL_TOL`], widened for scalars too coarse to resolve it.
pub fn hull_tol<T: Real>() -> T {
    lit::<T>(HULL_TOL).max(eps::<T>(1e3))
}

/// A supporting half-space `normal . x <= offset` with unit `normal`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Facet<T> {
    pub normal: Vec3<T>,
    pub offset: T,
}

impl<T: Real> Facet<T> {
    pub fn violation(&self, p: &Vec3<T>) -> T {
        self.normal.dot(p) - self.offset
    }
}

/// Convex hull of a finite point set.
#[derive(Clone, Debug, PartialEq)]
pub struct Hull<T> {
    /// Extreme points only.
    pub vertices: Vec<Vec3<T>>,
    /// One half-space per distinct facet plane; coplanar triangles merged.
    pub facets: Vec<Facet<T>>,
    /// Triangulation of the boundary, indexing into `vertices`.
    pub triangles: Vec<[usize; 3]>,
}

impl<T: Real> Hull<T> {
    /// Largest `normal . p - offset` over all facets; non-positive inside.
    pub fn violation(&self, p: &Vec3<T>) -> T {
        self.facets.iter().map(|f| f.violation(p)).fold(T::neg_infinity(), T::max)
    }

    /// Whether `p` lies outside some facet by more than `tol (1 + |offset|)`.
    pub fn escapes(&self, p: &Vec3<T>, tol: T) -> bool {
        self.facets.iter().any(|f| f.violation(p) > tol * (T::one() + f.offset.abs()))
    }
}

#[derive(Clone, Copy, Debug)]
struct Tri<T> {
    v: [usize; 3],
    normal: Vec3<T>,
    offset: T,
    alive: bool,
}

fn make_tri<T: Real>(pts: &[Vec3<T>], v: [usize; 3], inside: &Vec3<T>) -> Tri<T> {
    let (a, b, c) = (pts[v[0]], pts[v[1]], pts[v[2]]);
    let mut n = (b - a).cross(&(c - a));
    let mut v = v;
    if n.dot(&(*inside - a)) > T::zero() {
        n = -n;
        v.swap(1, 2);
    }
    let n = n.normalized();
    Tri { v, normal: n, offset: n.dot(&a), alive: true }
}

fn dist_to_line<T: Real>(p: &Vec3<T>, a: &Vec3<T>, b: &Vec3<T>) -> T {
    let d = *b - *a;
    (*p - *a).cross(&d).norm() / d.norm()
}

/// Hull of `points`, which must contain four points that are not coplanar
/// within `1e-10` times the point-set scale.
pub fn convex_hull_3d<T: Real>(points: &[Vec3<T>]) -> Result<Hull<T>> {
    if points.len() < 4 {
        return Err(Error::Degenerate("fewer than four points"));
    }
    if points.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
        return Err(Error::NonFinite);
    }
    let scale = points.iter().map(|p| p.norm()).fold(T::zero(), T::max);
    let eps = hull_tol::<T>() * scale.max(T::min_positive_value());
    let argmax = |f: &dyn Fn(&Vec3<T>) -> T| {
        points.iter().enumerate().map(|(i, p)| (i, f(p))).fold((0, T::neg_infinity()), |acc, x| {
            if x.1 > acc.1 {
                x
            } else {
                acc
            }
        })
    };

    let i0 = 0;
    let (i1, d1) = argmax(&|p| (*p - points[i0]).norm());
    if d1 <= eps {
        return Err(Error::Degenerate("all points coincide"));
    }
    let (i2, d2) = argmax(&|p| dist_to_line(p, &points[i0], &points[i1]));
    if d2 <= eps {
        return Err(Error::Degenerate("points are collinear"));
    }
    let n = (points[i1] - points[i0]).cross(&(points[i2] - points[i0])).normalized();
    let (i3, d3) = argmax(&|p| n.dot(&(*p - points[i0])).abs());
    if d3 <= eps {
        return Err(Error::Degenerate("points are coplanar"));
    }

    let seed = [i0, i1, i2, i3];
    let inside = seed.iter().fold(Vec3::zero(), |acc, &i| acc + points[i]).scale(lit(0.25));
    let mut tris: Vec<Tri<T>> = [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]]
        .into_iter()
        .map(|v| make_tri(points, v, &inside))
        .collect();

    for (p_idx, p) in points.iter().enumerate() {
        if seed.contains(&p_idx) {
            continue;
        }
        let visible: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.alive && t.normal.dot(p) - t.offset > eps)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Horizon: directed edges of visible triangles whose reverse is not
        // an edge of another visible triangle.
        let mut edges = Vec::new();
        for &ti in &visible {
            let v = tris[ti].v;
            for e in [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])] {
                edges.push(e);
            }
        }
        let horizon: Vec<(usize, usize)> =
            edges.iter().copied().filter(|&(a, b)| !edges.contains(&(b, a))).collect();
        for &ti in &visible {
            tris[ti].alive = false;
        }
        for (a, b) in horizon {
            tris.push(make_tri(points, [a, b, p_idx], &inside));
        }
    }

    let tris: Vec<Tri<T>> = tris.into_iter().filter(|t| t.alive).collect();

    let mut facets: Vec<Facet<T>> = Vec::new();
    for t in &tris {
        let same_plane = |f: &Facet<T>| {
            f.normal.dot(&t.normal) > T::zero() && t.v.iter().all(|&i| f.violation(&points[i]).abs() <= eps)
        };
        if !facets.iter().any(same_plane) {
            facets.push(Facet { normal: t.normal, offset: t.offset });
        }
    }

    let mut used: Vec<usize> = tris.iter().flat_map(|t| t.v).collect();
    used.sort_unstable();
    used.dedup();
    let extreme: Vec<usize> = used
        .into_iter()
        .filter(|&i| {
            let normals: Vec<Vec3<T>> =
                facets.iter().filter(|f| f.violation(&points[i]).abs() <= eps).map(|f| f.normal).collect();
            spans_space(&normals)
        })
        .collect();

    let remap = |i: usize| extreme.binary_search(&i).ok();
    let triangles =
        tris.iter().filter_map(|t| Some([remap(t.v[0])?, remap(t.v[1])?, remap(t.v[2])?])).collect();
    Ok(Hull { vertices: extreme.iter().map(|&i| points[i]).collect(), facets, triangles })
}

/// Whether the unit normals span all of `R^3`.
fn spans_space<T: Real>(normals: &[Vec3<T>]) -> bool {
    let tiny = lit::<T>(1e-9).max(eps::<T>(1e4));
    for (i, a) in normals.iter().enumerate() {
        for b in &normals[i + 1..] {
            let ab = a.cross(b);
            if ab.norm() <= tiny {
                continue;
            }
            if normals.iter().any(|c| ab.dot(c).abs() > tiny) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<Vec3<f64>> {
        let mut pts = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    pts.push(Vec3([x, y, z]));
                }
            }
        }
        pts
    }

    #[test]
    fn cube_hull() {
        let h = convex_hull_3d(&cube()).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.triangles.len(), 12);
    }

    #[test]
    fn interior_and_face_points_pruned() {
        let mut pts = vec![Vec3([0.0, 0.0, 0.0]), Vec3([1.0, 0.0, 0.0]), Vec3([1.0, 1.0, 0.0])];
        pts.extend(cube());
        let h = convex_hull_3d(&pts).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        for p in &pts {
            assert!(h.violation(p) <= 1e-12);
        }
    }

    #[test]
    fn degenerate_inputs() {
        let flat =
            [Vec3([0.0, 0.0, 0.0]), Vec3([1.0, 0.0, 0.0]), Vec3([0.0, 1.0, 0.0]), Vec3([1.0, 1.0, 0.0])];
        assert_eq!(convex_hull_3d(&flat), Err(Error::Degenerate("points are coplanar")));
        let line =
            [Vec3([0.0, 0.0, 0.0]), Vec3([1.0, 0.0, 0.0]), Vec3([2.0, 0.0, 0.0]), Vec3([3.0, 0.0, 0.0])];
        assert_eq!(convex_hull_3d(&line), Err(Error::Degenerate("points are collinear")));
        assert!(convex_hull_3d(&flat[..3]).is_err());
    }

    #[test]
    fn octahedron() {
        let pts: Vec<Vec3<f64>> = (0..3)
            .flat_map(|i| {
                [1.0, -1.0].map(|s| {
                    let mut v = [0.0; 3];
                    v[i] = s;
                    Vec3(v)
                })
            })
            .collect();
        let h = convex_hull_3d(&pts).unwrap();
        assert_eq!(h.vertices.len(), 6);
        assert_eq!(h.facets.len(), 8);
        assert!(h.escapes(&Vec3([0.6, 0.6, 0.0]), 1e-9));
        assert!(!h.escapes(&Vec3([0.5, 0.5, 0.0]), 1e-9));
    }
}
