//! Lattice polygons in Z^2: convex hulls, inner normal fans, their common
//! refinement, face lattice lengths and mixed volumes.

use crate::error::{Error, Result};
use std::cmp::Ordering;

pub type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn cross2(a: Pt, b: Pt) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn primitive_pt(p: Pt) -> Pt {
    let g = gcd_i64(p.0, p.1);
    if g == 0 {
        (0, 0)
    } else {
        (p.0 / g, p.1 / g)
    }
}

/// Counterclockwise comparison of nonzero lattice directions, starting at
/// (1,0). Exact: half-plane split plus cross products, no floating point.
pub fn ccw_cmp(a: Pt, b: Pt) -> Ordering {
    let half = |p: Pt| -> u8 {
        if p.1 > 0 || (p.1 == 0 && p.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross2(a, b);
        if c > 0 {
            Ordering::Less
        } else if c < 0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Convex hull of lattice points: vertices counterclockwise, dim in {0,1,2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    verts: Vec<Pt>,
    dim: u8,
}

impl LatticePolygon {
    pub fn hull(points: &[Pt]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("convex hull of no points".into()));
        }
        let mut pts: Vec<Pt> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(LatticePolygon { verts: pts, dim: 0 });
        }
        // monotone chain
        let mut lower: Vec<Pt> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Pt> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        let hull: Vec<Pt> = lower.into_iter().chain(upper).collect();
        if hull.len() < 3 {
            // collinear: keep the two extreme points
            let a = *pts.first().unwrap();
            let b = *pts.last().unwrap();
            return Ok(LatticePolygon { verts: vec![a, b], dim: 1 });
        }
        Ok(LatticePolygon { verts: hull, dim: 2 })
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.verts
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Twice the Euclidean area, by the shoelace formula.
    pub fn area2(&self) -> i128 {
        if self.dim < 2 {
            return 0;
        }
        let n = self.verts.len();
        let mut s: i128 = 0;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            s += cross2(a, b);
        }
        s
    }

    /// Vertices of the face minimizing the pairing with `w`.
    pub fn face_in_direction(&self, w: Pt) -> Vec<Pt> {
        let val = |p: Pt| p.0 as i128 * w.0 as i128 + p.1 as i128 * w.1 as i128;
        let m = self.verts.iter().map(|&p| val(p)).min().unwrap();
        self.verts.iter().copied().filter(|&p| val(p) == m).collect()
    }

    pub fn translate(&self, d: Pt) -> LatticePolygon {
        LatticePolygon {
            verts: self.verts.iter().map(|&(x, y)| (x + d.0, y + d.1)).collect(),
            dim: self.dim,
        }
    }
}

/// One primitive inner normal per edge (two opposite rays for a segment,
/// empty for a point).
pub fn inner_normal_rays(p: &LatticePolygon) -> Vec<Pt> {
    match p.dim() {
        0 => Vec::new(),
        1 => {
            let d = (p.verts[1].0 - p.verts[0].0, p.verts[1].1 - p.verts[0].1);
            let n = primitive_pt((-d.1, d.0));
            vec![n, (-n.0, -n.1)]
        }
        _ => {
            let m = p.verts.len();
            (0..m)
                .map(|i| {
                    let a = p.verts[i];
                    let b = p.verts[(i + 1) % m];
                    primitive_pt((-(b.1 - a.1), b.0 - a.0))
                })
                .collect()
        }
    }
}

/// The common refinement of the inner normal fans of a family of polygons:
/// the deduplicated union of all rays, sorted counterclockwise from (1,0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedFan {
    rays: Vec<Pt>,
}

impl RefinedFan {
    pub fn rays(&self) -> &[Pt] {
        &self.rays
    }

    /// Consecutive ray pairs (j, j+1 mod m) spanning the 2-cones.
    pub fn consecutive_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.rays.len();
        (0..m).map(|i| (i, (i + 1) % m)).collect()
    }
}

pub fn common_refinement(polys: &[&LatticePolygon]) -> Result<RefinedFan> {
    let mut rays: Vec<Pt> = Vec::new();
    for p in polys {
        rays.extend(inner_normal_rays(p));
    }
    if rays.is_empty() {
        return Err(Error::EmptyInput(
            "common refinement needs a polygon of dimension >= 1".into(),
        ));
    }
    rays.sort_by(|&a, &b| ccw_cmp(a, b));
    rays.dedup();
    Ok(RefinedFan { rays })
}

/// Number of lattice points on face_w(P) minus one; 0 iff the face is a vertex.
pub fn lattice_length_of_face(p: &LatticePolygon, w: Pt) -> i64 {
    let face = p.face_in_direction(w);
    if face.len() < 2 {
        return 0;
    }
    // a face of a polygon has at most two vertices
    let a = face[0];
    let b = face[face.len() - 1];
    gcd_i64(b.0 - a.0, b.1 - a.1)
}

pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    let mut pts = Vec::with_capacity(p.verts.len() * q.verts.len());
    for &a in &p.verts {
        for &b in &q.verts {
            pts.push((a.0 + b.0, a.1 + b.1));
        }
    }
    LatticePolygon::hull(&pts).expect("nonempty")
}

/// MV(P,Q) = area(P+Q) - area(P) - area(Q), normalized so that the mixed
/// volume of the two unit segments is 1.
pub fn mixed_volume(p: &LatticePolygon, q: &LatticePolygon) -> i64 {
    let s = minkowski_sum(p, q);
    let twice = s.area2() - p.area2() - q.area2();
    debug_assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[Pt]) -> LatticePolygon {
        LatticePolygon::hull(pts).unwrap()
    }

    #[test]
    fn hull_dims() {
        assert_eq!(poly(&[(0, 0)]).dim(), 0);
        let seg = poly(&[(0, 0), (2, 0), (1, 0)]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices(), &[(0, 0), (2, 0)]);
        let tri = poly(&[(1, 1), (1, 0), (0, 1)]);
        assert_eq!(tri.dim(), 2);
        assert_eq!(tri.vertices().len(), 3);
        // interior/edge points are not vertices
        let t = poly(&[(0, 0), (3, 0), (0, 3), (1, 1), (1, 0), (2, 0)]);
        assert_eq!(t.vertices().len(), 3);
    }

    #[test]
    fn normals_square_and_segment() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let mut rays = inner_normal_rays(&sq);
        rays.sort();
        assert_eq!(rays, vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
        let seg = poly(&[(0, 0), (2, 0)]);
        let mut rays = inner_normal_rays(&seg);
        rays.sort();
        assert_eq!(rays, vec![(0, -1), (0, 1)]);
    }

    #[test]
    fn normals_triangle_minimize() {
        // oracle: rotate each edge by +90 degrees, then check that each ray
        // actually minimizes on its edge
        let t = poly(&[(0, 0), (2, 1), (1, 2)]);
        let rays = inner_normal_rays(&t);
        assert_eq!(rays.len(), 3);
        for &r in &rays {
            assert_eq!(r, primitive_pt(r));
            let face = t.face_in_direction(r);
            assert_eq!(face.len(), 2, "ray {r:?} must pick out an edge");
        }
        let mut sorted = rays.clone();
        sorted.sort();
        assert_eq!(sorted, vec![(-1, 2), (-1, -1), (2, -1)].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn refinement_counts_from_supports() {
        // supports of the three polynomials in the first generic surface
        // example: the refined fan has nine rays
        let p1 = poly(&[(0, 0), (2, 1), (1, 2)]);
        let p2 = poly(&[(1, 1), (1, 0), (0, 1)]);
        let p3 = poly(&[(0, 1), (2, 0), (1, 2)]);
        let fan = common_refinement(&[&p1, &p2, &p3]).unwrap();
        assert_eq!(fan.rays().len(), 9);
        // second example: eight rays
        let q1 = poly(&[(2, 0), (3, 0), (0, 2)]);
        let q2 = poly(&[(0, 2), (0, 3), (2, 0)]);
        let q3 = poly(&[(1, 1), (3, 0), (0, 3), (1, 2), (2, 1)]);
        let fan = common_refinement(&[&q1, &q2, &q3]).unwrap();
        assert_eq!(fan.rays().len(), 8);
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(common_refinement(&[&sq]).unwrap().rays().len(), 4);
        let pt = poly(&[(5, 5)]);
        assert!(common_refinement(&[&pt]).is_err());
    }

    #[test]
    fn rays_sorted_ccw_from_east() {
        let p1 = poly(&[(0, 0), (2, 1), (1, 2)]);
        let p2 = poly(&[(1, 1), (1, 0), (0, 1)]);
        let p3 = poly(&[(0, 1), (2, 0), (1, 2)]);
        let fan = common_refinement(&[&p1, &p2, &p3]).unwrap();
        assert_eq!(
            fan.rays(),
            &[
                (1, 1),
                (1, 2),
                (-1, 2),
                (-1, 0),
                (-2, -1),
                (-1, -1),
                (0, -1),
                (1, -1),
                (2, -1)
            ]
        );
    }

    #[test]
    fn lattice_lengths() {
        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(lattice_length_of_face(&sq, (0, 1)), 2);
        assert_eq!(lattice_length_of_face(&sq, (1, 1)), 0);
        let p2 = poly(&[(0, 0), (0, 1), (2, 0)]);
        // face in direction (0,1) is the segment (0,0)-(2,0): length 2
        assert_eq!(lattice_length_of_face(&p2, (0, 1)), 2);
        let seg = poly(&[(0, 0), (1, 1)]);
        assert_eq!(lattice_length_of_face(&seg, (-1, 1)), 1);
        assert_eq!(lattice_length_of_face(&seg, (1, 1)), 0);
    }

    #[test]
    fn mixed_volumes() {
        let sx = poly(&[(0, 0), (1, 0)]);
        let sy = poly(&[(0, 0), (0, 1)]);
        assert_eq!(mixed_volume(&sx, &sy), 1);
        let p2 = poly(&[(0, 0), (0, 1), (2, 0)]);
        let p3 = poly(&[(0, 0), (1, 1)]);
        assert_eq!(mixed_volume(&p2, &p3), 3);
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(mixed_volume(&sq, &sq), 2);
        // symmetry and translation invariance
        assert_eq!(mixed_volume(&p2, &p3), mixed_volume(&p3, &p2));
        assert_eq!(mixed_volume(&p2.translate((3, -1)), &p3), 3);
        // point kills the mixed volume
        let pt = poly(&[(7, 7)]);
        assert_eq!(mixed_volume(&pt, &sq), 0);
        // parallel segments
        let s1 = poly(&[(0, 0), (2, 2)]);
        let s2 = poly(&[(0, 0), (1, 1)]);
        assert_eq!(mixed_volume(&s1, &s2), 0);
    }

    #[test]
    fn polygon_closure_property() {
        // sum over edges of (lattice length x inner normal rotated -90) = 0
        let p = poly(&[(0, 0), (4, 1), (3, 3), (1, 4)]);
        let rays = inner_normal_rays(&p);
        let mut sx = 0i64;
        let mut sy = 0i64;
        for r in rays {
            let l = lattice_length_of_face(&p, r);
            let d = (r.1, -r.0);
            sx += l * d.0;
            sy += l * d.1;
        }
        assert_eq!((sx, sy), (0, 0));
    }
}
