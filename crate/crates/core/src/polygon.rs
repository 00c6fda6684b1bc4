//! Convex polygons in the complex plane, used as frequency value sets.

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    /// Counter-clockwise hull vertices; one or two entries for degenerate sets.
    vertices: Vec<Complex64>,
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

impl ConvexPolygon {
    /// Convex hull by the monotone-chain construction.
    pub fn hull(points: &[Complex64]) -> Self {
        let mut pts: Vec<Complex64> = points.to_vec();
        pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<Complex64> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Complex64> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self { vertices: lower }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let sums: Vec<Complex64> = self
            .vertices
            .iter()
            .flat_map(|&a| other.vertices.iter().map(move |&b| a + b))
            .collect();
        Self::hull(&sums)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::hull(&self.vertices.iter().map(|&z| f(z)).collect::<Vec<_>>())
    }

    /// Distance from `z` to the polygon; zero on or inside it.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::INFINITY,
            1 => (z - v[0]).norm(),
            2 => segment_distance(z, v[0], v[1]),
            n => {
                let inside = (0..n).all(|i| cross(v[i], v[(i + 1) % n], z) >= 0.0);
                if inside {
                    0.0
                } else {
                    (0..n)
                        .map(|i| segment_distance(z, v[i], v[(i + 1) % n]))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// Boundary-inclusive membership with absolute slack `tol`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.distance_to(z) <= tol
    }

    pub fn distance_to_origin(&self) -> f64 {
        self.distance_to(Complex64::new(0.0, 0.0))
    }

    pub fn diameter_bound(&self) -> f64 {
        let v = &self.vertices;
        v.iter()
            .flat_map(|a| v.iter().map(move |b| (a - b).norm()))
            .fold(0.0, f64::max)
    }
}
