//! Frequency value sets and the zero-exclusion test.

use crate::error::{Error, Result};
use crate::interval::{
    value_set, value_set_complex, ComplexIntervalFamily, IntervalFamily, RealIntervalFamily,
};
use crate::polygon::ConvexPolygon;
use crate::polynomial::ComplexPolynomial;
use crate::report::Certification;
use crate::stability::{is_stable, StabilityRegion};
use num_complex::Complex64;

/// A family whose value set `{p(jw)}` at each frequency is the convex hull of
/// finitely many generator points that move continuously with `w`.
pub trait ValueSetFamily {
    /// Generator points in a fixed order.
    fn generators(&self, omega: f64) -> Vec<Complex64>;

    /// Modulus bound on every root of every member.
    fn root_bound(&self) -> f64;

    /// With real coefficients the value set at `-w` mirrors the one at `w`.
    fn real_coefficients(&self) -> bool;

    /// A concrete member, used as the stable reference.
    fn nominal(&self) -> ComplexPolynomial;

    fn value_set(&self, omega: f64) -> ConvexPolygon {
        ConvexPolygon::hull(&self.generators(omega))
    }
}

impl ValueSetFamily for RealIntervalFamily {
    fn generators(&self, omega: f64) -> Vec<Complex64> {
        value_set(self, omega).corners().to_vec()
    }

    fn root_bound(&self) -> f64 {
        RealIntervalFamily::root_bound(self)
    }

    fn real_coefficients(&self) -> bool {
        true
    }

    fn nominal(&self) -> ComplexPolynomial {
        self.kharitonov(1)
    }
}

impl ValueSetFamily for ComplexIntervalFamily {
    fn generators(&self, omega: f64) -> Vec<Complex64> {
        value_set_complex(self, omega).corners().to_vec()
    }

    fn root_bound(&self) -> f64 {
        ComplexIntervalFamily::root_bound(self)
    }

    fn real_coefficients(&self) -> bool {
        self.is_real()
    }

    fn nominal(&self) -> ComplexPolynomial {
        self.kharitonov_plus(1)
    }
}

impl ValueSetFamily for IntervalFamily {
    fn generators(&self, omega: f64) -> Vec<Complex64> {
        match self {
            Self::Real(f) => f.generators(omega),
            Self::Complex(f) => f.generators(omega),
        }
    }

    fn root_bound(&self) -> f64 {
        IntervalFamily::root_bound(self)
    }

    fn real_coefficients(&self) -> bool {
        match self {
            Self::Real(_) => true,
            Self::Complex(f) => f.is_real(),
        }
    }

    fn nominal(&self) -> ComplexPolynomial {
        match self {
            Self::Real(f) => f.nominal(),
            Self::Complex(f) => f.nominal(),
        }
    }
}

/// `{u - z v}` for two interval families and a fixed complex multiplier.
#[derive(Clone, Debug)]
pub struct TwoFamilyValueSet {
    pub u: IntervalFamily,
    pub v: IntervalFamily,
    pub z: Complex64,
}

impl ValueSetFamily for TwoFamilyValueSet {
    fn generators(&self, omega: f64) -> Vec<Complex64> {
        let gu = self.u.generators(omega);
        let gv = self.v.generators(omega);
        gu.iter()
            .flat_map(|&a| gv.iter().map(move |&b| a - self.z * b))
            .collect()
    }

    /// Cauchy bound using the extreme coefficient moduli of both families.
    fn root_bound(&self) -> f64 {
        let (cu, cv) = (self.u.to_complex(), self.v.to_complex());
        let n = cu.degree().max(cv.degree());
        let modulus = |f: &ComplexIntervalFamily, k: usize| {
            if k > f.degree() {
                return 0.0;
            }
            let (r, i) = (f.real_bounds()[k], f.imag_bounds()[k]);
            r.lo.abs().max(r.hi.abs()).hypot(i.lo.abs().max(i.hi.abs()))
        };
        let top = (0..n)
            .map(|k| modulus(&cu, k) + self.z.norm() * modulus(&cv, k))
            .fold(0.0, f64::max);
        let lead = match cu.degree().cmp(&cv.degree()) {
            std::cmp::Ordering::Greater => lead_min(&cu),
            std::cmp::Ordering::Less => self.z.norm() * lead_min(&cv),
            std::cmp::Ordering::Equal => {
                let g = self.generators_leading();
                ConvexPolygon::hull(&g).distance_to_origin()
            }
        };
        1.0 + top / lead
    }

    fn real_coefficients(&self) -> bool {
        self.z.im == 0.0 && self.u.real_coefficients() && self.v.real_coefficients()
    }

    fn nominal(&self) -> ComplexPolynomial {
        &self.u.nominal() - &self.v.nominal().scale(self.z)
    }
}

fn lead_min(f: &ComplexIntervalFamily) -> f64 {
    let n = f.degree();
    crate::interval::min_modulus_in_box(f.real_bounds()[n], f.imag_bounds()[n])
}

impl TwoFamilyValueSet {
    fn generators_leading(&self) -> Vec<Complex64> {
        let corners = |f: &ComplexIntervalFamily| {
            let n = f.degree();
            let (r, i) = (f.real_bounds()[n], f.imag_bounds()[n]);
            [
                Complex64::new(r.lo, i.lo),
                Complex64::new(r.hi, i.lo),
                Complex64::new(r.hi, i.hi),
                Complex64::new(r.lo, i.hi),
            ]
        };
        let (cu, cv) = (corners(&self.u.to_complex()), corners(&self.v.to_complex()));
        cu.iter()
            .flat_map(|&a| cv.iter().map(move |&b| a - self.z * b))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FrequencyGrid {
    pub points: usize,
    /// Explicit upper frequency; derived from the root bound when `None`.
    pub omega_max: Option<f64>,
    /// Refinement threshold: an interval is certified when the distance to
    /// the origin exceeds `safety` times the generator displacement.
    pub safety: f64,
    pub max_depth: usize,
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self {
            points: 1024,
            omega_max: None,
            safety: 10.0,
            max_depth: 30,
        }
    }
}

/// Linear on `[0, 1]`, logarithmic above, ending at `omega_max`.
pub fn hybrid_grid(points: usize, omega_max: f64) -> Vec<f64> {
    let points = points.max(2);
    if omega_max <= 1.0 {
        return (0..points)
            .map(|k| omega_max * k as f64 / (points - 1) as f64)
            .collect();
    }
    let linear = points / 4;
    let log = points - linear;
    let mut grid: Vec<f64> = (0..linear).map(|k| k as f64 / linear as f64).collect();
    let span = omega_max.ln();
    grid.extend((0..log).map(|k| (span * k as f64 / (log - 1) as f64).exp()));
    if let Some(last) = grid.last_mut() {
        *last = omega_max;
    }
    grid
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroExclusion {
    pub excluded: bool,
    pub violating_omega: Option<f64>,
    pub min_distance: f64,
    pub omega_max: f64,
    pub evaluations: usize,
    pub certification: Certification,
}

fn displacement(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Checks `0 not in {p(jw)}` over all real `w` by a gridded sweep with
/// bisection wherever the value set comes close to the origin.
pub fn zero_exclusion_check<F: ValueSetFamily + ?Sized>(
    family: &F,
    grid: &FrequencyGrid,
) -> Result<ZeroExclusion> {
    let omega_max = grid.omega_max.unwrap_or_else(|| 1.2 * family.root_bound());
    if !omega_max.is_finite() {
        return Err(Error::InvalidFamily(
            "value set has no finite frequency bound".into(),
        ));
    }
    let positive = hybrid_grid(grid.points, omega_max);
    let mut omegas: Vec<f64> = Vec::new();
    if !family.real_coefficients() {
        omegas.extend(positive.iter().rev().filter(|&&w| w > 0.0).map(|&w| -w));
    }
    omegas.extend(&positive);

    struct Node {
        omega: f64,
        gens: Vec<Complex64>,
        dist: f64,
    }
    let eval = |omega: f64| {
        let gens = family.generators(omega);
        let dist = ConvexPolygon::hull(&gens).distance_to_origin();
        Node { omega, gens, dist }
    };

    let nodes: Vec<Node> = omegas.iter().map(|&w| eval(w)).collect();
    let mut evaluations = nodes.len();
    let mut min_distance = nodes.iter().map(|n| n.dist).fold(f64::INFINITY, f64::min);
    let scale_of = |n: &Node| n.gens.iter().map(|g| g.norm()).fold(0.0, f64::max);
    let hits = |n: &Node| n.dist <= 1e-12 * scale_of(n).max(f64::MIN_POSITIVE);

    if let Some(n) = nodes.iter().find(|n| hits(n)) {
        return Ok(ZeroExclusion {
            excluded: false,
            violating_omega: Some(n.omega),
            min_distance: 0.0,
            omega_max,
            evaluations,
            certification: Certification::GridCertified,
        });
    }

    let mut refined = false;
    for w in nodes.windows(2) {
        let mut stack = vec![(
            Node {
                omega: w[0].omega,
                gens: w[0].gens.clone(),
                dist: w[0].dist,
            },
            Node {
                omega: w[1].omega,
                gens: w[1].gens.clone(),
                dist: w[1].dist,
            },
            0usize,
        )];
        while let Some((a, b, depth)) = stack.pop() {
            let d = displacement(&a.gens, &b.gens);
            if a.dist.min(b.dist) > grid.safety * d {
                continue;
            }
            if depth >= grid.max_depth {
                return Err(Error::InsufficientGrid {
                    omega: 0.5 * (a.omega + b.omega),
                });
            }
            refined = true;
            let mid = eval(0.5 * (a.omega + b.omega));
            evaluations += 1;
            min_distance = min_distance.min(mid.dist);
            if hits(&mid) {
                return Ok(ZeroExclusion {
                    excluded: false,
                    violating_omega: Some(mid.omega),
                    min_distance: 0.0,
                    omega_max,
                    evaluations,
                    certification: Certification::RefinedCertified,
                });
            }
            let copy = Node {
                omega: mid.omega,
                gens: mid.gens.clone(),
                dist: mid.dist,
            };
            stack.push((mid, b, depth + 1));
            stack.push((a, copy, depth + 1));
        }
    }

    Ok(ZeroExclusion {
        excluded: true,
        violating_omega: None,
        min_distance,
        omega_max,
        evaluations,
        certification: if refined {
            Certification::RefinedCertified
        } else {
            Certification::GridCertified
        },
    })
}

/// Stability of the whole family: the nominal member is Hurwitz and zero is
/// excluded from every value set.
pub fn zero_exclusion_stable<F: ValueSetFamily + ?Sized>(
    family: &F,
    grid: &FrequencyGrid,
) -> Result<(bool, ZeroExclusion)> {
    let nominal = is_stable(&family.nominal(), StabilityRegion::OpenLeftHalfPlane)?;
    let ex = zero_exclusion_check(family, grid)?;
    Ok((nominal.stable && ex.excluded, ex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{check_interval_hurwitz, Interval};
    use crate::report::Verdict;

    fn fam(pairs: &[(f64, f64)]) -> RealIntervalFamily {
        RealIntervalFamily::from_pairs(pairs).unwrap()
    }

    #[test]
    fn stable_family_excludes_origin() {
        let f = fam(&[(1.0, 1.5), (3.0, 3.5), (3.0, 3.2), (1.0, 1.1)]);
        let (stable, ex) = zero_exclusion_stable(&f, &FrequencyGrid::default()).unwrap();
        assert!(stable && ex.excluded);
        let k = check_interval_hurwitz(&IntervalFamily::Real(f)).unwrap();
        assert_eq!(k.verdict, Verdict::Stable);
    }

    #[test]
    fn member_with_root_on_axis_is_caught_near_unit_frequency() {
        // (s^2 + 1)(s + 2) = s^3 + 2 s^2 + s + 2, inflated slightly.
        let base = [2.0, 1.0, 2.0, 1.0];
        let f = RealIntervalFamily::new(
            base.iter()
                .map(|&c| Interval::new(c - 0.01, c + 0.01).unwrap())
                .collect(),
        )
        .unwrap();
        let ex = zero_exclusion_check(&f, &FrequencyGrid::default()).unwrap();
        assert!(!ex.excluded);
        let w = ex.violating_omega.unwrap();
        assert!((w - 1.0).abs() < 0.05, "violation at {w}");
    }

    #[test]
    fn zero_frequency_slice() {
        let f = fam(&[(-1.0, 1.0), (1.0, 2.0), (1.0, 1.0)]);
        let vs = f.value_set(0.0);
        assert_eq!(vs.distance_to_origin(), 0.0);
        let ex = zero_exclusion_check(&f, &FrequencyGrid::default()).unwrap();
        assert_eq!(ex.violating_omega, Some(0.0));
    }

    #[test]
    fn hybrid_grid_shape() {
        let g = hybrid_grid(1024, 50.0);
        assert_eq!(g.len(), 1024);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 50.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
