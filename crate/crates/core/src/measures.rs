//! Finite positive Borel measures on bounded domains, with ball-mass
//! queries and empirical certificates for the ball growth condition
//! ν(B(x,r)) ≤ C'_d rᵈ and the matching non-degeneracy lower bound at a
//! point.

use crate::grid::{dist, norm, BoundingBox, GridFunction};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

/// Relative slack on certificate comparisons; grid discretization error
/// dominates everything else at desk scale.
pub const CERT_TOL: f64 = 0.05;

/// Index offset into the Halton sequence; fixed so certificates are
/// reproducible run to run.
pub const HALTON_OFFSET: usize = 1000;

/// Bounded open domain Ω, carried as a membership predicate plus a
/// bounding box.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainShape {
    Ball { center: Vec<f64>, radius: f64 },
    Annulus { center: Vec<f64>, inner: f64, outer: f64 },
    Box,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub bbox: BoundingBox,
    pub shape: DomainShape,
}

impl Domain {
    /// Ball of radius `r` about the origin, boxed tightly.
    pub fn ball(n: usize, r: f64) -> Self {
        Domain {
            bbox: BoundingBox::centered_cube(n, r),
            shape: DomainShape::Ball {
                center: vec![0.0; n],
                radius: r,
            },
        }
    }

    pub fn annulus(n: usize, inner: f64, outer: f64) -> Self {
        Domain {
            bbox: BoundingBox::centered_cube(n, outer),
            shape: DomainShape::Annulus {
                center: vec![0.0; n],
                inner,
                outer,
            },
        }
    }

    pub fn cube(n: usize, half: f64) -> Self {
        Domain {
            bbox: BoundingBox::centered_cube(n, half),
            shape: DomainShape::Box,
        }
    }

    pub fn dim(&self) -> usize {
        self.bbox.dim()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if !self.bbox.contains(x) {
            return false;
        }
        match &self.shape {
            DomainShape::Ball { center, radius } => dist(x, center) < *radius,
            DomainShape::Annulus {
                center,
                inner,
                outer,
            } => {
                let r = dist(x, center);
                r > *inner && r < *outer
            }
            DomainShape::Box => true,
        }
    }
}

/// Weighted point mass.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub point: Vec<f64>,
    pub weight: f64,
}

/// Finite positive measure: either a list of atoms or a nonnegative grid
/// density integrated against Lebesgue cell volume.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureData {
    Atoms(Vec<Atom>),
    GridDensity(GridFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadonMeasure {
    pub data: MeasureData,
    pub total_mass: f64,
    /// Smallest spatial scale the representation resolves (cell size for
    /// densities, lattice spacing for discretized lower-dimensional
    /// measures); 0 means the measure is exact as given.
    pub resolution: f64,
}

impl RadonMeasure {
    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.iter().any(|a| a.weight < 0.0 || !a.weight.is_finite()) {
            return Err(Error::Domain("atom weights must be nonnegative"));
        }
        let weights: Vec<f64> = atoms.iter().map(|a| a.weight).collect();
        let total_mass = crate::quad::pairwise_sum(&weights);
        Ok(RadonMeasure {
            data: MeasureData::Atoms(atoms),
            total_mass,
            resolution: 0.0,
        })
    }

    pub fn from_density(density: GridFunction) -> Result<Self> {
        if density.values.iter().any(|v| *v < 0.0 || !v.is_finite()) {
            return Err(Error::Domain("density must be nonnegative and finite"));
        }
        let vol = density.cell_volume();
        let scaled: Vec<f64> = density.values.iter().map(|v| v * vol).collect();
        let total_mass = crate::quad::pairwise_sum(&scaled);
        let resolution = density.h;
        Ok(RadonMeasure {
            data: MeasureData::GridDensity(density),
            total_mass,
            resolution,
        })
    }

    pub fn with_resolution(mut self, h: f64) -> Self {
        self.resolution = h;
        self
    }

    pub fn dim(&self) -> usize {
        match &self.data {
            MeasureData::Atoms(a) => a.first().map_or(0, |at| at.point.len()),
            MeasureData::GridDensity(g) => g.dim(),
        }
    }

    /// ν(B(x, r)). Atoms inside the closed ball count fully; grid cells
    /// count by center membership (no partial-cell clipping).
    pub fn ball_mass(&self, x: &[f64], r: f64) -> f64 {
        match &self.data {
            MeasureData::Atoms(atoms) => atoms
                .iter()
                .filter(|a| dist(&a.point, x) <= r)
                .map(|a| a.weight)
                .sum(),
            MeasureData::GridDensity(g) => {
                let vol = g.cell_volume();
                let mut c = vec![0.0; g.dim()];
                let mut acc = 0.0;
                for (idx, v) in g.values.iter().enumerate() {
                    if *v == 0.0 {
                        continue;
                    }
                    g.center_of(idx, &mut c);
                    if dist(&c, x) <= r {
                        acc += v * vol;
                    }
                }
                acc
            }
        }
    }

    /// Support points with weights, for integration against the measure.
    pub fn support_iter(&self) -> SupportIter<'_> {
        SupportIter {
            measure: self,
            idx: 0,
            buf: vec![0.0; self.dim().max(1)],
        }
    }

    /// Smallest radius at which ball queries are meaningful.
    pub fn query_scale(&self, domain_diam: f64) -> f64 {
        if self.resolution > 0.0 {
            self.resolution
        } else {
            domain_diam / 512.0
        }
    }

    /// Support points with the largest weights; certificates probe these
    /// in addition to low-discrepancy centers, since growth violations
    /// concentrate where the measure does.
    pub fn heaviest_points(&self, count: usize) -> Vec<Vec<f64>> {
        let mut pts: Vec<(f64, Vec<f64>)> = Vec::new();
        match &self.data {
            MeasureData::Atoms(atoms) => {
                for a in atoms {
                    pts.push((a.weight, a.point.clone()));
                }
            }
            MeasureData::GridDensity(g) => {
                let mut c = vec![0.0; g.dim()];
                for (idx, v) in g.values.iter().enumerate() {
                    if *v > 0.0 {
                        g.center_of(idx, &mut c);
                        pts.push((*v, c.clone()));
                    }
                }
            }
        }
        pts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        pts.truncate(count);
        pts.into_iter().map(|(_, p)| p).collect()
    }
}

/// Iterator over (point, weight) pairs of the support.
pub struct SupportIter<'a> {
    measure: &'a RadonMeasure,
    idx: usize,
    buf: Vec<f64>,
}

impl<'a> SupportIter<'a> {
    /// Visit every support point; `f(point, weight)`.
    pub fn for_each<F: FnMut(&[f64], f64)>(mut self, mut f: F) {
        match &self.measure.data {
            MeasureData::Atoms(atoms) => {
                for a in atoms {
                    f(&a.point, a.weight);
                }
            }
            MeasureData::GridDensity(g) => {
                let vol = g.cell_volume();
                for (idx, v) in g.values.iter().enumerate() {
                    if *v == 0.0 {
                        continue;
                    }
                    self.idx = idx;
                    g.center_of(idx, &mut self.buf);
                    f(&self.buf, v * vol);
                }
            }
        }
    }
}

/// Lebesgue measure restricted to Ω, discretized at cell size `h`.
pub fn make_lebesgue(domain: &Domain, h: f64) -> Result<RadonMeasure> {
    let g = GridFunction::from_fn(domain.bbox.clone(), h, |x| {
        if domain.contains(x) {
            1.0
        } else {
            0.0
        }
    })?;
    RadonMeasure::from_density(g)
}

/// Codimension-one slice: the (n-1)-dimensional Hausdorff measure on the
/// hyperplane {x_axis = offset} ∩ Ω, discretized as atoms of weight h^{n-1}.
pub fn make_hyperplane(domain: &Domain, h: f64, axis: usize, offset: f64) -> Result<RadonMeasure> {
    let n = domain.dim();
    if n < 2 || axis >= n {
        return Err(Error::Domain("hyperplane axis out of range"));
    }
    let template = GridFunction::zeros(domain.bbox.clone(), h)?;
    let mut atoms = Vec::new();
    let weight = h.powi(n as i32 - 1);
    // iterate over the (n-1)-dim lattice orthogonal to `axis`
    let mut reduced_dims: Vec<usize> = template.dims.clone();
    reduced_dims.remove(axis);
    let total: usize = reduced_dims.iter().product();
    for flat in 0..total {
        let mut rem = flat;
        let mut point = vec![0.0; n];
        for j in (0..n).rev() {
            if j == axis {
                continue;
            }
            let dims_j = reduced_dims[if j < axis { j } else { j - 1 }];
            let i = rem % dims_j;
            rem /= dims_j;
            point[j] = domain.bbox.lo[j] + (i as f64 + 0.5) * h;
        }
        point[axis] = offset;
        if domain.contains(&point) {
            atoms.push(Atom {
                point,
                weight,
            });
        }
    }
    if atoms.is_empty() {
        return Err(Error::Domain("hyperplane does not meet the domain"));
    }
    Ok(RadonMeasure::from_atoms(atoms)?.with_resolution(h))
}

/// Measure with density (d/(nω_n))|x|^{d-n}, normalized so that in the
/// continuum ν(B(0,r)) = rᵈ exactly; growth dimension d with C'_d ≈ 1 and
/// non-degeneracy at the origin.
pub fn make_radial_power(domain: &Domain, h: f64, d: f64) -> Result<RadonMeasure> {
    let n = domain.dim();
    if !(d > 0.0 && d <= n as f64) {
        return Err(Error::Domain("growth dimension must lie in (0, n]"));
    }
    let omega = crate::constants::unit_ball_volume(n)?;
    let coeff = d / (n as f64 * omega);
    let g = GridFunction::from_fn(domain.bbox.clone(), h, |x| {
        if domain.contains(x) {
            coeff * norm(x).powf(d - n as f64)
        } else {
            0.0
        }
    })?;
    RadonMeasure::from_density(g)
}

/// Halton low-discrepancy point in [0,1)ⁿ at the given index.
pub fn halton_point(index: usize, n: usize, out: &mut [f64]) {
    const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    for (j, slot) in out.iter_mut().enumerate().take(n) {
        let base = PRIMES[j % PRIMES.len()];
        let mut f = 1.0;
        let mut r = 0.0;
        let mut i = index + 1;
        while i > 0 {
            f /= base as f64;
            r += f * (i % base) as f64;
            i /= base;
        }
        *slot = r;
    }
}

/// Certificate for the upper ball-growth bound ν(B(x,r)) ≤ C'_d rᵈ.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCertificate {
    pub d: f64,
    pub c_d_prime: f64,
    /// sup over sampled (x, r) of ν(B(x,r)) / rᵈ.
    pub worst_ratio: f64,
    pub sample_count: usize,
    pub passed: bool,
}

/// Evaluate the growth ratio over a deterministic Halton set of centers
/// (plus the heaviest support points) and log-spaced radii in
/// [resolution, diam(Ω)].
///
/// Ratios compare against the inflated radius r + (√n/2)·resolution: a
/// density sampled at cell centers can overfill a queried ball by exactly
/// that margin, and without the correction every discretized measure fails
/// its own growth law at r ≈ h.
pub fn certify_growth(
    nu: &RadonMeasure,
    domain: &Domain,
    d: f64,
    c_d_prime: f64,
    samples: usize,
) -> Result<GrowthCertificate> {
    if samples < 1 {
        return Err(Error::Domain("need at least one sample center"));
    }
    let n = domain.dim();
    let diam = domain.bbox.diameter();
    let r_min = nu.query_scale(diam);
    let fat = 0.5 * (n as f64).sqrt() * nu.resolution;
    let n_radii = 16usize;
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(samples + 8);
    let mut u = vec![0.0; n];
    for s in 0..samples {
        halton_point(HALTON_OFFSET + s, n, &mut u);
        let mut x = vec![0.0; n];
        for j in 0..n {
            x[j] = domain.bbox.lo[j] + u[j] * (domain.bbox.hi[j] - domain.bbox.lo[j]);
        }
        centers.push(x);
    }
    centers.extend(nu.heaviest_points(8));
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    for x in &centers {
        for i in 0..n_radii {
            let t = i as f64 / (n_radii - 1) as f64;
            let r = r_min * (diam / r_min).powf(t);
            let ratio = nu.ball_mass(x, r) / (r + fat).powf(d);
            count += 1;
            if ratio > worst {
                worst = ratio;
            }
        }
    }
    Ok(GrowthCertificate {
        d,
        c_d_prime,
        worst_ratio: worst,
        sample_count: count,
        passed: worst <= c_d_prime * (1.0 + CERT_TOL),
    })
}

/// Certificate for the matching lower bound ν(B(x₀,ϱ) ∩ Ω) ≥ C₀ ϱᵈ on
/// ϱ ≤ ϱ₀; C₀ is set to the observed infimum.
#[derive(Debug, Clone, PartialEq)]
pub struct NonDegeneracyCertificate {
    pub x0: Vec<f64>,
    pub rho0: f64,
    pub c0: f64,
    /// inf over sampled ϱ of ν(B(x₀,ϱ)) / ϱᵈ.
    pub worst_ratio: f64,
    pub passed: bool,
}

/// Lower-bound certificate; ratios compare against the deflated radius
/// ϱ − (√n/2)·resolution, the mirror image of the growth-side correction.
pub fn certify_nondegeneracy(
    nu: &RadonMeasure,
    domain: &Domain,
    x0: &[f64],
    rho0: f64,
    d: f64,
) -> Result<NonDegeneracyCertificate> {
    let n = domain.dim();
    let diam = domain.bbox.diameter();
    let h = nu.query_scale(diam);
    if rho0 <= h {
        return Err(Error::Domain("rho0 must exceed the measure resolution"));
    }
    let lo = 2.0 * h;
    let slim = 0.5 * (n as f64).sqrt() * nu.resolution;
    let n_radii = 16usize;
    let mut worst = f64::INFINITY;
    for i in 0..n_radii {
        let t = i as f64 / (n_radii - 1) as f64;
        let rho = lo * (rho0 / lo).powf(t);
        let eff = (rho - slim).max(0.25 * rho);
        let ratio = nu.ball_mass(x0, rho) / eff.powf(d);
        if ratio < worst {
            worst = ratio;
        }
    }
    let c0 = if worst.is_finite() { worst } else { 0.0 };
    Ok(NonDegeneracyCertificate {
        x0: x0.to_vec(),
        rho0,
        c0,
        worst_ratio: c0,
        passed: c0 > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::unit_ball_volume;

    #[test]
    fn lebesgue_ball_mass_matches_volume() {
        let dom = Domain::ball(2, 1.0);
        let nu = make_lebesgue(&dom, 1.0 / 64.0).unwrap();
        let omega = unit_ball_volume(2).unwrap();
        let m = nu.ball_mass(&[0.0, 0.0], 1.0);
        assert!((m - omega).abs() / omega < 0.02, "mass {m} vs {omega}");
        assert!((nu.total_mass - omega).abs() / omega < 0.02);
    }

    #[test]
    fn zero_radius_ball_is_empty_for_grid_density() {
        let dom = Domain::ball(2, 1.0);
        let nu = make_lebesgue(&dom, 1.0 / 16.0).unwrap();
        assert_eq!(nu.ball_mass(&[0.3, 0.2], 0.0), 0.0);
    }

    #[test]
    fn hyperplane_mass_matches_lower_dimensional_ball() {
        // n = 3: slice is 2-dimensional, mass of B(x, r) ∩ plane ≈ ω₂ r²
        let dom = Domain::ball(3, 1.0);
        let nu = make_hyperplane(&dom, 1.0 / 48.0, 2, 0.0).unwrap();
        let omega2 = unit_ball_volume(2).unwrap();
        let r = 0.5;
        let m = nu.ball_mass(&[0.0, 0.0, 0.0], r);
        let expect = omega2 * r * r;
        assert!((m - expect).abs() / expect < 0.02, "mass {m} vs {expect}");
    }

    #[test]
    fn radial_power_centered_mass_is_r_to_d() {
        let dom = Domain::ball(2, 1.0);
        let d = 1.5;
        let nu = make_radial_power(&dom, 1.0 / 128.0, d).unwrap();
        for r in [0.1, 0.3, 0.6, 1.0] {
            let m = nu.ball_mass(&[0.0, 0.0], r);
            let expect = r.powf(d);
            assert!(
                (m - expect).abs() / expect < 0.03,
                "r={r}: mass {m} vs {expect}"
            );
        }
    }

    #[test]
    fn lebesgue_growth_certificates() {
        let dom = Domain::ball(2, 1.0);
        let nu = make_lebesgue(&dom, 1.0 / 64.0).unwrap();
        let omega = unit_ball_volume(2).unwrap();
        let n = 2.0;
        // at d = n with C' = ω_n the certificate passes
        let cert = certify_growth(&nu, &dom, n, omega, 64).unwrap();
        assert!(cert.passed, "worst ratio {}", cert.worst_ratio);
        // d < n passes with the diameter-corrected constant
        let d = n / 2.0;
        let diam = dom.bbox.diameter();
        let cert2 = certify_growth(&nu, &dom, d, omega * diam.powf(n - d), 64).unwrap();
        assert!(cert2.passed);
        // d > n fails as r → 0
        let cert3 = certify_growth(&nu, &dom, 2.5, omega, 64).unwrap();
        assert!(!cert3.passed, "worst ratio {}", cert3.worst_ratio);
    }

    #[test]
    fn radial_power_certified_at_its_own_dimension_only() {
        let dom = Domain::ball(2, 1.0);
        let nu = make_radial_power(&dom, 1.0 / 128.0, 1.2).unwrap();
        let cert = certify_growth(&nu, &dom, 1.2, 1.5, 64).unwrap();
        assert!(cert.passed, "worst ratio {}", cert.worst_ratio);
        let cert_wrong = certify_growth(&nu, &dom, 1.4, 1.5, 64).unwrap();
        assert!(!cert_wrong.passed, "worst ratio {}", cert_wrong.worst_ratio);
    }

    #[test]
    fn nondegeneracy_certificates() {
        let dom = Domain::ball(2, 1.0);
        let nu = make_lebesgue(&dom, 1.0 / 64.0).unwrap();
        let omega = unit_ball_volume(2).unwrap();
        let cert = certify_nondegeneracy(&nu, &dom, &[0.0, 0.0], 0.5, 2.0).unwrap();
        assert!(cert.passed);
        assert!((cert.c0 - omega).abs() / omega < 0.10, "c0 {}", cert.c0);

        // off-plane center with ϱ₀ below the offset distance: empty balls
        let nu_h = make_hyperplane(&dom, 1.0 / 64.0, 1, 0.0).unwrap();
        let cert2 = certify_nondegeneracy(&nu_h, &dom, &[0.0, 0.5], 0.3, 1.0).unwrap();
        assert!(!cert2.passed);
        assert_eq!(cert2.c0, 0.0);

        let nu_r = make_radial_power(&dom, 1.0 / 128.0, 1.2).unwrap();
        let cert3 = certify_nondegeneracy(&nu_r, &dom, &[0.0, 0.0], 0.5, 1.2).unwrap();
        assert!(cert3.passed);
        assert!((cert3.c0 - 1.0).abs() < 0.05, "c0 {}", cert3.c0);
    }

    #[test]
    fn atom_ball_masses_are_additive_and_scale() {
        let atoms_left = vec![
            Atom {
                point: vec![-0.5, 0.0],
                weight: 1.0,
            },
            Atom {
                point: vec![-0.25, 0.1],
                weight: 2.0,
            },
        ];
        let atoms_right = vec![Atom {
            point: vec![0.5, 0.0],
            weight: 3.0,
        }];
        let mut both = atoms_left.clone();
        both.extend(atoms_right.clone());
        let nu_l = RadonMeasure::from_atoms(atoms_left).unwrap();
        let nu_r = RadonMeasure::from_atoms(atoms_right).unwrap();
        let nu = RadonMeasure::from_atoms(both).unwrap();
        for r in [0.2, 0.6, 1.5] {
            let x = [0.0, 0.0];
            assert_eq!(nu.ball_mass(&x, r), nu_l.ball_mass(&x, r) + nu_r.ball_mass(&x, r));
        }

        let dom = Domain::ball(2, 1.0);
        let base = make_lebesgue(&dom, 1.0 / 32.0).unwrap();
        let lambda = 2.75;
        let scaled = match &base.data {
            MeasureData::GridDensity(g) => {
                let mut g2 = g.clone();
                for v in &mut g2.values {
                    *v *= lambda;
                }
                RadonMeasure::from_density(g2).unwrap()
            }
            _ => unreachable!(),
        };
        for r in [0.1, 0.5, 0.9] {
            let a = base.ball_mass(&[0.2, -0.1], r);
            let b = scaled.ball_mass(&[0.2, -0.1], r);
            assert!((b - lambda * a).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}
