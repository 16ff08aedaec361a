//! The one-parameter deformation from a solved Scherk-Costa surface towards a
//! half Costa surface, and checks on its Gauss map.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::param_algebra::{solve_end_cubic, EndConfiguration, GeometricParams};
use crate::periods::{c1_from_end, i1, i2};
use crate::quadrature::QuadratureConfig;
use crate::solver::SolvedSurface;
use crate::{Error, Result};

type C = Complex64;
const I: C = C::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BalanceChoice {
    C1,
    C2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyMember {
    pub s: f64,
    pub mu: f64,
    pub params: GeometricParams,
    pub end: EndConfiguration,
    pub c1: f64,
    pub c2: f64,
    /// Balance value used for the immersion.
    pub c: f64,
    pub choice: BalanceChoice,
    /// `c / lambda^2`, which tends to `mu` as `s -> 1`.
    pub c_over_lambda2: f64,
}

/// `r = r*(1 - s)`, `rho = rho*(1 - s)` and
/// `lambda = lambda*(1 - s) + s (2 r mu)^{-2/3}`, with `c = min(c1, c2)` when
/// `c2 > 0` and `c1` otherwise. Requires `s` in `[0, 1)`.
pub fn deformation_family(
    solved: &SolvedSurface,
    mu: f64,
    s: f64,
    quad: &QuadratureConfig,
) -> Result<FamilyMember> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::InvalidParameter(format!("s = {s} must lie in [0, 1)")));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("mu = {mu} must be positive")));
    }
    let p0 = solved.params;
    let r = p0.r * (1.0 - s);
    let rho = p0.rho * (1.0 - s);
    let lambda = p0.lambda * (1.0 - s) + s * (2.0 * r * mu).powf(-2.0 / 3.0);
    let params = GeometricParams::new(rho, lambda, r)?;
    let end = solve_end_cubic(&params)?;
    let c1 = c1_from_end(&params, &end);
    let j1 = i1(&params, &end, quad).value;
    let j2 = i2(&params, &end, quad).value;
    let c2 = j1 / j2;
    let (c, choice) = if c2 > 0.0 && c2 < c1 { (c2, BalanceChoice::C2) } else { (c1, BalanceChoice::C1) };
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::NoSolution(format!("no positive balance value at s = {s}, mu = {mu}")));
    }
    Ok(FamilyMember { s, mu, params, end, c1, c2, c, choice, c_over_lambda2: c / (lambda * lambda) })
}

impl FamilyMember {
    /// `g^2 = c P(z) / (z + i lambda)^2`.
    pub fn gauss_squared(&self, z: C) -> C {
        let s = self.params.rho.sin();
        let p = -I * z * z * z - 2.0 * s * z * z + I * z;
        let m = z + I * self.params.lambda;
        self.c * p / (m * m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionSample {
    pub samples: usize,
    pub min_abs_g: f64,
    pub max_abs_g: f64,
    /// Samples on the wrong side of `|g| = 1`.
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaussRegionReport {
    pub kappa: f64,
    /// Disc of radius `1/kappa` about `z = 1`, where `|g| < 1` is expected.
    pub near_branch: RegionSample,
    /// `Re z >= 0`, `Im z < -kappa`, cut off at `|Re z|, |Im z| <= extent`;
    /// `|g| > 1` is expected there.
    pub lower_strip: RegionSample,
    pub extent: f64,
    /// Sup over `|z| <= 2` of `|g^2 - 2 i mu^2 z (z^2 - 1)|`.
    pub sup_diff_stated_limit: f64,
    /// Sup over `|z| <= 2` of `|g^2 - i mu z (z^2 - 1)|`.
    pub sup_diff_derived_limit: f64,
}

impl GaussRegionReport {
    pub fn passed(&self) -> bool {
        self.near_branch.violations == 0 && self.lower_strip.violations == 0
    }
}

fn sample<F: Fn(C) -> bool>(m: &FamilyMember, n: usize, lo: C, hi: C, inside: F, want_small: bool) -> RegionSample {
    let mut out = RegionSample { samples: 0, min_abs_g: f64::INFINITY, max_abs_g: 0.0, violations: 0 };
    for a in 0..n {
        for b in 0..n {
            let z = C::new(
                lo.re + (hi.re - lo.re) * (a as f64 + 0.5) / n as f64,
                lo.im + (hi.im - lo.im) * (b as f64 + 0.5) / n as f64,
            );
            if !inside(z) {
                continue;
            }
            let g = m.gauss_squared(z).norm().sqrt();
            out.samples += 1;
            out.min_abs_g = out.min_abs_g.min(g);
            out.max_abs_g = out.max_abs_g.max(g);
            if (want_small && g >= 1.0) || (!want_small && g <= 1.0) {
                out.violations += 1;
            }
        }
    }
    out
}

/// Samples `|g|` on an `n x n` grid over each region.
pub fn gauss_region_check(m: &FamilyMember, kappa: f64, n: usize) -> Result<GaussRegionReport> {
    if !(kappa > 1.0) || n < 2 {
        return Err(Error::InvalidParameter("need kappa > 1 and n >= 2".into()));
    }
    let rad = 1.0 / kappa;
    let near_branch = sample(
        m,
        n,
        C::new(1.0 - rad, -rad),
        C::new(1.0 + rad, rad),
        |z| (z - 1.0).norm() < rad,
        true,
    );
    let extent = (4.0 * m.params.lambda).max(10.0 * kappa);
    let lower_strip = sample(m, n, C::new(0.0, -extent), C::new(extent, -kappa), |z| z.im < -kappa, false);
    let mut d1 = 0.0f64;
    let mut d2 = 0.0f64;
    for a in 0..=n {
        for b in 0..=n {
            let z = C::new(-2.0 + 4.0 * a as f64 / n as f64, -2.0 + 4.0 * b as f64 / n as f64);
            if z.norm() > 2.0 {
                continue;
            }
            let g2 = m.gauss_squared(z);
            let base = z * (z * z - 1.0);
            d1 = d1.max((g2 - 2.0 * I * m.mu * m.mu * base).norm());
            d2 = d2.max((g2 - I * m.mu * base).norm());
        }
    }
    Ok(GaussRegionReport {
        kappa,
        near_branch,
        lower_strip,
        extent,
        sup_diff_stated_limit: d1,
        sup_diff_derived_limit: d2,
    })
}
