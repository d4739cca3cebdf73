//! Spatial deployments of base stations and users on a rectangular region.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// A point in kilometres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x_km: f64,
    pub y_km: f64,
}

impl Point {
    pub const fn new(x_km: f64, y_km: f64) -> Self {
        Self { x_km, y_km }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Region {
    pub width_km: f64,
    pub height_km: f64,
    /// Measure distances on the torus obtained by identifying opposite edges.
    pub wraparound: bool,
}

impl Default for Region {
    fn default() -> Self {
        Self {
            width_km: 1.0,
            height_km: 1.0,
            wraparound: true,
        }
    }
}

impl Region {
    pub fn new(width_km: f64, height_km: f64, wraparound: bool) -> Result<Self> {
        let region = Self {
            width_km,
            height_km,
            wraparound,
        };
        region.validate()?;
        Ok(region)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width_km.is_finite() && self.width_km > 0.0) {
            return Err(Error::param(format!("region width must be > 0, got {}", self.width_km)));
        }
        if !(self.height_km.is_finite() && self.height_km > 0.0) {
            return Err(Error::param(format!("region height must be > 0, got {}", self.height_km)));
        }
        Ok(())
    }

    pub fn area_km2(&self) -> f64 {
        self.width_km * self.height_km
    }

    pub fn contains(&self, p: Point) -> bool {
        (0.0..self.width_km).contains(&p.x_km) && (0.0..self.height_km).contains(&p.y_km)
    }

    /// Displacement from `from` to `to`, using the minimum image on a torus.
    pub fn displacement(&self, from: Point, to: Point) -> (f64, f64) {
        let mut dx = to.x_km - from.x_km;
        let mut dy = to.y_km - from.y_km;
        if self.wraparound {
            dx = min_image(dx, self.width_km);
            dy = min_image(dy, self.height_km);
        }
        (dx, dy)
    }
}

fn min_image(d: f64, period: f64) -> f64 {
    let half = 0.5 * period;
    if d > half {
        d - period
    } else if d < -half {
        d + period
    } else {
        d
    }
}

/// Euclidean distance in km; on a wraparound region this is the minimum over
/// the nine torus images of `q`.
pub fn distance(p: Point, q: Point, region: &Region) -> f64 {
    let (dx, dy) = region.displacement(p, q);
    dx.hypot(dy)
}

/// Azimuth of `to` as seen from `from`, in degrees in (-180, 180].
pub(crate) fn azimuth_deg(from: Point, to: Point, region: &Region) -> f64 {
    let (dx, dy) = region.displacement(from, to);
    dy.atan2(dx).to_degrees()
}

/// Draws a homogeneous Poisson point process of intensity `density` (per km²).
///
/// The count is Poisson(density × area) and points are i.i.d. uniform on the
/// region. The output is a pure function of `(density, region, seed)`.
pub fn deploy_ppp(density: f64, region: &Region, seed: u64) -> Result<Vec<Point>> {
    if !(density.is_finite() && density >= 0.0) {
        return Err(Error::param(format!("density must be >= 0, got {density}")));
    }
    region.validate()?;
    let mean = density * region.area_km2();
    if mean == 0.0 {
        return Ok(Vec::new());
    }
    let mut rng = rng_from_seed(seed);
    let count = Poisson::new(mean)
        .map_err(|e| Error::param(format!("poisson mean {mean}: {e}")))?
        .sample(&mut rng) as usize;
    Ok(uniform_points(count, region, &mut rng))
}

/// `count` i.i.d. uniform points on the region.
pub fn uniform_points<R: Rng + ?Sized>(count: usize, region: &Region, rng: &mut R) -> Vec<Point> {
    (0..count)
        .map(|_| {
            Point::new(
                rng.gen::<f64>() * region.width_km,
                rng.gen::<f64>() * region.height_km,
            )
        })
        .collect()
}

/// Radius in metres of a disc whose area is the mean cell area 1/density.
pub fn avg_cell_radius(density: f64) -> Result<f64> {
    if !(density.is_finite() && density > 0.0) {
        return Err(Error::param(format!("density must be > 0, got {density}")));
    }
    Ok(1000.0 / (std::f64::consts::PI * density).sqrt())
}

/// One operator's realized network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub operator_id: usize,
    pub bs_points: Vec<Point>,
    pub ue_points: Vec<Point>,
    /// Generating intensities, not realized count / area.
    pub bs_density: f64,
    pub ue_density: f64,
}
