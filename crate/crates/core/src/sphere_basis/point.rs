use crate::error::{check_dim, Error, Result};
use std::f64::consts::PI;

/// A point on the unit sphere S^{d-1}, stored in Cartesian form.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    cartesian: Vec<f64>,
}

impl SpherePoint {
    /// Normalizes `v` onto the sphere. Fails on the zero vector or d < 2.
    pub fn from_cartesian(v: &[f64]) -> Result<Self> {
        check_dim(v.len())?;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "cannot project {v:?} onto the sphere"
            )));
        }
        Ok(Self {
            cartesian: v.iter().map(|x| x / norm).collect(),
        })
    }

    /// Hyperspherical angles `t1..t_{d-2}` in `[0, pi]` and azimuth
    /// `t_{d-1}` in `[0, 2 pi)`.
    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        let d = angles.len() + 1;
        check_dim(d)?;
        let mut cartesian = Vec::with_capacity(d);
        let mut sines = 1.0;
        for &t in &angles[..d - 2] {
            cartesian.push(sines * t.cos());
            sines *= t.sin();
        }
        let p = angles[d - 2];
        cartesian.push(sines * p.cos());
        cartesian.push(sines * p.sin());
        Ok(Self { cartesian })
    }

    /// Unit basis vector `e_i` (1-based).
    pub fn axis(d: usize, i: usize) -> Result<Self> {
        check_dim(d)?;
        if i == 0 || i > d {
            return Err(Error::InvalidArgument(format!(
                "axis {i} out of range for d={d}"
            )));
        }
        let mut cartesian = vec![0.0; d];
        cartesian[i - 1] = 1.0;
        Ok(Self { cartesian })
    }

    pub(crate) fn from_unit_unchecked(cartesian: Vec<f64>) -> Self {
        Self { cartesian }
    }

    pub fn dim(&self) -> usize {
        self.cartesian.len()
    }

    pub fn cartesian(&self) -> &[f64] {
        &self.cartesian
    }

    /// Inverse of [`SpherePoint::from_angles`]. Angles below a pole are
    /// not determined; they come back as zero.
    pub fn angles(&self) -> Vec<f64> {
        let d = self.dim();
        let x = &self.cartesian;
        let mut suffix = vec![0.0; d + 1];
        for i in (0..d).rev() {
            suffix[i] = suffix[i + 1] + x[i] * x[i];
        }
        let mut angles: Vec<f64> = (0..d - 2)
            .map(|j| suffix[j + 1].sqrt().atan2(x[j]))
            .collect();
        let p = x[d - 1].atan2(x[d - 2]);
        angles.push(if p < 0.0 { p + 2.0 * PI } else { p });
        angles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_round_trip() {
        let angles = [0.3, 2.1, 1.2, 4.0];
        let p = SpherePoint::from_angles(&angles).unwrap();
        let norm: f64 = p.cartesian().iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        for (a, b) in p.angles().iter().zip(angles) {
            assert!((a - b).abs() < 1e-12);
        }
        let back = SpherePoint::from_angles(&p.angles()).unwrap();
        for (a, b) in back.cartesian().iter().zip(p.cartesian()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_map_in_three_dimensions() {
        let p = SpherePoint::from_angles(&[0.4, 1.0]).unwrap();
        let x = p.cartesian();
        assert!((x[0] - 0.4f64.cos()).abs() < 1e-15);
        assert!((x[1] - 0.4f64.sin() * 1.0f64.cos()).abs() < 1e-15);
        assert!((x[2] - 0.4f64.sin() * 1.0f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(SpherePoint::from_cartesian(&[0.0, 0.0, 0.0]).is_err());
        assert!(SpherePoint::from_cartesian(&[1.0]).is_err());
        assert!(SpherePoint::axis(3, 4).is_err());
    }
}
