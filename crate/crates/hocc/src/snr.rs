use crate::error::{Error, Result};

/// Mean SNR, stored in linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSnr {
    value: f64,
}

impl MeanSnr {
    pub fn from_linear(value: f64) -> Result<Self> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::Domain(format!("mean SNR must be positive, got {value}")));
        }
        Ok(Self { value })
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::from_linear(10f64.powf(db / 10.0))
    }

    pub fn linear(&self) -> f64 {
        self.value
    }

    pub fn db(&self) -> f64 {
        10.0 * self.value.log10()
    }
}

/// Ordered sequence of mean-SNR points, linear units.
#[derive(Debug, Clone)]
pub struct SnrGrid {
    points: Vec<MeanSnr>,
}

impl SnrGrid {
    /// Evenly spaced grid in dB, inclusive of both endpoints.
    pub fn linspace_db(start_db: f64, stop_db: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::Domain("grid needs at least 2 points".into()));
        }
        if !(start_db < stop_db) {
            return Err(Error::Domain(format!(
                "grid start ({start_db} dB) must be below stop ({stop_db} dB)"
            )));
        }
        let step = (stop_db - start_db) / (points - 1) as f64;
        let pts = (0..points)
            .map(|i| MeanSnr::from_db(start_db + step * i as f64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points: pts })
    }

    pub fn iter(&self) -> impl Iterator<Item = &MeanSnr> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn as_slice(&self) -> &[MeanSnr] {
        &self.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_round_trip() {
        let s = MeanSnr::from_db(12.4513927829).unwrap();
        assert!((s.linear() - 17.5848747065).abs() < 1e-8);
        assert!((s.db() - 12.4513927829).abs() < 1e-10);
    }

    #[test]
    fn grid_endpoints() {
        let g = SnrGrid::linspace_db(-10.0, 40.0, 11).unwrap();
        assert_eq!(g.len(), 11);
        assert!((g.as_slice()[0].db() + 10.0).abs() < 1e-12);
        assert!((g.as_slice()[10].db() - 40.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SnrGrid::linspace_db(0.0, 10.0, 1).is_err());
        assert!(SnrGrid::linspace_db(10.0, 0.0, 5).is_err());
        assert!(MeanSnr::from_linear(0.0).is_err());
        assert!(MeanSnr::from_linear(-1.0).is_err());
    }
}
