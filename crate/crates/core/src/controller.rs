//! Five-interval joint setpoint controller.
//!
//! Lengths are in metres, speeds in metres per second. With `e = target -
//! position` the commanded speed is full `vel` far from the target, `vel / 2`
//! inside the slow band, and zero inside the accuracy dead band.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig {
    /// Dead-band half width.
    pub accuracy: f64,
    /// Errors up to this magnitude are driven at half speed.
    pub slow_band: f64,
    pub vel: f64,
    /// Step of the test plant used by [`settle`].
    pub dt: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig { accuracy: 50e-6, slow_band: 500e-6, vel: 0.01, dt: 0.005 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ControllerError {
    #[error("need 0 < accuracy < slow_band, got accuracy {accuracy} and slow_band {slow_band}")]
    Bands { accuracy: f64, slow_band: f64 },
    #[error("vel and dt must be positive and finite, got vel {vel} and dt {dt}")]
    Rate { vel: f64, dt: f64 },
    #[error("vel*dt = {step} must be below 2*accuracy = {limit}")]
    Overshoot { step: f64, limit: f64 },
    #[error("position and target must be finite")]
    NonFinite,
}

impl ControllerConfig {
    pub fn validate(&self) -> Result<(), ControllerError> {
        let ordered = self.accuracy > 0.0 && self.accuracy < self.slow_band && self.slow_band.is_finite();
        if !ordered {
            return Err(ControllerError::Bands { accuracy: self.accuracy, slow_band: self.slow_band });
        }
        let rate_ok = self.vel > 0.0 && self.vel.is_finite() && self.dt > 0.0 && self.dt.is_finite();
        if !rate_ok {
            return Err(ControllerError::Rate { vel: self.vel, dt: self.dt });
        }
        Ok(())
    }
}

/// Commanded joint speed for the current position.
pub fn control_velocity(position: f64, target: f64, cfg: &ControllerConfig) -> Result<f64, ControllerError> {
    cfg.validate()?;
    Ok(command(target - position, cfg))
}

fn command(e: f64, cfg: &ControllerConfig) -> f64 {
    let magnitude = e.abs();
    let speed = if magnitude <= cfg.accuracy {
        return 0.0;
    } else if magnitude <= cfg.slow_band {
        cfg.vel / 2.0
    } else {
        cfg.vel
    };
    speed.copysign(e)
}

/// Drives a first-order plant `position += v * dt` until the error is inside
/// the dead band and returns the number of steps taken.
pub fn settle(start: f64, target: f64, cfg: &ControllerConfig) -> Result<usize, ControllerError> {
    settle_trace(start, target, cfg).map(|(steps, _)| steps)
}

/// Like [`settle`], also returning the final position.
pub fn settle_trace(start: f64, target: f64, cfg: &ControllerConfig) -> Result<(usize, f64), ControllerError> {
    cfg.validate()?;
    let step = cfg.vel * cfg.dt;
    let limit = 2.0 * cfg.accuracy;
    if step >= limit {
        return Err(ControllerError::Overshoot { step, limit });
    }
    if !start.is_finite() || !target.is_finite() {
        return Err(ControllerError::NonFinite);
    }
    let mut position = start;
    let mut steps = 0;
    loop {
        let v = command(target - position, cfg);
        if v == 0.0 {
            return Ok((steps, position));
        }
        position += v * cfg.dt;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals() {
        let cfg = ControllerConfig::default();
        assert_eq!(control_velocity(0.3, 0.3, &cfg), Ok(0.0));
        assert_eq!(control_velocity(0.0, 1e-3, &cfg), Ok(cfg.vel));
        assert_eq!(control_velocity(0.0, -200e-6, &cfg), Ok(-cfg.vel / 2.0));
        assert_eq!(control_velocity(0.0, 200e-6, &cfg), Ok(cfg.vel / 2.0));
        assert_eq!(control_velocity(0.0, -1e-3, &cfg), Ok(-cfg.vel));
        assert_eq!(control_velocity(0.0, 40e-6, &cfg), Ok(0.0));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = ControllerConfig { slow_band: 10e-6, ..Default::default() };
        assert!(matches!(control_velocity(0.0, 1.0, &cfg), Err(ControllerError::Bands { .. })));
        let cfg = ControllerConfig { vel: 0.0, ..Default::default() };
        assert!(matches!(control_velocity(0.0, 1.0, &cfg), Err(ControllerError::Rate { .. })));
        let cfg = ControllerConfig { vel: 0.06, dt: 0.005, ..Default::default() };
        assert!(matches!(settle(0.0, 1e-3, &cfg), Err(ControllerError::Overshoot { .. })));
    }

    #[test]
    fn settles() {
        let cfg = ControllerConfig::default();
        assert_eq!(settle(0.01, 0.01, &cfg), Ok(0));
        let (steps, end) = settle_trace(0.0, 1e-3, &cfg).unwrap();
        assert!((1e-3 - end).abs() <= cfg.accuracy);
        assert!(steps > 0);
    }
}
