//! Exact wet-bed dam-break (Stoker) solution: left rarefaction, constant
//! middle state and right-moving shock.

use crate::error::SolverError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DamBreakProblem {
    pub h_l: f64,
    pub h_r: f64,
    pub g: f64,
    /// Dam position (m).
    pub x0: f64,
}

/// Solved problem, ready for sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokerSolution {
    pub problem: DamBreakProblem,
    pub h_m: f64,
    pub u_m: f64,
    /// Shock speed (m/s).
    pub shock_speed: f64,
}

/// Velocity behind a left rarefaction connecting `h_l` (at rest) to `h`.
#[inline]
pub fn rarefaction_velocity(h_l: f64, h: f64, g: f64) -> f64 {
    2.0 * ((g * h_l).sqrt() - (g * h).sqrt())
}

/// Velocity behind a right-moving shock into `h_r` (at rest) with depth `h`.
#[inline]
pub fn shock_velocity(h_r: f64, h: f64, g: f64) -> f64 {
    (h - h_r) * (g * (h + h_r) / (2.0 * h * h_r)).sqrt()
}

impl DamBreakProblem {
    pub fn new(h_l: f64, h_r: f64, g: f64, x0: f64) -> Self {
        Self { h_l, h_r, g, x0 }
    }

    fn validate(&self) -> Result<(), SolverError> {
        let ok = self.h_r > 0.0 && self.h_l >= self.h_r && self.g > 0.0 && self.h_l.is_finite();
        if ok {
            Ok(())
        } else {
            Err(SolverError::InvalidDamBreak {
                h_l: self.h_l,
                h_r: self.h_r,
            })
        }
    }

    /// `(h_m, u_m)` by bisection on the rarefaction/shock matching condition.
    pub fn middle_state(&self) -> Result<(f64, f64), SolverError> {
        self.validate()?;
        let (h_l, h_r, g) = (self.h_l, self.h_r, self.g);
        if h_l == h_r {
            return Ok((h_l, 0.0));
        }
        let f = |h: f64| rarefaction_velocity(h_l, h, g) - shock_velocity(h_r, h, g);
        let (mut lo, mut hi) = (h_r, h_l);
        if !(f(lo) > 0.0 && f(hi) < 0.0) {
            return Err(SolverError::InvalidDamBreak { h_l, h_r });
        }
        while hi - lo >= 1e-13 * h_l.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h_m = 0.5 * (lo + hi);
        Ok((h_m, rarefaction_velocity(h_l, h_m, g)))
    }

    pub fn solve(&self) -> Result<StokerSolution, SolverError> {
        let (h_m, u_m) = self.middle_state()?;
        let shock_speed = if h_m > self.h_r {
            h_m * u_m / (h_m - self.h_r)
        } else {
            0.0
        };
        Ok(StokerSolution {
            problem: *self,
            h_m,
            u_m,
            shock_speed,
        })
    }

    /// Convenience: `(h, u)` at `(x, t)`. Panics if the problem is invalid.
    pub fn sample(&self, x: f64, t: f64) -> (f64, f64) {
        self.solve().expect("invalid dam-break problem").sample(x, t)
    }
}

impl StokerSolution {
    /// `(h, u)` at position `x` and time `t >= 0`.
    pub fn sample(&self, x: f64, t: f64) -> (f64, f64) {
        let p = &self.problem;
        if t <= 0.0 || p.h_l == p.h_r {
            return if x < p.x0 { (p.h_l, 0.0) } else { (p.h_r, 0.0) };
        }
        let xi = (x - p.x0) / t;
        let c_l = (p.g * p.h_l).sqrt();
        let c_m = (p.g * self.h_m).sqrt();
        if xi < -c_l {
            (p.h_l, 0.0)
        } else if xi < self.u_m - c_m {
            let s = 2.0 * c_l - xi;
            (s * s / (9.0 * p.g), 2.0 / 3.0 * (xi + c_l))
        } else if xi < self.shock_speed {
            (self.h_m, self.u_m)
        } else {
            (p.h_r, 0.0)
        }
    }

    pub fn depth(&self, x: f64, t: f64) -> f64 {
        self.sample(x, t).0
    }
}
