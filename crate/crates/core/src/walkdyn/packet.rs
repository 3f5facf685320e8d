//! Wave-packet asymptotics of the chain occupations.

use super::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::math;

/// Largest odd integer not larger than `x ≥ 1`.
pub fn x_odd(x: u64) -> u64 {
    x - ((x + 1) % 2)
}

/// `f(t, x) = 4x²/(λt)² · J_x(λt)²`, the large-chain approximation of
/// `|c(t, x; s)|²` before the packet reaches the far end.
pub fn bessel_packet(t: f64, x: u32, lambda: f64) -> Result<f64> {
    let z = lambda * t;
    if z.is_nan() || z <= 0.0 || x == 0 {
        return Err(Error::InvalidParameter(
            "packet needs x >= 1 and λt > 0".into(),
        ));
    }
    let j = bessel_j(x, z)?;
    let xf = x as f64;
    Ok(4.0 * xf * xf / (z * z) * j * j)
}

/// Continuum limit `ρ(t, x)` of the packet, supported on `0 < x < λt`.
pub fn continuum_density(t: f64, x: f64, lambda: f64) -> f64 {
    let z = lambda * t;
    if !(x > 0.0 && x < z) {
        return 0.0;
    }
    4.0 * x * x / (core::f64::consts::PI * z * z * math::sqrt(z * z - x * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkdyn::chain::ChainPropagator;

    #[test]
    fn odd_floor() {
        let got: Vec<u64> = (1..=8).map(x_odd).collect();
        assert_eq!(got, vec![1, 1, 3, 3, 5, 5, 7, 7]);
    }

    #[test]
    fn packet_tracks_long_chain() {
        let lambda = 1.0;
        let p = ChainPropagator::new(129, lambda).unwrap();
        let occ = p.occupations(40.0);
        let f = bessel_packet(40.0, 10, lambda).unwrap();
        assert!((f - occ[9]).abs() < 0.01, "{f} vs {}", occ[9]);
    }

    #[test]
    fn packet_is_normalised() {
        let z = 40.0;
        let total: f64 = (1..=(z as u32 + 20)).map(|x| bessel_packet(z, x, 1.0).unwrap()).sum();
        assert!((0.95..=1.05).contains(&total), "{total}");
    }

    #[test]
    fn packet_vanishes_beyond_the_front() {
        for z in [10.0, 20.0, 40.0] {
            for x in (2.0 * z) as u32..(2.0 * z) as u32 + 30 {
                assert!(bessel_packet(z, x, 1.0).unwrap() < 1e-6);
            }
        }
        assert!(bessel_packet(0.0, 3, 1.0).is_err());
    }

    /// Composite Simpson on the substitution x = a sin u, which removes the
    /// edge singularity.
    fn integrate_density(t: f64, lambda: f64) -> f64 {
        let a = lambda * t;
        let n = 2000;
        let h = core::f64::consts::FRAC_PI_2 / n as f64;
        let g = |u: f64| {
            let x = a * u.sin();
            if x <= 0.0 || x >= a {
                // integrand in u is (4/π) sin²u, finite at both ends
                return 4.0 / core::f64::consts::PI * u.sin().powi(2);
            }
            continuum_density(t, x, lambda) * a * u.cos()
        };
        let mut s = g(0.0) + g(core::f64::consts::FRAC_PI_2);
        for i in 1..n {
            s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn density_is_normalised_and_vanishes_at_the_origin() {
        for (t, lambda) in [(10.0, 1.0), (3.0, 2.5)] {
            assert!((integrate_density(t, lambda) - 1.0).abs() < 1e-9);
        }
        assert!(continuum_density(10.0, 1e-9, 1.0) < 1e-18);
        assert_eq!(continuum_density(10.0, 10.0, 1.0), 0.0);
        assert_eq!(continuum_density(10.0, -1.0, 1.0), 0.0);
    }

    #[test]
    fn density_at_half_the_front() {
        let (t, lambda) = (7.0, 1.3);
        let z = lambda * t;
        let want = 2.0 / (3f64.sqrt() * core::f64::consts::PI * z);
        assert!((continuum_density(t, z / 2.0, lambda) - want).abs() < 1e-15);
    }
}
