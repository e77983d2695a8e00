use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::algebra::Phase;
use crate::error::{Error, Result};

/// Outcome of the θ = π time-reversal test for `SU(N)` Yang–Mills.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum YmVerdict {
    /// No counterterm restores time reversal (`N` even).
    Anomalous,
    /// Counterterm level `k` with `2k = N − 1`.
    Counterterm { k: u64 },
}

pub fn ym_theta_pi_anomaly(n: u64) -> Result<YmVerdict> {
    if n < 2 {
        return Err(Error::invalid("N must be at least 2"));
    }
    Ok(if n.is_multiple_of(2) {
        YmVerdict::Anomalous
    } else {
        YmVerdict::Counterterm { k: (n - 1) / 2 }
    })
}

/// Fractional part `−(N−1)·P / 2N mod 1` of the instanton number.
///
/// `P = ∫𝔓(w₂)` is taken mod `gcd(2,N)·N` (other integers are reduced,
/// which does not change the result). With `spin` set and `N` even, `P`
/// must be even.
pub fn fractional_instanton(n: u64, p: i64, spin: bool) -> Result<Phase> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let modulus = (2u64.gcd(&n) * n) as i64;
    let p = p.rem_euclid(modulus);
    if spin && n.is_multiple_of(2) && p % 2 != 0 {
        return Err(Error::invalid(format!(
            "on a spin manifold with N = {n} even, P must be even (got {p})"
        )));
    }
    Ok(Phase::new(-((n as i64 - 1) * p), 2 * n as i64))
}

fn inverse_mod(p: i64, n: u64) -> Result<u64> {
    let n_i = n as i64;
    let e = p.rem_euclid(n_i).extended_gcd(&n_i);
    if e.gcd != 1 {
        return Err(Error::invalid(format!("p = {p} is not invertible mod {n}")));
    }
    Ok(e.x.rem_euclid(n_i) as u64)
}

/// `Σ_{b,c ∈ ℤ_N} exp(2πi p⁻¹ b c / N)`, both exactly and as a direct sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussSum {
    #[serde(rename = "N")]
    pub n: u64,
    pub p: i64,
    /// From the vanishing of the inner sum unless `p⁻¹b ≡ 0`.
    pub exact: u64,
    pub direct_re: f64,
    pub direct_im: f64,
}

pub fn gauss_sum_exact(n: u64, p: i64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let pinv = inverse_mod(p, n)?;
    Ok((0..n).filter(|b| (pinv * b) % n == 0).count() as u64 * n)
}

pub fn gauss_sum_direct(n: u64, p: i64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let pinv = inverse_mod(p, n)?;
    let mut z = Complex64::new(0.0, 0.0);
    for b in 0..n {
        for c in 0..n {
            let r = (pinv * b % n) * c % n;
            z += Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / n as f64);
        }
    }
    Ok(z)
}

pub fn gauss_sum(n: u64, p: i64) -> Result<GaussSum> {
    let exact = gauss_sum_exact(n, p)?;
    let z = gauss_sum_direct(n, p)?;
    Ok(GaussSum {
        n,
        p,
        exact,
        direct_re: z.re,
        direct_im: z.im,
    })
}
