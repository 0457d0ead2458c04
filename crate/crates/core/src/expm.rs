//! Matrix exponential via scaling-and-squaring with a Padé(13) approximant,
//! specialized to the 9×9 augmented generator used by the propagator.
//!
//! Follows Higham, "The Scaling and Squaring Method for the Matrix
//! Exponential Revisited", SIAM J. Matrix Anal. Appl. 26(4), 2005. For the
//! well-conditioned generator matrices handled here (bounded rates, modest
//! norms after scaling) the result is accurate to machine precision, which
//! is what lets piecewise-constant segments be propagated exactly.

use nalgebra::SMatrix;

use crate::error::{Error, Result};

pub const AUG_DIM: usize = 9;
pub type Matrix9 = SMatrix<f64, AUG_DIM, AUG_DIM>;

/// Padé(13) numerator coefficients (Higham 2005, eq. 10.33).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// θ_13 from Higham 2005, Table 10.2: the largest 1-norm for which the
/// unscaled Padé(13) approximant meets double-precision accuracy.
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Matrix9) -> f64 {
    (0..AUG_DIM)
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Compute exp(A).
pub fn expm(a: &Matrix9) -> Result<Matrix9> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite entry in exponent".into()));
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings as i32);

    let mut result = pade13(&scaled)?;
    for _ in 0..squarings {
        result = result * result;
    }
    Ok(result)
}

fn pade13(a: &Matrix9) -> Result<Matrix9> {
    let eye = Matrix9::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a2 * a4;

    let u_inner = a6 * (a6 * PADE13[13] + a4 * PADE13[11] + a2 * PADE13[9])
        + a6 * PADE13[7]
        + a4 * PADE13[5]
        + a2 * PADE13[3]
        + eye * PADE13[1];
    let u = a * u_inner;

    let v = a6 * (a6 * PADE13[12] + a4 * PADE13[10] + a2 * PADE13[8])
        + a6 * PADE13[6]
        + a4 * PADE13[4]
        + a2 * PADE13[2]
        + eye * PADE13[0];

    // exp(A) ≈ (V − U)⁻¹ (V + U)
    let denom = v - u;
    let numer = v + u;
    denom
        .lu()
        .solve(&numer)
        .ok_or_else(|| Error::Numerical("singular Padé denominator".into()))
}
