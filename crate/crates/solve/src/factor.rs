//! Right-division checks between operators with fraction coefficients.

use dmod_core::ore::OreOp;
use dmod_core::scalar::Scalar;
use dmod_core::weyl::WeylOp;
use dmod_core::Error;

/// Right-divide `big` by `small` over rational-function coefficients and
/// report the quotient together with the remainder's coefficient norm —
/// exactly zero when `small` is a right factor on the nose, and a small
/// float when the inputs carry rounded scalars.
pub fn right_factor_residual(big: &WeylOp, small: &WeylOp) -> Result<(OreOp, Scalar), Error> {
    let b = OreOp::from_weyl(big)?;
    let s = OreOp::from_weyl(small)?;
    let (q, r) = b.right_divide(&s)?;
    Ok((q, r.coeff_norm()))
}
