use num::{BigRational, One, Zero};

use super::check_event;
use crate::error::{Error, Result};
use crate::mass::Bba;
use crate::lattice::Proposition;

/// Dempster's rule: conjunctive products renormalized by `1 - K`.
/// Returns the combined assignment and the conflict `K`.
pub fn dempster_combine(m1: &Bba, m2: &Bba) -> Result<(Bba, BigRational)> {
    if !m1.model().same_as(m2.model()) {
        return Err(Error::ModelMismatch);
    }
    let mut conflict = BigRational::zero();
    let mut joint = Bba::new(m1.model());
    for (y, a) in m1.focals() {
        for (z, b) in m2.focals() {
            let product = a * b;
            let x = y.intersect(z)?;
            if x.is_empty() {
                conflict += product;
            } else {
                joint.add(x, product);
            }
        }
    }
    let normalizer = BigRational::one() - &conflict;
    if normalizer.is_zero() {
        return Err(Error::TotalConflict);
    }
    let mut combined = Bba::new(m1.model());
    for (x, v) in joint.focals() {
        combined.add(x.clone(), v / &normalizer);
    }
    Ok((combined, conflict))
}

/// Conditioning by combination with the point mass `m_S(A) = 1`.
pub fn scr_condition(m: &Bba, event: &Proposition) -> Result<Bba> {
    check_event(m.model(), event)?;
    let (combined, _) = dempster_combine(m, &Bba::point(event)?)?;
    Ok(combined)
}
