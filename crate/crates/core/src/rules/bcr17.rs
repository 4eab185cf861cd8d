use num::{BigRational, Zero};

use super::check_event;
use crate::error::Result;
use crate::lattice::Proposition;
use crate::mass::Bba;

/// Belief conditioning rule no. 17.
///
/// For each focal `W` outside `A`:
/// - if some focal parts of `A` lie inside `W`, `m(W)` is shared among them
///   in proportion to their masses;
/// - otherwise, if `W` meets `A`, `m(W)` goes to `W ∩ A`, the largest part of
///   `A` contained in `W`;
/// - otherwise `m(W)` is shared among all focal parts of `A` in proportion
///   to their masses.
///
/// When no focal element lies inside `A`, all mass goes to `A`.
pub fn bcr17_condition(m: &Bba, event: &Proposition) -> Result<Bba> {
    check_event(m.model(), event)?;
    let a = event.regions();

    let (inside, outside): (Vec<_>, Vec<_>) = m.focals().partition(|(y, _)| y.regions().is_subset(a));
    let inside_total = inside.iter().fold(BigRational::zero(), |acc, (_, v)| acc + *v);
    if inside_total.is_zero() {
        return Bba::point(event);
    }

    // per-focal multiplier on m(X) for X inside A
    let mut factor: Vec<BigRational> = vec![BigRational::zero(); inside.len()];
    let mut disjoint_pool = BigRational::zero();
    let mut result = Bba::new(m.model());

    for (w, mass_w) in &outside {
        let contained: Vec<usize> = inside
            .iter()
            .enumerate()
            .filter(|(_, (y, _))| y.regions().is_subset(w.regions()))
            .map(|(i, _)| i)
            .collect();
        let s_w = contained.iter().fold(BigRational::zero(), |acc, &i| acc + inside[i].1);
        if !s_w.is_zero() {
            let share = *mass_w / &s_w;
            for i in contained {
                factor[i] += &share;
            }
        } else if !w.regions().is_disjoint(a) {
            result.add(w.intersect(event)?, (*mass_w).clone());
        } else {
            disjoint_pool += *mass_w;
        }
    }

    let s_d1 = (&inside_total + &disjoint_pool) / &inside_total;
    for ((x, mass_x), f) in inside.into_iter().zip(factor) {
        result.add(x.clone(), mass_x * (f + &s_d1));
    }
    Ok(result)
}
