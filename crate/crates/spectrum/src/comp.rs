use ttk_twisted::{CohomologyClass, TwistedElement, TwistedRing};

use crate::SpectrumError;

/// Membership in the unique maximal ideal of H*(W): everything except the
/// nonzero degree-0 classes.
pub fn is_maximal_ideal_member(c: &CohomologyClass) -> bool {
    !(c.degree == 0 && !c.is_zero())
}

/// f lies in the comparison image of the closed point at `class` iff its
/// fixed-point image there is not invertible.
pub fn comp_membership(ring: &TwistedRing, f: &TwistedElement, class: usize) -> Result<bool, SpectrumError> {
    comp_membership_with(ring, f, class, is_maximal_ideal_member)
}

/// Same test against a caller-chosen prime of H*(W_G(H)), given as a
/// membership predicate.
pub fn comp_membership_with(
    ring: &TwistedRing,
    f: &TwistedElement,
    class: usize,
    prime: impl Fn(&CohomologyClass) -> bool,
) -> Result<bool, SpectrumError> {
    let image = ring.psi_hat(f, class)?;
    Ok(prime(&image))
}
