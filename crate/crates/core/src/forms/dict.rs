//! Dictionary between ideals and form classes.
//!
//! An integral primitive ideal [a, (b + sqrt(delta))/2] corresponds to the
//! form (a, b, (b^2 - delta)/(4a)). The induced map from ideals to form
//! classes is a group isomorphism onto the narrow class group: principal
//! ideals land on the principal class exactly when they have a generator of
//! positive norm. Taking the quotient by the flipped principal class turns
//! it into the ordinary ideal class group.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::quadfield::OIdeal;

use super::classgroup::ClassGroup;
use super::qform::QForm;
use super::FormError;

pub fn form_of_ideal(x: &OIdeal) -> Result<QForm, FormError> {
    let p = x.primitive_part();
    let too_big = || FormError::IdealTooLarge(x.to_string());
    let a = p.a().to_i64().ok_or_else(too_big)?;
    let b = p.b().to_i64().ok_or_else(too_big)?;
    let c = ((b as i128) * (b as i128) - x.delta() as i128) / (4 * a as i128);
    let c = i64::try_from(c).map_err(|_| too_big())?;
    Ok(QForm::new(a, b, c)?)
}

/// The ideal whose classes correspond to the form's. Forms with a negative
/// leading coefficient are first moved along their cycle; the result then
/// reads off directly.
pub fn ideal_of_form(f: &QForm) -> Result<OIdeal, FormError> {
    let mut g = *f;
    if g.a() < 0 {
        g = g.reduced();
        if g.a() < 0 {
            // reduced indefinite forms have a c of the opposite sign
            g = g.rho();
        }
    }
    debug_assert!(g.a() > 0);
    Ok(OIdeal::new(g.disc(), BigRational::one(), g.a(), g.b())?)
}

/// Narrow class index of a fractional ideal.
pub fn class_of_ideal(cg: &ClassGroup, x: &OIdeal) -> Result<usize, FormError> {
    if x.delta() != cg.delta() {
        return Err(FormError::DiscMismatch(x.delta(), cg.delta()));
    }
    cg.class_of_form(&form_of_ideal(x)?)
}
