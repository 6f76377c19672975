//! Least-squares fit of the ideal parabola to the reference sphere.

use super::{ParabolaCoeffs, ShapeError, TelescopeConstants};

/// Default midpoint-rule step (m) for the loss integral.
pub const DEFAULT_LOSS_STEP: f64 = 0.1;

/// Bracket for the quadratic coefficient search.
const BRACKET: (f64, f64) = (1e-4, 1e-2);

/// Squared vertical gap between the parabola and the lower semicircle of
/// the reference sphere, integrated across the aperture by the midpoint
/// rule with the given step.
///
/// The reflector is the lower cap, so the gap at ordinate `x` is
/// `a·x² + c + √(R² - x²)`. Deterministic for a fixed step.
pub fn loss(coeffs: &ParabolaCoeffs, constants: &TelescopeConstants, step: f64) -> f64 {
    assert!(step > 0.0, "integration step must be positive");
    let half = constants.aperture_diameter / 2.0;
    let r2 = constants.radius * constants.radius;
    let n = (2.0 * half / step).round().max(1.0) as usize;
    let dx = 2.0 * half / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let x = -half + (i as f64 + 0.5) * dx;
        let gap = coeffs.a * x * x + coeffs.c + (r2 - x * x).sqrt();
        sum += gap * gap;
    }
    sum * dx
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
///
/// Returns `(x_min, f_min)`. Assumes `f` is unimodal on the bracket.
fn golden_section_minimize(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Fits the ideal paraboloid for the given constants.
///
/// The vertex height is eliminated through the focal-length identity,
/// leaving a one-dimensional minimization of [`loss`] over the quadratic
/// coefficient, solved by deterministic golden-section search.
pub fn fit_parabola(constants: &TelescopeConstants) -> Result<ParabolaCoeffs, ShapeError> {
    constants.validate()?;
    if constants.aperture_diameter / 2.0 > constants.radius {
        return Err(ShapeError::InvalidConstants(format!(
            "aperture half-width {} exceeds sphere radius {}",
            constants.aperture_diameter / 2.0,
            constants.radius
        )));
    }

    let objective = |a: f64| {
        loss(
            &ParabolaCoeffs::from_quadratic(a, constants),
            constants,
            DEFAULT_LOSS_STEP,
        )
    };
    let (a, _) = golden_section_minimize(objective, BRACKET.0, BRACKET.1, 1e-10);

    // An interior minimum must beat both bracket ends; hitting an end
    // means the bracket does not contain the optimum.
    let margin = (BRACKET.1 - BRACKET.0) * 1e-6;
    if a - BRACKET.0 < margin || BRACKET.1 - a < margin {
        return Err(ShapeError::OptimizationFailed(format!(
            "minimum at bracket boundary (a = {a:e})"
        )));
    }

    let coeffs = ParabolaCoeffs::from_quadratic(a, constants);
    coeffs.validate(constants)?;
    Ok(coeffs)
}
