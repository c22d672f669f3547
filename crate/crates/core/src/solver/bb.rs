use crate::linalg::dot;
use crate::model::BbVariant;

/// Barzilai-Borwein curvature scalar from the secant pair `(s, y)`,
/// clamped to `[lambda_min, lambda_max]`.
///
/// Nonpositive curvature (`sᵀy ≤ 0`) and a zero step fall back to
/// `lambda_min`, i.e. the longest trial step.
pub fn bb_lambda(s: &[f64], y: &[f64], variant: BbVariant, lambda_min: f64, lambda_max: f64) -> f64 {
    debug_assert_eq!(s.len(), y.len());
    let sy = dot(s, y);
    let ss = dot(s, s);
    if sy.is_nan() || sy <= 0.0 || ss == 0.0 {
        return lambda_min;
    }
    let raw = match variant {
        BbVariant::Bb1 => sy / ss,
        BbVariant::Bb2 => dot(y, y) / sy,
    };
    if raw.is_nan() {
        return lambda_min;
    }
    raw.max(lambda_min).min(lambda_max)
}
