use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar backing the amplitudes of a [`Statevector`](super::Statevector).
///
/// Implemented for `f32` and `f64`. Sampling always happens in `f64`, so the
/// precision of the scalar only affects gate arithmetic.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static
{
    /// Tolerance used by norm checks at this precision.
    const NORM_TOLERANCE: f64;

    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to every Scalar")
    }
}

impl Scalar for f64 {
    const NORM_TOLERANCE: f64 = 1e-12;
}

impl Scalar for f32 {
    const NORM_TOLERANCE: f64 = 1e-5;
}
