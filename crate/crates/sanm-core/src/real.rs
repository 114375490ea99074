use core::fmt::{Debug, Display};
use core::iter::Sum;

/// Floating-point scalar for the control and simulation math: `f32` or `f64`.
pub trait Real:
    num_traits::Float + num_traits::FromPrimitive + Debug + Display + Sum + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}
