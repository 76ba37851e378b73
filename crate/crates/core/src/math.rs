// Thin wrappers so the numeric code reads like std f64 code.

pub const SQRT3: f64 = 1.732_050_807_568_877_2;
pub const FRAC_1_SQRT3: f64 = 0.577_350_269_189_625_8;
/// 3^(1/4)
pub const QUARTIC_ROOT3: f64 = 1.316_074_012_952_492_4;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}
