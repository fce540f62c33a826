//! Exact scalars: arbitrary-precision rationals and complex numbers with
//! rational parts, plus the textual forms used in reports.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Scalar = Complex<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn real(r: Rational) -> Scalar {
    Complex::new(r, Rational::zero())
}

pub fn scalar(num: i64, den: i64) -> Scalar {
    real(rat(num, den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `p^e` for any integer exponent.
pub fn pow_p(p: u32, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

pub fn rational_pow(r: &Rational, e: usize) -> Rational {
    num_traits::pow(r.clone(), e)
}

/// `|re| + |im|`, an exact upper bound for the modulus.
pub fn l1_abs(z: &Scalar) -> Rational {
    z.re.abs() + z.im.abs()
}

/// `|z|²` computed exactly.
pub fn norm_sq(z: &Scalar) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Very large parts: scale both down by the same power of two.
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn to_complex64(z: &Scalar) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Parses `"num/den"` or an integer.
pub fn parse_rational(field: &str, s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::parse(field, format!("\"{s}\" is not a rational")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::parse(field, format!("\"{s}\" is not a rational")))?;
    if d.is_zero() {
        return Err(Error::parse(field, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Renders a scalar as `re`, or `re+imi` / `re-imi` when the imaginary part is nonzero.
pub fn format_scalar(z: &Scalar) -> String {
    if z.im.is_zero() {
        z.re.to_string()
    } else if z.im.is_negative() {
        format!("{}-{}i", z.re, -&z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
