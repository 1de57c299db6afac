//! Deterministic text rendering of exact values: fractions as
//! "num/den", decimals at 15 significant digits with round-half-even,
//! and base-2 logarithms of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// "num/den" in lowest terms; integers render without the "/1".
pub fn fraction(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

const SIGNIFICANT_DIGITS: u32 = 15;

/// Decimal rendering at 15 significant digits, round-half-even, fixed
/// notation for moderate exponents and scientific otherwise. The output
/// is a pure function of the value, so emitted files are reproducible
/// byte-for-byte.
pub fn decimal(value: &BigRational) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();
    let (digits, exponent) = significant_digits(&magnitude);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent >= SIGNIFICANT_DIGITS as i64 || exponent < -5 {
        // scientific: d.dddddddddddddde<exp>
        out.push_str(&digits[0..1]);
        out.push('.');
        out.push_str(&digits[1..]);
        out.push('e');
        out.push_str(&exponent.to_string());
    } else if exponent >= 0 {
        let point = exponent as usize + 1;
        out.push_str(&digits[..point]);
        out.push('.');
        out.push_str(&digits[point..]);
    } else {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// First 15 significant digits of a positive rational plus the exponent
/// e with 10^e <= value < 10^{e+1} (adjusted if rounding carries over).
fn significant_digits(value: &BigRational) -> (String, i64) {
    let ten = BigInt::from(10);
    let numer = value.numer();
    let denom = value.denom();
    // initial exponent estimate from digit counts, then correct
    let mut exponent = decimal_digits(numer) as i64 - decimal_digits(denom) as i64;
    loop {
        // 10^exponent <= value  <=>  numer >= denom * 10^exponent
        let holds = if exponent >= 0 {
            numer >= &(denom * ten.pow(exponent as u32))
        } else {
            &(numer * ten.pow(-exponent as u32)) >= denom
        };
        if holds {
            break;
        }
        exponent -= 1;
    }
    while {
        let next = exponent + 1;
        if next >= 0 {
            numer >= &(denom * ten.pow(next as u32))
        } else {
            &(numer * ten.pow(-next as u32)) >= denom
        }
    } {
        exponent += 1;
    }
    // round value / 10^{exponent - 14} half-even to an integer
    let shift = exponent - (SIGNIFICANT_DIGITS as i64 - 1);
    let (num_scaled, den_scaled) = if shift <= 0 {
        (numer * ten.pow(-shift as u32), denom.clone())
    } else {
        (numer.clone(), denom * ten.pow(shift as u32))
    };
    let (mut quotient, remainder) = num_scaled.div_rem(&den_scaled);
    let twice: BigInt = &remainder * 2;
    let round_up = match twice.cmp(&den_scaled) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => quotient.is_odd(),
        std::cmp::Ordering::Less => false,
    };
    if round_up {
        quotient += 1;
    }
    let mut digits = quotient.to_string();
    if digits.len() as u32 > SIGNIFICANT_DIGITS {
        // rounding carried 999.. over to 1000..: drop the excess zero
        digits.truncate(SIGNIFICANT_DIGITS as usize);
        exponent += 1;
    }
    (digits, exponent)
}

fn decimal_digits(value: &BigInt) -> usize {
    value.to_string().trim_start_matches('-').len()
}

/// log2 of a positive exact rational, as f64, accurate to the top 53
/// bits of numerator and denominator.
pub fn log2_rational(value: &BigRational) -> f64 {
    assert!(value.is_positive(), "log2 of a non-positive value");
    log2_bigint(value.numer()) - log2_bigint(value.denom())
}

fn log2_bigint(value: &BigInt) -> f64 {
    let bits = value.bits();
    if bits <= 53 {
        return value.to_f64().expect("small BigInt converts").log2();
    }
    let shift = bits - 53;
    let top: BigInt = value >> shift;
    top.to_f64().expect("53-bit value converts").log2() + shift as f64
}
