use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number with a positive denominator in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, `p/q` and finite decimals such as `0.25`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().ok()?
        };
        let frac: BigInt = fp.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rat::new(whole * &scale + frac, scale);
        return Some(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

pub(crate) fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// open interval `(lo, hi)`; `hi = None` stands for `+infinity`.
pub fn simplest_in_open(lo: &Rat, hi: Option<&Rat>) -> Rat {
    match hi {
        Some(h) => {
            assert!(lo < h, "empty interval");
            if lo.is_negative() && h.is_positive() {
                return Rat::zero();
            }
            if !h.is_positive() {
                return -simplest_in_open(&-h, Some(&-lo));
            }
            let fl = floor(lo);
            let next = Rat::from_integer(&fl + 1);
            if &next < h {
                return next;
            }
            let flr = Rat::from_integer(fl);
            let a = lo - &flr;
            let b = h - &flr;
            // lo <= fl + a < fl + b <= fl + 1
            let inner_hi = if a.is_zero() { None } else { Some(a.recip()) };
            let inner = simplest_in_open(&b.recip(), inner_hi.as_ref());
            flr + inner.recip()
        }
        None => {
            if lo.is_negative() {
                return Rat::zero();
            }
            Rat::from_integer(floor(lo) + 1)
        }
    }
}

/// Simplest rational in the closed interval `[lo, hi]`.
pub fn simplest_in_closed(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_in_closed(&-hi, &-lo);
    }
    let fl = floor(lo);
    let flr = Rat::from_integer(fl.clone());
    if &flr == lo {
        return flr;
    }
    let next = Rat::from_integer(&fl + 1);
    if &next <= hi {
        return next;
    }
    let a = lo - &flr;
    let b = hi - &flr;
    flr + simplest_in_closed(&b.recip(), &a.recip()).recip()
}

pub(crate) fn is_one(r: &Rat) -> bool {
    r.is_one()
}

pub(crate) fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with `digits` fractional digits (truncated toward
/// negative infinity); used only for display.
pub(crate) fn to_decimal(r: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r * Rat::from_integer(scale.clone())).floor().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let ip = &mag / &scale;
    let fp = &mag % &scale;
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if digits > 0 {
        s.push('.');
        s.push_str(&format!("{:0>width$}", fp.to_string(), width = digits));
    }
    s
}

pub(crate) fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rat("-7"), Some(rat_from_int(-7)));
        assert_eq!(parse_rat("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rat("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_in_open(&rat(1, 3), Some(&rat(1, 2))), rat(2, 5));
        assert_eq!(simplest_in_open(&rat(-1, 2), Some(&rat(1, 2))), rat(0, 1));
        assert_eq!(simplest_in_open(&rat(1, 1), Some(&rat(2, 1))), rat(3, 2));
        assert_eq!(simplest_in_open(&rat(-5, 2), Some(&rat(-2, 1))), rat(-7, 3));
        assert_eq!(simplest_in_open(&rat(7, 2), None), rat(4, 1));
        assert_eq!(simplest_in_closed(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_in_closed(&rat(141, 100), &rat(142, 100)), rat(17, 12));
        for (a, b) in [
            (rat(1, 7), rat(1, 6)),
            (rat(-13, 5), rat(-12, 5)),
            (rat(3, 1), rat(22, 7)),
        ] {
            let s = simplest_in_open(&a, Some(&b));
            assert!(a < s && s < b);
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&rat(-1, 4), 2), "-0.25");
        assert_eq!(to_decimal(&rat(5, 1), 0), "5");
    }
}
