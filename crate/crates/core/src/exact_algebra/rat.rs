use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. `BigRational` keeps values reduced with a
/// positive denominator, and zero is always `0/1`.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a finite decimal such as `-12.5e-3`, exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rat::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Combined bit length of numerator and denominator.
pub fn rat_bits(r: &Rat) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rat("2.5"), Some(rat(5, 2)));
        assert_eq!(parse_rat("-0.125"), Some(rat(-1, 8)));
        assert_eq!(parse_rat("1e-2"), Some(rat(1, 100)));
        assert_eq!(parse_rat("12"), Some(rat(12, 1)));
        assert_eq!(parse_rat(".5"), Some(rat(1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
        assert_eq!(parse_rat(""), None);
    }

    #[test]
    fn canonical_zero() {
        let z = rat(0, -7);
        assert_eq!(render_rat(&z), "0");
        assert!(z.denom().is_one());
        assert_eq!(render_rat(&rat(6, -4)), "-3/2");
    }
}
