use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Degree, PolyQ};
use super::rat::Rat;
use super::AlgebraError;

/// Rational function `num / den` over the rationals, kept in lowest terms
/// with a monic denominator. Zero is `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunQ {
    num: PolyQ,
    den: PolyQ,
}

impl RatFunQ {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return RatFunQ {
                num: PolyQ::zero(),
                den: PolyQ::one(),
            };
        }
        let g = PolyQ::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() > Degree::Finite(0) {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        } else {
            (num, den)
        };
        let lc = den.leading_coeff().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunQ { num, den }
    }

    /// Re-normalizes; a no-op on any value produced by this type.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFunQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(c: Rat, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(PolyQ::monomial(c, k as usize))
        } else {
            Self::normalized(PolyQ::constant(c), PolyQ::monomial(Rat::one(), (-k) as usize))
        }
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// If the denominator is exactly `x^d`, returns `d`.
    pub fn monomial_denominator(&self) -> Option<usize> {
        let d = self.den.degree().finite()?;
        let only_top = self.den.coeffs()[..d].iter().all(|c| c.is_zero());
        only_top.then_some(d)
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFunDisplay<'a> {
        RatFunDisplay { f: self, var }
    }
}

pub struct RatFunDisplay<'a> {
    f: &'a RatFunQ,
    var: &'a str,
}

impl fmt::Display for RatFunDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display(self.var).to_string();
        if self.f.den.degree() == Degree::Finite(0) {
            return f.write_str(&num);
        }
        let den = self.f.den.display(self.var).to_string();
        let wrap = |s: String, terms: usize| if terms > 1 { format!("({s})") } else { s };
        write!(
            f,
            "{}/{}",
            wrap(num, self.f.num.term_count()),
            wrap(den, self.f.den.term_count())
        )
    }
}

impl Add<&RatFunQ> for &RatFunQ {
    type Output = RatFunQ;
    fn add(self, rhs: &RatFunQ) -> RatFunQ {
        if self.den == rhs.den {
            return RatFunQ::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunQ::normalized(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFunQ> for &RatFunQ {
    type Output = RatFunQ;
    fn sub(self, rhs: &RatFunQ) -> RatFunQ {
        self + &(-rhs)
    }
}

impl Mul<&RatFunQ> for &RatFunQ {
    type Output = RatFunQ;
    fn mul(self, rhs: &RatFunQ) -> RatFunQ {
        RatFunQ::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunQ {
    type Output = RatFunQ;
    fn neg(self) -> RatFunQ {
        RatFunQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunQ> for RatFunQ {
            type Output = RatFunQ;
            fn $m(self, rhs: RatFunQ) -> RatFunQ { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunQ> for RatFunQ {
            type Output = RatFunQ;
            fn $m(self, rhs: &RatFunQ) -> RatFunQ { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl super::Scalar for RatFunQ {
    fn zero() -> Self {
        RatFunQ::from_poly(PolyQ::zero())
    }
    fn one() -> Self {
        RatFunQ::from_poly(PolyQ::one())
    }
    fn is_zero(&self) -> bool {
        RatFunQ::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.recip()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    #[test]
    fn reduces_common_factor() {
        // (z^2 - 1) / (2z + 2) = (z - 1)/2
        let f = RatFunQ::new(p(&[-1, 0, 1]), p(&[2, 2])).unwrap();
        assert_eq!(f.den(), &PolyQ::one());
        assert_eq!(f.num(), &PolyQ::from_coeffs(vec![rat(-1, 2), rat(1, 2)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunQ::new(PolyQ::one(), PolyQ::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn renders_powers_of_z() {
        let f = RatFunQ::monomial(rat(64, 1), -2);
        assert_eq!(f.display("z").to_string(), "64/z^2");
        assert_eq!(f.monomial_denominator(), Some(2));
        let g = &RatFunQ::constant(rat(1, 1)) + &RatFunQ::monomial(rat(16, 1), -2);
        assert_eq!(g.display("z").to_string(), "(z^2 + 16)/z^2");
        let h = RatFunQ::new(p(&[1]), p(&[1, 1])).unwrap();
        assert_eq!(h.display("z").to_string(), "1/(z + 1)");
        assert_eq!(h.monomial_denominator(), None);
    }

    fn small_ratfun() -> impl Strategy<Value = RatFunQ> {
        let poly = prop::collection::vec(-5i64..=5, 0..4).prop_map(|c| p(&c));
        (poly.clone(), poly)
            .prop_filter("nonzero den", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunQ::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn normalize_idempotent(f in small_ratfun()) {
            let once = f.normalize();
            prop_assert_eq!(once.normalize(), once.clone());
            prop_assert_eq!(once, f);
        }

        #[test]
        fn field_axioms(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(crate::exact_algebra::Scalar::div_exact(&a, &b).unwrap() * &b, a);
            }
        }
    }
}
