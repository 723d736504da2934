//! Rational functions of the degree variable `d`, as reduced ratios of
//! integer polynomials.
//!
//! Canonical form: gcd(numerator, denominator) is constant, the shared
//! integer content is divided out, and the denominator has a positive
//! leading coefficient. Equality is therefore structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{primitive_gcd, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: IntPoly::constant(1),
            };
        }
        let g = primitive_gcd(&num, &den);
        let mut num = num.divide_exact(&g).expect("gcd divides the numerator");
        let mut den = den.divide_exact(&g).expect("gcd divides the denominator");
        let shared = num.content().gcd(&den.content());
        if !shared.is_one() {
            num = num
                .divide_exact(&IntPoly::constant(shared.clone()))
                .expect("content divides");
            den = den
                .divide_exact(&IntPoly::constant(shared))
                .expect("content divides");
        }
        if den.leading().expect("nonzero").is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::constant(1),
        }
    }

    /// The variable `d` itself.
    pub fn var() -> Self {
        Self::from_poly(IntPoly::var())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(IntPoly::constant(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(IntPoly::constant(num), IntPoly::constant(den))
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the reduced denominator is a constant, i.e. the function
    /// is a polynomial over the rationals.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Evaluate at a rational point; None where the denominator vanishes.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / den)
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(IntPoly::new(Vec::new()))
    }

    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_int(1)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0) == BigInt::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(poly(num), poly(den))
    }

    #[test]
    fn canonical_reduction() {
        // (d^2 - 9) / (2d - 6) = (d + 3)/2
        let f = rf(&[-9, 0, 1], &[-6, 2]);
        assert_eq!(f.num(), &poly(&[3, 1]));
        assert_eq!(f.den(), &poly(&[2]));
        // Sign lives in the numerator after reduction.
        let g = rf(&[1], &[-2]);
        assert_eq!(g.num(), &poly(&[-1]));
        assert_eq!(g.den(), &poly(&[2]));
        // Shared content is removed.
        let h = rf(&[2, 4], &[6]);
        assert_eq!(h.num(), &poly(&[1, 2]));
        assert_eq!(h.den(), &poly(&[3]));
    }

    #[test]
    fn field_operations() {
        let d = RatFunc::var();
        let one = RatFunc::one();
        // d/(d-1) + 1/(1-d) = (d-1)/(d-1) = 1
        let a = &d / &(&d - &one);
        let b = &one / &(&one - &d);
        assert_eq!(&a + &b, one);
        let r = rf(&[0, 1], &[-1, 1]);
        assert_eq!(a, r);
        assert_eq!(&a * &a.recip(), RatFunc::one());
    }

    #[test]
    fn evaluation() {
        let f = rf(&[6, -1], &[0, 1]); // (6 - d)/d
        let at = |x: i64| f.eval(&BigRational::from_integer(BigInt::from(x)));
        assert_eq!(at(3), Some(BigRational::from_integer(BigInt::from(1))));
        assert_eq!(at(0), None);
        assert_eq!(at(6), Some(BigRational::zero()));
    }

    #[test]
    fn polynomial_detection() {
        assert!(rf(&[0, 0, 1], &[2]).is_polynomial());
        assert!(!rf(&[1], &[0, 1]).is_polynomial());
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatFunc::var().to_string(), "d");
        assert_eq!(rf(&[6, -1], &[0, 1]).to_string(), "(-d + 6)/(d)");
        assert_eq!(rf(&[1, 2], &[1]).to_string(), "2*d + 1");
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        (
            proptest::collection::vec(-6i64..=6, 1..4),
            proptest::collection::vec(-6i64..=6, 1..4),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                let den = IntPoly::from_i64_coeffs(&d);
                if den.is_zero() {
                    None
                } else {
                    Some(RatFunc::new(IntPoly::from_i64_coeffs(&n), den))
                }
            })
    }

    proptest! {
        // Evaluation away from poles is a ring homomorphism; this pits the
        // polynomial arithmetic against BigRational arithmetic.
        #[test]
        fn evaluation_commutes_with_ops(a in arb_ratfunc(), b in arb_ratfunc(), x in -30i64..=30) {
            let x = BigRational::from_integer(BigInt::from(x));
            if let (Some(ax), Some(bx)) = (a.eval(&x), b.eval(&x)) {
                prop_assert_eq!((&a + &b).eval(&x).unwrap(), &ax + &bx);
                prop_assert_eq!((&a - &b).eval(&x).unwrap(), &ax - &bx);
                prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ax * &bx);
            }
        }

        #[test]
        fn field_axioms_hold(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a - &a, RatFunc::zero());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
