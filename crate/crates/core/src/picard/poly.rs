//! Univariate polynomials over the integers, used as numerators and
//! denominators of the rational functions the divisor-class layer works in.
//!
//! Coefficients are little-endian with no trailing zeros; the empty list is
//! the zero polynomial. The variable prints as `d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn constant(n: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![n.into()])
    }

    /// The monomial `d`.
    pub fn var() -> Self {
        IntPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Non-negative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and normalize the leading coefficient to be
    /// positive. The zero polynomial stays zero.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = self.content();
        if self.leading().expect("nonzero").is_negative() {
            content = -content;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    pub fn mul_scalar(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::new(Vec::new());
        }
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `d^shift`.
    pub fn shift(&self, shift: usize) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly::new(coeffs)
    }

    /// Exact division in Z[d]; None when `other` does not divide `self`.
    pub fn divide_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::new(Vec::new()));
        }
        let mut rem = self.clone();
        let db = other.degree().expect("nonzero divisor");
        let lead_b = other.leading().expect("nonzero divisor");
        let mut quotient = vec![BigInt::zero(); self.coeffs.len()];
        while let Some(dr) = rem.degree() {
            if dr < db {
                return None;
            }
            let lead_r = rem.leading().expect("nonzero remainder");
            let (q, r) = lead_r.div_rem(lead_b);
            if !r.is_zero() {
                return None;
            }
            quotient[dr - db] = q.clone();
            rem = &rem - &other.shift(dr - db).mul_scalar(&q);
        }
        Some(IntPoly::new(quotient))
    }

    /// Pseudo-remainder: the remainder of lead(div)^k · self under long
    /// division by `div`, staying inside Z[d].
    pub fn pseudo_rem(&self, div: &IntPoly) -> IntPoly {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let db = div.degree().expect("nonzero divisor");
        let lead_b = div.leading().expect("nonzero divisor").clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let lead_r = rem.leading().expect("nonzero remainder").clone();
            rem = &rem.mul_scalar(&lead_b) - &div.shift(dr - db).mul_scalar(&lead_r);
        }
        rem
    }
}

/// Primitive gcd with positive leading coefficient, via the Euclidean
/// pseudo-remainder sequence with primitive reduction at each step.
pub fn primitive_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "d")?;
                    } else {
                        write!(f, "d^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn construction_trims_and_degrees() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(IntPoly::var().degree(), Some(1));
    }

    #[test]
    fn ring_operations() {
        let a = p(&[1, 2]); // 1 + 2d
        let b = p(&[3, 0, 1]); // 3 + d^2
        assert_eq!(&a + &b, p(&[4, 2, 1]));
        assert_eq!(&b - &a, p(&[2, -2, 1]));
        assert_eq!(&a * &b, p(&[3, 6, 1, 2]));
        assert_eq!(-&a, p(&[-1, -2]));
    }

    #[test]
    fn evaluation_horner() {
        let q = p(&[20, -7, 1]); // d^2 - 7d + 20
        let at = |x: i64| q.eval(&BigRational::from_integer(BigInt::from(x)));
        assert_eq!(at(3), BigRational::from_integer(BigInt::from(8)));
        assert_eq!(at(0), BigRational::from_integer(BigInt::from(20)));
    }

    #[test]
    fn content_and_primitive_part() {
        let q = p(&[-6, 0, -9]);
        assert_eq!(q.content(), BigInt::from(3));
        assert_eq!(q.primitive_part(), p(&[2, 0, 3]));
        assert!(p(&[]).primitive_part().is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-6, 1, 1]); // (d + 3)(d - 2)
        assert_eq!(a.divide_exact(&p(&[3, 1])), Some(p(&[-2, 1])));
        assert_eq!(a.divide_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[]).divide_exact(&p(&[3, 1])), Some(p(&[])));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let shared = p(&[-3, 1]); // d - 3
        let a = &shared * &p(&[1, 2]);
        let b = &shared * &p(&[5, 0, 7]);
        assert_eq!(primitive_gcd(&a, &b), shared);
        assert_eq!(primitive_gcd(&a, &p(&[])), a.primitive_part());
        // Coprime polynomials reduce to 1.
        assert_eq!(primitive_gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[20, -7, 1]).to_string(), "d^2 - 7*d + 20");
        assert_eq!(p(&[0, -1]).to_string(), "-d");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[0, 0, 2]).to_string(), "2*d^2");
    }
}
