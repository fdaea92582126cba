//! Exact coefficient fields: prime fields `F_p` with `p < 2^31` and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FieldRepr {
    Prime(u32),
    Rationals,
}

/// The coefficient field `k`: either `F_p` or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor(FieldRepr);

/// Which family a [`FieldDescriptor`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PrimeField,
    Rationals,
}

impl FieldDescriptor {
    /// The prime field `F_p`. Fails unless `p` is a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDescriptor(FieldRepr::Prime(p as u32)))
    }

    pub fn rationals() -> Self {
        FieldDescriptor(FieldRepr::Rationals)
    }

    pub fn kind(&self) -> FieldKind {
        match self.0 {
            FieldRepr::Prime(_) => FieldKind::PrimeField,
            FieldRepr::Rationals => FieldKind::Rationals,
        }
    }

    /// `p` for `F_p`, `0` for `Q`.
    pub fn characteristic(&self) -> u32 {
        match self.0 {
            FieldRepr::Prime(p) => p,
            FieldRepr::Rationals => 0,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            FieldRepr::Prime(p) => Some(p),
            FieldRepr::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldRepr::Prime(p) => write!(f, "F_{p}"),
            FieldRepr::Rationals => write!(f, "Q"),
        }
    }
}

/// Trial division; adequate for moduli below `2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Prime { p: u32, v: u32 },
    Rational(BigRational),
}

/// An element of a [`FieldDescriptor`]'s field.
///
/// Prime-field values are kept in `[0, p)`. Rationals are always in lowest
/// terms with positive denominator (the `num-rational` normal form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Value);

/// Binary ring operation selector for [`Scalar::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
}

impl Scalar {
    /// The image of an integer in `field`.
    pub fn from_i64(field: FieldDescriptor, n: i64) -> Self {
        match field.0 {
            FieldRepr::Prime(p) => Scalar(Value::Prime { p, v: n.rem_euclid(p as i64) as u32 }),
            FieldRepr::Rationals => Scalar(Value::Rational(BigRational::from_integer(n.into()))),
        }
    }

    /// The image of an arbitrary-precision integer in `field`.
    pub fn from_bigint(field: FieldDescriptor, n: &BigInt) -> Self {
        match field.0 {
            FieldRepr::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                let v: u32 = r.try_into().expect("residue below p");
                Scalar(Value::Prime { p, v })
            }
            FieldRepr::Rationals => Scalar(Value::Rational(BigRational::from_integer(n.clone()))),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar(Value::Rational(q))
    }

    /// `num / den` in `Q`.
    pub fn fraction(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Value::Rational(BigRational::new(num.into(), den.into()))))
    }

    pub fn field(&self) -> FieldDescriptor {
        match &self.0 {
            Value::Prime { p, .. } => FieldDescriptor(FieldRepr::Prime(*p)),
            Value::Rational(_) => FieldDescriptor::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Value::Prime { v, .. } => *v == 0,
            Value::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Value::Prime { v, .. } => *v == 1,
            Value::Rational(q) => q.is_one(),
        }
    }

    /// Residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Value::Prime { v, .. } => Some(*v),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Value::Rational(q) => Some(q),
            Value::Prime { .. } => None,
        }
    }

    /// The integer this scalar equals, if it is a rational with denominator 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        match &self.0 {
            Value::Rational(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    pub fn combine(&self, other: &Scalar, op: Op) -> Result<Scalar> {
        match (&self.0, &other.0) {
            (Value::Prime { p, v: a }, Value::Prime { p: q, v: b }) if p == q => {
                let (p64, a, b) = (*p as u64, *a as u64, *b as u64);
                let v = match op {
                    Op::Add => (a + b) % p64,
                    Op::Sub => (a + p64 - b) % p64,
                    Op::Mul => (a * b) % p64,
                };
                Ok(Scalar(Value::Prime { p: *p, v: v as u32 }))
            }
            (Value::Rational(a), Value::Rational(b)) => Ok(Scalar(Value::Rational(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }))),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Mul)
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Value::Prime { p, v } => Scalar(Value::Prime { p: *p, v: (p - v) % p }),
            Value::Rational(q) => Scalar(Value::Rational(-q)),
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.0 {
            Value::Prime { p, v } => Ok(Scalar(Value::Prime {
                p: *p,
                v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
            })),
            Value::Rational(q) => Ok(Scalar(Value::Rational(q.recip()))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Value::Prime { v, .. } => write!(f, "{v}"),
            Value::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn primality_is_checked() {
        assert!(FieldDescriptor::prime(7).is_ok());
        assert_eq!(FieldDescriptor::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldDescriptor::prime(1), Err(Error::NotPrime(1)));
        assert!(FieldDescriptor::prime(2_147_483_647).is_ok());
        assert!(FieldDescriptor::prime(1 << 31).is_err());
        assert_eq!(fp(5).characteristic(), 5);
        assert_eq!(FieldDescriptor::rationals().characteristic(), 0);
    }

    #[test]
    fn worked_values() {
        let f2 = fp(2);
        assert!(f2.one().add(&f2.one()).unwrap().is_zero());

        // exhaustive search over F_7 for 3 * x = 1
        let f7 = fp(7);
        let three = Scalar::from_i64(f7, 3);
        let found: Vec<i64> = (0..7)
            .filter(|&x| three.mul(&Scalar::from_i64(f7, x)).unwrap().is_one())
            .collect();
        assert_eq!(found, vec![5]);
        assert_eq!(three.mul(&Scalar::from_i64(f7, 5)).unwrap(), f7.one());
        assert_eq!(three.inverse().unwrap(), Scalar::from_i64(f7, 5));
        assert_eq!(f2.one().inverse().unwrap(), f2.one());

        let half = Scalar::fraction(1, 2).unwrap();
        let third = Scalar::fraction(1, 3).unwrap();
        assert_eq!(half.add(&third).unwrap(), Scalar::fraction(5, 6).unwrap());
        assert_eq!(
            Scalar::fraction(2, 3).unwrap().inverse().unwrap(),
            Scalar::fraction(3, 2).unwrap()
        );
        assert_eq!(Scalar::fraction(-2, -4).unwrap().to_string(), "1/2");
    }

    #[test]
    fn errors() {
        let a = Scalar::from_i64(fp(7), 1);
        let b = Scalar::from_i64(fp(5), 1);
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&Scalar::fraction(1, 2).unwrap()), Err(Error::FieldMismatch));
        assert_eq!(fp(7).zero().inverse(), Err(Error::DivisionByZero));
        assert_eq!(FieldDescriptor::rationals().zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn no_overflow_near_the_bound() {
        let f = fp(2_147_483_647);
        let a = Scalar::from_i64(f, -1);
        assert_eq!(a.mul(&a).unwrap(), f.one());
        assert_eq!(a.add(&a).unwrap(), Scalar::from_i64(f, -2));
    }

    fn random_scalar(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> Scalar {
        match field.modulus() {
            Some(p) => Scalar::from_i64(field, rng.gen_range(0..p as i64)),
            None => Scalar::fraction(rng.gen_range(-50..50), rng.gen_range(1..20)).unwrap(),
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [fp(2), fp(7), fp(101), fp(2_147_483_629), FieldDescriptor::rationals()] {
            for _ in 0..1000 {
                let a = random_scalar(&mut rng, field);
                let b = random_scalar(&mut rng, field);
                let c = random_scalar(&mut rng, field);
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                assert_eq!(ab_c, a.mul(&b.mul(&c).unwrap()).unwrap());
                let s = a.add(&b).unwrap().add(&c).unwrap();
                assert_eq!(s, a.add(&b.add(&c).unwrap()).unwrap());
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert!(a.add(&a.neg()).unwrap().is_zero());
                if !a.is_zero() {
                    let inv = a.inverse().unwrap();
                    assert!(a.mul(&inv).unwrap().is_one());
                    assert_eq!(inv.inverse().unwrap(), a);
                }
            }
        }
    }
}
