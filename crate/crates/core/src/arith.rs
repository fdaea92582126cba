//! Unboxed field arithmetic for the elimination kernels.
//!
//! [`Scalar`] carries its field with every value, which is convenient at the
//! API boundary but wasteful inside elimination loops. The kernels in
//! `rank` are generic over [`Arith`] instead and convert once on entry.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{pow_mod, FieldDescriptor, Scalar};

pub(crate) trait Arith: Sync + Send {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;

    /// Whether `a` is a strictly better pivot than `b`. The default takes the
    /// first nonzero candidate.
    fn better_pivot(&self, _a: &Self::E, _b: &Self::E) -> bool {
        false
    }
}

/// `F_p` with residues stored in a `u64`; products of two residues below
/// `2^31` fit without overflow.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeArith {
    pub p: u64,
}

impl Arith for PrimeArith {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        pow_mod(*a, self.p - 2, self.p)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RationalArith;

impl Arith for RationalArith {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn better_pivot(&self, a: &BigRational, b: &BigRational) -> bool {
        a.abs() > b.abs()
    }
}

pub(crate) fn prime_residue(s: &Scalar) -> u64 {
    s.residue().expect("prime-field scalar") as u64
}

pub(crate) fn rational_value(s: &Scalar) -> BigRational {
    s.as_rational().expect("rational scalar").clone()
}

/// Runs `f` with the arithmetic matching `field`.
pub(crate) enum FieldArith {
    Prime(PrimeArith),
    Rational(RationalArith),
}

impl FieldArith {
    pub fn of(field: FieldDescriptor) -> Self {
        match field.modulus() {
            Some(p) => FieldArith::Prime(PrimeArith { p: p as u64 }),
            None => FieldArith::Rational(RationalArith),
        }
    }
}
