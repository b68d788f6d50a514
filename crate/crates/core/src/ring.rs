use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Minimal commutative-or-not ring interface shared by scalars, polynomials
/// and Weil-algebra elements, so that matrices and evaluation can be generic.
///
/// Elements carry their own shape (polynomial dimension, simplex size), which
/// is why the constants are produced from an existing element.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rat) -> Self;

    fn rat_like(&self, r: &Rat) -> Self {
        self.one_like().scaled(r)
    }

    /// `zero + Σ aᵢbᵢ`. Implementations may skip intermediate normalization.
    fn sum_of_products<'a>(zero: &Self, pairs: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self
    where
        Self: 'a,
    {
        pairs.into_iter().fold(zero.clone(), |acc, (a, b)| acc.plus(&a.times(b)))
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
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
    fn scaled(&self, r: &Rat) -> Self {
        self * r
    }
}

/// Shorthand for the rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Shorthand for the integer `p` as a rational.
pub fn int(p: i64) -> Rat {
    Rat::from_integer(p.into())
}

/// Prints `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
