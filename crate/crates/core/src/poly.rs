//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{fmt_rat, Rat, Ring};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographic with `x1 > x2 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(SmallVec::from_elem(0, dim))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `dim` variables over the rationals. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rat::one())
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        let mut p = Poly::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(dim), c);
        }
        p
    }

    /// The coordinate function `x_{var+1}` (variables are 0-based here).
    pub fn var(dim: usize, var: usize) -> Self {
        assert!(var < dim, "variable index {var} out of range for dimension {dim}");
        let mut e = Monomial::one(dim);
        e.0[var] = 1;
        Self::term(dim, e, Rat::one())
    }

    pub fn term(dim: usize, mono: Monomial, c: Rat) -> Self {
        assert_eq!(mono.0.len(), dim, "monomial length differs from dimension");
        let mut p = Poly::zero(dim);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.0.len(), dim, "monomial length differs from dimension");
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Largest monomial in grlex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one(self.dim))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let (mut out, rest) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// `(D, [(m, D·c_m)])` with `D` the lcm of the coefficient denominators.
    fn integer_form(&self) -> (BigInt, Vec<(&Monomial, BigInt)>) {
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m, c.numer() * (&den / c.denom())))
            .collect();
        (den, terms)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        Ring::sum_of_products(&Poly::zero(self.dim), [(self, other)])
    }

    pub fn neg(&self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.dim);
        for _ in 0..e {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Partial derivative with respect to the 0-based variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.dim, "variable index {var} out of range");
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Evaluates at a point whose coordinates live in any ring `T`.
    /// `one` fixes the shape of the result when the polynomial is constant.
    pub fn eval<T: Ring>(&self, point: &[T], one: &T) -> T {
        assert_eq!(point.len(), self.dim, "evaluation point has wrong length");
        let mut max_exp = vec![0u16; self.dim];
        for m in self.terms.keys() {
            for (mx, &e) in max_exp.iter_mut().zip(m.0.iter()) {
                *mx = (*mx).max(e);
            }
        }
        let powers: Vec<Vec<T>> = point
            .iter()
            .zip(&max_exp)
            .map(|(p, &mx)| {
                let mut v = Vec::with_capacity(mx as usize + 1);
                v.push(one.clone());
                for k in 1..=mx as usize {
                    let next = v[k - 1].times(p);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = one.zero_like();
        for (m, c) in &self.terms {
            let mut t: Option<T> = None;
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let f = &powers[v][e as usize];
                    t = Some(match t {
                        None => f.clone(),
                        Some(t) => t.times(f),
                    });
                }
            }
            let t = t.unwrap_or_else(|| one.clone());
            acc = acc.plus(&t.scaled(c));
        }
        acc
    }

    /// Renders with the given variable names (`x1..xd` via `Display`).
    pub fn to_string_with(&self, vars: &[String]) -> String {
        assert!(vars.len() >= self.dim, "not enough variable names");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        vars[v].clone()
                    } else {
                        format!("{}^{}", vars[v], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&fmt_rat(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rat(&a));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Default variable names `x1, ..., xd`.
pub fn default_vars(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_vars(self.dim)))
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.dim)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.dim)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        self.add_unchecked(other)
    }
    fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        self.add_unchecked(&other.neg())
    }
    fn times(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        self.mul_unchecked(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, r: &Rat) -> Self {
        self.scale(r)
    }

    // Everything is accumulated over the integers against a common
    // denominator and reduced once per output term; normalizing every
    // partial product dominated the running time.
    fn sum_of_products<'a>(zero: &Self, pairs: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self {
        let dim = zero.dim;
        let unit = Poly::one(dim);
        let mut scaled = Vec::new();
        if !zero.is_zero() {
            scaled.push((zero.integer_form(), unit.integer_form()));
        }
        for (a, b) in pairs {
            assert!(a.dim == dim && b.dim == dim, "polynomial dimension mismatch");
            if !a.is_zero() && !b.is_zero() {
                scaled.push((a.integer_form(), b.integer_form()));
            }
        }
        let den = scaled.iter().fold(BigInt::one(), |l, ((da, _), (db, _))| l.lcm(&(da * db)));
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for ((da, a), (db, b)) in &scaled {
            let f = &den / (da * db);
            for (ma, ca) in a {
                let caf = ca * &f;
                for (mb, cb) in b {
                    *acc.entry(ma.mul(mb)).or_default() += &caf * cb;
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rat::new(c, den.clone())))
            .collect();
        Poly { dim, terms }
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                Ring::$f(self, rhs)
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                Ring::$f(&self, &rhs)
            }
        }
    };
}
poly_binop!(Add, add, plus);
poly_binop!(Sub, sub, minus);
poly_binop!(Mul, mul, times);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = Poly::one(3);
        let p = &(&x(0) + &one) * &(&x(0) - &one);
        assert_eq!(p, &x(0).pow(2) - &one);
    }

    #[test]
    fn additive_identity() {
        let p = &x(0) * &x(2) + Poly::constant(3, rat(5, 7));
        assert_eq!(&p + &Poly::zero(3), p);
    }

    #[test]
    fn monomial_product_with_fractions() {
        let a = (&x(0) * &x(1)).scale(&rat(3, 2));
        let b = x(1).scale(&rat(2, 3));
        assert_eq!(&a * &b, &x(0) * &x(1).pow(2));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn grlex_ordering_and_printing() {
        let p = (&x(0).pow(2) * &x(1)).scale(&rat(3, 2)) - x(2) + Poly::one(3);
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3 + 1");
        let q = &x(1) - &x(0).pow(2);
        assert_eq!(q.to_string(), "-x1^2 + x2");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(0).pow(3) * &x(1);
        assert_eq!(p.derivative(0), (&x(0).pow(2) * &x(1)).scale(&int(3)));
        let v = p.eval(&[int(2), int(5), int(7)], &int(1));
        assert_eq!(v, int(40));
    }
}
