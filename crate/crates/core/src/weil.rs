//! Function algebra of the infinitesimal n-simplex over an affine chart.
//!
//! `W_{n,d} = Q[x][δ_{i,a}] / (δ_{i,a}δ_{i,b}, δ_{i,a}δ_{j,b} + δ_{i,b}δ_{j,a})`
//! for slots `1 <= i <= n` and coordinates `a`. A nonzero monomial uses each
//! slot and each coordinate at most once, and any two of them with the same
//! slot set and coordinate set agree up to sign. The canonical representative
//! pairs the sorted slots with the sorted coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{rejected, Result};
use crate::poly::{default_vars, Poly};
use crate::ring::{Rat, Ring};

/// Largest supported simplex size and chart dimension (bitmask width).
pub const MAX_WEIL: usize = 16;

/// Canonical Weil monomial. Bit `i-1` of `slots` is slot `i`; bit `a` of
/// `coords` is the 0-based coordinate `a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeilMonomial {
    slots: u32,
    coords: u32,
}

impl WeilMonomial {
    pub const ONE: WeilMonomial = WeilMonomial { slots: 0, coords: 0 };

    /// Canonical monomial on the given slots (1-based) and coordinates
    /// (0-based). Sets are sorted internally; no sign is involved.
    pub fn canonical(slots: &[usize], coords: &[usize]) -> Self {
        assert_eq!(slots.len(), coords.len(), "slot and coordinate counts differ");
        let mut m = WeilMonomial::ONE;
        for &s in slots {
            assert!((1..=MAX_WEIL).contains(&s), "slot out of range");
            m.slots |= 1 << (s - 1);
        }
        for &a in coords {
            assert!(a < MAX_WEIL, "coordinate out of range");
            m.coords |= 1 << a;
        }
        assert_eq!(m.slots.count_ones() as usize, slots.len(), "repeated slot");
        assert_eq!(m.coords.count_ones() as usize, coords.len(), "repeated coordinate");
        m
    }

    pub fn degree(&self) -> usize {
        self.slots.count_ones() as usize
    }

    /// 1-based slots in ascending order.
    pub fn slots(&self) -> Vec<usize> {
        bits(self.slots).map(|b| b + 1).collect()
    }

    /// 0-based coordinates in ascending order.
    pub fn coords(&self) -> Vec<usize> {
        bits(self.coords).collect()
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        bits(self.slots).map(|s| s + 1).zip(bits(self.coords))
    }
}

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

/// Normalizes a product of generators given as (slot, coord) pairs with
/// distinct slots and distinct coordinates. Returns the canonical monomial
/// and whether the sign flips.
fn normalize(mut pairs: Vec<(usize, usize)>) -> (WeilMonomial, bool) {
    pairs.sort_unstable_by_key(|p| p.0);
    let mut inversions = 0usize;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[i].1 > pairs[j].1 {
                inversions += 1;
            }
        }
    }
    let mut m = WeilMonomial::ONE;
    for (s, a) in pairs {
        m.slots |= 1 << (s - 1);
        m.coords |= 1 << a;
    }
    (m, inversions % 2 == 1)
}

fn mono_mul(a: WeilMonomial, b: WeilMonomial) -> Option<(WeilMonomial, bool)> {
    if a.slots & b.slots != 0 || a.coords & b.coords != 0 {
        return None;
    }
    if a == WeilMonomial::ONE {
        return Some((b, false));
    }
    if b == WeilMonomial::ONE {
        return Some((a, false));
    }
    Some(normalize(a.pairs().chain(b.pairs()).collect()))
}

/// Element of `W_{n,d}` with polynomial coefficients in the `d` chart
/// variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeilElement {
    n: usize,
    d: usize,
    terms: BTreeMap<WeilMonomial, Poly>,
}

impl WeilElement {
    fn check_shape(n: usize, d: usize) {
        assert!(n <= MAX_WEIL && d <= MAX_WEIL, "Weil algebra too large");
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self::check_shape(n, d);
        WeilElement { n, d, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, d: usize, c: Poly) -> Self {
        assert_eq!(c.dim(), d, "coefficient dimension differs from chart dimension");
        let mut w = Self::zero(n, d);
        w.add_term(WeilMonomial::ONE, c);
        w
    }

    pub fn one(n: usize, d: usize) -> Self {
        Self::constant(n, d, Poly::one(d))
    }

    /// The generator `δ_{slot,coord}` with 1-based slot, 0-based coordinate.
    pub fn generator(n: usize, d: usize, slot: usize, coord: usize) -> Result<Self> {
        if slot == 0 || slot > n || coord >= d {
            return Err(rejected(format!(
                "generator δ_({slot},{}) outside W_({n},{d})",
                coord + 1
            )));
        }
        let mut w = Self::zero(n, d);
        w.add_term(WeilMonomial::canonical(&[slot], &[coord]), Poly::one(d));
        Ok(w)
    }

    /// `c` times a canonical monomial.
    pub fn monomial(n: usize, d: usize, m: WeilMonomial, c: Poly) -> Self {
        assert!(m.slots >> n == 0 && m.coords >> d == 0, "monomial outside algebra");
        let mut w = Self::zero(n, d);
        w.add_term(m, c);
        w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeilMonomial, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient of a canonical monomial (zero if absent).
    pub fn coeff(&self, m: &WeilMonomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(|| Poly::zero(self.d))
    }

    fn add_term(&mut self, m: WeilMonomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(crate::error::shape(format!(
                "W_({},{}) vs W_({},{})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.plus(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = mono_mul(*ma, *mb) {
                    let c = ca.times(cb);
                    out.add_term(m, if neg { c.negated() } else { c });
                }
            }
        }
        out
    }

    /// Substitutes `δ_i := δ_j` (or `δ_i := 0` when `j = 0`) and
    /// renormalizes. Slots are 1-based; slot 0 is the base point.
    pub fn degenerate(&self, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > self.n || j > self.n || i == j {
            return Err(rejected(format!(
                "cannot identify slot {i} with slot {j} in W_({},{})",
                self.n, self.d
            )));
        }
        let bi = 1u32 << (i - 1);
        let mut out = Self::zero(self.n, self.d);
        for (m, c) in &self.terms {
            if m.slots & bi == 0 {
                out.add_term(*m, c.clone());
                continue;
            }
            if j == 0 || m.slots & (1 << (j - 1)) != 0 {
                continue;
            }
            let pairs: Vec<(usize, usize)> = m
                .pairs()
                .map(|(s, a)| if s == i { (j, a) } else { (s, a) })
                .collect();
            let (m2, neg) = normalize(pairs);
            out.add_term(m2, if neg { c.negated() } else { c.clone() });
        }
        Ok(out)
    }

    /// All canonical monomials of degree `k` in `W_{n,d}`.
    pub fn basis(n: usize, d: usize, k: usize) -> Vec<WeilMonomial> {
        let mut out = Vec::new();
        for s in subsets(n, k) {
            for a in subsets(d, k) {
                let slots: Vec<usize> = s.iter().map(|x| x + 1).collect();
                out.push(WeilMonomial::canonical(&slots, &a));
            }
        }
        out
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let gens: Vec<String> = m
                    .pairs()
                    .map(|(s, a)| format!("d{}_{}", s, a + 1))
                    .collect();
                if gens.is_empty() {
                    format!("({})", c.to_string_with(vars))
                } else {
                    format!("({})*{}", c.to_string_with(vars), gens.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Increasing `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_vars(self.d)))
    }
}

impl Ring for WeilElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.n, self.d)
    }
    fn one_like(&self) -> Self {
        Self::one(self.n, self.d)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        assert!(self.n == other.n && self.d == other.d, "Weil shape mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        assert!(self.n == other.n && self.d == other.d, "Weil shape mismatch");
        self.mul_unchecked(other)
    }
    fn negated(&self) -> Self {
        WeilElement {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
        }
    }
    fn scaled(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return self.zero_like();
        }
        if r.is_one() {
            return self.clone();
        }
        WeilElement {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (*m, c.scaled(r))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, a: usize) -> WeilElement {
        WeilElement::generator(2, 2, i, a - 1).unwrap()
    }

    #[test]
    fn repeated_slot_annihilates() {
        assert!(g(1, 1).times(&g(1, 2)).is_zero());
    }

    #[test]
    fn antisymmetry_relation() {
        let lhs = g(1, 2).times(&g(2, 1));
        let rhs = g(1, 1).times(&g(2, 2)).negated();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn difference_vectors_are_neighbours() {
        let u = g(1, 1).minus(&g(2, 1));
        let v = g(1, 2).minus(&g(2, 2));
        assert!(u.times(&v).is_zero());
    }

    #[test]
    fn degenerate_examples() {
        let w = g(1, 1).times(&g(2, 2));
        assert!(w.degenerate(1, 2).unwrap().is_zero());
        assert!(g(1, 1).degenerate(1, 0).unwrap().is_zero());
        let one = WeilElement::one(2, 2);
        let a = one.plus(&g(1, 1));
        assert_eq!(a.degenerate(1, 2).unwrap(), one.plus(&g(2, 1)));
        assert!(w.degenerate(3, 1).is_err());
        assert!(w.degenerate(1, 1).is_err());
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = WeilElement::one(2, 2);
        let b = WeilElement::one(3, 2);
        assert!(a.checked_mul(&b).is_err());
        assert!(WeilElement::generator(2, 2, 3, 0).is_err());
    }
}
