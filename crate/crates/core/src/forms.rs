//! Lie-algebra-valued polynomial differential forms on a chart, with the
//! brackets, actions and (twisted) differentials of the graded calculus.
//!
//! Coordinate indices are 0-based in this API and printed 1-based.

use std::collections::BTreeMap;
use std::fmt;

use crate::crossed::{CrossedModule, GroupMap};
use crate::error::{rejected, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{default_vars, Poly};
use crate::ring::{rat, Rat};

/// Which Lie algebra a form takes values in: `Lie(H)` or `Lie(A)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    H,
    A,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::H => "H",
            Side::A => "A",
        })
    }
}

/// `Σ_I X_I ⊗ dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieForm {
    degree: usize,
    dim: usize,
    size: usize,
    side: Side,
    coeffs: BTreeMap<Vec<usize>, PolyMatrix>,
}

/// Sign and sorted union for `dx_I ∧ dx_J`; `None` when they share an index.
pub fn wedge_indices(i: &[usize], j: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut seq: Vec<usize> = i.iter().chain(j).copied().collect();
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            match seq[a].cmp(&seq[b]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    seq.sort_unstable();
    Some((seq, inversions % 2 == 1))
}

impl LieForm {
    pub fn zero(degree: usize, dim: usize, size: usize, side: Side) -> Self {
        LieForm { degree, dim, size, side, coeffs: BTreeMap::new() }
    }

    /// Builds from `(index tuple, coefficient)` pairs. Tuples may be in any
    /// order; they are sorted with the permutation sign. Repeated indices,
    /// wrong lengths and out-of-range coordinates are rejected.
    pub fn from_terms(
        degree: usize,
        dim: usize,
        size: usize,
        side: Side,
        terms: impl IntoIterator<Item = (Vec<usize>, PolyMatrix)>,
    ) -> Result<Self> {
        let mut f = LieForm::zero(degree, dim, size, side);
        for (idx, m) in terms {
            if idx.len() != degree {
                return Err(rejected(format!(
                    "index tuple of length {} in a degree-{degree} form",
                    idx.len()
                )));
            }
            if idx.iter().any(|&a| a >= dim) {
                return Err(rejected(format!("coordinate index out of range for dimension {dim}")));
            }
            if m.rows() != size || m.cols() != size || m.dim() != dim {
                return Err(rejected(format!(
                    "coefficient must be a {size}x{size} matrix over {dim} variables"
                )));
            }
            let (sorted, neg) = wedge_indices(&idx, &[])
                .ok_or_else(|| rejected("repeated index in form tuple"))?;
            f.accumulate(sorted, if neg { m.neg() } else { m });
        }
        Ok(f)
    }

    /// `X ⊗ dx_I` for a single tuple (sorted with sign).
    pub fn monomial(side: Side, idx: &[usize], x: PolyMatrix) -> Result<Self> {
        let dim = x.dim();
        let size = x.rows();
        LieForm::from_terms(idx.len(), dim, size, side, [(idx.to_vec(), x)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<usize>, &PolyMatrix)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> PolyMatrix {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::poly_zeros(self.size, self.dim))
    }

    /// Same coefficients reinterpreted on the other side (used for `i` in the
    /// inner instance and for tests).
    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    fn accumulate(&mut self, idx: Vec<usize>, m: PolyMatrix) {
        if m.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(m);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&m);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_kind(&self, o: &LieForm) -> Result<()> {
        if self.degree != o.degree || self.dim != o.dim || self.size != o.size || self.side != o.side {
            return Err(rejected(format!(
                "cannot combine deg={} side={} {}x{} with deg={} side={} {}x{}",
                self.degree, self.side, self.size, self.size, o.degree, o.side, o.size, o.size
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &LieForm) -> Result<LieForm> {
        self.same_kind(o)?;
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &LieForm) -> Result<LieForm> {
        self.checked_add(&o.neg())
    }

    /// Panicking addition for internal use on forms known to be compatible.
    pub fn add(&self, o: &LieForm) -> LieForm {
        self.checked_add(o).expect("incompatible forms")
    }

    pub fn sub(&self, o: &LieForm) -> LieForm {
        self.checked_sub(o).expect("incompatible forms")
    }

    pub fn neg(&self) -> LieForm {
        self.map(|m| m.neg())
    }

    pub fn scale(&self, r: &Rat) -> LieForm {
        self.map(|m| m.scale(r))
    }

    /// Applies a coefficientwise linear map; zero results are dropped.
    pub fn map(&self, mut f: impl FnMut(&PolyMatrix) -> PolyMatrix) -> LieForm {
        let mut out = LieForm::zero(self.degree, self.dim, self.size, self.side);
        for (k, v) in &self.coeffs {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    /// Like [`LieForm::map`] but allowing a change of side and matrix size.
    pub fn map_to(&self, side: Side, size: usize, mut f: impl FnMut(&PolyMatrix) -> PolyMatrix) -> LieForm {
        let mut out = LieForm::zero(self.degree, self.dim, size, side);
        for (k, v) in &self.coeffs {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    /// First nonzero coefficient entry, rendered for diagnostics.
    pub fn leading(&self) -> Option<String> {
        let vars = default_vars(self.dim);
        self.coeffs.iter().find_map(|(idx, m)| {
            m.first_nonzero().map(|(i, j, p)| {
                let (mono, c) = p.leading_term().expect("nonzero entry");
                let lead = Poly::term(self.dim, mono.clone(), c.clone());
                format!("{}[{},{}]: {}", fmt_tuple(idx), i + 1, j + 1, lead.to_string_with(&vars))
            })
        })
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        let body: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, m)| format!("{}: {}", fmt_tuple(idx), m.to_string_with(vars)))
            .collect();
        format!("deg={} side={} {{{}}}", self.degree, self.side, body.join(", "))
    }
}

/// `(1,2)` from 0-based `[0,1]`.
pub fn fmt_tuple(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|a| (a + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for LieForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_vars(self.dim)))
    }
}

fn check_chart(a: &LieForm, b: &LieForm) -> Result<()> {
    if a.dim != b.dim {
        return Err(rejected(format!("chart dimensions differ: {} vs {}", a.dim, b.dim)));
    }
    Ok(())
}

fn pair_with(
    a: &LieForm,
    b: &LieForm,
    side: Side,
    size: usize,
    mut f: impl FnMut(&PolyMatrix, &PolyMatrix) -> PolyMatrix,
) -> LieForm {
    let mut out = LieForm::zero(a.degree + b.degree, a.dim, size, side);
    for (i, x) in &a.coeffs {
        for (j, y) in &b.coeffs {
            if let Some((k, neg)) = wedge_indices(i, j) {
                let v = f(x, y);
                out.accumulate(k, if neg { v.neg() } else { v });
            }
        }
    }
    out
}

/// Graded bracket `[ω, ω'] = Σ [X_I, Y_J] dx_I ∧ dx_J` of same-side forms.
pub fn bracket(a: &LieForm, b: &LieForm) -> Result<LieForm> {
    check_chart(a, b)?;
    if a.side != b.side || a.size != b.size {
        return Err(rejected(format!(
            "bracket needs forms on the same side; got {} and {}",
            a.side, b.side
        )));
    }
    Ok(pair_with(a, b, a.side, a.size, |x, y| x.commutator(y)))
}

fn check_mixed(cm: &dyn CrossedModule, u: &LieForm, g: &LieForm) -> Result<()> {
    check_chart(u, g)?;
    if u.side != Side::A || g.side != Side::H {
        return Err(rejected(format!(
            "mixed pairing needs an A-side and an H-side form; got {} and {}",
            u.side, g.side
        )));
    }
    if u.size != cm.a_size() || g.size != cm.h_size() {
        return Err(rejected("form sizes do not match the crossed module"));
    }
    Ok(())
}

/// `[u, g] = Σ u_I(G_J) dx_I ∧ dx_J` for `u` on `Lie(A)`, `g` on `Lie(H)`.
pub fn act_bracket(cm: &dyn CrossedModule, u: &LieForm, g: &LieForm) -> Result<LieForm> {
    check_mixed(cm, u, g)?;
    Ok(pair_with(u, g, Side::H, g.size, |x, y| cm.lie_act(x, y)))
}

/// `[g, u] = -Σ u_J(G_I) dx_I ∧ dx_J`, the pairing with the `H`-form first.
pub fn act_bracket_op(cm: &dyn CrossedModule, g: &LieForm, u: &LieForm) -> Result<LieForm> {
    check_mixed(cm, u, g)?;
    Ok(pair_with(g, u, Side::H, g.size, |y, x| cm.lie_act(x, y).neg()))
}

/// Degree-0 pairing `[u, g] = Σ u_I(g) g⁻¹ dx_I` with a group-valued `g`.
pub fn act_bracket0(cm: &dyn CrossedModule, u: &LieForm, g: &GroupMap) -> Result<LieForm> {
    if u.side != Side::A || u.size != cm.a_size() || g.size() != cm.h_size() || g.dim() != u.dim {
        return Err(rejected("act_bracket0 needs an A-side form and an H-valued map"));
    }
    Ok(u.map_to(Side::H, g.size(), |x| cm.lie_act_group(x, g)))
}

/// Pairing used by twisted differentials: the bracket when both sides agree,
/// the action pairing for `(A, H)` and its reverse for `(H, A)`.
pub fn pairing(cm: &dyn CrossedModule, a: &LieForm, b: &LieForm) -> Result<LieForm> {
    match (a.side, b.side) {
        (Side::A, Side::H) => act_bracket(cm, a, b),
        (Side::H, Side::A) => act_bracket_op(cm, a, b),
        _ => bracket(a, b),
    }
}

/// Plain exterior derivative of the coefficients.
pub fn exterior_d(w: &LieForm) -> LieForm {
    let mut out = LieForm::zero(w.degree + 1, w.dim, w.size, w.side);
    for (idx, x) in &w.coeffs {
        for a in 0..w.dim {
            if let Some((k, neg)) = wedge_indices(&[a], idx) {
                let v = x.derivative(a);
                out.accumulate(k, if neg { v.neg() } else { v });
            }
        }
    }
    out
}

fn d_of_group(g: &GroupMap, f: impl Fn(&PolyMatrix) -> PolyMatrix, side: Side) -> LieForm {
    let dim = g.dim();
    let mut out = LieForm::zero(1, dim, g.size(), side);
    for a in 0..dim {
        out.accumulate(vec![a], f(&g.mat().derivative(a)));
    }
    out
}

/// `d⁰g = g⁻¹ dg`.
pub fn d0(g: &GroupMap, side: Side) -> LieForm {
    d_of_group(g, |dg| g.inv_mat().mul(dg), side)
}

/// `d̃⁰g = dg g⁻¹`.
pub fn d0_tilde(g: &GroupMap, side: Side) -> LieForm {
    d_of_group(g, |dg| dg.mul(g.inv_mat()), side)
}

/// `g d(g⁻¹)`.
pub fn g_d_ginv(g: &GroupMap, side: Side) -> LieForm {
    d_of_group(&g.inverse(), |dinv| g.mat().mul(dinv), side)
}

fn require_degree(w: &LieForm, deg: usize, what: &str) -> Result<()> {
    if w.degree != deg {
        return Err(rejected(format!("{what} needs a degree-{deg} form, got degree {}", w.degree)));
    }
    Ok(())
}

fn half() -> Rat {
    rat(1, 2)
}

/// `d¹ω = dω + ½[ω, ω]`.
pub fn d1(w: &LieForm) -> Result<LieForm> {
    require_degree(w, 1, "d1")?;
    Ok(exterior_d(w).add(&bracket(w, w)?.scale(&half())))
}

/// `d̃¹ω = dω - ½[ω, ω]`.
pub fn d1_tilde(w: &LieForm) -> Result<LieForm> {
    require_degree(w, 1, "d1_tilde")?;
    Ok(exterior_d(w).sub(&bracket(w, w)?.scale(&half())))
}

/// `dⁿ`: `d¹` in degree 1, the plain derivative in higher degrees.
pub fn dn(w: &LieForm) -> Result<LieForm> {
    match w.degree {
        0 => Err(rejected("degree-0 forms are group-valued; use d0")),
        1 => d1(w),
        _ => Ok(exterior_d(w)),
    }
}

fn check_twist(cm: &dyn CrossedModule, m: &LieForm) -> Result<()> {
    require_degree(m, 1, "twisting form")?;
    if m.side != Side::A || m.size != cm.a_size() {
        return Err(rejected("twisting form must be an A-side 1-form"));
    }
    Ok(())
}

/// `dⁿ_m ω = dⁿω + [m, ω]` with `m` an `A`-side 1-form.
pub fn dn_m(cm: &dyn CrossedModule, m: &LieForm, w: &LieForm) -> Result<LieForm> {
    check_twist(cm, m)?;
    Ok(dn(w)?.add(&pairing(cm, m, w)?))
}

/// `d̃¹_m ω = d̃¹ω + [m, ω]`.
pub fn d1_m_tilde(cm: &dyn CrossedModule, m: &LieForm, w: &LieForm) -> Result<LieForm> {
    check_twist(cm, m)?;
    Ok(d1_tilde(w)?.add(&pairing(cm, m, w)?))
}

/// `d⁰_m g = g⁻¹dg + [m, g]^g`, read off from the simplicial definition
/// `g(x₀)⁻¹ · m(x₀,x₁)(g(x₁))`.
pub fn d0_m(cm: &dyn CrossedModule, m: &LieForm, g: &GroupMap) -> Result<LieForm> {
    check_twist(cm, m)?;
    let br = act_bracket0(cm, m, g)?;
    Ok(d0(g, Side::H).add(&adjoint_right(g, &br)?))
}

/// `d̃⁰_m g = dg g⁻¹ + [m, g]`.
pub fn d0_m_tilde(cm: &dyn CrossedModule, m: &LieForm, g: &GroupMap) -> Result<LieForm> {
    check_twist(cm, m)?;
    Ok(d0_tilde(g, Side::H).add(&act_bracket0(cm, m, g)?))
}

fn check_group_form(g: &GroupMap, w: &LieForm) -> Result<()> {
    if g.size() != w.size || g.dim() != w.dim {
        return Err(rejected(format!(
            "group element of size {} cannot act on {}x{} form",
            g.size(),
            w.size,
            w.size
        )));
    }
    Ok(())
}

/// Left adjoint action `ᵍω = g ω g⁻¹`.
pub fn adjoint(g: &GroupMap, w: &LieForm) -> Result<LieForm> {
    check_group_form(g, w)?;
    Ok(w.map(|x| g.conj(x)))
}

/// Right adjoint action `ω^g = g⁻¹ ω g`.
pub fn adjoint_right(g: &GroupMap, w: &LieForm) -> Result<LieForm> {
    adjoint(&g.inverse(), w)
}

/// Twisted conjugate `ᵍ*ω = ᵍω + g d(g⁻¹)`.
pub fn twisted_conjugate(g: &GroupMap, w: &LieForm) -> Result<LieForm> {
    require_degree(w, 1, "twisted conjugate")?;
    Ok(adjoint(g, w)?.add(&g_d_ginv(g, w.side)))
}

/// Action of an `A`-valued map on a form: through the crossed-module action
/// on `H`-side forms, by conjugation on `A`-side forms.
pub fn apply_aut(cm: &dyn CrossedModule, r: &GroupMap, w: &LieForm) -> Result<LieForm> {
    if r.size() != cm.a_size() || r.dim() != w.dim {
        return Err(rejected("automorphism must be an A-valued map on the same chart"));
    }
    match w.side {
        Side::H => {
            if w.size != cm.h_size() {
                return Err(rejected("form size does not match H"));
            }
            Ok(w.map(|x| cm.act_lie(r, x)))
        }
        Side::A => adjoint(r, w),
    }
}

/// `i(ω)`: pushes an `H`-side form to `Lie(A)`.
pub fn boundary_form(cm: &dyn CrossedModule, w: &LieForm) -> Result<LieForm> {
    if w.side != Side::H || w.size != cm.h_size() {
        return Err(rejected("boundary needs an H-side form"));
    }
    Ok(w.map_to(Side::A, cm.a_size(), |x| cm.boundary_lie(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{Abelian, Inner};
    use crate::ring::int;

    const D: usize = 3;

    fn e(i: usize, j: usize) -> PolyMatrix {
        PolyMatrix::elementary(2, i, j, Poly::one(D))
    }

    fn hmat() -> PolyMatrix {
        e(0, 0).sub(&e(1, 1))
    }

    fn form(side: Side, idx: &[usize], x: PolyMatrix) -> LieForm {
        LieForm::monomial(side, idx, x).unwrap()
    }

    fn unip12(p: Poly) -> GroupMap {
        GroupMap::unipotent(PolyMatrix::poly_identity(2, D).add(&PolyMatrix::elementary(2, 0, 1, p)))
            .unwrap()
    }

    #[test]
    fn bracket_examples() {
        let a = form(Side::H, &[0], e(0, 1));
        let b = form(Side::H, &[1], e(1, 0));
        assert_eq!(bracket(&a, &b).unwrap(), form(Side::H, &[0, 1], hmat()));
        assert!(bracket(&a, &a).unwrap().is_zero());
        let c = form(Side::H, &[1, 2], e(1, 0));
        let lhs = bracket(&a, &c).unwrap();
        let rhs = bracket(&c, &a).unwrap().neg();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
        assert!(bracket(&a, &a.clone().with_side(Side::A)).is_err());
    }

    #[test]
    fn act_bracket_examples() {
        let cm = Inner { k: 2 };
        let u = form(Side::A, &[1], hmat());
        let g = form(Side::H, &[0], e(0, 1));
        let expected = form(Side::H, &[0, 1], e(0, 1).scale(&int(-2)));
        assert_eq!(act_bracket(&cm, &u, &g).unwrap(), expected);
        let zero = LieForm::zero(1, D, 2, Side::A);
        assert!(act_bracket(&cm, &zero, &g).unwrap().is_zero());
        assert!(act_bracket(&Abelian { k: 2 }, &u.map_to(Side::A, 1, |_| PolyMatrix::poly_zeros(1, D)), &g)
            .unwrap()
            .is_zero());
        assert!(act_bracket(&cm, &g, &u).is_err());
    }

    #[test]
    fn act_bracket0_example() {
        let cm = Inner { k: 2 };
        let u = form(Side::A, &[0], hmat());
        let g = unip12(Poly::var(D, 1));
        let expected = form(Side::H, &[0], PolyMatrix::elementary(2, 0, 1, Poly::var(D, 1).scale(&int(2))));
        assert_eq!(act_bracket0(&cm, &u, &g).unwrap(), expected);
        assert!(act_bracket0(&cm, &u, &GroupMap::identity(2, D)).unwrap().is_zero());
    }

    #[test]
    fn differential_examples() {
        let g = unip12(Poly::var(D, 0));
        assert_eq!(d0(&g, Side::H), form(Side::H, &[0], e(0, 1)));
        let w = form(Side::H, &[0], PolyMatrix::elementary(2, 0, 1, Poly::var(D, 1)));
        assert_eq!(d1(&w).unwrap(), form(Side::H, &[0, 1], e(0, 1).neg()));
        let w2 = form(Side::H, &[0], e(0, 1)).add(&form(Side::H, &[1], e(1, 0)));
        assert_eq!(d1(&w2).unwrap(), form(Side::H, &[0, 1], hmat()));
        assert!(d1(&form(Side::H, &[0, 1], e(0, 1))).is_err());
    }

    #[test]
    fn twisted_differential_examples() {
        let cm = Inner { k: 2 };
        let m = form(Side::A, &[1], hmat());
        let w = form(Side::H, &[0], e(0, 1));
        assert_eq!(
            dn_m(&cm, &m, &w).unwrap(),
            form(Side::H, &[0, 1], e(0, 1).scale(&int(-2)))
        );
        let zero = LieForm::zero(1, D, 2, Side::A);
        assert_eq!(dn_m(&cm, &zero, &w).unwrap(), d1(&w).unwrap());
        assert!(dn_m(&cm, &w, &w).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let g = unip12(Poly::var(D, 0));
        let w = form(Side::H, &[1], e(1, 0));
        let x1 = Poly::var(D, 0);
        let expected_coeff = e(1, 0)
            .add(&hmat().map(|p| p * &x1))
            .sub(&PolyMatrix::elementary(2, 0, 1, x1.pow(2)));
        let expected = form(Side::H, &[1], expected_coeff);
        assert_eq!(adjoint(&g, &w).unwrap(), expected);
        assert_eq!(adjoint(&GroupMap::identity(2, D), &w).unwrap(), w);
        assert_eq!(adjoint(&g, &adjoint_right(&g, &w).unwrap()).unwrap(), w);
        let tc = twisted_conjugate(&g, &w).unwrap();
        assert_eq!(tc, expected.sub(&form(Side::H, &[0], e(0, 1))));
        let zero = LieForm::zero(1, D, 2, Side::H);
        assert_eq!(twisted_conjugate(&g, &zero).unwrap(), g_d_ginv(&g, Side::H));
    }

    #[test]
    fn apply_aut_matches_adjoint_for_inner() {
        let cm = Inner { k: 2 };
        let g = unip12(Poly::var(D, 0));
        let w = form(Side::H, &[1], e(1, 0));
        assert_eq!(apply_aut(&cm, &g, &w).unwrap(), adjoint(&g, &w).unwrap());
        assert_eq!(apply_aut(&cm, &GroupMap::identity(2, D), &w).unwrap(), w);
    }

    #[test]
    fn from_terms_sorts_with_sign() {
        let f = LieForm::from_terms(2, D, 2, Side::H, [(vec![1, 0], e(0, 1))]).unwrap();
        assert_eq!(f.coeff(&[0, 1]), e(0, 1).neg());
        assert!(LieForm::from_terms(2, D, 2, Side::H, [(vec![1, 1], e(0, 1))]).is_err());
        assert!(LieForm::from_terms(2, D, 2, Side::H, [(vec![1, 5], e(0, 1))]).is_err());
    }
}
