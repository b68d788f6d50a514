//! Combinatorial forms: group-valued functions on infinitesimal simplices,
//! with the Alexander–Spanier differentials and the passage to and from
//! classical Lie-algebra-valued forms.
//!
//! A combinatorial `n`-form is carried as an evaluator on `n+1` points whose
//! coordinates live in a Weil algebra. Checks evaluate at the standard
//! simplex `x_0 = x`, `x_t = x + δ_t` in `W_{n,d}`, with the base point left
//! symbolic, so equalities are identities in both kinds of variables.

use std::fmt;
use std::sync::Arc;

use crate::crossed::GroupMap;
use crate::error::{rejected, Error, Result};
use crate::forms::{LieForm, Side};
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::Poly;
use crate::ring::{Rat, Ring};
use crate::weil::{subsets, WeilElement, WeilMonomial};

/// Coordinates of a point, one Weil element per chart variable.
pub type Point = Vec<WeilElement>;
pub type WeilMatrix = Matrix<WeilElement>;

type Evaluator = Arc<dyn Fn(&[Point]) -> Result<WeilMatrix> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Lifted,
    Composite,
}

/// Which Alexander–Spanier product to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Tilde,
}

#[derive(Clone)]
pub struct CombForm {
    n: usize,
    dim: usize,
    size: usize,
    provenance: Provenance,
    eval: Evaluator,
}

impl fmt::Debug for CombForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CombForm")
            .field("n", &self.n)
            .field("dim", &self.dim)
            .field("size", &self.size)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

/// The `n+1` standard points of the infinitesimal `n`-simplex in `W_{n,d}`.
pub fn standard_points(n: usize, d: usize) -> Vec<Point> {
    let base: Point = (0..d)
        .map(|a| WeilElement::constant(n, d, Poly::var(d, a)))
        .collect();
    let mut pts = vec![base.clone()];
    for t in 1..=n {
        pts.push(
            base.iter()
                .enumerate()
                .map(|(a, x)| x.plus(&WeilElement::generator(n, d, t, a).expect("in range")))
                .collect(),
        );
    }
    pts
}

impl CombForm {
    /// Wraps an arbitrary evaluator taking `n+1` points.
    pub fn from_evaluator(
        n: usize,
        dim: usize,
        size: usize,
        f: impl Fn(&[Point]) -> Result<WeilMatrix> + Send + Sync + 'static,
    ) -> Self {
        CombForm { n, dim, size, provenance: Provenance::Composite, eval: Arc::new(f) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn evaluate(&self, points: &[Point]) -> Result<WeilMatrix> {
        if points.len() != self.n + 1 {
            return Err(rejected(format!(
                "a {}-form takes {} points, got {}",
                self.n,
                self.n + 1,
                points.len()
            )));
        }
        if points.iter().any(|p| p.len() != self.dim) {
            return Err(rejected("point has the wrong number of coordinates"));
        }
        (self.eval)(points)
    }

    /// Value on the standard simplex in `W_{n,d}`.
    pub fn evaluate_standard(&self) -> Result<WeilMatrix> {
        self.evaluate(&standard_points(self.n, self.dim))
    }

    /// The form with points `i` and `j` exchanged.
    pub fn swap_points(&self, i: usize, j: usize) -> Result<CombForm> {
        if i > self.n || j > self.n {
            return Err(rejected("point index out of range"));
        }
        let inner = self.clone();
        Ok(CombForm::from_evaluator(self.n, self.dim, self.size, move |pts| {
            let mut p = pts.to_vec();
            p.swap(i, j);
            inner.evaluate(&p)
        }))
    }
}

fn eval_matrix(m: &PolyMatrix, at: &Point, one: &WeilElement) -> WeilMatrix {
    m.map(|p| p.eval(at, one))
}

fn one_of(points: &[Point], dim: usize) -> Result<WeilElement> {
    points
        .first()
        .and_then(|p| p.first())
        .map(|w| w.one_like())
        .ok_or_else(|| rejected(format!("empty point list in dimension {dim}")))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if cur.len() == n {
            let mut inv = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if cur[a] > cur[b] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), inv % 2 == 1));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, n, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

/// `det[(y_t - y_0)_{I_s}]` over `t, s = 1..n`.
fn simplex_det(points: &[Point], idx: &[usize], one: &WeilElement) -> WeilElement {
    let n = idx.len();
    let diffs: Vec<Vec<WeilElement>> = (1..=n)
        .map(|t| idx.iter().map(|&a| points[t][a].minus(&points[0][a])).collect())
        .collect();
    let mut acc = one.zero_like();
    for (perm, odd) in permutations(n) {
        let mut term = one.clone();
        for (t, &s) in perm.iter().enumerate() {
            term = term.times(&diffs[t][s]);
            if term.is_zero() {
                break;
            }
        }
        acc = if odd { acc.minus(&term) } else { acc.plus(&term) };
    }
    acc
}

fn factorial(n: usize) -> Rat {
    Rat::from_integer((1..=n as u64).product::<u64>().into())
}

/// Combinatorial form of a classical `n`-form (`n >= 1`):
/// `F(y_0..y_n) = I + (1/n!) Σ_I X_I(y_0) det[(y_t - y_0)_{I_s}]`.
/// The argument of the exponential squares to zero on infinitesimal
/// simplices, so no higher terms appear.
pub fn lift(w: &LieForm) -> CombForm {
    let form = w.clone();
    let n = w.degree();
    let inv_fact = Rat::from_integer(1.into()) / factorial(n);
    CombForm {
        n,
        dim: w.dim(),
        size: w.size(),
        provenance: Provenance::Lifted,
        eval: Arc::new(move |points| {
            let one = one_of(points, form.dim())?;
            let mut out = Matrix::identity(form.size(), &one);
            for (idx, x) in form.coeffs() {
                let det = simplex_det(points, idx, &one).scaled(&inv_fact);
                if det.is_zero() {
                    continue;
                }
                let xv = eval_matrix(x, &points[0], &one);
                out = out.add(&xv.map(|e| e.times(&det)));
            }
            Ok(out)
        }),
    }
}

/// Verifies that `F - I` vanishes on every degenerate configuration
/// (slot `i` identified with slot `j`, or with the base point).
pub fn check_degenerate(f_minus_i: &WeilMatrix, n: usize) -> Result<()> {
    for e in f_minus_i.entries() {
        for i in 1..=n {
            for j in 0..=n {
                if i == j {
                    continue;
                }
                if !e.degenerate(i, j)?.is_zero() {
                    return Err(Error::MalformedForm(format!(
                        "value is not trivial when slot {i} is identified with slot {j}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Classical form of a combinatorial `n`-form: the coefficient of
/// `δ_{1,a_1}···δ_{n,a_n}` in `F - I` on the standard simplex.
pub fn extract(f: &CombForm, side: Side) -> Result<LieForm> {
    let n = f.n;
    if n == 0 {
        return Err(rejected("degree-0 combinatorial forms are group-valued"));
    }
    let val = f.evaluate_standard()?;
    let id = Matrix::identity(f.size, &WeilElement::one(n, f.dim));
    let diff = val.sub(&id);
    check_degenerate(&diff, n)?;
    let slots: Vec<usize> = (1..=n).collect();
    let mut terms = Vec::new();
    for idx in subsets(f.dim, n) {
        let mono = WeilMonomial::canonical(&slots, &idx);
        let x = diff.map(|e| e.coeff(&mono));
        if !x.is_zero() {
            terms.push((idx, x));
        }
    }
    LieForm::from_terms(n, f.dim, f.size, side, terms)
}

/// Inverse of `I + N` with every entry of `N` in the augmentation ideal.
pub fn weil_inverse(m: &WeilMatrix) -> Result<WeilMatrix> {
    let like = m.get(0, 0).clone();
    let id = Matrix::identity(m.rows(), &like);
    let nil = m.sub(&id);
    if nil
        .entries()
        .any(|e| !e.coeff(&WeilMonomial::ONE).is_zero())
    {
        return Err(rejected("matrix is not infinitesimally close to the identity"));
    }
    let bound = like.n() * m.rows() + 1;
    m.unipotent_inverse(bound)
        .ok_or_else(|| rejected("Neumann series did not terminate"))
}

fn conj(a: &WeilMatrix, x: &WeilMatrix) -> Result<WeilMatrix> {
    Ok(a.mul(x).mul(&weil_inverse(a)?))
}

fn face(points: &[Point], skip: usize) -> Vec<Point> {
    points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, p)| p.clone())
        .collect()
}

fn check_twist(f_dim: usize, f_size: usize, twist: Option<&CombForm>) -> Result<()> {
    if let Some(m) = twist {
        if m.n != 1 || m.dim != f_dim || m.size != f_size {
            return Err(rejected("twist must be a combinatorial 1-form of matching shape"));
        }
    }
    Ok(())
}

/// Alexander–Spanier differential of a combinatorial `n`-form, `n >= 1`.
/// The twist, when present, acts by conjugation.
pub fn comb_d(f: &CombForm, twist: Option<&CombForm>, variant: Variant) -> Result<CombForm> {
    let n = f.n;
    if n == 0 {
        return Err(rejected("use comb_d0 for group-valued maps"));
    }
    check_twist(f.dim, f.size, twist)?;
    if variant == Variant::Tilde && (n != 1 || twist.is_some()) {
        return Err(rejected("the tilde differential is defined only untwisted in degree 1"));
    }
    let f = f.clone();
    let twist = twist.cloned();
    let (dim, size) = (f.dim, f.size);
    Ok(CombForm::from_evaluator(n + 1, dim, size, move |y| {
        let tw = |a: usize, b: usize| -> Result<Option<WeilMatrix>> {
            twist
                .as_ref()
                .map(|m| m.evaluate(&[y[a].clone(), y[b].clone()]))
                .transpose()
        };
        if n == 1 {
            let w01 = f.evaluate(&[y[0].clone(), y[1].clone()])?;
            let w12 = f.evaluate(&[y[1].clone(), y[2].clone()])?;
            let w20 = f.evaluate(&[y[2].clone(), y[0].clone()])?;
            return match variant {
                Variant::Tilde => Ok(w20.mul(&w12).mul(&w01)),
                Variant::Plain => match (tw(0, 1)?, tw(1, 2)?) {
                    (Some(m01), Some(m12)) => {
                        let b = conj(&m01, &w12)?;
                        let c = conj(&m01.mul(&m12), &w20)?;
                        Ok(w01.mul(&b).mul(&c))
                    }
                    _ => Ok(w01.mul(&w12).mul(&w20)),
                },
            };
        }
        let mut acc = f.evaluate(&face(y, 0))?;
        if let Some(m01) = tw(0, 1)? {
            acc = conj(&m01, &acc)?;
        }
        for i in 1..=n + 1 {
            let v = f.evaluate(&face(y, i))?;
            let v = if i % 2 == 1 { weil_inverse(&v)? } else { v };
            acc = acc.mul(&v);
        }
        Ok(acc)
    }))
}

/// Differential of a group-valued map: `g(y₀)⁻¹ g(y₁)` (plain) or
/// `g(y₁) g(y₀)⁻¹` (tilde); with a twist `m`, `g(y₁)` is replaced by
/// `m(y₀,y₁)(g(y₁))`.
pub fn comb_d0(g: &GroupMap, twist: Option<&CombForm>, variant: Variant) -> Result<CombForm> {
    check_twist(g.dim(), g.size(), twist)?;
    let g = g.clone();
    let twist = twist.cloned();
    let (dim, size) = (g.dim(), g.size());
    Ok(CombForm::from_evaluator(1, dim, size, move |y| {
        let one = one_of(y, dim)?;
        let g0_inv = eval_matrix(g.inv_mat(), &y[0], &one);
        let mut g1 = eval_matrix(g.mat(), &y[1], &one);
        if let Some(m) = &twist {
            let m01 = m.evaluate(&[y[0].clone(), y[1].clone()])?;
            g1 = conj(&m01, &g1)?;
        }
        Ok(match variant {
            Variant::Plain => g0_inv.mul(&g1),
            Variant::Tilde => g1.mul(&g0_inv),
        })
    }))
}
