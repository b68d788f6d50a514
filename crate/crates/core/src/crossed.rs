//! Group-valued polynomial maps and matrix crossed modules `i: H -> A`.

use std::fmt;

use crate::error::{rejected, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::ring::Rat;
use crate::matrix::Matrix;

/// Invertible polynomial matrix carried together with its inverse, so that
/// no division is ever needed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupMap {
    mat: PolyMatrix,
    inv: PolyMatrix,
}

impl GroupMap {
    /// Checks `mat · inv = 1` exactly.
    pub fn new(mat: PolyMatrix, inv: PolyMatrix) -> Result<Self> {
        if !mat.is_square() || mat.rows() != inv.rows() || !inv.is_square() {
            return Err(rejected("group element needs square matrices of equal size"));
        }
        if mat.dim() != inv.dim() {
            return Err(rejected("group element entries live in different polynomial rings"));
        }
        if !mat.mul(&inv).is_identity() {
            return Err(rejected("stored inverse does not invert the matrix"));
        }
        Ok(GroupMap { mat, inv })
    }

    /// Builds `mat` with its inverse from the Neumann series; succeeds for
    /// unipotent matrices.
    pub fn unipotent(mat: PolyMatrix) -> Result<Self> {
        let k = mat.rows();
        let inv = mat
            .unipotent_inverse(k + 1)
            .ok_or_else(|| rejected("matrix is not unipotent"))?;
        GroupMap::new(mat, inv)
    }

    pub fn identity(k: usize, dim: usize) -> Self {
        let id = PolyMatrix::poly_identity(k, dim);
        GroupMap { mat: id.clone(), inv: id }
    }

    pub fn mat(&self) -> &PolyMatrix {
        &self.mat
    }

    pub fn inv_mat(&self) -> &PolyMatrix {
        &self.inv
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn checked_mul(&self, o: &GroupMap) -> Result<GroupMap> {
        if self.size() != o.size() {
            return Err(rejected(format!(
                "group sizes differ: {} vs {}",
                self.size(),
                o.size()
            )));
        }
        Ok(self.mul(o))
    }

    pub fn mul(&self, o: &GroupMap) -> GroupMap {
        GroupMap { mat: self.mat.mul(&o.mat), inv: o.inv.mul(&self.inv) }
    }

    pub fn inverse(&self) -> GroupMap {
        GroupMap { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    /// `g X g⁻¹`.
    pub fn conj(&self, x: &PolyMatrix) -> PolyMatrix {
        self.mat.mul(x).mul(&self.inv)
    }

    /// `g h g⁻¹` as a group element.
    pub fn conj_group(&self, h: &GroupMap) -> GroupMap {
        GroupMap { mat: self.conj(&h.mat), inv: self.conj(&h.inv) }
    }

    /// Value at a rational point.
    pub fn eval_at(&self, point: &[Rat]) -> Result<Matrix<Rat>> {
        if point.len() != self.dim() {
            return Err(rejected(format!(
                "point has {} coordinates, chart has {}",
                point.len(),
                self.dim()
            )));
        }
        let one = Rat::from_integer(1.into());
        Ok(self.mat.map(|p| p.eval(point, &one)))
    }
}

/// A crossed module realized by matrix groups `H` and `A`, with `A` acting
/// on `H` and on `Lie(H)`.
pub trait CrossedModule: Send + Sync + fmt::Debug {
    /// Tag used in dataset files.
    fn tag(&self) -> &'static str;
    fn h_size(&self) -> usize;
    fn a_size(&self) -> usize;
    /// `a(h)`.
    fn act(&self, a: &GroupMap, h: &GroupMap) -> GroupMap;
    /// `a(X)` for `X` in `Lie(H)`.
    fn act_lie(&self, a: &GroupMap, x: &PolyMatrix) -> PolyMatrix;
    /// Infinitesimal action of `u` in `Lie(A)` on `X` in `Lie(H)`.
    fn lie_act(&self, u: &PolyMatrix, x: &PolyMatrix) -> PolyMatrix;
    /// `[u, h] = u(h) h⁻¹`, the derivative of the action on group elements.
    fn lie_act_group(&self, u: &PolyMatrix, h: &GroupMap) -> PolyMatrix;
    fn boundary(&self, h: &GroupMap) -> GroupMap;
    fn boundary_lie(&self, x: &PolyMatrix) -> PolyMatrix;
}

/// `H = A = GL_k` acting on itself by conjugation, `i = id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inner {
    pub k: usize,
}

impl CrossedModule for Inner {
    fn tag(&self) -> &'static str {
        "INNER"
    }
    fn h_size(&self) -> usize {
        self.k
    }
    fn a_size(&self) -> usize {
        self.k
    }
    fn act(&self, a: &GroupMap, h: &GroupMap) -> GroupMap {
        a.conj_group(h)
    }
    fn act_lie(&self, a: &GroupMap, x: &PolyMatrix) -> PolyMatrix {
        a.conj(x)
    }
    fn lie_act(&self, u: &PolyMatrix, x: &PolyMatrix) -> PolyMatrix {
        u.commutator(x)
    }
    fn lie_act_group(&self, u: &PolyMatrix, h: &GroupMap) -> PolyMatrix {
        u.mul(h.mat()).sub(&h.mat().mul(u)).mul(h.inv_mat())
    }
    fn boundary(&self, h: &GroupMap) -> GroupMap {
        h.clone()
    }
    fn boundary_lie(&self, x: &PolyMatrix) -> PolyMatrix {
        x.clone()
    }
}

/// Commutative `H` (diagonal `k×k` matrices) with trivial `A = {1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Abelian {
    pub k: usize,
}

impl CrossedModule for Abelian {
    fn tag(&self) -> &'static str {
        "ABELIAN"
    }
    fn h_size(&self) -> usize {
        self.k
    }
    fn a_size(&self) -> usize {
        1
    }
    fn act(&self, _a: &GroupMap, h: &GroupMap) -> GroupMap {
        h.clone()
    }
    fn act_lie(&self, _a: &GroupMap, x: &PolyMatrix) -> PolyMatrix {
        x.clone()
    }
    fn lie_act(&self, _u: &PolyMatrix, x: &PolyMatrix) -> PolyMatrix {
        PolyMatrix::poly_zeros(self.k, x.dim())
    }
    fn lie_act_group(&self, _u: &PolyMatrix, h: &GroupMap) -> PolyMatrix {
        PolyMatrix::poly_zeros(self.k, h.dim())
    }
    fn boundary(&self, h: &GroupMap) -> GroupMap {
        GroupMap::identity(1, h.dim())
    }
    fn boundary_lie(&self, x: &PolyMatrix) -> PolyMatrix {
        PolyMatrix::poly_zeros(1, x.dim())
    }
}

/// Instance tags understood by the dataset format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Inner,
    Abelian,
}

impl InstanceKind {
    pub fn build(self, k: usize) -> Box<dyn CrossedModule> {
        match self {
            InstanceKind::Inner => Box::new(Inner { k }),
            InstanceKind::Abelian => Box::new(Abelian { k }),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            InstanceKind::Inner => "INNER",
            InstanceKind::Abelian => "ABELIAN",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "INNER" => Some(InstanceKind::Inner),
            "ABELIAN" => Some(InstanceKind::Abelian),
            _ => None,
        }
    }
}

/// `[i(g), X]` at the Lie level equals the bracket in `Lie(H)` for the inner
/// instance; exposed for the compatibility checks.
pub fn lie_boundary_bracket(cm: &dyn CrossedModule, g: &PolyMatrix, x: &PolyMatrix) -> PolyMatrix {
    cm.lie_act(&cm.boundary_lie(g), x)
}

/// Scalar multiple of the identity matrix.
pub fn scalar_matrix(k: usize, c: Poly) -> PolyMatrix {
    let dim = c.dim();
    let mut m = PolyMatrix::poly_zeros(k, dim);
    for i in 0..k {
        m.set(i, i, c.clone());
    }
    m
}
