//! Cover-indexed gerbe data and the cocycle, gluing, curvature and
//! coboundary equations, each checked as an exact identity.
//!
//! A single global chart is used: every `U_i` shares the coordinates, and
//! intersections are purely combinatorial. Cover indices are 0-based.

use crate::crossed::{CrossedModule, GroupMap};
use crate::error::{rejected, Error, Result};
use crate::forms::{
    act_bracket, act_bracket0, adjoint, adjoint_right, apply_aut, boundary_form, bracket, d0,
    d0_m_tilde, d1, dn, dn_m, twisted_conjugate, LieForm, Side,
};
use crate::matrix::PolyMatrix;
use crate::report::{Record, RunReport};

/// Dense cochain over `arity`-tuples of cover indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<T> {
    n: usize,
    arity: usize,
    data: Vec<T>,
}

impl<T: Clone> Cochain<T> {
    pub fn from_fn(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let data = tuples(n, arity).iter().map(|t| f(t)).collect();
        Cochain { n, arity, data }
    }

    pub fn try_from_fn(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Result<T>) -> Result<Self> {
        let data = tuples(n, arity).iter().map(|t| f(t)).collect::<Result<Vec<T>>>()?;
        Ok(Cochain { n, arity, data })
    }

    pub fn filled(n: usize, arity: usize, v: T) -> Self {
        Cochain { n, arity, data: vec![v; n.pow(arity as u32)] }
    }

    pub fn cover(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn offset(&self, t: &[usize]) -> usize {
        assert_eq!(t.len(), self.arity, "index tuple has wrong length");
        t.iter().fold(0, |acc, &i| {
            assert!(i < self.n, "cover index {i} out of range");
            acc * self.n + i
        })
    }

    pub fn get(&self, t: &[usize]) -> &T {
        &self.data[self.offset(t)]
    }

    pub fn set(&mut self, t: &[usize], v: T) {
        let o = self.offset(t);
        self.data[o] = v;
    }

    /// `(tuple, value)` in lexicographic tuple order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &T)> {
        tuples(self.n, self.arity).into_iter().zip(self.data.iter())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Cochain<U> {
        Cochain { n: self.n, arity: self.arity, data: self.data.iter().map(f).collect() }
    }
}

/// All `arity`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

/// `(λ_ij, g_ijk)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeCocycle {
    pub lambda: Cochain<GroupMap>,
    pub g: Cochain<GroupMap>,
}

/// `(m_i, γ_ij)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionData {
    pub m: Cochain<LieForm>,
    pub gamma: Cochain<LieForm>,
}

/// `B_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvingData {
    pub b: Cochain<LieForm>,
}

/// `(ν_i, δ_ij, ω_i)` computed from the connection and curving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedCurving {
    pub nu: Cochain<LieForm>,
    pub delta: Cochain<LieForm>,
    pub omega3: Cochain<LieForm>,
}

/// `(r_i, θ_ij, e_i, n_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryData {
    pub r: Cochain<GroupMap>,
    pub theta: Cochain<GroupMap>,
    pub e: Cochain<LieForm>,
    pub n: Cochain<LieForm>,
}

/// Principal-bundle data: a 1-cocycle `g_ij` and local connection forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    pub g1: Cochain<GroupMap>,
    pub omega1: Cochain<LieForm>,
}

fn lambda_ijk(c: &GerbeCocycle, i: usize, j: usize, k: usize) -> GroupMap {
    c.lambda
        .get(&[i, j])
        .mul(c.lambda.get(&[j, k]))
        .mul(&c.lambda.get(&[i, k]).inverse())
}

fn group_residual(a: &GroupMap, b: &GroupMap) -> PolyMatrix {
    a.mat().sub(b.mat())
}

/// `δ⁰_λ(f)_ij = λ_ij(f_j) - f_i`.
pub fn cech_delta0(cm: &dyn CrossedModule, lambda: &Cochain<GroupMap>, f: &Cochain<LieForm>) -> Result<Cochain<LieForm>> {
    check_same_cover(lambda.cover(), f.cover())?;
    Cochain::try_from_fn(f.cover(), 2, |t| {
        Ok(apply_aut(cm, lambda.get(t), f.get(&[t[1]]))?.sub(f.get(&[t[0]])))
    })
}

/// `δ¹_λ(f)_ijk = f_ij + λ_ij(f_jk) - λ_ijk(f_ik)` with
/// `λ_ijk = λ_ij λ_jk λ_ik⁻¹`.
pub fn cech_delta1(cm: &dyn CrossedModule, lambda: &Cochain<GroupMap>, f: &Cochain<LieForm>) -> Result<Cochain<LieForm>> {
    check_same_cover(lambda.cover(), f.cover())?;
    Cochain::try_from_fn(f.cover(), 3, |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let lijk = lambda.get(&[i, j]).mul(lambda.get(&[j, k])).mul(&lambda.get(&[i, k]).inverse());
        Ok(f.get(&[i, j])
            .add(&apply_aut(cm, lambda.get(&[i, j]), f.get(&[j, k]))?)
            .sub(&apply_aut(cm, &lijk, f.get(&[i, k]))?))
    })
}

fn check_same_cover(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(rejected(format!("cochains over covers of size {a} and {b}")));
    }
    Ok(())
}

/// `(eq:coc1)`, `(eq:coc2)` and the normalization on repeated indices.
pub fn check_cocycle(cm: &dyn CrossedModule, c: &GerbeCocycle) -> RunReport {
    let n = c.lambda.cover();
    let mut rep = RunReport::new("check_cocycle");
    for t in tuples(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let lhs = c.lambda.get(&[i, j]).mul(c.lambda.get(&[j, k]));
        let rhs = cm.boundary(c.g.get(&t)).mul(c.lambda.get(&[i, k]));
        rep.check("coc1", &t, &group_residual(&lhs, &rhs));
    }
    for t in tuples(n, 4) {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let lhs = cm.act(c.lambda.get(&[i, j]), c.g.get(&[j, k, l])).mul(c.g.get(&[i, j, l]));
        let rhs = c.g.get(&[i, j, k]).mul(c.g.get(&[i, k, l]));
        rep.check("coc2", &t, &group_residual(&lhs, &rhs));
    }
    for i in 0..n {
        let id = GroupMap::identity(c.lambda.get(&[i, i]).size(), c.lambda.get(&[i, i]).dim());
        rep.check("coccases/norm", &[i, i], &group_residual(c.lambda.get(&[i, i]), &id));
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let g = c.g.get(&[i, i, j]);
        let id = GroupMap::identity(g.size(), g.dim());
        rep.check("coccases/norm", &[i, i, j], &group_residual(g, &id));
        rep.check("coccases/norm", &[i, j, j], &group_residual(c.g.get(&[i, j, j]), &id));
    }
    rep
}

/// `(cocep13clas0)` and `(cocep5clas1)`.
pub fn check_connection(cm: &dyn CrossedModule, c: &GerbeCocycle, conn: &ConnectionData) -> Result<RunReport> {
    let n = c.lambda.cover();
    let mut rep = RunReport::new("check_connection");
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let lhs = twisted_conjugate(c.lambda.get(&t), conn.m.get(&[j]))?;
        let rhs = conn.m.get(&[i]).sub(&boundary_form(cm, conn.gamma.get(&t))?);
        rep.check("cocep13clas0", &t, &lhs.sub(&rhs));
    }
    let dg = cech_delta1(cm, &c.lambda, &conn.gamma)?;
    for t in tuples(n, 3) {
        let rhs = d0_m_tilde(cm, conn.m.get(&[t[0]]), c.g.get(&t))?;
        rep.check("cocep5clas1", &t, &dg.get(&t).sub(&rhs));
    }
    Ok(rep)
}

/// `ν_i = d¹m_i - i(B_i)`, `δ_ij = δ⁰_λ(B)_ij - d¹_{m_i}(-γ_ij)`,
/// `ω_i = d²_{m_i}(B_i)`. Refuses unless the connection checks pass.
pub fn derive_curving(
    cm: &dyn CrossedModule,
    c: &GerbeCocycle,
    conn: &ConnectionData,
    b: &CurvingData,
) -> Result<DerivedCurving> {
    let rep = check_connection(cm, c, conn)?;
    if let Some(f) = rep.failures().next() {
        return Err(Error::Precondition(format!(
            "connection check fails at {} {:?}",
            f.equation, f.tuple
        )));
    }
    compute_curving(cm, c, conn, b)
}

/// The three defining formulas without the connection precondition.
pub fn compute_curving(
    cm: &dyn CrossedModule,
    c: &GerbeCocycle,
    conn: &ConnectionData,
    b: &CurvingData,
) -> Result<DerivedCurving> {
    let n = c.lambda.cover();
    let nu = Cochain::try_from_fn(n, 1, |t| {
        Ok(d1(conn.m.get(t))?.sub(&boundary_form(cm, b.b.get(t))?))
    })?;
    let d0b = cech_delta0(cm, &c.lambda, &b.b)?;
    let delta = Cochain::try_from_fn(n, 2, |t| {
        Ok(d0b.get(t).sub(&dn_m(cm, conn.m.get(&[t[0]]), &conn.gamma.get(t).neg())?))
    })?;
    let omega3 = Cochain::try_from_fn(n, 1, |t| dn_m(cm, conn.m.get(t), b.b.get(t)))?;
    Ok(DerivedCurving { nu, delta, omega3 })
}

/// Compares stored derived data with the defining formulas
/// `(ifi)`, `(eq:bij1a)`, `(defom)`.
pub fn check_derived(
    cm: &dyn CrossedModule,
    c: &GerbeCocycle,
    conn: &ConnectionData,
    b: &CurvingData,
    dc: &DerivedCurving,
) -> Result<RunReport> {
    let fresh = compute_curving(cm, c, conn, b)?;
    let mut rep = RunReport::new("check_derived");
    for (t, v) in fresh.nu.iter() {
        rep.check("ifi", &t, &dc.nu.get(&t).sub(v));
    }
    for (t, v) in fresh.delta.iter() {
        rep.check("bij1a", &t, &dc.delta.get(&t).sub(v));
    }
    for (t, v) in fresh.omega3.iter() {
        rep.check("defom", &t, &dc.omega3.get(&t).sub(v));
    }
    Ok(rep)
}

/// Gluing and Bianchi-type laws for the derived curving data:
/// `(cockap1)`, `(cockap2)`, `(cockap2a)`, `(relnufi)`, `(ificonj)`,
/// `(comoioj1)`.
pub fn check_curving(
    cm: &dyn CrossedModule,
    c: &GerbeCocycle,
    conn: &ConnectionData,
    b: &CurvingData,
    dc: &DerivedCurving,
) -> Result<RunReport> {
    let n = c.lambda.cover();
    let mut rep = RunReport::new("check_curving");
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let lhs = adjoint(c.lambda.get(&t), dc.nu.get(&[j]))?;
        let rhs = dc.nu.get(&[i]).sub(&boundary_form(cm, dc.delta.get(&t))?);
        rep.check("cockap1", &t, &lhs.sub(&rhs));
    }
    let d1d = cech_delta1(cm, &c.lambda, &dc.delta)?;
    for t in tuples(n, 3) {
        let rhs = act_bracket0(cm, dc.nu.get(&[t[0]]), c.g.get(&t))?;
        rep.check("cockap2", &t, &d1d.get(&t).sub(&rhs));
    }
    let d0b = cech_delta0(cm, &c.lambda, &b.b)?;
    let d1d0b = cech_delta1(cm, &c.lambda, &d0b)?;
    for t in tuples(n, 3) {
        let bi = b.b.get(&[t[0]]);
        let rhs = adjoint(c.g.get(&t), bi)?.sub(bi);
        rep.check("cockap2a", &t, &d1d0b.get(&t).sub(&rhs));
    }
    for i in 0..n {
        let m = conn.m.get(&[i]);
        let lhs = dn_m(cm, m, dc.omega3.get(&[i]))?;
        let rhs = act_bracket(cm, dc.nu.get(&[i]), b.b.get(&[i]))?;
        rep.check("relnufi", &[i], &lhs.sub(&rhs));
    }
    for i in 0..n {
        let lhs = dn_m(cm, conn.m.get(&[i]), dc.nu.get(&[i]))?;
        let res = lhs.add(&boundary_form(cm, dc.omega3.get(&[i]))?);
        rep.check("ificonj", &[i], &res);
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let lam = c.lambda.get(&t);
        let lhs = apply_aut(cm, lam, dc.omega3.get(&[j]))?
            .add(&act_bracket(cm, &adjoint(lam, dc.nu.get(&[j]))?, conn.gamma.get(&t))?);
        let rhs = dc.omega3.get(&[i]).add(&dn_m(cm, conn.m.get(&[i]), dc.delta.get(&t))?);
        rep.check("comoioj1", &t, &lhs.sub(&rhs));
    }
    Ok(rep)
}

/// Lemma `(comd1)`: `d¹_{m_i}(δ¹_λ γ̃)_ijk = d¹_{m_i}γ̃_ij + λ_ij(d¹_{m_j}γ̃_jk)
/// - λ_ijk(d¹_{m_i}γ̃_ik)` with `γ̃ = -γ`.
pub fn verify_comd1(cm: &dyn CrossedModule, c: &GerbeCocycle, conn: &ConnectionData) -> Result<RunReport> {
    let n = c.lambda.cover();
    let gt = conn.gamma.map(LieForm::neg);
    let dgt = cech_delta1(cm, &c.lambda, &gt)?;
    let mut rep = RunReport::new("verify_comd1");
    for t in tuples(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mi = conn.m.get(&[i]);
        let lhs = dn_m(cm, mi, dgt.get(&t))?;
        let rhs = dn_m(cm, mi, gt.get(&[i, j]))?
            .add(&apply_aut(cm, c.lambda.get(&[i, j]), &dn_m(cm, conn.m.get(&[j]), gt.get(&[j, k]))?)?)
            .sub(&apply_aut(cm, &lambda_ijk(c, i, j, k), &dn_m(cm, mi, gt.get(&[i, k]))?)?);
        rep.check("comd1", &t, &lhs.sub(&rhs));
    }
    Ok(rep)
}

/// `λ'_ij = i(θ_ij) r_i λ_ij r_j⁻¹`,
/// `g'_ijk = λ'_ij(θ_jk) θ_ij r_i(g_ijk) θ_ik⁻¹`.
pub fn apply_gerbe_coboundary(cm: &dyn CrossedModule, cb: &CoboundaryData, c: &GerbeCocycle) -> GerbeCocycle {
    let n = c.lambda.cover();
    let lambda = Cochain::from_fn(n, 2, |t| {
        let (i, j) = (t[0], t[1]);
        cm.boundary(cb.theta.get(t))
            .mul(cb.r.get(&[i]))
            .mul(c.lambda.get(t))
            .mul(&cb.r.get(&[j]).inverse())
    });
    let g = Cochain::from_fn(n, 3, |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        cm.act(lambda.get(&[i, j]), cb.theta.get(&[j, k]))
            .mul(cb.theta.get(&[i, j]))
            .mul(&cm.act(cb.r.get(&[i]), c.g.get(t)))
            .mul(&cb.theta.get(&[i, k]).inverse())
    });
    GerbeCocycle { lambda, g }
}

/// `m'_i = ^{r_i*}m_i + i(e_i)`, and `γ'_ij` solved from `(eq:eiteij4a)`:
/// `γ'_ij = ^{θ_ij}r_i(γ_ij) + ^{θ_ij}e_i - λ'_ij(e_j) + d̃⁰_{m'_i}θ_ij`.
pub fn apply_connection_coboundary(
    cm: &dyn CrossedModule,
    cb: &CoboundaryData,
    primed: &GerbeCocycle,
    conn: &ConnectionData,
) -> Result<ConnectionData> {
    let n = primed.lambda.cover();
    let m = Cochain::try_from_fn(n, 1, |t| {
        Ok(twisted_conjugate(cb.r.get(t), conn.m.get(t))?.add(&boundary_form(cm, cb.e.get(t))?))
    })?;
    let gamma = Cochain::try_from_fn(n, 2, |t| {
        let (i, j) = (t[0], t[1]);
        let th = cb.theta.get(t);
        let a = adjoint(th, &apply_aut(cm, cb.r.get(&[i]), conn.gamma.get(t))?)?;
        let b = adjoint(th, cb.e.get(&[i]))?;
        let c = apply_aut(cm, primed.lambda.get(t), cb.e.get(&[j]))?;
        Ok(a.add(&b).sub(&c).add(&d0_m_tilde(cm, m.get(&[i]), th)?))
    })?;
    Ok(ConnectionData { m, gamma })
}

/// `B'_i = r_i(B_i) - d¹_{m'_i}(-e_i) - n_i`.
pub fn apply_curving_coboundary(
    cm: &dyn CrossedModule,
    cb: &CoboundaryData,
    primed_conn: &ConnectionData,
    b: &CurvingData,
) -> Result<CurvingData> {
    let n = b.b.cover();
    let b2 = Cochain::try_from_fn(n, 1, |t| {
        Ok(apply_aut(cm, cb.r.get(t), b.b.get(t))?
            .sub(&dn_m(cm, primed_conn.m.get(t), &cb.e.get(t).neg())?)
            .sub(cb.n.get(t)))
    })?;
    Ok(CurvingData { b: b2 })
}

/// Everything a gerbe with connective structure consists of, in one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeData {
    pub cocycle: GerbeCocycle,
    pub connection: ConnectionData,
    pub curving: CurvingData,
    pub derived: DerivedCurving,
}

impl GerbeData {
    /// Builds the derived curving data, refusing if the connection checks fail.
    pub fn new(
        cm: &dyn CrossedModule,
        cocycle: GerbeCocycle,
        connection: ConnectionData,
        curving: CurvingData,
    ) -> Result<Self> {
        let derived = derive_curving(cm, &cocycle, &connection, &curving)?;
        Ok(GerbeData { cocycle, connection, curving, derived })
    }
}

/// Transports a full dataset along a coboundary; the derived data are
/// recomputed directly from the primed curving.
pub fn transport(cm: &dyn CrossedModule, cb: &CoboundaryData, data: &GerbeData) -> Result<GerbeData> {
    let cocycle = apply_gerbe_coboundary(cm, cb, &data.cocycle);
    let connection = apply_connection_coboundary(cm, cb, &cocycle, &data.connection)?;
    let curving = apply_curving_coboundary(cm, cb, &connection, &data.curving)?;
    let derived = compute_curving(cm, &cocycle, &connection, &curving)?;
    Ok(GerbeData { cocycle, connection, curving, derived })
}

/// Every closure check on a dataset: cocycle, connection, curving, `comd1`.
pub fn check_all(cm: &dyn CrossedModule, data: &GerbeData) -> Result<RunReport> {
    let mut rep = check_cocycle(cm, &data.cocycle);
    rep.merge(check_connection(cm, &data.cocycle, &data.connection)?);
    rep.merge(check_derived(cm, &data.cocycle, &data.connection, &data.curving, &data.derived)?);
    rep.merge(check_curving(cm, &data.cocycle, &data.connection, &data.curving, &data.derived)?);
    rep.merge(verify_comd1(cm, &data.cocycle, &data.connection)?);
    Ok(rep)
}

/// `(eq:ni1)`, `(eq:niri)`, `(coboun-om1)`, `(coboun-om1a)` between a
/// dataset and its transport, with `ω'` taken as `d²_{m'_i}(B'_i)`.
///
/// `niri` is checked as `(δ'_ij - ^{θ_ij}r_i(δ_ij)) + (λ'_ij(n_j) - ^{θ_ij}n_i)
/// = [ν'_i, θ_ij]`; without the `θ_ij` conjugation on `r_i(δ_ij)` it fails
/// whenever `θ_ij ≠ 1`, matching the 1-form law `(eq:eiteij4a)`.
pub fn check_coboundary_consistency(
    cm: &dyn CrossedModule,
    cb: &CoboundaryData,
    orig: &GerbeData,
    primed: &GerbeData,
) -> Result<RunReport> {
    let n = orig.cocycle.lambda.cover();
    let mut rep = RunReport::new("check_coboundary_consistency");
    let direct = Cochain::try_from_fn(n, 1, |t| {
        dn_m(cm, primed.connection.m.get(t), primed.curving.b.get(t))
    })?;
    for i in 0..n {
        let r = cb.r.get(&[i]);
        let rhs = adjoint(r, orig.derived.nu.get(&[i]))?.add(&boundary_form(cm, cb.n.get(&[i]))?);
        rep.check("ni1", &[i], &primed.derived.nu.get(&[i]).sub(&rhs));
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let th = cb.theta.get(&t);
        let rd = apply_aut(cm, cb.r.get(&[i]), orig.derived.delta.get(&t))?;
        let a = primed.derived.delta.get(&t).sub(&adjoint(th, &rd)?);
        let b = apply_aut(cm, primed.cocycle.lambda.get(&t), cb.n.get(&[j]))?.sub(&adjoint(th, cb.n.get(&[i]))?);
        let rhs = act_bracket0(cm, primed.derived.nu.get(&[i]), th)?;
        rep.check("niri", &t, &a.add(&b).sub(&rhs));
    }
    for i in 0..n {
        let r = cb.r.get(&[i]);
        let e = cb.e.get(&[i]);
        let ni = cb.n.get(&[i]);
        let r_om = apply_aut(cm, r, orig.derived.omega3.get(&[i]))?;
        let om1 = r_om
            .add(&act_bracket(cm, &adjoint(r, orig.derived.nu.get(&[i]))?, e)?)
            .sub(&dn_m(cm, primed.connection.m.get(&[i]), ni)?);
        rep.check("coboun-om1", &[i], &om1.sub(direct.get(&[i])));
        let rm = twisted_conjugate(r, orig.connection.m.get(&[i]))?;
        let om1a = r_om
            .add(&act_bracket(cm, primed.derived.nu.get(&[i]), e)?)
            .sub(&dn_m(cm, &rm, ni)?);
        rep.check("coboun-om1a", &[i], &om1a.sub(direct.get(&[i])));
        rep.check("coboun-om", &[i], &primed.derived.omega3.get(&[i]).sub(direct.get(&[i])));
    }
    Ok(rep)
}

/// Transport plus every check on the primed data and the consistency laws.
pub fn coboundary_report(cm: &dyn CrossedModule, cb: &CoboundaryData, data: &GerbeData) -> Result<(GerbeData, RunReport)> {
    let primed = transport(cm, cb, data)?;
    let mut rep = check_all(cm, &primed)?;
    rep.merge(check_coboundary_consistency(cm, cb, data, &primed)?);
    Ok((primed, rep))
}

/// Specialization `r = 1`, `θ = 1`, `e = -E`, `n = -α`:
/// `ω'_i = ω_i + d²_{m_i}(α_i) - [ν'_i, E_i]`.
pub fn remark_check(cm: &dyn CrossedModule, data: &GerbeData, cb: &CoboundaryData) -> Result<RunReport> {
    if cb.r.iter().any(|(_, r)| !r.is_identity()) || cb.theta.iter().any(|(_, t)| !t.is_identity()) {
        return Err(rejected("the reduction needs r ≡ 1 and θ ≡ 1"));
    }
    let primed = transport(cm, cb, data)?;
    let n = data.cocycle.lambda.cover();
    let mut rep = RunReport::new("remark_check");
    for i in 0..n {
        let big_e = cb.e.get(&[i]).neg();
        let alpha = cb.n.get(&[i]).neg();
        let direct = dn_m(cm, primed.connection.m.get(&[i]), primed.curving.b.get(&[i]))?;
        let simp = data.derived.omega3.get(&[i])
            .add(&dn_m(cm, data.connection.m.get(&[i]), &alpha)?)
            .sub(&act_bracket(cm, primed.derived.nu.get(&[i]), &big_e)?);
        rep.check("simp", &[i], &direct.sub(&simp));
    }
    Ok(rep)
}

/// `κ_i = d¹ω_i`.
pub fn bundle_curvature(b: &BundleData) -> Result<Cochain<LieForm>> {
    Cochain::try_from_fn(b.omega1.cover(), 1, |t| d1(b.omega1.get(t)))
}

/// Cocycle, `(con:local)`, curvature gluing and local Bianchi.
pub fn bundle_check(b: &BundleData) -> Result<RunReport> {
    let n = b.g1.cover();
    let mut rep = RunReport::new("bundle_check");
    for t in tuples(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let lhs = b.g1.get(&[i, j]).mul(b.g1.get(&[j, k]));
        rep.check("con:local/cocycle", &t, &group_residual(&lhs, b.g1.get(&[i, k])));
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let g = b.g1.get(&t);
        let rhs = adjoint_right(g, b.omega1.get(&[i]))?.add(&d0(g, Side::H));
        rep.check("con:local", &t, &b.omega1.get(&[j]).sub(&rhs));
    }
    let kappa = bundle_curvature(b)?;
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let rhs = adjoint_right(b.g1.get(&t), kappa.get(&[i]))?;
        rep.check("con:local/kappa", &t, &kappa.get(&[j]).sub(&rhs));
    }
    for i in 0..n {
        let w = b.omega1.get(&[i]);
        let k = kappa.get(&[i]);
        let res = dn(k)?.add(&bracket(w, k)?);
        rep.check("bianchiclas", &[i], &res);
    }
    Ok(rep)
}

/// Collects every record of a report for one equation and tuple.
pub fn find<'a>(rep: &'a RunReport, equation: &str, tuple: &[usize]) -> Option<&'a Record> {
    rep.records.iter().find(|r| r.equation == equation && r.tuple == tuple)
}

impl GerbeCocycle {
    /// `λ ≡ 1`, `g ≡ 1`.
    pub fn trivial(cm: &dyn CrossedModule, n: usize, dim: usize) -> Self {
        GerbeCocycle {
            lambda: Cochain::filled(n, 2, GroupMap::identity(cm.a_size(), dim)),
            g: Cochain::filled(n, 3, GroupMap::identity(cm.h_size(), dim)),
        }
    }
}

impl CoboundaryData {
    /// `r ≡ 1`, `θ ≡ 1`, `e ≡ 0`, `n ≡ 0`.
    pub fn identity(cm: &dyn CrossedModule, n: usize, dim: usize) -> Self {
        CoboundaryData {
            r: Cochain::filled(n, 1, GroupMap::identity(cm.a_size(), dim)),
            theta: Cochain::filled(n, 2, GroupMap::identity(cm.h_size(), dim)),
            e: Cochain::filled(n, 1, LieForm::zero(1, dim, cm.h_size(), Side::H)),
            n: Cochain::filled(n, 1, LieForm::zero(2, dim, cm.h_size(), Side::H)),
        }
    }
}

/// Parameters for [`generate_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerateParams {
    pub seed: u64,
    pub cover: usize,
    pub dim: usize,
    pub size: usize,
    /// Polynomial degree of random coefficients.
    pub degree: u16,
}

/// Trivial gerbe data with a random global connection and curving,
/// transported by a seeded random coboundary. Only defined for `INNER`,
/// where `A = H` and every coboundary is available.
///
/// Returns the transported data and the coboundary that produced it.
pub fn generate_exact(cm: &dyn CrossedModule, p: GenerateParams) -> Result<(GerbeData, CoboundaryData)> {
    use crate::random::{random_form, random_unipotent, sample_rng};
    if cm.tag() != "INNER" {
        return Err(rejected("exact generation needs the INNER instance"));
    }
    if p.cover < 3 || p.dim < 2 {
        return Err(rejected("exact generation needs a cover of at least 3 charts and dim >= 2"));
    }
    let (n, d, k, deg) = (p.cover, p.dim, p.size, p.degree);
    let mut rng = sample_rng(p.seed, 0);
    let m = random_form(&mut rng, 1, d, k, Side::A, deg);
    let b = random_form(&mut rng, 2, d, k, Side::H, deg);
    let trivial = GerbeData::new(
        cm,
        GerbeCocycle::trivial(cm, n, d),
        ConnectionData {
            m: Cochain::filled(n, 1, m),
            gamma: Cochain::filled(n, 2, LieForm::zero(1, d, k, Side::H)),
        },
        CurvingData { b: Cochain::filled(n, 1, b) },
    )?;
    let r = Cochain::from_fn(n, 1, |_| random_unipotent(&mut rng, k, d, deg));
    let theta = Cochain::from_fn(n, 2, |t| {
        if t[0] == t[1] {
            GroupMap::identity(k, d)
        } else {
            random_unipotent(&mut rng, k, d, deg)
        }
    });
    let e = Cochain::from_fn(n, 1, |_| random_form(&mut rng, 1, d, k, Side::H, deg));
    let nn = Cochain::from_fn(n, 1, |_| random_form(&mut rng, 2, d, k, Side::H, deg));
    let cb = CoboundaryData { r, theta, e, n: nn };
    Ok((transport(cm, &cb, &trivial)?, cb))
}

/// A coboundary with `r ≡ 1` and `θ ≡ 1` and random `e`, `n`.
pub fn generate_shift(cm: &dyn CrossedModule, p: GenerateParams) -> CoboundaryData {
    use crate::random::{random_form, sample_rng};
    let (n, d, k) = (p.cover, p.dim, p.size);
    let mut rng = sample_rng(p.seed, 2);
    let mut cb = CoboundaryData::identity(cm, n, d);
    cb.e = Cochain::from_fn(n, 1, |_| random_form(&mut rng, 1, d, k, Side::H, p.degree));
    cb.n = Cochain::from_fn(n, 1, |_| random_form(&mut rng, 2, d, k, Side::H, p.degree));
    cb
}

/// Bundle data obtained by gauge-transforming a random global connection
/// `w` by random `h_i`: `g_ij = h_i⁻¹h_j`, `ω_i = h_i⁻¹ w h_i + h_i⁻¹dh_i`.
pub fn generate_bundle(p: GenerateParams) -> BundleData {
    use crate::random::{random_form, random_unipotent, sample_rng};
    let (n, d, k) = (p.cover, p.dim, p.size);
    let mut rng = sample_rng(p.seed, 3);
    let h: Vec<GroupMap> = (0..n).map(|_| random_unipotent(&mut rng, k, d, p.degree)).collect();
    let w = random_form(&mut rng, 1, d, k, Side::H, p.degree);
    BundleData {
        g1: Cochain::from_fn(n, 2, |t| h[t[0]].inverse().mul(&h[t[1]])),
        omega1: Cochain::from_fn(n, 1, |t| {
            let gauge = adjoint_right(&h[t[0]], &w).expect("sizes agree by construction");
            gauge.add(&d0(&h[t[0]], Side::H))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{Abelian, Inner};
    use crate::random::{random_form, random_unipotent, sample_rng};

    fn params(seed: u64) -> GenerateParams {
        GenerateParams { seed, cover: 3, dim: 2, size: 2, degree: 1 }
    }

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn identity_coboundary_is_a_no_op() {
        let cm = Inner { k: 2 };
        let mut rng = sample_rng(5, 0);
        let data = GerbeData::new(
            &cm,
            GerbeCocycle::trivial(&cm, 2, 2),
            ConnectionData {
                m: Cochain::filled(2, 1, random_form(&mut rng, 1, 2, 2, Side::A, 1)),
                gamma: Cochain::filled(2, 2, LieForm::zero(1, 2, 2, Side::H)),
            },
            CurvingData { b: Cochain::filled(2, 1, random_form(&mut rng, 2, 2, 2, Side::H, 1)) },
        )
        .unwrap();
        let out = transport(&cm, &CoboundaryData::identity(&cm, 2, 2), &data).unwrap();
        assert_eq!(out, data);
    }

    #[test]
    fn generated_data_close() {
        let cm = Inner { k: 2 };
        let (data, cb) = generate_exact(&cm, params(1)).unwrap();
        let rep = check_all(&cm, &data).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        let (_, rep) = coboundary_report(&cm, &cb, &data).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn generation_is_deterministic() {
        let cm = Inner { k: 2 };
        assert_eq!(generate_exact(&cm, params(9)).unwrap(), generate_exact(&cm, params(9)).unwrap());
        assert_ne!(generate_exact(&cm, params(9)).unwrap().0, generate_exact(&cm, params(10)).unwrap().0);
    }

    #[test]
    fn abelian_generation_refused() {
        assert!(generate_exact(&Abelian { k: 2 }, params(1)).is_err());
    }

    #[test]
    fn corrupted_lambda_fails_coc1() {
        let cm = Inner { k: 2 };
        let (mut data, _) = generate_exact(&cm, params(2)).unwrap();
        let bad = data.cocycle.lambda.get(&[0, 1]).mul(&random_unipotent(&mut sample_rng(3, 0), 2, 2, 1));
        data.cocycle.lambda.set(&[0, 1], bad);
        let rep = check_cocycle(&cm, &data.cocycle);
        assert!(!find(&rep, "coc1", &[0, 1, 2]).unwrap().passed());
    }

    #[test]
    fn zeroed_omega_fails_defom_only_there() {
        let cm = Inner { k: 2 };
        let p = GenerateParams { dim: 3, ..params(4) };
        let (mut data, _) = generate_exact(&cm, p).unwrap();
        data.derived.omega3.set(&[1], LieForm::zero(3, 3, 2, Side::H));
        let rep = check_derived(&cm, &data.cocycle, &data.connection, &data.curving, &data.derived).unwrap();
        let bad: Vec<_> = rep.failures().map(|r| (r.equation.as_str(), r.tuple.clone())).collect();
        assert_eq!(bad, vec![("defom", vec![1])]);
    }

    #[test]
    fn derive_refuses_broken_connection() {
        let cm = Inner { k: 2 };
        let (mut data, _) = generate_exact(&cm, params(6)).unwrap();
        let m0 = data.connection.m.get(&[0]).add(&random_form(&mut sample_rng(1, 1), 1, 2, 2, Side::A, 1));
        data.connection.m.set(&[0], m0);
        let err = derive_curving(&cm, &data.cocycle, &data.connection, &data.curving).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn remark_reduction() {
        let cm = Inner { k: 2 };
        let (data, _) = generate_exact(&cm, params(7)).unwrap();
        let mut rng = sample_rng(7, 1);
        let mut cb = CoboundaryData::identity(&cm, 3, 2);
        cb.e = Cochain::from_fn(3, 1, |_| random_form(&mut rng, 1, 2, 2, Side::H, 1));
        cb.n = Cochain::from_fn(3, 1, |_| random_form(&mut rng, 2, 2, 2, Side::H, 1));
        let rep = remark_check(&cm, &data, &cb).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        cb.r.set(&[1], random_unipotent(&mut rng, 2, 2, 1));
        assert!(remark_check(&cm, &data, &cb).is_err());
    }

    #[test]
    fn two_coboundaries_compose() {
        let cm = Inner { k: 2 };
        let (data, _) = generate_exact(&cm, params(11)).unwrap();
        let (_, first) = generate_exact(&cm, params(12)).unwrap();
        let (_, second) = generate_exact(&cm, params(13)).unwrap();
        let twice = apply_gerbe_coboundary(&cm, &second, &apply_gerbe_coboundary(&cm, &first, &data.cocycle));
        // r'' = r' r, θ''_ij = θ'_ij r'_i(θ_ij)
        let mut comp = first.clone();
        comp.r = Cochain::from_fn(3, 1, |t| second.r.get(t).mul(first.r.get(t)));
        comp.theta = Cochain::from_fn(3, 2, |t| {
            second.theta.get(t).mul(&cm.act(second.r.get(&[t[0]]), first.theta.get(t)))
        });
        assert_eq!(twice, apply_gerbe_coboundary(&cm, &comp, &data.cocycle));
    }

    #[test]
    fn niri_needs_theta_conjugation() {
        let cm = Inner { k: 2 };
        let p = params(1);
        let (data, cb) = generate_exact(&cm, p).unwrap();
        let primed = transport(&cm, &cb, &data).unwrap();
        let t = [0, 1];
        let unconjugated = primed.derived.delta.get(&t)
            .sub(&apply_aut(&cm, cb.r.get(&[0]), data.derived.delta.get(&t)).unwrap())
            .add(&apply_aut(&cm, primed.cocycle.lambda.get(&t), cb.n.get(&[1])).unwrap())
            .sub(&adjoint(cb.theta.get(&t), cb.n.get(&[0])).unwrap())
            .sub(&act_bracket0(&cm, primed.derived.nu.get(&[0]), cb.theta.get(&t)).unwrap());
        assert!(!unconjugated.is_zero());
        let rep = check_coboundary_consistency(&cm, &cb, &data, &primed).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn bundle_from_gauge_transform() {
        let mut rng = sample_rng(21, 0);
        let h: Vec<GroupMap> = (0..3).map(|_| random_unipotent(&mut rng, 2, 3, 1)).collect();
        let w = random_form(&mut rng, 1, 3, 2, Side::H, 1);
        // g_ij = h_i⁻¹ h_j, ω_i = h_i⁻¹-gauge transform of a global ω
        let g1 = Cochain::from_fn(3, 2, |t| h[t[0]].inverse().mul(&h[t[1]]));
        let omega1 = Cochain::from_fn(3, 1, |t| {
            adjoint_right(&h[t[0]], &w).unwrap().add(&d0(&h[t[0]], Side::H))
        });
        let b = BundleData { g1, omega1 };
        let rep = bundle_check(&b).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }
}
