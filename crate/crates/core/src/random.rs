//! Seeded sampling of polynomials, matrices, forms and group elements.
//!
//! Every sample stream is derived from `(root seed, index)` so runs can be
//! sharded without changing results.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crossed::GroupMap;
use crate::forms::{LieForm, Side};
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Poly};
use crate::ring::{rat, Rat};
use crate::weil::subsets;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(splitmix64(seed) ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03)))
}

/// Exponent vectors of total degree at most `degree`, ascending grlex.
pub fn monomials_up_to(dim: usize, degree: u16) -> Vec<Monomial> {
    fn go(pos: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            go(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    go(0, degree, &mut vec![0; dim], &mut out);
    out.sort();
    out
}

/// Small nonzero rational: an integer in `[-3, 3]`, sometimes halved.
pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    let mut p: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    let q = if rng.gen_bool(0.2) { 2 } else { 1 };
    rat(p, q)
}

/// Random polynomial of total degree at most `degree`; each monomial is
/// present with probability one half.
pub fn random_poly<R: Rng>(rng: &mut R, dim: usize, degree: u16) -> Poly {
    Poly::from_terms(
        dim,
        monomials_up_to(dim, degree)
            .into_iter()
            .filter_map(|m| rng.gen_bool(0.5).then(|| (m, small_rat(rng)))),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, k: usize, dim: usize, degree: u16) -> PolyMatrix {
    PolyMatrix::from_fn(k, k, |_, _| random_poly(rng, dim, degree))
}

/// Random form; each coefficient matrix is present with probability 3/4.
pub fn random_form<R: Rng>(
    rng: &mut R,
    degree: usize,
    dim: usize,
    k: usize,
    side: Side,
    poly_degree: u16,
) -> LieForm {
    let terms: Vec<_> = subsets(dim, degree)
        .into_iter()
        .filter_map(|idx| rng.gen_bool(0.75).then(|| (idx, random_matrix(rng, k, dim, poly_degree))))
        .collect();
    LieForm::from_terms(degree, dim, k, side, terms).expect("well-formed random form")
}

/// Random unipotent element, upper or lower triangular with equal odds.
pub fn random_unipotent<R: Rng>(rng: &mut R, k: usize, dim: usize, degree: u16) -> GroupMap {
    let upper = rng.gen_bool(0.5);
    let m = PolyMatrix::from_fn(k, k, |i, j| {
        if i == j {
            Poly::one(dim)
        } else if (i < j) == upper {
            random_poly(rng, dim, degree)
        } else {
            Poly::zero(dim)
        }
    });
    GroupMap::unipotent(m).expect("triangular unipotent matrices invert")
}

/// Product of two random unipotent elements: a generic element with
/// polynomial inverse. The factors have degree `⌈degree/2⌉`, so entries stay
/// within `max(degree, 2)`; full-degree factors make conjugations explode.
pub fn random_group<R: Rng>(rng: &mut R, k: usize, dim: usize, degree: u16) -> GroupMap {
    let half = degree.div_ceil(2).max(1);
    let a = loop {
        let a = random_unipotent(rng, k, dim, half);
        if !a.is_identity() || k == 1 {
            break a;
        }
    };
    let b = random_unipotent(rng, k, dim, half);
    a.mul(&b)
}

/// Constant invertible diagonal matrix, for commutative groups.
pub fn random_diagonal<R: Rng>(rng: &mut R, k: usize, dim: usize) -> GroupMap {
    let diag: Vec<Rat> = (0..k).map(|_| small_rat(rng)).collect();
    let mat = PolyMatrix::from_fn(k, k, |i, j| {
        if i == j { Poly::constant(dim, diag[i].clone()) } else { Poly::zero(dim) }
    });
    let inv = PolyMatrix::from_fn(k, k, |i, j| {
        if i == j {
            Poly::constant(dim, Rat::from_integer(1.into()) / &diag[i])
        } else {
            Poly::zero(dim)
        }
    });
    GroupMap::new(mat, inv).expect("diagonal inverse")
}

/// Random diagonal Lie element (commutative subalgebra).
pub fn random_diagonal_matrix<R: Rng>(rng: &mut R, k: usize, dim: usize, degree: u16) -> PolyMatrix {
    PolyMatrix::from_fn(k, k, |i, j| if i == j { random_poly(rng, dim, degree) } else { Poly::zero(dim) })
}
