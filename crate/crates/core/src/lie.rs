//! Metric Lie algebra in the adapted orthonormal frame: brackets, the Jacobi
//! defect, the Levi-Civita connection via the Koszul formula, curvature, and
//! the second fundamental forms of the vertical foliation.
//!
//! Sign conventions are pinned by two anchors that the tests reproduce:
//! for the pure vertical algebra `[W,Z] = λW` the connection satisfies
//! `∇_W W = -λZ`, and for a general bracket table the horizontal component
//! `g(trace B^V, X)` equals `-z1 - d3`.

use crate::linalg::{dot, Tensor3, Vec4};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("structure constants are not antisymmetric: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("degenerate plane: the two vectors are linearly dependent")]
    DegeneratePlane,
}

/// A 4-dimensional Lie algebra with the identity metric in the frame
/// `{X, Y, Z, W}`, stored as structure constants `[e_i, e_j] = c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra4<S> {
    c: Tensor3<S>,
}

impl<S: Scalar> LieAlgebra4<S> {
    /// Wrap a structure-constant table, verifying antisymmetry entrywise.
    pub fn new(c: Tensor3<S>, tol: f64) -> Result<Self, LieError> {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let defect = c.get(i, j, k).clone() + c.get(j, i, k).clone();
                    if !defect.is_negligible(tol) {
                        return Err(LieError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(LieAlgebra4 { c })
    }

    pub fn abelian() -> Self {
        LieAlgebra4 { c: Tensor3::zero() }
    }

    /// Build from a list of bracket values `[e_i, e_j] = v` for `i > j` or
    /// any set of pairs; the mirror entries are filled by antisymmetry.
    pub fn from_brackets(entries: &[((usize, usize), Vec4<S>)]) -> Self {
        let mut c = Tensor3::zero();
        for ((i, j), v) in entries {
            for k in 0..4 {
                c.set(*i, *j, k, v.0[k].clone());
                c.set(*j, *i, k, -v.0[k].clone());
            }
        }
        LieAlgebra4 { c }
    }

    pub fn structure_constants(&self) -> &Tensor3<S> {
        &self.c
    }

    /// `[e_i, e_j]` as a frame vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec4<S> {
        Vec4::from_fn(|k| self.c.get(i, j, k).clone())
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, u: &Vec4<S>, v: &Vec4<S>) -> Vec4<S> {
        let mut out: Vec4<S> = Vec4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let coeff = u.0[i].clone() * v.0[j].clone();
                for k in 0..4 {
                    out.0[k] = out.0[k].clone() + coeff.clone() * self.c.get(i, j, k).clone();
                }
            }
        }
        out
    }

    /// Max-norm over basis triples of the cyclic sum
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    ///
    /// Zero exactly when the bracket table is a Lie algebra. Triples with a
    /// repeated index cancel pairwise by antisymmetry and permutations only
    /// flip the sign, so scanning `i < j < k` covers all of them.
    pub fn jacobi_defect(&self) -> S {
        let mut worst = S::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    for m in 0..4 {
                        let mut sum = S::zero();
                        for l in 0..4 {
                            sum = sum
                                + self.c.get(i, j, l).clone() * self.c.get(l, k, m).clone()
                                + self.c.get(j, k, l).clone() * self.c.get(l, i, m).clone()
                                + self.c.get(k, i, l).clone() * self.c.get(l, j, m).clone();
                        }
                        let a = sum.abs();
                        if a > worst {
                            worst = a;
                        }
                    }
                }
            }
        }
        worst
    }

    /// Entrywise antisymmetry defect, `max |c[i][j][k] + c[j][i][k]|`.
    pub fn antisymmetry_defect(&self) -> S {
        let mut worst = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let d = (self.c.get(i, j, k).clone() + self.c.get(j, i, k).clone()).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }
}

/// Levi-Civita connection coefficients `gamma[i][j][k] = g(∇_{e_i} e_j, e_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<S> {
    gamma: Tensor3<S>,
}

/// Koszul formula for left-invariant fields on a Riemannian Lie group:
/// `2 g(∇_u v, w) = g([u,v],w) - g([v,w],u) + g([w,u],v)`.
pub fn levi_civita<S: Scalar>(alg: &LieAlgebra4<S>) -> Connection<S> {
    let gamma = Tensor3::from_fn(|i, j, k| {
        let t =
            alg.c.get(i, j, k).clone() - alg.c.get(j, k, i).clone() + alg.c.get(k, i, j).clone();
        t.half()
    });
    Connection { gamma }
}

impl<S: Scalar> Connection<S> {
    pub fn coefficients(&self) -> &Tensor3<S> {
        &self.gamma
    }

    /// `∇_{e_i} e_j` as a frame vector.
    pub fn nabla_basis(&self, i: usize, j: usize) -> Vec4<S> {
        Vec4::from_fn(|k| self.gamma.get(i, j, k).clone())
    }

    /// `∇_u v` for constant-coefficient (left-invariant) fields.
    pub fn nabla(&self, u: &Vec4<S>, v: &Vec4<S>) -> Vec4<S> {
        let mut out: Vec4<S> = Vec4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let coeff = u.0[i].clone() * v.0[j].clone();
                for k in 0..4 {
                    out.0[k] = out.0[k].clone() + coeff.clone() * self.gamma.get(i, j, k).clone();
                }
            }
        }
        out
    }

    /// `max |gamma[i][j][k] + gamma[i][k][j]|`; zero for a metric connection.
    pub fn metric_defect(&self) -> S {
        let mut worst = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let d =
                        (self.gamma.get(i, j, k).clone() + self.gamma.get(i, k, j).clone()).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }

    /// `max |gamma[i][j][k] - gamma[j][i][k] - c[i][j][k]|`; zero when
    /// torsion-free.
    pub fn torsion_defect(&self, alg: &LieAlgebra4<S>) -> S {
        let mut worst = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let d = (self.gamma.get(i, j, k).clone()
                        - self.gamma.get(j, i, k).clone()
                        - alg.c.get(i, j, k).clone())
                    .abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }
}

/// Curvature operator `R(u,v)w = ∇_u ∇_v w - ∇_v ∇_u w - ∇_{[u,v]} w`.
pub fn curvature_operator<S: Scalar>(
    conn: &Connection<S>,
    alg: &LieAlgebra4<S>,
    u: &Vec4<S>,
    v: &Vec4<S>,
    w: &Vec4<S>,
) -> Vec4<S> {
    let a = conn.nabla(u, &conn.nabla(v, w));
    let b = conn.nabla(v, &conn.nabla(u, w));
    let c = conn.nabla(&alg.bracket(u, v), w);
    a.sub(&b).sub(&c)
}

/// Sectional curvature of the plane spanned by `u` and `v`, normalized by
/// the Gram determinant so the inputs need not be orthonormal.
pub fn sectional_curvature<S: Scalar>(
    conn: &Connection<S>,
    alg: &LieAlgebra4<S>,
    u: &Vec4<S>,
    v: &Vec4<S>,
    tol: f64,
) -> Result<S, LieError> {
    let gram = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
    if gram.is_negligible(tol) {
        return Err(LieError::DegeneratePlane);
    }
    let r = curvature_operator(conn, alg, u, v, v);
    Ok(dot(&r, u) / gram)
}

fn bracket_span<S: Scalar>(
    alg: &LieAlgebra4<S>,
    left: &[Vec4<S>],
    right: &[Vec4<S>],
) -> Vec<Vec4<S>> {
    let mut out = Vec::new();
    for u in left {
        for v in right {
            out.push(alg.bracket(u, v));
        }
    }
    out
}

fn subspace_basis<S: Scalar>(vectors: &[Vec4<S>], tol: f64) -> Vec<Vec4<S>> {
    // Reduce to an independent subset greedily.
    let mut basis: Vec<Vec4<S>> = Vec::new();
    for v in vectors {
        let mut candidate = basis.clone();
        candidate.push(v.clone());
        if crate::linalg::span_dimension(&candidate, tol) > basis.len() {
            basis.push(v.clone());
        }
    }
    basis
}

/// Dimensions of the derived series `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ...`,
/// reported until it stabilizes. The algebra is solvable when the series
/// reaches zero. Informational only; classification never consults it.
pub fn derived_series<S: Scalar>(alg: &LieAlgebra4<S>, tol: f64) -> Vec<usize> {
    let mut current: Vec<Vec4<S>> = (0..4).map(Vec4::basis).collect();
    let mut dims = vec![current.len()];
    loop {
        let next = subspace_basis(&bracket_span(alg, &current, &current), tol);
        if next.len() == current.len() {
            dims.push(next.len());
            break;
        }
        dims.push(next.len());
        if next.is_empty() {
            break;
        }
        current = next;
    }
    dims
}

/// Dimensions of the lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...`.
pub fn lower_central_series<S: Scalar>(alg: &LieAlgebra4<S>, tol: f64) -> Vec<usize> {
    let full: Vec<Vec4<S>> = (0..4).map(Vec4::basis).collect();
    let mut current = full.clone();
    let mut dims = vec![current.len()];
    loop {
        let next = subspace_basis(&bracket_span(alg, &full, &current), tol);
        if next.len() == current.len() {
            dims.push(next.len());
            break;
        }
        dims.push(next.len());
        if next.is_empty() {
            break;
        }
        current = next;
    }
    dims
}

pub fn is_solvable<S: Scalar>(alg: &LieAlgebra4<S>, tol: f64) -> bool {
    *derived_series(alg, tol).last().unwrap() == 0
}

pub fn is_nilpotent<S: Scalar>(alg: &LieAlgebra4<S>, tol: f64) -> bool {
    *lower_central_series(alg, tol).last().unwrap() == 0
}

/// Second fundamental form data of the foliation with vertical distribution
/// `span{Z, W}` and horizontal distribution `span{X, Y}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliationData<S> {
    /// Horizontal part of `∇_Z Z + ∇_W W` (the unnormalized mean curvature
    /// of the leaves).
    pub trace_bv: Vec4<S>,
    /// Vertical parts of `∇_X X`, `∇_Y Y` and the symmetrized
    /// `(∇_X Y + ∇_Y X)/2`.
    pub bh_xx: Vec4<S>,
    pub bh_yy: Vec4<S>,
    pub bh_xy: Vec4<S>,
    /// The vertical witness field `V` with `B^H = g ⊗ V`, present when the
    /// foliation is conformal.
    pub conformal_witness: Option<Vec4<S>>,
    pub minimal: bool,
    pub conformal: bool,
    pub riemannian: bool,
    pub totally_geodesic: bool,
}

fn horizontal<S: Scalar>(v: &Vec4<S>) -> Vec4<S> {
    Vec4([v.0[0].clone(), v.0[1].clone(), S::zero(), S::zero()])
}

fn vertical<S: Scalar>(v: &Vec4<S>) -> Vec4<S> {
    Vec4([S::zero(), S::zero(), v.0[2].clone(), v.0[3].clone()])
}

/// Compute the foliation invariants from the connection.
pub fn foliation_data<S: Scalar>(conn: &Connection<S>, tol: f64) -> FoliationData<S> {
    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;
    const W: usize = 3;

    let trace_bv = horizontal(&conn.nabla_basis(Z, Z).add(&conn.nabla_basis(W, W)));
    let bh_xx = vertical(&conn.nabla_basis(X, X));
    let bh_yy = vertical(&conn.nabla_basis(Y, Y));
    let bh_xy =
        vertical(&conn.nabla_basis(X, Y).add(&conn.nabla_basis(Y, X))).scale(&S::one().half());

    let minimal = trace_bv.is_zero(tol);
    let conformal = bh_xx.sub(&bh_yy).is_zero(tol) && bh_xy.is_zero(tol);
    let conformal_witness = conformal.then(|| bh_xx.clone());
    let riemannian = conformal && bh_xx.is_zero(tol);

    // B^V entries: horizontal parts of ∇_Z Z, ∇_W W and (∇_Z W + ∇_W Z)/2.
    let bv_zz = horizontal(&conn.nabla_basis(Z, Z));
    let bv_ww = horizontal(&conn.nabla_basis(W, W));
    let bv_zw = horizontal(&conn.nabla_basis(Z, W).add(&conn.nabla_basis(W, Z)));
    let totally_geodesic = bv_zz.is_zero(tol) && bv_ww.is_zero(tol) && bv_zw.is_zero(tol);

    FoliationData {
        trace_bv,
        bh_xx,
        bh_yy,
        bh_xy,
        conformal_witness,
        minimal,
        conformal,
        riemannian,
        totally_geodesic,
    }
}
