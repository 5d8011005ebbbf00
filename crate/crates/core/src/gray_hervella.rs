//! The space of trilinear forms with the symmetries of `∇ω` and its
//! orthogonal decomposition.
//!
//! A form `α` belongs to the space when `α(x,y,z) = -α(x,z,y) = -α(x,Jy,Jz)`.
//! It splits orthogonally into four pieces; in dimension 4 (`n = 2`) the
//! first and third pieces vanish identically, so everything reduces to
//! `W2 ⊕ W4`: the `W2` part detects `dω` and the `W4` part detects the
//! Nijenhuis tensor.
//!
//! The `W4` defining formula used here is the corrected one (the original
//! article's display contains a known sign slip); its prefactor
//! `1/(2(n-1))` is the literal `1/2` since `n` is fixed to 2.

use crate::hermitian::j_basis;
use crate::linalg::{Tensor3, Vec4};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WError {
    #[error("tensor is not in W: max symmetry violation {0}")]
    NotInW(String),
}

/// `α(e_i, J e_j, J e_k)` expanded through the sign table of `J`.
fn j_twist<S: Scalar>(t: &Tensor3<S>, i: usize, j: usize, k: usize) -> S {
    let (jj, sj) = j_basis(j);
    let (jk, sk) = j_basis(k);
    let v = t.get(i, jj, jk).clone();
    if sj * sk > 0 {
        v
    } else {
        -v
    }
}

/// `α(J e_i, J e_j, e_k)`.
fn j_twist_first_two<S: Scalar>(t: &Tensor3<S>, i: usize, j: usize, k: usize) -> S {
    let (ji, si) = j_basis(i);
    let (jj, sj) = j_basis(j);
    let v = t.get(ji, jj, k).clone();
    if si * sj > 0 {
        v
    } else {
        -v
    }
}

/// Max violation of the two defining identities; zero exactly when the
/// tensor lies in the space.
pub fn w_membership_defect<S: Scalar>(t: &Tensor3<S>) -> S {
    let mut worst = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let anti = (t.get(i, j, k).clone() + t.get(i, k, j).clone()).abs();
                let twist = (t.get(i, j, k).clone() + j_twist(t, i, j, k)).abs();
                for d in [anti, twist] {
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
    }
    worst
}

/// A trilinear form carrying the symmetries of `∇ω` (membership is checked
/// at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct WTensor<S> {
    alpha: Tensor3<S>,
}

/// The four orthogonal components of a decomposed form. In dimension 4 the
/// `w1` and `w3` parts are identically zero; they are kept so the collapse
/// is a checked result rather than an assumption.
#[derive(Debug, Clone, PartialEq)]
pub struct WDecomposition<S> {
    pub w1: WTensor<S>,
    pub w2: WTensor<S>,
    pub w3: WTensor<S>,
    pub w4: WTensor<S>,
}

/// Verdict of the decomposition: almost Kähler when the `W4` part is zero,
/// integrable when the `W2` part is zero, Kähler when both are.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassLabel {
    W,
    AK,
    I,
    K,
}

impl ClassLabel {
    pub fn label(self) -> &'static str {
        match self {
            ClassLabel::W => "W",
            ClassLabel::AK => "AK",
            ClassLabel::I => "I",
            ClassLabel::K => "K",
        }
    }
}

impl<S: Scalar> WTensor<S> {
    pub fn try_new(alpha: Tensor3<S>, tol: f64) -> Result<Self, WError> {
        let defect = w_membership_defect(&alpha);
        if defect.is_negligible(tol) {
            Ok(WTensor { alpha })
        } else {
            Err(WError::NotInW(format!("{defect}")))
        }
    }

    pub fn zero() -> Self {
        WTensor {
            alpha: Tensor3::zero(),
        }
    }

    /// Project an arbitrary rank-3 table into the space: antisymmetrize the
    /// last two slots, then remove the `J`-twisted part.
    pub fn symmetrize(raw: &Tensor3<S>) -> Self {
        let anti = Tensor3::from_fn(|i, j, k| {
            (raw.get(i, j, k).clone() - raw.get(i, k, j).clone()).half()
        });
        let alpha = Tensor3::from_fn(|i, j, k| {
            (anti.get(i, j, k).clone() - j_twist(&anti, i, j, k)).half()
        });
        WTensor { alpha }
    }

    pub fn table(&self) -> &Tensor3<S> {
        &self.alpha
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        self.alpha.get(i, j, k)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.alpha.is_zero(tol)
    }

    /// `ᾱ(e_k) = Σ_i α(e_i, e_i, e_k)`.
    pub fn bar_basis(&self, k: usize) -> S {
        let mut acc = S::zero();
        for i in 0..4 {
            acc = acc + self.alpha.get(i, i, k).clone();
        }
        acc
    }

    /// Linear extension of the bar form.
    pub fn bar(&self, z: &Vec4<S>) -> S {
        let mut acc = S::zero();
        for k in 0..4 {
            acc = acc + z.0[k].clone() * self.bar_basis(k);
        }
        acc
    }

    /// Frame inner product `Σ α(e_i,e_j,e_k) β(e_i,e_j,e_k)`.
    pub fn inner(&self, other: &WTensor<S>) -> S {
        let mut acc = S::zero();
        for (i, j, k, v) in self.alpha.iter() {
            acc = acc + v.clone() * other.alpha.get(i, j, k).clone();
        }
        acc
    }

    pub fn norm_sq(&self) -> S {
        self.inner(self)
    }

    /// Split into the `W1 ⊕ W2` and `W3 ⊕ W4` parts:
    /// `α12 = (α - α(J·,J·,·))/2`, `α34 = (α + α(J·,J·,·))/2`.
    pub fn project_12_34(&self) -> (WTensor<S>, WTensor<S>) {
        let a12 = Tensor3::from_fn(|i, j, k| {
            (self.alpha.get(i, j, k).clone() - j_twist_first_two(&self.alpha, i, j, k)).half()
        });
        let a34 = Tensor3::from_fn(|i, j, k| {
            (self.alpha.get(i, j, k).clone() + j_twist_first_two(&self.alpha, i, j, k)).half()
        });
        (WTensor { alpha: a12 }, WTensor { alpha: a34 })
    }

    /// Full orthogonal decomposition.
    ///
    /// In dimension 4 the `W1` piece is the zero space, so the whole `α12`
    /// part is the `W2` component. (Antisymmetrizing `α12` in its first two
    /// slots does not stay inside the space, so it cannot serve as the `W1`
    /// projector; see `antisymmetrization_leaves_w` in the tests.) Within
    /// `α34`, `α4` is given by the bar formula with the dimension-4
    /// prefactor `1/2`, and `α3` is the remainder, which the collapse lemma
    /// forces to zero; it is kept as a computed quantity since its
    /// vanishing checks the bar formula.
    pub fn project_fine(&self) -> WDecomposition<S> {
        let (a12, a34) = self.project_12_34();

        let w1 = Tensor3::zero();
        let w2 = a12.alpha.clone();

        // bar(α) = bar(α34) since the α12 part is trace-free.
        let bar: [S; 4] = std::array::from_fn(|k| a34.bar_basis(k));
        let g = |i: usize, j: usize| -> S {
            if i == j {
                S::one()
            } else {
                S::zero()
            }
        };
        let bar_j = |k: usize| -> S {
            let (jk, s) = j_basis(k);
            if s > 0 {
                bar[jk].clone()
            } else {
                -bar[jk].clone()
            }
        };
        let g_j = |i: usize, j: usize| -> S {
            // g(e_i, J e_j)
            let (jj, s) = j_basis(j);
            if s > 0 {
                g(i, jj)
            } else {
                -g(i, jj)
            }
        };
        let w4 = Tensor3::from_fn(|i, j, k| {
            let t = g(i, j) * bar[k].clone() - g(i, k) * bar[j].clone() - g_j(i, j) * bar_j(k)
                + g_j(i, k) * bar_j(j);
            t.half()
        });
        let w3 = a34.alpha.sub(&w4);

        WDecomposition {
            w1: WTensor { alpha: w1 },
            w2: WTensor { alpha: w2 },
            w3: WTensor { alpha: w3 },
            w4: WTensor { alpha: w4 },
        }
    }
}

impl<S: Scalar> WDecomposition<S> {
    /// `[⟨w1,w1⟩, ⟨w2,w2⟩, ⟨w3,w3⟩, ⟨w4,w4⟩]`.
    pub fn norms(&self) -> [S; 4] {
        [
            self.w1.norm_sq(),
            self.w2.norm_sq(),
            self.w3.norm_sq(),
            self.w4.norm_sq(),
        ]
    }

    pub fn reconstruct(&self) -> Tensor3<S> {
        self.w1
            .alpha
            .add(&self.w2.alpha)
            .add(&self.w3.alpha)
            .add(&self.w4.alpha)
    }
}

/// Classify from the decomposition of `∇ω`.
pub fn class_from_decomposition<S: Scalar>(d: &WDecomposition<S>, tol: f64) -> ClassLabel {
    let ak = d.w4.is_zero(tol);
    let i = d.w2.is_zero(tol);
    match (ak, i) {
        (true, true) => ClassLabel::K,
        (true, false) => ClassLabel::AK,
        (false, true) => ClassLabel::I,
        (false, false) => ClassLabel::W,
    }
}
