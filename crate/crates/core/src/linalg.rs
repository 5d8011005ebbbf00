//! Fixed-dimension containers: vectors in the adapted frame and rank-3
//! coefficient tables.
//!
//! The frame order is `(X, Y, Z, W) = (e1, e2, e3, e4)` everywhere; the
//! metric is the identity form in this frame, so `dot` is the plain
//! coordinate sum.

use crate::scalar::Scalar;
use std::fmt;

/// Basis axis of the adapted orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
    W,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::X, Axis::Y, Axis::Z, Axis::W];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
            Axis::W => 3,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Self::ALL[i]
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
            Axis::W => "W",
        }
    }

    pub fn from_label(s: &str) -> Option<Axis> {
        match s {
            "X" => Some(Axis::X),
            "Y" => Some(Axis::Y),
            "Z" => Some(Axis::Z),
            "W" => Some(Axis::W),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Vector in the frame `{X, Y, Z, W}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vec4<S>(pub [S; 4]);

impl<S: Scalar> Vec4<S> {
    pub fn zero() -> Self {
        Vec4(std::array::from_fn(|_| S::zero()))
    }

    /// The i-th frame vector.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = S::one();
        v
    }

    pub fn axis(a: Axis) -> Self {
        Self::basis(a.index())
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Vec4(std::array::from_fn(f))
    }

    pub fn get(&self, i: usize) -> &S {
        &self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i| self.0[i].clone() + other.0[i].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i| self.0[i].clone() - other.0[i].clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|i| -self.0[i].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(|i| c.clone() * self.0[i].clone())
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.0.iter().all(|x| x.is_negligible(tol))
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> S {
        let mut m = S::zero();
        for x in &self.0 {
            let a = x.abs();
            if a > m {
                m = a;
            }
        }
        m
    }
}

/// Euclidean inner product in the orthonormal frame.
pub fn dot<S: Scalar>(u: &Vec4<S>, v: &Vec4<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        acc = acc + u.0[i].clone() * v.0[i].clone();
    }
    acc
}

/// Dimension of the span of a list of frame vectors, by Gaussian
/// elimination with exact (or tolerance-gated) pivoting.
pub fn span_dimension<S: Scalar>(vectors: &[Vec4<S>], tol: f64) -> usize {
    let mut rows: Vec<Vec4<S>> = vectors.to_vec();
    let mut rank = 0;
    for col in 0..4 {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_negligible(tol))
        else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank].0[col].clone();
        for r in (rank + 1)..rows.len() {
            let factor = rows[r].0[col].clone() / pivot.clone();
            let scaled = rows[rank].scale(&factor);
            rows[r] = rows[r].sub(&scaled);
        }
        rank += 1;
        if rank == 4 {
            break;
        }
    }
    rank
}

/// Rank-3 coefficient table `t[i][j][k]`; the owner declares whether it
/// holds structure constants or a trilinear form.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3<S>(pub [[[S; 4]; 4]; 4]);

impl<S: Scalar> Tensor3<S> {
    pub fn zero() -> Self {
        Self::from_fn(|_, _, _| S::zero())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        Tensor3(std::array::from_fn(|i| {
            std::array::from_fn(|j| std::array::from_fn(|k| f(i, j, k)))
        }))
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.0[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        self.0[i][j][k] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j, k| self.0[i][j][k].clone() + other.0[i][j][k].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j, k| self.0[i][j][k].clone() - other.0[i][j][k].clone())
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.iter().all(|(_, _, _, v)| v.is_negligible(tol))
    }

    pub fn max_abs(&self) -> S {
        let mut m = S::zero();
        for (_, _, _, v) in self.iter() {
            let a = v.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        self.0.iter().enumerate().flat_map(|(i, p)| {
            p.iter()
                .enumerate()
                .flat_map(move |(j, r)| r.iter().enumerate().map(move |(k, v)| (i, j, k, v)))
        })
    }
}
