//! End-to-end classification of an adapted algebra along three independent
//! routes, with all numeric witnesses retained.
//!
//! The routes are: the closed-form conditions on the adapted coefficients
//! (`θ1 = 2a`, `θ2 = -2α` for almost Kähler; `2z2+z3+w1 = 2z1-z4-w2 = 0`
//! for integrability), the direct computation of `dω` and the Nijenhuis
//! tensor, and the component norms of the orthogonal decomposition of `∇ω`.
//! Agreement of the three is the artifact's central cross-check, so the
//! result records each verdict separately instead of short-circuiting.

use crate::families::{self, AdaptedParams, FamilyId, FamilyParams, NotAdapted};
use crate::gray_hervella::WTensor;
use crate::hermitian::{
    d_omega_general, nabla_omega_from_connection, nijenhuis, nijenhuis_is_zero,
};
use crate::lie::{foliation_data, levi_civita, sectional_curvature, FoliationData, LieAlgebra4};
use crate::linalg::{Axis, Vec4};
use crate::scalar::Scalar;

/// The (almost Kähler, integrable) answer of one classification route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteVerdicts {
    pub ak: bool,
    pub i: bool,
}

/// Everything the classifier knows about one algebra.
#[derive(Debug, Clone)]
pub struct Classification<S> {
    pub adapted: AdaptedParams<S>,
    pub foliation: FoliationData<S>,

    pub closed_form: RouteVerdicts,
    pub direct: RouteVerdicts,
    pub projection: RouteVerdicts,
    pub routes_agree: bool,

    pub ak: bool,
    pub i: bool,
    pub k: bool,

    /// `dω` on the four distinct basis triples `(X,Y,Z), (X,Y,W), (X,Z,W),
    /// (Y,Z,W)`, computed by the definitional exterior derivative.
    pub d_omega: [S; 4],
    /// Components of `N_J(Z,X)`.
    pub nijenhuis_zx: Vec4<S>,
    /// Squared norms of the four decomposition components of `∇ω`.
    pub gh_norms: [S; 4],

    /// Sectional curvature of the vertical plane `span{Z,W}`.
    pub curvature_vertical: S,
    /// Sectional curvature of `span{X,Y}`, reported when the horizontal
    /// distribution is involutive (`θ1 = θ2 = 0`).
    pub curvature_horizontal: Option<S>,

    pub family_matches: Vec<(FamilyId, FamilyParams<S>)>,
    /// Per-family nearest-miss notes when nothing matched.
    pub identify_misses: Vec<String>,
}

impl<S: Scalar> Classification<S> {
    pub fn class_label(&self) -> &'static str {
        match (self.ak, self.i) {
            (true, true) => "K",
            (true, false) => "AK",
            (false, true) => "I",
            (false, false) => "W",
        }
    }
}

fn closed_form_route<S: Scalar>(p: &AdaptedParams<S>, tol: f64) -> RouteVerdicts {
    let two = S::from_int(2);
    let ak = (p.theta1.clone() - two.clone() * p.a.clone()).is_negligible(tol)
        && (p.theta2.clone() + two.clone() * p.alpha.clone()).is_negligible(tol);
    let i = (two.clone() * p.z2.clone() + p.z3.clone() + p.w1.clone()).is_negligible(tol)
        && (two * p.z1.clone() - p.z4.clone() - p.w2.clone()).is_negligible(tol);
    RouteVerdicts { ak, i }
}

/// Classify an algebra in adapted normal form.
pub fn classify<S: Scalar>(
    alg: &LieAlgebra4<S>,
    tol: f64,
) -> Result<Classification<S>, NotAdapted> {
    let adapted = families::extract_adapted(alg, tol)?;
    let conn = levi_civita(alg);
    let foliation = foliation_data(&conn, tol);

    let closed_form = closed_form_route(&adapted, tol);

    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let d_omega = triples
        .map(|(i, j, k)| d_omega_general(alg, &Vec4::basis(i), &Vec4::basis(j), &Vec4::basis(k)));
    let nijenhuis_zx = nijenhuis(alg, &Vec4::axis(Axis::Z), &Vec4::axis(Axis::X));
    let direct = RouteVerdicts {
        ak: d_omega.iter().all(|v| v.is_negligible(tol)),
        i: nijenhuis_is_zero(alg, tol),
    };

    let nabla_omega = nabla_omega_from_connection(&conn);
    let decomposition = WTensor::try_new(nabla_omega.values, tol)
        .expect("covariant derivative of the Kähler form must carry the W symmetries")
        .project_fine();
    let gh_norms = decomposition.norms();
    let projection = RouteVerdicts {
        ak: decomposition.w4.is_zero(tol),
        i: decomposition.w2.is_zero(tol),
    };

    let routes_agree = closed_form == direct && direct == projection;
    let ak = direct.ak;
    let i = direct.i;

    let curvature_vertical =
        sectional_curvature(&conn, alg, &Vec4::axis(Axis::Z), &Vec4::axis(Axis::W), tol)
            .expect("frame plane is never degenerate");
    let horizontal_involutive =
        adapted.theta1.is_negligible(tol) && adapted.theta2.is_negligible(tol);
    let curvature_horizontal = horizontal_involutive.then(|| {
        sectional_curvature(&conn, alg, &Vec4::axis(Axis::X), &Vec4::axis(Axis::Y), tol)
            .expect("frame plane is never degenerate")
    });

    let (family_matches, identify_misses) = match families::identify(&adapted, tol) {
        Ok(matches) => (matches, Vec::new()),
        Err(families::FamilyError::NoMatch { misses }) => (Vec::new(), misses),
        Err(_) => (Vec::new(), Vec::new()),
    };

    Ok(Classification {
        adapted,
        foliation,
        closed_form,
        direct,
        projection,
        routes_agree,
        ak,
        i,
        k: ak && i,
        d_omega,
        nijenhuis_zx,
        gh_norms,
        curvature_vertical,
        curvature_horizontal,
        family_matches,
        identify_misses,
    })
}
