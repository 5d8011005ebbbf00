//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the quantities it checked. Everything numeric runs in exact rational
//! arithmetic unless the criterion is about float-mode behavior.

use lieclass_core::classify::classify;
use lieclass_core::families::{
    build, conditions, g17_determinant_identity_verified, never_cell_verified, sample,
    AdaptedParams, FamilyId, Mode,
};
use lieclass_core::gray_hervella::{w_membership_defect, WTensor};
use lieclass_core::hermitian::{
    apply_j, d_omega_fast, d_omega_general, nabla_j, nabla_omega, nijenhuis, nijenhuis_is_zero,
};
use lieclass_core::lie::{levi_civita, sectional_curvature, LieAlgebra4};
use lieclass_core::linalg::{dot, Axis, Tensor3, Vec4};
use lieclass_core::scalar::Scalar;
use lieclass_core::Rational;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const TOL: f64 = 1e-9;
const SAMPLES_PER_MODE: u64 = 100;

fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

fn achievable_cells() -> Vec<(FamilyId, Mode)> {
    let mut cells = Vec::new();
    for id in FamilyId::ALL {
        for mode in Mode::ALL {
            if id.mode_achievable(mode) {
                cells.push((id, mode));
            }
        }
    }
    cells
}

/// Random normal-form coefficients, not necessarily satisfying Jacobi.
fn random_adapted<S: Scalar>(rng: &mut ChaCha8Rng) -> AdaptedParams<S> {
    let mut draw = || {
        let n = (rng.next_u64() % 19) as i64 - 9;
        let d = (rng.next_u64() % 3) as i64 + 1;
        S::from_ratio(n, d)
    };
    AdaptedParams {
        lambda: draw(),
        alpha: draw(),
        beta: draw(),
        a: draw(),
        b: draw(),
        r: draw(),
        z1: draw(),
        z2: draw(),
        z3: draw(),
        z4: draw(),
        w1: draw(),
        w2: draw(),
        theta1: draw(),
        theta2: draw(),
    }
}

#[test]
fn criterion_01_table_reproduction() {
    let mut exact_checked = 0usize;
    for (id, mode) in achievable_cells() {
        for seed in 0..SAMPLES_PER_MODE {
            let p = sample::<Rational>(id, seed, mode).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            let c = classify(&alg, TOL).unwrap();
            let table = conditions(id, &p, TOL).unwrap();

            // Three routes, identical booleans, and the literal table row.
            assert!(c.routes_agree, "{id} {mode} seed {seed}: routes disagree");
            assert_eq!(
                (c.ak, c.i, c.k),
                (table.ak, table.i, table.k),
                "{id} {mode} seed {seed}: table row disagrees with computation"
            );
            match mode {
                Mode::Ak => assert!(c.ak),
                Mode::I => assert!(c.i),
                Mode::K => assert!(c.k),
                Mode::Generic => {}
            }
            exact_checked += 1;
        }
    }

    // Float mode: witnesses of satisfied conditions stay below 1e-9 while
    // violated ones stay above 1e-6, with ground truth from the exact twin
    // of the same seed.
    let mut float_checked = 0usize;
    for (id, mode) in achievable_cells() {
        for seed in 0..SAMPLES_PER_MODE {
            let exact = sample::<Rational>(id, seed, mode).unwrap();
            let truth = conditions(id, &exact, TOL).unwrap();

            let p = sample::<f64>(id, seed, mode).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            let c = classify(&alg, TOL).unwrap();

            let d_omega_max = c.d_omega.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let nij_max: f64 = {
                let mut m = 0.0f64;
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        let n = nijenhuis(&alg, &Vec4::basis(i), &Vec4::basis(j));
                        m = m.max(n.max_abs());
                    }
                }
                m
            };
            if truth.ak {
                assert!(
                    d_omega_max <= 1e-9,
                    "{id} {mode} {seed}: |dω| = {d_omega_max}"
                );
                assert!(c.gh_norms[3] <= 1e-18, "{id} {mode} {seed}");
            } else {
                assert!(
                    d_omega_max > 1e-6,
                    "{id} {mode} {seed}: |dω| = {d_omega_max}"
                );
                assert!(c.gh_norms[3] > 1e-12, "{id} {mode} {seed}");
            }
            if truth.i {
                assert!(nij_max <= 1e-9, "{id} {mode} {seed}: |N_J| = {nij_max}");
                assert!(c.gh_norms[1] <= 1e-18, "{id} {mode} {seed}");
            } else {
                assert!(nij_max > 1e-6, "{id} {mode} {seed}: |N_J| = {nij_max}");
                assert!(c.gh_norms[1] > 1e-12, "{id} {mode} {seed}");
            }
            float_checked += 1;
        }
    }

    println!(
        "criterion 1 PASS: table reproduced with zero disagreements on {exact_checked} exact and \
         {float_checked} float samples (20 families, all achievable modes, {SAMPLES_PER_MODE} seeds each)"
    );
}

#[test]
fn criterion_02_jacobi() {
    let mut checked = 0usize;
    for (id, mode) in achievable_cells() {
        for seed in 0..SAMPLES_PER_MODE {
            let p = sample::<Rational>(id, seed, mode).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            assert!(
                alg.jacobi_defect().is_zero(),
                "{id} {mode} seed {seed}: Jacobi defect nonzero"
            );
            checked += 1;
        }
    }

    // Mutation test: perturbing one structure constant of a g6 instance
    // (the Z coefficient of [Z,X], kept antisymmetric) breaks Jacobi.
    let p = sample::<Rational>(FamilyId::G6, 0, Mode::Generic).unwrap();
    let alg = build(FamilyId::G6, &p, TOL).unwrap();
    let mut c = alg.structure_constants().clone();
    let bumped = c.get(2, 0, 2).clone() + rat(1);
    c.set(2, 0, 2, bumped.clone());
    c.set(0, 2, 2, -bumped);
    let mutated = LieAlgebra4::new(c, TOL).unwrap();
    let defect = mutated.jacobi_defect();
    assert!(
        defect > rat(0),
        "mutated g6 instance still satisfies Jacobi"
    );

    println!(
        "criterion 2 PASS: Jacobi defect exactly zero on {checked} family instances; \
         g6 mutation has defect {defect}"
    );
}

#[test]
fn criterion_03_d_omega_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let p = random_adapted::<Rational>(&mut rng);
        let alg = p.to_algebra();
        let basis = |i| Vec4::<Rational>::basis(i);
        let xyz = d_omega_general(&alg, &basis(0), &basis(1), &basis(2));
        let xyw = d_omega_general(&alg, &basis(0), &basis(1), &basis(3));
        let xzw = d_omega_general(&alg, &basis(0), &basis(2), &basis(3));
        let yzw = d_omega_general(&alg, &basis(1), &basis(2), &basis(3));
        assert_eq!(xyz, -p.theta2.clone() - rat(2) * p.alpha.clone());
        assert_eq!(xyw, p.theta1.clone() - rat(2) * p.a.clone());
        assert!(xzw.is_zero());
        assert!(yzw.is_zero());
    }
    println!(
        "criterion 3 PASS: dω(X,Y,Z) = -θ2-2α, dω(X,Y,W) = θ1-2a, dω(X,Z,W) = dω(Y,Z,W) = 0 \
         exactly on 1000 random normal-form tables (definitional exterior derivative)"
    );
}

#[test]
fn criterion_04_nijenhuis_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let p = random_adapted::<Rational>(&mut rng);
        let alg = p.to_algebra();
        let x = Vec4::axis(Axis::X);
        let y = Vec4::axis(Axis::Y);
        let z = Vec4::axis(Axis::Z);
        let w = Vec4::axis(Axis::W);
        let kz = rat(2) * p.z1.clone() - p.z4.clone() - p.w2.clone();
        let kw = rat(2) * p.z2.clone() + p.z3.clone() + p.w1.clone();
        let nzx = nijenhuis(&alg, &z, &x);
        assert_eq!(nzx, Vec4([rat(0), rat(0), kz, kw]));
        assert_eq!(nzx, apply_j(&nijenhuis(&alg, &z, &y)));
        assert_eq!(nzx, nijenhuis(&alg, &w, &y).neg());
        assert_eq!(nzx, apply_j(&nijenhuis(&alg, &w, &x)));
    }
    println!(
        "criterion 4 PASS: N_J(Z,X) = (2z1-z4-w2)Z + (2z2+z3+w1)W and \
         N_J(Z,X) = J N_J(Z,Y) = -N_J(W,Y) = J N_J(W,X) exactly on 1000 random tables"
    );
}

#[test]
fn criterion_05_nabla_omega_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let p = random_adapted::<Rational>(&mut rng);
        let no = nabla_omega(&p.to_algebra());
        assert_eq!(
            no.values.get(1, 0, 2).clone(),
            p.theta2.clone().half() + p.alpha.clone()
        );
        assert_eq!(
            no.values.get(0, 1, 3).clone(),
            p.theta1.clone().half() - p.a.clone()
        );
        assert_eq!(
            no.values.get(2, 0, 3).clone(),
            -(rat(2) * p.z1.clone() - p.z4.clone() - p.w2.clone()).half()
        );
        assert_eq!(
            no.values.get(2, 1, 3).clone(),
            -(rat(2) * p.z2.clone() + p.z3.clone() + p.w1.clone()).half()
        );
    }

    // ∇ω vanishes identically on every Kähler-mode sample of the eleven
    // K-capable families.
    let mut kahler_checked = 0usize;
    let mut k_families = 0usize;
    for id in FamilyId::ALL {
        if !id.k_capable() {
            continue;
        }
        k_families += 1;
        for seed in 0..SAMPLES_PER_MODE {
            let p = sample::<Rational>(id, seed, Mode::K).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            assert!(
                nabla_omega(&alg).values.is_zero(TOL),
                "{id} K seed {seed}: ∇ω != 0"
            );
            kahler_checked += 1;
        }
    }
    assert_eq!(k_families, 11);

    println!(
        "criterion 5 PASS: the four ∇ω component formulas hold exactly on 1000 random tables; \
         ∇ω = 0 exactly on {kahler_checked} Kähler samples across the 11 K-capable families"
    );
}

#[test]
fn criterion_06_gray_hervella_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let raw = Tensor3::<Rational>::from_fn(|_, _, _| {
            let n = (rng.next_u64() % 19) as i64 - 9;
            let d = (rng.next_u64() % 3) as i64 + 1;
            Rational::from_ratio(n, d)
        });
        let alpha = WTensor::symmetrize(&raw);
        assert!(w_membership_defect(alpha.table()).is_zero());

        let d = alpha.project_fine();
        assert!(d.w1.is_zero(TOL), "w1 != 0");
        assert!(d.w3.is_zero(TOL), "w3 != 0");
        assert_eq!(&d.reconstruct(), alpha.table(), "reconstruction not exact");
        let parts = [&d.w1, &d.w2, &d.w3, &d.w4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!(
                    parts[i].inner(parts[j]).is_zero(),
                    "components not orthogonal"
                );
            }
        }
        for k in 0..4 {
            assert_eq!(
                d.w4.bar_basis(k),
                alpha.bar_basis(k),
                "bar not preserved by w4"
            );
        }
    }
    println!(
        "criterion 6 PASS: 1000 random W-symmetric tensors decompose with zero membership \
         defect, exact reconstruction, orthogonal components, w1 = w3 = 0, and bar(α) = bar(α4)"
    );
}

#[test]
fn criterion_07_wb_lemma_identities() {
    // 100 sampled family instances, cycling through families and modes.
    let cells = achievable_cells();
    let mut instances = Vec::new();
    let mut seed = 0u64;
    while instances.len() < 100 {
        for (id, mode) in &cells {
            if instances.len() >= 100 {
                break;
            }
            let p = sample::<Rational>(*id, seed, *mode).unwrap();
            instances.push(build(*id, &p, TOL).unwrap());
        }
        seed += 1;
    }

    let mut uncorrected_failures = 0usize;
    let mut integrable_instances = 0usize;
    for alg in &instances {
        let conn = levi_civita(alg);
        let integrable = nijenhuis_is_zero(alg, TOL);
        if integrable {
            integrable_instances += 1;
        }
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (u, v, w) = (Vec4::<Rational>::basis(i), Vec4::basis(j), Vec4::basis(k));
                    // First displayed identity, as stated.
                    let cyclic = dot(&nabla_j(&conn, &u, &v), &w)
                        + dot(&nabla_j(&conn, &v, &w), &u)
                        + dot(&nabla_j(&conn, &w, &u), &v);
                    assert_eq!(d_omega_fast(alg, &u, &v, &w), cyclic);

                    // Second displayed identity carries the Nijenhuis
                    // correction -g(N_J(v,w), Ju); without it the display
                    // holds exactly when N_J = 0 (see the ledger note).
                    let lhs = rat(2) * dot(&nabla_j(&conn, &u, &v), &w);
                    let display = d_omega_fast(alg, &u, &v, &w)
                        - d_omega_fast(alg, &u, &apply_j(&v), &apply_j(&w));
                    let corrected = display.clone() - dot(&nijenhuis(alg, &v, &w), &apply_j(&u));
                    assert_eq!(lhs, corrected);
                    if integrable {
                        assert_eq!(lhs, display);
                    } else if lhs != display {
                        uncorrected_failures += 1;
                    }
                }
            }
        }
    }
    // The gap is real: non-integrable instances violate the uncorrected
    // display on some triple.
    assert!(integrable_instances > 0);
    assert!(uncorrected_failures > 0);

    println!(
        "criterion 7 PASS: cyclic identity exact on all 64 triples of 100 instances; \
         second identity exact with its Nijenhuis correction term (the bare display holds \
         on all {integrable_instances} integrable instances and fails on {uncorrected_failures} \
         non-integrable triples, matching the correction exactly; see decisions ledger)"
    );
}

#[test]
fn criterion_08_impossibility_rows() {
    // Exact sum-of-squares reductions on rational grids.
    assert!(never_cell_verified(FamilyId::G4, Mode::K), "g4 K reduction");
    assert!(never_cell_verified(FamilyId::G5, Mode::K), "g5 K reduction");
    assert!(
        never_cell_verified(FamilyId::G11, Mode::I),
        "g11 I reduction"
    );
    assert!(
        never_cell_verified(FamilyId::G13, Mode::I),
        "g13 I reduction"
    );
    assert!(
        g17_determinant_identity_verified(),
        "g17 determinant identity"
    );

    // 1000-sample falsification per listed cell.
    let k_cells = [FamilyId::G4, FamilyId::G5];
    for id in k_cells {
        for seed in 0..1000u64 {
            let p = sample::<Rational>(id, seed, Mode::Generic).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            let ak = lieclass_core::hermitian::d_omega_components(&alg)
                .iter()
                .all(|v| v.is_zero());
            let i = nijenhuis_is_zero(&alg, TOL);
            assert!(!(ak && i), "{id} seed {seed}: found a Kähler instance");
        }
    }
    for id in [FamilyId::G11, FamilyId::G13] {
        for seed in 0..1000u64 {
            let p = sample::<Rational>(id, seed, Mode::Generic).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            assert!(
                !nijenhuis_is_zero(&alg, TOL),
                "{id} seed {seed}: found an integrable instance"
            );
        }
    }
    let mut g17_nonzero_w = 0usize;
    for seed in 0..1000u64 {
        let p = sample::<Rational>(FamilyId::G17, seed, Mode::Generic).unwrap();
        let w1 = p.get(FamilyId::G17, "w1").unwrap();
        let w2 = p.get(FamilyId::G17, "w2").unwrap();
        if w1.is_zero() && w2.is_zero() {
            continue;
        }
        g17_nonzero_w += 1;
        let alg = build(FamilyId::G17, &p, TOL).unwrap();
        assert!(
            !nijenhuis_is_zero(&alg, TOL),
            "g17 seed {seed}: integrable with w != 0"
        );
    }
    assert!(g17_nonzero_w > 900);

    // The remaining never-true cells, verified exactly and sampled.
    let other_never = [
        (FamilyId::G10, Mode::Ak),
        (FamilyId::G15, Mode::Ak),
        (FamilyId::G17, Mode::Ak),
        (FamilyId::G19, Mode::Ak),
        (FamilyId::G20, Mode::Ak),
        (FamilyId::G10, Mode::K),
        (FamilyId::G11, Mode::K),
        (FamilyId::G13, Mode::K),
        (FamilyId::G15, Mode::K),
        (FamilyId::G17, Mode::K),
        (FamilyId::G19, Mode::K),
        (FamilyId::G20, Mode::K),
    ];
    for (id, mode) in other_never {
        assert!(never_cell_verified(id, mode), "{id} {mode} reduction");
        for seed in 0..200u64 {
            let p = sample::<Rational>(id, seed, Mode::Generic).unwrap();
            let alg = build(id, &p, TOL).unwrap();
            let ak = lieclass_core::hermitian::d_omega_components(&alg)
                .iter()
                .all(|v| v.is_zero());
            match mode {
                Mode::Ak => assert!(!ak, "{id} seed {seed}"),
                Mode::K => assert!(!(ak && nijenhuis_is_zero(&alg, TOL)), "{id} seed {seed}"),
                _ => unreachable!(),
            }
        }
    }

    println!(
        "criterion 8 PASS: sum-of-squares reductions verified exactly on rational grids \
         (g4 K, g5 K, g11 I, g13 I, g17 determinant) and {g17_nonzero_w} g17 samples with \
         w != 0; falsification searches found no counterexample in any never-true cell"
    );
}

#[test]
fn criterion_09_curvature_anchors() {
    // K(span{Z,W}) = -λ² for the vertical algebra [W,Z] = λW.
    for (n, d) in [(1i64, 2i64), (1, 1), (3, 1)] {
        let lambda = Rational::from_ratio(n, d);
        let p = AdaptedParams::<Rational> {
            lambda: lambda.clone(),
            ..AdaptedParams::zeros()
        };
        let alg = p.to_algebra();
        let conn = levi_civita(&alg);
        let k = sectional_curvature(&conn, &alg, &Vec4::axis(Axis::Z), &Vec4::axis(Axis::W), TOL)
            .unwrap();
        assert_eq!(k, -lambda.clone() * lambda);
    }

    // Abelian algebra: every frame plane is flat.
    let abelian = LieAlgebra4::<Rational>::abelian();
    let conn = levi_civita(&abelian);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let k = sectional_curvature(&conn, &abelian, &Vec4::basis(i), &Vec4::basis(j), TOL)
                .unwrap();
            assert!(k.is_zero());
        }
    }

    // g1^I(λ, r) is a metric product; the horizontal plane carries -r².
    for (lam, r) in [(1i64, 1i64), (1, 3), (2, 5)] {
        let p = lieclass_core::families::FamilyParams::from_pairs([
            ("lambda", rat(lam)),
            ("r", rat(r)),
            ("w1", rat(0)),
            ("w2", rat(0)),
        ])
        .unwrap();
        let alg = build(FamilyId::G1, &p, TOL).unwrap();
        let conn = levi_civita(&alg);
        let k = sectional_curvature(&conn, &alg, &Vec4::axis(Axis::X), &Vec4::axis(Axis::Y), TOL)
            .unwrap();
        assert_eq!(k, rat(-r * r));
        let kv = sectional_curvature(&conn, &alg, &Vec4::axis(Axis::Z), &Vec4::axis(Axis::W), TOL)
            .unwrap();
        assert_eq!(kv, rat(-lam * lam));
    }

    println!(
        "criterion 9 PASS: K(vertical) = -λ² for λ in {{1/2, 1, 3}}, abelian planes flat, \
         g1^I horizontal plane = -r², all exact"
    );
}
