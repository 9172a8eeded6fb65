use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::profile::{helix_height, integrate_catenary, reconstruct_on_spaceform, CatenaryParams, DEFAULT_FLOOR};

fn forms(i: Sym3, ii: Sym3) -> FundamentalForms {
    FundamentalForms { first: i, second: ii, normal: vec![], point: vec![] }
}

const ID: Sym3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

fn catenary_patch(c: f64) -> HypersurfacePatch {
    let p = CatenaryParams::new(c, 1, 0.5, 0.0).unwrap();
    let h = integrate_catenary(&p, (0.0, 1.0), 1e-3, DEFAULT_FLOOR).unwrap();
    rotation_hypersurface(reconstruct_on_spaceform(&h, c, DEFAULT_FLOOR).unwrap(), SpaceFormModel::new(c)).unwrap()
}

fn interior(patch: &HypersurfacePatch) -> impl Iterator<Item = [f64; 3]> + '_ {
    let grid = [10, 5, 5];
    (0..250).map(move |n| patch.sample(grid, [n / 25, (n / 5) % 5, n % 5]))
}

#[test]
fn principal_curvature_examples() {
    let two = ID.map(|r| r.map(|x| 2.0 * x));
    assert_eq!(principal_curvatures(&forms(ID, two)).unwrap().lambda, [2.0, 2.0, 2.0]);
    assert_eq!(principal_curvatures(&forms(ID, [[0.0; 3]; 3])).unwrap().lambda, [0.0; 3]);
    let ii = [[1.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 1.0]];
    let p = principal_curvatures(&forms(ID, ii)).unwrap();
    assert!(p.lambda.iter().zip([-2.0, 1.0, 1.0]).all(|(a, b)| (a - b).abs() < 1e-14));
    assert!(p.h_sum.abs() < 1e-14);
    let m = p.multiplicity(1e-4);
    assert!(m.is_double && (m.double - 1.0).abs() < 1e-14 && (m.simple + 2.0).abs() < 1e-14);
}

#[test]
fn indefinite_first_form_is_rejected() {
    let i = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
    assert!(matches!(principal_curvatures(&forms(i, ID)), Err(GeometryError::NotPositiveDefinite)));
}

fn sym(v: [f64; 6]) -> Sym3 {
    [[v[0], v[1], v[2]], [v[1], v[3], v[4]], [v[2], v[4], v[5]]]
}

fn det3(m: &Sym3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

proptest! {
    #[test]
    fn eigenvalues_solve_the_pencil(a in prop::array::uniform6(-1.0f64..1.0), b in prop::array::uniform6(-3.0f64..3.0)) {
        // I = A A^T + id is positive definite.
        let am = sym(a);
        let i: Sym3 = std::array::from_fn(|r| std::array::from_fn(|c| (0..3).map(|k| am[r][k] * am[c][k]).sum::<f64>() + ID[r][c]));
        let ii = sym(b);
        let p = principal_curvatures(&forms(i, ii)).unwrap();
        prop_assert!(p.lambda[0] <= p.lambda[1] && p.lambda[1] <= p.lambda[2]);
        for l in p.lambda {
            let m: Sym3 = std::array::from_fn(|r| std::array::from_fn(|c| ii[r][c] - l * i[r][c]));
            prop_assert!(det3(&m).abs() <= 1e-9 * (1.0 + l.abs()).powi(3) * det3(&i));
        }
    }

    #[test]
    fn forward_and_central_partials_agree(s in 0.2f64..0.8, t1 in 0.3f64..2.8, t2 in 0.0f64..6.0) {
        let patch = catenary_patch(1.0);
        let u = [s, t1, t2];
        let f = patch.partials(u, Derivatives::Forward);
        let h = 1e-3;
        let c1 = patch.partials(u, Derivatives::Central { h });
        let c2 = patch.partials(u, Derivatives::Central { h: h / 2.0 });
        for i in 0..3 {
            let e1 = f.first[i].iter().zip(&c1.first[i]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let e2 = f.first[i].iter().zip(&c2.first[i]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            prop_assert!(e1 <= 1e-5);
            // Second order: halving the step divides the error by about 4.
            prop_assert!(e2 <= e1 / 3.0 + 1e-11, "{} {}", e1, e2);
            for j in 0..3 {
                let e = f.second[i][j].iter().zip(&c1.second[i][j]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                prop_assert!(e <= 1e-4);
            }
        }
    }
}

#[test]
fn points_lie_on_the_model() {
    for c in [1.0, -1.0] {
        let patch = catenary_patch(c);
        for u in interior(&patch) {
            assert!(patch.model.contains(&patch.point(u), 1e-10), "c = {c}");
        }
    }
    let q = ConeHelixParams { cbar: 2.0, base: ConeBase::CliffordTorus, t_range: (0.05, 0.5), a: 0.5, b: 0.0 };
    for c in [1.0, -1.0] {
        let b = cone_helix_pair(c, c - 1.0, &q, (0.1, 1.0), 1e-3).unwrap();
        for u in interior(&b.f) {
            assert!(b.f.model.contains(&b.f.point(u), 1e-10), "cone in c = {c}");
        }
        for u in interior(&b.ft) {
            assert!(b.ft.model.contains(&b.ft.point(u), 1e-10), "helix in ct = {}", c - 1.0);
        }
    }
}

#[test]
fn normal_contract() {
    for c in [1.0, 0.0, -1.0] {
        let patch = catenary_patch(c);
        for u in interior(&patch) {
            let p = patch.partials(u, Derivatives::Forward);
            let ff = fundamental_forms(&patch, u, Derivatives::Forward).unwrap();
            let m = &patch.model;
            assert!((m.inner(&ff.normal, &ff.normal) - 1.0).abs() < 1e-12);
            for t in &p.first {
                assert!(m.inner(&ff.normal, t).abs() <= 1e-10);
            }
            if c != 0.0 {
                assert!(m.inner(&ff.normal, &p.point).abs() <= 1e-10);
            }
            assert_eq!(ff.second[0][1], ff.second[1][0]);
        }
    }
}

#[test]
fn warped_product_metric() {
    let patch = catenary_patch(1.0);
    let Chart::Rotation(r) = &patch.chart else { unreachable!() };
    for u in interior(&patch) {
        let ff = fundamental_forms(&patch, u, Derivatives::Forward).unwrap();
        let x = r.profile.height.at(u[0])[0];
        let i = ff.first;
        assert!((i[0][0] - 1.0).abs() <= 1e-8);
        assert!((i[1][1] / (x * x) - 1.0).abs() <= 1e-8);
        assert!((i[2][2] / (x * x) - u[1].sin().powi(2)).abs() <= 1e-8);
        assert!(i[0][1].abs() + i[0][2].abs() + i[1][2].abs() <= 1e-8);
    }
}

#[test]
fn round_sphere_in_flat_space() {
    // Unit circle profile in the plane gives a unit 3-sphere of R^4,
    // centered where the reconstruction puts the circle's center.
    let h = helix_height(1.0, 0.0, 1.0, (0.1, 1.4), 1e-3).unwrap();
    let patch =
        rotation_hypersurface(reconstruct_on_spaceform(&h, 0.0, DEFAULT_FLOOR).unwrap(), SpaceFormModel::new(0.0))
            .unwrap();
    for u in interior(&patch) {
        let mut p = patch.point(u);
        p[3] -= 0.1f64.cos();
        assert!((p.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-10);
        let ff = fundamental_forms(&patch, u, Derivatives::Forward).unwrap();
        // Inward normal is minus the position.
        let sign = -ff.normal.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>();
        for a in 0..3 {
            for b in 0..3 {
                assert!((sign * ff.second[a][b] - ff.first[a][b]).abs() < 1e-9);
            }
        }
        let l = principal_curvatures(&ff).unwrap().lambda;
        assert!(l.iter().all(|x| (sign * x - 1.0).abs() < 1e-9));
    }
}

#[test]
fn totally_geodesic_equator() {
    let b = umbilic_pair(1.0, 0.0, (0.1, 1.4), 1e-3).unwrap();
    for u in interior(&b.f) {
        let ff = fundamental_forms(&b.f, u, Derivatives::Forward).unwrap();
        assert!(ff.second.iter().flatten().all(|x| x.abs() < 1e-12));
        let p = principal_curvatures(&ff).unwrap();
        assert!(p.h_sum.abs() < 1e-12);
    }
}

#[test]
fn circle_of_latitude_orbit_has_a_double_curvature() {
    let n = 300;
    let h = crate::profile::HeightFunction {
        s0: 0.0,
        step: 1e-2,
        x: vec![0.6; n],
        dx: vec![0.0; n],
        ddx: vec![0.0; n],
        truncated: None,
    };
    let patch =
        rotation_hypersurface(reconstruct_on_spaceform(&h, 1.0, DEFAULT_FLOOR).unwrap(), SpaceFormModel::new(1.0))
            .unwrap();
    for u in interior(&patch) {
        let p = principal_curvatures(&fundamental_forms(&patch, u, Derivatives::Forward).unwrap()).unwrap();
        assert!(p.multiplicity(1e-4).is_double);
        let [a, b, c] = p.lambda;
        assert!((a - b).abs() < 1e-10 || (b - c).abs() < 1e-10);
    }
}

#[test]
fn catenary_rotation_is_minimal_with_double_curvature() {
    let patch = catenary_patch(1.0);
    for u in interior(&patch) {
        let p = principal_curvatures(&fundamental_forms(&patch, u, Derivatives::Forward).unwrap()).unwrap();
        let m = p.multiplicity(1e-4);
        assert!(p.h_sum.abs() <= 1e-6);
        assert!((m.simple + 2.0 * m.double).abs() <= 1e-6);
    }
}

#[test]
fn gauss_residual_is_second_order() {
    let patch = catenary_patch(1.0);
    let u = [0.4, 1.1, 2.0];
    // Exact chart partials, so the residual is the metric differencing
    // error alone.
    let d = Derivatives::Forward;
    let e1 = gauss_residual(&patch, u, d, 4e-2).unwrap();
    let e2 = gauss_residual(&patch, u, d, 2e-2).unwrap();
    let order = (e1 / e2).log2();
    assert!((1.7..2.3).contains(&order), "e1 = {e1}, e2 = {e2}");
    assert!(gauss_residual(&patch, u, d, 1e-4).unwrap() < 1e-6);
}

#[test]
fn sectional_curvature_of_the_round_sphere() {
    let b = umbilic_pair(1.0, 0.0, (0.1, 1.4), 1e-3).unwrap();
    let k = sectional_curvatures(&b.f, [0.7, 1.0, 2.0], Derivatives::Forward, 1e-4);
    assert!(k.iter().all(|x| (x - 1.0).abs() < 1e-6), "{k:?}");
}

#[test]
fn great_sphere_cone_is_totally_geodesic() {
    let patch = generalized_cone(ConeBase::GreatSphere, 1.0, SpaceFormModel::new(1.0), (0.05, 1.0)).unwrap();
    for u in interior(&patch) {
        let ff = fundamental_forms(&patch, u, Derivatives::Forward).unwrap();
        let p = principal_curvatures(&ff).unwrap();
        assert!(p.lambda.iter().all(|x| x.abs() < 1e-10));
    }
}

#[test]
fn rulings_have_zero_normal_curvature() {
    for (base, c, cbar) in [
        (ConeBase::CliffordTorus, 1.0, 1.0),
        (ConeBase::CliffordTorus, 1.0, 3.0),
        (ConeBase::GreatSphere, -1.0, 0.5),
        (ConeBase::CliffordTorus, 0.0, 1.0),
    ] {
        let patch = generalized_cone(base, cbar, SpaceFormModel::new(c), (0.05, 0.5)).unwrap();
        for u in interior(&patch) {
            let ff = fundamental_forms(&patch, u, Derivatives::Forward).unwrap();
            assert!(ff.second[0][0].abs() <= 1e-8, "{base:?} c = {c}");
            assert!((ff.first[0][0] - 1.0).abs() <= 1e-10, "rulings are unit speed");
        }
    }
}

#[test]
fn clifford_cone_is_minimal() {
    let patch = generalized_cone(ConeBase::CliffordTorus, 1.0, SpaceFormModel::new(1.0), (0.05, 1.0)).unwrap();
    for u in interior(&patch) {
        let p = principal_curvatures(&fundamental_forms(&patch, u, Derivatives::Forward).unwrap()).unwrap();
        assert!(p.h_sum.abs() <= 1e-5);
    }
}

#[test]
fn cone_rejects_small_cbar_and_focal_points() {
    assert!(matches!(
        generalized_cone(ConeBase::CliffordTorus, 0.5, SpaceFormModel::new(1.0), (0.0, 1.0)),
        Err(GeometryError::CbarBelowC { .. })
    ));
    let patch = generalized_cone(ConeBase::CliffordTorus, 1.0, SpaceFormModel::new(1.0), (0.0, PI)).unwrap();
    assert!(matches!(
        fundamental_forms(&patch, [PI / 2.0, 1.0, 1.0], Derivatives::Forward),
        Err(GeometryError::NotImmersion { .. })
    ));
}

#[test]
fn rotation_patch_errors() {
    let h = helix_height(1.0, 0.0, 1.0, (0.1, 1.4), 1e-3).unwrap();
    let curve = reconstruct_on_spaceform(&h, 0.0, DEFAULT_FLOOR).unwrap();
    assert!(matches!(
        rotation_hypersurface(curve, SpaceFormModel::new(1.0)),
        Err(GeometryError::CurvatureMismatch { .. })
    ));
    let h = helix_height(0.0, -0.5, 1.0, (0.0, 1.0), 1e-3).unwrap();
    let curve = reconstruct_on_spaceform(&h, 0.0, DEFAULT_FLOOR).unwrap();
    assert!(matches!(
        rotation_hypersurface(curve, SpaceFormModel::new(0.0)),
        Err(GeometryError::NonPositiveRadius { .. })
    ));
}

#[test]
fn pairs() {
    let b = catenary_pair(1.0, 0.0, &CatenaryParams::new(1.0, 1, 0.5, 0.0).unwrap(), (0.0, 1.0), 1e-3).unwrap();
    let r = check_dual_pair(&b.f, &b.ft, b.kind, &PairSettings::new(b.kind)).unwrap();
    assert!(r.pass(), "{:?}", r.checks);
    assert_eq!(r.samples.len(), 2000);

    let b = umbilic_pair(1.0, -1.0, (0.1, 1.4), 1e-3).unwrap();
    let r = check_dual_pair(&b.f, &b.ft, b.kind, &PairSettings::new(b.kind)).unwrap();
    assert!(r.pass(), "{:?}", r.checks);

    let q = ConeHelixParams { cbar: 1.0, base: ConeBase::CliffordTorus, t_range: (0.05, 1.0), a: 0.5, b: 0.0 };
    let b = cone_helix_pair(1.0, 0.0, &q, (0.1, 1.4), 1e-3).unwrap();
    let r = check_dual_pair(&b.f, &b.ft, b.kind, &PairSettings::new(b.kind)).unwrap();
    assert!(r.pass(), "{:?}", r.checks);
}

#[test]
fn obstructions() {
    let q = ConeHelixParams { cbar: 1.0, base: ConeBase::CliffordTorus, t_range: (0.05, 1.0), a: 0.5, b: 0.0 };
    assert!(matches!(cone_helix_pair(0.0, 1.0, &q, (0.1, 1.4), 1e-3), Err(GeometryError::Obstruction { .. })));
    assert!(matches!(cone_helix_pair(1.0, 1.0, &q, (0.1, 1.4), 1e-3), Err(GeometryError::Obstruction { .. })));
    // The umbilic partner needs mu^2 = c - ct > 0: the radicand is (c - ct) x^2.
    assert!(matches!(umbilic_pair(0.0, 1.0, (0.1, 0.9), 1e-3), Err(GeometryError::Obstruction { .. })));
}

#[test]
fn degenerate_grid() {
    assert!(matches!(Grid::new([1, 1, 1]), Err(GeometryError::DegenerateGrid(_))));
    assert!(Grid::new([20, 10, 10]).is_ok());
}

#[test]
fn obj_export() {
    let patch = catenary_patch(1.0);
    let mut buf = Vec::new();
    write_obj(&patch, "f", [5, 4], 0.0, [0, 1, 3], &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 20);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 12);
    assert!(text.lines().next().unwrap().contains("projection"));
}
