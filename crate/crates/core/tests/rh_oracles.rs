//! Independent checks of the expansion objects: the singular parts of the
//! first jump correction are recovered by a discrete Fourier transform of
//! samples on a small circle and compared with the closed Laurent parts.

mod common;

use common::{circle_fit, circle_radius, measure};
use onecut::equilibrium::Endpoint;
use onecut::rh_expansion::{delta1_laurent, LocalExpansion, DEFAULT_DISK_FRACTION};

fn check_endpoint(spec: &str, endpoint: Endpoint) {
    let (p, m) = measure(spec);
    let parts = delta1_laurent(&m, &p).unwrap();
    let local = LocalExpansion::new(&m, endpoint, DEFAULT_DISK_FRACTION).unwrap();
    let (centre, expected) = match endpoint {
        Endpoint::Right => (m.b().clone(), &parts.right),
        Endpoint::Left => (m.a().clone(), &parts.left),
    };
    let radius = circle_radius(&m, &local);
    let fit = circle_fit(&local, &centre, &radius, 64);
    let e2 = fit.pole2.distance(&expected.pole2).to_f64();
    let e1 = fit.pole1.distance(&expected.pole1).to_f64();
    assert!(e2 < 1e-8 && e1 < 1e-8, "{spec} {endpoint:?}: {e2:e} {e1:e}");
}

#[test]
fn first_jump_singular_part_near_b() {
    for spec in ["poly:0,0,0.5", "poly:0,0,0,0,0.25", "poly:0,0,0,0.1,0.25", "jacobi:1,2"] {
        check_endpoint(spec, Endpoint::Right);
    }
}

#[test]
fn first_jump_singular_part_near_a() {
    for spec in ["poly:0,0,0,0.1,0.25", "jacobi:1,2"] {
        check_endpoint(spec, Endpoint::Left);
    }
}
