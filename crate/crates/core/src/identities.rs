//! Exact q-expansion identities behind the algebra `M*(Γ₀(4)) = C[Θ, F₂]`
//! and the derivation tables, checked coefficientwise.

use serde::Serialize;

use crate::arith::{rat, rat_int, Rat};
use crate::qseries::{e2, eisenstein, eta_at, f2, h52, theta, QSeries};
use crate::quasimod::{serre_derivation, to_qseries, PhiSpec, WeightedPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub order: usize,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, order: usize, lhs: &QSeries, rhs: &QSeries) -> IdentityCheck {
    let passed = lhs.agrees_with(rhs, order);
    let detail = if passed {
        "exact".to_string()
    } else {
        let d = lhs.sub(rhs).ok();
        let at = d
            .as_ref()
            .and_then(|d| d.coeffs().iter().position(|c| *c != rat_int(0)));
        format!("first difference at index {at:?}")
    };
    IdentityCheck {
        name: name.into(),
        order,
        passed,
        detail,
    }
}

fn ser(p: &WeightedPoly, n: usize) -> QSeries {
    to_qseries(p, n)
}

/// `Df - kφf` on q-expansions.
fn modified(f: &QSeries, k2: i64, phi: &PhiSpec, n: usize) -> QSeries {
    let phis = ser(&phi.to_poly(), n);
    f.derivative()
        .sub(&phis.mul(f).scale_rat(&rat(k2, 2)))
        .expect("aligned")
}

/// Runs every identity to `order` coefficients.
pub fn identity_suite(order: usize) -> Vec<IdentityCheck> {
    let n = order;
    let th = theta(n);
    let fs = f2(n);
    let mut out = Vec::new();

    let eta_q = eta_at(2, n + 1)
        .pow(5)
        .expect("power")
        .div(
            &eta_at(1, n + 1)
                .pow(2)
                .expect("power")
                .mul(&eta_at(4, n + 1).pow(2).expect("power")),
        )
        .expect("eta is a unit series");
    out.push(check(
        "theta = eta(2t)^5 / (eta(t)^2 eta(4t)^2)",
        n,
        &th,
        &eta_q,
    ));

    let lhs = th
        .derivative()
        .scale_rat(&rat_int(24))
        .div(&th)
        .expect("theta(0) = 1");
    let e = e2(n);
    let rhs = e2(n.div_ceil(2))
        .rescale(2)
        .truncate(n)
        .scale_rat(&rat_int(10))
        .sub(&e.scale_rat(&rat_int(2)))
        .and_then(|s| {
            s.sub(
                &e2(n.div_ceil(4))
                    .rescale(4)
                    .truncate(n)
                    .scale_rat(&rat_int(8)),
            )
        })
        .expect("aligned");
    out.push(check(
        "24 D(theta)/theta = 10 E2(2t) - 2 E2(t) - 8 E2(4t)",
        n,
        &lhs,
        &rhs,
    ));

    out.push(check(
        "E4 = X^8 + 224 X^4 Y + 256 Y^2",
        n,
        &eisenstein(4, n).expect("weight 4"),
        &ser(&WeightedPoly::e4(), n),
    ));
    for (g, name) in [
        (WeightedPoly::x(), "X"),
        (WeightedPoly::y(), "Y"),
        (WeightedPoly::z(), "Z"),
    ] {
        out.push(check(
            &format!("q-expansion of D({name})"),
            n,
            &ser(&g.d(), n),
            &ser(&g, n).derivative(),
        ));
    }

    for (label, phi) in [
        ("E2/12", PhiSpec::serre()),
        ("z7", PhiSpec::z7()),
        ("romik", PhiSpec::romik()),
    ] {
        match serre_derivation(&phi) {
            Ok(t) => {
                out.push(check(
                    &format!("[{label}] theta_phi(Theta) = {}", t.theta_x),
                    n,
                    &modified(&th, 1, &phi, n),
                    &ser(&t.theta_x, n),
                ));
                out.push(check(
                    &format!("[{label}] theta_phi(F2) = {}", t.theta_y),
                    n,
                    &modified(&fs, 4, &phi, n),
                    &ser(&t.theta_y, n),
                ));
                let ph = ser(&phi.to_poly(), n);
                let psi = ph.derivative().sub(&ph.mul(&ph)).expect("aligned");
                out.push(check(
                    &format!("[{label}] D(phi) - phi^2 = {}", t.psi),
                    n,
                    &psi,
                    &ser(&t.psi, n),
                ));
            }
            Err(e) => out.push(IdentityCheck {
                name: format!("[{label}] derivation table"),
                order: n,
                passed: false,
                detail: e.to_string(),
            }),
        }
    }

    let printed: [(i64, i64); 14] = [
        (0, 1),
        (1, -10),
        (2, 0),
        (3, 0),
        (4, -70),
        (5, -48),
        (6, 0),
        (7, 0),
        (8, -120),
        (9, -250),
        (10, 0),
        (11, 0),
        (12, -240),
        (13, -240),
    ];
    let hq = h52(14).scale_rat(&rat_int(120));
    let pq = QSeries::from_coeffs(
        0,
        printed
            .iter()
            .map(|&(_, c)| Rat::from_integer(c.into()))
            .collect(),
    );
    out.push(check("120 H_{5/2} through q^13 (printed)", 14, &hq, &pq));
    out.push(check(
        "H_{5/2} = (X^5 - 20 X Y)/120",
        n,
        &h52(n),
        &ser(&WeightedPoly::h52(), n),
    ));
    out
}
