//! Acceptance suite: one test per stated criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them all).

use std::time::Instant;

use friable_core::census::count_irreducibles;
use friable_core::counts::{
    expectation_gap, factorial, golomb_dickman_estimate_f64, power, psi_perm, psi_perm_oracle,
    psi_poly, PermFriableTable, PolyEnumeration, PolyFriableTable,
};
use friable_core::dickman::{self, constants::EULER_GAMMA, RhoTable};
use friable_core::saddle::perm_saddle_estimate;
use friable_core::{BigUint, Complex64, ExactRatio, PrimePower};
use friable_lab::suites::{self, GridSpec};

fn criterion(id: u32, name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(info) => {
            println!(
                "criterion {id:02} ({name}): PASS{}{info}",
                if info.is_empty() { "" } else { " " }
            );
        }
        Err(msg) => {
            println!("criterion {id:02} ({name}): FAIL {msg}");
            panic!("criterion {id:02} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_oracle_exactness() {
    criterion(1, "oracle exactness", || {
        let started = Instant::now();
        for n in 0..=20u32 {
            for m in 1..=n.max(1) {
                let fast = psi_perm(n, m);
                let oracle = psi_perm_oracle(n, m).map_err(|e| e.to_string())?;
                if fast != oracle {
                    return Err(format!("perm mismatch at n={n} m={m}: {fast} vs {oracle}"));
                }
            }
        }
        for (q, n_top) in [(2u64, 10u32), (3, 7), (5, 5)] {
            for n in 0..=n_top {
                let en = PolyEnumeration::new(q, n).map_err(|e| e.to_string())?;
                for m in 1..=n.max(1) {
                    let fast = psi_poly(q, n, m).map_err(|e| e.to_string())?;
                    if fast != BigUint::from(en.friable_count(m)) {
                        return Err(format!("poly mismatch at q={q} n={n} m={m}"));
                    }
                }
            }
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs() >= 60 {
            return Err(format!("runtime {elapsed:?} exceeds 60 s"));
        }
        Ok(format!("({elapsed:.2?})"))
    });
}

#[test]
fn criterion_02_counterexample_reproduction() {
    criterion(2, "false identity 24 != 27", || {
        let v42 = psi_poly(3, 4, 2).unwrap();
        let v41 = psi_poly(3, 4, 1).unwrap();
        let pi2 = count_irreducibles(3, 2).unwrap();
        let v22 = psi_poly(3, 2, 2).unwrap();
        if (v42.clone(), v41.clone(), pi2.clone(), v22.clone())
            != (
                BigUint::from(39u32),
                BigUint::from(15u32),
                BigUint::from(3u32),
                BigUint::from(9u32),
            )
        {
            return Err(format!(
                "expected (39,15,3,9), got ({v42},{v41},{pi2},{v22})"
            ));
        }
        // confirmed by the enumeration oracle
        let en4 = PolyEnumeration::new(3, 4).unwrap();
        let en2 = PolyEnumeration::new(3, 2).unwrap();
        if en4.friable_count(2) != 39
            || en4.friable_count(1) != 15
            || en2.friable_count(2) != 9
            || en2.histogram()[2] != 3
        {
            return Err("enumeration oracle disagrees".into());
        }
        let lhs = v42 - v41;
        let rhs = pi2 * v22;
        if lhs != BigUint::from(24u32) || rhs != BigUint::from(27u32) || lhs == rhs {
            return Err(format!("expected 24 != 27, got {lhs} vs {rhs}"));
        }
        Ok(String::new())
    });
}

#[test]
fn criterion_03_product_rule_identity() {
    criterion(3, "product-rule identity exact to n=40", || {
        let started = Instant::now();
        for q in [2u64, 3, 4, 8, 9] {
            let pp = PrimePower::new(q).unwrap();
            for m in 1..=40u32 {
                let table = PolyFriableTable::new(pp, m, 40);
                for n in 1..=40 {
                    if !table.verify_recurrence(n) {
                        return Err(format!("identity failed at q={q} n={n} m={m}"));
                    }
                }
            }
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs() >= 120 {
            return Err(format!("runtime {elapsed:?} exceeds 120 s"));
        }
        Ok(format!("({elapsed:.2?})"))
    });
}

#[test]
fn criterion_04_positivity() {
    criterion(4, "P_f - P_pi >= 0 exactly on the default grid", || {
        let report = suites::suite_positivity(&GridSpec::default());
        if !report.passed {
            return Err(report.notes.join("; "));
        }
        let c = report.empirical_constant.unwrap();
        if !c.is_finite() {
            return Err("normalized sup not finite".into());
        }
        Ok(format!("(empirical C = {c:.4})"))
    });
}

#[test]
fn criterion_05_prime_polynomial_endpoint() {
    criterion(5, "1 - P(f_n (n-1)-friable) = pi_q(n)/q^n", || {
        for q in [2u64, 3] {
            let pp = PrimePower::new(q).unwrap();
            for n in 2..=30u32 {
                let table = PolyFriableTable::new(pp, n - 1, n);
                let missing = power(q, n) - table.psi(n);
                let expected = count_irreducibles(q, n).unwrap();
                if missing != expected {
                    return Err(format!("q={q} n={n}: {missing} vs {expected}"));
                }
            }
        }
        Ok(String::new())
    });
}

#[test]
fn criterion_06_dickman_accuracy() {
    criterion(6, "rho: closed form, delay identity, monotone", || {
        let rho = RhoTable::new(100);
        let closed = (rho.rho_f64(2.0).unwrap() - (1.0 - 2f64.ln())).abs();
        if closed > 1e-12 {
            return Err(format!("|rho(2) - (1 - ln 2)| = {closed:e}"));
        }
        for u in [1.5f64, 2.5, 5.0, 10.0, 20.0] {
            let rel = rho.delay_identity_residual(u).unwrap();
            let abs = rel * u * rho.rho_f64(u).unwrap();
            if abs > 1e-10 {
                return Err(format!("delay identity |residual| = {abs:e} at u={u}"));
            }
        }
        let mut prev = f64::INFINITY;
        let mut u = 0.0f64;
        while u <= 30.0 {
            let v = rho.rho_f64(u).unwrap();
            if v > prev {
                return Err(format!("rho increased at u={u}"));
            }
            prev = v;
            u += 0.01;
        }
        Ok(format!(
            "(certified log error {:.2e})",
            rho.certified_log_err()
        ))
    });
}

#[test]
fn criterion_07_xi_root_bounds() {
    criterion(7, "log u < xi <= 2 log u with tight residual", || {
        for u in [1.01f64, 2.0, 10.0, 100.0, 1e4] {
            let x = dickman::xi(u).map_err(|e| e.to_string())?;
            if !(u.ln() < x && x <= 2.0 * u.ln()) {
                return Err(format!("bracket violated at u={u}: xi={x}"));
            }
            let resid = (x.exp() - 1.0 - u * x).abs();
            if resid > 1e-10 * (1.0 + u * x) {
                return Err(format!("residual {resid:e} at u={u}"));
            }
        }
        Ok(String::new())
    });
}

#[test]
fn criterion_08_laplace_saddle_identity() {
    criterion(
        8,
        "exp(gamma - u xi + I(xi)) vs rho(u) sqrt(2 pi/xi')",
        || {
            let rho = RhoTable::new(100);
            let residual = |u: f64| -> f64 {
                let x = dickman::xi(u).unwrap();
                let ix = dickman::exp_integral(Complex64::new(x, 0.0)).unwrap().re;
                let lhs = EULER_GAMMA - u * x + ix;
                let rhs = rho.rho(u).unwrap().log_value()
                    + 0.5 * (2.0 * std::f64::consts::PI / dickman::xi_prime(u).unwrap()).ln();
                ((lhs - rhs).exp() - 1.0).abs()
            };
            let (r5, r20) = (residual(5.0), residual(20.0));
            if !(r20 < r5) {
                return Err(format!("residual did not shrink: r5={r5} r20={r20}"));
            }
            if r20 > 0.1 {
                return Err(format!("r20 = {r20} > 0.1"));
            }
            Ok(format!("(r5={r5:.4}, r20={r20:.4})"))
        },
    );
}

#[test]
fn criterion_09_saddle_estimate_trend() {
    criterion(9, "saddle estimate error decreases along u at m=10", || {
        // regression anchors measured at build time
        let anchors = [(3u32, 0.02243), (5, 0.01441), (8, 0.00898), (10, 0.00723)];
        let mut last = f64::INFINITY;
        let mut shown = Vec::new();
        for (u, anchor) in anchors {
            let n = 10 * u;
            let est = perm_saddle_estimate(n, 10);
            let exact = ExactRatio::new(psi_perm(n, 10), factorial(n));
            let rel = ((est.log_value() - exact.ln()).exp() - 1.0).abs();
            if rel >= last {
                return Err(format!("error did not decrease at u={u}: {rel}"));
            }
            if (rel - anchor).abs() > 0.5 * anchor {
                return Err(format!("drifted off anchor at u={u}: {rel} vs {anchor}"));
            }
            shown.push(format!("u={u}: {rel:.4}"));
            last = rel;
        }
        Ok(format!("({})", shown.join(", ")))
    });
}

#[test]
fn criterion_10_delta_positive_with_split() {
    criterion(10, "Delta > 0, lower-bound constant, S1+S2 split", || {
        let (_rows, report) = suites::suite_delta(60);
        if !report.passed {
            return Err(report.notes.join("; "));
        }
        let inf = report.empirical_constant.unwrap();
        if inf <= 0.0 {
            return Err(format!("inf Delta*m/(u ln u) = {inf}"));
        }
        Ok(format!("(inf Delta*m/(u ln u) = {inf:.4})"))
    });
}

#[test]
fn criterion_11_expectation_gap() {
    criterion(11, "gap exact positivity and log-gap band", || {
        let g22 = expectation_gap(2, 2).unwrap();
        if g22 != ExactRatio::new(BigUint::from(1u32), BigUint::from(4u32)) {
            return Err(format!("gap(2,2) = {g22}, want 1/4"));
        }
        let report = suites::suite_gap(&GridSpec::new(vec![2, 3, 5], 40));
        if !report.passed {
            return Err(report.notes.join("; "));
        }
        let band_note = report
            .notes
            .iter()
            .find(|n| n.contains("band"))
            .cloned()
            .unwrap_or_default();
        Ok(format!("({band_note})"))
    });
}

#[test]
fn criterion_12_golomb_dickman() {
    criterion(12, "E L(pi_400)/400 within 0.01 of 0.624329", || {
        let started = Instant::now();
        let mut last = f64::INFINITY;
        for n in [100u32, 200, 400] {
            let err = (golomb_dickman_estimate_f64(n).unwrap() - 0.624_329).abs();
            if err >= last {
                return Err(format!("convergence broke at n={n}"));
            }
            last = err;
        }
        if last > 0.01 {
            return Err(format!("final error {last}"));
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs() >= 120 {
            return Err(format!("runtime {elapsed:?} exceeds 120 s"));
        }
        Ok(format!("(|err| = {last:.6}, {elapsed:.2?})"))
    });
}

#[test]
fn criterion_13_ford_and_lower_envelopes() {
    criterion(13, "Ford upper bound and rho lower bound", || {
        let grid = GridSpec::default();
        let rho = RhoTable::new(100);
        for m in 1..=grid.n_max {
            let perm = PermFriableTable::new(m, grid.n_max);
            for n in m..=grid.n_max {
                let u = n as f64 / m as f64;
                let log_p = ExactRatio::new(perm.psi(n).clone(), factorial(n)).ln();
                if log_p > -u * u.ln() + u + 1e-9 {
                    return Err(format!("Ford bound violated at n={n} m={m}"));
                }
            }
        }
        for &q in &grid.q_list {
            let pp = PrimePower::new(q).unwrap();
            for m in 1..=grid.n_max {
                let poly = PolyFriableTable::new(pp, m, grid.n_max);
                for n in m..=grid.n_max {
                    let u = n as f64 / m as f64;
                    let p_f = ExactRatio::new(poly.psi(n).clone(), power(q, n)).to_f64();
                    if p_f < rho.rho_f64(u).unwrap() - 1e-9 {
                        return Err(format!("P_f < rho(u) - 1e-9 at q={q} n={n} m={m}"));
                    }
                }
            }
        }
        Ok(String::new())
    });
}
