//! Checks of the one-variable facts used to establish the two-point
//! inequalities: logarithm bounds, the quartic `v`, the cubic bound's
//! factorizations and sextic `G`, and the convex function `phi`.
//!
//! Identities that live in `Q(√2)` are checked exactly; anything involving
//! `ln 2` or `2^{0.53}` is evaluated in floating point.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::constants::{beta0, c_beta, CUBIC_BETA};
use crate::qsqrt2::{sign_char, Poly, QSqrt2};

/// Points in each scan of `[0, 1]`.
pub const SCAN_POINTS: u32 = 10_000;
/// Expansion point of the tangent line to `G`.
pub const G_TANGENT_POINT: f64 = 0.631;
/// Expansion point of the tangent line to `phi`.
pub const PHI_TANGENT_POINT: f64 = 0.22;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialCheck {
    pub name: String,
    pub passed: bool,
    pub values: BTreeMap<String, f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialReport {
    pub checks: Vec<PolynomialCheck>,
    pub passed: bool,
}

impl PolynomialReport {
    pub fn check(&self, name: &str) -> Option<&PolynomialCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &str, passed: bool, values: &[(&str, f64)], detail: impl Into<String>) -> PolynomialCheck {
    PolynomialCheck {
        name: name.into(),
        passed,
        values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        detail: detail.into(),
    }
}

fn scan(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..=SCAN_POINTS).map(move |i| lo + (hi - lo) * i as f64 / SCAN_POINTS as f64)
}

fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
    QSqrt2::from_parts(a, b)
}

fn poly(coeffs: &[((i64, i64), (i64, i64))]) -> Poly {
    Poly::new(coeffs.iter().map(|&(a, b)| q(a, b)).collect())
}

/// The cubic bound at `alpha = 1/2`, exactly.
pub fn half_cubic_poly() -> Poly {
    poly(&[
        ((0, 1), (0, 1)),
        ((-2, 1), (8, 3)),
        ((10, 1), (-8, 1)),
        ((-8, 1), (16, 3)),
    ])
}

/// `G - (2^beta - 1)`: the part of the sextic with exact coefficients.
pub fn sextic_g0() -> Poly {
    poly(&[
        ((0, 1), (0, 1)),
        ((-94, 3), (64, 3)),
        ((1126, 3), (-2384, 9)),
        ((-5296, 3), (1248, 1)),
        ((11624, 3), (-24656, 9)),
        ((-11584, 3), (8192, 3)),
        ((1408, 1), (-8960, 9)),
    ])
}

fn constant(a: (i64, i64), b: (i64, i64)) -> Poly {
    Poly::constant(q(a, b))
}

fn log_bound_g(s: f64) -> f64 {
    let l = std::f64::consts::LN_2;
    s / (2.0 * l) + (1.0 - 1.0 / (2.0 * l)) * s * s - (2.0 / (2.0 - s)).log2()
}

/// Quartic coefficients of `v`, lowest degree first.
pub fn v_coefficients() -> [f64; 5] {
    let l = std::f64::consts::LN_2;
    [
        32.0 * l * l - 32.0 * l + 4.0,
        -(12.0 - 24.0 * l + 16.0 * l * l),
        -(17.0 - 18.0 * l) * (2.0 * l - 1.0),
        12.0 * (1.0 - l) * (2.0 * l - 1.0),
        4.0 * (l - 1.0) * (l - 1.0),
    ]
}

fn v_at(s: f64) -> f64 {
    v_coefficients().iter().rev().fold(0.0, |acc, c| acc * s + c)
}

fn logarithm_checks(out: &mut Vec<PolynomialCheck>) {
    let l = std::f64::consts::LN_2;
    let (g0, g1) = (log_bound_g(0.0), log_bound_g(1.0));
    let g_min = scan(0.0, 1.0).map(log_bound_g).fold(f64::INFINITY, f64::min);
    out.push(check(
        "log_upper_bound",
        g0.abs() < 1e-12 && g1.abs() < 1e-12 && g_min >= -1e-12,
        &[("g_at_0", g0), ("g_at_1", g1), ("scan_min", g_min)],
        "g(s) = s/(2 ln 2) + (1 - 1/(2 ln 2)) s^2 - log2(2/(2-s)) vanishes at 0 and 1 and is >= 0 on the scan",
    ));

    let lower = |s: f64| -(1.0 - s).log2() - s / l - s * s / (2.0 * l);
    let low_min = scan(0.0, 1.0)
        .filter(|&s| s < 1.0)
        .map(lower)
        .fold(f64::INFINITY, f64::min);
    out.push(check(
        "log_lower_bound",
        low_min >= -1e-12,
        &[("scan_min", low_min)],
        "-log2(1-s) - s/ln 2 - s^2/(2 ln 2) >= 0 on the scan of [0, 1)",
    ));

    // The reduced two-point inequality at beta = 1/2, y = 1/2, with s = 1 - t.
    let reduced = |s: f64| {
        let tail = if s < 1.0 { (1.0 - s) * (1.0 - (1.0 - s).log2()).sqrt() } else { 0.0 };
        (1.0 + s * s).sqrt() + tail - (2.0 - s) * (1.0 + (2.0 / (2.0 - s)).log2()).sqrt()
    };
    let red_min = scan(0.0, 1.0).map(reduced).fold(f64::INFINITY, f64::min);
    out.push(check(
        "two_point_reduced",
        red_min >= -1e-12,
        &[("scan_min", red_min)],
        "sqrt(1+s^2) + (1-s) sqrt(1 - log2(1-s)) >= (2-s) sqrt(1 + log2(2/(2-s))) on the scan",
    ));
}

fn quartic_checks(out: &mut Vec<PolynomialCheck>) {
    let l = std::f64::consts::LN_2;
    let c = v_coefficients();
    let signs: String = c.iter().rev().map(|x| if *x > 0.0 { '+' } else { '-' }).collect();
    out.push(check(
        "v_sign_pattern",
        signs == "++---",
        &[("s4", c[4]), ("s3", c[3]), ("s2", c[2]), ("s1", c[1]), ("s0", c[0])],
        format!("coefficient signs from the top: {signs} (one sign change, so at most one positive root)"),
    ));

    let v1 = v_at(1.0);
    let closed = 32.0 * l * l - 32.0 * l + 1.0;
    out.push(check(
        "v_at_one",
        v1 < 0.0 && (v1 - closed).abs() < 1e-12,
        &[("v_1", v1), ("closed_form", closed)],
        "v(1) = 32 ln^2 2 - 32 ln 2 + 1 < 0",
    ));

    let v_max = scan(0.0, 1.0).map(v_at).fold(f64::NEG_INFINITY, f64::max);
    out.push(check("v_negative", v_max < 0.0, &[("scan_max", v_max)], "v < 0 on the scan of [0, 1]"));

    // The squared-out difference collapses to -s^2 (1-s)^2 v(s) / (4 ln^2 2).
    let worst = scan(0.0, 1.0)
        .map(|s| {
            let p = 1.0 + s / l + s * s / (2.0 * l);
            let qv = 1.0 + s / (2.0 * l) + (1.0 - 1.0 / (2.0 * l)) * s * s;
            let lhs = 4.0 * (1.0 - s).powi(2) * (1.0 + s * s) * p;
            let rhs = (-(1.0 - s).powi(2) * p + (2.0 - s).powi(2) * qv - 1.0 - s * s).powi(2);
            let reduced = -s * s * (1.0 - s).powi(2) * v_at(s) / (4.0 * l * l);
            (lhs - rhs - reduced).abs()
        })
        .fold(0.0, f64::max);
    out.push(check(
        "v_reduction",
        worst < 1e-12,
        &[("max_abs_error", worst)],
        "difference of the squared sides equals -s^2 (1-s)^2 v(s) / (4 ln^2 2) on the scan",
    ));
}

fn quadratic_checks(out: &mut Vec<PolynomialCheck>) {
    let mut values = Vec::new();
    let mut ok = true;
    for (label, beta) in [("0.5", 0.5), ("0.55", 0.55), ("beta0", beta0())] {
        let c = c_beta(beta);
        let p = 2f64.powf(beta + 1.0);
        let y = (c - 1.0) / c;
        let lhs = y * c * (3.0 - p) + p * c - 4.0 * c + 2.0;
        let rhs = ((p - 2.0).sqrt() - 1.0).powi(2);
        ok &= (lhs - rhs).abs() < 1e-12 && 3.0 - p >= -1e-12;
        values.push((label, lhs - rhs));
    }
    let vals: Vec<(&str, f64)> = values.iter().map(|(k, v)| (*k, *v)).collect();
    out.push(check(
        "quadratic_linear_endpoint",
        ok,
        &vals,
        "2 f(0,y)/y at y = (C-1)/C equals (sqrt(2^{beta+1}-2) - 1)^2 for the optimal C",
    ));
}

fn cubic_checks(out: &mut Vec<PolynomialCheck>) {
    let y = Poly::var();
    let b = half_cubic_poly();

    // y - B(y) = (8(3 - 2√2)/3) y (y - 1/2)(y - r), r = (√2 - 9/8)/(√2 - 3/2).
    let r = &q((-9, 8), (1, 1)) / &q((-3, 2), (1, 1));
    let lead = q((8, 1), (-16, 3));
    let rhs = (&(&y * &(&y - &constant((1, 2), (0, 1)))) * &(&y - &Poly::constant(r.clone()))).scale(&lead);
    let lhs = &y - &b;
    let exact = lhs == rhs;
    let worst = scan(0.0, 1.0)
        .map(|t| (lhs.eval_f64(t) - rhs.eval_f64(t)).abs())
        .fold(0.0, f64::max);
    out.push(check(
        "cubic_diagonal_factorization",
        exact && worst < 1e-12 && r.signum() == Ordering::Less,
        &[("root", r.to_f64()), ("scan_max_abs_error", worst)],
        "y - B(y) = (8(3-2√2)/3) y (y-1/2)(y-r) exactly in Q(√2); r < 0",
    ));

    // B(y)^2 + y^2 - (2 B(y/2))^2 factors with a non-negative cofactor on [0, 1/2].
    let half_y = b.compose(&y.scale(&QSqrt2::ratio(1, 2)));
    let two_half = half_y.scale(&QSqrt2::int(2));
    let lhs = &(&(&b * &b) + &(&y * &y)) - &(&two_half * &two_half);
    let one = constant((1, 1), (0, 1));
    let quad = poly(&[((51, 1), (36, 1)), ((29, 1), (28, 1)), ((10, 1), (0, 1))]);
    let rhs = (&(&(&(&y * &y) * &(&one - &y.scale(&QSqrt2::int(2)))) * &(&one - &y)) * &quad)
        .scale(&q((17, 3), (-4, 1)));
    out.push(check(
        "cubic_mirror_identity",
        lhs == rhs,
        &[],
        "B(y)^2 + y^2 - (2B(y/2))^2 = ((17-12√2)/3) y^2 (1-2y)(1-y)(10y^2 + (29+28√2)y + 51+36√2) exactly",
    ));

    // f(y - B(y), y) = B(y) G(y); the 2^beta - 1 terms match on both sides,
    // so compare the rest: B(y) - 2B(y - B(y)/2) + B(y - B(y)) = B(y) G0(y).
    let x = &y - &b;
    let mid = &y - &b.scale(&QSqrt2::ratio(1, 2));
    let rest = &(&b - &b.compose(&mid).scale(&QSqrt2::int(2))) + &b.compose(&x);
    let g0 = sextic_g0();
    out.push(check(
        "cubic_sextic_factorization",
        rest == &b * &g0 && g0.degree() == Some(6),
        &[],
        "f(y-B(y), y) = B(y) G(y) with G of degree 6, exactly in Q(√2)",
    ));

    let g3 = g0.derivative().derivative().derivative();
    let g2 = g0.derivative().derivative();
    let half = QSqrt2::ratio(1, 2);
    let g3_half = g3.eval(&half);
    let g2_half = g2.eval(&half);
    let g3_signs: String = g3.coeffs().iter().rev().map(sign_char).collect();
    out.push(check(
        "sextic_third_derivative",
        g3_half == q((-896, 1), (640, 1)) && g3_half.is_positive() && g3_signs == "+++-",
        &[("g3_at_half", g3_half.to_f64())],
        format!("G'''(1/2) = (5√2-7)·2^7 > 0; coefficient signs of G''' from the top: {g3_signs}"),
    ));
    out.push(check(
        "sextic_second_derivative",
        g2_half == q((196, 3), (-400, 9)) && g2_half.is_positive(),
        &[("g2_at_half", g2_half.to_f64())],
        "G''(1/2) = (147-100√2)·4/9 > 0",
    ));

    let shift = 2f64.powf(CUBIC_BETA) - 1.0;
    let g = |t: f64| g0.eval_f64(t) + shift;
    let y0 = G_TANGENT_POINT;
    let slope = g0.derivative().eval_f64(y0);
    let tangent_half = g(y0) + slope * (0.5 - y0);
    let g_min = scan(0.5, 1.0).map(g).fold(f64::INFINITY, f64::min);
    out.push(check(
        "sextic_tangent",
        slope > 3e-4 && slope < 4e-4 && tangent_half > 6e-5 && tangent_half < 7e-5 && g_min >= 0.0,
        &[("g_prime_y0", slope), ("tangent_at_half", tangent_half), ("scan_min_on_upper_half", g_min)],
        "G'(0.631) in (3e-4, 4e-4), tangent L(1/2) in (6e-5, 7e-5); G >= 0 on the scan of [1/2, 1]",
    ));
}

/// `phi` and `phi'` for `beta = 0.53`.
pub fn phi_and_derivative(t: f64) -> (f64, f64) {
    let b = CUBIC_BETA;
    let c = 2f64.powf(1.5) + 1.0;
    let k = 2.0 * (3.0 - 2.0 * 2f64.sqrt());
    let e = 1.0 / (1.0 - b);
    let kk = b * k.powf(1.0 / (b - 1.0));
    let u = t * (t + c);
    let phi = u.powf(e) / kk + (2.0 * b - 1.0) / (b * (1.0 - b)) - 3.0 * t / ((1.0 - b) * (t + c));
    let dphi = e * u.powf(e - 1.0) * (2.0 * t + c) / kk - 3.0 * c / ((1.0 - b) * (t + c).powi(2));
    (phi, dphi)
}

fn phi_checks(out: &mut Vec<PolynomialCheck>) {
    let t0 = PHI_TANGENT_POINT;
    let (p, dp) = phi_and_derivative(t0);
    let h = 1e-6;
    let fd = (phi_and_derivative(t0 + h).0 - phi_and_derivative(t0 - h).0) / (2.0 * h);
    let l0 = p - t0 * dp;
    out.push(check(
        "phi_tangent",
        dp > 0.05 && dp < 0.06 && l0 > 0.03 && l0 < 0.04 && (fd - dp).abs() < 1e-6,
        &[("phi_prime", dp), ("phi_prime_finite_difference", fd), ("tangent_at_0", l0)],
        "phi'(0.22) in (0.05, 0.06) and tangent L(0) in (0.03, 0.04)",
    ));
}

pub fn proof_polynomials_report() -> PolynomialReport {
    let mut checks = Vec::new();
    logarithm_checks(&mut checks);
    quartic_checks(&mut checks);
    quadratic_checks(&mut checks);
    cubic_checks(&mut checks);
    phi_checks(&mut checks);
    let passed = checks.iter().all(|c| c.passed);
    PolynomialReport { checks, passed }
}
