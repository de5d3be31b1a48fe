//! Divided differences of `s ↦ exp(-s t)`.
//!
//! Every time-dependent mode amplitude of the weak-swimming expansion is a
//! response of a first-order linear ODE to exponential forcing, and those
//! responses are exactly first and second divided differences of the
//! exponential over the relevant decay rates. Writing them this way keeps
//! them finite and accurate when two rates coincide.

/// `(e^{-a t} - e^{-b t}) / (b - a)`, i.e. the response `y` of
/// `y' + b y = e^{-a t}`, `y(0) = 0`.
///
/// Symmetric in `a, b`. When `|b - a| < eps` the coincident-rate limit
/// `t e^{-a t}` is used.
#[inline]
pub fn relax1(a: f64, b: f64, t: f64, eps: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let gap = hi - lo;
    let base = (-lo * t).exp();
    if gap < eps {
        return t * base;
    }
    // expm1 keeps full precision for small gap·t
    -base * (-gap * t).exp_m1() / gap
}

/// Second divided difference over rates `{a, b, c}`:
/// the response of `y' + c y = relax1(a, b, t)`, `y(0) = 0`.
///
/// Symmetric in all three rates and strictly positive for `t > 0`.
pub fn relax2(a: f64, b: f64, c: f64, t: f64, eps: f64) -> f64 {
    let mut r = [a, b, c];
    r.sort_by(|x, y| x.partial_cmp(y).expect("rates must not be NaN"));
    let [r0, r1, r2] = r;
    let base = (-r0 * t).exp();
    let z1 = (r1 - r0) * t;
    let z2 = (r2 - r0) * t;
    if r2 - r0 < eps || z2 < SERIES_CUTOFF {
        return base * t * t * unit_dd2_series(z1, z2);
    }
    // Scaled form: exp(-r0 t) t² · ψ(z1, z2) where ψ is the second divided
    // difference of exp(-z) over {0, z1, z2}.
    let d01 = unit_dd1(0.0, z1);
    let d12 = unit_dd1(z1, z2);
    base * t * t * (d01 - d12) / z2
}

const SERIES_CUTOFF: f64 = 1e-2;

/// First divided difference of `e^{-z}` over `{p, q}`, `p <= q`, negated so it is positive.
#[inline]
fn unit_dd1(p: f64, q: f64) -> f64 {
    let gap = q - p;
    if gap == 0.0 {
        return (-p).exp();
    }
    -(-p).exp() * (-gap).exp_m1() / gap
}

/// Taylor form of the second divided difference of `e^{-z}` over `{0, z1, z2}`:
/// `Σ_k (-1)^k h_k(0, z1, z2) / (k + 2)!` with `h_k` the complete homogeneous
/// symmetric polynomial.
fn unit_dd2_series(z1: f64, z2: f64) -> f64 {
    // h_k(0, z1, z2) = Σ_{i=0..k} z1^i z2^(k-i)
    let mut sum = 0.0;
    let mut fact = 2.0; // (k+2)!
    for k in 0..10 {
        let mut h = 0.0;
        let mut p1 = 1.0;
        for i in 0..=k {
            h += p1 * z2.powi(k - i);
            p1 *= z1;
        }
        let term = h / fact;
        sum += if k % 2 == 0 { term } else { -term };
        fact *= (k + 3) as f64;
    }
    sum
}

/// Time integral of [`relax1`] over `[0, ∞)`: `1 / (a b)`.
pub fn relax1_integral(a: f64, b: f64) -> f64 {
    1.0 / (a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    /// Direct partial-fraction evaluation, valid for well-separated rates.
    fn relax2_direct(a: f64, b: f64, c: f64, t: f64) -> f64 {
        let e = |s: f64| (-s * t).exp();
        e(a) / ((b - a) * (c - a)) + e(b) / ((a - b) * (c - b)) + e(c) / ((a - c) * (b - c))
    }

    /// RK4 integration of `y' + c y = relax1(a, b, t)`.
    fn relax2_ode(a: f64, b: f64, c: f64, t_end: f64) -> f64 {
        let steps = 20_000;
        let h = t_end / steps as f64;
        let f = |t: f64, y: f64| relax1(a, b, t, EPS) - c * y;
        let mut y = 0.0;
        for i in 0..steps {
            let t = i as f64 * h;
            let k1 = f(t, y);
            let k2 = f(t + h / 2.0, y + h / 2.0 * k1);
            let k3 = f(t + h / 2.0, y + h / 2.0 * k2);
            let k4 = f(t + h, y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        y
    }

    #[test]
    fn relax1_matches_closed_form() {
        let (a, b, t) = (2.0f64, 5.0f64, 0.3f64);
        let direct = ((-a * t).exp() - (-b * t).exp()) / (b - a);
        assert!((relax1(a, b, t, EPS) - direct).abs() < 1e-15);
        assert_eq!(relax1(a, b, t, EPS), relax1(b, a, t, EPS));
    }

    #[test]
    fn relax1_coincident_limit() {
        let t = 0.7;
        assert_eq!(relax1(3.0, 3.0, t, EPS), t * (-3.0 * t).exp());
        let near = relax1(3.0, 3.0 + 1e-7, t, EPS);
        assert!((near - t * (-3.0 * t).exp()).abs() < 1e-7);
        assert_eq!(relax1(1.0, 2.0, 0.0, EPS), 0.0);
    }

    #[test]
    fn relax2_matches_partial_fractions() {
        for &(a, b, c, t) in &[
            (1.0, 4.0, 9.0, 0.2),
            (0.0, 2.0, 2.467, 1.5),
            (22.2, 9.87, 2.0, 0.05),
            (100.0, 3.0, 40.0, 0.01),
        ] {
            let v = relax2(a, b, c, t, EPS);
            let d = relax2_direct(a, b, c, t);
            assert!(
                (v - d).abs() <= 1e-12 * d.abs().max(1e-6),
                "{a} {b} {c} {t}: {v} vs {d}"
            );
        }
    }

    #[test]
    fn relax2_is_the_ode_response() {
        for &(a, b, c) in &[
            (1.0, 4.0, 9.0),
            (2.0, 2.0, 5.0),
            (3.0, 3.0, 3.0),
            (0.0, 2.0, 0.0),
        ] {
            let t = 0.8;
            let ode = relax2_ode(a, b, c, t);
            let v = relax2(a, b, c, t, EPS);
            assert!((v - ode).abs() < 1e-10, "{a} {b} {c}: {v} vs {ode}");
        }
    }

    #[test]
    fn relax2_coincident_limits() {
        let t = 0.4;
        // all equal: t²/2 e^{-a t}
        let all = relax2(2.0, 2.0, 2.0, t, EPS);
        assert!((all - t * t / 2.0 * (-2.0 * t).exp()).abs() < 1e-15);
        // continuity across the series cutoff
        for gap in [1e-3, 2.4e-2, 2.6e-2, 1e-1] {
            let v = relax2(1.0, 1.0 + gap, 5.0, t, EPS);
            let w = relax2_ode(1.0, 1.0 + gap, 5.0, t);
            assert!((v - w).abs() < 1e-10, "gap {gap}: {v} vs {w}");
        }
    }

    proptest::proptest! {
        #[test]
        fn relax2_symmetric_positive(a in 0.0f64..50.0, b in 0.0f64..50.0, c in 0.0f64..50.0, t in 1e-4f64..3.0) {
            let v = relax2(a, b, c, t, EPS);
            proptest::prop_assert!(v > 0.0);
            for w in [relax2(b, a, c, t, EPS), relax2(c, b, a, t, EPS), relax2(a, c, b, t, EPS)] {
                proptest::prop_assert!((v - w).abs() <= 1e-13 * v);
            }
        }
    }
}
