use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{CpswfError, Result};

/// J_ν(x) for real ν >= 0 and x >= 0.
///
/// Small arguments (x <= 8, or x inside the monotone region x <= 2√(ν+1))
/// use the power series. Everything else goes through the continued-fraction
/// method: CF1 for J'/J at ν, downward recurrence to |μ| <= 1/2, then Steed's
/// CF2 and the Wronskian fix the normalization.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(CpswfError::InvalidParameter(format!("Bessel order {nu} must be >= 0")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(CpswfError::InvalidParameter(format!("Bessel argument {x} must be >= 0")));
    }
    Ok(bessel_j_unchecked(nu, x))
}

pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if use_series(nu, x) {
        let ln_pref = nu * (x / 2.0).ln() - ln_gamma(nu + 1.0);
        if ln_pref < -745.0 {
            return 0.0;
        }
        ln_pref.exp() * series_sum(nu, x)
    } else {
        steed(nu, x)
    }
}

#[inline]
fn use_series(nu: f64, x: f64) -> bool {
    x <= 8.0 || x * x <= 4.0 * (nu + 1.0)
}

/// Σ_k (-x²/4)^k / (k! (ν+1)_k).
fn series_sum(nu: f64, x: f64) -> f64 {
    let y = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= y / (kf * (nu + kf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Λ_ν(z) = J_ν(z) / z^ν, smooth at z = 0 where it equals 1/(2^ν Γ(ν+1)).
pub fn bessel_j_over_power(nu: f64, z: f64) -> f64 {
    if use_series(nu, z) {
        (-(nu * 2f64.ln()) - ln_gamma(nu + 1.0)).exp() * series_sum(nu, z)
    } else {
        steed(nu, z) / z.powf(nu)
    }
}

fn steed(xnu: f64, x: f64) -> f64 {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-290;
    const MAXIT: usize = 100_000;

    let nl = ((xnu - x + 1.5).floor()).max(0.0) as usize;
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f = J'_ν / J_ν by modified Lentz.
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // Downward recurrence from ν to μ with an arbitrary starting scale.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J' + iY') / (J + iY) at μ.
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 1..MAXIT {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    rjl1 * (rjmu / rjl)
}

/// n-th positive zero j_{ν,n} of J_ν.
pub fn bessel_j_zero(nu: f64, n: usize) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(CpswfError::InvalidParameter(format!("Bessel order {nu} must be >= 0")));
    }
    if n == 0 {
        return Err(CpswfError::InvalidParameter("zero index starts at 1".into()));
    }
    Ok(bessel_j_zeros(nu, n)[n - 1])
}

/// First `count` positive zeros of J_ν, ascending.
///
/// The first zero exceeds ν and consecutive zeros are more than π/2 apart in
/// the oscillatory region, so a quarter-unit scan brackets each one.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Vec<f64> {
    let step = 0.25;
    let mut zeros = Vec::with_capacity(count);
    let mut lo = nu.max(step);
    let mut f_lo = bessel_j_unchecked(nu, lo);
    while zeros.len() < count {
        let hi = lo + step;
        let f_hi = bessel_j_unchecked(nu, hi);
        if f_lo == 0.0 {
            zeros.push(lo);
        } else if f_lo.signum() != f_hi.signum() && f_hi != 0.0 {
            zeros.push(bisect(nu, lo, hi, f_lo));
        }
        lo = hi;
        f_lo = f_hi;
    }
    zeros
}

fn bisect(nu: f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = bessel_j_unchecked(nu, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const XS: [f64; 9] = [0.1, 1.0, 5.0, 9.7, 15.0, 30.0, 61.3, 120.0, 200.0];

    #[rustfmt::skip]
    const TABLE: [(f64, [f64; 9]); 8] = [
        (0.0, [9.97501562066040015e-01, 7.65197686557966605e-01, -1.77596771314338292e-01, -2.21795482031722863e-01, -1.42244728267807725e-02, -8.63679835810402113e-02, -6.93511464657726034e-02, 7.18234158291561342e-02, -1.54374399305650910e-02]),
        (0.5, [2.51892940326000958e-01, 6.71396707141803106e-01, -3.42167984798161795e-01, -6.96210757126550228e-02, 1.33967688822439340e-01, -1.43929653370399896e-01, -1.01831096550351607e-01, 4.22897225396915016e-02, -4.92705238428544773e-02]),
        (1.0, [4.99375260362419984e-02, 4.40050585744933498e-01, -3.27579137591465230e-01, 1.16638647900213166e-01, 2.05104038613522749e-01, -1.18751062616622938e-01, -7.52366331535590932e-02, -1.18052114330018908e-02, -5.43045381823782231e-02]),
        (2.5, [1.68088719003341288e-04, 4.94968102284779402e-02, 2.40377201111317357e-01, 1.43651889607815247e-01, -1.00880349790011772e-01, 1.41202858799282127e-01, 1.01555623495877795e-01, -4.37634657501069502e-02, 4.88545292363585584e-02]),
        (7.0, [1.54961486762022798e-13, 1.50232581743680827e-06, 5.33764101558907161e-02, 2.62038449834735010e-01, 3.44636554189591618e-02, 1.45185189572328288e-01, 9.60973178328091288e-02, -2.71529231389929394e-03, 5.57626602131750734e-02]),
        (20.0, [3.91943772085862182e-45, 3.87350300852465759e-25, 2.77033005212894164e-11, 6.74498960685064850e-06, 7.36023407922348563e-03, 4.83101999340406450e-03, 5.90154185041543364e-02, 4.93021572861562351e-03, 3.74509387108600406e-02]),
        (45.5, [7.85418625511401868e-117, 2.47052638466700496e-71, 1.37976121841176101e-39, 1.18129873270392576e-26, 2.37136122297222639e-18, 2.38821015048012838e-06, 1.03610106209483882e-01, 7.55182155019660101e-02, 3.11752054995003136e-02]),
        (60.0, [1.04233569808657617e-160, 1.03811497656452135e-100, 8.16002403809351763e-59, 1.13850255354141609e-41, 1.51351446474766081e-30, 9.80755764312862471e-14, 1.46674598934010997e-01, -6.72590560989195646e-02, 3.41565000012719333e-02]),
    ];

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.0, 0.0).unwrap(), 0.0);
        assert!(bessel_j(0.0, -1.0).is_err());
        assert!(bessel_j(-0.5, 1.0).is_err());
    }

    #[test]
    fn half_order_closed_form() {
        for x in [1.0, 2.0, 5.0, 13.0, 77.7] {
            let want = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((bessel_j(0.5, x).unwrap() - want).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn frozen_high_precision_table() {
        for (nu, row) in TABLE {
            for (x, want) in XS.iter().zip(row) {
                let got = bessel_j(nu, *x).unwrap();
                assert!((got - want).abs() <= 1e-13, "nu={nu} x={x}: {got} vs {want}");
                if want.abs() > 1e-250 {
                    assert!((got - want).abs() <= 1e-11 * want.abs() + 1e-15, "relative nu={nu} x={x}");
                }
            }
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        for nu in [0.0, 0.5, 3.0, 14.5, 40.0] {
            let x = 8f64.max(2.0 * (nu + 1.0f64).sqrt());
            let s = ((nu * (x / 2.0).ln() - ln_gamma(nu + 1.0)).exp()) * series_sum(nu, x);
            let t = steed(nu, x);
            assert!((s - t).abs() < 1e-13, "nu={nu}: {s} vs {t}");
        }
    }

    #[test]
    fn lambda_limit_and_consistency() {
        for nu in [0.0, 1.0, 2.5, 7.0] {
            let at0 = bessel_j_over_power(nu, 0.0);
            let want = 1.0 / (2f64.powf(nu) * statrs::function::gamma::gamma(nu + 1.0));
            assert!((at0 - want).abs() < 1e-15 * want.max(1.0));
            for z in [0.3, 4.0, 12.0, 40.0] {
                let direct = bessel_j(nu, z).unwrap() / z.powf(nu);
                assert!((bessel_j_over_power(nu, z) - direct).abs() <= 1e-13 * direct.abs().max(1e-300) + 1e-300);
            }
        }
    }

    #[test]
    fn frozen_zeros() {
        let cases = [
            (0.0, 1, 2.40482555769577289e+00),
            (0.0, 5, 1.49309177084877867e+01),
            (1.0, 1, 3.83170597020751247e+00),
            (1.0, 3, 1.01734681350627216e+01),
            (2.5, 2, 9.09501133047635513e+00),
            (4.0, 1, 7.58834243450380441e+00),
            (4.0, 6, 2.40190195247711102e+01),
            (10.0, 3, 2.20469853646978002e+01),
            (30.5, 1, 3.66283785897134351e+01),
        ];
        for (nu, n, want) in cases {
            let got = bessel_j_zero(nu, n).unwrap();
            assert!((got - want).abs() < 1e-12, "nu={nu} n={n}: {got}");
        }
        assert!((bessel_j_zero(0.0, 1).unwrap() - 2.404825557695773).abs() < 1e-12);
        assert!((bessel_j_zero(1.0, 1).unwrap() - 3.8317059702075125).abs() < 1e-12);
        assert!(bessel_j_zero(1.0, 0).is_err());
    }

    #[test]
    fn zeros_are_roots_and_interlace() {
        for nu in [0.0, 1.0, 2.0, 3.5, 6.0, 12.0] {
            let z = bessel_j_zeros(nu, 8);
            let z1 = bessel_j_zeros(nu + 1.0, 8);
            for n in 0..8 {
                assert!(bessel_j(nu, z[n]).unwrap().abs() < 1e-11);
                assert!(z[n] < z1[n]);
                if n + 1 < 8 {
                    assert!(z1[n] < z[n + 1]);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn recurrence_residual(nu in 1.0f64..50.0, x in 0.05f64..200.0) {
            let lhs = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
            let rhs = 2.0 * nu / x * bessel_j(nu, x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
        }
    }
}
