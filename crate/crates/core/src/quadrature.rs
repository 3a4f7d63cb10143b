//! Globally adaptive 21-point Gauss-Kronrod quadrature on a finite interval.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below `max(rel_tol·|I|, abs_floor·∫|f|)` or the subdivision
//! budget runs out. Per-interval error estimates follow the QUADPACK `qk21`
//! heuristic.
#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;

/// Kronrod abscissae on [0, 1]; odd indices are the embedded 10-point Gauss
/// nodes. The rule is symmetric about the centre (index 10).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_958_109_831,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], …, XGK[9]`.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_tol: f64,
    /// Absolute floor, as a fraction of `∫|f|` over the whole interval.
    pub abs_floor: f64,
    pub max_subdivisions: usize,
}

/// Outcome of an adaptive integration. `converged` is false when the
/// subdivision budget ran out first; the estimate is still the best one
/// available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// `∫|f|`, the magnitude scale of the integrand.
    pub abs_value: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

/// One application of the 21-point Kronrod rule with its embedded Gauss
/// rule. Returns `(kronrod, error, ∫|f|)`.
fn qk21<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> (f64, f64, f64) {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_k = WGK[10] * fc.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let result = kronrod * half;
    let abs_value = abs_k * half.abs();
    let asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * libm::pow(200.0 * err / asc, 1.5).min(1.0);
    }
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_value);
    }
    (result, err, abs_value)
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: &Tolerance) -> Integral {
    let mut segments: Vec<Segment> = Vec::with_capacity(tol.max_subdivisions + 1);
    let (value, error, abs_value) = qk21(&mut f, lo, hi);
    segments.push(Segment { lo, hi, value, error, abs_value });
    let mut evaluations = 21;
    let mut subdivisions = 0;

    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let err: f64 = segments.iter().map(|s| s.error).sum();
        let abs_total: f64 = segments.iter().map(|s| s.abs_value).sum();
        let target = (tol.rel_tol * total.abs()).max(tol.abs_floor * abs_total);
        let converged = err <= target;
        if converged || subdivisions >= tol.max_subdivisions || !err.is_finite() {
            return Integral {
                value: total,
                error: err,
                abs_value: abs_total,
                evaluations,
                subdivisions,
                converged: converged && err.is_finite(),
            };
        }

        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, s)| if s.error > best.1 { (i, s.error) } else { best });
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        if !(mid > seg.lo && mid < seg.hi) {
            // Interval exhausted at machine precision.
            segments.push(seg);
            let total: f64 = segments.iter().map(|s| s.value).sum();
            return Integral {
                value: total,
                error: err,
                abs_value: abs_total,
                evaluations,
                subdivisions,
                converged: false,
            };
        }
        for (lo, hi) in [(seg.lo, mid), (mid, seg.hi)] {
            let (value, error, abs_value) = qk21(&mut f, lo, hi);
            segments.push(Segment { lo, hi, value, error, abs_value });
        }
        evaluations += 42;
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance { rel_tol: 1e-12, abs_floor: 1e-16, max_subdivisions: 200 };

    #[test]
    fn weights_sum_to_interval_length() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn embedded_gauss_rule_exact_to_degree_19() {
        for n in (0..=19).step_by(2) {
            let g: f64 = (0..5).map(|i| 2.0 * WG[i] * libm::pow(XGK[2 * i + 1], n as f64)).sum();
            let exact = 2.0 / (n as f64 + 1.0);
            assert!((g - exact).abs() < 1e-14, "degree {n}: {g} vs {exact}");
        }
    }

    #[test]
    fn kronrod_rule_exact_to_degree_31() {
        for n in [0u32, 4, 10, 20, 30] {
            let (v, _, _) = qk21(&mut |x: f64| libm::pow(x, n as f64), -1.0, 1.0);
            let exact = 2.0 / (n as f64 + 1.0);
            assert!((v - exact).abs() < 1e-14, "degree {n}: {v} vs {exact}");
        }
    }

    #[test]
    fn exponential_moments() {
        // ∫₀^∞ tⁿ e^{−t} dt = n!
        let mut fact = 1.0;
        for n in 0..=8 {
            if n > 0 {
                fact *= n as f64;
            }
            let r = integrate(|t| libm::pow(t, n as f64) * libm::exp(-t), 0.0, 80.0, &TOL);
            assert!(r.converged);
            assert!((r.value - fact).abs() <= 1e-12 * fact, "n={n}: {}", r.value);
        }
    }

    #[test]
    fn oscillatory_integrand() {
        // The exact value is zero, so only the absolute floor can be met.
        let tol = Tolerance { abs_floor: 1e-12, ..TOL };
        let r = integrate(|x| libm::sin(20.0 * x), 0.0, core::f64::consts::PI, &tol);
        assert!(r.converged);
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn subdivision_budget_reported() {
        let tol = Tolerance { rel_tol: 1e-15, abs_floor: 0.0, max_subdivisions: 3 };
        let r = integrate(libm::sqrt, 0.0, 1.0, &tol);
        assert!(!r.converged);
        assert_eq!(r.subdivisions, 3);
        assert_eq!(r.evaluations, 21 + 3 * 42);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-4);
    }
}
