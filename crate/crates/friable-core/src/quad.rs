//! Adaptive Gauss-Kronrod quadrature along a straight segment in the plane.
//!
//! All integrands here are entire, so the straight path `0 -> z` is as good
//! as any contour and the 15-point rule converges fast; panels are split
//! worst-first on the embedded 7-point error estimate.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One GK15 application to `g` on `[a, b]`; returns (value, error estimate).
fn gk15<F: Fn(f64) -> Complex64>(g: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = g(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let pair = g(center - dx) + g(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    ((kronrod * half), ((kronrod - gauss) * half).norm())
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

const MAX_PANELS: usize = 4096;

/// `int_0^z f(v) dv` along the straight segment, to relative tolerance
/// `rel_tol` (with a tiny absolute floor for results near zero).
pub(crate) fn integrate_zero_to<F>(f: F, z: Complex64, rel_tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // Parameterize v = t z, t in [0, 1].
    let g = |t: f64| f(z * t) * z;
    // Seed panels at roughly one per 4 units of arc so oscillation from
    // e^{i Im v} is resolved before refinement starts.
    let seeds = (crate::math::ceil(z.norm() / 4.0) as usize).clamp(1, 64);
    let mut panels: Vec<Panel> = Vec::with_capacity(seeds);
    for i in 0..seeds {
        let a = i as f64 / seeds as f64;
        let b = (i + 1) as f64 / seeds as f64;
        let (value, err) = gk15(&g, a, b);
        panels.push(Panel { a, b, value, err });
    }
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= rel_tol * total.norm() + 1e-300 {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::BudgetExceeded {
                what: "quadrature refinement",
                limit: MAX_PANELS as u64,
                requested: (panels.len() + 1) as u64,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        let (v1, e1) = gk15(&g, a, mid);
        let (v2, e2) = gk15(&g, mid, b);
        panels[worst] = Panel {
            a,
            b: mid,
            value: v1,
            err: e1,
        };
        panels.push(Panel {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // int_0^2 3v^2 dv = 8
        let r = integrate_zero_to(|v| 3.0 * v * v, Complex64::new(2.0, 0.0), 1e-13).unwrap();
        assert!((r - Complex64::new(8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn exponential_along_complex_segment() {
        // int_0^z e^v dv = e^z - 1, z well off the real axis
        let z = Complex64::new(2.0, 30.0);
        let r = integrate_zero_to(|v| v.exp(), z, 1e-13).unwrap();
        let expect = z.exp() - Complex64::new(1.0, 0.0);
        assert!((r - expect).norm() < 1e-11 * expect.norm());
    }

    #[test]
    fn oscillatory_path_converges() {
        // int_0^{i*150} e^v dv = e^{150i} - 1: ~24 full oscillations
        let z = Complex64::new(0.0, 150.0);
        let r = integrate_zero_to(|v| v.exp(), z, 1e-12).unwrap();
        let expect = z.exp() - Complex64::new(1.0, 0.0);
        assert!((r - expect).norm() < 1e-10);
    }
}
