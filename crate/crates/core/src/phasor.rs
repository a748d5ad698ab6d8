//! Unit phasors `exp(-i t l)` for large `t * l`.
//!
//! Every Dirichlet sum in the crate spends its time evaluating
//! `n^{-it} = exp(-i t log n)` with `t` up to `1e10` and `log n` up to ~25,
//! so the phase is far outside the range where libm's fast path applies.
//! The phase is formed as an unevaluated sum `hi + lo` (Dekker product),
//! reduced by a four-part Cody-Waite split of `pi/2`, and fed to the
//! fdlibm sine/cosine kernels on `[-pi/4, pi/4]`.

use num_complex::Complex64;

// pi/2 split into 18-bit pieces (exact products for quadrant counts < 2^35).
const PIO2_1: f64 = 1.5707931518554688;
const PIO2_2: f64 = 3.1749368645250797e-06;
const PIO2_3: f64 = 2.5633384304057927e-12;
const PIO2_4: f64 = 5.721188726109832e-18;
const INV_PIO2: f64 = std::f64::consts::FRAC_2_PI;

/// Largest `|t * l|` the reduction handles exactly.
pub const MAX_PHASE: f64 = 5.0e10;

const S1: f64 = -1.666_666_666_666_663_2e-1;
const S2: f64 = 8.333_333_333_322_49e-3;
const S3: f64 = -1.984_126_982_985_795e-4;
const S4: f64 = 2.755_731_370_707_006_8e-6;
const S5: f64 = -2.505_076_025_340_686_3e-8;
const S6: f64 = 1.589_690_995_211_55e-10;

const C1: f64 = 4.166_666_666_666_66e-2;
const C2: f64 = -1.388_888_888_887_411e-3;
const C3: f64 = 2.480_158_728_947_673e-5;
const C4: f64 = -2.755_731_435_139_066_3e-7;
const C5: f64 = 2.087_572_321_298_175e-9;
const C6: f64 = -1.135_964_755_778_819_5e-11;

#[inline(always)]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Exact product `a * b = hi + lo` without relying on a hardware FMA.
#[inline(always)]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

#[inline(always)]
fn kernel_sin(x: f64, y: f64) -> f64 {
    let z = x * x;
    let v = z * x;
    let r = S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)));
    x - ((z * (0.5 * y - v * r) - y) - v * S1)
}

#[inline(always)]
fn kernel_cos(x: f64, y: f64) -> f64 {
    let z = x * x;
    let r = z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
    let hz = 0.5 * z;
    let w = 1.0 - hz;
    w + (((1.0 - w) - hz) + (z * r - x * y))
}

/// `(sin theta, cos theta)` where `theta = hi + lo` with `|lo| <= ulp(hi)`.
#[inline(always)]
pub fn sin_cos_split(hi: f64, lo: f64) -> (f64, f64) {
    let n = (hi * INV_PIO2).round();
    let r = hi - n * PIO2_1;
    let r = r - n * PIO2_2;
    let r = r - n * PIO2_3;
    let r = r - n * PIO2_4;
    let x = r + lo;
    let y = (r - x) + lo;
    let s = kernel_sin(x, y);
    let c = kernel_cos(x, y);
    match (n as i64) & 3 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// `exp(-i t l)`, the Dirichlet-series phasor of `n^{-it}` with `l = log n`.
#[inline(always)]
pub fn unit_phasor(t: f64, l: f64) -> Complex64 {
    debug_assert!((t * l).abs() <= MAX_PHASE, "phase {} out of range", t * l);
    let (hi, lo) = two_prod(t, l);
    let (s, c) = sin_cos_split(hi, lo);
    Complex64::new(c, -s)
}
