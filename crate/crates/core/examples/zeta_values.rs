//! Euler-Maclaurin values of zeta and the horizontally continued logarithm.

use zeta_brownian::zeta::{log_zeta_horizontal, zeta_em, zeta_line, zeta_log_deriv, HorizontalLog, DEFAULT_STEP};

fn main() -> zeta_brownian::Result<()> {
    println!("zeta(2)   = {}", zeta_em(2.0, 0.0, 1e-13)?);
    println!("zeta(0)   = {}", zeta_em(0.0, 0.0, 1e-13)?);
    println!("zeta(1/2 + 14.1347i) = {:.3e}", zeta_em(0.5, 14.134_725_141_734_695, 1e-12)?.norm());
    println!("zeta'/zeta(2) = {}", zeta_log_deriv(2.0, 0.0)?);

    // log zeta along a horizontal segment, continued from sigma = 3/2
    let t = 1e6 + 0.25;
    let line = zeta_line(t, 0.5 + 1.0 / 1e6f64.ln(), 1.5)?;
    let mut walk = HorizontalLog::new(&line, DEFAULT_STEP)?;
    println!("\nlog zeta(sigma + {t} i):");
    for sigma in [1.5, 1.2, 1.0, 0.8, 0.6, 0.5 + 1.0 / 1e6f64.ln()] {
        let l = walk.advance_to(sigma)?;
        println!("  sigma = {sigma:.4}: {:+.6} {:+.6}i", l.re, l.im);
    }

    let a = log_zeta_horizontal(t, 0.6, DEFAULT_STEP)?;
    let b = log_zeta_horizontal(t, 0.6, DEFAULT_STEP / 2.0)?;
    println!("step halving changes log zeta(0.6 + it) by {:.2e}", (a - b).norm());
    Ok(())
}
