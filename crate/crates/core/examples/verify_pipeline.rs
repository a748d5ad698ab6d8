//! The `verify` pipeline driven from code: a TOML config, two experiments,
//! JSON reports and SVG plots in a temporary directory.

use zeta_brownian::cli::{cmd_verify, Experiment, RunConfig};

fn main() -> zeta_brownian::Result<()> {
    let out = std::env::temp_dir().join("zeta-brownian-verify");
    let toml = format!("T = 1e6\nn_samples = 300\nseed = 11\noutput_dir = {:?}\n", out.display().to_string());
    let config = RunConfig::from_toml_str(&toml)?;
    let (reports, manifest) = cmd_verify(&config, &[Experiment::Clt, Experiment::Mv], true)?;
    for r in &reports {
        println!("{}: {}", r.experiment, if r.pass { "pass" } else { "fail" });
        for c in &r.thresholds {
            println!("  {:<32} {:>12.6}  pass = {}", c.name, c.observed, c.pass);
        }
    }
    for e in &manifest.outputs {
        for f in &e.files {
            println!("wrote {}", f.display());
        }
    }
    Ok(())
}
