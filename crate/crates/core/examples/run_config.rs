//! Loads a JSON run config, runs it and prints the manifest. Pass a config
//! path, or run without arguments to use the bundled SGD config.

use std::path::PathBuf;

use arc_bounds::cli::{run, RunConfig};

fn main() -> arc_bounds::Result<()> {
    let path = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/sgd_check.json")
    });
    let cfg = RunConfig::from_path(&path)?;
    let out = run(&cfg)?;
    print!("{}", String::from_utf8_lossy(&out.bytes));
    println!("{}", serde_json::to_string_pretty(&out.manifest)?);
    Ok(())
}
