//! Runs every figure preset and reports row counts, failed rows and timing.
//!
//!     cargo run --release --example figure_presets [out_dir]

use std::fs::File;
use std::time::Instant;

use restricted_wiretap::sweep::{gnuplot_script, presets, run_sweep, write_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1);
    if let Some(d) = &out_dir {
        std::fs::create_dir_all(d)?;
    }
    println!("{:<8} {:>6} {:>7} {:>9}", "preset", "rows", "errors", "seconds");
    for spec in presets() {
        let t = Instant::now();
        let result = run_sweep(&spec)?;
        let secs = t.elapsed().as_secs_f64();
        println!(
            "{:<8} {:>6} {:>7} {:>9.3}",
            spec.name,
            result.rows.len(),
            result.error_rows(),
            secs
        );
        for row in result.rows.iter().filter(|r| !r.error.is_empty()).take(3) {
            println!("    {}", row.error);
        }
        if let Some(d) = &out_dir {
            let csv = format!("{}.csv", spec.name);
            write_csv(&result, File::create(format!("{d}/{csv}"))?, false)?;
            std::fs::write(format!("{d}/{}.gp", spec.name), gnuplot_script(&result, &csv))?;
        }
    }
    Ok(())
}
