//! Builds a sweep in code and writes the CSV to stdout.

use restricted_wiretap::sweep::{run_sweep, write_csv, Param, SweepSpec};

fn main() -> restricted_wiretap::Result<()> {
    let mut spec = SweepSpec::parse(
        "name=noise_scan\ntarget=dr,rr,er_ub\nkappa=0.2\nne=list:0,0.1,0.5\nloss_db=lin:1:10:10\n",
    )?;
    spec.pin(Param::Mu, f64::INFINITY);
    let result = run_sweep(&spec)?;
    write_csv(&result, std::io::stdout().lock(), false)
}
