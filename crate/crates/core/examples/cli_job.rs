//! Run a job from a definition file the way the command line does.

use std::path::PathBuf;

use relext::cli::{emit, run, Format, JobSpec, Kind};

fn main() -> relext::Result<()> {
    let input = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sl2.json");
    let table = run(&JobSpec::new(Kind::EquivariantExt, input, 5))?;
    print!("{}", emit(&table, Format::Table));
    Ok(())
}
