//! Drives the CLI pipeline in-process and prints the CSV report.

use clap::Parser;
use riesz::cli::{run, Format, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::try_parse_from(["riesz", "qi", "check", "--values", "1,2,3"])?;
    let report = run(&config)?;
    print!("{}", String::from_utf8(report.render(Format::Csv))?);
    Ok(())
}
