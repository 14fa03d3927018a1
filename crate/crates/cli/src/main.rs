use clap::Parser;
use spanbip_cli::{dispatch, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let report = dispatch(&config);
    print!("{}", report.render(config.format));
    std::process::exit(report.code);
}
