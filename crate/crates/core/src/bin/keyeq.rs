use clap::error::ErrorKind;
use clap::Parser;

use keyeq::cli::{run, RunConfig};

fn main() {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cfg) {
        Ok(exit) => std::process::exit(exit.code()),
        Err(e) => {
            eprintln!("keyeq: {e}");
            std::process::exit(1);
        }
    }
}
