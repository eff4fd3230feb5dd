use clap::Parser;
use greenchannel::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    print!("{}", outcome.report);
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    for f in &outcome.files {
        eprintln!("wrote {}", f.display());
    }
    std::process::exit(outcome.code as i32);
}
