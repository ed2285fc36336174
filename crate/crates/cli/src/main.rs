use clap::Parser;
use matpatch_cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let (text, code) = render(cli.format, &outcome);
    if code == 2 {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    std::process::exit(code);
}
