use clap::Parser;

use gsg::cli::Cli;

fn main() {
    let cli = Cli::parse();
    match gsg::cli::run(&cli) {
        Ok(manifest) => {
            for out in &manifest.outputs {
                println!("wrote {}", cli.out.join(&out.path).display());
            }
            println!("wrote {}", cli.out.join("manifest.json").display());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
