use clap::Parser;

fn main() {
    let cli = match fht_cli::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                fht_cli::error::EXIT_INPUT
            } else {
                0
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(fht_cli::run(cli));
}
