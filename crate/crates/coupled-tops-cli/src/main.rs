use clap::Parser;

use coupled_tops_cli::args::Cli;
use coupled_tops_cli::exec;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; parse failures are
            // usage errors (exit 1, not clap's default 2, which this tool
            // reserves for numerical failures).
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    std::process::exit(exec::execute(cli));
}
