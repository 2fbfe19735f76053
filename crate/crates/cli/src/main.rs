//! Command-line interface for unoriented grid homology computations.

mod args;
mod commands;
mod report;

use commands::CommandError;

const USAGE: &str = "\
usage: ugrid <command> [arguments] [flags]

commands:
  hom <input>        homology decomposition, upsilon data, sigma, gamma4
  verify [scopes]    run verification suites
  torus <p> <q>      closed-form upsilon of a torus knot
  band <input>       cobordism maps at --col (crossing change by default)

inputs:  builtin:<name>, a grid file path, or dump:<path> (hom only)
flags:   --json --dump <file> --sigma auto|external:<int> --threads <k>
         --huge --seed <s> --max-index <n> --col <c>
         --unorientable --oriented --crossing (band)
         --quick --paper --cobordism <input> --random <count> (verify)

exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource limit
";

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let Some((command, rest)) = argv.split_first() else {
        eprint!("{USAGE}");
        std::process::exit(2);
    };
    let opts = match args::parse(rest) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    let result = match command.as_str() {
        "hom" => commands::cmd_hom(&opts),
        "verify" => commands::cmd_verify(&opts),
        "torus" => commands::cmd_torus(&opts),
        "band" => commands::cmd_band(&opts),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            return;
        }
        other => {
            eprintln!("error: unknown command `{other}`");
            eprint!("{USAGE}");
            std::process::exit(2);
        }
    };
    match result {
        Ok(report) => {
            if opts.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            if !report.all_passed() {
                std::process::exit(1);
            }
        }
        Err(CommandError::Input(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CommandError::Resource(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    }
}
