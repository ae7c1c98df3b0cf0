use std::process::ExitCode;

fn main() -> ExitCode {
    let out = toric_gale_cli::run_args(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stdout.ends_with('\n') {
        println!();
    }
    ExitCode::from(out.code as u8)
}
