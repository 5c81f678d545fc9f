use std::io::Write;

fn main() {
    let (stdout, stderr, code) = sl3_cli::app::run(std::env::args_os());
    if !stdout.is_empty() {
        println!("{}", stdout.trim_end());
    }
    if !stderr.is_empty() {
        eprintln!("{}", stderr.trim_end());
    }
    std::io::stdout().flush().ok();
    std::process::exit(code);
}
