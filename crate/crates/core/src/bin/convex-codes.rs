use std::io;

fn main() {
    let code = convex_codes::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr(), &mut io::stdin());
    std::process::exit(code);
}
