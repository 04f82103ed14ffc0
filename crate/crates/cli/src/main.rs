fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = match classprod_cli::parse_args(&argv) {
        Ok(plan) => classprod_cli::execute_plan(&plan),
        Err(e) => {
            // clap renders help and version requests as "errors" with exit code 0.
            if e.code == 0 {
                print!("{e}");
            } else {
                eprint!("{e}");
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            e.code
        }
    };
    std::process::exit(code);
}
