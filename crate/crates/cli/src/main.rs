fn main() {
    let out = std::io::stdout();
    let err = std::io::stderr();
    let code = bnchain_cli::run(std::env::args_os(), &mut out.lock(), &mut err.lock());
    std::process::exit(code);
}
