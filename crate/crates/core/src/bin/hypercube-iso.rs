fn main() {
    let code = hypercube_iso::runner::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
