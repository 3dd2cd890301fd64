fn main() {
    let code = relsteen::cli::run(std::env::args_os());
    std::process::exit(code);
}
