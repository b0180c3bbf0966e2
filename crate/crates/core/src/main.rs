fn main() {
    std::process::exit(nncbound::cli::run(std::env::args_os()));
}
