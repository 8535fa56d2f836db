fn main() {
    std::process::exit(congruence_cli::run(std::env::args_os()));
}
