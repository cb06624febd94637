fn main() {
    std::process::exit(mobius_nu::cli::run(std::env::args_os()));
}
