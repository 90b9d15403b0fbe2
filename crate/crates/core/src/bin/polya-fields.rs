fn main() {
    std::process::exit(polya_fields::cli::run(std::env::args_os()));
}
