fn main() {
    std::process::exit(greedyml::cli::main_with_args(std::env::args_os()));
}
