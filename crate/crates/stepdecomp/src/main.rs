fn main() {
    std::process::exit(stepdecomp::cli::run());
}
