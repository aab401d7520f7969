fn main() {
    std::process::exit(delaybif::cli::placeholder());
}
