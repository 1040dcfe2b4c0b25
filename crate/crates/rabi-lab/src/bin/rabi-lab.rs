fn main() {
    std::process::exit(rabi_lab::cli::main());
}
