fn main() {
    std::process::exit(ring_codebook::cli::main_entry());
}
