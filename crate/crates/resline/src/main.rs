fn main() {
    std::process::exit(resline::cli::main_entry());
}
