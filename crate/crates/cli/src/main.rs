fn main() {
    std::process::exit(ttk_cli::run(std::env::args()));
}
