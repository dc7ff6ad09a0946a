fn main() {
    std::process::exit(opadapt_cli::cli::main_entry());
}
