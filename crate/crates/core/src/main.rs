fn main() {
    std::process::exit(voidext::cli::main_from_env());
}
