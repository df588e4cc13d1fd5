fn main() {
    std::process::exit(dyckshift::cli::main(std::env::args_os()));
}
