fn main() {
    std::process::exit(pstneps::commands::main_with(std::env::args_os()));
}
