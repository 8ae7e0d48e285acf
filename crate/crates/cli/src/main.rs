fn main() {
    std::process::exit(regwitness::cli(std::env::args_os()));
}
