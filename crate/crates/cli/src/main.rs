fn main() {
    std::process::exit(dpplab::run(std::env::args_os().collect()));
}
