fn main() {
    std::process::exit(kgprof::run(std::env::args_os()));
}
