fn main() {
    std::process::exit(trinomia::cli::run(std::env::args_os()));
}
