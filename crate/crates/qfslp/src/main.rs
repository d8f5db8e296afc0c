//! Thin binary wrapper over the library's command-line surface.

fn main() {
    std::process::exit(qfslp::cli::run(std::env::args_os()));
}
