fn main() {
    std::process::exit(ctseq::cli::run(std::env::args_os()));
}
