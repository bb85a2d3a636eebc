fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(distq::cli::run(&argv));
}
