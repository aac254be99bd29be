fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(youngwall_cli::run(&argv));
}
