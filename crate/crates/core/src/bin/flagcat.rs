fn main() {
    std::process::exit(flagcat::cli::run(std::env::args_os()));
}
