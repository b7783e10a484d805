fn main() {
    std::process::exit(agent_eval::cli::main_with_args(std::env::args_os()));
}
