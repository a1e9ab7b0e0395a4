fn main() -> std::process::ExitCode {
    pi_lowerbound::cli::main()
}
