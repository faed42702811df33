fn main() -> std::process::ExitCode {
    anum::cli::main()
}
