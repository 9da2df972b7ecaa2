fn main() -> std::process::ExitCode {
    hexpoint_service::cli::main()
}
