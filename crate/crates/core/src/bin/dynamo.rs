fn main() -> std::process::ExitCode {
    dynamo_core::cli::main()
}
