fn main() -> std::process::ExitCode {
    dirac_spectra::cli::main()
}
