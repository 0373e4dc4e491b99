fn main() {
    std::process::exit(spectral_kcluster_cli::run(std::env::args_os()));
}
