fn main() {
    std::process::exit(shifted_primes::cli::dispatch(std::env::args_os()));
}
