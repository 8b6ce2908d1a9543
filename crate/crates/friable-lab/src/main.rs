fn main() {
    // FRIABLE_LAB_THREADS caps the rayon pool used by sweeps and suites.
    if let Ok(v) = std::env::var("FRIABLE_LAB_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
    std::process::exit(friable_lab::cli::run());
}
