use std::sync::atomic::Ordering;

fn main() {
    let flag = sqfr_cli::cancel_flag();
    // a failed install only means interrupts kill the process outright
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed));
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = sqfr_cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
