use std::process::ExitCode;

fn main() -> ExitCode {
    let cfg = match qfischer_cli::parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = qfischer_cli::run(&cfg);
    print!("{}", out.report);
    if let Some(e) = out.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(out.code as u8)
}
