use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_tol = std::env::var(formleb_cli::app::TOL_ENV).ok();
    let exec = formleb_cli::run(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        env_tol.as_deref(),
    );
    if !exec.stdout.is_empty() {
        let mut stdout = std::io::stdout().lock();
        if stdout
            .write_all(&exec.stdout)
            .and_then(|_| stdout.flush())
            .is_err()
        {
            return ExitCode::from(1);
        }
    }
    if !exec.stderr.is_empty() {
        eprintln!("{}", exec.stderr.trim_end());
    }
    ExitCode::from(exec.exit_code as u8)
}
