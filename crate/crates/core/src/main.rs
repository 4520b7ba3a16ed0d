use std::io::Write;
use std::process::ExitCode;

use qsolver::cli::{batch_command, CliConfig, Context, EXIT_INTERNAL, EXIT_USAGE};

fn main() -> ExitCode {
    let ctx = match CliConfig::from_env().and_then(Context::shipped) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_user_error() { EXIT_USAGE } else { EXIT_INTERNAL };
            return ExitCode::from(code as u8);
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = batch_command(std::env::args_os(), &ctx, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
