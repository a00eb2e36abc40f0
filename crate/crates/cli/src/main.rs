use std::io::IsTerminal;

fn main() {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let opts = gf2bell_cli::Output { color };
    let code = gf2bell_cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr(), opts);
    std::process::exit(code);
}
