use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = shuffle_lattice::cli::main_with_args(std::env::args_os(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
