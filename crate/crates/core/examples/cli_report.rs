//! Drive the command-line surface in-process.

use floer_workbench::cli::run;

fn main() {
    for args in [
        vec!["connect-sum", "--a", "Pplus", "--b", "Pplus", "--homology"],
        vec!["--json", "extremal", "--class", "w0"],
    ] {
        let out = run(std::iter::once("floer-workbench").chain(args));
        print!("{}", out.stdout);
    }
}
