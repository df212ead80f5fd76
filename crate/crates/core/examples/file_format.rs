//! Parse a document, report errors with positions, serialize back.

use floer_workbench::fixtures::{parse, serialize};

const DOC: &str = "\
# P+ with u(rho0) = rho4
[kind]
homology_sphere
[generators]
rho0 0
rho4 4
[differential]
[u]
rho4 rho0 2
rho0 rho4 1
[delta]
[delta_prime]
rho4 1
";

fn main() {
    let d = parse(DOC).expect("valid document");
    print!("{}", serialize(&d));
    for bad in [
        "[kind]\nadmissible\n[generators]\na 1\n[u]\na a 0.5\n",
        "[kind]\nadmissible\n[generators]\na 1\nb 1\n[differential]\na b 1\n",
    ] {
        println!("{}", parse(bad).unwrap_err());
    }
}
