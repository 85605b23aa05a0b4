//! Exact Q(sqrt 2) factorizations and the sign facts behind the cubic bound.

use hypercube_iso::certificates::proof_polynomials_report;

fn main() {
    let report = proof_polynomials_report();
    for c in &report.checks {
        println!("[{}] {:<34} {}", if c.passed { "ok" } else { "!!" }, c.name, c.detail);
        for (k, v) in &c.values {
            println!("      {k} = {v:.10}");
        }
    }
    println!("all passed: {}", report.passed);
}
