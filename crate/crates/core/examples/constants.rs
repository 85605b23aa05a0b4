use hypercube_iso::certificates::reference_constants;

fn main() {
    let table = reference_constants();
    for c in &table.constants {
        let printed = c.printed.as_deref().unwrap_or("");
        println!("{:<12} {:<26} {:.12}  {printed:<8} {}", c.name, c.expression, c.value, c.matches_printed);
    }
    for c in &table.comparisons {
        println!("{} = {:.6} > {} = {:.6}: {}", c.lhs, c.lhs_value, c.rhs, c.rhs_value, c.holds);
    }
}
