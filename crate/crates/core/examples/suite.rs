//! Runs the built-in self-check suite and prints its JSON report.

fn main() -> cvlab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let report = cvlab::suite::run(&name, 20261015)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
