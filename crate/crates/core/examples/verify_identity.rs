//! Randomized falsification of the valuation identity, including a deliberately broken kernel.

use cvlab::scalar::point;
use cvlab::suite::builtin_valuations;
use cvlab::valuation::{dualize_valuation, make_broken_max, verify_valuation_identity};

fn main() -> cvlab::Result<()> {
    for (name, z) in builtin_valuations(1)? {
        let r = verify_valuation_identity(&z, 20, 11)?;
        println!("{name}: {}/{} trials checked, passed = {}", r.checked, r.trials, r.passed());
    }
    let (_, z) = builtin_valuations(1)?.remove(0);
    let dz = dualize_valuation(&z)?;
    let r = verify_valuation_identity(&dz, 10, 11)?;
    println!("dual of the first one: passed = {}", r.passed());

    let broken = make_broken_max(vec![point(&[-1]), point(&[1])])?;
    let r = verify_valuation_identity(&broken, 40, 3)?;
    println!("broken_max: {} violations", r.violations.len());
    if let Some(v) = r.violations.first() {
        println!("  first reproducer: f = {}  h = {}", v.f, v.h);
    }
    Ok(())
}
