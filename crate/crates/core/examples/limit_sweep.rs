//! Convergence of (1 − t)·(X_I, X_J) as t → 1⁻, next to the exact error bound.

use padic_coherent::limit::{pairing_indicators, sweep};
use padic_coherent::padic::Word;
use num_traits::One;
use padic_coherent::scalar::{rational_to_f64, Rational};

fn main() -> padic_coherent::Result<()> {
    let p = 2;
    let v = pairing_indicators(&Word::parse(p, "0")?, &Word::parse(p, "0,1,1")?)?;
    let c = v.error_constant();
    println!("C = {c}");
    println!("{:>3} {:>12} {:>14} {:>14}", "k", "1 − t", "error", "C·(1 − t)");
    for row in sweep(&v, 2, 12, 40) {
        let gap = rational_to_f64(&(Rational::one() - &row.t));
        println!(
            "{:>3} {:>12.3e} {:>14.6e} {:>14.6e}",
            row.k,
            gap,
            rational_to_f64(&row.abs_error),
            rational_to_f64(&c) * gap
        );
    }
    Ok(())
}
