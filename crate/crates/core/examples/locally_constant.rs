//! Locally constant functions as disk expansions, evaluated and integrated.

use padic_coherent::lc_space::{indicator, l2_inner, normalized_indicator, LCFunction};
use padic_coherent::padic::{Disk, PAdicPoint, Word};
use padic_coherent::scalar::scalar;

fn main() -> padic_coherent::Result<()> {
    let p = 2;
    let d0 = Disk::new(Word::parse(p, "0")?);
    let d01 = Disk::new(Word::parse(p, "0,1")?);

    let f = indicator(&d0).scale(&scalar(3, 1)).add(&indicator(&d01))?;
    for x in ["0,1|0", "0,0|1", "1|"] {
        let point = PAdicPoint::parse(p, x)?;
        println!("f({x}) = {}", f.evaluate(&point)?);
    }

    let refined = f.refine(3)?;
    println!("f refined to level 3 has {} nonzero disks", refined.terms().count());
    println!("same function after refining: {}", f.same_function(&refined)?);

    let one = LCFunction::constant(p, scalar(1, 1));
    println!("∫ f = {}", l2_inner(&f, &one)?);
    println!("⟨φ(X_0), φ(X_01)⟩ = {}", l2_inner(&normalized_indicator(&d0), &normalized_indicator(&d01))?);
    Ok(())
}
