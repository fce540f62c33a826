//! Path states of eventually periodic points pair with disks like point masses.

use padic_coherent::lc_space::act;
use padic_coherent::limit::{pairing_delta, phi_delta, phi_indicator, regularized_limit};
use padic_coherent::padic::{PAdicPoint, Word};

fn main() -> padic_coherent::Result<()> {
    let p = 3;
    let x = PAdicPoint::parse(p, "2|0,1")?;
    println!("x = {x} = {}", x.to_rational());
    for j in ["2", "2,0,1", "2,1", "1"] {
        let word = Word::parse(p, j)?;
        let limit = regularized_limit(&pairing_delta(&x, &word)?);
        let acted = act(&phi_delta(&x), &phi_indicator(&word))?;
        println!("J = [{j}]: limit {limit}, δ_x(φ(X_J)) = {acted}");
    }
    Ok(())
}
