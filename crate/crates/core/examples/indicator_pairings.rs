//! Pairings of indicator states as exact rational functions of t, their
//! regularized limits, and the matching L₂ products.

use padic_coherent::lc_space::l2_inner;
use padic_coherent::limit::{pairing_indicators, phi_indicator, regularized_limit};
use padic_coherent::padic::Word;
use padic_coherent::scalar::format_scalar;

fn main() -> padic_coherent::Result<()> {
    let p = 2;
    for (i, j) in [("0", "0,1"), ("", "1,1,0"), ("0,1", "0,0"), ("1", "1")] {
        let (a, b) = (Word::parse(p, i)?, Word::parse(p, j)?);
        let v = pairing_indicators(&a, &b)?;
        let poly: Vec<_> = v.poly().iter().map(format_scalar).collect();
        println!(
            "(X_[{i}], X_[{j}]): {:?}, poly {poly:?} + {}·t^{}/(1−t); limit {} ; L₂ {}",
            v.case(),
            format_scalar(v.tail_coeff()),
            v.tail_start(),
            format_scalar(&regularized_limit(&v)),
            format_scalar(&l2_inner(&phi_indicator(&a), &phi_indicator(&b))?),
        );
    }
    Ok(())
}
