//! Disks in Z_p, their Haar measure and the p-adic norm.

use padic_coherent::padic::{disk_relation, padic_norm, Disk, PAdicPoint, Word};
use padic_coherent::scalar::rat;

fn main() -> padic_coherent::Result<()> {
    let p = 3;
    let a = Disk::new(Word::parse(p, "1")?);
    let b = Disk::new(Word::parse(p, "1,2")?);
    let c = Disk::new(Word::parse(p, "2,0")?);
    println!("μ(D(1)) = {}, μ(D(1,2)) = {}", a.measure(), b.measure());
    println!("D(1) vs D(1,2): {:?}", disk_relation(&a, &b)?);
    println!("D(1,2) vs D(2,0): {:?}", disk_relation(&b, &c)?);

    // 1,2 read little-endian is 1 + 2·3 = 7, and 7 + 9k lands in D(1,2).
    let x = PAdicPoint::parse(p, "1,2,1|0")?;
    println!("x = {x} = {} lies in D(1,2): {}", x.to_rational(), b.contains_point(&x));

    for (num, den) in [(12, 1), (1, 9), (5, 6)] {
        println!("‖{num}/{den}‖_{p} = {}", padic_norm(&rat(num, den), p)?);
    }
    Ok(())
}
