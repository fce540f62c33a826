//! Creation and annihilation on the free Fock space over p letters.

use padic_coherent::fock::FockVector;
use padic_coherent::padic::Word;
use padic_coherent::scalar::scalar;

fn main() -> padic_coherent::Result<()> {
    let p = 3;
    let omega = FockVector::vacuum(p);
    let v = omega.create(1)?.create(2)?.scale(&scalar(1, 2)).add(&FockVector::basis(Word::parse(p, "0")?))?;
    println!("v:\n{}", v.dump());

    println!("A_2 v:\n{}", v.annihilate(2)?.dump());
    println!("A_1 A†_1 v == v: {}", v.create(1)?.annihilate(1)? == v);
    println!("A_0 A†_1 v == 0: {}", v.create(1)?.annihilate(0)?.is_zero());
    println!("A†_0 A_0 Ω == Ω: {}", omega.annihilate(0)?.create(0)? == omega);

    let w = FockVector::basis(Word::parse(p, "1,2,0")?);
    println!(
        "⟨A†_0 v, w⟩ = {}, ⟨v, A_0 w⟩ = {}",
        v.create(0)?.inner(&w)?,
        v.inner(&w.annihilate(0)?)?
    );
    Ok(())
}
