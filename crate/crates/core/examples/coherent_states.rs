//! Coherent states built from cascade trees, and the eigenvector residual of
//! `A = Σ A_i` before and after breaking the cascade at one node.

use padic_coherent::coherent::{coherent_from_cascade, eigen_residual, residual_by_degree};
use padic_coherent::lc_space::random_cascade;
use padic_coherent::padic::Word;
use padic_coherent::scalar::{rat, scalar};

fn main() -> padic_coherent::Result<()> {
    let (p, n) = (2, 4);
    let t = rat(1, 2);
    let tree = random_cascade(p, n, 42)?;
    let state = coherent_from_cascade(&tree, &t, n)?;
    println!("Ψ_root = {}, residual = {}", tree.root(), eigen_residual(&state));

    let node = Word::parse(p, "1,0")?;
    let eps = scalar(1, 10);
    let broken = tree.with_value_unchecked(&node, tree.value(&node)? + &eps)?;
    println!("violation at \"1\": {}", broken.violation_at(&Word::parse(p, "1")?)?);

    let state = coherent_from_cascade(&broken, &t, n)?;
    println!("residual = {}", eigen_residual(&state));
    for (d, r) in residual_by_degree(&state).iter().enumerate() {
        println!("  degree {d}: {r}");
    }
    Ok(())
}
