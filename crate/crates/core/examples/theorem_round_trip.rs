//! Recover every node value of a cascade tree from regularized pairings,
//! then build a tree from arbitrary leaf data.

use num_traits::Zero;
use padic_coherent::lc_space::{act, indicator, CascadeTree, random_cascade};
use padic_coherent::limit::{phi_coherent, theorem_witness};
use padic_coherent::padic::{words_of_len, Disk};
use padic_coherent::scalar::scalar;

fn main() -> padic_coherent::Result<()> {
    let tree = random_cascade(3, 3, 5)?;
    let mut recovered = 0;
    for (word, psi) in tree.values() {
        if &theorem_witness(&tree, word)? == psi {
            recovered += 1;
        }
    }
    println!("recovered {recovered}/{} node values", tree.values().count());

    let leaves: Vec<_> = (1..=9).map(|k| scalar(k, 2)).collect();
    let built = CascadeTree::from_leaves(3, 2, leaves)?;
    let dist = phi_coherent(&built);
    println!("root = {}", built.root());
    for leaf in words_of_len(3, 2).into_iter().take(3) {
        println!("  Ψ on D({leaf}) = {}", act(&dist, &indicator(&Disk::new(leaf.clone())))?);
    }
    assert!(!built.root().is_zero());
    Ok(())
}
