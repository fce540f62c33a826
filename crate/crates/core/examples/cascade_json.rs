//! Save a cascade tree as JSON, reload it, and watch a corrupted copy fail.

use padic_coherent::lc_space::{random_complex_cascade, CascadeTree};
use padic_coherent::Error;

fn main() -> padic_coherent::Result<()> {
    let tree = random_complex_cascade(2, 2, 9)?;
    let text = tree.to_json();
    println!("{text}");
    assert_eq!(CascadeTree::from_json(&text)?, tree);

    let mut json: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    json["values"][3]["re_num"] = serde_json::json!(1000);
    match CascadeTree::from_json(&json.to_string()) {
        Err(e @ Error::CascadeViolation { .. }) => println!("rejected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
