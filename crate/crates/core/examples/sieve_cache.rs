//! Write a Möbius table to the binary cache and read it back.

use mobius_nu::arith::{load_cache, save_cache};
use mobius_nu::mobius_sieve;

fn main() -> mobius_nu::Result<()> {
    let table = mobius_sieve(1_000_000)?;
    let dir = std::env::temp_dir().join("mobius-nu-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("mu-1e6.bin");

    save_cache(&table, &path)?;
    let bytes = std::fs::metadata(&path)?.len();
    let back = load_cache(&path)?;
    assert_eq!(back, table);
    println!("{} : {bytes} bytes, limit {}", path.display(), back.limit());
    Ok(())
}
