//! Smallest witnesses of a sparse product, queried one entry at a time.

use sparse_monge::reference::{minplus_dense, random_monge_condensed, GeneratorSpec};
use sparse_monge::multiply_with_witness;

fn main() -> sparse_monge::Result<()> {
    let spec = |p, q, seed| GeneratorSpec::with_count(p, q, 60, seed).values(2, 6);
    let a = random_monge_condensed(&spec(12, 30, 1))?;
    let b = random_monge_condensed(&spec(30, 9, 2))?;
    let (c, w) = multiply_with_witness(&a, &b)?;
    println!("recursion depth {}, {} nodes", w.depth(), w.node_count());

    let (da, db) = (a.to_dense()?, b.to_dense()?);
    for (i, k) in [(0, 0), (5, 4), (11, 8)] {
        let j = w.query(i, k)?;
        println!(
            "C[{i}][{k}] = {} = A[{i}][{j}] + B[{j}][{k}] = {} + {}",
            c.entry(i, k)?,
            da.get(i, j),
            db.get(j, k)
        );
    }
    let (_, expected) = minplus_dense(&da, &db)?;
    let rows = w.to_rows();
    assert!((0..12).all(|i| (0..9).all(|k| rows[i][k] as i64 == expected.get(i, k))));
    println!("witness matrix:");
    for row in rows {
        println!("  {row:?}");
    }
    Ok(())
}
