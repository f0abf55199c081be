//! Max-plus products of anti-Monge matrices, by negation.

use sparse_monge::reference::{maxplus_dense, random_monge_condensed, GeneratorSpec};
use sparse_monge::maxplus_with_witness;

fn main() -> sparse_monge::Result<()> {
    let a = random_monge_condensed(&GeneratorSpec::with_probability(8, 10, 0.2, 3).values(9, 2))?.negate()?;
    let b = random_monge_condensed(&GeneratorSpec::with_probability(10, 6, 0.2, 4).values(9, 2))?.negate()?;
    println!("anti-Monge: {} and {}", a.is_anti_monge(), b.is_anti_monge());
    let (c, w) = maxplus_with_witness(&a, &b)?;
    println!("C = {:?}", c.to_dense()?);
    println!("C is anti-Monge: {}", c.is_anti_monge());
    let (dense, wit) = maxplus_dense(&a.to_dense()?, &b.to_dense()?)?;
    assert_eq!(c.to_dense()?, dense);
    assert_eq!(w.query(7, 5)? as i64, wit.get(7, 5));
    println!("smallest maximizer of C[7][5]: {}", w.query(7, 5)?);
    Ok(())
}
