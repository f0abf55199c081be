//! Condensed form of a Monge matrix: boundary row and column plus the
//! nonzero density entries.

use sparse_monge::{core_of, density, is_monge, to_condensed, DenseMatrix};

fn main() -> sparse_monge::Result<()> {
    let a = DenseMatrix::from_rows(&[[0, 4, 5, 6], [0, 1, 2, 3], [0, 1, 2, 0], [0, 1, 2, 0]])?;
    println!("A = {a:?}");
    println!("density = {:?}", density(&a)?);
    println!("Monge: {}", is_monge(&a)?);

    let summary = core_of(&a)?;
    println!("core: {:?} (δ = {}, sum = {})", summary.elements, summary.delta, summary.core_sum);

    let c = to_condensed(&a)?;
    println!("top row {:?}, left column {:?}", c.top_row(), c.left_col());
    println!("A[2][3] recovered from the condensed form: {}", c.entry(2, 3)?);
    assert_eq!(c.to_dense()?, a);
    println!("round trip ok");
    Ok(())
}
