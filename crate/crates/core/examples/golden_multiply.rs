//! A small product whose core is larger than the cores of both factors
//! combined.

use sparse_monge::reference::minplus_dense;
use sparse_monge::{multiply, to_condensed, DenseMatrix};

fn main() -> sparse_monge::Result<()> {
    let a = DenseMatrix::from_rows(&[[0, 4, 5, 6], [0, 1, 2, 3], [0, 1, 2, 0], [0, 1, 2, 0]])?;
    let b = DenseMatrix::from_rows(&[[0, 2, 4, 6], [0, 0, 2, 4], [0, 0, 0, 2], [0, 0, 0, 0]])?;
    let (ca, cb) = (to_condensed(&a)?, to_condensed(&b)?);
    let c = multiply(&ca, &cb)?;
    println!("C = {:?}", c.to_dense()?);
    println!("δ(A) = {}, δ(B) = {}, δ(C) = {}", ca.delta(), cb.delta(), c.delta());
    for e in c.core() {
        println!("  core ({}, {}) = {}", e.i, e.j, e.v);
    }
    let (dense, _) = minplus_dense(&a, &b)?;
    assert_eq!(c.to_dense()?, dense);
    println!("matches the triple-loop product");
    Ok(())
}
