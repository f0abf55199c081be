//! Entry access on a condensed matrix without densifying it: adjacent
//! differences, dominance sums and contiguous submatrices.

use sparse_monge::reference::{random_monge_condensed, GeneratorSpec};
use sparse_monge::{submatrix, Cmo, Lco};

fn main() -> sparse_monge::Result<()> {
    let m = random_monge_condensed(&GeneratorSpec::with_count(2000, 3000, 5000, 11))?;
    println!("{}x{} with δ = {}", m.rows(), m.cols(), m.delta());

    let lco = Lco::new(&m)?;
    let cmo = Cmo::new(&m)?;
    let (i, j) = (1234, 2345);
    let x = cmo.get(i, j)?;
    println!("M[{i}][{j}] = {x}");
    println!("M[{}][{j}] = {}", i + 1, x + lco.vdiff(i, j)?);
    println!("M[{i}][{}] = {}", j + 1, x + lco.hdiff(i, j)?);
    println!("core sum below and left of ({i}, {j}): {}", cmo.dominance_sum(i, j)?);

    let sub = submatrix(&m, 1000..1010, 2000..2008)?;
    println!("10x8 block at (1000, 2000): δ = {}, Monge = {}", sub.delta(), sub.is_monge());
    assert_eq!(sub.entry(4, 5)?, cmo.get(1004, 2005)?);
    Ok(())
}
