//! Longest increasing subsequences of arbitrary ranges of a permutation.

use sparse_monge::reference::random_permutation;
use sparse_monge::{brute_lis, build_distance_matrix, build_lis_index};

fn main() -> sparse_monge::Result<()> {
    let s = [1, 0, 3, 2, 4];
    let index = build_lis_index(&s, 1.0)?;
    println!("s = {s:?}");
    println!("LIS of s[0..5) = {}", index.lis_value(0, 5)?);
    println!("LIS of s[2..3) = {}", index.lis_value(2, 3)?);
    println!("one of them: {:?}", index.lis_report(0, 5)?);
    println!("M^s = {:?}", build_distance_matrix(&s)?.to_dense()?);

    let n = 10_000;
    let perm = random_permutation(n, 42);
    for alpha in [0.0, 0.5, 1.0] {
        let t = std::time::Instant::now();
        let index = build_lis_index(&perm, alpha)?;
        println!(
            "n = {n}, α = {alpha}: τ = {}, {} dp entries, built in {:?}",
            index.tau(),
            index.dp_entries(),
            t.elapsed()
        );
        let (i, j) = (1234, 8765);
        let report = index.lis_report(i, j)?;
        assert_eq!(report.len(), brute_lis(&perm, i, j).0);
        println!("  LIS of [{i}, {j}) has length {}, starts {:?}", report.len(), &report[..3]);
    }
    Ok(())
}
