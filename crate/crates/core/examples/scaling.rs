//! Doubling experiment: time per multiplication and per index build as the
//! size doubles. Pass a largest exponent as the first argument (default 15).

use std::time::Instant;

use sparse_monge::reference::{random_monge_condensed, random_permutation, GeneratorSpec};
use sparse_monge::{build_lis_index, multiply};

fn main() -> sparse_monge::Result<()> {
    let top: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(15);
    println!("suite,size,delta,seconds,ratio");
    let mut last = None;
    for k in 10..=top {
        let n = 1usize << k;
        let a = random_monge_condensed(&GeneratorSpec::with_count(n, n, n, k as u64))?;
        let b = random_monge_condensed(&GeneratorSpec::with_count(n, n, n, 100 + k as u64))?;
        let t = Instant::now();
        multiply(&a, &b)?;
        let secs = t.elapsed().as_secs_f64();
        let ratio = last.map_or(String::new(), |prev: f64| format!("{:.2}", secs / prev));
        println!("multiply,{n},{},{secs:.4},{ratio}", 2 * n);
        last = Some(secs);
    }
    let mut last = None;
    for k in 10..=top {
        let n = 1usize << k;
        let perm = random_permutation(n, k as u64);
        let t = Instant::now();
        build_lis_index(&perm, 1.0)?;
        let secs = t.elapsed().as_secs_f64();
        let ratio = last.map_or(String::new(), |prev: f64| format!("{:.2}", secs / prev));
        println!("lis,{n},,{secs:.4},{ratio}");
        last = Some(secs);
    }
    Ok(())
}
