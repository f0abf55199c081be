/// Longest strictly increasing subsequence of `s[i..j)` by quadratic dynamic
/// programming.
///
/// Returns the length and the positions of the lexicographically smallest
/// (by position) maximum-length subsequence.
pub fn brute_lis<T: Ord>(s: &[T], i: usize, j: usize) -> (usize, Vec<usize>) {
    assert!(i <= j && j <= s.len(), "range [{i}, {j}) out of bounds");
    let w = &s[i..j];
    let n = w.len();
    // longest[x]: longest increasing subsequence starting at x.
    let mut longest = vec![1usize; n];
    for x in (0..n).rev() {
        for y in x + 1..n {
            if w[y] > w[x] {
                longest[x] = longest[x].max(longest[y] + 1);
            }
        }
    }
    let best = longest.iter().copied().max().unwrap_or(0);
    let mut out = Vec::with_capacity(best);
    let mut need = best;
    let mut last: Option<&T> = None;
    for x in 0..n {
        if need == 0 {
            break;
        }
        if longest[x] == need && last.map_or(true, |l| w[x] > *l) {
            out.push(i + x);
            last = Some(&w[x]);
            need -= 1;
        }
    }
    (best, out)
}
