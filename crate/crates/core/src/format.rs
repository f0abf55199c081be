//! Plain-text file formats.
//!
//! Condensed matrix (`.cm`):
//!
//! ```text
//! p q
//! <q integers: top row>
//! <p integers: left column>
//! δ
//! i j v        (δ lines, sorted by (i, j), v != 0)
//! ```
//!
//! Dense matrix: a `p q` line followed by `p` lines of `q` integers.
//!
//! Permutation: an `n` line followed by one line of `n` distinct integers in
//! `0..n`.
//!
//! Blank lines are ignored everywhere; every other line must hold exactly the
//! expected number of whitespace-separated decimal tokens.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lis::check_permutation;
use crate::matrix::{CondensedMatrix, CoreElement, DenseMatrix};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        for (n, line) in self.inner.by_ref() {
            self.last = n + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                return Ok((n + 1, tokens));
            }
        }
        Err(Error::parse(self.last + 1, format!("unexpected end of input, expected {what}")))
    }

    /// A line of exactly `count` numbers.
    fn numbers<T: FromStr>(&mut self, count: usize, what: &str) -> Result<(usize, Vec<T>)> {
        let (line, tokens) = self.next_tokens(what)?;
        if tokens.len() != count {
            return Err(Error::parse(
                line,
                format!("expected {count} values for {what}, found {}", tokens.len()),
            ));
        }
        let values = tokens
            .iter()
            .map(|t| number(line, t))
            .collect::<Result<Vec<T>>>()?;
        Ok((line, values))
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_tokens("") {
            Ok((line, _)) => Err(Error::parse(line, "trailing content")),
            Err(_) => Ok(()),
        }
    }
}

fn number<T: FromStr>(line: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("`{token}` is not a valid integer here")))
}

fn dimensions(lines: &mut Lines<'_>) -> Result<(usize, usize)> {
    let (line, d) = lines.numbers::<usize>(2, "the dimensions")?;
    if d[0] == 0 || d[1] == 0 {
        return Err(Error::parse(line, "dimensions must be positive"));
    }
    Ok((d[0], d[1]))
}

/// Reads a `.cm` file. Besides syntax, checks that the core is strictly
/// sorted, in range and free of zeros, and that the top row and left column
/// agree on the corner.
pub fn parse_condensed(text: &str) -> Result<CondensedMatrix> {
    let mut lines = Lines::new(text);
    let (p, q) = dimensions(&mut lines)?;
    let (_, top) = lines.numbers::<i64>(q, "the top row")?;
    let (line, left) = lines.numbers::<i64>(p, "the left column")?;
    if top[0] != left[0] {
        return Err(Error::invalid(format!(
            "line {line}: top row starts with {} but left column with {}",
            top[0], left[0]
        )));
    }
    let (_, delta) = lines.numbers::<usize>(1, "the core size")?;
    let delta = delta[0];
    let mut core: Vec<CoreElement> = Vec::new();
    for _ in 0..delta {
        let (line, tokens) = lines.next_tokens("a core element")?;
        if tokens.len() != 3 {
            return Err(Error::parse(
                line,
                format!("a core element is `i j v`, found {} values", tokens.len()),
            ));
        }
        let e = CoreElement::new(
            number(line, tokens[0])?,
            number(line, tokens[1])?,
            number(line, tokens[2])?,
        );
        if e.i + 1 >= p || e.j + 1 >= q {
            return Err(Error::invalid(format!(
                "line {line}: core element ({}, {}) outside the {}x{} density grid",
                e.i,
                e.j,
                p - 1,
                q - 1
            )));
        }
        if e.v == 0 {
            return Err(Error::invalid(format!("line {line}: zero core value")));
        }
        if let Some(prev) = core.last() {
            if (prev.i, prev.j) >= (e.i, e.j) {
                return Err(Error::invalid(format!(
                    "line {line}: core element ({}, {}) is not after ({}, {})",
                    e.i, e.j, prev.i, prev.j
                )));
            }
        }
        core.push(e);
    }
    lines.finish()?;
    CondensedMatrix::new(p, q, top, left, core)
}

pub fn write_condensed(m: &CondensedMatrix, out: &mut dyn Write) -> io::Result<()> {
    out.write_all(condensed_to_string(m).as_bytes())
}

pub fn condensed_to_string(m: &CondensedMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    join_line(&mut s, m.top_row());
    join_line(&mut s, m.left_col());
    let _ = writeln!(s, "{}", m.delta());
    for e in m.core() {
        let _ = writeln!(s, "{} {} {}", e.i, e.j, e.v);
    }
    s
}

fn join_line<T: std::fmt::Display>(s: &mut String, values: &[T]) {
    for (x, v) in values.iter().enumerate() {
        if x > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s.push('\n');
}

pub fn parse_dense(text: &str) -> Result<DenseMatrix> {
    let mut lines = Lines::new(text);
    let (p, q) = dimensions(&mut lines)?;
    let mut data = Vec::new();
    for i in 0..p {
        let (_, row) = lines.numbers::<i64>(q, &format!("row {i}"))?;
        data.extend(row);
    }
    lines.finish()?;
    DenseMatrix::new(p, q, data)
}

pub fn dense_to_string(m: &DenseMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        join_line(&mut s, m.row(i));
    }
    s
}

/// Reads `n` followed by `n` integers, without requiring a permutation.
pub fn parse_sequence(text: &str) -> Result<Vec<i64>> {
    let mut lines = Lines::new(text);
    let (line, n) = lines.numbers::<usize>(1, "the length")?;
    if n[0] == 0 {
        return Err(Error::parse(line, "the length must be positive"));
    }
    let (_, values) = lines.numbers::<i64>(n[0], "the sequence")?;
    lines.finish()?;
    Ok(values)
}

pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let values = parse_sequence(text)?;
    let perm = values
        .iter()
        .map(|&v| {
            usize::try_from(v)
                .map_err(|_| Error::NotPermutation(format!("negative value {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    check_permutation(&perm)?;
    Ok(perm)
}

pub fn permutation_to_string(perm: &[usize]) -> String {
    let mut s = format!("{}\n", perm.len());
    join_line(&mut s, perm);
    s
}

/// Replaces distinct values by their ranks.
pub fn rank_reduce(values: &[i64]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&x| values[x]);
    if let Some(w) = order.windows(2).find(|w| values[w[0]] == values[w[1]]) {
        return Err(Error::InvalidArgument(format!(
            "value {} occurs at positions {} and {}",
            values[w[0]],
            w[0].min(w[1]),
            w[0].max(w[1])
        )));
    }
    let mut ranks = vec![0; values.len()];
    for (r, &x) in order.iter().enumerate() {
        ranks[x] = r;
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{fixtures, to_condensed};
    use proptest::prelude::*;

    const A_CM: &str = "4 4\n0 4 5 6\n0 0 0 0\n2\n0 0 3\n1 2 3\n";

    #[test]
    fn golden_a_round_trips() {
        let a = to_condensed(&fixtures::a()).unwrap();
        assert_eq!(condensed_to_string(&a), A_CM);
        assert_eq!(parse_condensed(A_CM).unwrap(), a);
    }

    #[test]
    fn empty_core_file() {
        let m = parse_condensed("2 3\n1 2 3\n1 5\n0\n").unwrap();
        assert_eq!(m.delta(), 0);
        assert_eq!(m.to_dense().unwrap().to_rows(), vec![vec![1, 2, 3], vec![5, 6, 7]]);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("4 4\n0 4 5\n", 2),
            ("4 4\n0 4 5 6\n0 0 0 0\n2\n0 0 3\n", 6),
            ("4 4\n0 4 5 6\n0 0 x 0\n", 3),
            ("0 4\n", 1),
            ("2 2\n0 0\n0 0\n0\nextra\n", 5),
            ("2 2\n0 0\n0 0\n1\n0 0\n", 5),
        ];
        for (text, line) in cases {
            match parse_condensed(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn structural_errors() {
        for text in [
            "2 2\n1 0\n0 0\n0\n",
            "3 3\n0 0 0\n0 0 0\n2\n1 1 1\n0 0 1\n",
            "3 3\n0 0 0\n0 0 0\n2\n0 0 1\n0 0 1\n",
            "3 3\n0 0 0\n0 0 0\n1\n0 0 0\n",
            "3 3\n0 0 0\n0 0 0\n1\n2 0 1\n",
        ] {
            assert!(matches!(parse_condensed(text), Err(Error::InvalidMatrix(_))), "{text:?}");
        }
    }

    #[test]
    fn huge_declared_sizes_do_not_allocate() {
        assert!(parse_condensed("1000000000000 2\n0 0\n0\n").is_err());
        assert!(parse_condensed("2 2\n0 0\n0 0\n99999999999999\n").is_err());
        assert!(parse_sequence("99999999999999\n1 2\n").is_err());
    }

    #[test]
    fn dense_round_trip() {
        let text = dense_to_string(&fixtures::c());
        assert!(text.starts_with("4 4\n0 2 4 6\n"));
        assert_eq!(parse_dense(&text).unwrap(), fixtures::c());
        assert!(parse_dense("2 2\n1 2\n3\n").is_err());
    }

    #[test]
    fn permutations() {
        assert_eq!(parse_permutation("5\n1 0 3 2 4\n").unwrap(), vec![1, 0, 3, 2, 4]);
        assert_eq!(permutation_to_string(&[1, 0]), "2\n1 0\n");
        assert!(matches!(parse_permutation("2\n0 0\n"), Err(Error::NotPermutation(_))));
        assert!(matches!(parse_permutation("2\n-1 0\n"), Err(Error::NotPermutation(_))));
        assert!(matches!(parse_permutation("2\n0 1 2\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_reduce(&[30, -5, 12]).unwrap(), vec![2, 0, 1]);
        assert!(rank_reduce(&[1, 2, 1]).is_err());
    }

    proptest! {
        #[test]
        fn parsing_never_panics(text in "[0-9 \\-\n]{0,60}") {
            let _ = parse_condensed(&text);
            let _ = parse_dense(&text);
            let _ = parse_permutation(&text);
        }

        #[test]
        fn generated_matrices_round_trip(seed in 0u64..500, p in 1usize..12, q in 1usize..12) {
            let spec = crate::reference::GeneratorSpec::with_probability(p, q, 0.3, seed);
            let m = crate::reference::random_monge_condensed(&spec).unwrap();
            prop_assert_eq!(parse_condensed(&condensed_to_string(&m)).unwrap(), m);
        }
    }
}
