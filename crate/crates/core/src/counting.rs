//! Closed-form counts, their growth identities, and Young tableau counts.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigUint;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `lo * (lo + 1) * ... * hi`, empty (= 1) when `hi < lo`.
fn product(lo: usize, hi: usize) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, i| acc * i)
}

fn exact_div(num: BigUint, den: BigUint) -> BigUint {
    let (q, r) = (&num / &den, &num % &den);
    assert!(r.is_zero(), "inexact division {num} / {den}");
    q
}

fn domain(msg: &str) -> Error {
    Error::DomainError(msg.to_string())
}

/// Bipolar oriented quasi-triangulations with `k` internal vertices and
/// external degree `j`.
pub fn count_t(k: usize, j: usize) -> Result<BigCount> {
    if j < 2 {
        return Err(domain("count_T needs j >= 2"));
    }
    let num = BigUint::from(j * (j - 1)) * factorial(3 * k + 2 * j - 4);
    let den = factorial(k) * factorial(k + j - 1) * factorial(k + j);
    Ok(exact_div(num, den))
}

/// Bipolar oriented maps with `k` internal vertices, `l` internal faces and
/// external degree `j`. The ratio `(k+l-2)!/(l-2)!` is read as the product
/// `(l-1) (l) ... (k+l-2)`, which is 1 when `k = 0` and 0 when `l = 1 <= k`.
pub fn count_b(k: usize, l: usize, j: usize) -> Result<BigCount> {
    if j < 2 || l < 1 {
        return Err(domain("count_B needs j >= 2 and l >= 1"));
    }
    let falling = if k == 0 { BigUint::one() } else { product(l - 1, k + l - 2) };
    if falling.is_zero() {
        return Ok(BigUint::zero());
    }
    let num = BigUint::from(j * (j - 1))
        * falling
        * factorial(k + l + j - 2)
        * factorial(k + l + j - 3);
    let den = factorial(k)
        * factorial(k + j)
        * factorial(k + j - 1)
        * factorial(l)
        * factorial(l - 1);
    Ok(exact_div(num, den))
}

/// Bipolar oriented maps whose internal faces all have right length 2.
pub fn count_s(k: usize, j: usize) -> Result<BigCount> {
    if j < 3 {
        return Err(domain("count_S needs j >= 3"));
    }
    let num = BigUint::from(j * (j - 1) * (j - 2))
        * factorial(2 * k + 2 * j - 4)
        * factorial(2 * k + j - 3);
    let den = factorial(k) * factorial(k + j) * factorial(k + j - 1) * factorial(k + j - 2);
    Ok(exact_div(num, den))
}

pub fn catalan(n: usize) -> BigCount {
    exact_div(factorial(2 * n), factorial(n) * factorial(n + 1))
}

/// Binary trees with `a` left leaves and `b` right leaves (`a, b >= 1`).
pub fn narayana(a: usize, b: usize) -> Result<BigCount> {
    if a < 1 || b < 1 {
        return Err(domain("Narayana numbers need a, b >= 1"));
    }
    Ok(exact_div(
        factorial(a + b - 1) * factorial(a + b - 2),
        factorial(a) * factorial(a - 1) * factorial(b) * factorial(b - 1),
    ))
}

/// The growth identities, each checked as a cross-multiplied equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `(n+1) Cat_n = 2 (2n-1) Cat_{n-1}`.
    Remy,
    /// `k T_{k,j} = (1 - 2/(j+1)) (3k+2j-4) T_{k-1,j+1}`.
    T,
    /// `k B_{k,l,j} = (1 - 2/(j+1)) (k+l-2) B_{k-1,l,j+1}`.
    B,
    /// `k S_{k,j} = (1 - 3/(j+1)) (2k+j-3) S_{k-1,j+1}`.
    S,
    /// `(a+1) a Nar_{a+1,b} = (b+1) b Nar_{a,b+1}`.
    Narayana,
}

impl Identity {
    /// Parses the identity numbers used on the command line.
    pub fn from_number(n: u32) -> Result<Identity> {
        match n {
            1 => Ok(Identity::Remy),
            5 => Ok(Identity::T),
            6 => Ok(Identity::B),
            7 => Ok(Identity::S),
            8 => Ok(Identity::Narayana),
            _ => Err(Error::Parse(format!("no identity numbered {n}"))),
        }
    }
}

/// Checks one instance. Parameters: `Remy (n)`, `T (k, j)`, `B (k, l, j)`,
/// `S (k, j)`, `Narayana (a, b)`.
pub fn identity_check(which: Identity, p: &[usize]) -> Result<bool> {
    let arity = match which {
        Identity::Remy => 1,
        Identity::B => 3,
        _ => 2,
    };
    if p.len() != arity {
        return Err(domain("wrong number of parameters"));
    }
    let big = |x: usize| BigUint::from(x);
    Ok(match which {
        Identity::Remy => {
            let n = p[0];
            if n < 1 {
                return Err(domain("n >= 1"));
            }
            big(n + 1) * catalan(n) == big(2 * (2 * n - 1)) * catalan(n - 1)
        }
        Identity::T => {
            let (k, j) = (p[0], p[1]);
            if k < 1 || j < 2 {
                return Err(domain("k >= 1, j >= 2"));
            }
            big(j + 1) * big(k) * count_t(k, j)?
                == big(j - 1) * big(3 * k + 2 * j - 4) * count_t(k - 1, j + 1)?
        }
        Identity::B => {
            let (k, l, j) = (p[0], p[1], p[2]);
            if k < 1 || l < 1 || j < 2 {
                return Err(domain("k >= 1, l >= 1, j >= 2"));
            }
            big(j + 1) * big(k) * count_b(k, l, j)?
                == big(j - 1) * big(k + l - 2) * count_b(k - 1, l, j + 1)?
        }
        Identity::S => {
            let (k, j) = (p[0], p[1]);
            if k < 1 || j < 3 {
                return Err(domain("k >= 1, j >= 3"));
            }
            big(j + 1) * big(k) * count_s(k, j)?
                == big(j - 2) * big(2 * k + j - 3) * count_s(k - 1, j + 1)?
        }
        Identity::Narayana => {
            let (a, b) = (p[0], p[1]);
            big((a + 1) * a) * narayana(a + 1, b)? == big((b + 1) * b) * narayana(a, b + 1)?
        }
    })
}

/// All in-domain parameter tuples with entries up to `grid`.
pub fn identity_grid(which: Identity, grid: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match which {
        Identity::Remy => out.extend((1..=grid).map(|n| vec![n])),
        Identity::T => {
            for k in 1..=grid {
                for j in 2..=grid {
                    out.push(vec![k, j]);
                }
            }
        }
        Identity::B => {
            for k in 1..=grid {
                for l in 1..=grid {
                    for j in 2..=grid {
                        out.push(vec![k, l, j]);
                    }
                }
            }
        }
        Identity::S => {
            for k in 1..=grid {
                for j in 3..=grid {
                    out.push(vec![k, j]);
                }
            }
        }
        Identity::Narayana => {
            for a in 1..=grid {
                for b in 1..=grid {
                    out.push(vec![a, b]);
                }
            }
        }
    }
    out
}

/// A partition given by weakly decreasing row lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungShape(Vec<usize>);

impl YoungShape {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain("rows must be weakly decreasing"));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(YoungShape(rows))
    }

    /// The three-row shape `(k+j-2, k+j-2, k)`.
    pub fn lambda(k: usize, j: usize) -> Result<Self> {
        if j < 2 {
            return Err(domain("lambda needs j >= 2"));
        }
        YoungShape::new(vec![k + j - 2, k + j - 2, k])
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    fn column_len(&self, c: usize) -> usize {
        self.0.iter().filter(|&&r| r > c).count()
    }

    /// `(hook length, content)` of every cell.
    pub fn cells(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                let hook = (len - c - 1) + (self.column_len(c) - r - 1) + 1;
                out.push((hook, c as i64 - r as i64));
            }
        }
        out
    }
}

/// Standard Young tableaux of the shape, by the hook length formula.
pub fn hook_length_count(shape: &YoungShape) -> BigCount {
    let hooks = shape
        .cells()
        .iter()
        .fold(BigUint::one(), |acc, &(h, _)| acc * h);
    exact_div(factorial(shape.size()), hooks)
}

/// Semistandard tableaux with entries in `1..=bound`, by the hook content
/// formula.
pub fn hook_content_count(shape: &YoungShape, bound: usize) -> Result<BigCount> {
    if bound < 1 {
        return Err(domain("entry bound must be >= 1"));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (h, c) in shape.cells() {
        num *= BigInt::from(bound as i64 + c);
        den *= BigInt::from(h);
    }
    let (q, r) = (&num / &den, &num % &den);
    assert!(r.is_zero(), "inexact hook content quotient");
    Ok(q.to_biguint().unwrap_or_default())
}

/// Standard Young tableaux counted by removing the largest entry from every
/// corner in turn.
pub fn syt_bruteforce(shape: &YoungShape) -> BigCount {
    fn go(rows: Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if rows.iter().all(|&r| r == 0) {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&rows) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for i in 0..rows.len() {
            let below = rows.get(i + 1).copied().unwrap_or(0);
            if rows[i] > below {
                let mut next = rows.clone();
                next[i] -= 1;
                total += go(next, memo);
            }
        }
        memo.insert(rows, total.clone());
        total
    }
    go(shape.rows().to_vec(), &mut HashMap::new())
}

/// Semistandard tableaux with entries in `1..=bound`, counted by filling
/// the shape one horizontal strip per value.
pub fn ssyt_bruteforce(shape: &YoungShape, bound: usize) -> BigCount {
    // strip of value v: the cells holding v form rows[i] - inner[i] with
    // inner a partition interlacing the outer one.
    fn go(rows: &[usize], bound: usize, memo: &mut HashMap<(Vec<usize>, usize), BigUint>) -> BigUint {
        if rows.iter().all(|&r| r == 0) {
            return BigUint::one();
        }
        if bound == 0 {
            return BigUint::zero();
        }
        let key = (rows.to_vec(), bound);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        let mut inner = vec![0; rows.len()];
        fn rec(
            i: usize,
            rows: &[usize],
            inner: &mut Vec<usize>,
            bound: usize,
            total: &mut BigUint,
            memo: &mut HashMap<(Vec<usize>, usize), BigUint>,
        ) {
            if i == rows.len() {
                *total += go(inner, bound - 1, memo);
                return;
            }
            let lo = rows.get(i + 1).copied().unwrap_or(0);
            for x in lo..=rows[i] {
                inner[i] = x;
                rec(i + 1, rows, inner, bound, total, memo);
            }
        }
        rec(0, rows, &mut inner, bound, &mut total, memo);
        memo.insert(key, total.clone());
        total
    }
    go(shape.rows(), bound, &mut HashMap::new())
}

/// All partitions with at most `cells` cells.
pub fn shapes_up_to(cells: usize) -> Vec<YoungShape> {
    fn parts(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungShape>) {
        if n == 0 {
            out.push(YoungShape(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            parts(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 0..=cells {
        parts(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn formula_values() {
        assert_eq!(count_t(2, 2).unwrap(), n(5));
        assert_eq!(count_t(1, 3).unwrap(), n(5));
        assert_eq!(count_t(0, 3).unwrap(), n(1));
        for j in 2..10 {
            assert_eq!(count_b(0, 1, j).unwrap(), n(1));
        }
        assert_eq!(count_b(0, 2, 3).unwrap(), n(3));
        assert_eq!(count_b(1, 1, 3).unwrap(), n(0));
        assert_eq!(count_s(0, 3).unwrap(), n(1));
        assert_eq!(count_s(1, 3).unwrap(), n(1));
        assert_eq!(count_s(2, 3).unwrap(), n(3));
        assert!(count_s(1, 2).is_err());
    }

    #[test]
    fn base_cases_are_catalan_and_narayana() {
        for j in 3..12 {
            assert_eq!(count_t(0, j).unwrap(), catalan(j - 2));
            assert_eq!(count_s(0, j).unwrap(), catalan(j - 2));
            for l in 1..8 {
                assert_eq!(count_b(0, l, j).unwrap(), narayana(l, j - 1).unwrap());
            }
        }
    }

    #[test]
    fn identities_on_examples() {
        assert!(identity_check(Identity::T, &[2, 2]).unwrap());
        assert!(identity_check(Identity::Remy, &[3]).unwrap());
        assert!(identity_check(Identity::Narayana, &[2, 2]).unwrap());
        assert_eq!(narayana(3, 2).unwrap(), n(6));
        assert_eq!(narayana(2, 3).unwrap(), n(6));
        assert!(identity_check(Identity::T, &[0, 2]).is_err());
    }

    #[test]
    fn identities_on_grid() {
        for which in [Identity::Remy, Identity::T, Identity::B, Identity::S, Identity::Narayana] {
            for p in identity_grid(which, 20) {
                assert!(identity_check(which, &p).unwrap(), "{which:?} {p:?}");
            }
        }
    }

    #[test]
    fn tableau_counts() {
        let s = YoungShape::new(vec![2, 2, 2]).unwrap();
        assert_eq!(hook_length_count(&s), n(5));
        assert_eq!(syt_bruteforce(&s), n(5));
        let s = YoungShape::new(vec![1, 1]).unwrap();
        assert_eq!(hook_content_count(&s, 3).unwrap(), n(3));
        assert_eq!(ssyt_bruteforce(&s, 3), n(3));
        let empty = YoungShape::new(vec![]).unwrap();
        assert_eq!(hook_length_count(&empty), n(1));
        assert_eq!(syt_bruteforce(&empty), n(1));
        assert!(YoungShape::new(vec![1, 2]).is_err());
    }

    #[test]
    fn hook_content_matches_bruteforce() {
        for shape in shapes_up_to(7) {
            for bound in 1..5 {
                assert_eq!(
                    hook_content_count(&shape, bound).unwrap(),
                    ssyt_bruteforce(&shape, bound),
                    "{shape:?} {bound}"
                );
            }
        }
    }

    #[test]
    fn shape_counts() {
        // partitions of 0..=5: 1 + 1 + 2 + 3 + 5 + 7
        assert_eq!(shapes_up_to(5).len(), 19);
    }
}
