//! Oracles that share no code with `innerform`: plain integer arithmetic
//! used by the acceptance suite to check the library's answers.

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(c: &[Vec<i64>]) -> i128 {
    let n = c.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = c.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (mut sign, mut prev) = (1, 1i128);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `|W|` for the classical series and `G_2`, from the textbook formulas.
pub fn weyl_order(letter: char, n: u64) -> Option<u64> {
    match letter {
        'A' => Some(factorial(n + 1)),
        'B' | 'C' => Some((1 << n) * factorial(n)),
        'D' if n >= 2 => Some((1 << (n - 1)) * factorial(n)),
        'G' if n == 2 => Some(12),
        _ => None,
    }
}

/// Number of `x` in `Z/p` with `x^2 = a`, by enumeration.
pub fn square_roots_mod(a: i64, p: u64) -> usize {
    let a = a.rem_euclid(p as i64) as u64;
    (0..p).filter(|x| x * x % p == a).count()
}

/// `p` splits in `Q(sqrt(disc))` for a discriminant `disc = 1 mod 4`,
/// decided by counting roots of the minimal polynomial of the ring generator.
pub fn splits_in_quadratic(p: u64, disc: i64) -> bool {
    if p == 2 {
        // x^2 - x - (disc - 1)/4 over Z/2
        let c = (disc - 1) / 4;
        (0..2i64).filter(|x| (x * x - x - c).rem_euclid(2) == 0).count() == 2
    } else {
        square_roots_mod(disc, p) == 2
    }
}

/// All compositions of `n`, from the `2^(n-1)` cut patterns.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    (0u32..1 << (n - 1))
        .map(|mask| {
            let mut out = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    out.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            out.push(run);
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(det(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(weyl_order('D', 4), Some(192));
        assert_eq!(compositions(4).len(), 8);
        assert!(splits_in_quadratic(2, -7));
        assert!(!splits_in_quadratic(2, 5));
        assert!(splits_in_quadratic(5, -11));
    }
}
