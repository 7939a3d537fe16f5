//! Smith normal form over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariants of a finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Elementary divisors `d_1 | d_2 | …`, each at least 2.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn from_small(free_rank: usize, torsion: &[u64]) -> Self {
        AbelianInvariants {
            free_rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Nonzero diagonal entries of the Smith normal form of `rows` (an `m × cols` matrix),
/// normalized positive and forming a divisibility chain.
pub fn smith_diagonal(rows: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), cols, "ragged matrix");
    }
    let m = a.len();
    let n = cols;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Pick the smallest nonzero entry of the trailing block as pivot.
        let Some((pi, pj)) = min_entry(&a, t, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut residue = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&pivot);
                    for j in t..n {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    residue |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&pivot);
                    for i in t..m {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                    residue |= !a[t][j].is_zero();
                }
            }
            if residue {
                let (pi, pj) = min_in_cross(&a, t, m, n);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let mut bad_row = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[i][j] % &pivot).is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn min_in_cross(a: &[Vec<BigInt>], t: usize, m: usize, n: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = None;
    let mut consider = |i: usize, j: usize| {
        if a[i][j].is_zero() {
            return;
        }
        let v = a[i][j].abs();
        if best_abs.as_ref().map_or(true, |b| v < *b) {
            best_abs = Some(v);
            best = (i, j);
        }
    };
    for i in t..m {
        consider(i, t);
    }
    for j in t + 1..n {
        consider(t, j);
    }
    best
}

/// Abelian invariants of the cokernel of an integer relation matrix with `cols` generators.
pub fn abelian_invariants(rows: &[Vec<BigInt>], cols: usize) -> AbelianInvariants {
    let diag = smith_diagonal(rows, cols);
    let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianInvariants {
        free_rank: cols - diag.len(),
        torsion,
    }
}
