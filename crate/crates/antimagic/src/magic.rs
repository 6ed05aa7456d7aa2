//! Magic rectangles MR(a, b): an a×b arrangement of 1..=ab with equal row sums
//! and equal column sums.
//!
//! Even×even rectangles come from a closed form built on complementary pairs.
//! Odd squares use the Siamese method. Other odd×odd sizes are found by a seeded
//! local search. Every result is verified before it is returned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagicError {
    #[error("no magic rectangle {rows}x{cols}: {reason}")]
    NoSuchRectangle { rows: usize, cols: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagicRectangle {
    pub rows: usize,
    pub cols: usize,
    /// Row-major cells.
    pub cells: Vec<Vec<u64>>,
}

impl MagicRectangle {
    /// ρ = b(ab+1)/2.
    pub fn row_sum(&self) -> u64 {
        magic_row_sum(self.rows, self.cols)
    }

    /// σ = a(ab+1)/2.
    pub fn col_sum(&self) -> u64 {
        magic_row_sum(self.cols, self.rows)
    }

    pub fn transpose(&self) -> MagicRectangle {
        let cells = (0..self.cols).map(|j| (0..self.rows).map(|i| self.cells[i][j]).collect()).collect();
        MagicRectangle { rows: self.cols, cols: self.rows, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cells[i][j]
    }
}

fn magic_row_sum(a: usize, b: usize) -> u64 {
    let (a, b) = (a as u64, b as u64);
    b * (a * b + 1) / 2
}

fn existence_failure(a: usize, b: usize) -> Option<&'static str> {
    if a < 2 || b < 2 {
        Some("both dimensions must exceed 1")
    } else if a * b <= 4 {
        Some("ab must exceed 4")
    } else if a % 2 != b % 2 {
        Some("dimensions must have equal parity")
    } else {
        None
    }
}

pub fn mr_exists(a: usize, b: usize) -> bool {
    existence_failure(a, b).is_none()
}

/// Lists everything wrong with `r`; empty means `r` is a magic rectangle.
pub fn verify_magic_rectangle(r: &MagicRectangle) -> Vec<String> {
    let mut reasons = Vec::new();
    if let Some(why) = existence_failure(r.rows, r.cols) {
        reasons.push(why.to_string());
    }
    if r.cells.len() != r.rows || r.cells.iter().any(|row| row.len() != r.cols) {
        reasons.push(format!("shape is not {}x{}", r.rows, r.cols));
        return reasons;
    }
    let total = r.rows * r.cols;
    let mut seen = vec![false; total + 1];
    for &x in r.cells.iter().flatten() {
        let ok = (1..=total as u64).contains(&x) && !std::mem::replace(&mut seen[x as usize], true);
        if !ok {
            reasons.push(format!("entry {x} is out of range or repeated"));
        }
    }
    let (rho, sigma) = (r.row_sum(), r.col_sum());
    for (i, row) in r.cells.iter().enumerate() {
        let s: u64 = row.iter().sum();
        if s != rho {
            reasons.push(format!("row {} sums to {s}, expected {rho}", i + 1));
        }
    }
    for j in 0..r.cols {
        let s: u64 = r.cells.iter().map(|row| row[j]).sum();
        if s != sigma {
            reasons.push(format!("column {} sums to {s}, expected {sigma}", j + 1));
        }
    }
    reasons
}

/// Builds a verified MR(a, b). `seed` only affects odd non-square sizes.
pub fn construct_magic_rectangle(a: usize, b: usize, seed: u64) -> Result<MagicRectangle, MagicError> {
    if let Some(reason) = existence_failure(a, b) {
        return Err(MagicError::NoSuchRectangle { rows: a, cols: b, reason: reason.into() });
    }
    let r = if a.is_multiple_of(2) {
        even(a, b)
    } else if a == b {
        siamese(a)
    } else if a > b {
        odd_search(b, a, seed).transpose()
    } else {
        odd_search(a, b, seed)
    };
    let problems = verify_magic_rectangle(&r);
    assert!(problems.is_empty(), "constructed MR({a},{b}) failed verification: {problems:?}");
    Ok(r)
}

// ============================================================================
// Even × even
// ============================================================================
//
// Rows are taken in pairs. Every column of a row pair holds a complementary pair
// {h - k, h + 1 + k} with h = ab/2, so column sums are automatic. The two rows of a
// pair differ by a signed sum of the odd gaps 2k + 1, which has to vanish. Four
// consecutive gaps signed + - - + cancel. When both sides are 2 mod 4 each row pair
// also needs one six-gap group that cancels on its own.

type SignedGroup = Vec<(u64, bool)>;

fn quad(start: u64) -> SignedGroup {
    vec![(start, true), (start + 1, false), (start + 2, false), (start + 3, true)]
}

fn even(a: usize, b: usize) -> MagicRectangle {
    if b % 4 == 2 && (a.is_multiple_of(4) || a > b) {
        return even(b, a).transpose();
    }
    let pairs = a / 2;
    let mut next = 0u64;
    let mut groups: Vec<Vec<SignedGroup>> = vec![Vec::new(); pairs];
    if b % 4 == 2 {
        // pairs is odd here: one group from gaps 0..6, then two per run of twelve
        groups[0].push([0, 1, 2, 4].map(|k| (k, true)).into_iter().chain([(3, false), (5, false)]).collect());
        next = 6;
        for p in (1..pairs).step_by(2) {
            let c = next;
            let first = [(0, true), (4, true), (8, true), (1, false), (2, false), (9, false)];
            let second = [(3, true), (7, true), (11, true), (5, false), (6, false), (10, false)];
            groups[p].push(first.iter().map(|&(k, s)| (c + k, s)).collect());
            groups[p + 1].push(second.iter().map(|&(k, s)| (c + k, s)).collect());
            next += 12;
        }
    }
    for row_groups in &mut groups {
        while row_groups.iter().map(Vec::len).sum::<usize>() < b {
            row_groups.push(quad(next));
            next += 4;
        }
    }
    let half = (a * b / 2) as u64;
    let mut cells = vec![Vec::with_capacity(b); a];
    for (p, row_groups) in groups.iter().enumerate() {
        for &(k, plus) in row_groups.iter().flatten() {
            let (lo, hi) = (half - k, half + 1 + k);
            let (top, bottom) = if plus { (hi, lo) } else { (lo, hi) };
            cells[2 * p].push(top);
            cells[2 * p + 1].push(bottom);
        }
    }
    MagicRectangle { rows: a, cols: b, cells }
}

// ============================================================================
// Odd × odd
// ============================================================================

fn siamese(n: usize) -> MagicRectangle {
    let mut cells = vec![vec![0u64; n]; n];
    let (mut i, mut j) = (0, n / 2);
    for x in 1..=(n * n) as u64 {
        cells[i][j] = x;
        let (ni, nj) = ((i + n - 1) % n, (j + 1) % n);
        if cells[ni][nj] != 0 {
            i = (i + 1) % n;
        } else {
            (i, j) = (ni, nj);
        }
    }
    MagicRectangle { rows: n, cols: n, cells }
}

/// Simulated annealing over cell swaps, minimizing the squared row and column
/// deviations. Restarts with fresh randomness if a run does not converge.
/// Deterministic for a fixed seed.
fn odd_search(a: usize, b: usize, seed: u64) -> MagicRectangle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((a as u64) << 32 | b as u64));
    let (rho, sigma) = (magic_row_sum(a, b) as i64, magic_row_sum(b, a) as i64);
    let total = a * b;
    loop {
        let mut grid: Vec<i64> = (1..=total as i64).collect();
        for i in (1..total).rev() {
            grid.swap(i, rng.gen_range(0..=i));
        }
        let mut row: Vec<i64> = (0..a).map(|i| grid[i * b..(i + 1) * b].iter().sum::<i64>() - rho).collect();
        let mut col: Vec<i64> = (0..b).map(|j| (0..a).map(|i| grid[i * b + j]).sum::<i64>() - sigma).collect();
        let mut cost: i64 = row.iter().chain(&col).map(|d| d * d).sum();
        let mut temp = total as f64 / 2.0;
        for step in 0..40_000_000u64 {
            if cost == 0 {
                let cells = grid.chunks(b).map(|r| r.iter().map(|&x| x as u64).collect()).collect();
                return MagicRectangle { rows: a, cols: b, cells };
            }
            if step % 100 == 0 {
                temp = (temp * 0.999).max(0.3);
            }
            let p = rng.gen_range(0..total);
            let q = rng.gen_range(0..total);
            let (pi, pj, qi, qj) = (p / b, p % b, q / b, q % b);
            if p == q {
                continue;
            }
            // the value at q moves into p's row and column
            let d = grid[q] - grid[p];
            let mut delta = 0;
            if pi != qi {
                delta += sq(row[pi] + d) - sq(row[pi]) + sq(row[qi] - d) - sq(row[qi]);
            }
            if pj != qj {
                delta += sq(col[pj] + d) - sq(col[pj]) + sq(col[qj] - d) - sq(col[qj]);
            }
            if delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp() {
                grid.swap(p, q);
                if pi != qi {
                    row[pi] += d;
                    row[qi] -= d;
                }
                if pj != qj {
                    col[pj] += d;
                    col[qj] -= d;
                }
                cost += delta;
            }
        }
    }
}

fn sq(x: i64) -> i64 {
    x * x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn existence_rule() {
        assert!(mr_exists(3, 3));
        assert!(!mr_exists(2, 2));
        assert!(!mr_exists(2, 3));
        assert!(!mr_exists(1, 5));
        assert!(mr_exists(2, 4));
    }

    #[test]
    fn refuses_nonexistent() {
        assert!(matches!(construct_magic_rectangle(2, 3, 0), Err(MagicError::NoSuchRectangle { .. })));
    }

    #[test]
    fn known_2x4_verifies() {
        let r = MagicRectangle { rows: 2, cols: 4, cells: vec![vec![1, 7, 6, 4], vec![8, 2, 3, 5]] };
        assert!(verify_magic_rectangle(&r).is_empty());
        assert_eq!((r.row_sum(), r.col_sum()), (18, 9));
        // swapping 1 and 2 across rows breaks both row sums
        let mut swapped = r.clone();
        swapped.cells[0][0] = 2;
        swapped.cells[1][1] = 1;
        assert!(!verify_magic_rectangle(&swapped).is_empty());
    }

    #[test]
    fn trivial_grid_is_not_magic() {
        let r = MagicRectangle { rows: 1, cols: 1, cells: vec![vec![1]] };
        assert!(!verify_magic_rectangle(&r).is_empty());
    }

    #[test]
    fn lo_shu() {
        let r = construct_magic_rectangle(3, 3, 0).unwrap();
        assert_eq!(r.row_sum(), 15);
        assert_eq!(r.cells, vec![vec![8, 1, 6], vec![3, 5, 7], vec![4, 9, 2]]);
    }

    #[test]
    fn even_cases_cover_each_residue_class() {
        for (a, b) in [(2, 4), (2, 6), (6, 2), (4, 4), (4, 6), (6, 4), (6, 6), (6, 10), (10, 6), (2, 10), (14, 18)] {
            let r = construct_magic_rectangle(a, b, 0).unwrap();
            assert_eq!((r.rows, r.cols), (a, b));
        }
    }

    #[test]
    fn odd_search_is_seed_deterministic() {
        let x = construct_magic_rectangle(3, 5, 7).unwrap();
        let y = construct_magic_rectangle(3, 5, 7).unwrap();
        assert_eq!(x, y);
        assert_eq!(construct_magic_rectangle(5, 3, 7).unwrap().rows, 5);
    }
}
