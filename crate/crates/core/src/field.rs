//! Prime-field arithmetic and exact rank over `F_p`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Moduli must exceed this so that spurious rank drops stay improbable.
pub const MIN_PRIME: u64 = 1_000_000;

/// Upper bound keeping `a * b` inside `u128` and sums inside `u64`.
pub const MAX_PRIME: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u64,
    pub seed: u64,
    pub trials: usize,
}

impl FieldConfig {
    pub fn new(p: u64, seed: u64, trials: usize) -> Result<Self> {
        if !(MIN_PRIME < p && p < MAX_PRIME) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(Self {
            p,
            seed,
            trials: trials.max(1),
        })
    }

    pub fn with_seed(seed: u64) -> Self {
        Self {
            p: DEFAULT_PRIME,
            seed,
            trials: 3,
        }
    }

    pub fn field(&self) -> Fp {
        Fp { p: self.p }
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `Z/pZ`; elements are canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod_u64(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod_u64(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(&self, v: i64) -> u64 {
        let r = i128::from(v).rem_euclid(i128::from(self.p));
        r as u64
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<u64> = rows.into_iter().flatten().collect();
        Self::new(r, c, data)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&mut self, other: &FpMatrix) {
        if self.rows == 0 {
            self.cols = other.cols;
        }
        assert_eq!(self.cols, other.cols);
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    pub fn push_row(&mut self, row: &[u64]) {
        if self.rows == 0 {
            self.cols = row.len();
        }
        assert_eq!(self.cols, row.len());
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        FpMatrix::new(rows.len(), cols.len(), data)
    }

    /// Rank by fraction-free elimination: rows below the pivot are replaced
    /// by `pivot * row - lead * pivot_row`, so no inverses are taken.
    pub fn rank(&self, field: Fp) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot_row) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pivot_row != rank {
                for c in 0..cols {
                    m.swap(pivot_row * cols + c, rank * cols + c);
                }
            }
            let pivot = m[rank * cols + col];
            for r in rank + 1..rows {
                let lead = m[r * cols + col];
                if lead == 0 {
                    continue;
                }
                for c in col..cols {
                    let a = field.mul(pivot, m[r * cols + c]);
                    let b = field.mul(lead, m[rank * cols + c]);
                    m[r * cols + c] = field.sub(a, b);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self, field: Fp) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if pivot_row != col {
                for c in 0..n {
                    m.swap(pivot_row * n + c, col * n + c);
                }
                det = field.neg(det);
            }
            let pivot = m[col * n + col];
            det = field.mul(det, pivot);
            let inv = field.inv(pivot);
            for r in col + 1..n {
                let factor = field.mul(m[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = field.mul(factor, m[col * n + c]);
                    m[r * n + c] = field.sub(m[r * n + c], v);
                }
            }
        }
        det
    }
}

/// Rank over the prime field of `config`.
pub fn rank_mod_p(matrix: &FpMatrix, config: &FieldConfig) -> Result<usize> {
    if !is_prime(config.p) || config.p >= MAX_PRIME {
        return Err(Error::BadModulus(config.p));
    }
    Ok(matrix.rank(config.field()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Textbook Gauss–Jordan with inverses; independent of the
    /// fraction-free path above.
    fn naive_rank(m: &FpMatrix, f: Fp) -> usize {
        let (rows, cols) = m.shape();
        let mut a: Vec<Vec<u64>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) {
                a.swap(rank, p);
                let inv = f.inv(a[rank][c]);
                for x in a[rank].iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for r in 0..rows {
                    if r != rank && a[r][c] != 0 {
                        let factor = a[r][c];
                        for k in 0..cols {
                            let v = f.mul(factor, a[rank][k]);
                            a[r][k] = f.sub(a[r][k], v);
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(1_000_003));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(DEFAULT_PRIME * 3));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn config_validation() {
        assert!(FieldConfig::new(DEFAULT_PRIME, 0, 3).is_ok());
        assert!(matches!(FieldConfig::new(1_000_001, 0, 3), Err(Error::BadModulus(_))));
        assert!(FieldConfig::new(101, 0, 3).is_err());
        let bad = FieldConfig { p: 1_000_001, seed: 0, trials: 1 };
        assert!(rank_mod_p(&FpMatrix::identity(2), &bad).is_err());
    }

    #[test]
    fn identity_rank() {
        let cfg = FieldConfig::default();
        assert_eq!(rank_mod_p(&FpMatrix::identity(7), &cfg).unwrap(), 7);
        assert_eq!(FpMatrix::zeros(3, 4).rank(cfg.field()), 0);
        assert_eq!(FpMatrix::zeros(0, 0).rank(cfg.field()), 0);
    }

    #[test]
    fn random_wide_matrix_full_rank() {
        // P(rank < 4) <= 4/p by Schwartz–Zippel on a 4x4 minor
        let f = FieldConfig::default().field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let data = (0..24).map(|_| f.random(&mut rng)).collect();
            assert_eq!(FpMatrix::new(4, 6, data).rank(f), 4);
        }
    }

    #[test]
    fn rank_agrees_with_naive_oracle() {
        let f = Fp { p: 1_000_003 };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let r = rng.gen_range(0..=12);
            let c = rng.gen_range(0..=12);
            let k = rng.gen_range(0..=r.min(c).max(1));
            // product of random r x k and k x c gives rank <= k
            let left: Vec<u64> = (0..r * k).map(|_| f.random(&mut rng)).collect();
            let right: Vec<u64> = (0..k * c).map(|_| f.random(&mut rng)).collect();
            let mut data = vec![0u64; r * c];
            for i in 0..r {
                for j in 0..c {
                    let mut acc = 0;
                    for t in 0..k {
                        acc = f.add(acc, f.mul(left[i * k + t], right[t * c + j]));
                    }
                    data[i * c + j] = acc;
                }
            }
            let m = FpMatrix::new(r, c, data);
            assert_eq!(m.rank(f), naive_rank(&m, f));
        }
    }

    #[test]
    fn determinant_small() {
        let f = Fp { p: DEFAULT_PRIME };
        let m = FpMatrix::from_rows(vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det(f), 0);
        let m = FpMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(f), f.neg(1));
        assert_eq!(f.from_i64(-3), DEFAULT_PRIME - 3);
    }
}
