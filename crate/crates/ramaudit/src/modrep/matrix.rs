//! Dense matrices over small prime fields, sized for brute-force
//! searches in `GL_n(F_q)` with `q ∈ {2, 3}` and `n ≤ 8`.

use crate::{Error, Result};

/// A square matrix over the prime field `F_p`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpMat {
    p: u8,
    n: usize,
    a: Vec<u8>,
}

impl FpMat {
    pub fn new(p: u8, n: usize, entries: Vec<u8>) -> Result<Self> {
        if !crate::exact::is_prime_u64(p as u64) {
            return Err(Error::Domain(format!("matrix modulus {p} is not prime")));
        }
        if n == 0 || n > 8 {
            return Err(Error::Domain(format!(
                "matrix dimension {n} out of the supported range 1..=8"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::Invalid(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e >= p) {
            return Err(Error::Invalid(format!("matrix entries must lie in 0..{p}")));
        }
        Ok(FpMat { p, n, a: entries })
    }

    pub fn identity(p: u8, n: usize) -> Result<Self> {
        let mut a = vec![0u8; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        FpMat::new(p, n, a)
    }

    pub fn zero(p: u8, n: usize) -> Result<Self> {
        FpMat::new(p, n, vec![0u8; n * n])
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.a[i * self.n + j]
    }

    pub fn entries(&self) -> &[u8] {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        self.a
            .iter()
            .enumerate()
            .all(|(k, &e)| e == u8::from(k / self.n == k % self.n))
    }

    fn assert_compatible(&self, other: &FpMat) {
        assert_eq!(self.p, other.p, "mixed moduli");
        assert_eq!(self.n, other.n, "mixed dimensions");
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        self.assert_compatible(other);
        let n = self.n;
        let p = self.p as u16;
        let mut a = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let lik = self.a[i * n + k] as u16;
                if lik == 0 {
                    continue;
                }
                for j in 0..n {
                    let cur = a[i * n + j] as u16;
                    a[i * n + j] = ((cur + lik * other.a[k * n + j] as u16) % p) as u8;
                }
            }
        }
        FpMat { p: self.p, n, a }
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        self.assert_compatible(other);
        let p = self.p as u16;
        let a = self
            .a
            .iter()
            .zip(other.a.iter())
            .map(|(&x, &y)| ((x as u16 + y as u16) % p) as u8)
            .collect();
        FpMat { p: self.p, n: self.n, a }
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        self.assert_compatible(other);
        let p = self.p as u16;
        let a = self
            .a
            .iter()
            .zip(other.a.iter())
            .map(|(&x, &y)| ((x as u16 + p - y as u16) % p) as u8)
            .collect();
        FpMat { p: self.p, n: self.n, a }
    }

    pub fn pow(&self, mut e: u64) -> FpMat {
        let mut base = self.clone();
        let mut acc = FpMat::identity(self.p, self.n).expect("valid identity");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> u8 {
        let mut t = 0u16;
        for i in 0..self.n {
            t = (t + self.a[i * self.n + i] as u16) % self.p as u16;
        }
        t as u8
    }

    /// Trace lifted to the symmetric range, e.g. 2 over F₃ prints as −1.
    pub fn trace_signed(&self) -> i8 {
        let t = self.trace() as i8;
        if t as u16 > (self.p as u16) / 2 {
            t - self.p as i8
        } else {
            t
        }
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.n, "vector dimension mismatch");
        let p = self.p as u16;
        (0..self.n)
            .map(|i| {
                let mut acc = 0u16;
                for j in 0..self.n {
                    acc = (acc + self.a[i * self.n + j] as u16 * v[j] as u16) % p;
                }
                acc as u8
            })
            .collect()
    }

    /// Row-reduces a copy and returns the rank.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.p, self.n, {
            let mut rows = Vec::with_capacity(self.n);
            for i in 0..self.n {
                rows.push(self.a[i * self.n..(i + 1) * self.n].to_vec());
            }
            rows
        })
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<FpMat> {
        let n = self.n;
        let p = self.p as i64;
        let mut aug: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut row: Vec<i64> =
                    self.a[i * n..(i + 1) * n].iter().map(|&x| x as i64).collect();
                row.extend((0..n).map(|j| i64::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| aug[r][col] % p != 0)
                .ok_or_else(|| Error::Domain("matrix is singular".into()))?;
            aug.swap(col, pivot);
            let inv_p = mod_inverse(aug[col][col], p);
            for x in aug[col].iter_mut() {
                *x = (*x * inv_p).rem_euclid(p);
            }
            for r in 0..n {
                if r != col && aug[r][col] != 0 {
                    let factor = aug[r][col];
                    for c in 0..2 * n {
                        aug[r][c] = (aug[r][c] - factor * aug[col][c]).rem_euclid(p);
                    }
                }
            }
        }
        let entries = (0..n)
            .flat_map(|i| aug[i][n..2 * n].iter().map(|&x| x as u8).collect::<Vec<_>>())
            .collect();
        FpMat::new(self.p, n, entries)
    }

    /// Multiplicative order; errors if the matrix is singular.
    pub fn order(&self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::Domain("singular matrix has no order".into()));
        }
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            acc = acc.mul(self);
            k += 1;
            if k > 1 << 20 {
                return Err(Error::Invariant("order search did not terminate".into()));
            }
        }
        Ok(k)
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // p is a small prime; Fermat.
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn rank_of_rows(p: u8, width: usize, mut rows: Vec<Vec<u8>>) -> usize {
    let p = p as i64;
    let mut rank = 0usize;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col] as i64, p);
        for c in 0..width {
            rows[rank][c] = ((rows[rank][c] as i64 * inv).rem_euclid(p)) as u8;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col] as i64;
                for c in 0..width {
                    rows[r][c] =
                        ((rows[r][c] as i64 - factor * rows[rank][c] as i64).rem_euclid(p)) as u8;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of an arbitrary stack of row vectors over `F_p` (used for
/// common fixed spaces, images and sums of subspaces).
pub fn rows_rank(p: u8, width: usize, rows: &[Vec<u8>]) -> usize {
    rank_of_rows(p, width, rows.to_vec())
}

/// All of `GL_2(F_q)`, identity first, the rest in row-major
/// lexicographic order of entries.
pub fn gl2_elements(q: u8) -> Result<Vec<FpMat>> {
    if !crate::exact::is_prime_u64(q as u64) {
        return Err(Error::Domain(format!("{q} is not prime")));
    }
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let det = (a as i32 * d as i32 - b as i32 * c as i32).rem_euclid(q as i32);
                    if det != 0 {
                        out.push(FpMat::new(q, 2, vec![a, b, c, d])?);
                    }
                }
            }
        }
    }
    let id_pos = out
        .iter()
        .position(FpMat::is_identity)
        .expect("GL2 contains the identity");
    out.swap(0, id_pos);
    Ok(out)
}
