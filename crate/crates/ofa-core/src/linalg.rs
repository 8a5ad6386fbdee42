//! Diagonal reduction of matrices over `Z/N`.
//!
//! Row and column operations are unimodular over `Z`, so they stay invertible
//! modulo `N`. Column operations are tracked so kernels and particular
//! solutions can be read off the diagonal form.

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extended gcd on signed integers: returns (g, s, t) with s*a + t*b = g.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

fn md(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// A unit `u` with `u * p == gcd(p, n) (mod n)`.
fn normalizing_unit(p: u64, n: u64) -> u64 {
    let g = gcd(p, n);
    let n2 = n / g;
    let p2 = (p / g) % n2;
    let inv = if n2 == 1 {
        0
    } else {
        let (_, s, _) = ext_gcd(p2 as i128, n2 as i128);
        md(s, n2)
    };
    for t in 0..g.max(1) {
        let u = (inv + t * n2) % n;
        if gcd(u, n) == 1 {
            return u;
        }
    }
    1
}

/// Result of reducing `A` (rows x cols) modulo `n`.
pub struct Reduced {
    pub n: u64,
    pub cols: usize,
    /// Pivots `d_k` at position (k, k) for k < rank; each divides `n`.
    pub diag: Vec<u64>,
    /// Column transform: `A V = U^{-1} D`.
    pub v: Vec<Vec<u64>>,
    /// Right-hand sides after row operations.
    pub rhs: Vec<Vec<u64>>,
}

/// Reduce `a` to diagonal form, carrying right-hand sides `rhs` (each of length rows).
pub fn reduce(a: &[Vec<u64>], cols: usize, n: u64, rhs: &[Vec<u64>]) -> Reduced {
    let rows = a.len();
    let extra = rhs.len();
    let width = cols + extra;
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|x| x % n).collect();
            row.resize(cols, 0);
            for b in rhs {
                row.push(b[i] % n);
            }
            row
        })
        .collect();
    let mut v: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut diag = Vec::new();
    let limit = rows.min(cols);
    for k in 0..limit {
        // pivot with the smallest gcd against n
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().take(cols).skip(k) {
                if x != 0 {
                    let g = gcd(x, n);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
            if let Some((1, _, _)) = best {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            for row in v.iter_mut() {
                row.swap(k, pj);
            }
        }
        loop {
            let u = normalizing_unit(m[k][k], n);
            if u != 1 {
                for x in m[k].iter_mut() {
                    *x = ((*x as u128 * u as u128) % n as u128) as u64;
                }
            }
            for i in k + 1..rows {
                if m[i][k] != 0 {
                    row_eliminate(&mut m, k, i, k, n, width);
                }
            }
            for j in k + 1..cols {
                if m[k][j] != 0 {
                    col_eliminate(&mut m, &mut v, k, j, n);
                }
            }
            if (k + 1..rows).all(|i| m[i][k] == 0) && (k + 1..cols).all(|j| m[k][j] == 0) {
                break;
            }
        }
        let u = normalizing_unit(m[k][k], n);
        if u != 1 {
            for x in m[k].iter_mut() {
                *x = ((*x as u128 * u as u128) % n as u128) as u64;
            }
        }
        diag.push(m[k][k]);
    }
    let rhs_out = (0..extra)
        .map(|e| m.iter().map(|r| r[cols + e]).collect())
        .collect();
    Reduced { n, cols, diag, v, rhs: rhs_out }
}

fn row_eliminate(m: &mut [Vec<u64>], k: usize, i: usize, c: usize, n: u64, width: usize) {
    let p = m[k][c];
    let a = m[i][c];
    if p != 0 && a.is_multiple_of(p) {
        let q = a / p;
        for j in 0..width {
            let t = (m[k][j] as u128 * q as u128) % n as u128;
            m[i][j] = ((m[i][j] as u128 + n as u128 - t) % n as u128) as u64;
        }
        return;
    }
    let (h, s, t) = ext_gcd(p as i128, a as i128);
    let (ph, ah) = (p as i128 / h, a as i128 / h);
    for j in 0..width {
        let x = m[k][j] as i128;
        let y = m[i][j] as i128;
        m[k][j] = md(s * x + t * y, n);
        m[i][j] = md(-ah * x + ph * y, n);
    }
}

fn col_eliminate(m: &mut [Vec<u64>], v: &mut [Vec<u64>], k: usize, j: usize, n: u64) {
    let p = m[k][k];
    let a = m[k][j];
    if p != 0 && a.is_multiple_of(p) {
        let q = a / p;
        let sub = |x: u64, y: u64| -> u64 {
            let t = (x as u128 * q as u128) % n as u128;
            ((y as u128 + n as u128 - t) % n as u128) as u64
        };
        for row in m.iter_mut() {
            row[j] = sub(row[k], row[j]);
        }
        for row in v.iter_mut() {
            row[j] = sub(row[k], row[j]);
        }
        return;
    }
    let (h, s, t) = ext_gcd(p as i128, a as i128);
    let (ph, ah) = (p as i128 / h, a as i128 / h);
    let apply = |row: &mut Vec<u64>| {
        let x = row[k] as i128;
        let y = row[j] as i128;
        row[k] = md(s * x + t * y, n);
        row[j] = md(-ah * x + ph * y, n);
    };
    for row in m.iter_mut() {
        apply(row);
    }
    for row in v.iter_mut() {
        apply(row);
    }
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Generators of the kernel of `A` acting on `(Z/n)^cols`.
    pub fn kernel_generators(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut gens = Vec::new();
        for k in 0..self.cols {
            let scale = if k < self.diag.len() { n / self.diag[k] } else { 1 };
            if scale == n {
                continue;
            }
            let col: Vec<u64> = self
                .v
                .iter()
                .map(|row| ((row[k] as u128 * scale as u128) % n as u128) as u64)
                .collect();
            if col.iter().any(|&x| x != 0) {
                gens.push(col);
            }
        }
        gens
    }

    /// Size of the kernel on `(Z/n)^cols` as a product of cyclic orders.
    pub fn kernel_size(&self) -> u128 {
        let mut size: u128 = 1;
        for k in 0..self.cols {
            let g = if k < self.diag.len() { self.diag[k] } else { self.n };
            size *= g as u128;
        }
        size
    }

    /// A solution of `A x = rhs[idx]`, if one exists.
    pub fn particular(&self, idx: usize) -> Option<Vec<u64>> {
        let n = self.n;
        let b = &self.rhs[idx];
        let mut y = vec![0u64; self.cols];
        for (k, &d) in self.diag.iter().enumerate() {
            if !b[k].is_multiple_of(d) {
                return None;
            }
            y[k] = b[k] / d;
        }
        if b.iter().skip(self.diag.len()).any(|&x| x != 0) {
            return None;
        }
        Some(
            self.v
                .iter()
                .map(|row| {
                    let mut acc: u128 = 0;
                    for (a, b) in row.iter().zip(&y) {
                        acc = (acc + *a as u128 * *b as u128) % n as u128;
                    }
                    acc as u64
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(a: &[Vec<u64>], x: &[u64], n: u64) -> Vec<u64> {
        a.iter()
            .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum::<u64>() % n)
            .collect()
    }

    #[test]
    fn kernel_of_two_times_mod_six() {
        let r = reduce(&[vec![2]], 1, 6, &[]);
        let gens = r.kernel_generators();
        assert_eq!(gens, vec![vec![3]]);
        assert_eq!(r.kernel_size(), 2);
    }

    #[test]
    fn kernel_generators_are_in_kernel() {
        let a = vec![vec![2, 4, 1], vec![3, 0, 3], vec![1, 1, 1]];
        let r = reduce(&a, 3, 12, &[]);
        for g in r.kernel_generators() {
            assert!(apply(&a, &g, 12).iter().all(|&x| x == 0));
        }
        // brute force size
        let mut count = 0;
        for x in 0..12 {
            for y in 0..12 {
                for z in 0..12 {
                    if apply(&a, &[x, y, z], 12).iter().all(|&v| v == 0) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(r.kernel_size(), count);
    }

    #[test]
    fn solve_finds_solution_or_none() {
        let a = vec![vec![2, 0], vec![0, 3]];
        let r = reduce(&a, 2, 6, &[vec![4, 3], vec![1, 0]]);
        let x = r.particular(0).unwrap();
        assert_eq!(apply(&a, &x, 6), vec![4, 3]);
        assert!(r.particular(1).is_none());
    }
}
