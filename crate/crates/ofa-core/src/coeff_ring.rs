//! Finite commutative coefficient rings.
//!
//! Every ring is presented by a `Z`-basis with per-coordinate moduli and
//! integer structure constants. Elements are packed into `u32` codes
//! (mixed radix over the coordinates) so higher layers can treat them as
//! plain `Copy` values.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{structural, OfaError, Result};
use crate::linalg;

/// Packed ring element.
pub type El = u32;

pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;
const TABLE_LIMIT: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    #[serde(rename = "zmod")]
    ZMod(u64),
    #[serde(rename = "gf")]
    GaloisField { p: u64, modulus: Vec<u64> },
    /// `base[x] / (modulus)`; coefficients listed from degree 0, each as base coordinates.
    #[serde(rename = "polyquot")]
    PolyQuotient { base: Box<RingSpec>, modulus: Vec<Vec<u64>> },
    #[serde(rename = "product")]
    Product(Vec<RingSpec>),
}

/// Canonical coordinates of an element, for display and JSON.
pub type RingElem = Vec<u64>;

struct RingData {
    spec: RingSpec,
    moduli: Vec<u64>,
    weights: Vec<u64>,
    size: u64,
    /// `structure[i * d + j]` = coordinates of `b_i * b_j`.
    structure: Vec<Vec<u64>>,
    one: Vec<u64>,
    characteristic: u64,
    add_tab: OnceLock<Vec<El>>,
    mul_tab: OnceLock<Vec<El>>,
    neg_tab: OnceLock<Vec<El>>,
}

#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl std::fmt::Debug for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ring({:?})", self.0.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Ring {}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Multiply two polynomials over `Z/p` and reduce by a monic modulus.
fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for e in (d..prod.len()).rev() {
        let c = prod[e];
        if c != 0 {
            for k in 0..d {
                prod[e - d + k] = (prod[e - d + k] + (p - c) * f[k] % p) % p;
            }
            prod[e] = 0;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=d/2
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = a.to_vec();
    for e in (dg..r.len()).rev() {
        let c = r[e];
        if c != 0 {
            for k in 0..=dg {
                r[e - dg + k] = (r[e - dg + k] + (p - c) * g[k] % p) % p;
            }
        }
    }
    r.truncate(dg);
    r
}

struct Presentation {
    moduli: Vec<u64>,
    structure: Vec<Vec<u64>>,
    one: Vec<u64>,
}

fn coord_mul(pr: &Presentation, x: &[u64], y: &[u64]) -> Vec<u64> {
    let d = pr.moduli.len();
    let mut out = vec![0u64; d];
    for i in 0..d {
        if x[i] == 0 {
            continue;
        }
        for j in 0..d {
            if y[j] == 0 {
                continue;
            }
            let s = &pr.structure[i * d + j];
            for k in 0..d {
                if s[k] != 0 {
                    out[k] = ((out[k] as u128 + x[i] as u128 * y[j] as u128 * s[k] as u128)
                        % pr.moduli[k] as u128) as u64;
                }
            }
        }
    }
    out
}

fn present(spec: &RingSpec) -> Result<Presentation> {
    match spec {
        RingSpec::ZMod(m) => {
            if *m < 1 {
                return structural("modulus must be at least 1");
            }
            Ok(Presentation { moduli: vec![*m], structure: vec![vec![1 % m]], one: vec![1 % m] })
        }
        RingSpec::GaloisField { p, modulus } => {
            let p = *p;
            if p < 2 || (2..p).take_while(|q| q * q <= p).any(|q| p % q == 0) {
                return structural(format!("{p} is not prime"));
            }
            if modulus.len() < 2 || *modulus.last().unwrap() % p != 1 {
                return structural("GF modulus must be monic of degree >= 1");
            }
            let f: Vec<u64> = modulus.iter().map(|c| c % p).collect();
            if !is_irreducible(&f, p) {
                return structural(format!("modulus {f:?} is reducible over F_{p}"));
            }
            let d = f.len() - 1;
            let mut structure = Vec::with_capacity(d * d);
            for i in 0..d {
                for j in 0..d {
                    let mut a = vec![0u64; i + 1];
                    a[i] = 1;
                    let mut b = vec![0u64; j + 1];
                    b[j] = 1;
                    structure.push(poly_mulmod(&a, &b, &f, p));
                }
            }
            let mut one = vec![0u64; d];
            one[0] = 1;
            Ok(Presentation { moduli: vec![p; d], structure, one })
        }
        RingSpec::PolyQuotient { base, modulus } => {
            let b = present(base)?;
            let db = b.moduli.len();
            if modulus.len() < 2 {
                return structural("polynomial modulus must have degree >= 1");
            }
            let f: Vec<Vec<u64>> = modulus
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.resize(db, 0);
                    c.iter().zip(&b.moduli).map(|(x, m)| x % m).collect()
                })
                .collect();
            if *f.last().unwrap() != b.one {
                return structural("polynomial modulus must be monic");
            }
            let d = f.len() - 1;
            // x^e for e < 2d - 1 as base-coefficient vectors
            let mut powers: Vec<Vec<Vec<u64>>> = Vec::new();
            for e in 0..(2 * d).max(1) {
                if e < d {
                    let mut v = vec![vec![0u64; db]; d];
                    v[e] = b.one.clone();
                    powers.push(v);
                } else {
                    // x^e = x * x^{e-1}; shift then reduce the x^d term by -f
                    let prev = &powers[e - 1];
                    let top = prev[d - 1].clone();
                    let mut v = vec![vec![0u64; db]; d];
                    for k in 1..d {
                        v[k] = prev[k - 1].clone();
                    }
                    for k in 0..d {
                        let t = coord_mul(&b, &top, &f[k]);
                        for s in 0..db {
                            v[k][s] = (v[k][s] + b.moduli[s] - t[s]) % b.moduli[s];
                        }
                    }
                    powers.push(v);
                }
            }
            let dim = d * db;
            let mut moduli = Vec::with_capacity(dim);
            for _ in 0..d {
                moduli.extend_from_slice(&b.moduli);
            }
            let mut structure = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    let (ki, si) = (i / db, i % db);
                    let (kj, sj) = (j / db, j % db);
                    let bb = &b.structure[si * db + sj];
                    let pw = &powers[ki + kj];
                    let mut out = vec![0u64; dim];
                    for k in 0..d {
                        let t = coord_mul(&b, &pw[k], bb);
                        out[k * db..(k + 1) * db].copy_from_slice(&t);
                    }
                    structure.push(out);
                }
            }
            let mut one = vec![0u64; dim];
            one[..db].copy_from_slice(&b.one);
            Ok(Presentation { moduli, structure, one })
        }
        RingSpec::Product(parts) => {
            if parts.is_empty() {
                return structural("empty product");
            }
            let ps: Vec<Presentation> = parts.iter().map(present).collect::<Result<_>>()?;
            let dim: usize = ps.iter().map(|p| p.moduli.len()).sum();
            let mut moduli = Vec::with_capacity(dim);
            let mut one = Vec::with_capacity(dim);
            let mut offsets = Vec::new();
            for p in &ps {
                offsets.push(moduli.len());
                moduli.extend_from_slice(&p.moduli);
                one.extend_from_slice(&p.one);
            }
            let mut structure = vec![vec![0u64; dim]; dim * dim];
            for (p, &off) in ps.iter().zip(&offsets) {
                let dp = p.moduli.len();
                for i in 0..dp {
                    for j in 0..dp {
                        let s = &p.structure[i * dp + j];
                        structure[(off + i) * dim + off + j][off..off + dp].copy_from_slice(s);
                    }
                }
            }
            Ok(Presentation { moduli, structure, one })
        }
    }
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let pr = present(&spec)?;
        let mut weights = Vec::with_capacity(pr.moduli.len());
        let mut size: u128 = 1;
        for m in &pr.moduli {
            weights.push(size as u64);
            size *= *m as u128;
        }
        if size > u32::MAX as u128 {
            return Err(OfaError::Capacity { what: "ring".into(), size, cap: u32::MAX as u128 });
        }
        let characteristic = pr.moduli.iter().fold(1, |a, &m| lcm(a, m));
        Ok(Ring(Arc::new(RingData {
            spec,
            moduli: pr.moduli,
            weights,
            size: size as u64,
            structure: pr.structure,
            one: pr.one,
            characteristic,
            add_tab: OnceLock::new(),
            mul_tab: OnceLock::new(),
            neg_tab: OnceLock::new(),
        })))
    }

    pub fn zmod(m: u64) -> Ring {
        Ring::new(RingSpec::ZMod(m)).expect("valid modulus")
    }

    /// `F_p` for `k = 1`, otherwise `F_{p^k}` with a fixed irreducible modulus (k <= 2).
    pub fn gf(p: u64, k: usize) -> Ring {
        match k {
            1 => Ring::zmod(p),
            2 => Ring::new(RingSpec::GaloisField { p, modulus: quadratic_irreducible(p) })
                .expect("irreducible"),
            _ => panic!("only degrees 1 and 2 have built-in moduli"),
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }
    pub fn size(&self) -> u64 {
        self.0.size
    }
    pub fn dim(&self) -> usize {
        self.0.moduli.len()
    }
    pub fn moduli(&self) -> &[u64] {
        &self.0.moduli
    }
    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn encode(&self, coords: &[u64]) -> El {
        let mut code: u64 = 0;
        for ((c, w), m) in coords.iter().zip(&self.0.weights).zip(&self.0.moduli) {
            code += (c % m) * w;
        }
        code as El
    }

    pub fn decode(&self, x: El) -> Vec<u64> {
        let mut x = x as u64;
        self.0
            .moduli
            .iter()
            .map(|m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect()
    }

    pub fn zero(&self) -> El {
        0
    }
    pub fn one(&self) -> El {
        self.encode(&self.0.one)
    }
    pub fn from_int(&self, k: i64) -> El {
        let one = self.0.one.clone();
        let coords: Vec<u64> = one
            .iter()
            .zip(&self.0.moduli)
            .map(|(c, m)| ((*c as i128 * k as i128).rem_euclid(*m as i128)) as u64)
            .collect();
        self.encode(&coords)
    }

    fn add_raw(&self, x: El, y: El) -> El {
        let (mut a, mut b) = (x as u64, y as u64);
        let mut out: u64 = 0;
        for (m, w) in self.0.moduli.iter().zip(&self.0.weights) {
            out += ((a % m + b % m) % m) * w;
            a /= m;
            b /= m;
        }
        out as El
    }

    fn mul_raw(&self, x: El, y: El) -> El {
        let a = self.decode(x);
        let b = self.decode(y);
        let d = self.dim();
        let mut out = vec![0u64; d];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                if b[j] == 0 {
                    continue;
                }
                let s = &self.0.structure[i * d + j];
                for k in 0..d {
                    if s[k] != 0 {
                        out[k] = ((out[k] as u128 + a[i] as u128 * b[j] as u128 * s[k] as u128)
                            % self.0.moduli[k] as u128) as u64;
                    }
                }
            }
        }
        self.encode(&out)
    }

    fn tables(&self) -> Option<(&Vec<El>, &Vec<El>)> {
        if self.0.size > TABLE_LIMIT {
            return None;
        }
        let n = self.0.size as usize;
        let add = self.0.add_tab.get_or_init(|| {
            let mut t = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = self.add_raw(x as El, y as El);
                }
            }
            t
        });
        let mul = self.0.mul_tab.get_or_init(|| {
            let mut t = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = self.mul_raw(x as El, y as El);
                }
            }
            t
        });
        Some((add, mul))
    }

    #[inline]
    pub fn add(&self, x: El, y: El) -> El {
        match self.tables() {
            Some((a, _)) => a[x as usize * self.0.size as usize + y as usize],
            None => self.add_raw(x, y),
        }
    }

    #[inline]
    pub fn mul(&self, x: El, y: El) -> El {
        if x == 0 || y == 0 {
            return 0;
        }
        match self.tables() {
            Some((_, m)) => m[x as usize * self.0.size as usize + y as usize],
            None => self.mul_raw(x, y),
        }
    }

    fn neg_raw(&self, x: El) -> El {
        let c: Vec<u64> =
            self.decode(x).iter().zip(&self.0.moduli).map(|(c, m)| (m - c) % m).collect();
        self.encode(&c)
    }

    pub fn neg(&self, x: El) -> El {
        if x == 0 {
            return 0;
        }
        if self.0.size > TABLE_LIMIT {
            return self.neg_raw(x);
        }
        self.0.neg_tab.get_or_init(|| (0..self.0.size as El).map(|y| self.neg_raw(y)).collect())[x as usize]
    }

    pub fn sub(&self, x: El, y: El) -> El {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: El, e: u64) -> El {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(r, x);
        }
        r
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: i64, x: El) -> El {
        match k {
            1 => x,
            -1 => self.neg(x),
            _ => self.mul(self.from_int(k), x),
        }
    }

    /// `op` names: "add", "mul", "neg" (unary, `y` ignored).
    pub fn arith(&self, op: &str, x: El, y: El) -> Result<El> {
        match op {
            "add" => Ok(self.add(x, y)),
            "mul" => Ok(self.mul(x, y)),
            "neg" => Ok(self.neg(x)),
            _ => structural(format!("unknown ring operation {op}")),
        }
    }

    pub fn contains(&self, x: El) -> bool {
        (x as u64) < self.0.size
    }

    pub fn elements(&self) -> impl Iterator<Item = El> {
        0..self.0.size as El
    }

    pub fn enumerate(&self, cap: u64) -> Result<Vec<El>> {
        if self.0.size > cap {
            return Err(OfaError::Capacity {
                what: format!("ring {:?}", self.0.spec),
                size: self.0.size as u128,
                cap: cap as u128,
            });
        }
        Ok(self.elements().collect())
    }

    /// Elements of the canonical Z-basis.
    pub fn z_basis(&self) -> Vec<El> {
        (0..self.dim())
            .map(|i| {
                let mut c = vec![0u64; self.dim()];
                c[i] = 1;
                self.encode(&c)
            })
            .collect()
    }

    /// Inverse by solving `x * y = 1` over the Z-basis.
    pub fn try_invert(&self, x: El) -> Option<El> {
        let y = solve(self, 1, 1, |v| vec![self.mul(x, v[0])], &[self.one()])?;
        debug_assert_eq!(self.mul(x, y[0]), self.one());
        Some(y[0])
    }

    pub fn is_unit(&self, x: El) -> bool {
        self.try_invert(x).is_some()
    }

    pub fn units(&self) -> Vec<El> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    /// Whether 2 is a non-zero-divisor.
    pub fn two_regular(&self) -> bool {
        let two = self.from_int(2);
        self.elements().all(|x| x == 0 || self.mul(two, x) != 0)
    }

    pub fn idempotents(&self, cap: u64) -> Result<Vec<El>> {
        Ok(self.enumerate(cap)?.into_iter().filter(|&e| self.mul(e, e) == e).collect())
    }

    /// `e * f = e + f - 2ef`.
    pub fn idem_op(&self, e: El, f: El) -> El {
        let ef = self.mul(e, f);
        self.sub(self.add(e, f), self.scale(2, ef))
    }

    pub fn elem(&self, x: El) -> RingElem {
        self.decode(x)
    }

    pub fn show(&self, x: El) -> String {
        let c = self.decode(x);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            format!("{c:?}")
        }
    }
}

/// A fixed monic irreducible quadratic over `F_p`.
pub fn quadratic_irreducible(p: u64) -> Vec<u64> {
    for b in 0..p {
        for c in 0..p {
            let f = vec![c, b, 1];
            if is_irreducible(&f, p) {
                // prefer x^2 + x + 1 / x^2 + 1 style moduli with small coefficients
                return f;
            }
        }
    }
    unreachable!("a quadratic irreducible exists for every prime")
}

/// Idempotent group with verification of the group law.
pub fn idempotent_group(ring: &Ring, cap: u64) -> Result<Vec<El>> {
    let idem = ring.idempotents(cap)?;
    for &e in &idem {
        if ring.idem_op(e, e) != 0 || ring.idem_op(e, 0) != e {
            return Err(OfaError::Structural("idempotent law failed".into()));
        }
        for &f in &idem {
            let ef = ring.idem_op(e, f);
            if !idem.contains(&ef) || ef != ring.idem_op(f, e) {
                return Err(OfaError::Structural("idempotent law failed".into()));
            }
        }
    }
    Ok(idem)
}

/// Build the Z/N matrix of an additive map `K^nin -> K^nout`.
fn z_matrix(ring: &Ring, nin: usize, nout: usize, f: &dyn Fn(&[El]) -> Vec<El>) -> Vec<Vec<u64>> {
    let d = ring.dim();
    let n = ring.characteristic();
    let basis = ring.z_basis();
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(nin * d);
    for v in 0..nin {
        for &b in &basis {
            let mut x = vec![0; nin];
            x[v] = b;
            let y = f(&x);
            let mut col = Vec::with_capacity(nout * d);
            for &w in y.iter().take(nout) {
                for (c, m) in ring.decode(w).iter().zip(ring.moduli()) {
                    col.push(c * (n / m));
                }
            }
            cols.push(col);
        }
    }
    let rows = nout * d;
    (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

fn z_vector(ring: &Ring, v: &[El]) -> Vec<u64> {
    let n = ring.characteristic();
    let mut out = Vec::new();
    for &w in v {
        for (c, m) in ring.decode(w).iter().zip(ring.moduli()) {
            out.push(c * (n / m));
        }
    }
    out
}

fn from_z(ring: &Ring, nin: usize, x: &[u64]) -> Vec<El> {
    let d = ring.dim();
    (0..nin)
        .map(|v| {
            let coords: Vec<u64> = (0..d).map(|c| x[v * d + c] % ring.moduli()[c]).collect();
            ring.encode(&coords)
        })
        .collect()
}

/// Additive generators of the kernel of an additive map `K^nin -> K^nout`.
pub fn kernel(
    ring: &Ring,
    nin: usize,
    nout: usize,
    f: impl Fn(&[El]) -> Vec<El>,
) -> Vec<Vec<El>> {
    let a = z_matrix(ring, nin, nout, &f);
    let r = linalg::reduce(&a, nin * ring.dim(), ring.characteristic(), &[]);
    r.kernel_generators()
        .iter()
        .map(|g| from_z(ring, nin, g))
        .filter(|g| g.iter().any(|&x| x != 0))
        .collect()
}

/// Number of elements in the kernel of an additive map.
pub fn kernel_size(ring: &Ring, nin: usize, nout: usize, f: impl Fn(&[El]) -> Vec<El>) -> u128 {
    let a = z_matrix(ring, nin, nout, &f);
    let n = ring.characteristic();
    let r = linalg::reduce(&a, nin * ring.dim(), n, &[]);
    let lifted = r.kernel_size();
    let mut slack: u128 = 1;
    for _ in 0..nin {
        for m in ring.moduli() {
            slack *= (n / m) as u128;
        }
    }
    lifted / slack
}

/// Some `x` with `f(x) = target`, if any.
pub fn solve(
    ring: &Ring,
    nin: usize,
    nout: usize,
    f: impl Fn(&[El]) -> Vec<El>,
    target: &[El],
) -> Option<Vec<El>> {
    let a = z_matrix(ring, nin, nout, &f);
    let b = z_vector(ring, target);
    let r = linalg::reduce(&a, nin * ring.dim(), ring.characteristic(), &[b]);
    let x = from_z(ring, nin, &r.particular(0)?);
    if f(&x).as_slice() == target {
        Some(x)
    } else {
        None
    }
}

/// All elements of the additive subgroup generated by `gens` (vectors over `K`).
pub fn span_elements(ring: &Ring, len: usize, gens: &[Vec<El>], cap: usize) -> Result<Vec<Vec<El>>> {
    let mut seen = std::collections::BTreeSet::new();
    let zero = vec![0 as El; len];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<El> = x.iter().zip(g).map(|(a, b)| ring.add(*a, *b)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(OfaError::Capacity {
                        what: "span".into(),
                        size: seen.len() as u128,
                        cap: cap as u128,
                    });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Ring homomorphism given by images of the Z-basis.
#[derive(Clone, Debug)]
pub struct RingHom {
    pub src: Ring,
    pub dst: Ring,
    images: Vec<El>,
}

impl RingHom {
    pub fn new(src: &Ring, dst: &Ring, images: Vec<El>) -> Result<RingHom> {
        let h = RingHom { src: src.clone(), dst: dst.clone(), images };
        h.verify()?;
        Ok(h)
    }

    pub fn identity(r: &Ring) -> RingHom {
        RingHom { src: r.clone(), dst: r.clone(), images: r.z_basis() }
    }

    pub fn apply(&self, x: El) -> El {
        let mut acc = self.dst.zero();
        for (c, &img) in self.src.decode(x).iter().zip(&self.images) {
            if *c != 0 {
                acc = self.dst.add(acc, self.dst.scale(*c as i64, img));
            }
        }
        acc
    }

    pub fn compose(&self, after: &RingHom) -> RingHom {
        let images = self.images.iter().map(|&y| after.apply(y)).collect();
        RingHom { src: self.src.clone(), dst: after.dst.clone(), images }
    }

    fn verify(&self) -> Result<()> {
        for (i, (&img, m)) in self.images.iter().zip(self.src.moduli()).enumerate() {
            if self.dst.scale(*m as i64, img) != 0 {
                return structural(format!("basis image {i} is not annihilated by {m}"));
            }
        }
        if self.apply(self.src.one()) != self.dst.one() {
            return structural("homomorphism does not preserve 1");
        }
        let basis = self.src.z_basis();
        for &a in &basis {
            for &b in &basis {
                if self.apply(self.src.mul(a, b)) != self.dst.mul(self.apply(a), self.apply(b)) {
                    return structural("map is not multiplicative");
                }
            }
        }
        Ok(())
    }
}

/// A monogenic extension `E = K[x]/(f)` kept together with its tensor powers.
#[derive(Clone, Debug)]
pub struct Extension {
    pub base: Ring,
    pub modulus: Vec<El>,
    /// `E^{(t)} = E tensor_K ... (t factors)` for t = 1, 2, 3.
    pub towers: Vec<Ring>,
}

impl Extension {
    pub fn new(base: &Ring, ext: &Ring) -> Result<Extension> {
        let (bspec, modulus) = match ext.spec() {
            RingSpec::GaloisField { p, modulus } => (RingSpec::ZMod(*p), modulus.iter().map(|c| vec![*c]).collect::<Vec<_>>()),
            RingSpec::PolyQuotient { base, modulus } => ((**base).clone(), modulus.clone()),
            _ => return structural("extension must be a GF or polynomial quotient"),
        };
        if &bspec != base.spec() {
            return structural("extension base does not match");
        }
        let modulus_el: Vec<El> = modulus.iter().map(|c| base.encode(c)).collect();
        let mut towers = vec![ext.clone()];
        for _ in 1..3 {
            let prev = towers.last().unwrap().clone();
            let lifted: Vec<Vec<u64>> = modulus_el
                .iter()
                .map(|&c| prev.decode(embed_base(base, &prev, c)))
                .collect();
            towers.push(Ring::new(RingSpec::PolyQuotient {
                base: Box::new(prev.spec().clone()),
                modulus: lifted,
            })?);
        }
        Ok(Extension { base: base.clone(), modulus: modulus_el, towers })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn ext(&self) -> &Ring {
        &self.towers[0]
    }

    /// `K -> E`.
    pub fn inclusion(&self) -> RingHom {
        let e = self.ext();
        RingHom { src: self.base.clone(), dst: e.clone(), images: self.base.z_basis().iter().map(|&b| embed_base(&self.base, e, b)).collect() }
    }

    /// Hom from the `from`-fold tensor power to the `to`-fold one sending
    /// variable `i` to variable `sigma[i]`.
    pub fn tower_hom(&self, from: usize, to: usize, sigma: &[usize]) -> RingHom {
        let src = self.towers[from - 1].clone();
        let dst = self.towers[to - 1].clone();
        let d = self.degree();
        let db = self.base.dim();
        let vars: Vec<El> = (0..to).map(|j| self.var(to, j)).collect();
        let images = (0..src.dim())
            .map(|idx| {
                // idx = ((k_from * d + ...) * d + k_1) * db + s
                let s = idx % db;
                let mut rest = idx / db;
                let mut img = {
                    let mut c = vec![0u64; db];
                    c[s] = 1;
                    embed_base(&self.base, &dst, self.base.encode(&c))
                };
                for i in 0..from {
                    let k = rest % d;
                    rest /= d;
                    img = dst.mul(img, dst.pow(vars[sigma[i]], k as u64));
                }
                img
            })
            .collect();
        RingHom { src, dst, images }
    }

    /// Variable `j` (0-based) of the `t`-fold tensor power.
    pub fn var(&self, t: usize, j: usize) -> El {
        let r = &self.towers[t - 1];
        let d = self.degree();
        let db = self.base.dim();
        let mut c = vec![0u64; r.dim()];
        // variable j sits at stride db * d^j
        let stride = db * d.pow(j as u32);
        if d == 1 {
            return r.zero();
        }
        c[stride] = 1;
        r.encode(&c)
    }
}

/// Embed a base element into a tower ring whose low coordinates are the base.
fn embed_base(base: &Ring, tower: &Ring, x: El) -> El {
    let mut c = base.decode(x);
    c.resize(tower.dim(), 0);
    tower.encode(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod6_arithmetic() {
        let r = Ring::zmod(6);
        assert_eq!(r.mul(4, 5), 2);
        assert_eq!(r.try_invert(5), Some(5));
        assert_eq!(r.try_invert(2), None);
    }

    #[test]
    fn gf4_square_of_x() {
        let r = Ring::new(RingSpec::GaloisField { p: 2, modulus: vec![1, 1, 1] }).unwrap();
        let x = r.encode(&[0, 1]);
        assert_eq!(r.decode(r.mul(x, x)), vec![1, 1]);
        assert_eq!(r.enumerate(DEFAULT_ENUM_CAP).unwrap().len(), 4);
    }

    #[test]
    fn gf9_inverse_of_x() {
        let r = Ring::new(RingSpec::GaloisField { p: 3, modulus: vec![1, 0, 1] }).unwrap();
        let x = r.encode(&[0, 1]);
        assert_eq!(r.decode(r.try_invert(x).unwrap()), vec![0, 2]);
    }

    #[test]
    fn product_addition() {
        let r = Ring::new(RingSpec::Product(vec![RingSpec::ZMod(2), RingSpec::ZMod(3)])).unwrap();
        let a = r.encode(&[1, 2]);
        assert_eq!(r.decode(r.add(a, a)), vec![0, 1]);
        assert_eq!(idempotent_group(&r, 100).unwrap().len(), 4);
    }

    #[test]
    fn idempotents_of_zmod6() {
        let r = Ring::zmod(6);
        let mut e = idempotent_group(&r, 100).unwrap();
        e.sort();
        assert_eq!(e, vec![0, 1, 3, 4]);
        assert_eq!(r.idem_op(3, 4), 1);
    }

    #[test]
    fn reducible_gf_modulus_rejected() {
        assert!(Ring::new(RingSpec::GaloisField { p: 2, modulus: vec![1, 0, 1] }).is_err());
    }

    #[test]
    fn galois_ring_units() {
        let base = Ring::zmod(4);
        let r = Ring::new(RingSpec::PolyQuotient {
            base: Box::new(RingSpec::ZMod(4)),
            modulus: vec![vec![1], vec![1], vec![1]],
        })
        .unwrap();
        assert_eq!(r.size(), 16);
        // units are the elements not in the maximal ideal 2R
        assert_eq!(r.units().len(), 12);
        let _ = base;
    }

    #[test]
    fn tensor_square_maps_are_homs() {
        let k = Ring::zmod(2);
        let e = Ring::gf(2, 2);
        let ext = Extension::new(&k, &e).unwrap();
        assert_eq!(ext.towers[1].size(), 16);
        let i1 = ext.tower_hom(1, 2, &[0]);
        let i2 = ext.tower_hom(1, 2, &[1]);
        RingHom::new(&i1.src, &i1.dst, i1.images.clone()).unwrap();
        RingHom::new(&i2.src, &i2.dst, i2.images.clone()).unwrap();
        // equalizer of i1, i2 is the base field
        let eq: Vec<El> = e.elements().filter(|&x| i1.apply(x) == i2.apply(x)).collect();
        assert_eq!(eq.len(), 2);
    }
}
