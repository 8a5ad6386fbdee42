//! Involution algebras of the split classical families.
//!
//! Every family lives inside square matrices indexed by signed labels, so
//! elements are dense `L x L` coefficient arrays with zeros outside the
//! family's support. For the odd orthogonal family the product through the
//! middle label carries a factor of 2.

use serde::{Deserialize, Serialize};

use crate::coeff_ring::{self, El, Ring};
use crate::error::{structural, OfaError, Result};

pub const MAX_N: usize = 6;
pub const MAX_ODD_N: usize = 4;

/// A split classical family, parameterized by its hyperbolic rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Matrix size `2n`, block diagonal.
    Lin(usize),
    /// Matrix size `2n`.
    Symp(usize),
    /// Matrix size `2n`.
    OrthEven(usize),
    /// Matrix size `2n + 1`.
    OrthOdd(usize),
}

impl Family {
    pub fn n(self) -> usize {
        match self {
            Family::Lin(n) | Family::Symp(n) | Family::OrthEven(n) | Family::OrthOdd(n) => n,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Family::OrthOdd(_))
    }

    /// Size of the ambient matrices.
    pub fn size(self) -> usize {
        2 * self.n() + usize::from(self.is_odd())
    }

    pub fn name(self) -> String {
        match self {
            Family::Lin(n) => format!("lin({n})"),
            Family::Symp(n) => format!("symp({})", 2 * n),
            Family::OrthEven(n) => format!("orth({})", 2 * n),
            Family::OrthOdd(n) => format!("orth({})", 2 * n + 1),
        }
    }

    pub fn labels(self) -> Vec<i32> {
        let n = self.n() as i32;
        if self.is_odd() {
            (-n..=n).collect()
        } else {
            (-n..=n).filter(|&i| i != 0).collect()
        }
    }
}

pub fn eps(i: i32) -> i64 {
    if i > 0 {
        1
    } else {
        -1
    }
}

/// Dense algebra element: `L * L` coefficients in label order.
pub type AlgElem = Vec<El>;

/// Element `body + scalar` of the unitalization `R x| K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unital {
    pub body: AlgElem,
    pub scalar: El,
}

#[derive(Clone, Debug)]
pub struct InvAlgebra {
    pub family: Family,
    pub ring: Ring,
    labels: Vec<i32>,
    basis: Vec<(i32, i32)>,
}

impl PartialEq for InvAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.ring == other.ring
    }
}

impl InvAlgebra {
    pub fn new(family: Family, ring: &Ring) -> Result<InvAlgebra> {
        let n = family.n();
        let cap = if family.is_odd() { MAX_ODD_N } else { MAX_N };
        if n > cap {
            return Err(OfaError::Capacity {
                what: format!("family {}", family.name()),
                size: n as u128,
                cap: cap as u128,
            });
        }
        let labels = family.labels();
        let mut basis = Vec::new();
        for &i in &labels {
            for &j in &labels {
                if !matches!(family, Family::Lin(_)) || i * j > 0 {
                    basis.push((i, j));
                }
            }
        }
        Ok(InvAlgebra { family, ring: ring.clone(), labels, basis })
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    /// Basis symbols `e_ij` in lexicographic order.
    pub fn basis(&self) -> &[(i32, i32)] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn pos(&self, i: i32) -> usize {
        let n = self.family.n() as i32;
        if self.family.is_odd() || i < 0 {
            (i + n) as usize
        } else {
            (i + n - 1) as usize
        }
    }

    pub fn has_label(&self, i: i32) -> bool {
        self.labels.contains(&i)
    }

    pub fn in_support(&self, i: i32, j: i32) -> bool {
        self.has_label(i)
            && self.has_label(j)
            && (!matches!(self.family, Family::Lin(_)) || i * j > 0)
    }

    #[inline]
    pub fn idx(&self, i: i32, j: i32) -> usize {
        self.pos(i) * self.size() + self.pos(j)
    }

    pub fn get(&self, x: &AlgElem, i: i32, j: i32) -> El {
        x[self.idx(i, j)]
    }

    pub fn set(&self, x: &mut AlgElem, i: i32, j: i32, v: El) {
        let k = self.idx(i, j);
        x[k] = v;
    }

    /// Multiplier for products through label `j`.
    pub fn weight(&self, j: i32) -> i64 {
        if self.family.is_odd() && j == 0 {
            2
        } else {
            1
        }
    }

    /// Sign in `inv(e_ij) = sign(i, j) e_{-j,-i}`.
    pub fn inv_sign(&self, i: i32, j: i32) -> i64 {
        match self.family {
            Family::Symp(_) => eps(i) * eps(j),
            _ => 1,
        }
    }

    pub fn zero(&self) -> AlgElem {
        vec![0; self.size() * self.size()]
    }

    pub fn e(&self, i: i32, j: i32) -> AlgElem {
        self.e_k(i, j, self.ring.one())
    }

    pub fn e_k(&self, i: i32, j: i32, k: El) -> AlgElem {
        assert!(self.in_support(i, j), "e_{{{i},{j}}} is not a basis symbol of {}", self.family.name());
        let mut x = self.zero();
        self.set(&mut x, i, j, k);
        x
    }

    /// Identity matrix when the family is unital, i.e. `sum e_ii`.
    pub fn diag_sum(&self) -> AlgElem {
        let mut x = self.zero();
        for &i in &self.labels {
            self.set(&mut x, i, i, self.ring.one());
        }
        x
    }

    pub fn add(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        x.iter().zip(y).map(|(a, b)| self.ring.add(*a, *b)).collect()
    }

    pub fn sub(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        x.iter().zip(y).map(|(a, b)| self.ring.sub(*a, *b)).collect()
    }

    pub fn neg(&self, x: &AlgElem) -> AlgElem {
        x.iter().map(|a| self.ring.neg(*a)).collect()
    }

    pub fn scale(&self, k: El, x: &AlgElem) -> AlgElem {
        x.iter().map(|a| self.ring.mul(k, *a)).collect()
    }

    pub fn is_zero(&self, x: &AlgElem) -> bool {
        x.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let l = self.size();
        let r = &self.ring;
        let mut out = self.zero();
        for a in 0..l {
            for b in 0..l {
                let xa = x[a * l + b];
                if xa == 0 {
                    continue;
                }
                let w = self.weight(self.labels[b]);
                let xa = if w == 1 { xa } else { r.scale(w, xa) };
                for c in 0..l {
                    let yb = y[b * l + c];
                    if yb != 0 {
                        out[a * l + c] = r.add(out[a * l + c], r.mul(xa, yb));
                    }
                }
            }
        }
        out
    }

    pub fn inv(&self, x: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for &(i, j) in &self.basis {
            let c = self.get(x, i, j);
            if c != 0 {
                let s = self.inv_sign(i, j);
                let v = if s == 1 { c } else { self.ring.neg(c) };
                self.set(&mut out, -j, -i, v);
            }
        }
        out
    }

    pub fn commutator(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// Coordinates over the basis.
    pub fn coords(&self, x: &AlgElem) -> Vec<El> {
        self.basis.iter().map(|&(i, j)| self.get(x, i, j)).collect()
    }

    pub fn from_coords(&self, c: &[El]) -> AlgElem {
        let mut x = self.zero();
        for (&(i, j), &v) in self.basis.iter().zip(c) {
            self.set(&mut x, i, j, v);
        }
        x
    }

    pub fn is_member(&self, x: &AlgElem) -> bool {
        x.len() == self.size() * self.size()
            && self.labels.iter().all(|&i| {
                self.labels
                    .iter()
                    .all(|&j| self.in_support(i, j) || self.get(x, i, j) == 0)
            })
    }

    /// Every element, in coordinate order.
    pub fn elements(&self, cap: u64) -> Result<Vec<AlgElem>> {
        let q = self.ring.size() as u128;
        let total = q.checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(OfaError::Capacity { what: format!("algebra {}", self.family.name()), size: total, cap: cap as u128 });
        }
        let d = self.dim();
        let mut out = Vec::with_capacity(total as usize);
        let mut c = vec![0 as El; d];
        for mut code in 0..total {
            for v in c.iter_mut() {
                *v = (code % q) as El;
                code /= q;
            }
            out.push(self.from_coords(&c));
        }
        Ok(out)
    }

    /// Additive generators of the center.
    pub fn center(&self) -> Vec<AlgElem> {
        let d = self.dim();
        let basis: Vec<AlgElem> = self.basis.iter().map(|&(i, j)| self.e(i, j)).collect();
        coeff_ring::kernel(&self.ring, d, d * d, |v| {
            let x = self.from_coords(v);
            basis.iter().flat_map(|b| self.coords(&self.commutator(&x, b))).collect()
        })
        .into_iter()
        .map(|c| self.from_coords(&c))
        .collect()
    }

    /// Additive generators of the hermitian part of the center.
    pub fn hermitian_center(&self) -> Vec<AlgElem> {
        let d = self.dim();
        let basis: Vec<AlgElem> = self.basis.iter().map(|&(i, j)| self.e(i, j)).collect();
        coeff_ring::kernel(&self.ring, d, d * (d + 1), |v| {
            let x = self.from_coords(v);
            let mut out: Vec<El> =
                basis.iter().flat_map(|b| self.coords(&self.commutator(&x, b))).collect();
            out.extend(self.coords(&self.sub(&x, &self.inv(&x))));
            out
        })
        .into_iter()
        .map(|c| self.from_coords(&c))
        .collect()
    }

    /// Number of elements in the center.
    pub fn center_size(&self) -> u128 {
        let d = self.dim();
        let basis: Vec<AlgElem> = self.basis.iter().map(|&(i, j)| self.e(i, j)).collect();
        coeff_ring::kernel_size(&self.ring, d, d * d, |v| {
            let x = self.from_coords(v);
            basis.iter().flat_map(|b| self.coords(&self.commutator(&x, b))).collect()
        })
    }

    /// `x(k) = k e_00 + 2k sum_{i != 0} e_ii` in the odd orthogonal family.
    pub fn x_central(&self, k: El) -> AlgElem {
        let r = &self.ring;
        let mut x = self.zero();
        for &i in &self.labels {
            let v = if i == 0 { k } else { r.scale(2, k) };
            self.set(&mut x, i, i, v);
        }
        x
    }

    pub fn unital(&self, body: AlgElem, scalar: El) -> Unital {
        Unital { body, scalar }
    }

    pub fn u_one(&self) -> Unital {
        Unital { body: self.zero(), scalar: self.ring.one() }
    }

    pub fn u_mul(&self, x: &Unital, y: &Unital) -> Unital {
        let r = &self.ring;
        let mut body = self.mul(&x.body, &y.body);
        body = self.add(&body, &self.scale(y.scalar, &x.body));
        body = self.add(&body, &self.scale(x.scalar, &y.body));
        Unital { body, scalar: r.mul(x.scalar, y.scalar) }
    }

    pub fn u_inv(&self, x: &Unital) -> Unital {
        Unital { body: self.inv(&x.body), scalar: x.scalar }
    }

    pub fn u_add(&self, x: &Unital, y: &Unital) -> Unital {
        Unital { body: self.add(&x.body, &y.body), scalar: self.ring.add(x.scalar, y.scalar) }
    }

    /// Second component of the representation of the odd orthogonal family
    /// on column vectors: `e_ij -> E_ij` for `j != 0`, `e_i0 -> 2 E_i0`.
    pub fn rep_odd(&self, x: &AlgElem) -> Result<Vec<El>> {
        if !self.family.is_odd() {
            return structural("the representation map is defined for the odd orthogonal family");
        }
        let mut m = x.clone();
        for &i in &self.labels {
            let k = self.idx(i, 0);
            m[k] = self.ring.scale(2, m[k]);
        }
        Ok(m)
    }

    /// First component of the representation, the adjoint of `rep_odd` for the
    /// split odd form: `e_ij -> E_{-j,-i}` with row 0 doubled, so
    /// `e_0j -> 2 E_{-j,0}` and `e_i0 -> E_{0,-i}`.
    pub fn rep_odd_op(&self, x: &AlgElem) -> Result<Vec<El>> {
        self.rep_odd(x)?;
        let mut out = self.zero();
        for &i in &self.labels {
            for &j in &self.labels {
                let v = self.get(x, i, j);
                let v = if i == 0 { self.ring.scale(2, v) } else { v };
                out[self.idx(-j, -i)] = v;
            }
        }
        Ok(out)
    }

    /// Additive generators of the kernel of the pair `(rep_odd_op, rep_odd)`.
    pub fn rep_odd_kernel(&self) -> Result<Vec<AlgElem>> {
        self.rep_odd(&self.zero())?;
        let d = self.dim();
        Ok(coeff_ring::kernel(&self.ring, d, 2 * d, |v| {
            let x = self.from_coords(v);
            let mut out = self.coords(&self.rep_odd_op(&x).expect("odd family"));
            out.extend(self.coords(&self.rep_odd(&x).expect("odd family")));
            out
        })
        .into_iter()
        .map(|c| self.from_coords(&c))
        .collect())
    }

    pub fn show(&self, x: &AlgElem) -> String {
        let mut parts = Vec::new();
        for &(i, j) in &self.basis {
            let c = self.get(x, i, j);
            if c != 0 {
                parts.push(format!("{}*e({i},{j})", self.ring.show(c)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Sparse JSON form `[{"i", "j", "c"}]`.
    pub fn to_json(&self, x: &AlgElem) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .basis
            .iter()
            .filter(|&&(i, j)| self.get(x, i, j) != 0)
            .map(|&(i, j)| serde_json::json!({"i": i, "j": j, "c": self.ring.elem(self.get(x, i, j))}))
            .collect();
        serde_json::Value::Array(items)
    }
}

/// Plain square matrices of a given size over `K`.
pub fn mat_mul(ring: &Ring, n: usize, a: &[El], b: &[El]) -> Vec<El> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if y != 0 {
                    out[i * n + j] = ring.add(out[i * n + j], ring.mul(x, y));
                }
            }
        }
    }
    out
}

pub fn mat_identity(ring: &Ring, n: usize) -> Vec<El> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = ring.one();
    }
    m
}

/// Division-free determinant by expansion over column subsets.
pub fn det(ring: &Ring, n: usize, m: &[El]) -> El {
    if n == 0 {
        return ring.one();
    }
    // dp[mask] = signed sum over assignments of the first popcount(mask) rows to columns in mask
    let mut dp = vec![0 as El; 1 << n];
    dp[0] = ring.one();
    for mask in 0usize..(1 << n) {
        let row = mask.count_ones() as usize;
        if row >= n || dp[mask] == 0 {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let a = m[row * n + col];
            if a == 0 {
                continue;
            }
            // sign: number of already used columns greater than col
            let above = (mask >> (col + 1)).count_ones();
            let term = ring.mul(dp[mask], a);
            let term = if above % 2 == 1 { ring.neg(term) } else { term };
            let next = mask | (1 << col);
            dp[next] = ring.add(dp[next], term);
        }
    }
    dp[(1 << n) - 1]
}

/// Inverse via the adjugate, when the determinant is a unit.
pub fn mat_inverse(ring: &Ring, n: usize, m: &[El]) -> Option<Vec<El>> {
    let dinv = ring.try_invert(det(ring, n, m))?;
    let mut out = vec![0; n * n];
    let mut minor = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            minor.clear();
            for r in (0..n).filter(|&r| r != i) {
                for c in (0..n).filter(|&c| c != j) {
                    minor.push(m[r * n + c]);
                }
            }
            let cof = det(ring, n - 1, &minor);
            let cof = if (i + j) % 2 == 1 { ring.neg(cof) } else { cof };
            out[j * n + i] = ring.mul(cof, dinv);
        }
    }
    Some(out)
}

/// Direct sum of (possibly different) families over the factors of a product ring.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub parts: Vec<InvAlgebra>,
}

/// Build the algebra of a list of families over a product ring. Identical
/// families collapse to the plain family over the product ring.
pub fn alg_make_sum(families: &[Family], ring: &Ring) -> Result<std::result::Result<InvAlgebra, DirectSum>> {
    let factors = match ring.spec() {
        coeff_ring::RingSpec::Product(f) => f.clone(),
        _ => return structural("a direct sum needs a product coefficient ring"),
    };
    if factors.len() != families.len() {
        return structural(format!(
            "{} families for a product of {} rings",
            families.len(),
            factors.len()
        ));
    }
    if families.iter().all(|f| *f == families[0]) {
        return Ok(Ok(InvAlgebra::new(families[0], ring)?));
    }
    let parts = families
        .iter()
        .zip(factors)
        .map(|(f, s)| InvAlgebra::new(*f, &Ring::new(s)?))
        .collect::<Result<_>>()?;
    Ok(Err(DirectSum { parts }))
}

impl DirectSum {
    pub fn mul(&self, x: &[AlgElem], y: &[AlgElem]) -> Vec<AlgElem> {
        self.parts.iter().zip(x.iter().zip(y)).map(|(a, (p, q))| a.mul(p, q)).collect()
    }
    pub fn inv(&self, x: &[AlgElem]) -> Vec<AlgElem> {
        self.parts.iter().zip(x).map(|(a, p)| a.inv(p)).collect()
    }
    pub fn add(&self, x: &[AlgElem], y: &[AlgElem]) -> Vec<AlgElem> {
        self.parts.iter().zip(x.iter().zip(y)).map(|(a, (p, q))| a.add(p, q)).collect()
    }
    pub fn center_size(&self) -> u128 {
        self.parts.iter().map(|a| a.center_size()).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(f: Family, m: u64) -> InvAlgebra {
        InvAlgebra::new(f, &Ring::zmod(m)).unwrap()
    }

    #[test]
    fn odd_product_through_middle_doubles() {
        let a = alg(Family::OrthOdd(1), 4);
        let p = a.mul(&a.e(1, 0), &a.e(0, 1));
        assert_eq!(p, a.e_k(1, 1, 2));
    }

    #[test]
    fn symplectic_involution_sign() {
        let a = alg(Family::Symp(1), 3);
        assert_eq!(a.inv(&a.e(1, -1)), a.e_k(1, -1, 2));
    }

    #[test]
    fn linear_blocks_are_orthogonal() {
        let a = alg(Family::Lin(1), 2);
        assert_eq!(a.basis(), &[(-1, -1), (1, 1)]);
        assert!(a.is_zero(&a.mul(&a.e(1, 1), &a.e(-1, -1))));
        let b = alg(Family::Lin(2), 5);
        assert_eq!(b.inv(&b.e(1, 2)), b.e(-2, -1));
    }

    #[test]
    fn index_chain_and_char_two() {
        let a = alg(Family::OrthEven(2), 3);
        assert_eq!(a.mul(&a.e(1, 2), &a.e(2, -1)), a.e(1, -1));
        let b = alg(Family::OrthOdd(0), 2);
        assert!(b.is_zero(&b.mul(&b.e(0, 0), &b.e(0, 0))));
    }

    #[test]
    fn involution_laws_on_basis() {
        for f in [Family::Lin(2), Family::Symp(2), Family::OrthEven(2), Family::OrthOdd(1)] {
            let a = alg(f, 4);
            for &(i, j) in a.basis() {
                let x = a.e(i, j);
                assert_eq!(a.inv(&a.inv(&x)), x);
                for &(k, l) in a.basis() {
                    let y = a.e(k, l);
                    assert_eq!(a.inv(&a.mul(&x, &y)), a.mul(&a.inv(&y), &a.inv(&x)));
                }
            }
        }
    }

    #[test]
    fn centers() {
        let s = alg(Family::Symp(1), 3);
        assert_eq!(s.center_size(), 3);
        let o = alg(Family::OrthOdd(1), 4);
        assert_eq!(o.center_size(), 4);
        for c in o.center() {
            let k = o.get(&c, 0, 0);
            assert_eq!(c, o.x_central(k));
        }
        let l = alg(Family::Lin(1), 2);
        let h = l.hermitian_center();
        assert_eq!(h, vec![l.add(&l.e(1, 1), &l.e(-1, -1))]);
    }

    #[test]
    fn rep_kernel_is_two_torsion_at_origin() {
        let a = alg(Family::OrthOdd(1), 2);
        assert_eq!(a.rep_odd_kernel().unwrap(), vec![a.e(0, 0)]);
        let b = alg(Family::OrthOdd(1), 3);
        assert!(b.rep_odd_kernel().unwrap().is_empty());
        let m = b.rep_odd(&b.mul(&b.e(1, 0), &b.e(0, 1))).unwrap();
        let p = mat_mul(&b.ring, 3, &b.rep_odd(&b.e(1, 0)).unwrap(), &b.rep_odd(&b.e(0, 1)).unwrap());
        assert_eq!(m, p);
        assert!(alg(Family::Symp(1), 3).rep_odd(&alg(Family::Symp(1), 3).zero()).is_err());
    }

    #[test]
    fn determinant_small() {
        let r = Ring::zmod(7);
        assert_eq!(det(&r, 2, &[1, 2, 3, 4]), r.from_int(-2));
        assert_eq!(det(&r, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]), r.from_int(2 * (3 - 2) - 0 * (1 - 2) + (1 - 3)));
    }
}
