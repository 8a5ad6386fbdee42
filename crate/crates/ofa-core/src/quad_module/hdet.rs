//! The half-determinant of an odd rank quadratic form.

use std::collections::BTreeMap;

use crate::coeff_ring::El;
use crate::error::{structural, Result};
use crate::form_ring;

use super::{QuadModule, QuadType};

pub const HDET_MAX_RANK: usize = 5;

/// Integer polynomial in the variables `q_0 .. q_{r-1}` followed by `b_ij`
/// for `i < j` in lexicographic order. Keys are exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u16>, i64>,
}

impl Poly {
    fn constant(nvars: usize, c: i64) -> Poly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; nvars], c);
        }
        Poly { nvars, terms }
    }

    fn var(nvars: usize, v: usize, c: i64) -> Poly {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Poly { nvars, terms: BTreeMap::from([(e, c)]) }
    }

    fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            let t = self.terms.entry(e.clone()).or_insert(0);
            *t += c;
            if *t == 0 {
                self.terms.remove(e);
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::constant(self.nvars, 0);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_assign(&Poly { nvars: self.nvars, terms: BTreeMap::from([(e, c1 * c2)]) });
            }
        }
        out
    }

    pub fn eval(&self, ring: &crate::Ring, vals: &[El]) -> El {
        self.terms.iter().fold(ring.zero(), |acc, (e, &c)| {
            let mono = e.iter().zip(vals).fold(ring.from_int(c), |m, (&k, &v)| ring.mul(m, ring.pow(v, k as u64)));
            ring.add(acc, mono)
        })
    }
}

fn var_index(r: usize, i: usize, j: usize) -> usize {
    // position of b_ij (i < j) after the r diagonal variables
    let before: usize = (0..i).map(|a| r - 1 - a).sum();
    r + before + (j - i - 1)
}

/// Symbolic Gram matrix with `B(e_i, e_i) = 2 q_i`.
fn symbolic_gram(r: usize) -> Vec<Poly> {
    let nvars = r + r * (r - 1) / 2;
    let mut g = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            g.push(match i.cmp(&j) {
                std::cmp::Ordering::Equal => Poly::var(nvars, i, 2),
                std::cmp::Ordering::Less => Poly::var(nvars, var_index(r, i, j), 1),
                std::cmp::Ordering::Greater => Poly::var(nvars, var_index(r, j, i), 1),
            });
        }
    }
    g
}

fn permutations(r: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let r = used.len();
        if prefix.len() == r {
            let inversions = (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))).filter(|&(a, b)| prefix[a] > prefix[b]).count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..r {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// `det(B) / 2` as an integer polynomial, for odd rank `r <= 5`.
pub fn hdet_poly(r: usize) -> Result<Poly> {
    if r.is_multiple_of(2) || r > HDET_MAX_RANK {
        return structural(format!("half-determinant needs odd rank at most {HDET_MAX_RANK}, got {r}"));
    }
    let nvars = r + r * (r - 1) / 2;
    let g = symbolic_gram(r);
    let mut det = Poly::constant(nvars, 0);
    for (perm, sign) in permutations(r) {
        let term = perm.iter().enumerate().fold(Poly::constant(nvars, sign), |acc, (row, &col)| acc.mul(&g[row * r + col]));
        det.add_assign(&term);
    }
    for (e, c) in det.terms.iter_mut() {
        assert!(*c % 2 == 0, "determinant coefficient {c} of {e:?} is odd");
        *c /= 2;
    }
    Ok(det)
}

fn check_orthogonal_odd(m: &QuadModule) -> Result<()> {
    if m.ty() != QuadType::Orthogonal || m.rank().is_multiple_of(2) {
        return structural("half-determinant is defined for orthogonal modules of odd rank");
    }
    Ok(())
}

pub fn hdet(m: &QuadModule) -> Result<El> {
    check_orthogonal_odd(m)?;
    let r = m.rank();
    let poly = hdet_poly(r)?;
    let mut vals = m.q.clone();
    for i in 0..r {
        for j in i + 1..r {
            vals.push(m.g(i, j)[0]);
        }
    }
    Ok(poly.eval(m.ring(), &vals))
}

pub fn semiregular(m: &QuadModule) -> Result<bool> {
    Ok(m.ring().try_invert(hdet(m)?).is_some())
}

/// Determinant of the Gram matrix.
pub fn gram_det(m: &QuadModule) -> Result<El> {
    if m.ty() == QuadType::Linear {
        return structural("Gram determinant over K needs a scalar-valued form");
    }
    let g: Vec<El> = m.gram.iter().map(|p| p[0]).collect();
    Ok(form_ring::det(m.ring(), m.rank(), &g))
}
