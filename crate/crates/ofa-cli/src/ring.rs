//! Compact ring grammar: `zmod:m`, `gf:q`, `gf:p:c0,c1,..`, `prod:(A;B;..)`.

use ofa_core::{Ring, RingSpec};

fn number(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("expected a number, got `{s}`"))
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Split on `;` at parenthesis depth zero.
fn split_top(s: &str) -> Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(format!("unbalanced parentheses in `{s}`"));
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced parentheses in `{s}`"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

pub fn parse_spec(s: &str) -> Result<RingSpec, String> {
    let s = s.trim();
    let (head, rest) = s.split_once(':').ok_or_else(|| format!("ring `{s}` has no kind prefix"))?;
    match head {
        "zmod" => {
            let m = number(rest)?;
            if m < 2 {
                return Err("zmod needs a modulus of at least 2".into());
            }
            Ok(RingSpec::ZMod(m))
        }
        "gf" => match rest.split_once(':') {
            None => {
                let q = number(rest)?;
                match prime_power(q) {
                    Some((p, 1)) => Ok(RingSpec::ZMod(p)),
                    Some((p, 2)) => Ok(RingSpec::GaloisField { p, modulus: ofa_core::coeff_ring::quadratic_irreducible(p) }),
                    Some(_) => Err(format!("gf:{q} needs an explicit modulus, e.g. gf:p:c0,c1,..,1")),
                    None => Err(format!("{q} is not a prime power")),
                }
            }
            Some((p, poly)) => {
                let modulus = poly.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
                Ok(RingSpec::GaloisField { p: number(p)?, modulus })
            }
        },
        "prod" => {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("prod expects `prod:(A;B)`, got `{s}`"))?;
            let parts = split_top(inner)?.into_iter().map(parse_spec).collect::<Result<Vec<_>, _>>()?;
            if parts.len() < 2 {
                return Err("prod needs at least two factors".into());
            }
            Ok(RingSpec::Product(parts))
        }
        _ => Err(format!("unknown ring kind `{head}`")),
    }
}

pub fn parse_ring(s: &str) -> Result<Ring, String> {
    Ring::new(parse_spec(s)?).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_spec("zmod:4").unwrap(), RingSpec::ZMod(4));
        assert_eq!(parse_spec("gf:3").unwrap(), RingSpec::ZMod(3));
        assert_eq!(parse_ring("gf:4").unwrap().size(), 4);
        assert_eq!(parse_spec("gf:2:1,1,1").unwrap(), RingSpec::GaloisField { p: 2, modulus: vec![1, 1, 1] });
        let p = parse_spec("prod:(zmod:2;prod:(gf:3;zmod:4))").unwrap();
        assert_eq!(p, RingSpec::Product(vec![RingSpec::ZMod(2), RingSpec::Product(vec![RingSpec::ZMod(3), RingSpec::ZMod(4)])]));
        assert_eq!(parse_ring("prod:(zmod:2;gf:9)").unwrap().size(), 18);
        for bad in ["zmod", "zmod:x", "gf:6", "gf:8", "prod:(zmod:2)", "prod:(zmod:2;zmod:3", "gf:2:1,0,1", "foo:3"] {
            assert!(parse_ring(bad).is_err(), "{bad}");
        }
    }
}
