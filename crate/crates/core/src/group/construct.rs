//! Structured constructors. Products are computed arithmetically on
//! coordinate tuples; no permutation representation is needed.

use super::perm::{build_perm_group, Permutation};
use super::{element_cap, Construction, Group, Verification};
use crate::arith::{self, gcd, pow_mod};
use crate::error::{Error, Result};

fn by_construction(source: String) -> Construction {
    Construction {
        source,
        verification: Verification::Construction,
    }
}

fn checked_order(factors: &[usize]) -> Result<usize> {
    let cap = element_cap();
    factors
        .iter()
        .try_fold(1usize, |acc, &f| acc.checked_mul(f))
        .filter(|&n| n <= cap)
        .ok_or(Error::CapExceeded {
            what: "group order",
            cap,
        })
}

pub fn cyclic(n: usize) -> Result<Group> {
    let g = abelian_from_invariants(&[n])?;
    let mut named = Vec::new();
    if n > 1 {
        named.push(("a".to_string(), 1));
    }
    Ok(Group { named, ..g })
}

/// Z_{n1} x Z_{n2} x ...; element index uses mixed radix with the first
/// factor least significant.
pub fn abelian_from_invariants(ns: &[usize]) -> Result<Group> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidParameters(
            "abelian invariants must be a nonempty list of positive integers".into(),
        ));
    }
    let order = checked_order(ns)?;
    let radix: Vec<usize> = ns.to_vec();
    let rule = move |a: usize, b: usize| {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &n in &radix {
            let s = (a % n + b % n) % n;
            out += s * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    };
    let mut gens = Vec::new();
    let mut place = 1;
    for &n in ns {
        if n > 1 {
            gens.push(place);
        }
        place *= n;
    }
    let shown: Vec<usize> = ns.iter().copied().filter(|&n| n > 1).collect();
    let label = if shown.is_empty() {
        "C1".to_string()
    } else {
        shown
            .iter()
            .map(|n| format!("C{n}"))
            .collect::<Vec<_>>()
            .join("x")
    };
    let source = format!(
        "abelian({})",
        ns.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Group::from_rule(
        order,
        rule,
        label,
        by_construction(source),
        gens,
        Vec::new(),
    )
}

/// Dihedral group of order 2n: r^i s^j with s r s = r^-1.
pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameters("dihedral(n) needs n >= 1".into()));
    }
    let order = checked_order(&[2, n])?;
    let rule = move |a: usize, b: usize| {
        let (i, j) = (a % n, a / n);
        let (i2, j2) = (b % n, b / n);
        let r = if j == 0 {
            (i + i2) % n
        } else {
            (i + n - i2) % n
        };
        r + n * (j ^ j2)
    };
    let named = vec![("a".to_string(), 1 % n), ("b".to_string(), n)];
    let gens = vec![1 % n, n];
    Group::from_rule(
        order,
        rule,
        format!("D{n}"),
        by_construction(format!("dihedral({n})")),
        gens,
        named,
    )
}

/// Dicyclic group of order 4m: a^{2m} = 1, b^2 = a^m, b^-1 a b = a^-1.
/// For m a power of two this is the generalized quaternion group Q_{4m}.
pub fn dicyclic(m: usize) -> Result<Group> {
    if m < 2 {
        return Err(Error::InvalidParameters("dicyclic(m) needs m >= 2".into()));
    }
    let order = checked_order(&[4, m])?;
    let n = 2 * m;
    let rule = move |x: usize, y: usize| {
        let (i, j) = (x % n, x / n);
        let (i2, j2) = (y % n, y / n);
        match (j, j2) {
            (0, _) => (i + i2) % n + n * j2,
            (_, 0) => (i + n - i2) % n + n,
            // a^i b a^i2 b = a^{i - i2} b^2 = a^{i - i2 + m}
            _ => (i + n - i2 + m) % n,
        }
    };
    let label = if m.is_power_of_two() {
        format!("Q{}", 4 * m)
    } else {
        format!("Dic{m}")
    };
    let named = vec![("a".to_string(), 1), ("b".to_string(), n)];
    Group::from_rule(
        order,
        rule,
        label,
        by_construction(format!("dicyclic({m})")),
        vec![1, n],
        named,
    )
}

/// Upper unitriangular 3x3 matrices over F_p, as triples (x, y, z) with
/// (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y').
pub fn heisenberg(p: usize) -> Result<Group> {
    if !arith::is_prime(p as u64) {
        return Err(Error::InvalidParameters(format!(
            "heisenberg(p) needs p prime, got {p}"
        )));
    }
    let order = checked_order(&[p, p, p])?;
    let rule = move |a: usize, b: usize| {
        let (x, y, z) = (a % p, a / p % p, a / (p * p));
        let (x2, y2, z2) = (b % p, b / p % p, b / (p * p));
        (x + x2) % p + p * ((y + y2) % p) + p * p * ((z + z2 + x * y2) % p)
    };
    let named = vec![
        ("a".to_string(), 1),
        ("b".to_string(), p),
        ("c".to_string(), p * p),
    ];
    Group::from_rule(
        order,
        rule,
        format!("Heis{p}"),
        by_construction(format!("heisenberg({p})")),
        vec![1, p],
        named,
    )
}

/// Split metacyclic group Z_m ⋊ Z_k: elements a^i b^j with b a b^-1 = a^t.
/// Requires gcd(t, m) = 1 and t^k ≡ 1 (mod m).
pub fn metacyclic(m: usize, k: usize, t: usize) -> Result<Group> {
    let g = metacyclic_raw(m, k, t)?;
    Ok(g.with_label(format!("metacyclic({m},{k},{t})")))
}

fn metacyclic_raw(m: usize, k: usize, t: usize) -> Result<Group> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidParameters(
            "metacyclic(m,k,t) needs m, k >= 1".into(),
        ));
    }
    if m > 1 && gcd(t % m, m) != 1 {
        return Err(Error::InvalidParameters(format!(
            "metacyclic: gcd({t}, {m}) != 1"
        )));
    }
    if pow_mod(t as u64, k as u64, m as u64) != 1 % m as u64 {
        return Err(Error::InvalidParameters(format!(
            "metacyclic: {t}^{k} is not 1 mod {m}"
        )));
    }
    let order = checked_order(&[m, k])?;
    let tpow: Vec<usize> = (0..k)
        .map(|j| pow_mod(t as u64, j as u64, m as u64) as usize)
        .collect();
    let rule = move |x: usize, y: usize| {
        let (i, j) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        (i + i2 * tpow[j]) % m + m * ((j + j2) % k)
    };
    let a = 1 % m;
    let b = if k > 1 { m } else { 0 };
    let named = vec![("a".to_string(), a), ("b".to_string(), b)];
    Group::from_rule(
        order,
        rule,
        "metacyclic",
        by_construction(format!("metacyclic({m},{k},{t})")),
        vec![a, b],
        named,
    )
}

/// M_{p^n} = <a, b | a^{p^{n-1}} = b^p = 1, b^-1 a b = a^{p^{n-2}+1}>.
/// Needs p prime and n >= 3; p = 2 additionally needs n >= 4.
pub fn modular_m(p: usize, n: u32) -> Result<Group> {
    if !arith::is_prime(p as u64) || n < 3 || (p == 2 && n < 4) {
        return Err(Error::InvalidParameters(format!(
            "modular_M(p,n) needs p prime, n >= 3, and n >= 4 when p = 2; got ({p},{n})"
        )));
    }
    let cap = element_cap();
    let order = p
        .checked_pow(n)
        .filter(|&o| o <= cap)
        .ok_or(Error::CapExceeded {
            what: "group order",
            cap,
        })?;
    let m = order / p;
    let r = m / p + 1;
    // b a b^-1 = a^t with t = r^-1, so that b^-1 a b = a^r.
    let t = arith::inv_mod(r as u64, m as u64).expect("r is a unit mod p^(n-1)") as usize;
    let g = metacyclic_raw(m, p, t)?;
    Ok(Group {
        construction: by_construction(format!("modular_M({p},{n})")),
        ..g
    }
    .with_label(format!("M{order}")))
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameters("symmetric(n) needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::cycle(n, &[0, 1])?);
    }
    if n >= 3 {
        gens.push(Permutation::cycle(n, &(0..n).collect::<Vec<_>>())?);
    }
    build_perm_group(
        &gens,
        element_cap(),
        &format!("S{n}"),
        &format!("symmetric({n})"),
    )
}

pub fn alternating4() -> Result<Group> {
    let gens = [
        Permutation::cycle(4, &[0, 1, 2])?,
        Permutation::new(vec![1, 0, 3, 2])?,
    ];
    build_perm_group(&gens, element_cap(), "A4", "alternating(4)")
}

/// G x H with element (g, h) at index g + |G| h.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let order = checked_order(&[g.order(), h.order()])?;
    let n = g.order();
    let mut gens: Vec<usize> = g.generators().to_vec();
    gens.extend(h.generators().iter().map(|&y| y * n));
    let label = format!("{}x{}", g.label(), h.label());
    let source = format!(
        "direct_product({}, {})",
        g.construction().source,
        h.construction().source
    );
    let verification = if g.construction().verification == Verification::Partial
        || h.construction().verification == Verification::Partial
    {
        Verification::Partial
    } else {
        Verification::Construction
    };
    let (gl, hl) = (g.clone(), h.clone());
    Group::from_rule(
        order,
        move |a, b| gl.mul(a % n, b % n) + n * hl.mul(a / n, b / n),
        label,
        Construction {
            source,
            verification,
        },
        gens,
        Vec::new(),
    )
}
