//! Prime fields, multiplicative subgroups and their cosets.
//!
//! Elements are plain `u64` residues in `[0, p)`. All arithmetic goes through
//! a [`FieldCtx`], which also caches the factorisation of `p - 1`, the
//! smallest primitive root, and the baby-step table used by [`nth_root`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest modulus accepted; products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

struct FieldInner {
    p: u64,
    /// Distinct prime factors of `p - 1`, ascending.
    factors: Vec<u64>,
    prim_root: u64,
    baby_steps: OnceLock<BabySteps>,
}

struct BabySteps {
    step: u64,
    table: HashMap<u64, u64>,
}

/// The prime field `F_p`.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.p)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
    }
}

impl Eq for FieldCtx {}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Smallest prime `p > above` with `p ≡ 1 (mod t)`.
pub fn next_prime_congruent_one(above: u64, t: u64) -> u64 {
    assert!(t >= 1);
    let mut k = above / t + 1;
    loop {
        let p = k * t + 1;
        if p > above && p > 2 && is_prime(p) {
            return p;
        }
        k += 1;
    }
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let factors = prime_factors(p - 1);
        let prim_root = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_raw(g, (p - 1) / q, p) != 1))
            .expect("a prime field has a primitive root");
        Ok(FieldCtx {
            inner: Arc::new(FieldInner {
                p,
                factors,
                prim_root,
                baby_steps: OnceLock::new(),
            }),
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Smallest primitive root of `F_p`.
    pub fn primitive_root(&self) -> u64 {
        self.inner.prim_root
    }

    /// Distinct primes dividing `p - 1`.
    pub fn group_order_factors(&self) -> &[u64] {
        &self.inner.factors
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p() as i64) as u64
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p() {
            s - self.p()
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p() - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p() - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p()
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_raw(a, e, self.p())
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p() != 0, "inverse of zero");
        let (g, x, _) = egcd(a as i64, self.p() as i64);
        debug_assert_eq!(g, 1);
        self.from_i64(x)
    }

    pub fn try_inv(&self, a: u64) -> Result<u64> {
        if a % self.p() == 0 {
            Err(Error::ZeroElement)
        } else {
            Ok(self.inv(a))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        let mut ord = self.p() - 1;
        for &q in self.group_order_factors() {
            while ord % q == 0 && self.pow(a, ord / q) == 1 {
                ord /= q;
            }
        }
        ord
    }

    /// `log_g(a)` for the primitive root `g`, by baby-step/giant-step.
    pub fn discrete_log(&self, a: u64) -> Result<u64> {
        if a % self.p() == 0 {
            return Err(Error::ZeroElement);
        }
        let n = self.p() - 1;
        let bs = self.inner.baby_steps.get_or_init(|| {
            let step = (n as f64).sqrt().ceil() as u64;
            let mut table = HashMap::with_capacity(step as usize);
            let mut cur = 1u64;
            for j in 0..step {
                table.entry(cur).or_insert(j);
                cur = self.mul(cur, self.primitive_root());
            }
            BabySteps { step, table }
        });
        // giant step factor g^{-step}
        let factor = self.inv(self.pow(self.primitive_root(), bs.step));
        let mut gamma = a % self.p();
        for i in 0..=bs.step {
            if let Some(&j) = bs.table.get(&gamma) {
                return Ok((i * bs.step + j) % n);
            }
            gamma = self.mul(gamma, factor);
        }
        unreachable!("primitive root generates F_p^*")
    }
}

fn pow_raw(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let g = a.extended_gcd(&b);
    (g.gcd, g.x, g.y)
}

/// Smallest `mu` with `mu^n = a`, if any.
///
/// Solves `log(a) = n * k (mod p - 1)` in the exponent, then scans the
/// `gcd(n, p - 1)` candidate roots for the smallest one.
pub fn nth_root(ctx: &FieldCtx, a: u64, n: u64) -> Result<Option<u64>> {
    let a = ctx.reduce(a);
    if a == 0 {
        return Err(Error::ZeroElement);
    }
    assert!(n >= 1, "root index must be positive");
    let order = ctx.p() - 1;
    let d = n.gcd(&order);
    let e = ctx.discrete_log(a)?;
    if e % d != 0 {
        return Ok(None);
    }
    let modulus = order / d;
    let k = if modulus == 1 {
        0
    } else {
        let n_red = ((n / d) % modulus) as i64;
        let (_, inv, _) = egcd(n_red, modulus as i64);
        let inv = inv.rem_euclid(modulus as i64) as u128;
        ((e / d) as u128 * inv % modulus as u128) as u64
    };
    let mu0 = ctx.pow(ctx.primitive_root(), k);
    let zeta = ctx.pow(ctx.primitive_root(), modulus);
    let mut best = mu0;
    let mut cur = mu0;
    for _ in 1..d {
        cur = ctx.mul(cur, zeta);
        best = best.min(cur);
    }
    debug_assert_eq!(ctx.pow(best, n), a);
    Ok(Some(best))
}

struct SubgroupInner {
    ctx: FieldCtx,
    t: u64,
    gen: u64,
    elements: Vec<u64>,
}

/// The unique subgroup of `F_p^*` of order `t`.
#[derive(Clone)]
pub struct Subgroup {
    inner: Arc<SubgroupInner>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(p={}, t={}, gen={})", self.ctx().p(), self.t(), self.gen())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ctx() == other.ctx() && self.t() == other.t()
    }
}

impl Eq for Subgroup {}

/// Subgroup of order `t`, generated by `g^{(p-1)/t}` for the smallest
/// primitive root `g`.
pub fn subgroup_of_order(ctx: &FieldCtx, t: u64) -> Result<Subgroup> {
    let order = ctx.p() - 1;
    if t == 0 || order % t != 0 {
        return Err(Error::NotDivisor { t, p_minus_1: order });
    }
    let gen = ctx.pow(ctx.primitive_root(), order / t);
    let mut elements = Vec::with_capacity(t as usize);
    let mut cur = 1u64;
    for _ in 0..t {
        elements.push(cur);
        cur = ctx.mul(cur, gen);
    }
    debug_assert_eq!(cur, 1);
    elements.sort_unstable();
    Ok(Subgroup {
        inner: Arc::new(SubgroupInner {
            ctx: ctx.clone(),
            t,
            gen,
            elements,
        }),
    })
}

impl Subgroup {
    pub fn ctx(&self) -> &FieldCtx {
        &self.inner.ctx
    }

    /// Order of the subgroup.
    pub fn t(&self) -> u64 {
        self.inner.t
    }

    pub fn gen(&self) -> u64 {
        self.inner.gen
    }

    /// Members in ascending order.
    pub fn elements(&self) -> &[u64] {
        &self.inner.elements
    }

    pub fn contains(&self, x: u64) -> bool {
        let x = self.ctx().reduce(x);
        x != 0 && self.ctx().pow(x, self.t()) == 1
    }

    /// The coset `rep * G`.
    pub fn coset(&self, rep: u64) -> Result<Coset> {
        let rep = self.ctx().reduce(rep);
        if rep == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(Coset {
            rep,
            sub: self.clone(),
        })
    }

    /// `G` itself as a coset.
    pub fn trivial_coset(&self) -> Coset {
        Coset {
            rep: 1,
            sub: self.clone(),
        }
    }

    /// Number of distinct cosets, `(p - 1) / t`.
    pub fn index(&self) -> u64 {
        (self.ctx().p() - 1) / self.t()
    }
}

/// A coset `rep * G` of a multiplicative subgroup.
#[derive(Clone, Debug)]
pub struct Coset {
    rep: u64,
    sub: Subgroup,
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        if self.sub != other.sub {
            return false;
        }
        let ctx = self.sub.ctx();
        ctx.pow(ctx.mul(self.rep, ctx.inv(other.rep)), self.sub.t()) == 1
    }
}

impl Eq for Coset {}

impl Coset {
    pub fn rep(&self) -> u64 {
        self.rep
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// `rep^t`; all members of the coset share this t-th power.
    pub fn gamma(&self) -> u64 {
        self.sub.ctx().pow(self.rep, self.sub.t())
    }

    /// Membership via `(x / rep)^t = 1`.
    pub fn contains(&self, x: u64) -> Result<bool> {
        let ctx = self.sub.ctx();
        let x = ctx.reduce(x);
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(ctx.pow(ctx.mul(x, ctx.inv(self.rep)), self.sub.t()) == 1)
    }

    /// Members `rep * g` ordered by the subgroup's element order.
    pub fn elements(&self) -> Vec<u64> {
        let ctx = self.sub.ctx();
        self.sub.elements().iter().map(|&g| ctx.mul(self.rep, g)).collect()
    }
}

/// Free-function form of [`Coset::contains`].
pub fn coset_contains(c: &Coset, x: u64) -> Result<bool> {
    c.contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(FieldCtx::new(9).is_err());
        assert!(FieldCtx::new(2).is_err());
        assert_eq!(FieldCtx::new(1 << 31).unwrap_err(), Error::NotPrime(1 << 31));
    }

    #[test]
    fn subgroup_examples() {
        let f7 = FieldCtx::new(7).unwrap();
        assert_eq!(subgroup_of_order(&f7, 3).unwrap().elements(), &[1, 2, 4]);
        assert_eq!(subgroup_of_order(&f7, 1).unwrap().elements(), &[1]);
        let f13 = FieldCtx::new(13).unwrap();
        let g4 = subgroup_of_order(&f13, 4).unwrap();
        assert_eq!(g4.elements(), &[1, 5, 8, 12]);
        assert!(matches!(
            subgroup_of_order(&f7, 4),
            Err(Error::NotDivisor { t: 4, p_minus_1: 6 })
        ));
    }

    #[test]
    fn generator_has_exact_order() {
        for p in [7u64, 13, 31, 101, 1009] {
            let ctx = FieldCtx::new(p).unwrap();
            for t in divisors(p - 1) {
                let g = subgroup_of_order(&ctx, t).unwrap();
                assert_eq!(ctx.order(g.gen()), t);
                assert_eq!(g.elements().len() as u64, t);
            }
        }
    }

    #[test]
    fn coset_examples() {
        let f7 = FieldCtx::new(7).unwrap();
        let g = subgroup_of_order(&f7, 3).unwrap();
        assert!(g.coset(3).unwrap().contains(5).unwrap());
        assert!(!g.trivial_coset().contains(3).unwrap());
        assert!(g.trivial_coset().contains(1).unwrap());
        assert_eq!(g.trivial_coset().contains(0), Err(Error::ZeroElement));
        assert_eq!(g.coset(3).unwrap(), g.coset(5).unwrap());
        assert_ne!(g.coset(3).unwrap(), g.coset(1).unwrap());
    }

    #[test]
    fn coset_membership_matches_enumeration() {
        for p in (3..=100).filter(|&p| is_prime(p)) {
            let ctx = FieldCtx::new(p).unwrap();
            for t in divisors(p - 1) {
                let g = subgroup_of_order(&ctx, t).unwrap();
                for &x in g.elements() {
                    for &y in g.elements() {
                        assert!(g.contains(ctx.mul(x, y)));
                    }
                }
                for rep in 1..p {
                    let c = g.coset(rep).unwrap();
                    let members = c.elements();
                    for x in 1..p {
                        assert_eq!(c.contains(x).unwrap(), members.contains(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn nth_root_examples() {
        let f7 = FieldCtx::new(7).unwrap();
        assert_eq!(nth_root(&f7, 4, 2).unwrap(), Some(2));
        assert_eq!(nth_root(&f7, 3, 2).unwrap(), None);
        assert_eq!(nth_root(&f7, 0, 2), Err(Error::ZeroElement));
        for p in [7u64, 101, 10007] {
            let ctx = FieldCtx::new(p).unwrap();
            for n in 1..6 {
                assert_eq!(nth_root(&ctx, 1, n).unwrap(), Some(1));
            }
        }
    }

    #[test]
    fn nth_root_matches_scan() {
        for p in [11u64, 13, 31, 37, 61] {
            let ctx = FieldCtx::new(p).unwrap();
            for n in 1..=12 {
                for a in 1..p {
                    let scan = (1..p).find(|&m| ctx.pow(m, n) == a);
                    assert_eq!(nth_root(&ctx, a, n).unwrap(), scan, "p={p} n={n} a={a}");
                    let d = n.gcd(&(p - 1));
                    assert_eq!(scan.is_none(), ctx.pow(a, (p - 1) / d) != 1);
                }
            }
        }
    }

    #[test]
    fn prime_search() {
        assert_eq!(next_prime_congruent_one(10, 3), 13);
        let p = next_prime_congruent_one(1_000_000, 1000);
        assert!(p > 1_000_000 && p % 1000 == 1 && is_prime(p));
        assert!((1_000_001..p).filter(|q| q % 1000 == 1).all(|q| !is_prime(q)));
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
    }
}
