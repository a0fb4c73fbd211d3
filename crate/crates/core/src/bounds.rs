//! Upper bounds from the theory, evaluated exactly.
//!
//! Every bound has the form `value = radicand^(1/root)` with a rational
//! radicand, so `N <= value` is decided as `N^root <= radicand` in big
//! integers. Hypotheses are checked the same way.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `16 m n^2 (m+n) t^{2/3}` for one coset pair.
    Th1,
    /// `32 h^{3/4} n^5 t^{2/3}` for a family of `h` equations.
    ThSr,
    /// Polynomial energy `E_P^q`.
    Energy,
    /// `17 m n^2 (m+n) t^{8/3}` for `P(x,y) = P(z,w)`.
    Cor17,
    /// `16 m n^2 (m+n) t^{8/3}` for `E(f(G), g(G))`.
    Cor16,
    /// `4 t^{2/3}` for `y = x + mu`.
    HeathBrownKonyagin,
    /// `max(3 2^{1/3} (mn chi)^{1/3} t^{2/3}, 12 mn t^{2/3} / p)`.
    CorvajaZannier,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Th1 => "th1",
            BoundKind::ThSr => "thsr",
            BoundKind::Energy => "energy",
            BoundKind::Cor17 => "cor17",
            BoundKind::Cor16 => "cor16",
            BoundKind::HeathBrownKonyagin => "hk",
            BoundKind::CorvajaZannier => "cz",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub radicand: BigRational,
    pub root: u32,
    pub applicable: bool,
    /// Hypotheses that failed, in words.
    pub violated: Vec<String>,
    pub notes: Vec<String>,
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

impl BoundReport {
    fn new(kind: BoundKind, radicand: BigRational, root: u32) -> Self {
        BoundReport {
            kind,
            radicand,
            root,
            applicable: true,
            violated: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: &str) {
        if !ok {
            self.applicable = false;
            self.violated.push(what.to_string());
        }
    }

    /// `count <= value`, decided by `count^root <= radicand`.
    pub fn admits(&self, count: &BigUint) -> bool {
        let lhs = BigInt::from(count.clone()).pow(self.root) * self.radicand.denom();
        lhs <= *self.radicand.numer()
    }

    pub fn admits_u64(&self, count: u64) -> bool {
        self.admits(&BigUint::from(count))
    }

    /// `floor(value * 10^frac)` as a big integer.
    fn scaled_floor(&self, frac: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(frac * self.root);
        let v = (self.radicand.numer() * scale).div_floor(self.radicand.denom());
        if v.is_negative() {
            return BigInt::zero();
        }
        v.nth_root(self.root)
    }

    /// The value truncated to `frac` digits after the point.
    pub fn decimal(&self, frac: u32) -> String {
        let v = self.scaled_floor(frac).to_string();
        if frac == 0 {
            return v;
        }
        let frac = frac as usize;
        let padded = format!("{v:0>width$}", width = frac + 1);
        let (ip, fp) = padded.split_at(padded.len() - frac);
        format!("{ip}.{fp}")
    }

    /// The value truncated to `sig` significant digits.
    pub fn significant(&self, sig: u32) -> String {
        let int_digits = self.scaled_floor(0).to_string().len() as u32;
        self.decimal(sig.saturating_sub(int_digits).max(1))
    }

    /// Lossy value for display.
    pub fn approx(&self) -> f64 {
        self.decimal(6).parse().unwrap_or(f64::NAN)
    }
}

/// `16 m n^2 (m+n) t^{2/3}`; hypotheses `100 (mn)^{3/2} < t < p^{3/4}/3`.
pub fn bound_th1(m: u64, n: u64, t: u64, p: u64) -> BoundReport {
    let c = big(16) * big(m) * big(n).pow(2) * big(m + n);
    let mut r = BoundReport::new(BoundKind::Th1, int(c.pow(3) * big(t).pow(2)), 3);
    r.require(
        big(10_000) * big(m).pow(3) * big(n).pow(3) < big(t).pow(2),
        "100(mn)^{3/2} < t",
    );
    r.require(big(81) * big(t).pow(4) < big(p).pow(3), "t < p^{3/4}/3");
    r
}

/// `32 h^{3/4} n^5 t^{2/3}`; hypotheses `h < t^{4/3}/81`, `h < p t^{-4/3}/3`
/// and the proof's `t > 8 h^{3/2}`.
pub fn bound_thsr(n: u64, h: u64, t: u64, p: u64) -> BoundReport {
    let rad = big(32).pow(12) * big(h).pow(9) * big(n).pow(60) * big(t).pow(8);
    let mut r = BoundReport::new(BoundKind::ThSr, int(rad), 12);
    r.require(big(81).pow(3) * big(h).pow(3) < big(t).pow(4), "h < t^{4/3}/81");
    r.require(big(27) * big(h).pow(3) * big(t).pow(4) < big(p).pow(3), "h < p t^{-4/3}/3");
    r.require(big(t).pow(2) > big(64) * big(h).pow(3), "t > 8h^{3/2}");
    r
}

/// Rational upper bound on `ln t` with relative error far below `1e-6`.
///
/// `ln t = k ln 2 + ln r` with `r = t / 2^k` in `[1, 2)`, each logarithm
/// written as `2 artanh(z)` with `z <= 1/3`; truncated series plus a bound on
/// the tail.
pub fn ln_upper(t: u64) -> BigRational {
    fn artanh_upper(z: &BigRational) -> BigRational {
        let mut sum = BigRational::zero();
        let z2 = z * z;
        let mut pow = z.clone();
        let terms = 20u32;
        for k in 0..terms {
            sum += &pow / BigRational::from_integer(big(2 * k as u64 + 1));
            pow *= &z2;
        }
        // tail <= z^{2N+1} / ((2N+1)(1 - z^2))
        let tail = &pow / (BigRational::from_integer(big(2 * terms as u64 + 1)) * (BigRational::one() - &z2));
        sum + tail
    }
    assert!(t >= 1);
    let k = 63 - t.leading_zeros() as u64;
    let r = ratio(big(t), big(2).pow(k as u32));
    let one = BigRational::one();
    let two = int(big(2));
    let ln2 = &two * artanh_upper(&ratio(big(1), big(3)));
    let zr = (&r - &one) / (&r + &one);
    let lnr = if zr.is_zero() { BigRational::zero() } else { &two * artanh_upper(&zr) };
    int(big(k)) * ln2 + lnr
}

/// Energy bound with the explicit constants `C_1`, `C_3`, `C_2` for
/// `q <= 3`, `q = 4`, `q >= 5`; hypotheses `100 n^3 < t < (p/3)^{12/17}`.
pub fn bound_energy(n: u64, q: u32, t: u64, p: u64) -> Result<BoundReport> {
    if q < 2 {
        return Err(Error::BadExponent(q));
    }
    let qq = q as u64;
    let mut r = match q {
        2 | 3 => {
            // C_1 t^{(7q+16)/12}, C_1 = 3^q 2^{17q/4 - 3} n^{6q-4} / (4 - q)
            let num = big(3).pow(12 * q) * big(2).pow(51 * q - 36) * big(n).pow(12 * (6 * q - 4)) * big(t).pow(7 * q + 16);
            let den = big(4 - qq).pow(12);
            BoundReport::new(BoundKind::Energy, ratio(num, den), 12)
        }
        4 => {
            // C_3 t^{11/3} ln t, C_3 = 3^3 2^12 n^20
            let c3 = big(27) * big(2).pow(12) * big(n).pow(20);
            let l = ln_upper(t);
            let rad = int(c3.pow(3) * big(t).pow(11)) * l.pow(3);
            let mut rep = BoundReport::new(BoundKind::Energy, rad, 3);
            rep.notes.push("ln t replaced by a rational upper bound".into());
            rep
        }
        _ => {
            // C_2 t^{1 + 2q/3}, C_2 = 3^q 2^{3q+2} n^{5q} / (q - 4)
            let c2n = big(3).pow(q) * big(2).pow(3 * q + 2) * big(n).pow(5 * q);
            let rad = ratio(c2n.pow(3) * big(t).pow(3 + 2 * q), big(qq - 4).pow(3));
            BoundReport::new(BoundKind::Energy, rad, 3)
        }
    };
    r.require(big(100) * big(n).pow(3) < big(t), "100 n^3 < t");
    r.require(big(3).pow(12) * big(t).pow(17) < big(p).pow(12), "t < (p/3)^{12/17}");
    Ok(r)
}

/// `(17 m n^2 (m+n) t^{8/3}, 16 m n^2 (m+n) t^{8/3})`, flagged with the
/// hypotheses of the single-equation bound they are derived from.
pub fn bound_corollaries(m: u64, n: u64, t: u64, p: u64) -> (BoundReport, BoundReport) {
    let base = bound_th1(m, n, t, p);
    let core = big(m) * big(n).pow(2) * big(m + n);
    let mk = |kind, c: u64| {
        let mut r = BoundReport::new(kind, int((big(c) * &core).pow(3) * big(t).pow(8)), 3);
        r.applicable = base.applicable;
        r.violated = base.violated.clone();
        r
    };
    (mk(BoundKind::Cor17, 17), mk(BoundKind::Cor16, 16))
}

/// Heath-Brown–Konyagin `4 t^{2/3}` (only for `y = x + mu`, `t < (p-1)/((p-1)^{1/4}+1)`)
/// and the Corvaja–Zannier bound with user-supplied Euler characteristic.
pub fn bound_comparators(m: u64, n: u64, t: u64, p: u64, chi: Option<i64>, linear_case: bool) -> (BoundReport, BoundReport) {
    let mut hk = BoundReport::new(BoundKind::HeathBrownKonyagin, int(big(64) * big(t).pow(2)), 3);
    hk.require(linear_case, "equation is y = x + mu");
    let pm1 = big(p - 1);
    hk.require(
        t < p - 1 && big(t).pow(4) * &pm1 < (&pm1 - big(t)).pow(4),
        "t < (p-1)/((p-1)^{1/4}+1)",
    );
    // cubes of the two branches: 54 mn chi t^2 and 1728 m^3 n^3 t^2 / p^3
    let chi_v = chi.unwrap_or(0).max(0);
    let first = int(big(54) * big(m) * big(n) * BigInt::from(chi_v) * big(t).pow(2));
    let second = ratio(big(1728) * (big(m) * big(n)).pow(3) * big(t).pow(2), big(p).pow(3));
    let mut cz = BoundReport::new(BoundKind::CorvajaZannier, first.max(second), 3);
    cz.require(chi.is_some(), "Euler characteristic supplied");
    if chi.is_some_and(|c| c < 0) {
        cz.notes.push("negative chi clamped to 0".into());
    }
    (hk, cz)
}

/// Decides `count <= value` from a `digits`-significant-digit decimal
/// expansion of the value: exact for integer counts because truncation
/// keeps every integer below the value below the truncation.
pub fn decimal_admits(report: &BoundReport, count: &BigUint, digits: u32) -> bool {
    let s = report.significant(digits);
    let ip = s.split('.').next().unwrap_or("0");
    let whole: BigUint = ip.parse().unwrap_or_default();
    whole >= *count
}

/// `f64` view of a big integer, for display only.
pub fn approx_biguint(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}
