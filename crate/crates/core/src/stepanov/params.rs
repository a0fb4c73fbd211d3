use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Box sizes and vanishing order of the auxiliary polynomial
/// `Psi = sum lambda_{a,b,c} x^a x^{bt} y^{ct}`, `a < A`, `b < B`, `c < C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepanovParams {
    pub t: u64,
    pub m: u32,
    pub n: u32,
    pub h: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl StepanovParams {
    pub fn unknowns(&self) -> u64 {
        self.a * self.b * self.c
    }

    /// Largest possible total degree of `Psi`.
    pub fn max_psi_degree(&self) -> u64 {
        (self.a - 1) + (self.b - 1) * self.t + (self.c - 1) * self.t
    }
}

/// `floor(v^(1/k))`.
fn iroot(v: &BigUint, k: u32) -> u64 {
    let r = v.nth_root(k);
    u64::try_from(r).unwrap_or(u64::MAX)
}

/// Integer floors of the parameter formulas.
///
/// `h = 1`: `A = t^{2/3}/n`, `B = C = t^{1/3}`, `D = B^2/(4mn^2)`.
/// `h > 1`: `A = h^{-1/2} t^{2/3}`, `B = C = h^{1/4} t^{1/3}`, `D = A/(4n^3)`,
/// with every root taken exactly on integers.
pub fn choose_params(m: u32, n: u32, t: u64, h: u64) -> Result<StepanovParams> {
    if m == 0 || n == 0 {
        return Err(Error::ParamsInfeasible("bidegree must be positive".into()));
    }
    if t < 2 {
        return Err(Error::ParamsInfeasible(format!("t={t} < 2")));
    }
    if h == 0 {
        return Err(Error::ParamsInfeasible("h=0".into()));
    }
    let tb = BigUint::from(t);
    let (mm, nn) = (m as u64, n as u64);
    let (a, b, d) = if h == 1 {
        let a = iroot(&(&tb * &tb), 3) / nn;
        let b = iroot(&tb, 3);
        let d = (b * b) / (4 * mm * nn * nn);
        (a, b, d)
    } else {
        let hb = BigUint::from(h);
        let h3 = hb.pow(3);
        let t4 = tb.pow(4);
        // floor((t^4/h^3)^(1/6)) = floor(floor(t^4/h^3)^(1/6))
        let a = iroot(&(&t4 / &h3), 6);
        let b = iroot(&(&h3 * &t4), 12);
        let d = a / (4 * nn * nn * nn);
        (a, b, d)
    };
    let c = b;
    for (name, v) in [("A", a), ("B", b), ("D", d)] {
        if v < 1 {
            return Err(Error::ParamsInfeasible(format!("{name}=0")));
        }
    }
    let nab = nn as u128 * a as u128 * b as u128;
    if nab > t as u128 {
        return Err(Error::ParamsInfeasible(format!("nAB={nab} > t={t}")));
    }
    Ok(StepanovParams {
        t,
        m,
        n,
        h,
        a,
        b,
        c,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = choose_params(1, 1, 1000, 1).unwrap();
        assert_eq!((p.a, p.b, p.c, p.d), (100, 10, 10, 25));
        let p = choose_params(2, 2, 1_000_000, 16).unwrap();
        assert_eq!((p.a, p.b, p.c, p.d), (2500, 200, 200, 78));
        let p = choose_params(1, 1, 8, 1).unwrap();
        assert_eq!((p.a, p.b, p.d), (4, 2, 1));
        assert_eq!(
            choose_params(1, 1, 7, 1),
            Err(Error::ParamsInfeasible("D=0".into()))
        );
    }
}
