//! Closed-form upper bounds on ex and z, and a harness comparing them with
//! exact small-order values.
//!
//! Values are computed in double precision. When every power in a formula
//! has an integral value (for example 64^{2/3} = 16) an exact integer is
//! reported too.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{ex_exact, z_exact, Budget, ExtremalResult, Ledger, LedgerKey, Mode};
use crate::families::{cycle, gen_cube, l3_theta, theta};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BoundName {
    /// C·n^{2−2/(2s+1)} for ex(n, H_{s,t}); C supplied by the caller.
    Hst,
    /// 16k²p^k·[(mn)^{(k+1)/2k}+m+n] (k odd) or 16k²p^k·[m^{(k+2)/2k}n^{1/2}+m+n]
    /// (k even) for z(m, n, θ_{k,p}), m ≤ n.
    ThetaAsym,
    /// 144p³·((mn)^{2/3}+m+n) for z(m, n, θ_{3,p}).
    Theta3p,
    /// 12⁴p⁶·n^{7/5} for ex(n, L_3(θ_{3,p})).
    L3Theta3p,
    /// (2k−3)·[…] with the θ_{k,p} shape, for z(m, n, C_{2k}), m ≤ n.
    NvCycle,
    /// n^{8/5}+(2n)^{3/2} for ex(n, Q_8).
    FurediCube,
    /// C·n^{2−1/ρ} for a balanced rooted tree power of density ρ = num/den;
    /// C supplied by the caller.
    GenericPower,
}

const NAMES: [(BoundName, &str); 7] = [
    (BoundName::Hst, "Hst"),
    (BoundName::ThetaAsym, "theta_asym"),
    (BoundName::Theta3p, "theta3p"),
    (BoundName::L3Theta3p, "L3theta3p"),
    (BoundName::NvCycle, "NV_cycle"),
    (BoundName::FurediCube, "furedi_cube"),
    (BoundName::GenericPower, "generic_power"),
];

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = NAMES.iter().find(|(n, _)| n == self).unwrap().1;
        f.write_str(name)
    }
}

impl FromStr for BoundName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NAMES
            .iter()
            .find(|(_, t)| t.eq_ignore_ascii_case(s))
            .map(|(n, _)| *n)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown bound {s}")))
    }
}

impl BoundName {
    /// Whether the constant is explicit, so exceeding the bound is an error.
    pub fn explicit(self) -> bool {
        !matches!(self, BoundName::Hst | BoundName::GenericPower)
    }

    /// Bounds on z take orders (m, n); the rest take n.
    pub fn bipartite(self) -> bool {
        matches!(self, BoundName::ThetaAsym | BoundName::Theta3p | BoundName::NvCycle)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSpec {
    pub name: BoundName,
    pub params: BTreeMap<String, u64>,
    /// The caller-supplied constant for bounds without an explicit one.
    pub constant: Option<f64>,
}

impl BoundSpec {
    pub fn new(name: BoundName, params: &[(&str, u64)]) -> Self {
        BoundSpec {
            name,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            constant: None,
        }
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant = Some(c);
        self
    }

    /// Same bound at other orders.
    pub fn at(&self, orders: &[usize]) -> Result<Self> {
        let mut s = self.clone();
        match (self.name.bipartite(), orders) {
            (true, &[m, n]) => {
                s.params.insert("m".into(), m.min(n) as u64);
                s.params.insert("n".into(), m.max(n) as u64);
            }
            (false, &[n]) => {
                s.params.insert("n".into(), n as u64);
            }
            _ => return Err(Error::InvalidParameter(format!("bad orders {orders:?} for {}", self.name))),
        }
        Ok(s)
    }

    fn get(&self, key: &str) -> Result<u64> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs parameter {key}", self.name)))
    }

    fn get_min(&self, key: &str, min: u64) -> Result<u64> {
        let v = self.get(key)?;
        if v < min {
            return Err(Error::InvalidParameter(format!("{key} must be at least {min}")));
        }
        Ok(v)
    }

    /// The pattern whose extremal number the bound controls.
    pub fn pattern(&self) -> Result<Graph> {
        let u = |k: &str, min: u64| self.get_min(k, min).map(|v| v as usize);
        Ok(match self.name {
            BoundName::Hst => gen_cube(u("s", 2)?, u("t", 2)?)?.into_graph(),
            BoundName::ThetaAsym => theta(u("k", 2)?, u("p", 2)?)?.into_graph(),
            BoundName::Theta3p => theta(3, u("p", 2)?)?.into_graph(),
            BoundName::L3Theta3p => l3_theta(u("p", 2)?)?,
            BoundName::NvCycle => cycle(2 * u("k", 2)?)?,
            BoundName::FurediCube => gen_cube(2, 2)?.into_graph(),
            BoundName::GenericPower => {
                return Err(Error::InvalidParameter("generic_power has no single associated pattern".into()))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub name: BoundName,
    pub value: f64,
    /// Exact value when every power is integral and the constant is explicit.
    pub exact: Option<u128>,
    /// True when the constant was supplied by the caller.
    pub conditional: bool,
}

/// x^{num/den}: float, plus the integer when it is one.
struct Pow {
    f: f64,
    exact: Option<u128>,
}

fn iroot(x: u128, k: u32) -> Option<u128> {
    let guess = (x as f64).powf(1.0 / k as f64).round() as u128;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r.checked_pow(k) == Some(x))
}

fn rpow(x: u64, num: u64, den: u64) -> Pow {
    let g = gcd(num, den);
    let (num, den) = (num / g, den / g);
    let f = (x as f64).powf(num as f64 / den as f64);
    let exact = (x as u128).checked_pow(num as u32).and_then(|y| iroot(y, den as u32));
    Pow { f, exact }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Σ of terms, each a float with an optional exact integer.
fn total(c: u128, terms: &[Pow]) -> (f64, Option<u128>) {
    let f = c as f64 * terms.iter().map(|t| t.f).sum::<f64>();
    let exact = terms
        .iter()
        .try_fold(0u128, |acc, t| acc.checked_add(t.exact?))
        .and_then(|s| s.checked_mul(c));
    (f, exact)
}

/// The shared shape of the θ and cycle bounds.
fn z_shape(c: u128, k: u64, m: u64, n: u64) -> Result<(f64, Option<u128>)> {
    if m > n {
        return Err(Error::InvalidParameter("this bound needs m <= n".into()));
    }
    let lin = |v: u64| Pow {
        f: v as f64,
        exact: Some(v as u128),
    };
    let main = if k % 2 == 1 {
        rpow(m * n, k + 1, 2 * k)
    } else {
        let a = rpow(m, k + 2, 2 * k);
        let b = rpow(n, 1, 2);
        Pow {
            f: a.f * b.f,
            exact: a.exact.zip(b.exact).map(|(x, y)| x * y),
        }
    };
    Ok(total(c, &[main, lin(m), lin(n)]))
}

pub fn eval_bound(spec: &BoundSpec) -> Result<BoundValue> {
    let (value, exact) = match spec.name {
        BoundName::Hst | BoundName::GenericPower => {
            let c = spec
                .constant
                .ok_or_else(|| Error::InvalidParameter(format!("{} needs a constant C", spec.name)))?;
            let n = spec.get_min("n", 1)? as f64;
            let exponent = if spec.name == BoundName::Hst {
                let s = spec.get_min("s", 2)?;
                let t = spec.get_min("t", 2)?;
                if t < s {
                    return Err(Error::InvalidParameter("Hst needs t >= s".into()));
                }
                2.0 - 2.0 / (2 * s + 1) as f64
            } else {
                let num = spec.get_min("rho_num", 1)?;
                let den = spec.get_min("rho_den", 1)?;
                2.0 - den as f64 / num as f64
            };
            (c * n.powf(exponent), None)
        }
        BoundName::ThetaAsym => {
            let k = spec.get_min("k", 2)?;
            let p = spec.get_min("p", 2)?;
            let c = 16 * (k as u128).pow(2) * (p as u128).checked_pow(k as u32).ok_or(Error::Overflow("16k^2p^k"))?;
            z_shape(c, k, spec.get_min("m", 1)?, spec.get_min("n", 1)?)?
        }
        BoundName::NvCycle => {
            let k = spec.get_min("k", 2)?;
            z_shape((2 * k - 3) as u128, k, spec.get_min("m", 1)?, spec.get_min("n", 1)?)?
        }
        BoundName::Theta3p => {
            let p = spec.get_min("p", 2)? as u128;
            let (m, n) = (spec.get_min("m", 1)?, spec.get_min("n", 1)?);
            let lin = |v: u64| Pow {
                f: v as f64,
                exact: Some(v as u128),
            };
            total(144 * p.pow(3), &[rpow(m * n, 2, 3), lin(m), lin(n)])
        }
        BoundName::L3Theta3p => {
            let p = spec.get_min("p", 2)? as u128;
            total(12u128.pow(4) * p.pow(6), &[rpow(spec.get_min("n", 1)?, 7, 5)])
        }
        BoundName::FurediCube => {
            let n = spec.get_min("n", 1)?;
            total(1, &[rpow(n, 8, 5), rpow(2 * n, 3, 2)])
        }
    };
    Ok(BoundValue {
        name: spec.name,
        value,
        exact,
        conditional: !spec.name.explicit(),
    })
}

/// One row of an exact-versus-bound table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub orders: Vec<usize>,
    /// `None` when the search ran out of budget.
    pub exact: Option<usize>,
    pub bound: f64,
    pub ratio: Option<f64>,
    /// exact > bound for an explicit-constant bound.
    pub violation: bool,
}

impl CompareRow {
    pub fn incomplete(&self) -> bool {
        self.exact.is_none()
    }
}

/// `value` to 6 significant digits.
pub fn sig6(value: f64) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let digits = 5 - value.abs().log10().floor() as i32;
    let s = format!("{:.*}", digits.max(0) as usize, value);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub const COMPARE_HEADER: &str = "orders,exact,bound,ratio";

impl CompareRow {
    pub fn csv(&self) -> String {
        let orders: Vec<String> = self.orders.iter().map(usize::to_string).collect();
        format!(
            "{},{},{},{}",
            orders.join("x"),
            self.exact.map_or("incomplete".to_string(), |e| e.to_string()),
            sig6(self.bound),
            self.ratio.map_or(String::new(), sig6)
        )
    }
}

/// For each order tuple, the exact value (stored in the ledger, or computed
/// and recorded) against the bound.
pub fn compare_exact_vs_bound(
    spec: &BoundSpec,
    orders: &[Vec<usize>],
    ledger: Option<&Ledger>,
    budget: &Budget,
) -> Result<Vec<CompareRow>> {
    let h = spec.pattern()?;
    let pattern_g6 = crate::canon::canonical_key(&h)?;
    let mut rows = Vec::with_capacity(orders.len());
    for o in orders {
        let bound = eval_bound(&spec.at(o)?)?.value;
        let key = LedgerKey {
            pattern_g6: pattern_g6.clone(),
            orders: o.clone(),
        };
        let stored = match ledger {
            Some(l) => l.exact_value(&key)?,
            None => None,
        };
        let exact = match stored {
            Some(v) => Some(v),
            None => {
                let r: ExtremalResult = match o[..] {
                    [n] => ex_exact(n, &h, budget)?,
                    [m, n] => z_exact(m, n, &h, budget)?,
                    _ => return Err(Error::InvalidParameter(format!("bad orders {o:?}"))),
                };
                if let Some(l) = ledger {
                    l.record(&r, std::slice::from_ref(&h))?;
                }
                (r.mode == Mode::Exact).then_some(r.value)
            }
        };
        rows.push(CompareRow {
            orders: o.clone(),
            exact,
            bound,
            ratio: exact.map(|e| e as f64 / bound),
            violation: spec.name.explicit() && exact.is_some_and(|e| e as f64 > bound),
        });
    }
    Ok(rows)
}
