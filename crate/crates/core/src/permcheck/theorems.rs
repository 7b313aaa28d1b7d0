use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{first_collision, gcd_is_one, PermError};
use crate::gf::{FiniteField, Field, Fq};
use crate::rdpoly::{eval_definition, eval_recurrence, RdpParams};

/// Default bound on `q` for a single grid point.
pub const DEFAULT_MAX_Q: u64 = 343;

/// The PP statements that can be swept. The string ids are the ones accepted
/// on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// `a = 0`: PP iff `k ≠ 2`, `n = 2l`, `gcd(l, q-1) = 1`.
    #[serde(rename = "T2.2")]
    ZeroParameter,
    /// `n = p^l`: for `p = 3` PP iff `k ≠ 0` and `gcd((3^l-1)/2, q-1) = 1`;
    /// never PP for `p > 3`.
    #[serde(rename = "T2.1")]
    PrimePower,
    /// `n = p^l+1`, `k = 2`: PP iff `gcd((p^l-1)/2, q-1) = 1`.
    #[serde(rename = "T-pl1-k2")]
    PlusOneKindTwo,
    /// `n = p^l+1`, `k ∉ {0,2}`: PP iff `l = 0`. For `k = 0`:
    /// PP iff `gcd((p^l+1)/2, q-1) = 1`.
    #[serde(rename = "T-pl1-gen")]
    PlusOneGeneral,
    /// `n = p^l+2`, `k = 2`: PP iff `l = 0`.
    #[serde(rename = "T-pl2-k2")]
    PlusTwoKindTwo,
    /// `n = p^l+2`, `k = 4`, `p > 3`: PP iff `x^{(p^l-1)/2} - x/2` is.
    #[serde(rename = "T-pl2-k4")]
    PlusTwoKindFour,
    /// `n = p^l+2`, `k ∉ {0,2,4}`: PP iff
    /// `(4-k)x^{(p^l+1)/2} + k·x^{(p^l-1)/2} + (2-k)x` is.
    #[serde(rename = "T-pl2-gen")]
    PlusTwoGeneral,
    /// `n = q+2`, `k = 0` over GF(q): PP iff `q ≡ 1 (mod 3)`.
    #[serde(rename = "T-k0-pe2")]
    KindZeroFieldOrder,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::ZeroParameter,
        TheoremId::PrimePower,
        TheoremId::PlusOneKindTwo,
        TheoremId::PlusOneGeneral,
        TheoremId::PlusTwoKindTwo,
        TheoremId::PlusTwoKindFour,
        TheoremId::PlusTwoGeneral,
        TheoremId::KindZeroFieldOrder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ZeroParameter => "T2.2",
            TheoremId::PrimePower => "T2.1",
            TheoremId::PlusOneKindTwo => "T-pl1-k2",
            TheoremId::PlusOneGeneral => "T-pl1-gen",
            TheoremId::PlusTwoKindTwo => "T-pl2-k2",
            TheoremId::PlusTwoKindFour => "T-pl2-k4",
            TheoremId::PlusTwoGeneral => "T-pl2-gen",
            TheoremId::KindZeroFieldOrder => "T-k0-pe2",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| PermError::UnknownTheorem(s.to_string()))
    }
}

/// Parameter ranges for a sweep. `ns` is used by the `a = 0` statement,
/// `ls` by the shape statements; `ks = None` means every `k ∈ [0, p-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremGrid {
    pub primes: Vec<u64>,
    pub exponents: Vec<u32>,
    pub ls: Vec<u32>,
    pub ns: Vec<u64>,
    pub ks: Option<Vec<u64>>,
    pub max_q: u64,
}

impl Default for TheoremGrid {
    fn default() -> Self {
        TheoremGrid { primes: vec![], exponents: vec![], ls: vec![], ns: vec![], ks: None, max_q: DEFAULT_MAX_Q }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub n: String,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
}

/// A claim made alongside a statement but not part of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxCheck {
    pub claim: String,
    pub predicted: bool,
    pub observed: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointResult {
    pub point: GridPoint,
    /// Brute-force PP verdict of `D_{n,k}`.
    pub lhs: bool,
    /// The statement's condition, or the brute-force verdict of its
    /// auxiliary polynomial.
    pub rhs: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub grid: Vec<PointResult>,
    pub failures: Vec<PointResult>,
    pub pass: bool,
}

impl TheoremReport {
    /// Grid points whose auxiliary claim failed.
    pub fn aux_failures(&self) -> impl Iterator<Item = &PointResult> {
        self.grid.iter().filter(|r| r.aux.as_ref().is_some_and(|a| !a.holds))
    }
}

struct Job {
    field: Field,
    point: GridPoint,
    l: u32,
}

fn is_pp(field: &Field, f: impl Fn(Fq) -> Fq) -> bool {
    first_collision(field, f).is_none()
}

fn rdp_is_pp(field: &Field, params: &RdpParams) -> bool {
    let values: Vec<Fq> = field.elements().map(|x| eval_recurrence(field, params, x).unwrap()).collect();
    is_pp(field, |x| values[x.index() as usize])
}

fn halves(p: u64, l: u32) -> (BigUint, BigUint) {
    let pl = BigUint::from(p).pow(l);
    ((&pl - 1u32) / 2u32, (&pl + 1u32) / 2u32)
}

fn kinds(grid: &TheoremGrid, p: u64) -> Vec<u64> {
    let mut ks: Vec<u64> = match &grid.ks {
        Some(ks) => ks.iter().map(|k| k % p).collect(),
        None => (0..p).collect(),
    };
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn jobs(id: TheoremId, grid: &TheoremGrid) -> Result<Vec<Job>, PermError> {
    let mut out = Vec::new();
    for &p in &grid.primes {
        for &e in &grid.exponents {
            let field = Field::new(p, e, None)?;
            let q = field.q();
            if q > grid.max_q {
                return Err(PermError::GridTooLarge { q, max: grid.max_q });
            }
            if p == 2 {
                continue;
            }
            let ks = kinds(grid, p);
            let mut push = |n: BigUint, k: u64, l: Option<u32>| {
                let point = GridPoint { p, e, q, n: n.to_string(), k, l };
                out.push(Job { field: field.clone(), point, l: l.unwrap_or(0) });
            };
            let pl = |l: u32| BigUint::from(p).pow(l);
            match id {
                TheoremId::ZeroParameter => {
                    for &n in &grid.ns {
                        for &k in &ks {
                            push(BigUint::from(n), k, None);
                        }
                    }
                }
                TheoremId::PrimePower => {
                    for &l in grid.ls.iter().filter(|&&l| l <= e) {
                        for &k in &ks {
                            push(pl(l), k, Some(l));
                        }
                    }
                }
                TheoremId::PlusOneKindTwo | TheoremId::PlusTwoKindTwo => {
                    let off = if id == TheoremId::PlusOneKindTwo { 1u32 } else { 2 };
                    if ks.contains(&2) {
                        for &l in &grid.ls {
                            push(pl(l) + off, 2, Some(l));
                        }
                    }
                }
                TheoremId::PlusOneGeneral => {
                    for &l in &grid.ls {
                        for &k in ks.iter().filter(|&&k| k != 2) {
                            push(pl(l) + 1u32, k, Some(l));
                        }
                    }
                }
                TheoremId::PlusTwoKindFour => {
                    if p > 3 && ks.contains(&4) {
                        for &l in &grid.ls {
                            push(pl(l) + 2u32, 4, Some(l));
                        }
                    }
                }
                TheoremId::PlusTwoGeneral => {
                    for &l in &grid.ls {
                        for &k in ks.iter().filter(|&&k| ![0, 2, 4 % p].contains(&k)) {
                            push(pl(l) + 2u32, k, Some(l));
                        }
                    }
                }
                TheoremId::KindZeroFieldOrder => {
                    if ks.contains(&0) {
                        push(pl(e) + 2u32, 0, Some(e));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn evaluate(id: TheoremId, job: &Job) -> PointResult {
    let field = &job.field;
    let (p, q, k, l) = (job.point.p, job.point.q, job.point.k, job.l);
    let n: BigUint = job.point.n.parse().unwrap();
    let unit = RdpParams::unit(field, n.clone(), k);
    let (low, high) = halves(p, l);
    let mut note = None;
    let mut aux = None;
    let (lhs, rhs) = match id {
        TheoremId::ZeroParameter => {
            let params = RdpParams::new(field, n.clone(), k, field.zero());
            let values: Vec<Fq> =
                field.elements().map(|x| eval_definition(field, &params, x).unwrap()).collect();
            let lhs = is_pp(field, |x| values[x.index() as usize]);
            let even = (&n % 2u32).is_zero();
            (lhs, k != 2 && even && gcd_is_one(&(&n / 2u32), q))
        }
        TheoremId::PrimePower => {
            let rhs = if p == 3 { k != 0 && gcd_is_one(&low, q) } else { false };
            (rdp_is_pp(field, &unit), rhs)
        }
        TheoremId::PlusOneKindTwo => (rdp_is_pp(field, &unit), gcd_is_one(&low, q)),
        TheoremId::PlusOneGeneral => {
            let rhs = if k == 0 {
                note = Some("k = 0: gcd((p^l+1)/2, q-1) = 1".to_string());
                gcd_is_one(&high, q)
            } else {
                l == 0
            };
            (rdp_is_pp(field, &unit), rhs)
        }
        TheoremId::PlusTwoKindTwo => (rdp_is_pp(field, &unit), l == 0),
        TheoremId::PlusTwoKindFour => {
            let half = field.half().unwrap();
            let lhs = rdp_is_pp(field, &unit);
            let rhs = is_pp(field, |x| field.sub(field.pow_big(x, &low), field.mul(half, x)));
            aux = Some(AuxCheck {
                claim: "PP iff l = 0".to_string(),
                predicted: l == 0,
                observed: lhs,
                holds: lhs == (l == 0),
            });
            (lhs, rhs)
        }
        TheoremId::PlusTwoGeneral => {
            let kk = field.from_u64(k);
            let c_high = field.sub(field.from_u64(4), kk);
            let c_lin = field.sub(field.from_u64(2), kk);
            let trinomial = |x: Fq| {
                let a = field.mul(c_high, field.pow_big(x, &high));
                let b = field.mul(kk, field.pow_big(x, &low));
                field.add(field.add(a, b), field.mul(c_lin, x))
            };
            (rdp_is_pp(field, &unit), is_pp(field, trinomial))
        }
        TheoremId::KindZeroFieldOrder => (rdp_is_pp(field, &unit), q % 3 == 1),
    };
    PointResult { point: job.point.clone(), lhs, rhs, agree: lhs == rhs, note, aux }
}

/// Sweeps one statement over a grid. Both sides of every equivalence are
/// computed independently: the left side is always a brute-force test of
/// `D_{n,k}` and the right side is the stated arithmetic condition or a
/// brute-force test of the stated auxiliary polynomial. Points are evaluated
/// in parallel and reported in grid order.
pub fn verify_theorem(id: TheoremId, grid: &TheoremGrid) -> Result<TheoremReport, PermError> {
    let jobs = jobs(id, grid)?;
    let results: Vec<PointResult> = jobs.par_iter().map(|job| evaluate(id, job)).collect();
    let failures: Vec<PointResult> = results.iter().filter(|r| !r.agree).cloned().collect();
    let pass = failures.is_empty();
    Ok(TheoremReport { theorem: id, grid: results, failures, pass })
}
