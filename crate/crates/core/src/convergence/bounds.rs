use super::BoundsError;

const GUARD_HI: f64 = 1e300;
const GUARD_LO: f64 = 1e-300;

/// Arithmetic of non-negative reals, either plainly or through logarithms.
trait Domain {
    fn zero() -> f64;
    fn from_ln(l: f64) -> f64;
    fn to_ln(v: f64) -> f64;
    fn add(a: f64, b: f64) -> f64;
    fn mul(a: f64, b: f64) -> f64;
    fn powi(a: f64, j: usize) -> f64;
    /// `false` when a plain value left the safe range.
    fn in_range(v: f64) -> bool;
}

struct Linear;
struct Log;

impl Domain for Linear {
    fn zero() -> f64 {
        0.0
    }
    fn from_ln(l: f64) -> f64 {
        l.exp()
    }
    fn to_ln(v: f64) -> f64 {
        v.ln()
    }
    fn add(a: f64, b: f64) -> f64 {
        a + b
    }
    fn mul(a: f64, b: f64) -> f64 {
        a * b
    }
    fn powi(a: f64, j: usize) -> f64 {
        a.powi(j as i32)
    }
    fn in_range(v: f64) -> bool {
        v == 0.0 || (GUARD_LO..=GUARD_HI).contains(&v)
    }
}

impl Domain for Log {
    fn zero() -> f64 {
        f64::NEG_INFINITY
    }
    fn from_ln(l: f64) -> f64 {
        l
    }
    fn to_ln(v: f64) -> f64 {
        v
    }
    fn add(a: f64, b: f64) -> f64 {
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if lo == f64::NEG_INFINITY {
            return hi;
        }
        hi + (lo - hi).exp().ln_1p()
    }
    fn mul(a: f64, b: f64) -> f64 {
        if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        a + b
    }
    fn powi(a: f64, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            a * j as f64
        }
    }
    fn in_range(_: f64) -> bool {
        true
    }
}

/// `ln(a + b)` from `ln a`, `ln b`.
fn ln_add(a: f64, b: f64) -> f64 {
    Log::add(a, b)
}

/// Seed tables `ℓ = 0..=lmax` as natural logarithms; `-inf` encodes zero.
pub(crate) struct LnSeeds {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
}

/// `ln ℓ!` for `ℓ = 0..=n`.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(0.0);
    for i in 1..=n {
        v.push(v[i - 1] + (i as f64).ln());
    }
    v
}

/// Crude seeds `s_{1,ℓ} = 1/ℓ!`, `s̃_{1,ℓ} = 1/(2ℓ!)`.
pub(crate) fn crude_seeds(lmax: usize) -> LnSeeds {
    let lf = ln_factorials(lmax);
    LnSeeds {
        f: lf.iter().map(|l| -l).collect(),
        g: lf.iter().map(|l| -l - std::f64::consts::LN_2).collect(),
    }
}

/// Refined seeds: `d_{1,0} = d̃_{1,0} = ½(x+y)`,
/// `d_{1,ℓ} = (½ y^ℓ x + y (x+y)^ℓ)/ℓ!`, `d̃_{1,ℓ} = y^ℓ x/(2ℓ!)`.
pub(crate) fn refined_seeds(x: f64, y: f64, lmax: usize) -> LnSeeds {
    let lf = ln_factorials(lmax);
    let (lx, ly, ls) = (x.ln(), y.ln(), (x + y).ln());
    let ln_half = -std::f64::consts::LN_2;
    let pw = |base: f64, l: usize| Log::powi(base, l);
    let mut f = vec![ln_half + ls];
    let mut g = vec![ln_half + ls];
    for l in 1..=lmax {
        let a = Log::mul(ln_half + pw(ly, l), lx);
        let b = Log::mul(ly, pw(ls, l));
        f.push(ln_add(a, b) - lf[l]);
        g.push(a - lf[l]);
    }
    LnSeeds { f, g }
}

/// Runs the odd-`k` bound recursion up to `k_max`:
/// `t_{k,ℓ} = Σ_j 2^j ρ_k^j / j! · t_{k−2,ℓ−kj}` for `ℓ ≠ k−1`,
/// `t_{k,k−1} = k ρ_k + t_{k−2,k−1}`, `ρ_k = (s_{k−2,k−1} + s̃_{k−2,k−1})/(2k)`.
///
/// Returns `ln ρ_k` for `k = 3, 5, …, k_max` and whether log space was
/// needed.
pub(crate) fn run_recursion(seeds: &LnSeeds, k_max: usize) -> (Vec<f64>, bool) {
    let in_range = seeds
        .f
        .iter()
        .chain(&seeds.g)
        .all(|&l| l == f64::NEG_INFINITY || Linear::in_range(l.exp()));
    if in_range {
        if let Some(out) = recurse::<Linear>(seeds, k_max) {
            return (out, false);
        }
    }
    (
        recurse::<Log>(seeds, k_max).expect("log space never overflows"),
        true,
    )
}

fn recurse<D: Domain>(seeds: &LnSeeds, k_max: usize) -> Option<Vec<f64>> {
    let lmax = k_max - 1;
    let lf = ln_factorials(lmax);
    let mut s: Vec<f64> = seeds.f.iter().map(|&l| D::from_ln(l)).collect();
    let mut st: Vec<f64> = seeds.g.iter().map(|&l| D::from_ln(l)).collect();
    let mut out = Vec::new();
    let mut k = 3;
    while k <= k_max {
        let rho = D::mul(
            D::from_ln(-((2 * k) as f64).ln()),
            D::add(s[k - 1], st[k - 1]),
        );
        if !D::in_range(rho) {
            return None;
        }
        out.push(D::to_ln(rho));
        if k + 2 > k_max {
            break;
        }
        // coefficient 2^j ρ^j / j!
        let jmax = lmax / k;
        let coef: Vec<f64> = (0..=jmax)
            .map(|j| {
                D::mul(
                    D::from_ln(j as f64 * std::f64::consts::LN_2 - lf[j]),
                    D::powi(rho, j),
                )
            })
            .collect();
        let k_rho = D::mul(D::from_ln((k as f64).ln()), rho);
        let step = |prev: &[f64]| -> Option<Vec<f64>> {
            let mut next = vec![D::zero(); lmax + 1];
            for (l, slot) in next.iter_mut().enumerate() {
                let v = if l == k - 1 {
                    D::add(k_rho, prev[l])
                } else {
                    let mut acc = D::zero();
                    for (j, c) in coef.iter().enumerate().take(l / k + 1) {
                        acc = D::add(acc, D::mul(*c, prev[l - k * j]));
                    }
                    acc
                };
                if !D::in_range(v) {
                    return None;
                }
                *slot = v;
            }
            Some(next)
        };
        s = step(&s)?;
        st = step(&st)?;
        k += 2;
    }
    Some(out)
}

/// Validates `k_max` odd and at least `min`.
pub(crate) fn check_depth(k_max: usize, min: usize) -> Result<(), BoundsError> {
    if k_max % 2 == 0 || k_max < min {
        Err(BoundsError::BadDepth { k_max, min })
    } else {
        Ok(())
    }
}
