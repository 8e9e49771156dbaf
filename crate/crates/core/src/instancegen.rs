//! Seeded instance generators: discrete-Gaussian products, the `B_t`
//! family, and 3x3 matrices built from points near `(t, t)`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::exact::{cross2, rank_exact, IntMatrix, PlanePoint};

/// Tail cutoff in units of sigma.
const TAIL: f64 = 12.0;

/// One-dimensional discrete Gaussian on `Z`, centered at zero, sampled by
/// inverse CDF over `[-12 sigma, 12 sigma]`.
#[derive(Clone, Debug)]
pub struct DiscreteGaussian {
    sigma: f64,
    lo: i64,
    cdf: Vec<f64>,
}

impl DiscreteGaussian {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
        }
        let half = (TAIL * sigma).ceil().max(1.0) as i64;
        let mut acc = 0.0;
        let cdf = (-half..=half)
            .map(|k| {
                let k = k as f64;
                acc += (-k * k / (2.0 * sigma * sigma)).exp();
                acc
            })
            .collect();
        Ok(Self { sigma, lo: -half, cdf })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let total = *self.cdf.last().expect("nonempty support");
        let u = rng.random::<f64>() * total;
        let idx = self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1);
        self.lo + idx as i64
    }
}

/// Sample of `Z^2` with density proportional to `exp(-|x - center|^2 / (2 sigma^2))`.
pub fn dgauss2<R: Rng + ?Sized>(g: &DiscreteGaussian, center: &PlanePoint, rng: &mut R) -> PlanePoint {
    let dx = g.sample(rng);
    let dy = g.sample(rng);
    PlanePoint { x: &center.x + dx, y: &center.y + dy }
}

/// Deterministic RNG for the `index`-th instance of a seeded run.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductInstance {
    /// `rows x 2`.
    pub b: IntMatrix,
    /// `2 x cols`.
    pub c: IntMatrix,
    pub a: IntMatrix,
}

fn rank2_from(vs: &[PlanePoint]) -> bool {
    vs.iter().any(|v| vs.iter().any(|w| !cross2(v, w).is_zero()))
}

pub fn gen_product_with<R: Rng + ?Sized>(rows: usize, cols: usize, g: &DiscreteGaussian, rng: &mut R) -> Result<ProductInstance> {
    if rows < 2 || cols < 2 {
        return Err(Error::Parameter(format!("product instances need at least 2x2, got {rows}x{cols}")));
    }
    let origin = PlanePoint::origin();
    loop {
        let cs: Vec<PlanePoint> = (0..cols)
            .map(|_| loop {
                let p = dgauss2(g, &origin, rng);
                if !p.is_zero() && !p.x.is_negative() && !p.y.is_negative() {
                    break p;
                }
            })
            .collect();
        if !rank2_from(&cs) {
            continue;
        }
        let bs: Vec<PlanePoint> = (0..rows)
            .map(|_| loop {
                let p = dgauss2(g, &origin, rng);
                if !p.is_zero() && cs.iter().all(|c| !p.dot(c).is_negative()) {
                    break p;
                }
            })
            .collect();
        if !rank2_from(&bs) {
            continue;
        }
        let b = IntMatrix::from_rows(&bs.iter().map(PlanePoint::to_vec).collect::<Vec<_>>())?;
        let c = IntMatrix::from_columns(&cs.iter().map(PlanePoint::to_vec).collect::<Vec<_>>())?;
        let a = &b * &c;
        return Ok(ProductInstance { b, c, a });
    }
}

pub fn gen_product(rows: usize, cols: usize, sigma: f64, seed: u64) -> Result<ProductInstance> {
    gen_product_with(rows, cols, &DiscreteGaussian::new(sigma)?, &mut instance_rng(seed, 0))
}

pub fn gen_bt(t: i64) -> Result<IntMatrix> {
    if t < 1 {
        return Err(Error::Parameter(format!("t must be at least 1, got {t}")));
    }
    IntMatrix::from_rows(&[vec![t + 1, t, t - 1], vec![t, t, t], vec![t - 1, t, t + 1]])
}

pub fn gen_near_t_with<R: Rng + ?Sized>(t: i64, rng: &mut R) -> Result<IntMatrix> {
    if t < 3 {
        return Err(Error::Parameter(format!("t must be at least 3, got {t}")));
    }
    let g = DiscreteGaussian::new(2.0)?;
    let center = PlanePoint::new(t, t);
    loop {
        let pts: Vec<PlanePoint> = (0..3)
            .map(|_| loop {
                let p = dgauss2(&g, &center, rng);
                let two_x: BigInt = &p.x * 2;
                if !p.y.is_negative() && p.y <= two_x {
                    break p;
                }
            })
            .collect();
        let row = |f: &dyn Fn(&PlanePoint) -> BigInt| pts.iter().map(f).collect::<Vec<_>>();
        let m = IntMatrix::from_rows(&[row(&|p| p.x.clone()), row(&|p| p.y.clone()), row(&|p| &p.x * 2 - &p.y)])?;
        if rank_exact(&m) == 2 {
            return Ok(m);
        }
    }
}

pub fn gen_near_t(t: i64, seed: u64) -> Result<IntMatrix> {
    gen_near_t_with(t, &mut instance_rng(seed, 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Product,
    Bt,
    NearT,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Product => "product",
            GenKind::Bt => "bt",
            GenKind::NearT => "near_t",
        }
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(GenKind::Product),
            "bt" => Ok(GenKind::Bt),
            "near_t" => Ok(GenKind::NearT),
            other => Err(Error::Parameter(format!("unknown instance kind '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub rows: usize,
    pub cols: usize,
    pub sigma: f64,
    pub t: i64,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            GenKind::Product if self.rows < 2 || self.cols < 2 => {
                Err(Error::Parameter("product instances need rows >= 2 and cols >= 2".into()))
            }
            GenKind::Product if !(self.sigma.is_finite() && self.sigma > 0.0) => {
                Err(Error::Parameter("sigma must be positive".into()))
            }
            GenKind::Bt if self.t < 1 => Err(Error::Parameter("t must be at least 1".into())),
            GenKind::NearT if self.t < 3 => Err(Error::Parameter("t must be at least 3".into())),
            _ => Ok(()),
        }
    }

    /// The `index`-th matrix of this spec; each index draws from its own
    /// ChaCha stream so outputs do not depend on how many came before.
    pub fn generate(&self, index: u64) -> Result<IntMatrix> {
        self.validate()?;
        let mut rng = instance_rng(self.seed, index);
        match self.kind {
            GenKind::Product => {
                Ok(gen_product_with(self.rows, self.cols, &DiscreteGaussian::new(self.sigma)?, &mut rng)?.a)
            }
            GenKind::Bt => gen_bt(self.t),
            GenKind::NearT => gen_near_t_with(self.t, &mut rng),
        }
    }
}
