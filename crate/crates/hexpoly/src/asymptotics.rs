//! Certified asymptotics of rational generating functions.
//!
//! For a series with nonnegative coefficients and rational generating
//! function `num/den`, the exponential growth rate is `1/r` where `r` is
//! the smallest positive root of `den`, and when that pole is simple and
//! strictly dominant the coefficients satisfy `c_n ~ c * (1/r)^n` with
//! amplitude `c = -num(r) / (r * den'(r))`.
//!
//! Everything here is exact rational arithmetic: roots are isolated by
//! Sturm-chain bisection into rational intervals (or hit exactly via the
//! rational root theorem), dominance over complex roots is certified by
//! Graeffe root-squaring combined with a Cauchy lower bound, simplicity is
//! decided through gcds, and growth and amplitude come out as intervals
//! whose width the caller controls. Floating point appears only in the
//! final conversions and in the empirical growth helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{IntPoly, UniRat};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AsymptoticsError {
    #[error("denominator vanishes at the origin; the series has no expansion")]
    RootAtOrigin,
    #[error("denominator has no positive real root")]
    NoPositiveRoot,
    #[error("dominant pole is not simple")]
    NotSimplePole,
    #[error("could not certify the positive root as the smallest-modulus singularity")]
    UncertifiedDominance,
    #[error("interval widths did not reach the requested precision")]
    PrecisionExhausted,
    #[error("need at least {0} values to extrapolate")]
    NotEnoughData(usize),
    #[error("growth estimates must be strictly increasing to extrapolate")]
    NotIncreasing,
}

/// A closed interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Nearest-double approximation of the midpoint.
    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> RatInterval {
        assert!(!self.contains_zero(), "reciprocal of interval containing zero");
        RatInterval::new(self.hi.recip(), self.lo.recip())
    }

    /// `self / other`; `other` must not contain zero.
    pub fn div(&self, other: &RatInterval) -> RatInterval {
        self.mul(&other.recip())
    }

    pub fn scale(&self, k: &BigRational) -> RatInterval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    /// Interval Horner evaluation of an integer polynomial.
    pub fn eval_poly(&self, p: &IntPoly) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in p.coeffs().iter().rev() {
            let c = BigRational::from_integer(c.clone());
            acc = acc.mul(self);
            acc = acc.add(&RatInterval::point(c));
        }
        acc
    }
}

/// Growth rate and amplitude of a series, as certified intervals around
/// the dominant simple pole at `root`.
#[derive(Clone, Debug)]
pub struct AsymptoticProfile {
    pub root: RatInterval,
    pub growth: RatInterval,
    pub amplitude: RatInterval,
}

// ---------------------------------------------------------------------
// Sturm chains.

/// Negated primitive remainder sequence starting from a squarefree
/// polynomial; scaling is by positive rationals only, so the sign pattern
/// is exactly that of the classical Sturm chain.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        let rem = rational_rem(&chain[k - 2], &chain[k - 1]);
        if rem.iter().all(|c| c.is_zero()) {
            break;
        }
        chain.push(-&primitive_scaled(&rem));
    }
    chain
}

/// Remainder of integer polynomials computed over the rationals,
/// returned as ascending rational coefficients (untrimmed).
fn rational_rem(a: &IntPoly, b: &IntPoly) -> Vec<BigRational> {
    let db = b.degree().expect("division by zero polynomial");
    let mut rem: Vec<BigRational> = a
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let lead = BigRational::from_integer(b.leading_coeff().clone());
    while let Some(dr) = degree_of(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        for (i, c) in b.coeffs().iter().enumerate() {
            let delta = &factor * &BigRational::from_integer(c.clone());
            rem[dr - db + i] -= delta;
        }
        rem[dr] = BigRational::zero();
    }
    rem
}

fn degree_of(coeffs: &[BigRational]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Clears denominators and divides by the content: a strictly positive
/// rescaling into an integer polynomial, preserving every coefficient's
/// sign (unlike `primitive_part`, which fixes the leading sign).
fn primitive_scaled(coeffs: &[BigRational]) -> IntPoly {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * &BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let p = IntPoly::from_big_coeffs(ints);
    let content = p.content();
    if content.is_zero() || content.is_one() {
        return p;
    }
    IntPoly::from_big_coeffs(
        p.coeffs()
            .iter()
            .map(|x| x / &content)
            .collect::<Vec<BigInt>>(),
    )
}

fn sign_variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut flips = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                flips += 1;
            }
            last = s;
        }
    }
    flips
}

/// Number of distinct roots in the open interval `(a, b)`; neither
/// endpoint may be a root of the chain's first polynomial.
fn count_roots(chain: &[IntPoly], a: &BigRational, b: &BigRational) -> usize {
    debug_assert!(!chain[0].eval(a).is_zero());
    debug_assert!(!chain[0].eval(b).is_zero());
    sign_variations(chain, a) - sign_variations(chain, b)
}

// ---------------------------------------------------------------------
// Root bounds and certificates.

/// Cauchy upper bound: every complex root has modulus at most this.
fn cauchy_upper_bound(p: &IntPoly) -> BigRational {
    let d = p.degree().expect("bound of zero polynomial");
    let lead = BigRational::from_integer(p.leading_coeff().abs());
    let mut max = BigRational::zero();
    for c in &p.coeffs()[..d] {
        let r = BigRational::from_integer(c.abs()) / &lead;
        if r > max {
            max = r;
        }
    }
    BigRational::one() + max
}

/// Cauchy lower bound: every complex root has modulus at least this.
/// Requires a nonzero constant term.
fn cauchy_lower_bound(p: &IntPoly) -> BigRational {
    let c0 = BigRational::from_integer(p.coeff(0).abs());
    assert!(!c0.is_zero());
    let mut max = BigRational::zero();
    for c in &p.coeffs()[1..] {
        let r = BigRational::from_integer(c.abs());
        if r > max {
            max = r;
        }
    }
    &c0 / (&c0 + &max)
}

/// One Graeffe root-squaring step: the result's roots are the squares of
/// the input's roots.
fn graeffe_step(p: &IntPoly) -> IntPoly {
    let coeffs = p.coeffs();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if i % 2 == 0 {
            even.push(c.clone());
        } else {
            odd.push(c.clone());
        }
    }
    let e = IntPoly::from_big_coeffs(even);
    let o = IntPoly::from_big_coeffs(odd);
    let shifted_o2 = &IntPoly::monomial(BigInt::one(), 1) * &(&o * &o);
    &(&e * &e) - &shifted_o2
}

/// Relative slack of the dominance certificate: it establishes that no
/// complex root has modulus below `threshold * (1 - 1/128)`. The slack
/// cannot be arbitrarily small: the threshold root itself stays in the
/// polynomial, which caps the Cauchy lower bound of every Graeffe
/// iterate near 1/2, and `(1 - 1/128)^(2^8)` is comfortably under that
/// cap while 2^8 squarings keep coefficient growth manageable.
fn certificate_margin() -> BigRational {
    BigRational::one() - BigRational::new(BigInt::one(), 128.into())
}

/// Certifies that no complex root of `p` has modulus below
/// `threshold * (1 - 1/128)`. The polynomial is rescaled so the
/// threshold becomes radius one, then Graeffe-squared: once the Cauchy
/// lower bound of an iterate clears `margin^(2^k)`, every root of the
/// original lies on or outside the slightly shrunk circle.
fn certify_min_modulus(p: &IntPoly, threshold: &BigRational) -> bool {
    if threshold <= &BigRational::zero() {
        return true;
    }
    let d = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return true,
    };
    // scaled(z) = p(threshold * z) cleared to integer coefficients:
    // coefficient i becomes c_i * a^i * b^(d-i) for threshold a/b.
    let a = threshold.numer();
    let b = threshold.denom();
    let mut a_pow = BigInt::one();
    let mut scaled = Vec::with_capacity(d + 1);
    for (i, c) in p.coeffs().iter().enumerate() {
        scaled.push(c * &a_pow * b.pow((d - i) as u32));
        a_pow *= a;
    }
    let mut iterate = IntPoly::from_big_coeffs(scaled).primitive_part();
    let mut margin = certificate_margin();
    for _ in 0..8 {
        iterate = graeffe_step(&iterate).primitive_part();
        margin = &margin * &margin;
        if margin <= cauchy_lower_bound(&iterate) {
            return true;
        }
    }
    false
}

/// Positive divisors of `n` (which must fit in u64), ascending.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

/// All positive rational roots of `p`, ascending, via the rational root
/// theorem; `None` when the coefficients are too large to factor quickly.
fn positive_rational_roots(p: &IntPoly) -> Option<Vec<BigRational>> {
    const LIMIT: u64 = 1_000_000_000;
    let c0 = p.coeff(0);
    let lead = p.leading_coeff();
    if c0.abs().to_u64().is_none_or(|v| v > LIMIT)
        || lead.abs().to_u64().is_none_or(|v| v > LIMIT)
    {
        return None;
    }
    let nums = small_divisors(&c0)?;
    let dens = small_divisors(&lead)?;
    let mut roots = Vec::new();
    for &a in &nums {
        for &b in &dens {
            let cand = BigRational::new(a.into(), b.into());
            if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Divides out the exact rational root `r = a/b` once: returns `p`
/// divided by `b x - a`.
fn deflate_rational_root(p: &IntPoly, r: &BigRational) -> IntPoly {
    let linear = IntPoly::from_big_coeffs(vec![-r.numer().clone(), r.denom().clone()]);
    p.div_exact(&linear)
        .expect("deflation of a verified rational root")
}

// ---------------------------------------------------------------------
// Dominant root isolation.

struct Isolation {
    interval: RatInterval,
    /// Squarefree part of the denominator.
    squarefree: IntPoly,
    /// gcd of the denominator and its derivative: root of this inside the
    /// bracket means a multiple pole.
    repeated: IntPoly,
}

fn two_pow_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Brackets the smallest positive real root of `den` in an interval no
/// wider than `tol` (a point interval when the root is rational),
/// certifying along the way that the root exists and is the
/// smallest-modulus root overall.
pub fn dominant_root(den: &IntPoly, tol: &BigRational) -> Result<RatInterval, AsymptoticsError> {
    isolate_dominant_root(den, tol).map(|iso| iso.interval)
}

fn isolate_dominant_root(den: &IntPoly, tol: &BigRational) -> Result<Isolation, AsymptoticsError> {
    assert!(tol.is_positive(), "tolerance must be positive");
    if den.coeff(0).is_zero() {
        return Err(AsymptoticsError::RootAtOrigin);
    }
    let repeated = den.gcd(&den.derivative());
    let squarefree = if repeated.degree() == Some(0) {
        den.clone()
    } else {
        den.div_exact(&repeated)
            .expect("gcd divides the polynomial")
    };
    if squarefree.degree().unwrap_or(0) == 0 {
        return Err(AsymptoticsError::NoPositiveRoot);
    }

    // Exact rational hit: take the smallest positive rational root if no
    // smaller irrational root undercuts it.
    if let Some(roots) = positive_rational_roots(&squarefree) {
        if let Some(smallest) = roots.first() {
            let deflated = deflate_rational_root(&squarefree, smallest);
            let undercut = if deflated.degree().unwrap_or(0) == 0 {
                false
            } else {
                let chain = sturm_chain(&deflated);
                count_roots(&chain, &BigRational::zero(), smallest) > 0
            };
            if !undercut {
                let interval = RatInterval::point(smallest.clone());
                certify_dominance(&squarefree, &interval)?;
                return Ok(Isolation {
                    interval,
                    squarefree,
                    repeated,
                });
            }
        }
    }

    let chain = sturm_chain(&squarefree);
    let zero = BigRational::zero();
    let mut hi = cauchy_upper_bound(&squarefree);
    while squarefree.eval(&hi).is_zero() {
        hi += BigRational::one();
    }
    if count_roots(&chain, &zero, &hi) == 0 {
        return Err(AsymptoticsError::NoPositiveRoot);
    }

    // Invariant: the smallest positive root lies in (lo, hi], both
    // endpoints are non-roots.
    let mut lo = zero.clone();
    let two = BigRational::from_integer(2.into());
    loop {
        let width = &hi - &lo;
        if &width <= tol && count_roots(&chain, &lo, &hi) == 1 {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if squarefree.eval(&mid).is_zero() {
            // An exact root surfaced mid-bisection (possible only for
            // irrational-free cases the scan skipped): nudge the cut just
            // below it so the invariant machinery keeps working.
            let mut nudge = &mid - &width * two_pow_neg(20);
            while squarefree.eval(&nudge).is_zero() {
                nudge = (&lo + &nudge) / &two;
            }
            if count_roots(&chain, &lo, &nudge) == 0 {
                let interval = RatInterval::point(mid);
                certify_dominance(&squarefree, &interval)?;
                return Ok(Isolation {
                    interval,
                    squarefree,
                    repeated,
                });
            }
            hi = nudge;
        } else if count_roots(&chain, &lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let interval = RatInterval::new(lo, hi);
    certify_dominance(&squarefree, &interval)?;
    Ok(Isolation {
        interval,
        squarefree,
        repeated,
    })
}

/// Certifies that nothing (real or complex) has modulus meaningfully
/// below the bracketed root; the certificate's own relative slack is
/// [`certificate_margin`].
fn certify_dominance(
    squarefree: &IntPoly,
    interval: &RatInterval,
) -> Result<(), AsymptoticsError> {
    if certify_min_modulus(squarefree, interval.lo()) {
        Ok(())
    } else {
        Err(AsymptoticsError::UncertifiedDominance)
    }
}

/// True when the bracketed pole is simple in the original denominator.
fn pole_is_simple(iso: &Isolation) -> bool {
    if iso.repeated.degree().unwrap_or(0) == 0 {
        return true;
    }
    if iso.interval.is_point() {
        return !iso.repeated.eval(iso.interval.lo()).is_zero();
    }
    // The bracket isolates exactly one root of the squarefree part; the
    // pole is multiple exactly when gcd(squarefree, repeated) also
    // vanishes there.
    let shared = iso.squarefree.gcd(&iso.repeated);
    if shared.degree().unwrap_or(0) == 0 {
        return true;
    }
    let shared_sf = {
        let g = shared.gcd(&shared.derivative());
        if g.degree() == Some(0) {
            shared
        } else {
            shared.div_exact(&g).expect("gcd divides")
        }
    };
    let chain = sturm_chain(&shared_sf);
    let (mut a, mut b) = (iso.interval.lo().clone(), iso.interval.hi().clone());
    // Endpoints of the bracket are never roots of the squarefree part,
    // hence not of its divisor either; guard anyway.
    let two = BigRational::from_integer(2.into());
    while shared_sf.eval(&a).is_zero() || shared_sf.eval(&b).is_zero() {
        a = (&a + iso.interval.lo()) / &two;
        b = (&b + iso.interval.hi()) / &two;
    }
    count_roots(&chain, &a, &b) == 0
}

// ---------------------------------------------------------------------
// Profiles.

/// Growth rate and amplitude of the series of `f`, with both intervals
/// certified to width at most `max_width`. The dominant pole must be
/// simple and of strictly smallest modulus among the denominator's roots.
pub fn profile(f: &UniRat, max_width: &BigRational) -> Result<AsymptoticProfile, AsymptoticsError> {
    assert!(max_width.is_positive(), "width target must be positive");
    let den = f.den();
    let num = f.num();
    let dden = den.derivative();
    let mut tol = max_width.clone();
    for _ in 0..24 {
        let iso = isolate_dominant_root(den, &tol)?;
        if !pole_is_simple(&iso) {
            return Err(AsymptoticsError::NotSimplePole);
        }
        let root = iso.interval;
        let growth = root.recip();
        let num_at = root.eval_poly(num);
        let dden_at = root.eval_poly(&dden);
        if !num_at.contains_zero() && !dden_at.contains_zero() {
            let amplitude = num_at.div(&root.mul(&dden_at)).neg();
            if growth.width() <= *max_width && amplitude.width() <= *max_width {
                return Ok(AsymptoticProfile {
                    root,
                    growth,
                    amplitude,
                });
            }
        }
        tol *= two_pow_neg(10);
    }
    Err(AsymptoticsError::PrecisionExhausted)
}

// ---------------------------------------------------------------------
// Empirical growth and extrapolation.

/// Consecutive-count ratios `counts[n+1] / counts[n]` as doubles; a NaN
/// marks division by a zero count.
pub fn empirical_growth(counts: &[BigUint]) -> Vec<f64> {
    counts
        .windows(2)
        .map(|w| {
            if w[0].is_zero() {
                f64::NAN
            } else {
                BigRational::new(
                    BigInt::from(w[1].clone()),
                    BigInt::from(w[0].clone()),
                )
                .to_f64()
                .unwrap_or(f64::NAN)
            }
        })
        .collect()
}

/// Linear step extrapolation of a strictly increasing sequence whose
/// increments roughly halve: `2 * last - previous`.
pub fn extrapolate(values: &[f64]) -> Result<f64, AsymptoticsError> {
    check_increasing(values)?;
    let n = values.len();
    Ok(2.0 * values[n - 1] - values[n - 2])
}

/// Aitken-style extrapolation fitting a geometric tail to the increments;
/// falls back to the linear step when the fitted ratio is degenerate.
pub fn extrapolate_fitted(values: &[f64]) -> Result<f64, AsymptoticsError> {
    check_increasing(values)?;
    let n = values.len();
    let d_last = values[n - 1] - values[n - 2];
    let d_prev = values[n - 2] - values[n - 3];
    let ratio = d_last / d_prev;
    if !(0.0..1.0).contains(&ratio) {
        return extrapolate(values);
    }
    Ok(values[n - 1] + d_last * ratio / (1.0 - ratio))
}

fn check_increasing(values: &[f64]) -> Result<(), AsymptoticsError> {
    if values.len() < 3 {
        return Err(AsymptoticsError::NotEnoughData(3));
    }
    // `partial_cmp` keeps NaN on the error path: anything that is not
    // strictly `Less` than its successor (NaN included) is rejected.
    let ascends = |w: &[f64]| w[0].partial_cmp(&w[1]) == Some(std::cmp::Ordering::Less);
    if !values.windows(2).all(ascends) {
        return Err(AsymptoticsError::NotIncreasing);
    }
    Ok(())
}
