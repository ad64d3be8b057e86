//! Exact spectra of characteristic polynomials: integer roots are extracted
//! exactly; the remaining factor is made squarefree (Yun) and its real roots
//! are isolated into disjoint rational intervals by Sturm sequences, each
//! refinable to arbitrary decimal precision by bisection plus Newton
//! polishing.
//!
//! The code is written for characteristic polynomials of positive
//! semidefinite integer symmetric matrices (graph Laplacians and friends):
//! all roots are real, nonnegative, and bounded by the trace, which is what
//! makes trial division over `0..=trace` a complete integer-root search.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::charpoly::CharPoly;
use crate::highprec::Dec;

/// One real root of a squarefree integer polynomial, isolated in `(lo, hi)`.
/// The polynomial has no rational roots, so no bisection midpoint can ever
/// land on the root exactly.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    /// Squarefree primitive integer polynomial, ascending coefficients.
    poly: Arc<Vec<BigInt>>,
    lo: BigRational,
    hi: BigRational,
    sign_lo: i8,
}

/// A single eigenvalue: exact integer or isolated irrational.
#[derive(Clone, Debug)]
pub enum Eigenvalue {
    Exact(BigInt),
    Isolated(IsolatedRoot),
}

/// Multiset of real eigenvalues, ascending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub is_integral: bool,
}

fn sign_at(poly: &[BigInt], x: &BigRational) -> i8 {
    // sign of sum c_k a^k b^(d-k) for x = a/b, b > 0
    let a = x.numer();
    let b = x.denom();
    let d = poly.len() - 1;
    let mut acc = poly[d].clone();
    let mut bp = BigInt::one();
    for k in (0..d).rev() {
        bp *= b;
        acc = acc * a + &poly[k] * &bp;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

impl IsolatedRoot {
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from(BigInt::from(2));
        let s = sign_at(&self.poly, &mid);
        assert!(s != 0, "rational midpoint cannot be a root");
        if s == self.sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Shrinks the interval to width at most `10^(-digits)`.
    pub fn refine_to_width(&mut self, digits: u32) {
        let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
        while self.width() > target {
            self.bisect();
        }
    }

    pub fn approx_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine_to_width(17);
        let mid = (&r.lo + &r.hi) / BigRational::from(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Value within `10^(-digits)` of the root: bisection to roughly half the
    /// digits, then Newton steps on the exact polynomial in fixed-point
    /// arithmetic, with a final containment check against the bracket.
    pub fn to_dec(&self, digits: u32) -> Dec {
        let prec = digits + 8;
        let mut r = self.clone();
        r.refine_to_width(digits / 2 + 6);
        let mid = (&r.lo + &r.hi) / BigRational::from(BigInt::from(2));
        let mut x = Dec::from_ratio(&mid, prec);
        let coeffs: Vec<Dec> = r.poly.iter().map(|c| Dec::from_bigint(c, prec)).collect();
        let d = coeffs.len() - 1;
        let deriv: Vec<Dec> = (1..=d).map(|k| coeffs[k].mul_small(k as i64)).collect();
        let eval = |cs: &[Dec], x: &Dec| -> Dec {
            let mut acc = Dec::zero(prec);
            for c in cs.iter().rev() {
                acc = acc.mul(x).add(c);
            }
            acc
        };
        for _ in 0..2 {
            let fx = eval(&coeffs, &x);
            let dx = eval(&deriv, &x);
            if dx.is_zero() {
                break;
            }
            x = x.sub(&fx.div(&dx));
        }
        // the Newton iterate must stay inside the isolating bracket
        let lo = Dec::from_ratio(&r.lo, prec);
        let hi = Dec::from_ratio(&r.hi, prec);
        if x < lo || x > hi {
            r.refine_to_width(digits + 3);
            let mid = (&r.lo + &r.hi) / BigRational::from(BigInt::from(2));
            x = Dec::from_ratio(&mid, prec);
        }
        x.truncate(digits)
    }
}

impl Eigenvalue {
    pub fn approx_f64(&self) -> f64 {
        match self {
            Eigenvalue::Exact(k) => k.to_f64().unwrap_or(f64::NAN),
            Eigenvalue::Isolated(r) => r.approx_f64(),
        }
    }

    pub fn to_dec(&self, digits: u32) -> Dec {
        match self {
            Eigenvalue::Exact(k) => Dec::from_bigint(k, digits),
            Eigenvalue::Isolated(r) => r.to_dec(digits),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Eigenvalue::Exact(_))
    }
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Exact integer eigenvalues; `None` if any eigenvalue is irrational.
    pub fn exact_values(&self) -> Option<Vec<BigInt>> {
        self.eigenvalues
            .iter()
            .map(|e| match e {
                Eigenvalue::Exact(k) => Some(k.clone()),
                Eigenvalue::Isolated(_) => None,
            })
            .collect()
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e.approx_f64()).collect()
    }

    pub fn multiplicity_of_zero(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|e| matches!(e, Eigenvalue::Exact(k) if k.is_zero()))
            .count()
    }

    /// Canonical text form, e.g. `[0, 1, 3]`; irrational entries render as
    /// 12-digit approximations prefixed with `~`.
    pub fn text(&self) -> String {
        let parts: Vec<String> = self
            .eigenvalues
            .iter()
            .map(|e| match e {
                Eigenvalue::Exact(k) => k.to_string(),
                Eigenvalue::Isolated(r) => format!("~{}", r.to_dec(12).to_string_digits(12)),
            })
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Exact spectrum of a characteristic polynomial of a PSD integer symmetric
/// matrix: integer roots extracted by trial division over `0..=trace`,
/// irrational roots isolated by Sturm sequences on the squarefree factors.
pub fn spectrum(p: &CharPoly) -> Spectrum {
    let mut exact: Vec<BigInt> = Vec::new();
    let z = p.zero_root_multiplicity();
    for _ in 0..z {
        exact.push(BigInt::zero());
    }
    let mut q: Vec<BigInt> = p.strip_zero_roots().coeffs().to_vec();
    // positive integer roots are bounded by the root sum (all roots >= 0)
    let bound = p.root_sum().max(BigInt::zero());
    let bound = bound.to_u64().unwrap_or(u64::MAX).min(1_000_000);
    let mut k = 1u64;
    while q.len() > 1 && k <= bound {
        let kb = BigInt::from(k);
        while q.len() > 1 && eval_int(&q, &kb).is_zero() {
            deflate(&mut q, &kb);
            exact.push(kb.clone());
        }
        k += 1;
    }
    let mut isolated: Vec<IsolatedRoot> = Vec::new();
    if q.len() > 1 {
        for (factor, mult) in squarefree_decomposition(&q) {
            for root in isolate_roots(&factor) {
                for _ in 0..mult {
                    isolated.push(root.clone());
                }
            }
        }
    }
    let is_integral = isolated.is_empty();
    let mut eigenvalues: Vec<Eigenvalue> = exact.into_iter().map(Eigenvalue::Exact).collect();
    eigenvalues.extend(isolated.into_iter().map(Eigenvalue::Isolated));
    sort_eigenvalues(&mut eigenvalues);
    debug_assert_eq!(eigenvalues.len(), p.degree());
    Spectrum {
        eigenvalues,
        is_integral,
    }
}

/// High-precision decimal value of `spectrum.eigenvalues[index]`, within
/// `10^(-digits)` of the true root.
pub fn refine_root(s: &Spectrum, index: usize, digits: u32) -> Dec {
    assert!(digits >= 1);
    s.eigenvalues[index].to_dec(digits)
}

fn eval_int(poly: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divides a monic polynomial by `(x - k)` in place; `k` must be a root.
fn deflate(poly: &mut Vec<BigInt>, k: &BigInt) {
    let d = poly.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (0..d).rev() {
        carry = &poly[i + 1] + k * &carry;
        out[i] = carry.clone();
    }
    debug_assert!((&poly[0] + k * &out[0]).is_zero(), "k is not a root");
    *poly = out;
}

// --- rational polynomial helpers (small degrees only) ---

type RatPoly = Vec<BigRational>;

fn rat_trim(p: &mut RatPoly) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn rat_from_int(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| BigRational::from(c.clone())).collect()
}

fn rat_deriv(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let mut out: RatPoly = (1..p.len())
        .map(|k| &p[k] * BigRational::from(BigInt::from(k)))
        .collect();
    rat_trim(&mut out);
    out
}

fn rat_is_zero(p: &RatPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Remainder of `a / b` by classical long division. `b` non-constant.
fn rat_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut bb = b.clone();
    rat_trim(&mut bb);
    let db = bb.len() - 1;
    if db == 0 {
        return vec![BigRational::zero()];
    }
    let lead = bb.last().unwrap().clone();
    let mut r = a.clone();
    rat_trim(&mut r);
    while r.len() - 1 >= db && !rat_is_zero(&r) {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lead;
        for i in 0..db {
            let t = &f * &bb[i];
            r[dr - db + i] -= t;
        }
        r.pop(); // leading term cancels exactly
        rat_trim(&mut r);
    }
    r
}

/// Quotient of `a / b`; the division must be exact.
fn rat_div_exact(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut bb = b.clone();
    rat_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb.last().unwrap().clone();
    let mut r = a.clone();
    rat_trim(&mut r);
    if db == 0 {
        return r.iter().map(|c| c / &lead).collect();
    }
    if r.len() - 1 < db {
        debug_assert!(rat_is_zero(&r));
        return vec![BigRational::zero()];
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() - 1 >= db && !rat_is_zero(&r) {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lead;
        q[dr - db] = f.clone();
        for i in 0..db {
            let t = &f * &bb[i];
            r[dr - db + i] -= t;
        }
        r.pop();
        rat_trim(&mut r);
    }
    debug_assert!(rat_is_zero(&r), "inexact polynomial division");
    rat_trim(&mut q);
    q
}

/// Monic gcd over the rationals.
fn rat_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    rat_trim(&mut x);
    rat_trim(&mut y);
    if rat_is_zero(&x) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if rat_is_zero(&y) {
            break;
        }
        if y.len() == 1 {
            // nonzero constant divides everything
            return vec![BigRational::one()];
        }
        let r = rat_rem(&x, &y);
        x = y;
        y = r;
        rat_trim(&mut y);
    }
    let lead = x.last().unwrap().clone();
    if !lead.is_zero() {
        for c in x.iter_mut() {
            *c /= lead.clone();
        }
    }
    x
}

/// Clears denominators and content. With `positive_lead`, also flips the
/// overall sign to make the leading coefficient positive (do NOT use this on
/// Sturm chain members, where the sign pattern matters).
fn clear_denominators(p: &RatPoly, positive_lead: bool) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut denom_lcm = BigInt::one();
    for c in p {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    if positive_lead && ints.last().unwrap().is_negative() {
        for c in ints.iter_mut() {
            *c = -c.clone();
        }
    }
    ints
}

/// Yun's squarefree decomposition: returns `(factor, multiplicity)` pairs
/// with each factor squarefree, primitive integer, degree >= 1.
fn squarefree_decomposition(poly: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    let f = rat_from_int(poly);
    let fp = rat_deriv(&f);
    let g = rat_gcd(&f, &fp);
    if g.len() == 1 {
        return vec![(clear_denominators(&f, true), 1)];
    }
    let mut out = Vec::new();
    let mut b = rat_div_exact(&f, &g);
    let c = rat_div_exact(&fp, &g);
    let mut d: RatPoly = {
        let bp = rat_deriv(&b);
        let mut v = c;
        sub_into(&mut v, &bp);
        v
    };
    let mut i = 1;
    while b.len() > 1 {
        let a = rat_gcd(&b, &d);
        if a.len() > 1 {
            out.push((clear_denominators(&a, true), i));
        }
        b = rat_div_exact(&b, &a);
        let cnew = rat_div_exact(&d, &a);
        let bp = rat_deriv(&b);
        d = cnew;
        sub_into(&mut d, &bp);
        i += 1;
    }
    out
}

fn sub_into(a: &mut RatPoly, b: &RatPoly) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i] -= c;
    }
    rat_trim(a);
}

/// Sturm chain of a squarefree integer polynomial. Chain members are scaled
/// to primitive integer form by positive constants only.
fn sturm_chain(poly: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut chain: Vec<RatPoly> = Vec::new();
    let p0 = rat_from_int(poly);
    let p1 = rat_deriv(&p0);
    chain.push(p0);
    chain.push(p1);
    loop {
        let k = chain.len();
        if chain[k - 1].len() == 1 {
            break;
        }
        let r = rat_rem(&chain[k - 2], &chain[k - 1]);
        if rat_is_zero(&r) {
            break;
        }
        let neg: RatPoly = r.iter().map(|c| -c.clone()).collect();
        chain.push(neg);
    }
    chain.iter().map(|p| clear_denominators(p, false)).collect()
}

fn variations(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for p in chain {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Isolates all real roots of a squarefree primitive integer polynomial with
/// no rational roots. Returns disjoint open intervals, one root each.
fn isolate_roots(poly: &[BigInt]) -> Vec<IsolatedRoot> {
    let chain = sturm_chain(poly);
    // Cauchy bound: all roots lie strictly inside (-B, B)
    let lead = poly.last().unwrap().abs();
    let maxc = poly.iter().map(|c| c.abs()).max().unwrap();
    let b = BigRational::from(BigInt::one()) + BigRational::new(maxc, lead);
    let lo = -b.clone();
    let hi = b;
    let total = variations(&chain, &lo) - variations(&chain, &hi);
    let poly = Arc::new(poly.to_vec());
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi, total)];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            let sign_lo = sign_at(&poly, &lo);
            debug_assert!(sign_lo != 0);
            out.push(IsolatedRoot {
                poly: poly.clone(),
                lo,
                hi,
                sign_lo,
            });
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        let vl = variations(&chain, &lo);
        let vm = variations(&chain, &mid);
        let vh = variations(&chain, &hi);
        stack.push((lo, mid.clone(), vl - vm));
        stack.push((mid, hi, vm - vh));
    }
    out
}

/// Sorts eigenvalues ascending, refining isolated intervals until they are
/// pairwise disjoint and separated from every exact integer entry. Two
/// intervals over the same polynomial that overlap necessarily bracket the
/// same root (isolation produced disjoint intervals per root) and are left
/// alone.
fn sort_eigenvalues(eigs: &mut [Eigenvalue]) {
    let exacts: Vec<BigRational> = eigs
        .iter()
        .filter_map(|e| match e {
            Eigenvalue::Exact(k) => Some(BigRational::from(k.clone())),
            _ => None,
        })
        .collect();
    for e in eigs.iter_mut() {
        if let Eigenvalue::Isolated(r) = e {
            for x in &exacts {
                while r.lo() <= x && x <= r.hi() {
                    r.bisect();
                }
            }
        }
    }
    loop {
        let mut changed = false;
        for i in 0..eigs.len() {
            for j in (i + 1)..eigs.len() {
                let (a, b) = eigs.split_at_mut(j);
                if let (Eigenvalue::Isolated(ri), Eigenvalue::Isolated(rj)) =
                    (&mut a[i], &mut b[0])
                {
                    if Arc::ptr_eq(&ri.poly, &rj.poly) {
                        continue; // same factor: either clones or already disjoint
                    }
                    if ri.lo < rj.hi && rj.lo < ri.hi {
                        if ri.width() >= rj.width() {
                            ri.bisect();
                        } else {
                            rj.bisect();
                        }
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    eigs.sort_by(|a, b| match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => x.cmp(y),
        (Eigenvalue::Exact(x), Eigenvalue::Isolated(r)) => {
            // x is outside [lo, hi], so comparing against lo decides
            if BigRational::from(x.clone()) < *r.lo() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (Eigenvalue::Isolated(r), Eigenvalue::Exact(y)) => {
            if BigRational::from(y.clone()) < *r.lo() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (Eigenvalue::Isolated(r), Eigenvalue::Isolated(s)) => r.lo().cmp(s.lo()),
    });
}
