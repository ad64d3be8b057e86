//! Fixed-point decimal arithmetic on `BigInt` mantissas, plus natural
//! logarithms to arbitrary decimal precision.
//!
//! A [`Dec`] holds `value = mantissa * 10^(-prec)`. All operands of a binary
//! operation must share the same `prec`; results truncate toward zero, so
//! callers work a few guard digits above their target precision. Logarithms
//! use the standard binary argument reduction `x = m * 2^k`, `m` in `[1, 2)`,
//! with `ln m = 2 atanh((m-1)/(m+1))` summed as a series; the ratio is at
//! most 1/3, so the series gains roughly one digit per term.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Fixed-point decimal: `value = v * 10^(-prec)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dec {
    v: BigInt,
    prec: u32,
}

fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

impl Dec {
    pub fn zero(prec: u32) -> Dec {
        Dec {
            v: BigInt::zero(),
            prec,
        }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Dec {
        Dec {
            v: n * pow10(prec),
            prec,
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Dec {
        Dec::from_bigint(&BigInt::from(n), prec)
    }

    /// Truncating conversion of an exact rational.
    pub fn from_ratio(r: &BigRational, prec: u32) -> Dec {
        Dec {
            v: (r.numer() * pow10(prec)).div_floor(r.denom()),
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn abs(&self) -> Dec {
        Dec {
            v: self.v.abs(),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Dec {
        Dec {
            v: -&self.v,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Dec) -> Dec {
        assert_eq!(self.prec, o.prec);
        Dec {
            v: &self.v + &o.v,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Dec) -> Dec {
        assert_eq!(self.prec, o.prec);
        Dec {
            v: &self.v - &o.v,
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Dec) -> Dec {
        assert_eq!(self.prec, o.prec);
        Dec {
            v: (&self.v * &o.v) / pow10(self.prec),
            prec: self.prec,
        }
    }

    pub fn div(&self, o: &Dec) -> Dec {
        assert_eq!(self.prec, o.prec);
        assert!(!o.v.is_zero());
        Dec {
            v: (&self.v * pow10(self.prec)) / &o.v,
            prec: self.prec,
        }
    }

    pub fn mul_small(&self, k: i64) -> Dec {
        Dec {
            v: &self.v * k,
            prec: self.prec,
        }
    }

    pub fn div_small(&self, k: i64) -> Dec {
        assert!(k != 0);
        Dec {
            v: &self.v / k,
            prec: self.prec,
        }
    }

    /// Multiplies by an exact rational, truncating once.
    pub fn mul_ratio(&self, r: &BigRational) -> Dec {
        Dec {
            v: (&self.v * r.numer()).div_floor(r.denom()),
            prec: self.prec,
        }
    }

    /// Re-truncates to a lower precision.
    pub fn truncate(&self, prec: u32) -> Dec {
        assert!(prec <= self.prec);
        Dec {
            v: self.v.div_floor(&pow10(self.prec - prec)),
            prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.v.clone(), pow10(self.prec));
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Number of decimal digits on which `self` and `o` agree: the largest
    /// `d` with `|self - o| < 10^(-d)`, saturating at the shared precision.
    pub fn matching_digits(&self, o: &Dec) -> u32 {
        assert_eq!(self.prec, o.prec);
        let diff = (&self.v - &o.v).abs();
        if diff.is_zero() {
            return self.prec;
        }
        let len = diff.to_string().len() as u32;
        self.prec.saturating_sub(len)
    }

    /// Decimal string truncated to `digits` fractional digits.
    pub fn to_string_digits(&self, digits: u32) -> String {
        let t = if digits <= self.prec {
            self.truncate(digits)
        } else {
            Dec {
                v: &self.v * pow10(digits - self.prec),
                prec: digits,
            }
        };
        let neg = t.v.is_negative();
        let a = t.v.abs();
        let (int, frac) = a.div_rem(&pow10(digits));
        let frac_str = format!("{:0width$}", frac, width = digits as usize);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac_str}")
        }
    }
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(self.prec))
    }
}

thread_local! {
    static LN_EVALS: RefCell<HashMap<u32, LnEval>> = RefCell::new(HashMap::new());
}

/// Runs `f` with a thread-cached [`LnEval`] at the given precision, so the
/// `ln 2` series and small-integer logs are computed once per thread.
pub fn with_ln_eval<R>(prec: u32, f: impl FnOnce(&mut LnEval) -> R) -> R {
    LN_EVALS.with(|cell| {
        let mut map = cell.borrow_mut();
        let ln = map.entry(prec).or_insert_with(|| LnEval::new(prec));
        f(ln)
    })
}

/// Natural-log evaluator at a fixed working precision, with cached `ln 2`
/// and memoized logs of small integers.
pub struct LnEval {
    prec: u32,
    ln2: Dec,
    int_cache: HashMap<u64, Dec>,
}

impl LnEval {
    pub fn new(prec: u32) -> LnEval {
        let ln2 = ln2_dec(prec);
        LnEval {
            prec,
            ln2,
            int_cache: HashMap::new(),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn ln_u64(&mut self, k: u64) -> Dec {
        assert!(k >= 1);
        if k == 1 {
            return Dec::zero(self.prec);
        }
        if let Some(d) = self.int_cache.get(&k) {
            return d.clone();
        }
        let d = self.ln_dec(&Dec::from_bigint(&BigInt::from(k), self.prec));
        self.int_cache.insert(k, d.clone());
        d
    }

    /// `ln x` for `x > 0`.
    pub fn ln_dec(&self, x: &Dec) -> Dec {
        assert_eq!(x.prec, self.prec);
        assert!(x.v.is_positive(), "ln of non-positive value");
        let one = pow10(self.prec);
        let two = &one * 2;
        // reduce x = m * 2^k with m in [1, 2)
        let mut m = x.v.clone();
        let mut k: i64 = 0;
        while m >= two {
            m /= 2;
            k += 1;
        }
        while m < one {
            m *= 2;
            k -= 1;
        }
        let m = Dec {
            v: m,
            prec: self.prec,
        };
        let lm = ln_atanh_series(&m, self.prec);
        lm.add(&self.ln2.mul_small(k))
    }
}

/// `ln m` for `m` in `[1, 2)` via `2 atanh((m-1)/(m+1))`.
fn ln_atanh_series(m: &Dec, prec: u32) -> Dec {
    let one = Dec::from_i64(1, prec);
    let t = m.sub(&one).div(&m.add(&one));
    let t2 = t.mul(&t);
    let mut term = t.clone();
    let mut sum = t;
    let mut j: i64 = 1;
    loop {
        term = term.mul(&t2);
        if term.is_zero() {
            break;
        }
        j += 2;
        sum = sum.add(&term.div_small(j));
    }
    sum.mul_small(2)
}

/// `ln 2 = 2 atanh(1/3)`, summed with exact integer divisions.
fn ln2_dec(prec: u32) -> Dec {
    let scale = pow10(prec);
    // p_j = scale / 3^(2j+1); sum p_j / (2j+1)
    let mut p: BigInt = &scale / BigInt::from(3);
    let mut sum = p.clone();
    let mut j: i64 = 1;
    while !p.is_zero() {
        p /= BigInt::from(9);
        let d = BigInt::from(2 * j + 1);
        sum += &p / d;
        j += 1;
    }
    Dec {
        v: sum * 2,
        prec,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference constants computed independently with an arbitrary-precision
    // calculator (65 digits shown).
    const LN2: &str = "0.69314718055994530941723212145817656807550013436025525412068000949";
    const LN3: &str = "1.09861228866810969139524523692252570464749055782274945173469433363";
    const LN5: &str = "1.60943791243410037460075933322618763952560135426851772191264789147";

    fn dec_from_str(s: &str, prec: u32) -> Dec {
        let (int, frac) = s.split_once('.').unwrap();
        let frac = &frac[..prec as usize];
        let v: BigInt = format!("{int}{frac}").parse().unwrap();
        Dec { v, prec }
    }

    #[test]
    fn ln2_matches_reference() {
        let prec = 60;
        let got = ln2_dec(prec);
        let want = dec_from_str(LN2, prec);
        assert!(got.matching_digits(&want) >= prec - 2);
    }

    #[test]
    fn ln_small_integers_match_reference() {
        let prec = 60;
        let mut ln = LnEval::new(prec);
        for (k, s) in [(2u64, LN2), (3, LN3), (5, LN5)] {
            let got = ln.ln_u64(k);
            let want = dec_from_str(s, prec);
            assert!(
                got.matching_digits(&want) >= prec - 3,
                "ln {k}: got {got}, want {want}"
            );
        }
        // ln 6 = ln 2 + ln 3
        let l6 = ln.ln_u64(6);
        let sum = ln.ln_u64(2).add(&ln.ln_u64(3));
        assert!(l6.matching_digits(&sum) >= prec - 3);
    }

    #[test]
    fn ln_of_values_below_one() {
        let prec = 50;
        let ln = LnEval::new(prec);
        let half = Dec::from_ratio(&BigRational::new(1.into(), 2.into()), prec);
        let got = ln.ln_dec(&half);
        let want = dec_from_str(LN2, prec).neg();
        assert!(got.matching_digits(&want) >= prec - 3);
    }

    #[test]
    fn arithmetic_and_strings() {
        let prec = 10;
        let a = Dec::from_ratio(&BigRational::new(1.into(), 3.into()), prec);
        assert_eq!(a.to_string_digits(5), "0.33333");
        let b = a.mul_small(3);
        assert_eq!(b.to_string_digits(5), "0.99999"); // truncation, not rounding
        let c = Dec::from_i64(-2, prec).add(&Dec::from_ratio(
            &BigRational::new(1.into(), 4.into()),
            prec,
        ));
        assert_eq!(c.to_string_digits(2), "-1.75");
        assert_eq!(Dec::from_i64(7, prec).to_string_digits(0), "7");
    }

    #[test]
    fn matching_digits_counts_agreement() {
        let prec = 20;
        let a = Dec::from_ratio(&BigRational::new(1.into(), 7.into()), prec);
        let mut b = a.clone();
        b.v += 1000; // perturb at the 17th fractional digit
        assert_eq!(a.matching_digits(&b), 16);
        assert_eq!(a.matching_digits(&a), prec);
    }
}
