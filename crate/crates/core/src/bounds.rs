//! Lower and upper bounds on the label count of the square grid and the
//! resulting approximation ratio, all as exact integers or rationals.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{lift, Scalar};
use crate::scheme::lambda_ub;

/// Parity of the reuse parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KParity {
    Even,
    Odd,
}

impl KParity {
    pub fn of(k: u32) -> Self {
        if k.is_multiple_of(2) {
            KParity::Even
        } else {
            KParity::Odd
        }
    }
}

/// Lower bound on the label count: exact value and its ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound<T: Clone + num_integer::Integer> {
    pub exact: Ratio<T>,
    /// The label count is an integer, so this is the usable bound.
    pub ceiled: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRecord<T: Clone + num_integer::Integer> {
    pub k: u32,
    pub lower_exact: Ratio<T>,
    pub lower: T,
    /// Absent when no formula scheme exists for `k`.
    pub upper: Option<T>,
    /// `upper / lower`, absent together with `upper`.
    pub ratio: Option<Ratio<T>>,
}

/// The limit of the upper/lower ratio as `k` grows.
pub fn limit_ratio<T: Scalar>() -> Ratio<T> {
    Ratio::new(lift(9), lift(8))
}

fn overflow(what: &'static str, k: u32) -> Error {
    Error::Overflow { what, k }
}

fn mul_all<T: Scalar>(factors: &[i64], what: &'static str, k: u32) -> Result<T> {
    factors.iter().try_fold(T::one(), |acc, &f| {
        acc.checked_mul(&lift(f)).ok_or(overflow(what, k))
    })
}

/// Closed-form lower bound: `2/3 p(p+1)(2p+1) + 2` for `k = 2p`, and
/// `2/3 p(p+1)(2p+3) + 2` for `k = 2p + 1`.
pub fn lambda_lb<T: Scalar>(k: u32) -> Result<LowerBound<T>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let p = i64::from(k / 2);
    let last = match KParity::of(k) {
        KParity::Even => 2 * p + 1,
        KParity::Odd => 2 * p + 3,
    };
    let num: T = mul_all(&[2, p, p + 1, last], "lower bound", k)?;
    let exact = Ratio::new(num, lift(3)) + Ratio::from_integer(lift(2));
    let ceiled = exact.ceil().to_integer();
    Ok(LowerBound { exact, ceiled })
}

/// `sum_{m=1}^{p} m (p + 1 - m)`, summed term by term.
pub fn triangular_convolution<T: Scalar>(p: u32) -> Result<T> {
    let pt: T = lift(i64::from(p));
    (1..=i64::from(p)).try_fold(T::zero(), |acc, m| {
        let mt: T = lift(m);
        let term = (pt.clone() + T::one() - mt.clone())
            .checked_mul(&mt)
            .ok_or(overflow("triangular convolution", p))?;
        acc.checked_add(&term)
            .ok_or(overflow("triangular convolution", p))
    })
}

/// Lower bound rebuilt from the ball-counting argument: labels on the ball of
/// radius `p` are injective, and the gaps between consecutive sorted labels
/// sum to `4 (sum m(p+1-m) + sum m(p-m)) + (r + q)` with `r + q >= 1`.
/// Adding 1 converts the span into a label count. For odd `k` each of the
/// `2p^2 + 2p` gaps grows by one.
pub fn lb_summation<T: Scalar>(p: u32, parity: KParity) -> Result<T> {
    let err = || overflow("lower-bound summation", p);
    let outer = triangular_convolution::<T>(p)?;
    let inner = triangular_convolution::<T>(p.saturating_sub(1))?;
    let four: T = lift(4);
    let gaps = outer
        .checked_add(&inner)
        .and_then(|s| s.checked_mul(&four))
        .ok_or_else(err)?;
    let min_r_plus_q = T::one();
    let mut total = gaps + min_r_plus_q + T::one();
    if parity == KParity::Odd {
        let pt: T = lift(i64::from(p));
        let extra = pt
            .checked_mul(&pt)
            .and_then(|sq| sq.checked_add(&pt))
            .and_then(|s| s.checked_mul(&lift(2)))
            .ok_or_else(err)?;
        total = total.checked_add(&extra).ok_or_else(err)?;
    }
    Ok(total)
}

/// Upper bound over the ceiled lower bound.
pub fn ratio<T: Scalar>(k: u32) -> Result<Ratio<T>> {
    let upper = lambda_ub::<T>(k)?;
    let lower = lambda_lb::<T>(k)?.ceiled;
    Ok(Ratio::new(upper, lower))
}

/// One record per `k` in `k_min..=k_max`; `k = 2` gets a lower bound only.
pub fn bounds_table<T: Scalar>(k_min: u32, k_max: u32) -> Result<Vec<BoundsRecord<T>>> {
    if k_min == 0 || k_min > k_max {
        return Err(Error::InvalidRange { k_min, k_max });
    }
    (k_min..=k_max)
        .map(|k| {
            let lb = lambda_lb::<T>(k)?;
            let upper = match lambda_ub::<T>(k) {
                Ok(u) => Some(u),
                Err(Error::Unsupported { .. }) => None,
                Err(e) => return Err(e),
            };
            let ratio = upper
                .as_ref()
                .map(|u| Ratio::new(u.clone(), lb.ceiled.clone()));
            Ok(BoundsRecord {
                k,
                lower_exact: lb.exact,
                lower: lb.ceiled,
                upper,
                ratio,
            })
        })
        .collect()
}

/// Renders an exact ratio as `n` or `n/d` in lowest terms.
pub fn format_ratio<T: Scalar>(r: &Ratio<T>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits, rounding half away
/// from zero. Display only; stored values stay exact.
pub fn format_significant<T: Scalar>(r: &Ratio<T>, digits: u32) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    let to_big = |v: &T| -> BigInt { v.to_string().parse().expect("integer display parses") };
    let (n, d) = (to_big(r.numer()), to_big(r.denom()));
    if n.is_zero() {
        return "0".to_string();
    }
    let sign = if n.is_negative() { "-" } else { "" };
    let n = n.abs();
    let ten = BigInt::from(10);
    let pow10 = |e: u32| num_traits::pow(ten.clone(), e as usize);

    // Decimal exponent of the leading digit.
    let mut exp: i64 = if n >= d {
        (&n / &d).to_string().len() as i64 - 1
    } else {
        let mut j = 0;
        while &n * pow10(j) < d {
            j += 1;
        }
        -i64::from(j)
    };
    let round = |exp: i64| -> BigInt {
        let shift = i64::from(digits) - 1 - exp;
        let (num, den) = if shift >= 0 {
            (&n * pow10(shift as u32), d.clone())
        } else {
            (n.clone(), &d * pow10((-shift) as u32))
        };
        (num * 2 + &den) / (den * 2)
    };
    let mut scaled = round(exp);
    if scaled >= pow10(digits) {
        exp += 1;
        scaled = round(exp);
    }
    let body = scaled.to_string();
    let frac_len = i64::from(digits) - 1 - exp;
    if frac_len <= 0 {
        format!("{sign}{body}{}", "0".repeat((-frac_len) as usize))
    } else {
        let frac_len = frac_len as usize;
        if body.len() > frac_len {
            let (int, frac) = body.split_at(body.len() - frac_len);
            format!("{sign}{int}.{frac}")
        } else {
            format!("{sign}0.{}{body}", "0".repeat(frac_len - body.len()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn lower_bound_examples() {
        let lb = |k| lambda_lb::<i64>(k).unwrap();
        assert_eq!(
            lb(1),
            LowerBound {
                exact: r(2, 1),
                ceiled: 2
            }
        );
        assert_eq!(
            lb(2),
            LowerBound {
                exact: r(6, 1),
                ceiled: 6
            }
        );
        assert_eq!(
            lb(3),
            LowerBound {
                exact: r(26, 3),
                ceiled: 9
            }
        );
        assert_eq!(
            lb(4),
            LowerBound {
                exact: r(22, 1),
                ceiled: 22
            }
        );
        assert_eq!(lb(5).ceiled, 30);
        assert_eq!(lb(6).exact, r(58, 1));
        assert_eq!(lb(7).exact, r(74, 1));
        assert_eq!(lambda_lb::<i64>(0), Err(Error::ZeroK));
    }

    #[test]
    fn triangular_convolution_examples() {
        assert_eq!(triangular_convolution::<i64>(1), Ok(1));
        assert_eq!(triangular_convolution::<i64>(3), Ok(10));
        assert_eq!(triangular_convolution::<i64>(10), Ok(220));
        for p in 0..=1000i64 {
            assert_eq!(
                triangular_convolution::<i64>(p as u32).unwrap(),
                p * (p + 1) * (p + 2) / 6
            );
        }
    }

    #[test]
    fn summation_even_matches_closed_form() {
        assert_eq!(lb_summation::<i64>(2, KParity::Even), Ok(22));
        assert_eq!(lb_summation::<i64>(3, KParity::Even), Ok(58));
        for p in 1..=1000u32 {
            let closed = lambda_lb::<i64>(2 * p).unwrap().exact;
            assert_eq!(
                Ratio::from_integer(lb_summation::<i64>(p, KParity::Even).unwrap()),
                closed
            );
        }
    }

    #[test]
    fn summation_odd_dominates_closed_form() {
        // Growing every one of the 2p^2 + 2p gaps by one adds 2p(p+1) to the
        // even count: 58 + 24 = 82 at p = 3, above the closed form 74.
        assert_eq!(lb_summation::<i64>(3, KParity::Odd), Ok(82));
        assert_eq!(lb_summation::<i64>(0, KParity::Odd), Ok(2));
        for p in 1..=1000u32 {
            let pi = i64::from(p);
            let sum = lb_summation::<i64>(p, KParity::Odd).unwrap();
            let even = lb_summation::<i64>(p, KParity::Even).unwrap();
            assert_eq!(sum, even + 2 * pi * (pi + 1));
            assert!(Ratio::from_integer(sum) > lambda_lb::<i64>(2 * p + 1).unwrap().exact);
        }
    }

    #[test]
    fn lower_bound_integrality() {
        for p in 1..=1000u32 {
            assert!(lambda_lb::<i64>(2 * p).unwrap().exact.is_integer());
            let odd = lambda_lb::<i64>(2 * p + 1).unwrap().exact;
            assert_eq!(odd.is_integer(), p % 3 != 1, "p = {p}");
        }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio::<i64>(1), Ok(r(1, 1)));
        assert_eq!(ratio::<i64>(3), Ok(r(4, 3)));
        assert_eq!(ratio::<i64>(199), Ok(r(1_495_100, 1_326_602)));
        assert_eq!(ratio::<i64>(2), Err(Error::Unsupported { k: 2 }));
    }

    #[test]
    fn bounds_never_cross() {
        for k in (1..=1000u32).filter(|&k| k != 2) {
            let lb = lambda_lb::<i64>(k).unwrap();
            assert!(lb.ceiled <= lambda_ub::<i64>(k).unwrap(), "k = {k}");
            assert!(ratio::<i64>(k).unwrap() >= r(1, 1));
        }
    }

    #[test]
    fn table_examples() {
        let one = bounds_table::<i64>(1, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(
            (one[0].lower, one[0].upper, one[0].ratio),
            (2, Some(2), Some(r(1, 1)))
        );

        let two = bounds_table::<i64>(2, 2).unwrap();
        assert_eq!((two[0].lower, two[0].upper, two[0].ratio), (6, None, None));

        let mid = bounds_table::<i64>(3, 7).unwrap();
        let lowers: Vec<i64> = mid.iter().map(|b| b.lower).collect();
        let uppers: Vec<i64> = mid.iter().filter_map(|b| b.upper).collect();
        assert_eq!(lowers, [9, 22, 30, 58, 74]);
        assert_eq!(uppers, [12, 26, 38, 71, 92]);

        assert!(bounds_table::<i64>(0, 3).is_err());
        assert!(bounds_table::<i64>(5, 3).is_err());
    }

    #[test]
    fn ratios_per_case_are_non_increasing() {
        for residue in 0..4u32 {
            let ks: Vec<u32> = (19..=1000).filter(|k| k % 4 == residue).collect();
            for pair in ks.windows(2) {
                assert!(
                    ratio::<i64>(pair[1]).unwrap() <= ratio::<i64>(pair[0]).unwrap(),
                    "k = {}",
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(&r(4, 3), 6), "1.33333");
        assert_eq!(format_significant(&r(1, 1), 6), "1.00000");
        assert_eq!(format_significant(&r(1_495_100, 1_326_602), 6), "1.12701");
        assert_eq!(format_significant(&r(2, 3), 3), "0.667");
        assert_eq!(format_significant(&r(1, 800), 2), "0.0013");
        assert_eq!(format_significant(&r(9_999_996, 10), 6), "1000000");
        assert_eq!(format_significant(&r(123_456_789, 1), 3), "123000000");
        assert_eq!(format_significant(&r(-5, 4), 3), "-1.25");
        assert_eq!(format_ratio(&r(26, 3)), "26/3");
        assert_eq!(format_ratio(&r(22, 1)), "22");
    }
}
