//! The modular labeling `L(x, y) = (a*x + b*y) mod c`.
//!
//! For each reuse parameter `k >= 1` (other than `k = 2`) there is one
//! coefficient triple `(a, b, c)`, chosen by the parity of `k` and of
//! `p = floor(k / 2)`. The modulus `c` is also the label count.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Vertex;
use crate::scalar::{lift, Scalar};

/// Which branch of the formula a reuse parameter falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityCase {
    /// `k = 2p + 1`, `p >= 1` odd.
    OddKOddP,
    /// `k = 2p + 1`, `p >= 0` even.
    OddKEvenP,
    /// `k = 2p`, `p >= 3` odd.
    EvenKOddP,
    /// `k = 2p`, `p >= 2` even.
    EvenKEvenP,
}

impl ParityCase {
    pub const ALL: [ParityCase; 4] = [
        ParityCase::OddKOddP,
        ParityCase::OddKEvenP,
        ParityCase::EvenKOddP,
        ParityCase::EvenKEvenP,
    ];

    /// Classifies `k`, returning `p` alongside. `None` for `k = 0` and `k = 2`.
    pub fn classify(k: u32) -> Option<(ParityCase, u32)> {
        match k {
            0 | 2 => None,
            _ if k % 2 == 1 => {
                let p = (k - 1) / 2;
                let case = if p % 2 == 1 {
                    ParityCase::OddKOddP
                } else {
                    ParityCase::OddKEvenP
                };
                Some((case, p))
            }
            _ => {
                let p = k / 2;
                let case = if p % 2 == 1 {
                    ParityCase::EvenKOddP
                } else {
                    ParityCase::EvenKEvenP
                };
                Some((case, p))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ParityCase::OddKOddP => "odd-k-odd-p",
            ParityCase::OddKEvenP => "odd-k-even-p",
            ParityCase::EvenKOddP => "even-k-odd-p",
            ParityCase::EvenKEvenP => "even-k-even-p",
        }
    }

    // Polynomial coefficients in p, highest degree first. The modulus
    // polynomial is twice the modulus.
    fn polynomials(self) -> ([i64; 2], [i64; 3], [i64; 4]) {
        match self {
            ParityCase::OddKOddP => ([2, 3], [3, 7, 5], [3, 8, 9, 4]),
            ParityCase::OddKEvenP => ([2, 3], [3, 6, 3], [3, 8, 8, 4]),
            ParityCase::EvenKOddP => ([2, 1], [3, 4, 2], [3, 5, 5, 1]),
            ParityCase::EvenKEvenP => ([2, 1], [3, 3, 1], [3, 5, 4, 0]),
        }
    }
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a scheme's coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Formula(ParityCase),
    /// Hand-built coefficients, e.g. a perturbed scheme used to exercise
    /// the verifiers.
    Custom,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Formula(case) => case.name(),
            SchemeKind::Custom => "custom",
        }
    }
}

/// A label in `[0, c)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label<T>(T);

impl<T> Label<T> {
    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }
}

impl<T: fmt::Display> fmt::Display for Label<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One instantiation `(a, b, c)` of the modular labeling for a given `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelingScheme<T> {
    k: u32,
    p: u32,
    kind: SchemeKind,
    a: T,
    b: T,
    c: T,
}

fn horner<T: Scalar>(coeffs: &[i64], p: &T) -> Option<T> {
    coeffs.iter().try_fold(T::zero(), |acc, &coef| {
        acc.checked_mul(p)?.checked_add(&lift(coef))
    })
}

/// Builds the formula scheme for `k`.
///
/// Fails with [`Error::Unsupported`] for `k = 2` and [`Error::Overflow`] when
/// the coefficients do not fit `T`.
pub fn scheme_params<T: Scalar>(k: u32) -> Result<LabelingScheme<T>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let (case, p) = ParityCase::classify(k).ok_or(Error::Unsupported { k })?;
    let (a_poly, b_poly, c2_poly) = case.polynomials();
    let pt: T = lift(i64::from(p));
    let overflow = Error::Overflow {
        what: "scheme coefficients",
        k,
    };
    let a = horner(&a_poly, &pt).ok_or(overflow.clone())?;
    let b = horner(&b_poly, &pt).ok_or(overflow.clone())?;
    let c2 = horner(&c2_poly, &pt).ok_or(overflow)?;
    let (c, rem) = c2.div_rem(&lift(2));
    debug_assert!(rem.is_zero(), "modulus numerator must be even");
    Ok(LabelingScheme {
        k,
        p,
        kind: SchemeKind::Formula(case),
        a,
        b,
        c,
    })
}

/// Label count of the formula scheme for `k`.
pub fn lambda_ub<T: Scalar>(k: u32) -> Result<T> {
    scheme_params::<T>(k).map(|s| s.c)
}

impl<T: Scalar> LabelingScheme<T> {
    /// A scheme with arbitrary positive coefficients, checked against
    /// reuse parameter `k`.
    pub fn custom(k: u32, a: T, b: T, c: T) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if !a.is_positive() || !b.is_positive() || !c.is_positive() {
            return Err(Error::InvalidScheme("a, b and c must be positive"));
        }
        Ok(LabelingScheme {
            k,
            p: k / 2,
            kind: SchemeKind::Custom,
            a,
            b,
            c,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// The modulus, which is also the number of labels.
    pub fn c(&self) -> &T {
        &self.c
    }

    /// `(a*x + b*y) mod c` with the non-negative remainder, so negative
    /// coordinates still land in `[0, c)`.
    pub fn label(&self, v: Vertex) -> Result<Label<T>> {
        let overflow = || Error::Overflow {
            what: "label",
            k: self.k,
        };
        let ax = self.a.checked_mul(&lift(v.x)).ok_or_else(overflow)?;
        let by = self.b.checked_mul(&lift(v.y)).ok_or_else(overflow)?;
        let sum = ax.checked_add(&by).ok_or_else(overflow)?;
        Ok(Label(sum.mod_floor(&self.c)))
    }

    /// Same scheme with a different modulus. Used to build perturbed schemes.
    pub fn with_modulus(&self, c: T) -> Result<Self> {
        LabelingScheme::custom(self.k, self.a.clone(), self.b.clone(), c)
    }
}

impl<T: fmt::Display> fmt::Display for LabelingScheme<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L(x, y) = ({}x + {}y) mod {}  [k = {}, {}]",
            self.a,
            self.b,
            self.c,
            self.k,
            self.kind.name()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn abc(k: u32) -> (i64, i64, i64) {
        let s = scheme_params::<i64>(k).unwrap();
        (s.a, s.b, s.c)
    }

    fn lab(s: &LabelingScheme<i64>, x: i64, y: i64) -> i64 {
        s.label(Vertex::new(x, y)).unwrap().into_inner()
    }

    #[test]
    fn params_examples() {
        assert_eq!(abc(3), (5, 15, 12));
        assert_eq!(abc(7), (9, 53, 92));
        assert_eq!(abc(1), (3, 3, 2));
        assert_eq!(scheme_params::<i64>(2), Err(Error::Unsupported { k: 2 }));
        assert_eq!(scheme_params::<i64>(0), Err(Error::ZeroK));
    }

    #[test]
    fn classification() {
        assert_eq!(ParityCase::classify(1), Some((ParityCase::OddKEvenP, 0)));
        assert_eq!(ParityCase::classify(3), Some((ParityCase::OddKOddP, 1)));
        assert_eq!(ParityCase::classify(4), Some((ParityCase::EvenKEvenP, 2)));
        assert_eq!(ParityCase::classify(6), Some((ParityCase::EvenKOddP, 3)));
        assert_eq!(ParityCase::classify(2), None);
    }

    #[test]
    fn label_examples() {
        let s3 = scheme_params::<i64>(3).unwrap();
        let s7 = scheme_params::<i64>(7).unwrap();
        assert_eq!(lab(&s3, 0, 0), 0);
        assert_eq!(lab(&s3, 1, 1), 8);
        assert_eq!(lab(&s7, 1, 0), 9);
        assert_eq!(lab(&s3, -1, 0), 7);
    }

    #[test]
    fn lambda_ub_examples() {
        assert_eq!(lambda_ub::<i64>(3), Ok(12));
        assert_eq!(lambda_ub::<i64>(7), Ok(92));
        assert_eq!(lambda_ub::<i64>(4), Ok(26));
        assert_eq!(lambda_ub::<i64>(1), Ok(2));
        assert_eq!(lambda_ub::<i64>(2), Err(Error::Unsupported { k: 2 }));
    }

    #[test]
    fn k1_is_parity_coloring() {
        let s = scheme_params::<i64>(1).unwrap();
        for x in -5..5 {
            for y in -5..5 {
                assert_eq!(lab(&s, x, y), (x + y).rem_euclid(2));
            }
        }
    }

    // Independent evaluation of the four case expressions in i128.
    fn reference(k: u32) -> Option<(i128, i128, i128)> {
        let odd = k % 2 == 1;
        let p = i128::from(if odd { (k - 1) / 2 } else { k / 2 });
        let (num, a, b) = match (odd, p % 2 == 1) {
            (true, true) => (
                (p + 1) * (3 * p * p + 5 * p + 4),
                2 * p + 3,
                3 * p * p + 7 * p + 5,
            ),
            (true, false) => (
                3 * p * p * p + 8 * p * p + 8 * p + 4,
                2 * p + 3,
                3 * p * p + 6 * p + 3,
            ),
            (false, true) if p >= 3 => (
                3 * p * p * p + 5 * p * p + 5 * p + 1,
                2 * p + 1,
                3 * p * p + 4 * p + 2,
            ),
            (false, false) if p >= 2 => (
                p * (3 * p * p + 5 * p + 4),
                2 * p + 1,
                3 * p * p + 3 * p + 1,
            ),
            _ => return None,
        };
        assert_eq!(num % 2, 0, "modulus numerator odd at k = {k}");
        Some((a, b, num / 2))
    }

    #[test]
    fn coefficients_match_reference_and_are_integral() {
        for k in 1..=10_000u32 {
            match reference(k) {
                None => assert!(scheme_params::<i128>(k).is_err()),
                Some(expected) => {
                    let s = scheme_params::<i128>(k).unwrap();
                    assert_eq!((s.a, s.b, s.c), expected, "k = {k}");
                    assert_eq!(lambda_ub::<i128>(k).unwrap(), s.c);
                }
            }
        }
    }

    #[test]
    fn coefficient_ordering() {
        // b exceeds c at k = 3 (15 > 12); from k = 4 on, 0 < a < b < c.
        let s3 = scheme_params::<i64>(3).unwrap();
        assert!(s3.a < s3.c && s3.b > s3.c);
        for k in 4..=10_000u32 {
            let s = scheme_params::<i64>(k).unwrap();
            assert!(0 < s.a && s.a < s.b && s.b < s.c, "k = {k}");
        }
    }

    #[test]
    fn scalar_types_agree() {
        for k in (1..=500u32).filter(|&k| k != 2) {
            let s64 = scheme_params::<i64>(k).unwrap();
            let big = scheme_params::<BigInt>(k).unwrap();
            assert_eq!(BigInt::from(s64.c), *big.c());
            let v = Vertex::new(-17, 23);
            assert_eq!(
                BigInt::from(s64.label(v).unwrap().into_inner()),
                big.label(v).unwrap().into_inner()
            );
        }
    }

    #[test]
    fn overflow_is_rejected() {
        // c is roughly 3k^3/16, so i64 cannot hold it for k near 2^22.
        assert!(matches!(
            scheme_params::<i64>(4_000_001),
            Err(Error::Overflow { .. })
        ));
        assert!(scheme_params::<BigInt>(4_000_001).is_ok());
        let s = scheme_params::<i64>(1001).unwrap();
        assert!(matches!(
            s.label(Vertex::new(0, i64::MAX / 2)),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn custom_rejects_non_positive() {
        assert!(LabelingScheme::custom(3, 1i64, 1, 12).is_ok());
        assert!(LabelingScheme::custom(3, 0i64, 1, 12).is_err());
        assert!(LabelingScheme::custom(3, 1i64, 1, 0).is_err());
        assert!(LabelingScheme::custom(0, 1i64, 1, 2).is_err());
    }

    fn supported_k() -> impl Strategy<Value = u32> {
        (1u32..=60).prop_filter("k = 2 unsupported", |&k| k != 2)
    }

    proptest! {
        #[test]
        fn label_is_linear_mod_c(
            k in supported_k(),
            u in (-10_000i64..10_000, -10_000i64..10_000),
            v in (-10_000i64..10_000, -10_000i64..10_000),
        ) {
            let s = scheme_params::<i64>(k).unwrap();
            let (u, v) = (Vertex::from(u), Vertex::from(v));
            let lu = s.label(u).unwrap().into_inner();
            let lv = s.label(v).unwrap().into_inner();
            let luv = s.label(u + v).unwrap().into_inner();
            prop_assert_eq!(luv, (lu + lv) % s.c);
            prop_assert!((0..s.c).contains(&luv));
        }

        #[test]
        fn label_is_periodic(
            k in supported_k(),
            x in -10_000i64..10_000,
            y in -10_000i64..10_000,
        ) {
            let s = scheme_params::<i64>(k).unwrap();
            let base = lab(&s, x, y);
            prop_assert_eq!(lab(&s, x + s.c, y), base);
            prop_assert_eq!(lab(&s, x, y + s.c), base);
            prop_assert_eq!(lab(&s, x - s.c, y - s.c), base);
        }
    }
}
