//! Exact known values of `r(n)`, lower-bound recursions, the conjecture
//! evaluator and both upper-bound recursions, all in exact integer and
//! rational arithmetic.
//!
//! The growth brackets are strict inequalities that get tight near the
//! boundary (2.008^5 vs 33), so nothing here touches floating point; the
//! decimal-comma constants of the source material are the exact rationals
//! 2008/1000 and 2237/1000.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, One};

use crate::construction::{Builder, LengthCap};
use crate::{Error, Result};

/// The known exact values r(1)..r(7).
pub fn known_exact() -> BTreeMap<u32, BigUint> {
    [(1u32, 1u32), (2, 3), (3, 7), (4, 15), (5, 33), (6, 67), (7, 145)]
        .into_iter()
        .map(|(n, r)| (n, BigUint::from(r)))
        .collect()
}

/// `2^n - 1`, the closed form of the doubling recursion `r(n) >= 2 r(n-1) + 1`.
pub fn lower_basic(n: u32) -> BigUint {
    (BigUint::one() << n) - BigUint::one()
}

/// Lengths `|w_n|` for `1..=n_max`, materialized under `cap`, keyed by `n`.
pub fn wn_length_table(n_max: u32, cap: &LengthCap) -> Result<BTreeMap<u32, BigUint>> {
    let mut builder = Builder::new(cap.clone());
    (1..=n_max)
        .map(|n| Ok((n, BigUint::from(builder.record(n)?.w.len()))))
        .collect()
}

/// The conjectured value `max(|w_n|, 2 |w_{n-1}| + 1)`; `|w_0|` is 0.
pub fn conjecture_value(n: u32, wn_lengths: &BTreeMap<u32, BigUint>) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange { name: "n", got: 0, requirement: "n >= 1" });
    }
    let wn = wn_lengths.get(&n).ok_or(Error::MissingLength(n))?;
    let prev = if n == 1 {
        BigUint::from(0u32)
    } else {
        wn_lengths.get(&(n - 1)).ok_or(Error::MissingLength(n - 1))?.clone()
    };
    Ok(wn.clone().max(prev * 2u32 + BigUint::one()))
}

/// One step of the corollary recursion `r(n) <= 2 r(n-1) + r(n-2) + 2`.
pub fn cor2_step(r_prev: &BigUint, r_prev2: &BigUint) -> BigUint {
    r_prev * 2u32 + r_prev2 + BigUint::from(2u32)
}

/// One step of the proposition recursion `r(n) <= 5 r(n-2) + 4`.
pub fn prop2_step(r_prev2: &BigUint) -> BigUint {
    r_prev2 * 5u32 + BigUint::from(4u32)
}

/// Upper bound from `r(n) <= 2 r(n-1) + r(n-2) + 2`: the known exact value
/// for `n <= 7`, beyond that the recursion seeded with r(6), r(7).
pub fn upper_cor2(n: u32) -> BigUint {
    let exact = known_exact();
    if n == 0 {
        return BigUint::ZERO;
    }
    if let Some(v) = exact.get(&n) {
        return v.clone();
    }
    let mut prev2 = exact[&6].clone();
    let mut prev = exact[&7].clone();
    for _ in 8..=n {
        let next = cor2_step(&prev, &prev2);
        prev2 = prev;
        prev = next;
    }
    prev
}

/// Upper bound from `r(n) <= 5 r(n-2) + 4` for `n >= 7`, seeded with the
/// exact r(5) and r(6) and descending by two.
pub fn upper_prop2(n: u32) -> Result<BigUint> {
    if n < 7 {
        return Err(Error::OutOfRange { name: "n", got: n as u64, requirement: "n >= 7" });
    }
    let exact = known_exact();
    let mut value = if n % 2 == 1 { exact[&5].clone() } else { exact[&6].clone() };
    let start = if n % 2 == 1 { 5 } else { 6 };
    for _ in ((start + 2)..=n).step_by(2) {
        value = prop2_step(&value);
    }
    Ok(value)
}

/// Exact rational 2008/1000, the lower growth base.
pub fn growth_lower_base() -> BigRational {
    BigRational::new(BigInt::from(2008), BigInt::from(1000))
}

/// Exact rational 2237/1000, the upper growth base.
pub fn growth_upper_base() -> BigRational {
    BigRational::new(BigInt::from(2237), BigInt::from(1000))
}

/// Exact rational 247/100, the weaker upper estimate subsumed by 2237/1000.
pub fn weak_upper_base() -> BigRational {
    BigRational::new(BigInt::from(247), BigInt::from(100))
}

fn rational(value: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(value.clone()))
}

/// `base^n < value`, exactly.
pub fn power_below(base: &BigRational, n: u32, value: &BigUint) -> bool {
    num::pow::pow(base.clone(), n as usize) < rational(value)
}

/// `value < base^n`, exactly.
pub fn power_above(base: &BigRational, n: u32, value: &BigUint) -> bool {
    rational(value) < num::pow::pow(base.clone(), n as usize)
}

/// Per-`n` summary of every applicable exact value and bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u32,
    pub exact: Option<BigUint>,
    pub lower_basic: BigUint,
    pub lower_wn: Option<BigUint>,
    pub conjecture: Option<BigUint>,
    pub upper_cor2: BigUint,
    pub upper_prop2: Option<BigUint>,
    /// `(2008/1000)^n < best lower bound`, for n >= 5.
    pub growth_lower_ok: Option<bool>,
    /// `best upper bound < (2237/1000)^n`, for n >= 5.
    pub growth_upper_ok: Option<bool>,
}

impl BoundsRow {
    /// The best (largest) lower bound on r(n) in this row.
    pub fn best_lower(&self) -> BigUint {
        let mut best = self.lower_basic.clone();
        for candidate in [&self.exact, &self.lower_wn].into_iter().flatten() {
            best = best.max(candidate.clone());
        }
        best
    }

    /// The best (smallest) upper bound on r(n) in this row.
    pub fn best_upper(&self) -> BigUint {
        let mut best = self.upper_cor2.clone();
        for candidate in [&self.exact, &self.upper_prop2].into_iter().flatten() {
            best = best.min(candidate.clone());
        }
        best
    }
}

/// Rows for `1..=n_max`. `wn_lengths` supplies `|w_n|` where materialized;
/// rows beyond it simply omit the construction bound and the conjecture.
pub fn bounds_table(n_max: u32, wn_lengths: &BTreeMap<u32, BigUint>) -> Vec<BoundsRow> {
    let exact = known_exact();
    (1..=n_max)
        .map(|n| {
            let mut row = BoundsRow {
                n,
                exact: exact.get(&n).cloned(),
                lower_basic: lower_basic(n),
                lower_wn: wn_lengths.get(&n).cloned(),
                conjecture: conjecture_value(n, wn_lengths).ok(),
                upper_cor2: upper_cor2(n),
                upper_prop2: upper_prop2(n).ok(),
                growth_lower_ok: None,
                growth_upper_ok: None,
            };
            if n >= 5 {
                row.growth_lower_ok = Some(power_below(&growth_lower_base(), n, &row.best_lower()));
                row.growth_upper_ok = Some(power_above(&growth_upper_base(), n, &row.best_upper()));
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u32) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn known_values() {
        let k = known_exact();
        assert_eq!(k.len(), 7);
        assert_eq!(k[&5], big(33));
        assert_eq!(k[&7], big(145));
        assert_eq!(k[&1], big(1));
    }

    #[test]
    fn doubling_lower_bound() {
        assert_eq!(lower_basic(4), big(15));
        assert_eq!(lower_basic(5), big(31));
        assert_eq!(lower_basic(1), big(1));
    }

    #[test]
    fn conjecture_values() {
        // the paper's printed |w_n| values; n = 10 uses its printed 1255,
        // and the conjecture value is 1259 either way
        let lengths: BTreeMap<u32, BigUint> = [
            (1u32, 1u32), (2, 3), (3, 7), (4, 15), (5, 33),
            (6, 67), (7, 145), (8, 291), (9, 629), (10, 1255),
        ]
        .into_iter()
        .map(|(n, l)| (n, big(l)))
        .collect();
        assert_eq!(conjecture_value(8, &lengths).unwrap(), big(291));
        assert_eq!(conjecture_value(10, &lengths).unwrap(), big(1259));
        assert_eq!(conjecture_value(9, &lengths).unwrap(), big(629));
        assert_eq!(conjecture_value(1, &lengths).unwrap(), big(1));
        assert_eq!(conjecture_value(11, &lengths), Err(Error::MissingLength(11)));

        let computed = wn_length_table(10, &LengthCap::default()).unwrap();
        assert_eq!(conjecture_value(10, &computed).unwrap(), big(1259));
    }

    #[test]
    fn cor2_bounds() {
        assert_eq!(cor2_step(&big(3), &big(1)), big(9));
        assert_eq!(cor2_step(&big(7), &big(3)), big(19));
        assert_eq!(upper_cor2(8), big(359));
        assert_eq!(upper_cor2(3), big(7)); // exact where known
        assert!(upper_cor2(9) == cor2_step(&big(359), &big(145)));
    }

    #[test]
    fn prop2_bounds() {
        assert_eq!(upper_prop2(7).unwrap(), big(169));
        assert_eq!(upper_prop2(8).unwrap(), big(339));
        assert_eq!(upper_prop2(9).unwrap(), big(849));
        assert!(upper_prop2(6).is_err());
    }

    #[test]
    fn bounds_dominate_known_values() {
        let k = known_exact();
        for n in 3..=7u32 {
            let chained = cor2_step(&k[&(n - 1)], &k[&(n - 2)]);
            assert!(k[&n] <= chained, "cor2 fails at n={n}");
        }
        assert!(k[&7] <= upper_prop2(7).unwrap());
        for n in 1..=7u32 {
            assert!(lower_basic(n) <= k[&n]);
        }
    }

    #[test]
    fn growth_brackets() {
        // 2.008^5 < 33 but 2.008^5 > 31: the bracket needs the exact value
        assert!(power_below(&growth_lower_base(), 5, &big(33)));
        assert!(!power_below(&growth_lower_base(), 5, &big(31)));
        assert!(power_above(&growth_upper_base(), 7, &big(145)));
        for n in 1..=7u32 {
            assert!(power_above(&weak_upper_base(), n, &known_exact()[&n]));
        }
    }

    #[test]
    fn table_rows() {
        let lengths = wn_length_table(10, &LengthCap::default()).unwrap();
        let rows = bounds_table(10, &lengths);
        let r5 = &rows[4];
        assert_eq!(r5.exact, Some(big(33)));
        assert_eq!(r5.lower_basic, big(31));
        assert_eq!(r5.growth_lower_ok, Some(true));
        let r7 = &rows[6];
        assert_eq!(r7.upper_prop2, Some(big(169)));
        assert_eq!(r7.growth_upper_ok, Some(true));
        let r1 = &rows[0];
        assert_eq!(r1.exact, Some(big(1)));
        assert!(r1.growth_lower_ok.is_none() && r1.growth_upper_ok.is_none());
        // ordering invariant on every row
        for row in &rows {
            assert!(row.lower_basic <= row.best_lower());
            if let Some(e) = &row.exact {
                assert!(&row.best_lower() <= e && e <= &row.best_upper(), "n={}", row.n);
            }
        }
    }

    #[test]
    fn tightening_seeds_never_loosens() {
        // monotonicity of both recursions in their seeds
        for (a, b) in [(big(100), big(50)), (big(99), big(50)), (big(100), big(49))] {
            assert!(cor2_step(&a, &b) <= cor2_step(&big(100), &big(50)));
            assert!(prop2_step(&b) <= prop2_step(&big(50)));
        }
    }
}
