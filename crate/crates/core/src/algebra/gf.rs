use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, Polynomial, Rational};
use crate::error::{Error, Result};

/// `numerator / (prod (1 - z^k)^e * leftover)`.
///
/// `leftover` is only present when a reduction could not express the whole
/// denominator through `(1 - z^k)` factors. Equality is equality of rational
/// functions (cross-multiplication), so differently presented forms of the
/// same series compare equal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalGeneratingFunction {
    pub numerator: Polynomial,
    pub denominator: Vec<(usize, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leftover: Option<Polynomial>,
}

impl RationalGeneratingFunction {
    pub fn new(numerator: Polynomial, denominator: Vec<(usize, u32)>) -> Self {
        Self {
            numerator,
            denominator,
            leftover: None,
        }
    }

    /// Integer numerator coefficients with denominator factors, as printed in tables.
    pub fn from_integers(numerator: &[i64], denominator: &[(usize, u32)]) -> Self {
        Self::new(Polynomial::from_integers(numerator), denominator.to_vec())
    }

    pub fn denominator_poly(&self) -> Polynomial {
        let mut d = self
            .denominator
            .iter()
            .fold(Polynomial::one(), |acc, &(k, e)| {
                &acc * &Polynomial::one_minus_z_pow(k).pow(e)
            });
        if let Some(extra) = &self.leftover {
            d = &d * extra;
        }
        d
    }

    /// True when the denominator is a pure product of `(1 - z^k)` factors.
    pub fn is_fully_factored(&self) -> bool {
        self.leftover.is_none()
    }

    /// Power series coefficients of `z^0 .. z^(len-1)`.
    pub fn series(&self, len: usize) -> Vec<Rational> {
        let mut a: Vec<Rational> = (0..len).map(|i| self.numerator.coeff(i)).collect();
        for &(k, e) in &self.denominator {
            for _ in 0..e {
                for i in k..len {
                    let prev = a[i - k].clone();
                    a[i] += prev;
                }
            }
        }
        match &self.leftover {
            Some(extra) => Polynomial::new(a)
                .series_div(extra, len)
                .expect("leftover factor divides a denominator with constant term 1"),
            None => a,
        }
    }

    /// Index of the first coefficient where the two series differ, within `len` terms.
    pub fn first_difference(&self, other: &Self, len: usize) -> Option<usize> {
        let a = self.series(len);
        let b = other.series(len);
        (0..len).find(|&i| a[i] != b[i])
    }

    pub fn reduce(&self) -> Self {
        reduce_gf(self)
    }
}

impl PartialEq for RationalGeneratingFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator_poly() == &other.numerator * &self.denominator_poly()
    }
}

impl Eq for RationalGeneratingFunction {}

impl fmt::Display for RationalGeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / (", self.numerator)?;
        let mut wrote = false;
        for &(k, e) in &self.denominator {
            let base = if k == 1 {
                "(1 - z)".to_string()
            } else {
                format!("(1 - z^{k})")
            };
            if e == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{e}")?;
            }
            wrote = true;
        }
        if let Some(extra) = &self.leftover {
            write!(f, "({extra})")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        write!(f, ")")
    }
}

/// `sum_{m>=1} a_m z^m` as `N(z) / (1 - z^period)^(degree+1)`.
///
/// `counts[0]` is `a_1`. The numerator is the finite convolution of the
/// sequence with the expanded denominator; it may reach degree
/// `period*(degree+2) - 1`, and every available convolution coefficient past
/// that must vanish.
pub fn gf_from_counts(
    counts: &[Rational],
    period: usize,
    degree: usize,
) -> Result<RationalGeneratingFunction> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let needed = period * (degree + 1);
    if counts.len() < needed {
        return Err(Error::SequenceTooShort {
            given: counts.len(),
            needed,
            period,
            degree,
        });
    }
    let len = counts.len() + 1;
    let mut conv: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(counts.iter().cloned())
        .collect();
    for _ in 0..=degree {
        for i in (period..len).rev() {
            let prev = conv[i - period].clone();
            conv[i] -= prev;
        }
    }
    let cutoff = period * (degree + 2);
    if let Some((i, v)) = conv
        .iter()
        .enumerate()
        .skip(cutoff)
        .find(|(_, v)| !v.is_zero())
    {
        return Err(Error::InconsistentSequence {
            degree: i,
            value: format_rational(v),
        });
    }
    conv.truncate(cutoff.min(len));
    Ok(RationalGeneratingFunction::new(
        Polynomial::new(conv),
        vec![(period, (degree + 1) as u32)],
    ))
}

/// Cancel the common factor of numerator and denominator, then rewrite what is
/// left of the denominator as `(1 - z^k)` factors, trying `k` from the largest
/// possible down to 1.
///
/// The gcd is accumulated one denominator factor at a time: each factor
/// contributes `gcd(remaining numerator, factor)`, which yields the full
/// polynomial gcd while keeping every Euclidean run at the degree of a single
/// `1 - z^k`.
pub fn reduce_gf(g: &RationalGeneratingFunction) -> RationalGeneratingFunction {
    if g.numerator.is_zero() {
        return RationalGeneratingFunction::new(Polynomial::zero(), Vec::new());
    }
    let mut units: Vec<Polynomial> = g
        .denominator
        .iter()
        .flat_map(|&(k, e)| std::iter::repeat_n(Polynomial::one_minus_z_pow(k), e as usize))
        .collect();
    if let Some(extra) = &g.leftover {
        units.push(extra.clone());
    }

    let mut numerator = g.numerator.clone();
    let mut common = Polynomial::one();
    for unit in &units {
        let h = Polynomial::gcd(&numerator, unit);
        if h.degree().unwrap_or(0) > 0 {
            numerator = numerator.exact_div(&h).expect("gcd divides");
            common = &common * &h;
        }
    }
    let mut rest = g
        .denominator_poly()
        .exact_div(&common)
        .expect("gcd divides the denominator");

    // normalize so the remaining denominator has constant term 1
    let c0 = rest.coeff(0);
    if !c0.is_one() {
        let inv = c0.recip();
        rest = rest.scale(&inv);
        numerator = numerator.scale(&inv);
    }

    let mut found: BTreeMap<usize, u32> = BTreeMap::new();
    let top = rest.degree().unwrap_or(0);
    for k in (1..=top).rev() {
        let unit = Polynomial::one_minus_z_pow(k);
        while rest.degree().is_some_and(|d| d >= k) {
            match rest.exact_div(&unit) {
                Some(q) => {
                    rest = q;
                    *found.entry(k).or_default() += 1;
                }
                None => break,
            }
        }
    }
    let leftover = (rest != Polynomial::one()).then_some(rest);
    RationalGeneratingFunction {
        numerator,
        denominator: found.into_iter().collect(),
        leftover,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use proptest::prelude::*;

    #[test]
    fn falling_factorial_sequence() {
        let counts: Vec<Rational> = (1..=12).map(|m| rational(m * (m - 1))).collect();
        let g = gf_from_counts(&counts, 1, 2).unwrap();
        assert_eq!(g.numerator, Polynomial::from_integers(&[0, 0, 2]));
        assert_eq!(g.denominator, vec![(1, 3)]);
        // oracle: [z^m] 2z^2/(1-z)^3 = 2 * C(m, 2)
        let series = g.series(30);
        for (m, c) in series.iter().enumerate() {
            let m = m as i64;
            assert_eq!(c, &rational(m * (m - 1)));
        }
        // already reduced
        let r = reduce_gf(&g);
        assert_eq!(r.numerator, g.numerator);
        assert_eq!(r.denominator, g.denominator);
        assert!(r.is_fully_factored());
    }

    #[test]
    fn zero_counts() {
        let counts = vec![Rational::zero(); 9];
        let g = gf_from_counts(&counts, 2, 3).unwrap();
        assert!(g.numerator.is_zero());
        assert!(reduce_gf(&g).numerator.is_zero());
    }

    #[test]
    fn rejects_wrong_period() {
        // 1, 0, 1, 0, ... has period 2, not 1
        let counts: Vec<Rational> = (1..=10).map(|m| rational(m % 2)).collect();
        let err = gf_from_counts(&counts, 1, 1).unwrap_err();
        assert!(matches!(err, Error::InconsistentSequence { .. }));
        assert!(gf_from_counts(&counts, 2, 0).is_ok());
        assert!(matches!(
            gf_from_counts(&counts[..3], 2, 1),
            Err(Error::SequenceTooShort { .. })
        ));
    }

    #[test]
    fn reduces_triangle_table() {
        let unreduced =
            RationalGeneratingFunction::from_integers(&[0, 0, 6, 18, 24, 24, 18, 6], &[(2, 4)]);
        let r = reduce_gf(&unreduced);
        let expected = RationalGeneratingFunction::from_integers(&[0, 0, 6, 0, 6], &[(1, 3), (2, 1)]);
        assert_eq!(r, expected);
        assert_eq!(r.numerator, expected.numerator);
        assert_eq!(r.denominator, vec![(1, 3), (2, 1)]);
        assert_eq!(r.series(40), unreduced.series(40));
    }

    #[test]
    fn leftover_when_not_a_product_of_units() {
        // 1 / (1 + z^2) has no (1 - z^k) form
        let g = RationalGeneratingFunction {
            numerator: Polynomial::one(),
            denominator: vec![],
            leftover: Some(Polynomial::from_integers(&[1, 0, 1])),
        };
        let r = reduce_gf(&g);
        assert!(!r.is_fully_factored());
        assert_eq!(r, g);
        assert_eq!(
            r.series(6),
            [1, 0, -1, 0, 1, 0].map(rational).to_vec()
        );
    }

    #[test]
    fn json_schema() {
        let g = RationalGeneratingFunction::from_integers(&[0, 0, 2], &[(1, 3)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"numerator":["0/1","0/1","2/1"],"denominator":[[1,3]]}"#);
        let back: RationalGeneratingFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn display() {
        let g = RationalGeneratingFunction::from_integers(&[0, 0, 2], &[(1, 3), (2, 1)]);
        assert_eq!(g.to_string(), "(2z^2) / ((1 - z)^3(1 - z^2))");
    }

    proptest! {
        #[test]
        fn counts_roundtrip_through_gf(
            num in proptest::collection::vec(-20i64..20, 1..9),
            period in 1usize..4,
            degree in 0usize..3,
        ) {
            // any numerator of degree < period*(degree+1) over (1-z^p)^(n+1)
            let cap = period * (degree + 1);
            let mut num = num;
            num.truncate(cap);
            num[0] = 0;
            let g = RationalGeneratingFunction::from_integers(&num, &[(period, (degree + 1) as u32)]);
            let len = period * (degree + 3);
            let counts = g.series(len + 1)[1..].to_vec();
            let back = gf_from_counts(&counts, period, degree).unwrap();
            prop_assert_eq!(&back.numerator, &g.numerator);
            prop_assert!(back == g);
            let reduced = reduce_gf(&back);
            prop_assert_eq!(reduced.series(len + 1), g.series(len + 1));
        }
    }
}
