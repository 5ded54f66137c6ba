//! Exact big-integer combinatorics: binomial coefficients, Catalan numbers,
//! closed-form triangulation counts of the generated point families, and the
//! exact-rational upper-bound evaluators.
//!
//! Everything here is arbitrary precision. Bound comparisons against
//! enumerated counts must be exact, so no floating point appears anywhere.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision nonnegative integer used for all combinatorial counts.
pub type BigCount = BigUint;

/// Exact rational value in canonical reduced form.
pub type ExactRational = BigRational;

/// Binomial coefficient `C(n, k)`, exact.
///
/// Computed by the multiplicative formula; every intermediate division is
/// exact because `C(n, 0..=i)` are integers.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

/// The `m`-th Catalan number `C_m = C(2m, m) / (m + 1)`.
///
/// `C_m` counts the triangulations of a convex `(m + 2)`-gon.
pub fn catalan(m: u64) -> BigCount {
    binomial(2 * m, m) / BigCount::from(m + 1)
}

/// Number of triangulations of the double chain with `k` points per chain:
/// `C(2k-2, k-1) * C_{k-2}^2`.
pub fn count_double_chain(k: u64) -> BigCount {
    assert!(k >= 2, "double chain needs k >= 2");
    let caps = catalan(k - 2);
    binomial(2 * k - 2, k - 1) * &caps * &caps
}

/// Number of triangulations of the double circle on `2k` points:
/// the alternating sum `sum_i (-1)^i C(k, i) C_{2k-i-2}`.
///
/// The result is asserted to stay below `12^k`.
pub fn count_double_circle(k: u64) -> BigCount {
    assert!(k >= 3, "double circle needs k >= 3");
    let mut acc = BigInt::zero();
    for i in 0..=k {
        let term = BigInt::from(binomial(k, i) * catalan(2 * k - i - 2));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    assert!(!acc.is_negative(), "alternating sum went negative");
    let count = acc.to_biguint().expect("nonnegative");
    assert!(
        count <= BigCount::from(12u32).pow(k as u32),
        "double circle count exceeds 12^k"
    );
    count
}

/// Number of triangulations of the modified double chain on `2k` points:
/// `C(2k-4, k-2) * C_{k-1}^2`.
///
/// The equivalent product form
/// `(2k-3)(2k-2)/k^2 * C(2k-2, k-1) * C_{k-2}^2` is evaluated as well and the
/// two are asserted to agree exactly.
pub fn count_modified_double_chain(k: u64) -> BigCount {
    assert!(k >= 3, "modified double chain needs k >= 3");
    let caps = catalan(k - 1);
    let direct = binomial(2 * k - 4, k - 2) * &caps * &caps;
    let via_ratio = BigCount::from(2 * k - 3) * BigCount::from(2 * k - 2) * count_double_chain(k)
        / (BigCount::from(k) * BigCount::from(k));
    assert_eq!(direct, via_ratio, "the two closed forms disagree");
    direct
}

/// Upper bound on the number of triangulations of any planar point set
/// with `v` interior and `b` hull points: `59^v * 7^b / C(v+b+6, 6)`.
pub fn count_upper_bound(v: u64, b: u64) -> ExactRational {
    assert!(b >= 3, "a planar point set has at least 3 boundary points");
    bound_ratio(59, v, b, v + b + 6)
}

/// Upper bound when triangulations may skip interior points (vertex set
/// merely contained in the input): `60^v * 7^b / C(b+6, 6)`.
pub fn subset_count_upper_bound(v: u64, b: u64) -> ExactRational {
    assert!(b >= 3, "a planar point set has at least 3 boundary points");
    bound_ratio(60, v, b, b + 6)
}

fn bound_ratio(base: u32, v: u64, b: u64, choose_from: u64) -> ExactRational {
    let numer = BigCount::from(base).pow(v as u32) * BigCount::from(7u32).pow(b as u32);
    ExactRational::new(BigInt::from(numer), BigInt::from(binomial(choose_from, 6)))
}

/// Where a vertex sits relative to the convex hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLocation {
    Interior,
    Boundary,
}

/// Upper bound on the number of insertions of a point with final degree `i`:
/// `C_{i-1} - C_{i-2}` for interior points, `C_{i-2}` for boundary points.
///
/// For the interior case the equivalent closed form
/// `3/(2i-3) * C(2i-3, i-3)` is evaluated too; the two must agree exactly.
pub fn insertion_bound(i: u64, location: VertexLocation) -> BigCount {
    match location {
        VertexLocation::Interior => {
            assert!(i >= 3, "an interior vertex has degree at least 3");
            let value = catalan(i - 1) - catalan(i - 2);
            let alt = BigCount::from(3u32) * binomial(2 * i - 3, i - 3);
            let denom = BigCount::from(2 * i - 3);
            assert!((&alt % &denom).is_zero(), "closed form not divisible");
            assert_eq!(value, alt / denom, "insertion bound closed forms disagree");
            value
        }
        VertexLocation::Boundary => {
            assert!(i >= 2, "a boundary vertex has degree at least 2");
            catalan(i - 2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), BigCount::one());
        assert_eq!(binomial(4, 2), BigCount::from(6u32));
        assert_eq!(binomial(6, 3), BigCount::from(20u32));
        assert_eq!(binomial(5, 7), BigCount::zero());
        assert_eq!(binomial(10, 3), binomial(10, 7));
    }

    #[test]
    fn catalan_table() {
        let expect: [u64; 11] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (m, &c) in expect.iter().enumerate() {
            assert_eq!(catalan(m as u64), BigCount::from(c), "C_{m}");
        }
    }

    #[test]
    fn catalan_recurrence() {
        // C_{m+1} = sum_j C_j C_{m-j}, independent of the closed form.
        for m in 0..=20u64 {
            let mut sum = BigCount::zero();
            for j in 0..=m {
                sum += catalan(j) * catalan(m - j);
            }
            assert_eq!(sum, catalan(m + 1), "recurrence at m={m}");
        }
    }

    #[test]
    fn double_chain_counts() {
        assert_eq!(count_double_chain(2), BigCount::from(2u32));
        assert_eq!(count_double_chain(3), BigCount::from(6u32));
        assert_eq!(count_double_chain(4), BigCount::from(80u32));
        assert_eq!(count_double_chain(5), BigCount::from(1750u32));
        // k = 9: C(16, 8) * C_7^2 = 12870 * 429^2, evaluated independently.
        assert_eq!(count_double_chain(9), BigCount::from(12870u64 * 429 * 429));
    }

    #[test]
    fn double_chain_growth_band() {
        // The count grows like 64^k k^(-7/2): the squares of the normalized
        // ratios r_k = count * k^(7/2) / 64^k must sit in a narrow band for
        // k = 8..=12. Exact arithmetic via r_k^2 = count^2 k^7 / 64^(2k).
        let r2 = |k: u64| {
            let c = BigInt::from(count_double_chain(k));
            ExactRational::new(
                &c * &c * BigInt::from(k).pow(7),
                BigInt::from(64u64).pow(2 * k as u32),
            )
        };
        let values: Vec<ExactRational> = (8..=12).map(r2).collect();
        let min = values.iter().min().unwrap();
        let max = values.iter().max().unwrap();
        assert!(
            max.clone() * BigInt::from(2) <= min.clone() * BigInt::from(3),
            "normalized ratios spread beyond a 3/2 band: {min} .. {max}"
        );
    }

    #[test]
    fn double_circle_counts() {
        assert_eq!(count_double_circle(3), BigCount::from(4u32));
        assert_eq!(count_double_circle(4), BigCount::from(30u32));
        assert_eq!(count_double_circle(5), BigCount::from(250u32));
    }

    #[test]
    fn modified_double_chain_counts() {
        assert_eq!(count_modified_double_chain(3), BigCount::from(8u32));
        assert_eq!(count_modified_double_chain(4), BigCount::from(150u32));
        assert_eq!(count_modified_double_chain(5), BigCount::from(3920u32));
    }

    #[test]
    fn count_bound_base_case() {
        let b = count_upper_bound(0, 3);
        assert_eq!(b, ExactRational::new(BigInt::from(49), BigInt::from(12)));
        // 343/84 reduces to 49/12.
        assert_eq!(b, ExactRational::new(BigInt::from(343), BigInt::from(84)));
    }

    #[test]
    fn subset_bound_values() {
        assert_eq!(
            subset_count_upper_bound(0, 3),
            ExactRational::new(BigInt::from(49), BigInt::from(12))
        );
        let r = subset_count_upper_bound(3, 3);
        assert_eq!(
            r,
            ExactRational::new(BigInt::from(60i64 * 60 * 60 * 343), BigInt::from(84))
        );
    }

    #[test]
    fn insertion_bounds() {
        use VertexLocation::*;
        assert_eq!(insertion_bound(3, Interior), BigCount::from(1u32));
        assert_eq!(insertion_bound(4, Interior), BigCount::from(3u32));
        assert_eq!(insertion_bound(5, Interior), BigCount::from(9u32));
        assert_eq!(insertion_bound(6, Interior), BigCount::from(28u32));
        assert_eq!(insertion_bound(2, Boundary), BigCount::from(1u32));
        assert_eq!(insertion_bound(3, Boundary), BigCount::from(1u32));
        assert_eq!(insertion_bound(4, Boundary), BigCount::from(2u32));
    }

    #[test]
    fn bound_values_exceed_known_counts() {
        // 7^10 / C(16, 6) must exceed C_8 = 1430.
        let b = count_upper_bound(0, 10);
        assert!(b > ExactRational::from(BigInt::from(1430)));
        // 59 * 343 / C(10, 6) = 20237/210.
        assert_eq!(
            count_upper_bound(1, 3),
            ExactRational::new(BigInt::from(20237), BigInt::from(210))
        );
        // 60 * 343 / 84 exceeds 2 (triangle plus one interior point,
        // subsets counted).
        assert!(subset_count_upper_bound(1, 3) > ExactRational::from(BigInt::from(2)));
    }
}
