//! Dispatch to the construction whose hypotheses the input satisfies.

use super::{
    balanced_pow2, label_c4k2_factor, label_lex_even_degrees, label_lex_kmn_mixed_on, label_matching_join_on,
    label_star_on, precondition, BalancedFactor, ConstructError, ConstructionReport, Product, Theorem,
};
use crate::abelian::GroupSpec;
use crate::graphs::Graph;

type Attempts = Vec<(Theorem, ConstructError)>;

/// Tries every construction that could apply to `G ∘ H` or `G × H` over Γ.
///
/// For `|V(H)| = 2^k` the exponents `n_0` of the `Z_{2^{n_0}}` direct
/// factors of Γ are tried largest first. `n_0 < k` goes to the small-`s`
/// branch. `n_0 = k` with a lex product prefers the even-degree theorem,
/// then the `K_{m,n}` theorem, then the large-`s` branch. `n_0 > k` goes to
/// the large-`s` branch. `|V(H)| = 4k + 2` uses the `C_{4k+2}^{2k}`
/// theorem. A construction whose labeling fails verification aborts the
/// dispatch instead of being skipped.
pub fn auto_label(
    g: &Graph,
    h: &BalancedFactor,
    product: Product,
    group: &GroupSpec,
) -> Result<ConstructionReport, ConstructError> {
    let mut attempts = Attempts::new();
    if h.c4k2_parameter().is_some() {
        let theorem = match product {
            Product::Lex => Theorem::C4k2Lex,
            Product::Dir => Theorem::C4k2Dir,
        };
        return finish_or_collect(theorem, label_c4k2_factor(g, h, group, product), attempts);
    }
    let k = match h.log2_order() {
        Some(k) if k >= 2 => k,
        _ => {
            let err = precondition(format!("H must have 2^k (k >= 2) or 4k+2 (k >= 1) vertices, has {}", h.order()));
            return Err(ConstructError::NoApplicableTheorem(vec![(Theorem::BalancedSmallLex, err)]));
        }
    };
    let mut exponents: Vec<u32> = group.primary_factors().iter().filter(|f| f.prime == 2).map(|f| f.exponent).collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents.dedup();
    if exponents.is_empty() {
        let err = ConstructError::NoCyclicFactor { group: group.clone(), order: 2 };
        attempts.push((small_theorem(product), err));
    }
    for n0 in exponents {
        let candidates: Vec<Theorem> = match (product, n0.cmp(&k)) {
            (_, std::cmp::Ordering::Less) => vec![small_theorem(product)],
            (Product::Lex, std::cmp::Ordering::Equal) => {
                vec![Theorem::EvenDegreesLex, Theorem::KmnMixedLex, Theorem::BalancedLargeLex]
            }
            (Product::Lex, _) => vec![Theorem::BalancedLargeLex],
            (Product::Dir, _) => vec![Theorem::BalancedLargeDir],
        };
        for theorem in candidates {
            let result = match theorem {
                Theorem::EvenDegreesLex => label_lex_even_degrees(g, h, group),
                Theorem::KmnMixedLex => label_lex_kmn_mixed_on(g, h, group),
                _ => balanced_pow2(g, h, group, n0, product),
            };
            match result {
                Ok(report) => return Ok(report),
                Err(e @ ConstructError::VerificationFailed { .. }) => return Err(e),
                Err(e) => attempts.push((theorem, e)),
            }
        }
    }
    Err(ConstructError::NoApplicableTheorem(attempts))
}

fn small_theorem(product: Product) -> Theorem {
    match product {
        Product::Lex => Theorem::BalancedSmallLex,
        Product::Dir => Theorem::BalancedSmallDir,
    }
}

fn finish_or_collect(
    theorem: Theorem,
    result: Result<ConstructionReport, ConstructError>,
    mut attempts: Attempts,
) -> Result<ConstructionReport, ConstructError> {
    match result {
        Ok(report) => Ok(report),
        Err(e @ ConstructError::VerificationFailed { .. }) => Err(e),
        Err(e) => {
            attempts.push((theorem, e));
            Err(ConstructError::NoApplicableTheorem(attempts))
        }
    }
}

/// Constructions for a single graph, without a product factor: the
/// `(K_{n-1} - M) + K_1` family and stars.
pub fn auto_label_single(g: &Graph, group: &GroupSpec) -> Result<ConstructionReport, ConstructError> {
    let mut attempts = Attempts::new();
    match label_matching_join_on(g, group) {
        Ok(report) => return Ok(report),
        Err(e @ ConstructError::VerificationFailed { .. }) => return Err(e),
        Err(e) => attempts.push((Theorem::MatchingJoin, e)),
    }
    match label_star_on(g, group) {
        Ok(Some(report)) => return Ok(report),
        Ok(None) => {
            attempts.push((Theorem::Star, precondition(format!("no x with 2x = s({group}); K_1,n needs n ≢ 1 mod 4"))))
        }
        Err(e @ ConstructError::VerificationFailed { .. }) => return Err(e),
        Err(e) => attempts.push((Theorem::Star, e)),
    }
    Err(ConstructError::NoApplicableTheorem(attempts))
}
