//! Small counting helpers shared by the application modules.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `sum_{s=0}^{upto} C(n, s)`, saturating.
pub fn binomial_prefix_sum(n: u64, upto: u64) -> u64 {
    (0..=upto.min(n)).fold(0u64, |acc, s| acc.saturating_add(binomial(n, s)))
}

/// All `k`-subsets of `{0, .., n-1}` as bit masks, in increasing numeric
/// order (Gosper's hack). `n` must be at most 63.
pub fn masks_of_weight(n: u32, k: u32) -> impl Iterator<Item = u64> {
    assert!(n <= 63, "ground set too large for u64 masks");
    let limit = 1u64 << n;
    let first = if k > n {
        limit
    } else if k == 0 {
        0
    } else {
        (1u64 << k) - 1
    };
    let mut next = Some(first).filter(|&m| m < limit);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            let candidate = (((ripple ^ current) >> 2) / low) | ripple;
            (candidate < limit).then_some(candidate)
        };
        Some(current)
    })
}

/// Indices of the set bits of `mask`, ascending.
pub fn mask_elements(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            i
        })
    })
}

/// Mask with the given element indices set. Returns `None` on an index
/// `>= n` or `>= 64`.
pub fn mask_from_elements(elements: &[usize], n: usize) -> Option<u64> {
    elements.iter().try_fold(0u64, |acc, &e| (e < n && e < 64).then(|| acc | 1u64 << e))
}
