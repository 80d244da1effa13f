//! Exact integer helpers.

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Drop trailing zero coefficients, keeping at least one entry.
pub fn trim<T: PartialEq + Default + Copy>(coeffs: &[T]) -> Vec<T> {
    let mut out = coeffs.to_vec();
    while out.len() > 1 && out.last() == Some(&T::default()) {
        out.pop();
    }
    out
}

/// True iff the coefficient list reads the same backwards.
pub fn is_palindromic<T: PartialEq>(coeffs: &[T]) -> bool {
    coeffs.iter().eq(coeffs.iter().rev())
}
