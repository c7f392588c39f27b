pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

/// `n^n`; callers keep `n` small enough for `u128`.
pub(crate) fn pow_self(n: usize) -> u128 {
    (n as u128).pow(n as u32)
}
