// Little-endian u64 limb arithmetic shared by the Fermat ring and BigNumber.

use std::cmp::Ordering;

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn trimmed(v: &[u64]) -> &[u64] {
    let mut len = v.len();
    while len > 0 && v[len - 1] == 0 {
        len -= 1;
    }
    &v[..len]
}

pub(crate) fn bit_len(v: &[u64]) -> u64 {
    let v = trimmed(v);
    match v.last() {
        None => 0,
        Some(top) => 64 * (v.len() as u64 - 1) + (64 - top.leading_zeros() as u64),
    }
}

/// Compares magnitudes, ignoring leading zero limbs.
pub(crate) fn cmp(a: &[u64], b: &[u64]) -> Ordering {
    let (a, b) = (trimmed(a), trimmed(b));
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// `a += b`, growing `a` as needed.
pub(crate) fn add_assign(a: &mut Vec<u64>, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    let mut carry = 0u64;
    for (i, x) in a.iter_mut().enumerate() {
        let y = b.get(i).copied().unwrap_or(0);
        if i >= b.len() && carry == 0 {
            return;
        }
        let (s1, c1) = x.overflowing_add(y);
        let (s2, c2) = s1.overflowing_add(carry);
        *x = s2;
        carry = (c1 | c2) as u64;
    }
    if carry != 0 {
        a.push(carry);
    }
}

/// `a -= b` in place; returns true on borrow out (i.e. `a < b`).
pub(crate) fn sub_assign(a: &mut [u64], b: &[u64]) -> bool {
    debug_assert!(trimmed(b).len() <= a.len());
    let mut borrow = 0u64;
    for (i, x) in a.iter_mut().enumerate() {
        let y = b.get(i).copied().unwrap_or(0);
        if i >= b.len() && borrow == 0 {
            return false;
        }
        let (d1, b1) = x.overflowing_sub(y);
        let (d2, b2) = d1.overflowing_sub(borrow);
        *x = d2;
        borrow = (b1 | b2) as u64;
    }
    borrow != 0
}

/// Full product, `a.len() + b.len()` limbs (not trimmed).
pub(crate) fn mul_schoolbook(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let mut carry = 0u128;
        for (j, &y) in b.iter().enumerate() {
            let t = x as u128 * y as u128 + out[i + j] as u128 + carry;
            out[i + j] = t as u64;
            carry = t >> 64;
        }
        let mut k = i + b.len();
        while carry != 0 {
            let t = out[k] as u128 + carry;
            out[k] = t as u64;
            carry = t >> 64;
            k += 1;
        }
    }
    out
}

/// `a · 2^shift`.
pub(crate) fn shl(a: &[u64], shift: u64) -> Vec<u64> {
    let words = (shift / 64) as usize;
    let bits = (shift % 64) as u32;
    let mut out = vec![0u64; a.len() + words + 1];
    if bits == 0 {
        out[words..words + a.len()].copy_from_slice(a);
    } else {
        for (i, &x) in a.iter().enumerate() {
            out[words + i] |= x << bits;
            out[words + i + 1] |= x >> (64 - bits);
        }
    }
    out
}

/// Bits `[start, start + len)` of `a`, as `ceil(len / 64)` limbs.
pub(crate) fn extract_bits(a: &[u64], start: u64, len: u64) -> Vec<u64> {
    let out_len = len.div_ceil(64) as usize;
    let mut out = vec![0u64; out_len];
    let word = (start / 64) as usize;
    let bits = (start % 64) as u32;
    for (i, o) in out.iter_mut().enumerate() {
        let lo = a.get(word + i).copied().unwrap_or(0);
        let hi = a.get(word + i + 1).copied().unwrap_or(0);
        *o = if bits == 0 {
            lo
        } else {
            (lo >> bits) | (hi << (64 - bits))
        };
    }
    let tail = (len % 64) as u32;
    if tail != 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
    out
}

/// `acc += x · 2^bit_offset`.
pub(crate) fn add_shifted(acc: &mut Vec<u64>, x: &[u64], bit_offset: u64) {
    let x = trimmed(x);
    if x.is_empty() {
        return;
    }
    let shifted = shl(x, bit_offset % 64);
    let word = (bit_offset / 64) as usize;
    if acc.len() < word + shifted.len() {
        acc.resize(word + shifted.len(), 0);
    }
    let mut tail = acc.split_off(word);
    add_assign(&mut tail, &shifted);
    acc.extend_from_slice(&tail);
}

/// In-place `a = a · m + add` for a single-limb multiplier.
pub(crate) fn mul_small_add(a: &mut Vec<u64>, m: u64, add: u64) {
    let mut carry = add as u128;
    for x in a.iter_mut() {
        let t = *x as u128 * m as u128 + carry;
        *x = t as u64;
        carry = t >> 64;
    }
    if carry != 0 {
        a.push(carry as u64);
    }
}

/// In-place division by a single limb; returns the remainder.
pub(crate) fn div_small(a: &mut Vec<u64>, d: u64) -> u64 {
    let mut rem = 0u128;
    for x in a.iter_mut().rev() {
        let cur = (rem << 64) | *x as u128;
        *x = (cur / d as u128) as u64;
        rem = cur % d as u128;
    }
    trim(a);
    rem as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_with_carry_chain() {
        let mut a = vec![u64::MAX, u64::MAX];
        add_assign(&mut a, &[1]);
        assert_eq!(a, vec![0, 0, 1]);
    }

    #[test]
    fn sub_with_borrow_chain() {
        let mut a = vec![0, 0, 1];
        assert!(!sub_assign(&mut a, &[1]));
        assert_eq!(a, vec![u64::MAX, u64::MAX, 0]);
        let mut b = vec![1, 0];
        assert!(sub_assign(&mut b, &[2]));
    }

    #[test]
    fn extract_across_words() {
        let a = [0xffff_0000_0000_0000u64, 0x0000_0000_0000_abcd];
        assert_eq!(extract_bits(&a, 48, 32), vec![0xabcd_ffff]);
        assert_eq!(extract_bits(&a, 0, 128), a.to_vec());
        assert_eq!(extract_bits(&a, 200, 10), vec![0]);
    }

    #[test]
    fn shifted_add() {
        let mut acc = vec![1];
        add_shifted(&mut acc, &[1], 130);
        assert_eq!(acc, vec![1, 0, 4, 0]);
    }

    #[test]
    fn compare_ignores_padding() {
        assert_eq!(cmp(&[5, 0, 0], &[5]), Ordering::Equal);
        assert_eq!(cmp(&[0, 1], &[u64::MAX]), Ordering::Greater);
        assert_eq!(bit_len(&[0, 1, 0]), 65);
        assert_eq!(bit_len(&[]), 0);
    }

    #[test]
    fn small_division_roundtrip() {
        let mut a = vec![0x1234, 0x5678, 9];
        let orig = a.clone();
        let r = div_small(&mut a, 1_000_000_007);
        mul_small_add(&mut a, 1_000_000_007, r);
        assert_eq!(a, orig);
    }
}
