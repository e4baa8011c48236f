//! Amplitude kernels over flat little-endian arrays: bit `q` of an index is
//! qubit `q`. The density-matrix code reuses these by viewing a row-major
//! `dim x dim` matrix as a vector over `2n` bits (columns low, rows high).

use num_complex::Complex64 as C64;

/// Calls `f` for every submask of `free`, in increasing order.
#[inline]
pub(crate) fn for_each_submask(free: usize, mut f: impl FnMut(usize)) {
    let mut s = 0usize;
    loop {
        f(s);
        if s == free {
            break;
        }
        s = ((s | !free).wrapping_add(1)) & free;
    }
}

/// Applies a 2x2 matrix `u` (row-major) to bit `target` on every index whose
/// bits under `ctrl_mask` equal `ctrl_val`.
pub(crate) fn apply_1q(amps: &mut [C64], target: usize, u: &[C64; 4], ctrl_mask: usize, ctrl_val: usize) {
    let nbits = amps.len().trailing_zeros() as usize;
    let tbit = 1usize << target;
    let full = (1usize << nbits) - 1;
    let free = full & !tbit & !ctrl_mask;
    for_each_submask(free, |s| {
        let i0 = s | ctrl_val;
        let i1 = i0 | tbit;
        let a0 = amps[i0];
        let a1 = amps[i1];
        amps[i0] = u[0] * a0 + u[1] * a1;
        amps[i1] = u[2] * a0 + u[3] * a1;
    });
}

/// Swaps the `target` bit (controlled X); skips the complex arithmetic.
pub(crate) fn apply_x(amps: &mut [C64], target: usize, ctrl_mask: usize, ctrl_val: usize) {
    let nbits = amps.len().trailing_zeros() as usize;
    let tbit = 1usize << target;
    let free = ((1usize << nbits) - 1) & !tbit & !ctrl_mask;
    for_each_submask(free, |s| {
        let i0 = s | ctrl_val;
        amps.swap(i0, i0 | tbit);
    });
}

/// Applies a `2^m x 2^m` matrix over the listed target bits. Column/row index
/// bit `j` of the matrix corresponds to `targets[j]`.
pub(crate) fn apply_kq(amps: &mut [C64], targets: &[usize], u: &[C64], ctrl_mask: usize, ctrl_val: usize) {
    let nbits = amps.len().trailing_zeros() as usize;
    let m = targets.len();
    let sub = 1usize << m;
    debug_assert_eq!(u.len(), sub * sub);
    let tmask: usize = targets.iter().map(|&t| 1usize << t).sum();
    let offsets: Vec<usize> = (0..sub)
        .map(|j| targets.iter().enumerate().filter(|(b, _)| j >> b & 1 == 1).map(|(_, &t)| 1usize << t).sum())
        .collect();
    let free = ((1usize << nbits) - 1) & !tmask & !ctrl_mask;
    let mut buf = vec![C64::new(0.0, 0.0); sub];
    for_each_submask(free, |s| {
        let base = s | ctrl_val;
        for (j, off) in offsets.iter().enumerate() {
            buf[j] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let row = &u[r * sub..(r + 1) * sub];
            amps[base | off] = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
        }
    });
}

/// Applies `coeff * X^x Z^z` (Z first, then X) in place.
pub(crate) fn apply_xz(amps: &mut [C64], x: usize, z: usize, coeff: C64) {
    let sign = |b: usize| if (b & z).count_ones() % 2 == 1 { -coeff } else { coeff };
    if x == 0 {
        for (b, a) in amps.iter_mut().enumerate() {
            *a *= sign(b);
        }
        return;
    }
    let top = 1usize << (usize::BITS - 1 - x.leading_zeros());
    for b in 0..amps.len() {
        if b & top != 0 {
            continue;
        }
        let c = b ^ x;
        let (ab, ac) = (amps[b], amps[c]);
        amps[c] = sign(b) * ab;
        amps[b] = sign(c) * ac;
    }
}
