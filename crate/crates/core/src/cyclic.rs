//! Helpers for cyclic sequences.

/// Start index of the lexicographically least rotation of `s`.
///
/// Linear time two-pointer scan. For periodic inputs the smallest such index
/// is returned.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub fn rotated<T: Clone>(s: &[T], start: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[start..]);
    out.extend_from_slice(&s[..start]);
    out
}

pub fn least_rotated<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    rotated(s, least_rotation(s))
}

/// Whether `a` and `b` are equal as cyclic sequences.
pub fn cyclic_eq<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && least_rotated(a) == least_rotated(b)
}
