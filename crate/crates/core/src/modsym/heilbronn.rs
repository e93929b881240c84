/// Matrix `[[a, b], [c, d]]` stored row-major.
pub type Mat2 = [i64; 4];

// round(a/b) with halves away from zero
fn round_div(a: i64, b: i64) -> i64 {
    let (na, nb) = (a.unsigned_abs() as i128, b.unsigned_abs() as i128);
    let q = ((2 * na + nb) / (2 * nb)) as i64;
    if (a < 0) != (b < 0) {
        -q
    } else {
        q
    }
}

/// Cremona's Heilbronn matrices of determinant `p`, used for `T_p` on
/// Manin symbols of any level prime to `p`.
pub fn heilbronn_cremona(p: u64) -> Vec<Mat2> {
    if p == 2 {
        return vec![[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]];
    }
    let p = p as i64;
    let mut out = vec![[1, 0, 0, p]];
    let half = (p - 1) / 2;
    for r in -half..=half {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i64, 1i64);
        let (mut a, mut b) = (-p, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = round_div(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push([x1, x2, y1, y2]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_equal_p() {
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            for m in heilbronn_cremona(p) {
                assert_eq!(m[0] * m[3] - m[1] * m[2], p as i64, "p={p} m={m:?}");
            }
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_div(5, 2), 3);
        assert_eq!(round_div(-5, 2), -3);
        assert_eq!(round_div(7, -3), -2);
        assert_eq!(round_div(-7, -2), 4);
    }
}
