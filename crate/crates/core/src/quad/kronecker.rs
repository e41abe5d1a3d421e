/// The Kronecker symbol `(d / a)`.
pub fn kronecker_chi(d: i64, a: i64) -> i8 {
    kronecker(d as i128, a as i128)
}

// (-1)^((x^2 - 1) / 8), indexed by x mod 8
const TWO_TABLE: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

fn kronecker(mut a: i128, mut b: i128) -> i8 {
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v % 2 == 0 {
        1
    } else {
        TWO_TABLE[(a & 7) as usize]
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // b is odd and positive from here on
    loop {
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TWO_TABLE[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}
