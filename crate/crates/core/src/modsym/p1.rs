//! The projective line `P^1(Z/N)` and its right action by integer matrices.

use num_integer::Integer;

/// Representatives of `P^1(Z/N)` with a lookup table on `(Z/N)^2`.
#[derive(Clone, Debug)]
pub struct P1 {
    pub n: u64,
    pub reps: Vec<(u64, u64)>,
    index: Vec<u32>,
}

impl P1 {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "level must be positive");
        let nn = n as usize;
        let units: Vec<u64> = if n == 1 { vec![0] } else { (1..n).filter(|u| u.gcd(&n) == 1).collect() };
        let mut index = vec![u32::MAX; nn * nn];
        let mut reps = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if index[(c * n + d) as usize] != u32::MAX || c.gcd(&d).gcd(&n) != 1 {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push((c, d));
                for &u in &units {
                    index[((u * c % n) * n + u * d % n) as usize] = k;
                }
            }
        }
        P1 { n, reps, index }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of `(c : d)`, or `None` when `gcd(c, d, N) > 1`.
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
        let k = self.index[(c * n + d) as usize];
        (k != u32::MAX).then_some(k as usize)
    }

    /// `(c : d) g` for `g = [[a, b], [c', d']]`.
    pub fn act(&self, x: usize, g: [i64; 4]) -> Option<usize> {
        let (c, d) = self.reps[x];
        let (c, d) = (c as i64, d as i64);
        self.index(c * g[0] + d * g[2], c * g[1] + d * g[3])
    }
}

/// `S = [[0, -1], [1, 0]]`.
pub const S: [i64; 4] = [0, -1, 1, 0];
/// `T = [[0, -1], [1, -1]]`, of order three in `PSL_2(Z)`.
pub const T: [i64; 4] = [0, -1, 1, -1];

/// Heilbronn matrices of determinant `l` (Cremona's list), `l` prime.
pub fn heilbronn(l: i64) -> Vec<[i64; 4]> {
    if l == 2 {
        return vec![[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]];
    }
    let mut out = vec![[1, 0, 0, l]];
    for r in -(l / 2)..=(l / 2) {
        let (mut x1, mut x2, mut y1, mut y2) = (l, -r, 0i64, 1i64);
        let (mut a, mut b) = (-l, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = round_half_away(a, b);
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

/// Merel's matrices `[[a, b], [c, d]]` with `ad - bc = l`, `a > b >= 0`, `d > c >= 0`.
pub fn heilbronn_merel(l: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=l {
        for d in 1..=l {
            let bc = a * d - l;
            for b in 0..a {
                if b == 0 {
                    if bc == 0 {
                        out.extend((0..d).map(|c| [a, 0, c, d]));
                    }
                } else if bc >= 0 && bc % b == 0 && bc / b < d {
                    out.push([a, b, bc / b, d]);
                }
            }
        }
    }
    out
}

/// Nearest integer to `a / b`, halves rounded away from zero.
fn round_half_away(a: i64, b: i64) -> i64 {
    let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
    if a >= 0 {
        (2 * a + b) / (2 * b)
    } else {
        -((-2 * a + b) / (2 * b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_of_projective_lines() {
        // N prod_{p | N} (1 + 1/p).
        assert_eq!(P1::new(1).len(), 1);
        assert_eq!(P1::new(11).len(), 12);
        assert_eq!(P1::new(14).len(), 24);
        assert_eq!(P1::new(15).len(), 24);
        assert_eq!(P1::new(9).len(), 12);
    }

    #[test]
    fn heilbronn_determinants() {
        for l in [2, 3, 5, 7, 11] {
            for h in heilbronn(l).into_iter().chain(heilbronn_merel(l)) {
                assert_eq!(h[0] * h[3] - h[1] * h[2], l);
            }
        }
    }
}
