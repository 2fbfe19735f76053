//! Closed-form upsilon values from Alexander polynomials.
//!
//! For a positive torus knot (or any L-space knot) the symmetrized
//! Alexander polynomial has alternating coefficients; the exponent
//! sequence determines a staircase of Maslov gradings `m_k` and
//! `upsilon = max over even k of (m_k - alpha_k)`. For alternating
//! knots `upsilon = sigma / 2`.

use crate::error::Error;

/// Exponents of the symmetrized Alexander polynomial of an L-space
/// knot: a strictly decreasing sequence `alpha_0 > ... > alpha_n` with
/// implicit coefficients `(-1)^k`, symmetric under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderData {
    exponents: Vec<i64>,
}

impl AlexanderData {
    /// Validates a raw exponent sequence: strictly decreasing, odd
    /// length (so the coefficient sum is +1) and symmetric.
    pub fn new(exponents: Vec<i64>) -> Result<AlexanderData, Error> {
        let n = exponents.len();
        let ok = n % 2 == 1
            && exponents.windows(2).all(|w| w[0] > w[1])
            && (0..n).all(|k| exponents[k] == -exponents[n - 1 - k]);
        if ok {
            Ok(AlexanderData { exponents })
        } else {
            Err(Error::Parse("not an alternating symmetric exponent sequence".into()))
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// The staircase sequence: `m_0 = 0`, `m_{2k} = m_{2k-1} - 1`,
    /// `m_{2k+1} = m_{2k} - 2(alpha_{2k} - alpha_{2k+1}) + 1`.
    pub fn m_sequence(&self) -> Vec<i64> {
        let a = &self.exponents;
        let mut m = Vec::with_capacity(a.len());
        for k in 0..a.len() {
            let value = if k == 0 {
                0
            } else if k % 2 == 0 {
                m[k - 1] - 1
            } else {
                m[k - 1] - 2 * (a[k - 1] - a[k]) + 1
            };
            m.push(value);
        }
        m
    }

    /// `max over even indices 2k of (m_{2k} - alpha_{2k})`.
    pub fn upsilon(&self) -> i64 {
        let m = self.m_sequence();
        (0..self.exponents.len())
            .step_by(2)
            .map(|k| m[k] - self.exponents[k])
            .max()
            .expect("sequence is nonempty")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Dense integer polynomial in `t` with exponent offset; coefficient
/// of `t^(offset + i)` is `coeffs[i]`.
struct Poly {
    offset: i64,
    coeffs: Vec<i64>,
}

impl Poly {
    fn t_power_minus_one(k: i64) -> Poly {
        // t^k - 1.
        let mut coeffs = vec![0; k as usize + 1];
        coeffs[0] = -1;
        coeffs[k as usize] = 1;
        Poly { offset: 0, coeffs }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { offset: self.offset + other.offset, coeffs }
    }

    /// Exact division; panics if the division leaves a remainder,
    /// which cannot happen for the torus-knot quotient.
    fn div_exact(&self, other: &Poly) -> Poly {
        let mut rem = self.coeffs.clone();
        let dlead = *other.coeffs.last().unwrap();
        let dlen = other.coeffs.len();
        assert!(dlead == 1 || dlead == -1);
        let qlen = rem.len() + 1 - dlen;
        let mut quot = vec![0i64; qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dlen - 1] / dlead;
            quot[i] = c;
            if c != 0 {
                for (j, &d) in other.coeffs.iter().enumerate() {
                    rem[i + j] -= c * d;
                }
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "division must be exact");
        Poly { offset: self.offset - other.offset, coeffs: quot }
    }
}

/// Symmetrized Alexander polynomial of the `(p, q)` torus knot:
/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, recentered so the
/// exponents are symmetric.
pub fn torus_alexander(p: i64, q: i64) -> Result<AlexanderData, Error> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let numerator = Poly::t_power_minus_one(p * q).mul(&Poly::t_power_minus_one(1));
    let denominator = Poly::t_power_minus_one(p).mul(&Poly::t_power_minus_one(q));
    let mut quotient = numerator.div_exact(&denominator);
    quotient.offset -= (p * q - p - q + 1) / 2;

    let mut exponents = Vec::new();
    let mut expected = 1i64;
    for (i, &c) in quotient.coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        assert_eq!(c, expected, "torus Alexander coefficients alternate");
        expected = -expected;
        exponents.push(quotient.offset + i as i64);
    }
    AlexanderData::new(exponents)
}

/// Closed-form `upsilon(T(p,q))` via the staircase recursion.
pub fn upsilon_torus(p: i64, q: i64) -> Result<i64, Error> {
    if (p, q) == (2, 1) || (p, q) == (1, 2) || p == 1 || q == 1 {
        // Degenerate torus parameters give the unknot.
        return Ok(0);
    }
    Ok(torus_alexander(p, q)?.upsilon())
}

/// The piecewise formula for `upsilon(T(3,q))`.
pub fn upsilon_torus_3q(q: i64) -> Result<i64, Error> {
    if q < 1 || q % 3 == 0 {
        return Err(Error::NotCoprime { p: 3, q });
    }
    if q == 1 {
        return Ok(0);
    }
    Ok(match q % 3 {
        1 => -2 * (q - 1) / 3,
        _ => -2 * (q - 2) / 3 - 1,
    })
}

/// For an alternating (or quasi-alternating) knot, `upsilon = sigma/2`.
pub fn upsilon_alternating(sigma: i64) -> Result<i64, Error> {
    if sigma % 2 != 0 {
        return Err(Error::OddSignature { sigma });
    }
    Ok(sigma / 2)
}
