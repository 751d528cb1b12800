//! Arithmetic in small finite fields F_q, q = p^d <= 2^20. Prime fields use
//! modular arithmetic directly; extension fields fix a monic irreducible
//! polynomial and represent elements as base-p digit strings. Multiplication
//! and inverses go through discrete-log tables on a primitive element.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub const MAX_Q: u64 = 1 << 20;

/// Field elements are encoded as integers 0..q: the residue itself for
/// prime fields, the base-p digit encoding of the coefficient vector for
/// extensions.
pub type FqElem = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    NotPrimePower { q: u64 },
    TooLarge { q: u64 },
    NotIrreducible,
    BadModulus { expected_degree: u32 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrimePower { q } => write!(f, "{q} is not a prime power"),
            FieldError::TooLarge { q } => write!(f, "{q} exceeds the 2^20 field size cap"),
            FieldError::NotIrreducible => write!(f, "modulus polynomial is reducible"),
            FieldError::BadModulus { expected_degree } => {
                write!(f, "modulus must be monic of degree {expected_degree}")
            }
        }
    }
}

impl core::error::Error for FieldError {}

/// A concrete small finite field with precomputed tables.
#[derive(Clone)]
pub struct Fq {
    q: u32,
    p: u32,
    d: u32,
    /// Monic irreducible modulus, little-endian coefficients, length d+1.
    /// Empty for prime fields.
    modulus: Vec<u32>,
    /// exp[i] = g^i for 0 <= i < q-1, g a primitive element.
    exp: Vec<u32>,
    /// log[x] for 1 <= x < q.
    log: Vec<u32>,
    /// Full addition table when q is small enough, else empty (digitwise).
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({}={}^{})", self.q, self.p, self.d)
    }
}

const ADD_TABLE_MAX_Q: u32 = 1024;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Factors q as p^d with p prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > MAX_Q {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut d = 0;
            while rest % p == 0 {
                rest /= p;
                d += 1;
            }
            return (rest == 1).then_some((p as u32, d));
        }
        p += 1;
    }
    Some((q as u32, 1)) // q itself is prime
}

// --- polynomial helpers over F_p (little-endian coefficient vectors) ---

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo the monic polynomial m, over F_p.
fn poly_rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            let idx = i + shift;
            let sub = (lead as u64 * mc as u64) % p as u64;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 || *m.last().unwrap() != 1 {
        return false;
    }
    if d == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem_mod_p(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first `count` monic irreducible polynomials of degree d over F_p,
/// in lexicographic order of their coefficient encoding.
pub fn irreducible_polys(p: u32, d: u32, count: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (p as u64).pow(d);
    for code in 0..total {
        let mut m = Vec::with_capacity(d as usize + 1);
        let mut c = code;
        for _ in 0..d {
            m.push((c % p as u64) as u32);
            c /= p as u64;
        }
        m.push(1);
        if poly_is_irreducible(&m, p) {
            out.push(m);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

impl Fq {
    /// The field with q elements, q = p^d <= 2^20, using the first monic
    /// irreducible modulus when d > 1.
    pub fn new(q: u64) -> Result<Fq, FieldError> {
        if q > MAX_Q {
            return Err(FieldError::TooLarge { q });
        }
        let (p, d) = prime_power(q).ok_or(FieldError::NotPrimePower { q })?;
        if d == 1 {
            Fq::prime(p)
        } else {
            let m = irreducible_polys(p, d, 1).pop().ok_or(FieldError::NotIrreducible)?;
            Fq::extension(p, d, m)
        }
    }

    pub fn prime(p: u32) -> Result<Fq, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrimePower { q: p as u64 });
        }
        if p as u64 > MAX_Q {
            return Err(FieldError::TooLarge { q: p as u64 });
        }
        Fq::build(p, p, 1, Vec::new())
    }

    /// Extension field with an explicit monic irreducible modulus
    /// (little-endian, length d+1). Point counts of varieties defined over
    /// the integers do not depend on which modulus is chosen.
    pub fn extension(p: u32, d: u32, modulus: Vec<u32>) -> Result<Fq, FieldError> {
        if !is_prime(p) || d < 1 {
            return Err(FieldError::NotPrimePower { q: (p as u64).pow(d) });
        }
        let q = (p as u64).pow(d);
        if q > MAX_Q {
            return Err(FieldError::TooLarge { q });
        }
        if modulus.len() != d as usize + 1 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus { expected_degree: d });
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(FieldError::NotIrreducible);
        }
        Fq::build(q as u32, p, d, modulus)
    }

    fn build(q: u32, p: u32, d: u32, modulus: Vec<u32>) -> Result<Fq, FieldError> {
        let mut fq = Fq {
            q,
            p,
            d,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        fq.neg_table = (0..q).map(|x| fq.neg_raw(x)).collect();
        if q <= ADD_TABLE_MAX_Q {
            let mut t = Vec::with_capacity((q as usize) * (q as usize));
            for a in 0..q {
                for b in 0..q {
                    t.push(fq.add_raw(a, b));
                }
            }
            fq.add_table = t;
        }
        // Discrete-log tables on the first primitive element.
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        let mut found = false;
        'search: for g in 1..q {
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                x = fq.mul_raw(x, g);
                if x == 1 && i + 2 < q as usize {
                    continue 'search; // order too small
                }
            }
            if x == 1 {
                found = true;
                break;
            }
        }
        debug_assert!(found, "every finite field has a primitive element");
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        fq.exp = exp;
        fq.log = log;
        Ok(fq)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.d == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0u32;
        let mut mult = 1u32;
        for _ in 0..self.d {
            out += (a % p + b % p) % p * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        out
    }

    fn neg_raw(&self, a: u32) -> u32 {
        if self.d == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let (p, mut a) = (self.p, a);
        let mut out = 0u32;
        let mut mult = 1u32;
        for _ in 0..self.d {
            out += (p - a % p) % p * mult;
            a /= p;
            mult *= p;
        }
        out
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.d == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let digits = |mut x: u32| {
            let mut v = Vec::with_capacity(self.d as usize);
            for _ in 0..self.d {
                v.push(x % self.p);
                x /= self.p;
            }
            poly_trim(&mut v);
            v
        };
        let prod = poly_mul_mod_p(&digits(a), &digits(b), self.p);
        let rem = poly_rem_mod_p(&prod, &self.modulus, self.p);
        rem.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if !self.add_table.is_empty() {
            self.add_table[a as usize * self.q as usize + b as usize]
        } else {
            self.add_raw(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative inverse; a must be nonzero.
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        debug_assert_ne!(a, 0);
        let i = self.log[a as usize];
        self.exp[((self.q - 1 - i) % (self.q - 1)) as usize]
    }

    /// Embeds an integer coefficient via reduction mod the characteristic.
    pub fn embed(&self, c: i64) -> FqElem {
        c.rem_euclid(self.p as i64) as FqElem
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_factoring() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(17), Some((17, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(Fq::new(6), Err(FieldError::NotPrimePower { .. })));
        assert!(matches!(Fq::new(1 << 21), Err(FieldError::TooLarge { .. })));
    }

    fn check_axioms(fq: &Fq) {
        let q = fq.q();
        // sampled stride keeps the largest fields cheap
        let stride = (q / 13).max(1);
        let pts: Vec<u32> = (0..q).step_by(stride as usize).collect();
        for &a in &pts {
            assert_eq!(fq.add(a, 0), a);
            assert_eq!(fq.mul(a, 1), a);
            assert_eq!(fq.add(a, fq.neg(a)), 0);
            if a != 0 {
                assert_eq!(fq.mul(a, fq.inv(a)), 1);
            }
            for &b in &pts {
                assert_eq!(fq.add(a, b), fq.add(b, a));
                assert_eq!(fq.mul(a, b), fq.mul(b, a));
                for &c in &pts {
                    assert_eq!(fq.add(fq.add(a, b), c), fq.add(a, fq.add(b, c)));
                    assert_eq!(fq.mul(fq.mul(a, b), c), fq.mul(a, fq.mul(b, c)));
                    assert_eq!(fq.mul(a, fq.add(b, c)), fq.add(fq.mul(a, b), fq.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_desk_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27] {
            let fq = Fq::new(q).unwrap();
            assert_eq!(fq.q() as u64, q);
            check_axioms(&fq);
        }
    }

    #[test]
    fn characteristic_embedding() {
        let f4 = Fq::new(4).unwrap();
        assert_eq!(f4.characteristic(), 2);
        assert_eq!(f4.embed(2), 0);
        assert_eq!(f4.embed(-1), 1);
        // 1 + 1 = 0 in characteristic 2 even though q = 4
        assert_eq!(f4.add(1, 1), 0);
    }

    #[test]
    fn two_irreducibles_exist_for_desk_extensions() {
        for (p, d) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (5, 2)] {
            let ms = irreducible_polys(p, d, 2);
            assert_eq!(ms.len(), 2, "GF({p}^{d})");
            for m in ms {
                Fq::extension(p, d, m).unwrap();
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(matches!(
            Fq::extension(2, 2, alloc::vec![1, 0, 1]),
            Err(FieldError::NotIrreducible)
        ));
    }

    #[test]
    fn larger_table_free_field() {
        // beyond the add-table threshold: digitwise path
        let fq = Fq::new(2048).unwrap(); // 2^11
        assert_eq!(fq.characteristic(), 2);
        check_axioms(&fq);
    }
}
