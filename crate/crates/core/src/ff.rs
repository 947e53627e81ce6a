//! Arithmetic in GF(p^k) for p in {2, 3, 5, 7} and q = p^k <= 2^16.
//!
//! An element is encoded as an integer in [0, q): the encoding sum(c_i p^i)
//! stands for the residue of the polynomial sum(c_i t^i) modulo a canonical
//! irreducible. The canonical modulus of degree k is the lexicographically
//! smallest monic irreducible, comparing coefficient vectors starting from
//! the constant term. With this encoding 0 and 1 are the additive and
//! multiplicative identities of every field, and the prime subfield is
//! exactly the encodings 0..p.
//!
//! Construction finds the modulus by trial division and then builds discrete
//! log tables over the smallest generator, so a `Field` costs O(q) to build
//! once and multiplication, inversion and powers are table lookups
//! afterwards. Addition is an XOR in characteristic 2 and a digit-wise sum
//! otherwise. Fields above 2^16 are rejected, never computed slowly.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Integer encoding of a field element; valid encodings lie in `[0, q)`.
pub type Elem = u16;

/// Characteristics accepted by [`Field::new`].
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported characteristic {0}: supported primes are 2, 3, 5, 7")]
    UnsupportedPrime(u32),
    #[error("unsupported field order {p}^{k}: need k >= 1 and p^k <= 2^16")]
    UnsupportedOrder { p: u32, k: u32 },
    #[error("{0} is not a power of a supported prime")]
    NotAPrimePower(u64),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("encoding {value} is not an element of a field of order {q}")]
    InvalidElement { value: u32, q: u32 },
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length k+1.
    modulus: Vec<Elem>,
    /// Smallest generator of the multiplicative group, as an encoding.
    generator: Elem,
    /// `exp[i] = generator^i` for i in 0..q-1.
    exp: Vec<Elem>,
    /// `log[a]` defined for a in 1..q; `log[0]` is a padding zero.
    log: Vec<u32>,
}

/// A concrete field GF(p^k). Cheap to clone and safe to share across
/// threads; two handles are interchangeable iff `p`, `k` (and hence the
/// canonical modulus) agree.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.k == other.inner.k)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

impl Field {
    /// Builds GF(p^k) with the canonical modulus and lookup tables.
    pub fn new(p: u32, k: u32) -> Result<Field, FieldError> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(FieldError::UnsupportedPrime(p));
        }
        if k == 0 {
            return Err(FieldError::UnsupportedOrder { p, k });
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q *= p as u64;
            if q > MAX_ORDER as u64 {
                return Err(FieldError::UnsupportedOrder { p, k });
            }
        }
        let q = q as u32;
        let modulus = canonical_modulus(p, k);
        let raw = RawField { p, k, q, modulus };
        let (generator, exp, log) = build_tables(&raw);
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                k,
                q,
                modulus: raw.modulus,
                generator,
                exp,
                log,
            }),
        })
    }

    /// Builds the field of order `q`, which must be a power of a supported
    /// prime.
    pub fn from_order(q: u64) -> Result<Field, FieldError> {
        for &p in &SUPPORTED_PRIMES {
            if q % p as u64 == 0 {
                let mut k = 0u32;
                let mut rest = q;
                while rest % p as u64 == 0 {
                    rest /= p as u64;
                    k += 1;
                }
                if rest != 1 {
                    return Err(FieldError::NotAPrimePower(q));
                }
                return Field::new(p, k);
            }
        }
        Err(FieldError::NotAPrimePower(q))
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// Field order q = p^k.
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Canonical modulus, low degree first, length k+1, monic.
    pub fn modulus(&self) -> &[Elem] {
        &self.inner.modulus
    }

    /// Smallest multiplicative generator (by encoding).
    pub fn generator(&self) -> Elem {
        self.inner.generator
    }

    pub fn has_char_2(&self) -> bool {
        self.inner.p == 2
    }

    pub fn contains(&self, a: Elem) -> bool {
        (a as u32) < self.inner.q
    }

    pub fn check(&self, a: Elem) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::InvalidElement {
                value: a as u32,
                q: self.inner.q,
            })
        }
    }

    /// All element encodings, 0 first.
    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.inner.q).map(|v| v as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.k == 1 {
            let s = a as u32 + b as u32;
            let p = inner.p;
            return (if s >= p { s - p } else { s }) as Elem;
        }
        digitwise(inner.p, a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a;
        }
        if inner.k == 1 {
            return if a == 0 { 0 } else { (inner.p - a as u32) as Elem };
        }
        digitwise(inner.p, a, 0, |x, _, p| (p - x) % p)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.inner.p == 2 {
            return a ^ b;
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let i = inner.log[a as usize] + inner.log[b as usize];
        let m = inner.q - 1;
        let i = if i >= m { i - m } else { i };
        inner.exp[i as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let inner = &*self.inner;
        let m = inner.q - 1;
        let i = (m - inner.log[a as usize]) % m;
        Ok(inner.exp[i as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by discrete log; `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let m = (inner.q - 1) as u64;
        let i = (inner.log[a as usize] as u64 * (e % m)) % m;
        inner.exp[i as usize]
    }

    /// The Frobenius endomorphism a -> a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.inner.p as u64)
    }

    /// Reference multiplication by polynomial arithmetic, bypassing the
    /// tables; used to cross-check table construction.
    pub fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let raw = RawField {
            p: self.inner.p,
            k: self.inner.k,
            q: self.inner.q,
            modulus: self.inner.modulus.clone(),
        };
        raw.mul(a, b)
    }
}

#[inline]
fn digitwise(p: u32, a: Elem, b: Elem, op: fn(u32, u32, u32) -> u32) -> Elem {
    let mut a = a as u32;
    let mut b = b as u32;
    let mut out = 0u32;
    let mut place = 1u32;
    while a != 0 || b != 0 {
        out += op(a % p, b % p, p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out as Elem
}

/// Field description sufficient for slow polynomial arithmetic, used while
/// the tables are being built.
struct RawField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<Elem>,
}

impl RawField {
    fn digits(&self, a: Elem) -> Vec<u32> {
        let mut a = a as u32;
        let mut out = vec![0u32; self.k as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> Elem {
        let mut out = 0u32;
        for &d in digits.iter().rev() {
            out = out * self.p + d;
        }
        out as Elem
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce top-down using t^k = -(m_0 + ... + m_{k-1} t^{k-1}).
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..k {
                let m = self.modulus[j] as u32;
                if m != 0 {
                    let idx = d - k + j;
                    prod[idx] = (prod[idx] + c * (p - m)) % p;
                }
            }
        }
        self.encode(&prod[..k])
    }
}

/// Lexicographically smallest monic irreducible of degree k over GF(p),
/// coefficients compared from the constant term up. Degree 1 always yields
/// the polynomial t itself.
fn canonical_modulus(p: u32, k: u32) -> Vec<Elem> {
    if k == 1 {
        return vec![0, 1];
    }
    let k = k as usize;
    let mut count: u64 = 1;
    for _ in 0..k {
        count *= p as u64;
    }
    let mut candidates: Vec<Vec<Elem>> = Vec::with_capacity(count as usize);
    for c in 0..count {
        let mut c = c;
        let mut coeffs = vec![0 as Elem; k + 1];
        for d in coeffs.iter_mut().take(k) {
            *d = (c % p as u64) as Elem;
            c /= p as u64;
        }
        coeffs[k] = 1;
        candidates.push(coeffs);
    }
    candidates.sort();
    for cand in candidates {
        if is_irreducible(p, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, poly: &[Elem]) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let mut count: u64 = 1;
        for _ in 0..d {
            count *= p as u64;
        }
        for c in 0..count {
            let mut c = c;
            let mut div = vec![0u32; d + 1];
            for digit in div.iter_mut().take(d) {
                *digit = (c % p as u64) as u32;
                c /= p as u64;
            }
            div[d] = 1;
            if divides(p, &div, poly) {
                return false;
            }
        }
    }
    true
}

fn divides(p: u32, divisor: &[u32], poly: &[Elem]) -> bool {
    let mut rem: Vec<u32> = poly.iter().map(|&c| c as u32).collect();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            // Divisor is monic, so the quotient digit is just `lead`.
            for (j, &m) in divisor.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = (rem[idx] + lead * (p - m % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// Finds the smallest generator by encoding and fills exp/log along the way.
fn build_tables(raw: &RawField) -> (Elem, Vec<Elem>, Vec<u32>) {
    let q = raw.q;
    let m = (q - 1) as usize;
    let mut exp = vec![0 as Elem; m.max(1)];
    if q == 2 {
        exp[0] = 1;
        return (1, exp, vec![0, 0]);
    }
    'candidate: for g in 2..q {
        let g = g as Elem;
        let mut x: Elem = 1;
        for slot in exp.iter_mut() {
            *slot = x;
            x = raw.mul(x, g);
            if x == 1 {
                break;
            }
        }
        if x == 1 && exp[m - 1] != 0 && raw.mul(exp[m - 1], g) == 1 {
            // Confirm full period: every slot was written and returns to 1.
            let mut log = vec![0u32; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            return (g, exp, log);
        }
        for slot in exp.iter_mut() {
            *slot = 0;
        }
        continue 'candidate;
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(11, 1).unwrap_err(), FieldError::UnsupportedPrime(11));
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::UnsupportedPrime(4));
        assert_eq!(
            Field::new(2, 0).unwrap_err(),
            FieldError::UnsupportedOrder { p: 2, k: 0 }
        );
        assert_eq!(
            Field::new(2, 17).unwrap_err(),
            FieldError::UnsupportedOrder { p: 2, k: 17 }
        );
        assert_eq!(
            Field::new(7, 6).unwrap_err(),
            FieldError::UnsupportedOrder { p: 7, k: 6 }
        );
        assert_eq!(Field::from_order(12).unwrap_err(), FieldError::NotAPrimePower(12));
        assert_eq!(Field::from_order(11).unwrap_err(), FieldError::NotAPrimePower(11));
    }

    #[test]
    fn from_order_recovers_p_and_k() {
        let f = Field::from_order(343).unwrap();
        assert_eq!((f.p(), f.k(), f.q()), (7, 3, 343));
        let f = Field::from_order(65536).unwrap();
        assert_eq!((f.p(), f.k(), f.q()), (2, 16, 65536));
    }

    #[test]
    fn gf4_matches_hand_computation() {
        // GF(4) = GF(2)[t]/(t^2+t+1); encoding 2 is t, encoding 3 is t+1.
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3); // t*t = t+1
        assert_eq!(f.mul(2, 3), 1); // t*(t+1) = t^2+t = 1
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(0).unwrap_err(), FieldError::ZeroInverse);
    }

    #[test]
    fn gf8_canonical_modulus_is_low_lex() {
        // Candidates of degree 3 over GF(2) in low-first lex order hit
        // t^3+t^2+1 (coeffs 1,0,1) before t^3+t+1 (coeffs 1,1,0).
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn neg_is_identity_in_char_2() {
        for k in 1..=4 {
            let f = Field::new(2, k).unwrap();
            for a in f.elems() {
                assert_eq!(f.neg(a), a);
            }
        }
    }

    #[test]
    fn zero_and_one_are_the_identities() {
        for (p, k) in [(2, 1), (2, 4), (3, 2), (5, 2), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            for a in f.elems() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            let q = f.q() as u16;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_match_polynomial_multiplication() {
        for (p, k) in [(2, 4), (2, 6), (7, 2), (3, 3)] {
            let f = Field::new(p, k).unwrap();
            let q = f.q() as u16;
            // Deterministic stride covers a spread of pairs; small fields in
            // full.
            for a in 0..q {
                for b in (0..q).step_by(7.max(q as usize / 97)) {
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b), "q={} a={} b={}", f.q(), a, b);
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_subfield() {
        for (p, k) in [(2, 4), (3, 2), (5, 2), (7, 2)] {
            let f = Field::new(p, k).unwrap();
            let fixed: Vec<Elem> = f.elems().filter(|&a| f.frobenius(a) == a).collect();
            let expected: Vec<Elem> = (0..p as Elem).collect();
            assert_eq!(fixed, expected, "GF({}^{})", p, k);
        }
    }

    #[test]
    fn pow_agrees_with_repeated_multiplication() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elems() {
            let mut acc: Elem = 1;
            for e in 0..20u64 {
                assert_eq!(f.pow(a, e), acc);
                acc = f.mul(acc, a);
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, k) in [(2, 1), (2, 8), (3, 4), (5, 3), (7, 2)] {
            let f = Field::new(p, k).unwrap();
            let g = f.generator();
            let mut seen = vec![false; f.q() as usize];
            let mut x: Elem = 1;
            for _ in 0..f.q() - 1 {
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
                x = f.mul(x, g);
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn largest_field_builds() {
        let f = Field::new(2, 16).unwrap();
        assert_eq!(f.q(), 65536);
        let a: Elem = 40000;
        let b = f.inv(a).unwrap();
        assert_eq!(f.mul(a, b), 1);
        assert_eq!(f.mul(a, f.mul_poly(a, a)), f.pow(a, 3));
    }
}
