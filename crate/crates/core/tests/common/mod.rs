//! Helpers shared by the integration test targets.

use nilcomm::ff::{Elem, Field};
use nilcomm::matff::Mat;
use rand::Rng;

/// Every field order exercised by the exhaustive axiom checks.
pub const AXIOM_ORDERS: &[u64] = &[
    2, 4, 8, 16, 32, 64, 128, 256, 3, 9, 27, 81, 243, 5, 25, 125, 7, 49,
];

/// Checks every field axiom over every element (triples included), plus
/// the compatibility of pow and frobenius with multiplication.
pub fn field_axioms_exhaustive(q: u64) -> Result<(), String> {
    let f = Field::from_order(q).map_err(|e| e.to_string())?;
    let elems: Vec<Elem> = f.elems().collect();
    let fail = |law: &str, operands: &[Elem]| {
        Err(format!("q={}: {} violated at {:?}", q, law, operands))
    };

    for &a in &elems {
        if f.add(a, 0) != a {
            return fail("additive identity", &[a]);
        }
        if f.mul(a, 1) != a {
            return fail("multiplicative identity", &[a]);
        }
        if f.add(a, f.neg(a)) != 0 {
            return fail("additive inverse", &[a]);
        }
        if a != 0 {
            let inv = f.inv(a).map_err(|e| e.to_string())?;
            if f.mul(a, inv) != 1 {
                return fail("multiplicative inverse", &[a]);
            }
        }
        if f.frobenius(a) != f.pow(a, f.p() as u64) {
            return fail("frobenius is the p-th power", &[a]);
        }
    }
    for &a in &elems {
        for &b in &elems {
            if f.add(a, b) != f.add(b, a) {
                return fail("commutativity of addition", &[a, b]);
            }
            if f.mul(a, b) != f.mul(b, a) {
                return fail("commutativity of multiplication", &[a, b]);
            }
            if f.frobenius(f.mul(a, b)) != f.mul(f.frobenius(a), f.frobenius(b)) {
                return fail("frobenius is multiplicative", &[a, b]);
            }
            if f.frobenius(f.add(a, b)) != f.add(f.frobenius(a), f.frobenius(b)) {
                return fail("frobenius is additive", &[a, b]);
            }
        }
    }
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                if f.add(f.add(a, b), c) != f.add(a, f.add(b, c)) {
                    return fail("associativity of addition", &[a, b, c]);
                }
                if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)) {
                    return fail("associativity of multiplication", &[a, b, c]);
                }
                if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)) {
                    return fail("distributivity", &[a, b, c]);
                }
            }
        }
    }
    Ok(())
}

pub fn random_mat<R: Rng>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
    let q = field.q();
    let entries: Vec<Elem> = (0..rows * cols)
        .map(|_| rng.gen_range(0..q) as Elem)
        .collect();
    Mat::from_entries(field, rows, cols, entries).expect("entries in range")
}
