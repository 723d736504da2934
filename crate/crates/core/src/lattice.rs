//! Finite-index sublattices of Z² in Hermite normal form.
//!
//! A sublattice of index `d` is written canonically as the column span of
//!
//! ```text
//! | a  c |
//! | 0  b |        a·b = d,  0 ≤ c < a.
//! ```
//!
//! The quotient Z²/Λ has order `a·b` and is cyclic exactly when
//! `gcd(a, b, c) = 1`. Elements of the quotient are represented by the
//! transversal `{(i, j) : 0 ≤ i < a, 0 ≤ j < b}`: reduce the second
//! coordinate mod `b` first, then the first mod `a` after subtracting the
//! `c`-twist carried by the quotient of the second coordinate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use thiserror::Error;

use crate::arith::Factorization;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("quotient of the lattice ({a}, {b}, {c}) is not cyclic: gcd = {gcd}")]
    NotCyclic { a: u64, b: u64, c: u64, gcd: u64 },
    #[error("index-1 lattice has a trivial quotient; degree must be at least 2")]
    TrivialQuotient,
}

/// Canonical (a, b, c) triple for an index-`a·b` sublattice of Z².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HermiteMatrix {
    a: u64,
    b: u64,
    c: u64,
}

impl HermiteMatrix {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        assert!(a >= 1 && b >= 1, "diagonal entries must be positive");
        assert!(c < a, "twist must satisfy 0 <= c < a");
        HermiteMatrix { a, b, c }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// Index of the sublattice in Z², i.e. a·b.
    pub fn index(&self) -> u64 {
        self.a * self.b
    }

    /// Canonical representative of (x, y) in Z²/Λ.
    pub fn reduce(&self, x: i128, y: i128) -> (u64, u64) {
        let a = self.a as i128;
        let b = self.b as i128;
        let c = self.c as i128;
        let j = y.rem_euclid(b);
        let q = (y - j) / b;
        let i = (x - q * c).rem_euclid(a);
        (i as u64, j as u64)
    }

    /// k·r in Z²/Λ for a canonical representative r.
    pub fn scale(&self, r: (u64, u64), k: u64) -> (u64, u64) {
        self.reduce(k as i128 * r.0 as i128, k as i128 * r.1 as i128)
    }

    /// Sum of two residues in Z²/Λ.
    pub fn add(&self, r: (u64, u64), s: (u64, u64)) -> (u64, u64) {
        self.reduce(r.0 as i128 + s.0 as i128, r.1 as i128 + s.1 as i128)
    }

    /// True iff the residue has exact order `index()` in Z²/Λ. Uses the
    /// group order and its factorization: r generates iff (d/p)·r ≠ 0 for
    /// every prime p dividing d.
    pub fn residue_generates(&self, r: (u64, u64)) -> bool {
        let d = self.index();
        if d == 1 {
            return false;
        }
        Factorization::of(d)
            .pairs()
            .iter()
            .all(|&(p, _)| self.scale(r, d / p) != (0, 0))
    }
}

/// A sublattice with cyclic quotient together with a chosen generator of
/// that quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedSublattice {
    pub lattice: HermiteMatrix,
    /// Canonical representative of the chosen generator of Z²/Λ.
    pub marking: (u64, u64),
}

/// All index-`d` sublattices in Hermite form, ordered by (a, c).
/// There are σ₁(d) of them.
pub fn enumerate_sublattices(d: u64) -> Vec<HermiteMatrix> {
    assert!(d >= 1);
    let mut out = Vec::new();
    for a in Factorization::of(d).divisors() {
        let b = d / a;
        for c in 0..a {
            out.push(HermiteMatrix::new(a, b, c));
        }
    }
    out
}

/// True iff Z²/Λ is cyclic, i.e. gcd(a, b, c) = 1.
pub fn is_cyclic_quotient(m: &HermiteMatrix) -> bool {
    m.a.gcd(&m.b).gcd(&m.c) == 1
}

/// All residues of exact order d = index in Z²/Λ, in lexicographic order.
/// There are φ(d) of them. Rejects non-cyclic quotients and index 1.
pub fn quotient_generators(m: &HermiteMatrix) -> Result<Vec<(u64, u64)>, LatticeError> {
    if m.index() == 1 {
        return Err(LatticeError::TrivialQuotient);
    }
    if !is_cyclic_quotient(m) {
        return Err(LatticeError::NotCyclic {
            a: m.a,
            b: m.b,
            c: m.c,
            gcd: m.a.gcd(&m.b).gcd(&m.c),
        });
    }
    let mut gens = Vec::new();
    for i in 0..m.a {
        for j in 0..m.b {
            if m.residue_generates((i, j)) {
                gens.push((i, j));
            }
        }
    }
    Ok(gens)
}

/// All pairs (Λ, η) with Z²/Λ cyclic of order `d` and η a generator.
/// Empty for d = 1; for d ≥ 2 the count is φ(d)·Π_{pⁿ||d}(pⁿ + pⁿ⁻¹).
pub fn enumerate_marked(d: u64) -> Vec<MarkedSublattice> {
    assert!(d >= 1);
    if d == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for lattice in enumerate_sublattices(d) {
        if !is_cyclic_quotient(&lattice) {
            continue;
        }
        let gens = quotient_generators(&lattice)
            .expect("cyclic quotient of order >= 2 must yield generators");
        out.extend(
            gens.into_iter()
                .map(|marking| MarkedSublattice { lattice, marking }),
        );
    }
    out
}

/// φ(d)·Π_{pⁿ||d}(pⁿ + pⁿ⁻¹), the closed-form size of the marked census.
/// Only stated for d ≥ 2; d = 1 is rejected.
pub fn count_marked_closed_form(d: u64) -> Result<BigInt, LatticeError> {
    if d < 2 {
        return Err(LatticeError::TrivialQuotient);
    }
    let f = Factorization::of(d);
    let phi: BigInt = f
        .pairs()
        .iter()
        .map(|&(p, n)| BigInt::from(p).pow(n - 1) * (BigInt::from(p) - 1))
        .product();
    let cyclic_lattices: BigInt = f
        .pairs()
        .iter()
        .map(|&(p, n)| BigInt::from(p).pow(n) + BigInt::from(p).pow(n - 1))
        .product();
    Ok(phi * cyclic_lattices)
}

/// Index in Z² of the lattice Λ₁ + Λ₂ generated jointly by both sublattices,
/// by integer triangularization of the four stacked generators.
pub fn sum_index(m1: &HermiteMatrix, m2: &HermiteMatrix) -> u64 {
    // Generators: (a1, 0), (c1, b1), (a2, 0), (c2, b2).
    let (a1, b1, c1) = (m1.a as i128, m1.b as i128, m1.c as i128);
    let (a2, b2, c2) = (m2.a as i128, m2.b as i128, m2.c as i128);
    // gcd of the second coordinates, with Bezout coefficients.
    let ext = i128::extended_gcd(&b1, &b2);
    let g = ext.gcd;
    // One combined generator with second coordinate g; eliminate the rest.
    let e0 = ext.x * c1 + ext.y * c2;
    let r1 = c1 - (b1 / g) * e0;
    let r2 = c2 - (b2 / g) * e0;
    let d1 = a1.gcd(&a2).gcd(&r1).gcd(&r2);
    (d1 * g) as u64
}

/// True iff Λ₁ + Λ₂ = Z². Same criterion as `sum_index == 1` but with the
/// cheap exits first; the brute-force pair oracle runs this in its inner
/// loop.
pub fn sum_is_full(m1: &HermiteMatrix, m2: &HermiteMatrix) -> bool {
    let g = m1.b.gcd(&m2.b);
    if g != 1 {
        return false;
    }
    if m1.a.gcd(&m2.a) == 1 {
        return true;
    }
    sum_index(m1, m2) == 1
}

/// Smith normal form invariants (d₁, d₂) with d₁ | d₂ of the 2×2 matrix
/// [[a, c], [0, b]], computed by honest row/column elimination. Used as a
/// structural cross-check: the quotient has order d₁·d₂ and is cyclic
/// exactly when d₁ = 1.
pub fn smith_invariants(m: &HermiteMatrix) -> (u64, u64) {
    let mut t = [[m.a as i128, m.c as i128], [0, m.b as i128]];
    loop {
        if t[0][0] == 0 {
            if t[1][0] != 0 {
                t.swap(0, 1);
            } else if t[0][1] != 0 {
                swap_cols(&mut t);
            } else {
                t.swap(0, 1);
                swap_cols(&mut t);
            }
        }
        // Clear the rest of the first column by row operations.
        while t[1][0] != 0 {
            let q = t[1][0] / t[0][0];
            t[1][0] -= q * t[0][0];
            t[1][1] -= q * t[0][1];
            if t[1][0] != 0 {
                t.swap(0, 1);
            }
        }
        // Clear the rest of the first row by column operations.
        while t[0][1] != 0 {
            let q = t[0][1] / t[0][0];
            t[0][1] -= q * t[0][0];
            t[1][1] -= q * t[1][0];
            if t[0][1] != 0 {
                swap_cols(&mut t);
            }
        }
        if t[1][0] == 0 && t[0][1] == 0 {
            if t[1][1] % t[0][0] == 0 {
                break;
            }
            // Force divisibility: add the second row to the first and redo.
            t[0][1] += t[1][1];
        }
    }
    (t[0][0].unsigned_abs() as u64, t[1][1].unsigned_abs() as u64)
}

fn swap_cols(t: &mut [[i128; 2]; 2]) {
    t[0].swap(0, 1);
    t[1].swap(0, 1);
}
