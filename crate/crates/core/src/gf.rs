//! Finite fields GF(p) and GF(2^l).
//!
//! A [`FieldSpec`] is the serializable description of a field (kind, size and
//! modulus). A [`Field`] is the arithmetic context built from a validated spec;
//! codes hold a `Field` and operate on bare [`Symbol`]s. [`FieldElement`] pairs a
//! symbol with its spec for the checked, mixed-spec-rejecting API.
//!
//! Binary extension elements are bit-polynomials: bit `i` of the value is the
//! coefficient of `x^i`. The modulus of an extension field is the coefficient
//! bitmask of its irreducible polynomial, including the leading term.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical representative of a field element.
pub type Symbol = u32;

/// Largest supported extension degree; elements must fit in a [`Symbol`].
pub const MAX_BINARY_DEGREE: u32 = 32;

/// Fields at most this large get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Fixed irreducible (primitive) polynomial per extension degree, index = degree.
const BINARY_MODULI: [u64; 33] = [
    0,
    0x3,
    0x7,
    0xB,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11D,
    0x211,
    0x409,
    0x805,
    0x1053,
    0x201B,
    0x4443,
    0x8003,
    0x1100B,
    0x20009,
    0x40081,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x1000087,
    0x2000009,
    0x4000047,
    0x8000027,
    0x10000009,
    0x20000005,
    0x40800007,
    0x80000009,
    0x100400007,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Prime,
    BinaryExtension,
}

/// Serializable description of a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub q: u64,
    pub modulus: u64,
}

impl FieldSpec {
    /// GF(p). Fails unless `p` is a prime below 2^32.
    pub fn prime(p: u64) -> Result<Self> {
        let spec = FieldSpec {
            kind: FieldKind::Prime,
            q: p,
            modulus: p,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// GF(2^degree) with the bundled polynomial for that degree.
    pub fn binary(degree: u32) -> Result<Self> {
        if degree == 0 || degree > MAX_BINARY_DEGREE {
            return Err(Error::parameter(format!(
                "binary extension degree must be in 1..={MAX_BINARY_DEGREE}, got {degree}"
            )));
        }
        Self::binary_with_modulus(BINARY_MODULI[degree as usize])
    }

    /// GF(2^l) with an explicit modulus polynomial (bitmask with leading term).
    pub fn binary_with_modulus(modulus: u64) -> Result<Self> {
        let degree = poly_degree(modulus).unwrap_or(0);
        let q = if degree == 0 || degree > MAX_BINARY_DEGREE {
            0
        } else {
            1u64 << degree
        };
        let spec = FieldSpec {
            kind: FieldKind::BinaryExtension,
            q,
            modulus,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The bundled modulus for `GF(2^degree)`, if the degree is supported.
    pub fn bundled_modulus(degree: u32) -> Option<u64> {
        (1..=MAX_BINARY_DEGREE)
            .contains(&degree)
            .then(|| BINARY_MODULI[degree as usize])
    }

    /// Extension degree over the prime subfield (1 for prime fields).
    pub fn degree(&self) -> u32 {
        match self.kind {
            FieldKind::Prime => 1,
            FieldKind::BinaryExtension => poly_degree(self.modulus).unwrap_or(0),
        }
    }

    /// Accepts iff the modulus is prime / irreducible of the declared size.
    pub fn validate(&self) -> Result<()> {
        validate_spec(self)
    }
}

/// Checks a field spec, naming a witness factor when the modulus is reducible
/// or composite.
pub fn validate_spec(spec: &FieldSpec) -> Result<()> {
    match spec.kind {
        FieldKind::Prime => {
            if spec.q != spec.modulus {
                return Err(invalid(format!(
                    "prime field has q = {} but modulus = {}",
                    spec.q, spec.modulus
                )));
            }
            let p = spec.modulus;
            if p < 2 {
                return Err(invalid(format!("{p} is not a prime")));
            }
            if p > u64::from(u32::MAX) {
                return Err(invalid(format!("prime {p} exceeds 32 bits")));
            }
            if let Some(f) = smallest_factor(p) {
                return Err(Error::InvalidSpec {
                    reason: format!("{p} is composite ({f} * {})", p / f),
                    witness: Some(f),
                });
            }
            Ok(())
        }
        FieldKind::BinaryExtension => {
            let degree = match poly_degree(spec.modulus) {
                Some(d) if d >= 1 => d,
                _ => return Err(invalid("modulus polynomial must have degree >= 1")),
            };
            if degree > MAX_BINARY_DEGREE {
                return Err(invalid(format!(
                    "degree {degree} exceeds the supported maximum {MAX_BINARY_DEGREE}"
                )));
            }
            if spec.q != 1u64 << degree {
                return Err(invalid(format!(
                    "q = {} does not match modulus degree {degree}",
                    spec.q
                )));
            }
            match poly_factor_witness(spec.modulus) {
                Some(w) => Err(Error::InvalidSpec {
                    reason: format!(
                        "polynomial {:#x} is reducible (divisible by {:#x})",
                        spec.modulus, w
                    ),
                    witness: Some(w),
                }),
                None => Ok(()),
            }
        }
    }
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidSpec {
        reason: reason.into(),
        witness: None,
    }
}

fn smallest_factor(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return (n != 2).then_some(2);
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 2;
    }
    None
}

fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Carry-less product of two GF(2) polynomials.
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= u128::from(a) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn poly_rem128(mut a: u128, m: u64) -> u64 {
    let dm = poly_degree(m).expect("nonzero modulus");
    let m = u128::from(m);
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a as u64
}

fn poly_rem(a: u64, m: u64) -> u64 {
    poly_rem128(u128::from(a), m)
}

fn poly_mulmod(a: u64, b: u64, m: u64) -> u64 {
    poly_rem128(clmul(a, b), m)
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// A nontrivial factor of `f`, or `None` if `f` is irreducible.
///
/// Degrees up to 16 use trial division by every polynomial of degree at most
/// half, returning the smallest factor. Larger degrees use distinct-degree
/// factorization, returning the product of all irreducible factors of the
/// smallest degree present.
fn poly_factor_witness(f: u64) -> Option<u64> {
    let deg = poly_degree(f)?;
    if deg <= 1 {
        return None;
    }
    if deg <= 16 {
        for g in 2u64..(1u64 << (deg / 2 + 1)) {
            if poly_degree(g).unwrap_or(0) >= 1 && poly_rem(f, g) == 0 {
                return Some(g);
            }
        }
        return None;
    }
    let x = 0b10u64;
    let mut h = x;
    for _ in 1..=deg / 2 {
        h = poly_mulmod(h, h, f);
        let g = poly_gcd(f, h ^ x);
        if g != 1 {
            return Some(g);
        }
    }
    None
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<Symbol>,
    log: Vec<u32>,
}

/// Arithmetic context for one field.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    tables: Option<Arc<LogTables>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds the arithmetic context, with lookup tables for binary fields of
    /// size at most 2^16.
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.validate()?;
        let mut field = Field { spec, tables: None };
        if spec.kind == FieldKind::BinaryExtension && spec.q <= TABLE_LIMIT {
            field.tables = Some(Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    /// GF(2^degree) with the bundled modulus.
    pub fn binary(degree: u32) -> Result<Self> {
        Self::new(FieldSpec::binary(degree)?)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(FieldSpec::prime(p)?)
    }

    /// Context without lookup tables; used by the checked element API.
    fn plain(spec: FieldSpec) -> Self {
        Field { spec, tables: None }
    }

    fn build_tables(&self) -> LogTables {
        let q = self.spec.q as usize;
        let order = q - 1;
        let generator = (2..q as u64)
            .map(|g| g as Symbol)
            .find(|&g| self.is_generator(g))
            .unwrap_or(1);
        let mut exp = vec![0; 2 * order.max(1)];
        let mut log = vec![0; q];
        let mut v: Symbol = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = v;
            log[v as usize] = i as u32;
            v = self.mul_slow(v, generator);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        LogTables { exp, log }
    }

    fn is_generator(&self, g: Symbol) -> bool {
        let order = self.spec.q - 1;
        let mut n = order;
        let mut r = 2;
        let mut primes = Vec::new();
        while r * r <= n {
            if n % r == 0 {
                primes.push(r);
                while n % r == 0 {
                    n /= r;
                }
            }
            r += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        primes.iter().all(|&p| self.pow_slow(g, order / p) != 1)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn kind(&self) -> FieldKind {
        self.spec.kind
    }

    pub fn is_binary(&self) -> bool {
        self.spec.kind == FieldKind::BinaryExtension
    }

    pub fn zero(&self) -> Symbol {
        0
    }

    pub fn one(&self) -> Symbol {
        1
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        (0..self.spec.q).map(|v| v as Symbol)
    }

    pub fn contains(&self, a: Symbol) -> bool {
        u64::from(a) < self.spec.q
    }

    /// Reduces an arbitrary integer to its canonical representative.
    pub fn from_u64(&self, v: u64) -> Symbol {
        match self.spec.kind {
            FieldKind::Prime => (v % self.spec.q) as Symbol,
            FieldKind::BinaryExtension => poly_rem(v, self.spec.modulus) as Symbol,
        }
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        match self.spec.kind {
            FieldKind::Prime => ((u64::from(a) + u64::from(b)) % self.spec.q) as Symbol,
            FieldKind::BinaryExtension => a ^ b,
        }
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        match self.spec.kind {
            FieldKind::Prime if a != 0 => (self.spec.q - u64::from(a)) as Symbol,
            _ => a,
        }
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Symbol, b: Symbol) -> Symbol {
        match self.spec.kind {
            FieldKind::Prime => ((u64::from(a) * u64::from(b)) % self.spec.q) as Symbol,
            FieldKind::BinaryExtension => {
                poly_mulmod(u64::from(a), u64::from(b), self.spec.modulus) as Symbol
            }
        }
    }

    fn pow_slow(&self, a: Symbol, mut e: u64) -> Symbol {
        let mut base = a;
        let mut acc: Symbol = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Symbol, e: u64) -> Symbol {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        match &self.tables {
            Some(t) => {
                let order = self.spec.q - 1;
                let idx = (u64::from(t.log[a as usize]) * (e % order)) % order;
                t.exp[idx as usize]
            }
            None => self.pow_slow(a, e),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Symbol) -> Option<Symbol> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let order = (self.spec.q - 1) as u32;
                t.exp[((order - t.log[a as usize]) % order) as usize]
            }
            None => self.pow_slow(a, self.spec.q - 2),
        })
    }

    /// `a / b`; `None` when `b` is zero.
    pub fn div(&self, a: Symbol, b: Symbol) -> Option<Symbol> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }
}

/// A field value tagged with the spec of the field it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: Symbol,
    spec: FieldSpec,
}

/// Operations accepted by [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

impl FieldElement {
    /// Canonicalizes `value` into the field described by `spec`.
    pub fn new(spec: FieldSpec, value: u64) -> Self {
        let value = Field::plain(spec).from_u64(value);
        FieldElement { value, spec }
    }

    pub fn value(&self) -> Symbol {
        self.value
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::usage("operands belong to different fields"))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        field_arith(FieldOp::Add, self, Some(other))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        field_arith(FieldOp::Mul, self, Some(other))
    }

    pub fn checked_inv(&self) -> Result<FieldElement> {
        field_arith(FieldOp::Inv, self, None)
    }
}

/// Checked arithmetic on tagged elements.
pub fn field_arith(op: FieldOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
    let f = Field::plain(a.spec);
    let binary = |b: Option<&FieldElement>| -> Result<Symbol> {
        let b = b.ok_or_else(|| Error::usage("binary operation requires two operands"))?;
        a.same_field(b)?;
        Ok(b.value)
    };
    let value = match op {
        FieldOp::Add => f.add(a.value, binary(b)?),
        FieldOp::Sub => f.sub(a.value, binary(b)?),
        FieldOp::Mul => f.mul(a.value, binary(b)?),
        FieldOp::Neg => f.neg(a.value),
        FieldOp::Inv => f
            .inv(a.value)
            .ok_or_else(|| Error::Domain("inverse of zero".into()))?,
    };
    Ok(FieldElement {
        value,
        spec: a.spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_addition_wraps() {
        let s = FieldSpec::prime(3).unwrap();
        let r = field_arith(
            FieldOp::Add,
            &FieldElement::new(s, 2),
            Some(&FieldElement::new(s, 2)),
        )
        .unwrap();
        assert_eq!(r.value(), 1);
    }

    #[test]
    fn gf8_reduction() {
        let s = FieldSpec::binary_with_modulus(0b1011).unwrap();
        let x = FieldElement::new(s, 0b010);
        let x2 = FieldElement::new(s, 0b100);
        assert_eq!(x.checked_mul(&x2).unwrap().value(), 0b011);
    }

    #[test]
    fn inverse_of_one_and_zero() {
        for spec in [FieldSpec::prime(7).unwrap(), FieldSpec::binary(5).unwrap()] {
            let one = FieldElement::new(spec, 1);
            assert_eq!(one.checked_inv().unwrap().value(), 1);
            let zero = FieldElement::new(spec, 0);
            assert!(matches!(zero.checked_inv(), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn mixed_specs_rejected() {
        let a = FieldElement::new(FieldSpec::prime(5).unwrap(), 1);
        let b = FieldElement::new(FieldSpec::prime(7).unwrap(), 1);
        assert!(matches!(a.checked_add(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn validate_examples() {
        assert!(FieldSpec::prime(7).is_ok());
        match FieldSpec::prime(9) {
            Err(Error::InvalidSpec { witness, .. }) => assert_eq!(witness, Some(3)),
            other => panic!("expected invalid spec, got {other:?}"),
        }
        match FieldSpec::binary_with_modulus(0b101) {
            Err(Error::InvalidSpec { witness, .. }) => assert_eq!(witness, Some(0b11)),
            other => panic!("expected invalid spec, got {other:?}"),
        }
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(0).is_err());
    }

    #[test]
    fn bundled_moduli_are_irreducible() {
        for d in 1..=MAX_BINARY_DEGREE {
            let spec = FieldSpec::binary(d).unwrap_or_else(|e| panic!("degree {d}: {e}"));
            assert_eq!(spec.degree(), d);
            assert_eq!(spec.q, 1u64 << d);
        }
    }

    #[test]
    fn distinct_degree_witness_divides() {
        // (x^17 + x^3 + 1)(x + 1) has degree 18
        let f = clmul(0x20009, 0b11) as u64;
        let w = poly_factor_witness(f).expect("reducible");
        assert_eq!(poly_rem(f, w), 0);
        assert!(poly_degree(w).unwrap() >= 1 && w != f);
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        let specs = [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(3).unwrap(),
            FieldSpec::prime(5).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::binary(1).unwrap(),
            FieldSpec::binary(2).unwrap(),
            FieldSpec::binary(3).unwrap(),
            FieldSpec::binary(4).unwrap(),
        ];
        for spec in specs {
            let f = Field::new(spec).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_is_bijection_up_to_256() {
        for spec in [
            FieldSpec::binary(8).unwrap(),
            FieldSpec::prime(251).unwrap(),
            FieldSpec::binary(6).unwrap(),
        ] {
            let f = Field::new(spec).unwrap();
            let mut seen = vec![false; f.q() as usize];
            for a in f.elements().skip(1) {
                let ia = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ia), 1);
                assert!(!seen[ia as usize]);
                seen[ia as usize] = true;
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let spec = FieldSpec::binary(10).unwrap();
        let fast = Field::new(spec).unwrap();
        let slow = Field::plain(spec);
        for a in (0..1024).step_by(7) {
            for b in (0..1024).step_by(13) {
                assert_eq!(fast.mul(a, b), slow.mul(a, b));
            }
            assert_eq!(fast.inv(a), slow.inv(a));
            assert_eq!(fast.pow(a, 5), slow.pow(a, 5));
        }
    }

    #[test]
    fn large_extension_arithmetic() {
        let f = Field::binary(24).unwrap();
        for a in [1u32, 2, 0xABCDE, 0xFFFFFF] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn spec_json_shape() {
        let s = FieldSpec::binary(3).unwrap();
        let v: serde_json::Value = serde_json::to_value(s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"kind": "binary_extension", "q": 8, "modulus": 11})
        );
    }
}
