//! Exact arithmetic in a chosen commutative coefficient ring.
//!
//! A [`Ring`] is a runtime choice among the integers, the integers modulo
//! `q >= 2`, and multivariate polynomials with integer coefficients. Elements
//! are kept in a canonical form unique per ring value, so equality of
//! elements is plain representational equality. All arithmetic is exact;
//! there is no floating point anywhere.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rng::Rng64;

/// A commutative coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    kind: RingKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RingKind {
    Integers,
    Modular { q: BigUint },
    Polynomials { vars: Vec<String> },
}

/// Exponent vector over the ring's declared variable list.
///
/// Ordering is lexicographic on the exponents, which matches lexicographic
/// order on the declared variables and fixes canonical printing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Monomial(Vec<u32>);

/// An element of a [`Ring`], in canonical form.
///
/// Canonical forms: arbitrary-precision integer; residue in `[0, q)`;
/// sorted sparse monomial map with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Int(BigInt),
    Mod(BigUint),
    Poly(BTreeMap<Monomial, BigInt>),
}

impl Ring {
    pub fn integers() -> Ring {
        Ring { kind: RingKind::Integers }
    }

    /// Integers modulo `q`; rejects `q < 2` (the zero ring carries no
    /// information and would trivialize every identity).
    pub fn modular(q: BigUint) -> Result<Ring> {
        if q < BigUint::from(2u32) {
            return Err(Error::InvalidRing(format!("modulus must be >= 2, got {q}")));
        }
        Ok(Ring { kind: RingKind::Modular { q } })
    }

    pub fn modular_u64(q: u64) -> Result<Ring> {
        Ring::modular(BigUint::from(q))
    }

    /// Polynomial ring over the integers in the given ordered variables.
    /// Variable names must be distinct, nonempty, and made of word characters.
    pub fn polynomials<S: Into<String>>(vars: Vec<S>) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for v in &vars {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                || v.chars().next().is_some_and(|c| c.is_ascii_digit())
            {
                return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Ring { kind: RingKind::Polynomials { vars } })
    }

    /// Parse the shared ring grammar: `integers`, `mod:<q>`, `poly:<v1,v2,...>`.
    pub fn from_spec(spec: &str) -> Result<Ring> {
        let spec = spec.trim();
        if spec == "integers" {
            return Ok(Ring::integers());
        }
        if let Some(q) = spec.strip_prefix("mod:") {
            let q: BigUint = q
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRing(format!("bad modulus {q:?}")))?;
            return Ring::modular(q);
        }
        if let Some(vars) = spec.strip_prefix("poly:") {
            let names: Vec<String> = if vars.trim().is_empty() {
                Vec::new()
            } else {
                vars.split(',').map(|s| s.trim().to_string()).collect()
            };
            return Ring::polynomials(names);
        }
        Err(Error::InvalidRing(format!(
            "unknown ring spec {spec:?}; expected integers, mod:<q> or poly:<v1,v2,...>"
        )))
    }

    /// Canonical spec string, inverse of [`Ring::from_spec`].
    pub fn spec(&self) -> String {
        match &self.kind {
            RingKind::Integers => "integers".to_string(),
            RingKind::Modular { q } => format!("mod:{q}"),
            RingKind::Polynomials { vars } => format!("poly:{}", vars.join(",")),
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self.kind, RingKind::Integers)
    }

    pub fn modulus(&self) -> Option<&BigUint> {
        match &self.kind {
            RingKind::Modular { q } => Some(q),
            _ => None,
        }
    }

    pub fn variables(&self) -> Option<&[String]> {
        match &self.kind {
            RingKind::Polynomials { vars } => Some(vars),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElement {
        match &self.kind {
            RingKind::Integers => RingElement { repr: Repr::Int(BigInt::zero()) },
            RingKind::Modular { .. } => RingElement { repr: Repr::Mod(BigUint::zero()) },
            RingKind::Polynomials { .. } => RingElement { repr: Repr::Poly(BTreeMap::new()) },
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_bigint(&BigInt::one())
    }

    /// Additive and multiplicative identities, in canonical form.
    pub fn constants(&self) -> (RingElement, RingElement) {
        (self.zero(), self.one())
    }

    /// Canonical image of an integer under the unique map `Z -> A`.
    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        match &self.kind {
            RingKind::Integers => RingElement { repr: Repr::Int(v.clone()) },
            RingKind::Modular { q } => {
                let m = BigInt::from(q.clone());
                let r = v.mod_floor(&m);
                RingElement { repr: Repr::Mod(r.to_biguint().expect("mod_floor is nonnegative")) }
            }
            RingKind::Polynomials { vars } => {
                let mut map = BTreeMap::new();
                if !v.is_zero() {
                    map.insert(Monomial(vec![0; vars.len()]), v.clone());
                }
                RingElement { repr: Repr::Poly(map) }
            }
        }
    }

    pub fn from_int(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    /// The generator named `name`, in a polynomial ring.
    pub fn var(&self, name: &str) -> Result<RingElement> {
        match &self.kind {
            RingKind::Polynomials { vars } => {
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::InvalidRing(format!("unknown variable {name:?}")))?;
                let mut exps = vec![0u32; vars.len()];
                exps[idx] = 1;
                let mut map = BTreeMap::new();
                map.insert(Monomial(exps), BigInt::one());
                Ok(RingElement { repr: Repr::Poly(map) })
            }
            _ => Err(Error::RingMismatch(format!("{} has no variables", self.spec()))),
        }
    }

    /// Shape-check an element against this ring.
    pub fn validate(&self, x: &RingElement) -> Result<()> {
        match (&self.kind, &x.repr) {
            (RingKind::Integers, Repr::Int(_)) => Ok(()),
            (RingKind::Modular { q }, Repr::Mod(r)) => {
                if r < q {
                    Ok(())
                } else {
                    Err(Error::RingMismatch(format!("residue {r} outside [0, {q})")))
                }
            }
            (RingKind::Polynomials { vars }, Repr::Poly(map)) => {
                for (m, c) in map {
                    if m.0.len() != vars.len() {
                        return Err(Error::RingMismatch(
                            "monomial arity differs from variable count".into(),
                        ));
                    }
                    if c.is_zero() {
                        return Err(Error::RingMismatch("zero coefficient stored".into()));
                    }
                }
                Ok(())
            }
            _ => Err(Error::RingMismatch(format!(
                "element does not belong to ring {}",
                self.spec()
            ))),
        }
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.validate(x)?;
        self.validate(y)?;
        let repr = match (&self.kind, &x.repr, &y.repr) {
            (RingKind::Integers, Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (RingKind::Modular { q }, Repr::Mod(a), Repr::Mod(b)) => Repr::Mod((a + b) % q),
            (RingKind::Polynomials { .. }, Repr::Poly(a), Repr::Poly(b)) => {
                let mut out = a.clone();
                for (m, c) in b {
                    let entry = out.entry(m.clone()).or_insert_with(BigInt::zero);
                    *entry += c;
                    if entry.is_zero() {
                        out.remove(m);
                    }
                }
                Repr::Poly(out)
            }
            _ => unreachable!("validated above"),
        };
        Ok(RingElement { repr })
    }

    pub fn neg(&self, x: &RingElement) -> Result<RingElement> {
        self.validate(x)?;
        let repr = match (&self.kind, &x.repr) {
            (RingKind::Integers, Repr::Int(a)) => Repr::Int(-a),
            (RingKind::Modular { q }, Repr::Mod(a)) => {
                if a.is_zero() {
                    Repr::Mod(BigUint::zero())
                } else {
                    Repr::Mod(q - a)
                }
            }
            (RingKind::Polynomials { .. }, Repr::Poly(map)) => {
                Repr::Poly(map.iter().map(|(m, c)| (m.clone(), -c)).collect())
            }
            _ => unreachable!("validated above"),
        };
        Ok(RingElement { repr })
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.validate(x)?;
        self.validate(y)?;
        let repr = match (&self.kind, &x.repr, &y.repr) {
            (RingKind::Integers, Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (RingKind::Modular { q }, Repr::Mod(a), Repr::Mod(b)) => Repr::Mod((a * b) % q),
            (RingKind::Polynomials { .. }, Repr::Poly(a), Repr::Poly(b)) => {
                let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        let exps: Option<Vec<u32>> = ma
                            .0
                            .iter()
                            .zip(&mb.0)
                            .map(|(p, r)| p.checked_add(*r))
                            .collect();
                        let exps = exps.ok_or_else(|| {
                            Error::Bounds("polynomial exponent overflow".into())
                        })?;
                        let m = Monomial(exps);
                        let entry = out.entry(m.clone()).or_insert_with(BigInt::zero);
                        *entry += ca * cb;
                        if entry.is_zero() {
                            out.remove(&m);
                        }
                    }
                }
                Repr::Poly(out)
            }
            _ => unreachable!("validated above"),
        };
        Ok(RingElement { repr })
    }

    pub fn is_zero(&self, x: &RingElement) -> bool {
        *x == self.zero()
    }

    /// Evaluate a polynomial element at an integer point, one value per
    /// declared variable. For the other ring kinds the point must be empty
    /// and the element is returned as its underlying integer when possible.
    pub fn eval_poly(&self, x: &RingElement, point: &[BigInt]) -> Result<BigInt> {
        self.validate(x)?;
        match (&self.kind, &x.repr) {
            (RingKind::Polynomials { vars }, Repr::Poly(map)) => {
                if point.len() != vars.len() {
                    return Err(Error::Bounds(format!(
                        "expected {} coordinates, got {}",
                        vars.len(),
                        point.len()
                    )));
                }
                let mut total = BigInt::zero();
                for (m, c) in map {
                    let mut term = c.clone();
                    for (exp, val) in m.0.iter().zip(point) {
                        term *= val.pow(*exp);
                    }
                    total += term;
                }
                Ok(total)
            }
            _ => Err(Error::RingMismatch("eval_poly needs a polynomial ring".into())),
        }
    }

    /// Small random element, for randomized scenarios and property drivers.
    ///
    /// Integers are uniform in `[-magnitude, magnitude]`; residues uniform
    /// in `[0, q)`; polynomials have up to three small monomials.
    pub fn random_element(&self, rng: &mut Rng64, magnitude: u64) -> RingElement {
        let magnitude = magnitude.max(1);
        match &self.kind {
            RingKind::Integers => {
                let m = magnitude as i64;
                self.from_int(rng.range_i64(-m, m))
            }
            RingKind::Modular { q } => {
                let r = BigUint::from(rng.next_u64()) % q;
                RingElement { repr: Repr::Mod(r) }
            }
            RingKind::Polynomials { vars } => {
                let mut acc = self.zero();
                let terms = rng.below(3) + 1;
                for _ in 0..terms {
                    let m = magnitude as i64;
                    let coeff = rng.range_i64(-m, m);
                    let mut term = self.from_int(coeff);
                    if !vars.is_empty() {
                        // Touch at most two variables so products stay small.
                        for _ in 0..rng.below(3) {
                            let v = &vars[rng.below(vars.len() as u64) as usize];
                            let var = self.var(v).expect("known variable");
                            term = self.mul(&term, &var).expect("same ring");
                        }
                    }
                    acc = self.add(&acc, &term).expect("same ring");
                }
                acc
            }
        }
    }

    /// Canonical text form: decimal for integers, `r mod q` for residues,
    /// sorted monomial sums like `3*x^2*y + 1` for polynomials.
    pub fn format_element(&self, x: &RingElement) -> String {
        match (&self.kind, &x.repr) {
            (RingKind::Integers, Repr::Int(a)) => a.to_string(),
            (RingKind::Modular { q }, Repr::Mod(r)) => format!("{r} mod {q}"),
            (RingKind::Polynomials { vars }, Repr::Poly(map)) => format_poly(vars, map),
            _ => panic!("element does not belong to ring {}", self.spec()),
        }
    }

    /// Parse the canonical text form produced by [`Ring::format_element`].
    /// Integer inputs are also accepted for modular rings and reduced.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        match &self.kind {
            RingKind::Integers => {
                let v: BigInt = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
                Ok(self.from_bigint(&v))
            }
            RingKind::Modular { q } => {
                let (num, modpart) = match s.split_once(" mod ") {
                    Some((a, b)) => (a.trim(), Some(b.trim())),
                    None => (s, None),
                };
                if let Some(mq) = modpart {
                    let given: BigUint = mq
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad modulus {mq:?}")))?;
                    if &given != q {
                        return Err(Error::RingMismatch(format!(
                            "element written mod {given}, ring is mod {q}"
                        )));
                    }
                }
                let v: BigInt = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {num:?}")))?;
                Ok(self.from_bigint(&v))
            }
            RingKind::Polynomials { vars } => parse_poly(self, vars, s),
        }
    }
}

fn format_poly(vars: &[String], map: &BTreeMap<Monomial, BigInt>) -> String {
    if map.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in map.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono = format_monomial(vars, m);
        match mono {
            None => out.push_str(&abs.to_string()),
            Some(ms) => {
                if abs.is_one() {
                    out.push_str(&ms);
                } else {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&ms);
                }
            }
        }
    }
    out
}

fn format_monomial(vars: &[String], m: &Monomial) -> Option<String> {
    let parts: Vec<String> = vars
        .iter()
        .zip(&m.0)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

fn parse_poly(ring: &Ring, vars: &[String], s: &str) -> Result<RingElement> {
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split into signed terms at top-level + and -.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut sign_negative = false;
    let mut seen_any = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if seen_any && !current.trim().is_empty() {
                    terms.push((sign_negative, current.trim().to_string()));
                    current = String::new();
                    sign_negative = ch == '-';
                } else if !seen_any || current.trim().is_empty() {
                    // Leading sign of the first term, or a sign right after
                    // a separator ("+ -3" is rejected below when the term
                    // body turns out empty).
                    if current.trim().is_empty() && !seen_any {
                        sign_negative = ch == '-';
                        seen_any = true;
                    } else {
                        return Err(Error::Parse(format!("misplaced sign in {s:?}")));
                    }
                }
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_any = true;
                }
                current.push(ch);
            }
        }
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("trailing sign in {s:?}")));
    }
    terms.push((sign_negative, current.trim().to_string()));

    let mut acc = ring.zero();
    for (neg, body) in terms {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; vars.len()];
        for factor in body.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in term {body:?}")));
            }
            if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let v: BigInt = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                coeff *= v;
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                exps[idx] = exps[idx]
                    .checked_add(exp)
                    .ok_or_else(|| Error::Bounds("polynomial exponent overflow".into()))?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        let mut map = BTreeMap::new();
        if !coeff.is_zero() {
            map.insert(Monomial(exps), coeff);
        }
        let term = RingElement { repr: Repr::Poly(map) };
        acc = ring.add(&acc, &term)?;
    }
    Ok(acc)
}

impl RingElement {
    /// Largest exponent of any single variable across all monomials.
    /// Zero for non-polynomial elements.
    pub fn max_variable_degree(&self) -> u32 {
        match &self.repr {
            Repr::Poly(map) => map
                .keys()
                .flat_map(|m| m.0.iter().copied())
                .max()
                .unwrap_or(0),
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rings() -> Vec<Ring> {
        vec![
            Ring::integers(),
            Ring::modular_u64(5).unwrap(),
            Ring::modular_u64(7).unwrap(),
            Ring::polynomials(vec!["x", "y"]).unwrap(),
        ]
    }

    #[test]
    fn constants_per_kind() {
        for ring in rings() {
            let (z, o) = ring.constants();
            assert_eq!(z, ring.from_int(0));
            assert_eq!(o, ring.from_int(1));
            assert_ne!(z, o);
        }
    }

    #[test]
    fn worked_examples() {
        let z = Ring::integers();
        assert_eq!(z.add(&z.from_int(2), &z.from_int(3)).unwrap(), z.from_int(5));
        assert_eq!(z.mul(&z.from_int(2), &z.from_int(3)).unwrap(), z.from_int(6));

        let m5 = Ring::modular_u64(5).unwrap();
        assert_eq!(m5.add(&m5.from_int(3), &m5.from_int(4)).unwrap(), m5.from_int(2));
        assert_eq!(m5.mul(&m5.from_int(3), &m5.from_int(4)).unwrap(), m5.from_int(2));

        let p = Ring::polynomials(vec!["x"]).unwrap();
        let x = p.var("x").unwrap();
        let negx = p.neg(&x).unwrap();
        assert_eq!(p.add(&x, &negx).unwrap(), p.zero());
        let one = p.one();
        let xp1 = p.add(&x, &one).unwrap();
        let xm1 = p.sub(&x, &one).unwrap();
        let prod = p.mul(&xp1, &xm1).unwrap();
        let expected = p.sub(&p.mul(&x, &x).unwrap(), &one).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn zero_ring_rejected() {
        assert!(Ring::modular_u64(1).is_err());
        assert!(Ring::modular_u64(0).is_err());
        assert!(Ring::modular_u64(2).is_ok());
    }

    #[test]
    fn bad_variable_names_rejected() {
        assert!(Ring::polynomials(vec![""]).is_err());
        assert!(Ring::polynomials(vec!["x", "x"]).is_err());
        assert!(Ring::polynomials(vec!["2x"]).is_err());
        assert!(Ring::polynomials(vec!["a_1", "b"]).is_ok());
    }

    #[test]
    fn ring_mismatch_detected() {
        let z = Ring::integers();
        let m = Ring::modular_u64(5).unwrap();
        let err = z.add(&z.one(), &m.one()).unwrap_err();
        assert_eq!(err.code(), "ring_mismatch");
    }

    #[test]
    fn modular_agrees_with_integer_reduction() {
        let mut rng = Rng64::new(11);
        let z = Ring::integers();
        for q in [2u64, 5, 97] {
            let m = Ring::modular_u64(q).unwrap();
            for _ in 0..200 {
                let a = rng.range_i64(-1000, 1000);
                let b = rng.range_i64(-1000, 1000);
                let sum_z = z.add(&z.from_int(a), &z.from_int(b)).unwrap();
                let prod_z = z.mul(&z.from_int(a), &z.from_int(b)).unwrap();
                let Repr::Int(sv) = &sum_z.repr else { unreachable!() };
                let Repr::Int(pv) = &prod_z.repr else { unreachable!() };
                assert_eq!(m.add(&m.from_int(a), &m.from_int(b)).unwrap(), m.from_bigint(sv));
                assert_eq!(m.mul(&m.from_int(a), &m.from_int(b)).unwrap(), m.from_bigint(pv));
            }
        }
    }

    #[test]
    fn polynomial_evaluation_is_homomorphism() {
        let ring = Ring::polynomials(vec!["x", "y"]).unwrap();
        let mut rng = Rng64::new(3);
        for _ in 0..100 {
            let p = ring.random_element(&mut rng, 5);
            let q = ring.random_element(&mut rng, 5);
            let r = ring.random_element(&mut rng, 5);
            let combined = ring.add(&ring.mul(&p, &q).unwrap(), &r).unwrap();
            let point = vec![
                BigInt::from(rng.range_i64(-4, 4)),
                BigInt::from(rng.range_i64(-4, 4)),
            ];
            let lhs = ring.eval_poly(&combined, &point).unwrap();
            let rhs = ring.eval_poly(&p, &point).unwrap() * ring.eval_poly(&q, &point).unwrap()
                + ring.eval_poly(&r, &point).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn canonical_printing() {
        let ring = Ring::polynomials(vec!["x", "y"]).unwrap();
        let x = ring.var("x").unwrap();
        let y = ring.var("y").unwrap();
        let three = ring.from_int(3);
        // 3*x^2*y + 1
        let e = ring
            .add(
                &ring.mul(&three, &ring.mul(&ring.mul(&x, &x).unwrap(), &y).unwrap()).unwrap(),
                &ring.one(),
            )
            .unwrap();
        assert_eq!(ring.format_element(&e), "3*x^2*y + 1");
        let m7 = Ring::modular_u64(7).unwrap();
        assert_eq!(m7.format_element(&m7.from_int(-1)), "6 mod 7");
        assert_eq!(ring.format_element(&ring.zero()), "0");
        let minus = ring.sub(&ring.zero(), &x).unwrap();
        assert_eq!(ring.format_element(&minus), "-x");
    }

    #[test]
    fn parse_accepts_printed_forms() {
        let ring = Ring::polynomials(vec!["x", "y"]).unwrap();
        for s in ["3*x^2*y + 1", "x - 2", "-x + y", "0", "7", "x*y", "2*x*x"] {
            let e = ring.parse_element(s).unwrap();
            let printed = ring.format_element(&e);
            let reparsed = ring.parse_element(&printed).unwrap();
            assert_eq!(e, reparsed);
        }
        let m7 = Ring::modular_u64(7).unwrap();
        assert_eq!(m7.parse_element("13").unwrap(), m7.from_int(6));
        assert_eq!(m7.parse_element("6 mod 7").unwrap(), m7.from_int(6));
        assert!(m7.parse_element("6 mod 5").is_err());
        assert!(ring.parse_element("z + 1").is_err());
    }

    proptest! {
        #[test]
        fn ring_axioms_hold(seed_a in any::<u64>(), seed_b in any::<u64>(), seed_c in any::<u64>()) {
            for ring in rings() {
                let mut ra = Rng64::new(seed_a);
                let mut rb = Rng64::new(seed_b);
                let mut rc = Rng64::new(seed_c);
                let a = ring.random_element(&mut ra, 9);
                let b = ring.random_element(&mut rb, 9);
                let c = ring.random_element(&mut rc, 9);
                // Commutativity and associativity.
                prop_assert_eq!(ring.add(&a, &b).unwrap(), ring.add(&b, &a).unwrap());
                prop_assert_eq!(ring.mul(&a, &b).unwrap(), ring.mul(&b, &a).unwrap());
                prop_assert_eq!(
                    ring.add(&ring.add(&a, &b).unwrap(), &c).unwrap(),
                    ring.add(&a, &ring.add(&b, &c).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    ring.mul(&ring.mul(&a, &b).unwrap(), &c).unwrap(),
                    ring.mul(&a, &ring.mul(&b, &c).unwrap()).unwrap()
                );
                // Distributivity.
                prop_assert_eq!(
                    ring.mul(&a, &ring.add(&b, &c).unwrap()).unwrap(),
                    ring.add(&ring.mul(&a, &b).unwrap(), &ring.mul(&a, &c).unwrap()).unwrap()
                );
                // Identities and inverses.
                prop_assert_eq!(ring.add(&a, &ring.zero()).unwrap(), a.clone());
                prop_assert_eq!(ring.mul(&a, &ring.one()).unwrap(), a.clone());
                prop_assert_eq!(ring.add(&a, &ring.neg(&a).unwrap()).unwrap(), ring.zero());
            }
        }

        #[test]
        fn text_round_trip_is_exact(seed in any::<u64>()) {
            for ring in rings() {
                let strategy_seed = seed;
                let mut rng = Rng64::new(strategy_seed);
                let e = ring.random_element(&mut rng, 9);
                let printed = ring.format_element(&e);
                let parsed = ring.parse_element(&printed).unwrap();
                prop_assert_eq!(&parsed, &e);
                prop_assert_eq!(ring.format_element(&parsed), printed);
            }
        }
    }
}
