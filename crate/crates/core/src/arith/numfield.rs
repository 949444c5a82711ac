//! Number fields `Q[T]/(m)` embedded in the complex numbers.
//!
//! A field remembers which root of its modulus the generator maps to, so every
//! element has a definite value as an [`AlgebraicNumber`].

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::{AlgebraicLiteral, AlgebraicNumber};
use super::factor::factor_over_q;
use super::field::{Field, Rationals};
use super::interval::Rect;
use super::poly::{Poly, QPoly};
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Element of a number field: a polynomial in the generator of degree below the field degree.
pub type FieldElement = QPoly;

#[derive(Clone)]
pub struct NumberField {
    inner: Arc<Inner>,
}

struct Inner {
    modulus: QPoly,
    label: String,
    generator: AlgebraicNumber,
}

/// JSON form: `{"modulus": [...], "label": "...", "root": <optional algebraic literal>}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldLiteral {
    pub modulus: Vec<String>,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<AlgebraicLiteral>,
}

/// A field element in JSON: a rational string such as `"-3/2"`, or the list
/// of power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemLiteral {
    Rational(String),
    Coords(Vec<String>),
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner)
            || (self.inner.modulus == o.inner.modulus && self.inner.generator == o.inner.generator)
    }
}
impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = Q[a]/({})", self.inner.label, self.inner.modulus.render(&Rationals, "a"))
    }
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField {
            inner: Arc::new(Inner {
                modulus: QPoly::from_ints(&[0, 1]),
                label: "Q".into(),
                generator: AlgebraicNumber::zero(),
            }),
        }
    }

    /// The field generated by an algebraic number; its generator maps to that number.
    pub fn from_generator(generator: AlgebraicNumber, label: impl Into<String>) -> Self {
        if generator.degree() == 1 {
            let mut f = Self::rationals();
            Arc::get_mut(&mut f.inner).unwrap().label = label.into();
            return f;
        }
        NumberField {
            inner: Arc::new(Inner { modulus: generator.minpoly().clone(), label: label.into(), generator }),
        }
    }

    /// Validates irreducibility of `modulus`; the generator defaults to root label 0.
    pub fn new(modulus: &QPoly, label: impl Into<String>, root: Option<&Rect>, cap: usize) -> Result<Self> {
        if modulus.deg() == 0 {
            return Err(Error::Malformed("field modulus must have positive degree".into()));
        }
        let fz = factor_over_q(modulus, cap)?;
        if fz.factors.len() != 1 || fz.factors[0].1 != 1 {
            return Err(Error::Reducible(modulus.to_string_q()));
        }
        let m = fz.factors[0].0.clone();
        let generator = match root {
            Some(r) => AlgebraicNumber::from_region(&m, r, cap)?,
            None => AlgebraicNumber::from_root(m, 0)?,
        };
        Ok(Self::from_generator(generator, label))
    }

    pub fn from_literal(lit: &FieldLiteral, cap: usize) -> Result<Self> {
        let coeffs = lit.modulus.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let m = QPoly::from_rationals(coeffs);
        let label = lit.label.clone().unwrap_or_else(|| format!("Q[a]/({})", m.render(&Rationals, "a")));
        match &lit.root {
            None => Self::new(&m, label, None, cap),
            Some(r) => {
                let g = AlgebraicNumber::from_literal(r, cap)?;
                let fz = factor_over_q(&m, cap)?;
                if fz.factors.len() != 1 || fz.factors[0].1 != 1 {
                    return Err(Error::Reducible(m.to_string_q()));
                }
                if &fz.factors[0].0 != g.minpoly() {
                    return Err(Error::Malformed("field root is not a root of the modulus".into()));
                }
                Ok(Self::from_generator(g, label))
            }
        }
    }

    pub fn to_literal(&self) -> FieldLiteral {
        FieldLiteral {
            modulus: self.inner.modulus.coeffs().iter().map(format_rational).collect(),
            label: Some(self.inner.label.clone()),
            root: (self.degree() > 1).then(|| self.inner.generator.to_literal()),
        }
    }

    pub fn modulus(&self) -> &QPoly {
        &self.inner.modulus
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        NumberField {
            inner: Arc::new(Inner {
                modulus: self.inner.modulus.clone(),
                label: label.into(),
                generator: self.inner.generator.clone(),
            }),
        }
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.inner.generator
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    /// The generator as a field element.
    pub fn gen_elem(&self) -> FieldElement {
        if self.is_rationals() {
            QPoly::zero()
        } else {
            QPoly::x(&Rationals)
        }
    }

    pub fn reduce(&self, p: &QPoly) -> FieldElement {
        if self.is_rationals() {
            return QPoly::constant(&Rationals, p.eval(&Rationals, &Rational::zero()));
        }
        p.rem(&Rationals, &self.inner.modulus)
    }

    pub fn as_rational(&self, e: &FieldElement) -> Option<Rational> {
        (e.deg() == 0).then(|| e.coeff(&Rationals, 0))
    }

    /// Coordinates over the power basis, length equal to the degree.
    pub fn coords(&self, e: &FieldElement) -> Vec<Rational> {
        (0..self.degree()).map(|i| e.coeff(&Rationals, i)).collect()
    }

    pub fn from_coords(&self, c: &[Rational]) -> FieldElement {
        QPoly::from_rationals(c.to_vec())
    }

    /// Matrix of multiplication by `e` on the power basis (columns are images).
    pub fn mul_matrix(&self, e: &FieldElement) -> Matrix<Rational> {
        let d = self.degree();
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let b = QPoly::monomial(&Rationals, Rational::one(), i);
                self.coords(&self.mul(e, &b))
            })
            .collect();
        Matrix::from_cols(&cols, d)
    }

    /// Minimal polynomial over Q of an element, by linear dependence of its powers.
    pub fn minpoly_of(&self, e: &FieldElement) -> QPoly {
        let k = Rationals;
        let d = self.degree();
        let mut powers = vec![self.coords(&self.one())];
        let mut cur = self.one();
        loop {
            cur = self.mul(&cur, e);
            let v = self.coords(&cur);
            let m = Matrix::from_cols(&powers, d);
            if let Some(x) = m.solve(&k, &v) {
                let mut c: Vec<Rational> = x.into_iter().map(|a| -a).collect();
                c.push(Rational::one());
                return QPoly::from_rationals(c);
            }
            powers.push(v);
        }
    }

    /// Interval enclosure of an element's complex value.
    pub fn enclose(&self, e: &FieldElement, bits: u32) -> Rect {
        if let Some(q) = self.as_rational(e) {
            return Rect::real(q);
        }
        let g = self.inner.generator.rect(bits + 8 + 2 * self.degree() as u32);
        Rect::eval_poly(e, &g, bits + 8 + 2 * self.degree() as u32)
    }

    /// Value of an element as an algebraic number under the field's embedding.
    pub fn to_algebraic(&self, e: &FieldElement) -> AlgebraicNumber {
        if let Some(q) = self.as_rational(e) {
            return AlgebraicNumber::from_rational(q);
        }
        if e == &QPoly::x(&Rationals) {
            return self.inner.generator.clone();
        }
        let m = self.minpoly_of(e);
        let me = self.clone();
        let e = e.clone();
        AlgebraicNumber::identify(&m, usize::MAX, move |b| Some(me.enclose(&e, b)))
            .expect("minimal polynomial of a field element is exact")
    }

    /// Whether a number lies in this field, and if so its representation.
    pub fn express(&self, a: &AlgebraicNumber, cap: usize) -> Result<Option<FieldElement>> {
        if let Some(q) = a.as_rational() {
            return Ok(Some(QPoly::constant(&Rationals, q)));
        }
        if a == &self.inner.generator {
            return Ok(Some(self.gen_elem()));
        }
        if !self.degree().is_multiple_of(a.degree()) {
            return Ok(None);
        }
        let mp = a.minpoly().map(self, |c| self.from_rational(c));
        for (f, _) in super::trager::factor_over_field(self, &mp, cap)? {
            if f.deg() == 1 {
                let root = self.neg(&f.coeff(self, 0));
                if &self.to_algebraic(&root) == a {
                    return Ok(Some(root));
                }
            }
        }
        Ok(None)
    }

    /// Image of this field's generator in `target`, if this field embeds compatibly.
    pub fn embedding_into(&self, target: &NumberField, cap: usize) -> Result<Option<FieldElement>> {
        if self.is_rationals() {
            return Ok(Some(QPoly::zero()));
        }
        target.express(&self.inner.generator, cap)
    }

    pub fn parse_elem(&self, lit: &ElemLiteral) -> Result<FieldElement> {
        match lit {
            ElemLiteral::Rational(s) => Ok(self.from_rational(&parse_rational(s)?)),
            ElemLiteral::Coords(c) => {
                if c.len() > self.degree() {
                    return Err(Error::Malformed(format!("{} coordinates for a field of degree {}", c.len(), self.degree())));
                }
                let q = c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                Ok(self.from_coords(&q))
            }
        }
    }

    pub fn elem_literal(&self, e: &FieldElement) -> ElemLiteral {
        match self.as_rational(e) {
            Some(q) => ElemLiteral::Rational(format_rational(&q)),
            None => ElemLiteral::Coords(self.coords(e).iter().map(format_rational).collect()),
        }
    }

    pub fn render_elem(&self, e: &FieldElement) -> String {
        e.render(&Rationals, "a")
    }
}

/// Applies an embedding `A -> B` given by the image of `A`'s generator.
pub fn apply_embedding(a: &NumberField, b: &NumberField, image: &FieldElement, e: &FieldElement) -> FieldElement {
    let k = Rationals;
    if a.is_rationals() {
        return QPoly::constant(&k, e.coeff(&k, 0));
    }
    let mut acc = QPoly::zero();
    for c in e.coeffs().iter().rev() {
        acc = b.add(&b.mul(&acc, image), &b.from_rational(c));
    }
    acc
}

/// A field map `source -> target`, determined by the image of the source generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldEmbedding {
    pub source: NumberField,
    pub target: NumberField,
    pub image: FieldElement,
}

impl FieldEmbedding {
    /// The embedding compatible with both fields' embeddings in C.
    pub fn new(source: &NumberField, target: &NumberField, cap: usize) -> Result<Self> {
        let image = source.embedding_into(target, cap)?.ok_or_else(|| {
            Error::Embedding(format!("{} does not embed in {}", source.label(), target.label()))
        })?;
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), image })
    }

    pub fn identity(k: &NumberField) -> Self {
        FieldEmbedding { source: k.clone(), target: k.clone(), image: k.gen_elem() }
    }

    pub fn apply(&self, e: &FieldElement) -> FieldElement {
        apply_embedding(&self.source, &self.target, &self.image, e)
    }

    /// The source modulus vanishes at the image.
    pub fn verify(&self) -> bool {
        if self.source.is_rationals() {
            return true;
        }
        let m = self.source.modulus().map(&self.target, |c| self.target.from_rational(c));
        m.eval(&self.target, &self.image).is_zero()
    }

    pub fn relative_degree(&self) -> usize {
        self.target.degree() / self.source.degree()
    }
}

impl Field for NumberField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        QPoly::zero()
    }
    fn one(&self) -> FieldElement {
        QPoly::one(&Rationals)
    }
    fn from_rational(&self, q: &Rational) -> FieldElement {
        QPoly::constant(&Rationals, q.clone())
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.add(&Rationals, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.sub(&Rationals, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.deg() == 0 || b.deg() == 0 {
            return a.mul(&Rationals, b);
        }
        a.mul(&Rationals, b).rem(&Rationals, &self.inner.modulus)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.neg(&Rationals)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if a.deg() == 0 {
            return Some(QPoly::constant(&Rationals, a.coeffs()[0].recip()));
        }
        let (g, s, _) = a.xgcd(&Rationals, &self.inner.modulus);
        debug_assert!(g.is_one(&Rationals));
        Some(s.rem(&Rationals, &self.inner.modulus))
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn degree(&self) -> usize {
        self.inner.modulus.deg()
    }
    fn render(&self, a: &FieldElement) -> String {
        self.render_elem(a)
    }
}

/// Polynomial over a number field.
pub type KPoly = Poly<FieldElement>;
