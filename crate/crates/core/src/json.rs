//! JSON encoding of formulas as nested arrays:
//! `["or", x, y]`, `["and", x, y]`, `["chor", x, y]`, `["chand", x, y]`,
//! `["atom", "p"]`, `["natom", "P"]`, `["top"]`, `["bot"]`.

use std::fmt;

use serde::de::{self, IgnoredAny, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cl2::Cl2Formula;
use crate::formula::{Atom, Formula};

fn leaf<S: Serializer>(s: S, atom: &Atom, negated: bool) -> Result<S::Ok, S::Error> {
    let (tag, name) = match (atom, negated) {
        (Atom::Top, false) | (Atom::Bottom, true) => ("top", None),
        (Atom::Bottom, false) | (Atom::Top, true) => ("bot", None),
        (a, false) => ("atom", a.name()),
        (a, true) => ("natom", a.name()),
    };
    let mut seq = s.serialize_seq(Some(1 + name.is_some() as usize))?;
    seq.serialize_element(tag)?;
    if let Some(n) = name {
        seq.serialize_element(n)?;
    }
    seq.end()
}

fn node<S: Serializer, T: Serialize>(s: S, tag: &str, l: &T, r: &T) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(3))?;
    seq.serialize_element(tag)?;
    seq.serialize_element(l)?;
    seq.serialize_element(r)?;
    seq.end()
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Formula::Atom(a) => leaf(s, a, false),
            Formula::NegAtom(a) => leaf(s, a, true),
            Formula::And(l, r) => node(s, "and", l, r),
            Formula::Or(l, r) => node(s, "or", l, r),
        }
    }
}

impl Serialize for Cl2Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cl2Formula::Atom(a) => leaf(s, a, false),
            Cl2Formula::NegAtom(a) => leaf(s, a, true),
            Cl2Formula::And(l, r) => node(s, "and", l, r),
            Cl2Formula::Or(l, r) => node(s, "or", l, r),
            Cl2Formula::ChAnd(l, r) => node(s, "chand", l, r),
            Cl2Formula::ChOr(l, r) => node(s, "chor", l, r),
        }
    }
}

struct FormulaVisitor;

impl<'de> Visitor<'de> for FormulaVisitor {
    type Value = Cl2Formula;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a formula array such as [\"or\", x, y] or [\"atom\", \"p\"]")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Cl2Formula, A::Error> {
        let tag: String = seq
            .next_element()?
            .ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let mut operand = |k: usize| -> Result<Cl2Formula, A::Error> {
            seq.next_element()?
                .ok_or_else(|| de::Error::invalid_length(k, &FormulaVisitor))
        };
        let out = match tag.as_str() {
            "top" => Cl2Formula::Atom(Atom::Top),
            "bot" => Cl2Formula::Atom(Atom::Bottom),
            "atom" | "natom" => {
                let name: String = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let atom = Atom::named(&name).ok_or_else(|| {
                    de::Error::invalid_value(de::Unexpected::Str(&name), &"an atom name")
                })?;
                if tag == "atom" {
                    Cl2Formula::Atom(atom)
                } else {
                    Cl2Formula::NegAtom(atom)
                }
            }
            "and" | "or" | "chand" | "chor" => {
                let l = Box::new(operand(1)?);
                let r = Box::new(operand(2)?);
                match tag.as_str() {
                    "and" => Cl2Formula::And(l, r),
                    "or" => Cl2Formula::Or(l, r),
                    "chand" => Cl2Formula::ChAnd(l, r),
                    _ => Cl2Formula::ChOr(l, r),
                }
            }
            other => {
                return Err(de::Error::unknown_variant(
                    other,
                    &["atom", "natom", "top", "bot", "and", "or", "chand", "chor"],
                ))
            }
        };
        if seq.next_element::<IgnoredAny>()?.is_some() {
            return Err(de::Error::custom(format!("too many elements in `{tag}` node")));
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for Cl2Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Cl2Formula, D::Error> {
        d.deserialize_seq(FormulaVisitor)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        Cl2Formula::deserialize(d)?
            .to_cl6()
            .ok_or_else(|| de::Error::custom("choice connective in a CL6 formula"))
    }
}
