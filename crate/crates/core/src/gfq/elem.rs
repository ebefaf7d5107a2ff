use std::fmt;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// A field element bundled with the field it lives in.
#[derive(Clone)]
pub struct GfElem {
    field: Field,
    value: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl GfElem {
    pub fn new(field: &Field, value: Elem) -> Self {
        assert!(value.0 < field.q(), "element index out of range");
        GfElem { field: field.clone(), value }
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        GfElem { field: field.clone(), value: field.from_int(n) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &GfElem) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn arith(&self, other: &GfElem, op: GfOp) -> Result<GfElem> {
        self.check(other)?;
        let f = &self.field;
        let value = match op {
            GfOp::Add => f.add(self.value, other.value),
            GfOp::Sub => f.sub(self.value, other.value),
            GfOp::Mul => f.mul(self.value, other.value),
            GfOp::Div => f.div(self.value, other.value)?,
        };
        Ok(GfElem { field: f.clone(), value })
    }

    /// `self^e`; `0^0 = 1`.
    pub fn pow(&self, e: u128) -> GfElem {
        GfElem { field: self.field.clone(), value: self.field.pow(self.value, e) }
    }

    pub fn frobenius(&self, j: i64) -> GfElem {
        GfElem { field: self.field.clone(), value: self.field.frobenius(self.value, j) }
    }

    pub fn inv(&self) -> Result<GfElem> {
        Ok(GfElem { field: self.field.clone(), value: self.field.inv(self.value)? })
    }
}

impl PartialEq for GfElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.same(&other.field)
    }
}

impl Eq for GfElem {}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfElem({} in {})", self.field.format_coords(self.value), self.field)
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_expr(self.value))
    }
}

pub fn gf_arith(a: &GfElem, b: &GfElem, op: GfOp) -> Result<GfElem> {
    a.arith(b, op)
}

pub fn gf_pow(a: &GfElem, e: u128) -> GfElem {
    a.pow(e)
}

pub fn gf_frobenius(a: &GfElem, j: i64) -> GfElem {
    a.frobenius(j)
}
