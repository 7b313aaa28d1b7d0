use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{FiniteField, Field, Fq, GfError};

/// A field-tagged element for API boundaries where operands may come from
/// different fields. Inner kernels use bare [`Fq`] values instead.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Fq,
}

impl FieldElement {
    pub fn new(field: Arc<Field>, value: Fq) -> Result<Self, GfError> {
        if value.0 >= field.q() {
            return Err(GfError::BadCoordinates(vec![value.0]));
        }
        Ok(FieldElement { field, value })
    }

    pub fn from_coords(field: Arc<Field>, coords: &[u64]) -> Result<Self, GfError> {
        let value = field.from_coords(coords)?;
        Ok(FieldElement { field, value })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn value(&self) -> Fq {
        self.value
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords().iter().map(u64::to_string).collect();
        write!(f, "{}", coords.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow(BigInt),
}

impl ArithOp {
    fn name(&self) -> &'static str {
        match self {
            ArithOp::Add => "add",
            ArithOp::Sub => "sub",
            ArithOp::Mul => "mul",
            ArithOp::Neg => "neg",
            ArithOp::Inv => "inv",
            ArithOp::Pow(_) => "pow",
        }
    }

    fn arity(&self) -> usize {
        match self {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            _ => 1,
        }
    }
}

/// Checked arithmetic over tagged elements.
pub fn field_arith(op: &ArithOp, operands: &[&FieldElement]) -> Result<FieldElement, GfError> {
    if operands.len() != op.arity() {
        return Err(GfError::Arity { op: op.name(), expected: op.arity(), got: operands.len() });
    }
    let field = operands[0].field.clone();
    if operands.iter().any(|o| *o.field != *field) {
        return Err(GfError::FieldMismatch);
    }
    let a = operands[0].value;
    let value = match op {
        ArithOp::Add => field.add(a, operands[1].value),
        ArithOp::Sub => field.sub(a, operands[1].value),
        ArithOp::Mul => field.mul(a, operands[1].value),
        ArithOp::Neg => field.neg(a),
        ArithOp::Inv => field.try_inv(a)?,
        ArithOp::Pow(e) => field.pow_int(a, e)?,
    };
    Ok(FieldElement { field, value })
}
