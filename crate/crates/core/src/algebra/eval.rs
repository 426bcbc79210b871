use std::collections::HashMap;

use super::{BitChain, BoolMatrix};
use crate::error::{Error, Result};
use crate::frontend::CsgExpr;
use crate::par::{self, Parallelism};
use crate::sparse::SparseSignedMatrix;

pub type Bindings = HashMap<String, BitChain>;

/// Names the solid columns of a classification matrix.
pub fn bind(matrix: &BoolMatrix, names: &[String]) -> Result<Bindings> {
    if names.len() != matrix.nsolids() {
        return Err(Error::dim(format!("{} names for {} solids", names.len(), matrix.nsolids())));
    }
    Ok(names.iter().cloned().zip((0..names.len()).map(|j| matrix.solid(j))).collect())
}

fn check(expr: &CsgExpr, columns: &Bindings) -> Result<usize> {
    let mut len = None;
    for name in expr.names() {
        let Some(c) = columns.get(&name) else {
            let mut bound: Vec<String> = columns.keys().cloned().collect();
            bound.sort();
            return Err(Error::Unbound { name, bound });
        };
        match len {
            None => len = Some(c.len()),
            Some(l) if l != c.len() => {
                return Err(Error::dim(format!("`{name}` has length {}, expected {l}", c.len())))
            }
            _ => {}
        }
    }
    len.ok_or_else(|| Error::invalid("expression has no operands"))
}

fn eval_word(expr: &CsgExpr, columns: &Bindings, w: usize) -> u64 {
    let fold = |args: &[CsgExpr], f: fn(u64, u64) -> u64| {
        let mut it = args.iter().map(|a| eval_word(a, columns, w));
        let first = it.next().unwrap_or(0);
        it.fold(first, f)
    };
    match expr {
        CsgExpr::Leaf(n) => columns[n].words()[w],
        CsgExpr::Union(a) => fold(a, |x, y| x | y),
        CsgExpr::Intersect(a) => fold(a, |x, y| x & y),
        CsgExpr::Diff(a) => fold(a, |x, y| x & !y),
        CsgExpr::Complement(x) => !eval_word(x, columns, w),
    }
}

/// Evaluates a formula over bounded atoms; complement is taken relative to
/// the bounded atoms.
pub fn eval_bitwise(expr: &CsgExpr, columns: &Bindings, par: Parallelism) -> Result<BitChain> {
    let len = check(expr, columns)?;
    let words = par::map_range(len.div_ceil(64), par, |w| eval_word(expr, columns, w));
    Ok(BitChain::from_words(words, len))
}

/// Whether the unbounded cell belongs to the result, with complement taken
/// relative to the whole space.
pub fn contains_outer(expr: &CsgExpr) -> bool {
    match expr {
        CsgExpr::Leaf(_) => false,
        CsgExpr::Union(a) => a.iter().any(contains_outer),
        CsgExpr::Intersect(a) => a.iter().all(contains_outer),
        CsgExpr::Diff(a) => contains_outer(&a[0]) && !a[1..].iter().any(contains_outer),
        CsgExpr::Complement(x) => !contains_outer(x),
    }
}

/// An evaluated formula over the whole space: bounded atoms plus a flag for
/// the outer cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolidChain {
    pub atoms: BitChain,
    pub outer: bool,
}

impl SolidChain {
    pub fn evaluate(expr: &CsgExpr, columns: &Bindings, par: Parallelism) -> Result<Self> {
        Ok(SolidChain { atoms: eval_bitwise(expr, columns, par)?, outer: contains_outer(expr) })
    }

    /// Signed boundary faces; unbounded results have none.
    pub fn boundary(&self, d3: &SparseSignedMatrix) -> Result<Vec<i32>> {
        if self.outer {
            return Err(Error::UnboundedResult);
        }
        boundary_chain(&self.atoms, d3)
    }
}

/// `d3 · result`.
pub fn boundary_chain(result: &BitChain, d3: &SparseSignedMatrix) -> Result<Vec<i32>> {
    d3.mul_vec(&result.to_i32())
}
