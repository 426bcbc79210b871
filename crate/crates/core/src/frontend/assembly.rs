//! Assembly trees: models placed by affine maps, read from a small
//! s-expression file.
//!
//! ```text
//! ; three cubes
//! (cuboid 1 1 1)
//! (t .3 .4 .25) (r pi/5 0 0) (r 0 0 pi/12)
//! (name B (cuboid 1 1 1))
//! (group (t 2 0 0) (sphere 8 4 0.5))
//! ```
//!
//! The top level is an implicit group. Within a group an affine node
//! changes the placement of every later sibling; a nested group starts from
//! its parent's current placement and never changes it. Models are
//! `cuboid`, `cylinder`, `sphere`, `lar "path"` and `obj "path"`; maps are
//! `t`, `r` and `s`. Unnamed models are called `X1`, `X2`, ... by their
//! position in the traversal.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::path::Path;

use super::io::import_obj_model;
use super::primitives::{cuboid_grid, cylinder, sphere};
use crate::error::{Error, Result};
use crate::geometry::AffineMap;
use crate::model::LarModel;

#[derive(Clone, Debug)]
pub enum Assembly {
    Model { name: Option<String>, model: LarModel },
    Affine(AffineMap),
    Group(Vec<Assembly>),
}

/// Depth-first placement of every model.
pub fn evaluate_assembly(a: &Assembly) -> Result<Vec<(String, LarModel)>> {
    fn walk(
        node: &Assembly,
        current: &mut AffineMap,
        out: &mut Vec<(Option<String>, LarModel)>,
    ) -> Result<()> {
        match node {
            Assembly::Model { name, model } => out.push((name.clone(), model.transformed(current))),
            Assembly::Affine(m) => {
                m.validate()?;
                *current = current.then_after(m);
            }
            Assembly::Group(children) => {
                let mut local = *current;
                for c in children {
                    walk(c, &mut local, out)?;
                }
            }
        }
        Ok(())
    }
    let mut placed = Vec::new();
    walk(a, &mut AffineMap::identity(), &mut placed)?;
    let mut seen = HashSet::new();
    placed
        .into_iter()
        .enumerate()
        .map(|(k, (name, m))| {
            let name = name.unwrap_or_else(|| format!("X{}", k + 1));
            if !seen.insert(name.clone()) {
                return Err(Error::invalid(format!("solid name `{name}` is used twice")));
            }
            Ok((name, m))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(usize, String),
    Str(usize, String),
    List(usize, Vec<Sexp>),
}

impl Sexp {
    fn offset(&self) -> usize {
        match self {
            Sexp::Atom(o, _) | Sexp::Str(o, _) | Sexp::List(o, _) => *o,
        }
    }
}

fn perr<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, message: message.into() })
}

fn read_sexps(text: &str) -> Result<Vec<Sexp>> {
    let bytes = text.as_bytes();
    let mut stack: Vec<(usize, Vec<Sexp>)> = vec![(0, Vec::new())];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'(' => stack.push((i, Vec::new())),
            b')' => {
                if stack.len() == 1 {
                    return perr(i, "unbalanced parenthesis");
                }
                let (o, items) = stack.pop().expect("non-empty");
                stack.last_mut().expect("root").1.push(Sexp::List(o, items));
            }
            b'"' => {
                let start = i;
                let end = text[i + 1..]
                    .find('"')
                    .ok_or_else(|| Error::Parse { offset: start, message: "unterminated string".into() })?;
                let s = text[i + 1..i + 1 + end].to_string();
                stack.last_mut().expect("root").1.push(Sexp::Str(start, s));
                i += end + 2;
                continue;
            }
            c if c.is_ascii_whitespace() || c == b',' => {}
            _ => {
                let start = i;
                while i < bytes.len() && !b"();\", \t\r\n".contains(&bytes[i]) {
                    i += 1;
                }
                stack.last_mut().expect("root").1.push(Sexp::Atom(start, text[start..i].to_string()));
                continue;
            }
        }
        i += 1;
    }
    if stack.len() > 1 {
        return perr(stack.last().expect("open").0, "unbalanced parenthesis");
    }
    Ok(stack.pop().expect("root").1)
}

/// Reads `1.5`, `-2`, `pi`, `pi/5`, `2pi/3`, `-pi/12` and `3*pi/4`.
fn number(s: &Sexp) -> Result<f64> {
    let Sexp::Atom(o, t) = s else {
        return perr(s.offset(), "expected a number");
    };
    let bad = || Error::Parse { offset: *o, message: format!("bad number `{t}`") };
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.as_str()),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let num = if let Some(k) = num.strip_suffix("pi") {
        let k = k.strip_suffix('*').unwrap_or(k);
        if k.is_empty() {
            PI
        } else {
            k.parse::<f64>().map_err(|_| bad())? * PI
        }
    } else {
        num.parse::<f64>().map_err(|_| bad())?
    };
    let mut x = match den {
        Some(d) => num / d.parse::<f64>().map_err(|_| bad())?,
        None => num,
    };
    if neg {
        x = -x;
    }
    if !x.is_finite() {
        return Err(bad());
    }
    Ok(x)
}

fn count(s: &Sexp) -> Result<usize> {
    let x = number(s)?;
    if x < 0.0 || x.fract() != 0.0 {
        return perr(s.offset(), "expected a non-negative integer");
    }
    Ok(x as usize)
}

fn args<'a>(o: usize, head: &str, rest: &'a [Sexp], n: usize) -> Result<&'a [Sexp]> {
    if rest.len() != n {
        return perr(o, format!("`{head}` takes {n} arguments, got {}", rest.len()));
    }
    Ok(rest)
}

fn node(s: &Sexp, base: Option<&Path>) -> Result<Assembly> {
    let Sexp::List(o, items) = s else {
        return perr(s.offset(), "expected a parenthesized node");
    };
    let o = *o;
    let Some(Sexp::Atom(_, head)) = items.first() else {
        return perr(o, "expected a node name");
    };
    let rest = &items[1..];
    let xyz = |rest: &[Sexp]| -> Result<[f64; 3]> {
        let a = args(o, head, rest, 3)?;
        Ok([number(&a[0])?, number(&a[1])?, number(&a[2])?])
    };
    let path = |rest: &[Sexp]| -> Result<std::path::PathBuf> {
        match args(o, head, rest, 1)? {
            [Sexp::Str(_, p)] => Ok(base.map_or_else(|| p.into(), |b| b.join(p))),
            _ => perr(o, format!("`{head}` takes a quoted path")),
        }
    };
    let model = |m: LarModel| Ok(Assembly::Model { name: None, model: m });
    match head.as_str() {
        "t" => {
            let [x, y, z] = xyz(rest)?;
            Ok(Assembly::Affine(AffineMap::translation(x, y, z)))
        }
        "s" => {
            let [x, y, z] = xyz(rest)?;
            Ok(Assembly::Affine(AffineMap::scaling(x, y, z)))
        }
        "r" => {
            let [x, y, z] = xyz(rest)?;
            Ok(Assembly::Affine(AffineMap::rotation(x, y, z)))
        }
        "group" => Ok(Assembly::Group(rest.iter().map(|c| node(c, base)).collect::<Result<_>>()?)),
        "name" => match args(o, head, rest, 2)? {
            [Sexp::Atom(_, n), inner] => match node(inner, base)? {
                Assembly::Model { model, .. } => Ok(Assembly::Model { name: Some(n.clone()), model }),
                _ => perr(inner.offset(), "only models can be named"),
            },
            _ => perr(o, "expected `(name NAME model)`"),
        },
        "cuboid" => {
            let a = args(o, head, rest, 3)?;
            model(cuboid_grid([count(&a[0])?, count(&a[1])?, count(&a[2])?])?)
        }
        "cylinder" => {
            let a = args(o, head, rest, 4)?;
            model(cylinder(count(&a[0])?, number(&a[1])?, number(&a[2])?, count(&a[3])?)?)
        }
        "sphere" => {
            let a = args(o, head, rest, 3)?;
            model(sphere(count(&a[0])?, count(&a[1])?, number(&a[2])?)?)
        }
        "lar" => model(LarModel::parse_lar(&std::fs::read_to_string(path(rest)?)?)?),
        "obj" => model(import_obj_model(&std::fs::read_to_string(path(rest)?)?)?),
        _ => perr(o, format!("unknown node `{head}`")),
    }
}

/// Parses an assembly; relative paths resolve against `base`.
pub fn parse_assembly(text: &str, base: Option<&Path>) -> Result<Assembly> {
    Ok(Assembly::Group(read_sexps(text)?.iter().map(|s| node(s, base)).collect::<Result<_>>()?))
}
