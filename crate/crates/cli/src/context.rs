//! Algebra spec strings: `weyl:n`, `sympoly:n`, `tensor(a,b)`, and a `@loc=g`
//! suffix for a single-denominator localization.

use npa_core::algebra::{Algebra, AlgebraClass, AlgebraSpec, Element};
use npa_core::tensor::TensorAlgebraSpec;

use crate::expr::parse_element;

#[derive(Clone, Debug)]
pub struct TensorParts {
    pub spec: TensorAlgebraSpec,
    pub left: Context,
    pub right: Context,
}

#[derive(Clone, Debug)]
pub struct Context {
    /// Canonical spec string.
    pub name: String,
    pub alg: Algebra,
    pub tensor: Option<Box<TensorParts>>,
    /// Denominator base of the localization.
    pub loc: Option<Element>,
}

pub fn parse_algebra(src: &str) -> Result<Context, String> {
    let src = src.trim();
    if let Some((base, g)) = src.split_once("@loc=") {
        let mut ctx = parse_algebra(base)?;
        if ctx.loc.is_some() || ctx.tensor.is_some() {
            return Err(format!("cannot localize {}", ctx.name));
        }
        if ctx.alg.class() != AlgebraClass::Class1 {
            return Err(format!("localization needs a commutative algebra, not {}", ctx.name));
        }
        let g = parse_element(g, &ctx).map_err(|e| format!("in the localized element: {e}"))?;
        if g.degree().finite().is_none_or(|d| d == 0) {
            return Err("the localized element must be nonconstant".into());
        }
        ctx.name = format!("{}@loc={g}", ctx.name);
        ctx.loc = Some(g);
        return Ok(ctx);
    }
    if let Some(inner) = src.strip_prefix("tensor(").and_then(|s| s.strip_suffix(')')) {
        let split = top_level_comma(inner).ok_or_else(|| format!("expected tensor(a,b), got {src}"))?;
        let left = parse_algebra(&inner[..split])?;
        let right = parse_algebra(&inner[split + 1..])?;
        if left.loc.is_some() || right.loc.is_some() {
            return Err("tensor factors cannot be localized".into());
        }
        let spec = TensorAlgebraSpec::new(&left.alg, &right.alg).map_err(|e| e.to_string())?;
        return Ok(Context {
            name: format!("tensor({},{})", left.name, right.name),
            alg: spec.combined().clone(),
            tensor: Some(Box::new(TensorParts { spec, left, right })),
            loc: None,
        });
    }
    let (kind, n) = src
        .split_once(':')
        .ok_or_else(|| format!("unknown algebra '{src}' (try weyl:1, sympoly:1, tensor(weyl:1,weyl:1))"))?;
    let n: usize = n
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("bad number of generator pairs in '{src}'"))?;
    let alg = match kind.trim() {
        "weyl" => AlgebraSpec::weyl(n),
        "sympoly" => AlgebraSpec::symplectic(n),
        other => return Err(format!("unknown algebra family '{other}'")),
    };
    Ok(Context {
        name: format!("{}:{n}", kind.trim()),
        alg,
        tensor: None,
        loc: None,
    })
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}
