//! Solutions named on the command line: a file in the table format, or a
//! constructor expression such as `canonical(3,1,1)`.
//!
//! | expression | table |
//! |---|---|
//! | `identity(n)` | `s(x,y) = (x,y)` |
//! | `flip(n)` | `s(x,y) = (y,x)`, not a solution for `n > 1` |
//! | `irretractable(r)` | `t(x,y) = (x, x+y)` on `C2^r` |
//! | `canonical(x,a,g)` | representative of the class `(x,a,g)` |
//! | `group(G)` | `s(x,y) = (xy, y)` on `G` |
//! | `cycle([4,1,2,3],G)` | the `E × G` family, `σ` in one-line notation on `1..n` |
//! | `ext(x,a[,sigma-file])` | `Ext_X^σ(A, t_A)` |
//!
//! Groups are `trivial`, `c<n>`, `e<r>` (`C2^r`), `s<k>`, or products such as `c2xc2`.

use std::path::Path;

use pentagon_core::{
    canonical_solution, cycle_solution, ext_solution, group_solution, irretractable_solution, parse_sigma,
    parse_solution, Bijection, Decomposition, GroupTable, SolutionTable,
};

use crate::CliError;

/// Carriers larger than this are refused when built from expressions.
pub const MAX_EXPRESSION_SIZE: usize = 4096;

pub fn load_solution(arg: &str) -> Result<SolutionTable, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return parse_solution(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")));
    }
    if arg.contains('(') {
        return parse_expression(arg);
    }
    Err(CliError::Input(format!("`{arg}` is neither a readable file nor a constructor expression")))
}

fn bad(expr: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("bad expression `{expr}`: {why}"))
}

/// Splits `name(a, b, ...)` at top-level commas.
fn split_call(expr: &str) -> Result<(&str, Vec<&str>), CliError> {
    let expr_t = expr.trim();
    let open = expr_t.find('(').ok_or_else(|| bad(expr, "missing `(`"))?;
    if !expr_t.ends_with(')') {
        return Err(bad(expr, "missing closing `)`"));
    }
    let name = expr_t[..open].trim();
    let inner = &expr_t[open + 1..expr_t.len() - 1];
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(bad(expr, "unbalanced brackets"));
        }
    }
    if depth != 0 {
        return Err(bad(expr, "unbalanced brackets"));
    }
    if !inner.trim().is_empty() {
        args.push(inner[start..].trim());
    }
    Ok((name, args))
}

fn number<T: std::str::FromStr>(expr: &str, arg: &str) -> Result<T, CliError> {
    arg.parse().map_err(|_| bad(expr, format!("`{arg}` is not a valid number")))
}

fn arity(expr: &str, args: &[&str], allowed: &[usize]) -> Result<(), CliError> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(bad(expr, format!("expected {allowed:?} arguments, found {}", args.len())))
    }
}

fn check_size(expr: &str, size: Option<usize>) -> Result<usize, CliError> {
    match size {
        Some(n) if (1..=MAX_EXPRESSION_SIZE).contains(&n) => Ok(n),
        _ => Err(bad(expr, format!("carrier size must be between 1 and {MAX_EXPRESSION_SIZE}"))),
    }
}

fn dim_size(x: usize, dims: u32) -> Option<usize> {
    x.checked_mul(1usize.checked_shl(dims)?)
}

pub fn parse_expression(expr: &str) -> Result<SolutionTable, CliError> {
    let (name, args) = split_call(expr)?;
    let table = match name {
        "identity" | "flip" => {
            arity(expr, &args, &[1])?;
            let n = check_size(expr, Some(number(expr, args[0])?))?;
            if name == "identity" {
                SolutionTable::identity(n)
            } else {
                SolutionTable::flip(n)
            }
        }
        "irretractable" => {
            arity(expr, &args, &[1])?;
            let r: u32 = number(expr, args[0])?;
            check_size(expr, dim_size(1, r))?;
            Ok(irretractable_solution(r))
        }
        "canonical" => {
            arity(expr, &args, &[3])?;
            let x: usize = number(expr, args[0])?;
            let (a, g): (u32, u32) = (number(expr, args[1])?, number(expr, args[2])?);
            check_size(expr, a.checked_add(g).and_then(|d| dim_size(x, d)))?;
            canonical_solution(x, a, g)
        }
        "group" => {
            arity(expr, &args, &[1])?;
            let g = parse_group(args[0])?;
            check_size(expr, Some(g.size()))?;
            Ok(group_solution(&g))
        }
        "cycle" => {
            arity(expr, &args, &[1, 2])?;
            let sigma = parse_one_line(expr, args[0])?;
            let g = match args.get(1) {
                Some(spec) => parse_group(spec)?,
                None => GroupTable::trivial(),
            };
            check_size(expr, sigma.len().checked_mul(g.size()))?;
            cycle_solution(&sigma, &g)
        }
        "ext" => {
            arity(expr, &args, &[2, 3])?;
            let x: usize = number(expr, args[0])?;
            let a: u32 = number(expr, args[1])?;
            check_size(expr, dim_size(x, a))?;
            let mut d = Decomposition::new(x, a, 0).map_err(|e| bad(expr, e))?;
            if let Some(file) = args.get(2) {
                d = d.with_sigma(load_sigma(file, x, a)?).map_err(|e| bad(expr, e))?;
            }
            ext_solution(&d)
        }
        other => return Err(bad(expr, format!("unknown constructor `{other}`"))),
    };
    table.map_err(|e| bad(expr, e))
}

pub fn load_sigma(file: &str, x_size: usize, a_dim: u32) -> Result<pentagon_core::SigmaMap, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
    parse_sigma(&text, x_size, a_dim).map_err(|e| CliError::Input(format!("{file}: {e}")))
}

/// `[4,1,2,3]` with 1-based images.
fn parse_one_line(expr: &str, arg: &str) -> Result<Bijection, CliError> {
    let inner = arg
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad(expr, "permutation must look like [2,1,3]"))?;
    let images = inner
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(bad(expr, format!("`{}` is not a label 1..n", t.trim()))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_size(expr, Some(images.len()))?;
    Bijection::new(images).map_err(|e| bad(expr, e))
}

pub fn parse_group(spec: &str) -> Result<GroupTable, CliError> {
    let err = |why: String| CliError::Input(format!("bad group `{spec}`: {why}"));
    let mut out = GroupTable::trivial();
    for factor in spec.trim().split('x') {
        let factor = factor.trim();
        let (kind, digits) = factor.split_at(factor.len().min(1));
        let g = match (kind, digits.parse::<usize>()) {
            _ if factor == "trivial" => GroupTable::trivial(),
            ("c", Ok(n)) if (1..=MAX_EXPRESSION_SIZE).contains(&n) => GroupTable::cyclic(n).map_err(|e| err(e.to_string()))?,
            ("e", Ok(r)) if r <= 12 => GroupTable::elementary(r as u32),
            ("s", Ok(k)) if (1..=6).contains(&k) => GroupTable::symmetric(k).map_err(|e| err(e.to_string()))?,
            _ => return Err(err(format!("unknown factor `{factor}`; use trivial, c<n>, e<r> or s<k> (k ≤ 6)"))),
        };
        if out.size() * g.size() > MAX_EXPRESSION_SIZE {
            return Err(err("group is too large".into()));
        }
        out = GroupTable::direct_product(&out, &g);
    }
    Ok(out)
}
