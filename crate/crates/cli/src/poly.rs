//! One-shot polynomial queries. Input is read from `--file` or stdin, one
//! polynomial per blank-line separated block, in fixture syntax.

use std::io::Read;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};

use permut3::polyring::{
    gcd_univariate, is_irreducible_f3, parse, print, resultant_with, ParseError, RelationSet, ResultantStrategy,
    VarRegistry,
};

#[derive(Args)]
pub struct PolyArgs {
    #[command(subcommand)]
    op: Op,
    /// Read from this file instead of stdin.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Variable order, e.g. `u,v,w`; inferred from the input otherwise.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Vec<String>,
}

#[derive(Subcommand)]
enum Op {
    /// Res(p, q; var) of the two input polynomials.
    Resultant {
        #[arg(long)]
        var: String,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Monic gcd of two univariate polynomials.
    Gcd {
        #[arg(long)]
        var: String,
    },
    /// Rabin's test for a univariate polynomial.
    Irreducible {
        #[arg(long)]
        var: String,
    },
    /// Normal form of the first polynomial modulo the others, each monic in
    /// the matching `--var`.
    Reduce {
        #[arg(long, required = true)]
        var: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Prs,
    Evaluation,
}

pub fn run(a: &PolyArgs) -> Result<bool> {
    let (source, text) = match &a.file {
        Some(p) => (p.display().to_string(), std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            ("<stdin>".to_string(), s)
        }
    };
    let blocks = blocks(&text);
    let mut names = a.vars.clone();
    if names.is_empty() {
        names = infer_vars(&text);
        let extra: Vec<&String> = match &a.op {
            Op::Resultant { var, .. } | Op::Gcd { var } | Op::Irreducible { var } => vec![var],
            Op::Reduce { var } => var.iter().collect(),
        };
        for v in extra {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
    }
    let reg = VarRegistry::new(&names)?;
    let polys = blocks
        .iter()
        .map(|(line, body)| {
            parse(body, &reg).map_err(|e| {
                let e = ParseError { line: e.line + line - 1, ..e };
                anyhow!("{source}:{e}")
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let expect = |n: usize| -> Result<()> {
        if polys.len() != n {
            bail!("expected {n} polynomial(s), found {}", polys.len());
        }
        Ok(())
    };

    match &a.op {
        Op::Resultant { var, strategy } => {
            expect(2)?;
            let strategy = match strategy {
                Strategy::Auto => ResultantStrategy::Auto,
                Strategy::Prs => ResultantStrategy::Prs,
                Strategy::Evaluation => ResultantStrategy::Evaluation,
            };
            let r = resultant_with(&polys[0], &polys[1], reg.var(var)?, strategy)?;
            println!("{}", print(&r, &reg));
        }
        Op::Gcd { var } => {
            expect(2)?;
            println!("{}", print(&gcd_univariate(&polys[0], &polys[1], reg.var(var)?)?, &reg));
        }
        Op::Irreducible { var } => {
            expect(1)?;
            println!("{}", is_irreducible_f3(&polys[0], reg.var(var)?)?);
        }
        Op::Reduce { var } => {
            expect(var.len() + 1)?;
            let mut rels = RelationSet::new();
            for (v, p) in var.iter().zip(&polys[1..]) {
                rels.push(reg.var(v)?, p.clone(), v)?;
            }
            println!("{}", print(&rels.reduce(&polys[0]), &reg));
        }
    }
    Ok(true)
}

/// Blank-line separated blocks with their 1-based starting line; `#`
/// comment lines are blanked so positions stay correct.
fn blocks(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut current: Option<(usize, String)> = None;
    for (i, line) in text.lines().enumerate() {
        let line = if line.trim_start().starts_with('#') { "" } else { line };
        if line.trim().is_empty() {
            out.extend(current.take());
            continue;
        }
        let (_, body) = current.get_or_insert_with(|| (i + 1, String::new()));
        body.push_str(line);
        body.push('\n');
    }
    out.extend(current);
    out
}

/// Identifiers in order of first appearance, skipping `\commands`.
fn infer_vars(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut prev = ' ';
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_alphabetic() {
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let word = &text[i..end];
            if prev != '\\' && !out.iter().any(|w| w == word) {
                out.push(word.to_string());
            }
            prev = 'a';
        } else {
            prev = c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_keep_line_numbers() {
        let b = blocks("# header\nx+1\n\n\ny^2\n+y\n");
        assert_eq!(b, [(2, "x+1\n".to_string()), (5, "y^2\n+y\n".to_string())]);
    }

    #[test]
    fn variables_in_order_of_appearance() {
        assert_eq!(infer_vars("v^2 \\cdot u + b1 v"), ["v", "u", "b1"]);
    }
}
