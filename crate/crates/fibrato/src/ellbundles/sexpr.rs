//! Text form of bundle expressions:
//!
//! ```text
//! (line DEG LABEL) | (E RANK DEG LABEL) | O
//! (sum X...) | (tensor X...) | (sym N X) | (wedge N X) | (dual X)
//! ```
//!
//! `LABEL` is a degree-0 class such as `0`, `t`, `-2t+L1` or `u+M3`.

use super::expr::{EllLine, Expr};
use super::label::PointLabel;
use super::EllError;

#[derive(Debug)]
enum Tree {
    Atom(String),
    List(Vec<Tree>),
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Tree, EllError> {
    let tok = tokens.get(*pos).ok_or_else(|| EllError::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Tree::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                    None => return Err(EllError::Parse("unbalanced '('".into())),
                }
            }
        }
        ")" => Err(EllError::Parse("unexpected ')'".into())),
        t => Ok(Tree::Atom(t.to_string())),
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, EllError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let tree = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(EllError::Parse("trailing input after expression".into()));
    }
    build(&tree)
}

fn int<T: std::str::FromStr>(t: &Tree) -> Result<T, EllError> {
    match t {
        Tree::Atom(s) => s.parse().map_err(|_| EllError::Parse(format!("expected integer, got {s:?}"))),
        Tree::List(_) => Err(EllError::Parse("expected integer, got list".into())),
    }
}

fn label(t: &Tree) -> Result<PointLabel, EllError> {
    match t {
        Tree::Atom(s) => PointLabel::parse(s),
        Tree::List(_) => Err(EllError::Parse("expected label, got list".into())),
    }
}

fn build(t: &Tree) -> Result<Expr, EllError> {
    let items = match t {
        Tree::Atom(s) if s == "O" => return Ok(Expr::line(EllLine::trivial())),
        Tree::Atom(s) => return Err(EllError::Parse(format!("unexpected atom {s:?}"))),
        Tree::List(items) => items,
    };
    let (head, args) = match items.split_first() {
        Some((Tree::Atom(h), args)) => (h.as_str(), args),
        _ => return Err(EllError::Parse("expected a head symbol".into())),
    };
    let arity = |n: usize| -> Result<(), EllError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(EllError::Parse(format!("{head} takes {n} arguments, got {}", args.len())))
        }
    };
    match head {
        "line" => {
            arity(2)?;
            Ok(Expr::line(EllLine::new(int(&args[0])?, label(&args[1])?)))
        }
        "E" => {
            arity(3)?;
            Expr::indec(int(&args[0])?, EllLine::new(int(&args[1])?, label(&args[2])?))
        }
        "sum" => Ok(Expr::Sum(args.iter().map(build).collect::<Result<_, _>>()?)),
        "tensor" => Ok(Expr::Tensor(args.iter().map(build).collect::<Result<_, _>>()?)),
        "sym" => {
            arity(2)?;
            Ok(Expr::sym(int(&args[0])?, build(&args[1])?))
        }
        "wedge" => {
            arity(2)?;
            Ok(Expr::wedge(int(&args[0])?, build(&args[1])?))
        }
        "dual" => {
            arity(1)?;
            Ok(Expr::Dual(Box::new(build(&args[0])?)))
        }
        h => Err(EllError::Parse(format!("unknown constructor {h:?}"))),
    }
}
