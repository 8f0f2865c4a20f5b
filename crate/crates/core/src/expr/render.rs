//! Text rendering that [`super::parse`] reads back.
//!
//! Parentheses are inserted from operator precedence only; the right operand
//! of a binary operator is parenthesized at equal precedence so the parsed
//! tree has the same shape. Spaces around `+` and `-` appear only at the top
//! level.

use super::Expr;
use crate::numerics::ComplexScalar;

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

pub fn render(e: &Expr) -> String {
    let mut out = String::new();
    write(e, 0, true, &mut out);
    out
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => ADD,
        Expr::Mul(..) | Expr::Div(..) => MUL,
        Expr::Neg(_) => NEG,
        Expr::Pow(..) => POW,
        Expr::Const(v) => const_precedence(*v),
        Expr::Var(_) | Expr::Exp(_) | Expr::Sin(_) | Expr::Cos(_) => ATOM,
    }
}

fn const_precedence(v: ComplexScalar) -> u8 {
    let negative = if v.im == 0.0 {
        v.re.is_sign_negative() && v.re != 0.0
    } else if v.re == 0.0 {
        v.im < 0.0
    } else {
        false
    };
    if negative {
        NEG
    } else {
        ATOM
    }
}

pub(crate) fn format_const(v: ComplexScalar) -> String {
    if v.im == 0.0 {
        format!("{}", v.re + 0.0)
    } else if v.re == 0.0 {
        format!("{}i", v.im)
    } else if v.im < 0.0 {
        format!("({}-{}i)", v.re, -v.im)
    } else {
        format!("({}+{}i)", v.re, v.im)
    }
}

fn write(e: &Expr, min_prec: u8, top: bool, out: &mut String) {
    if precedence(e) < min_prec {
        out.push('(');
        write(e, 0, false, out);
        out.push(')');
        return;
    }
    let sep = |op: char| {
        if top {
            format!(" {op} ")
        } else {
            op.to_string()
        }
    };
    match e {
        Expr::Const(v) => out.push_str(&format_const(*v)),
        Expr::Var(v) => out.push_str(&v.to_string()),
        Expr::Add(a, b) => {
            write(a, ADD, top, out);
            out.push_str(&sep('+'));
            write(b, ADD + 1, top, out);
        }
        Expr::Sub(a, b) => {
            write(a, ADD, top, out);
            out.push_str(&sep('-'));
            write(b, ADD + 1, top, out);
        }
        Expr::Mul(a, b) => {
            write(a, MUL, false, out);
            out.push('*');
            write(b, MUL + 1, false, out);
        }
        Expr::Div(a, b) => {
            write(a, MUL, false, out);
            out.push('/');
            write(b, MUL + 1, false, out);
        }
        Expr::Neg(a) => {
            out.push('-');
            write(a, POW, false, out);
        }
        Expr::Pow(a, p) => {
            write(a, ATOM, false, out);
            out.push('^');
            if p.im == 0.0 || p.re == 0.0 {
                out.push_str(&format_const(*p));
            } else {
                out.push('(');
                out.push_str(&format_const(*p));
                out.push(')');
            }
        }
        Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => {
            out.push_str(match e {
                Expr::Exp(_) => "exp(",
                Expr::Sin(_) => "sin(",
                _ => "cos(",
            });
            write(a, 0, false, out);
            out.push(')');
        }
    }
}
