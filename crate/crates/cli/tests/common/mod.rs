//! Grammar corpus shared by the grammar tests and the acceptance suite:
//! source text paired with the expected syntax tree or error offset.

use padic_cli::Expr;

pub enum Expect {
    Ast(Expr),
    ErrAt(usize),
}

pub struct Case {
    pub src: &'static str,
    pub expect: Expect,
}

fn ast(src: &'static str, expr: Expr) -> Case {
    Case { src, expect: Expect::Ast(expr) }
}

fn err(src: &'static str, offset: usize) -> Case {
    Case { src, expect: Expect::ErrAt(offset) }
}

pub fn corpus() -> Vec<Case> {
    use Expr as E;
    vec![
        // precedence, associativity, parentheses
        ast("3 + 4*7", E::add(E::int(3), E::mul(E::int(4), E::int(7)))),
        ast("1 + 2 + 3", E::add(E::add(E::int(1), E::int(2)), E::int(3))),
        ast("2 * 3 * 4", E::mul(E::mul(E::int(2), E::int(3)), E::int(4))),
        ast("1 + 2 * 3 + 4", E::add(E::add(E::int(1), E::mul(E::int(2), E::int(3))), E::int(4))),
        ast("(1 + 2) * 3", E::mul(E::add(E::int(1), E::int(2)), E::int(3))),
        ast("((7))", E::int(7)),
        // unary minus
        ast("-(2+3)", E::neg(E::add(E::int(2), E::int(3)))),
        ast("-5", E::neg(E::int(5))),
        ast("--5", E::neg(E::neg(E::int(5)))),
        ast("-1 * 2", E::mul(E::neg(E::int(1)), E::int(2))),
        ast("5 * -3", E::mul(E::int(5), E::neg(E::int(3)))),
        // literals and whitespace
        ast("0", E::int(0)),
        ast("  42  ", E::int(42)),
        ast(
            "123456789012345678901234567890",
            Expr::IntLit("123456789012345678901234567890".parse().unwrap()),
        ),
        // metric queries at top level
        ast("d(1, 26)", E::dist(E::int(1), E::int(26))),
        ast("d(0,0)", E::dist(E::int(0), E::int(0))),
        ast("d(3+4, 7)", E::dist(E::add(E::int(3), E::int(4)), E::int(7))),
        ast("v(50)", E::val(E::int(50))),
        ast("v( 25 + 25 )", E::val(E::add(E::int(25), E::int(25)))),
        ast("v(-10)", E::val(E::neg(E::int(10)))),
        // error cases: offset of the offending byte
        err("", 0),
        err("3 - 4", 2),
        err("()", 1),
        err("3 +", 3),
        err("* 3", 0),
        err("+", 0),
        err("1 2", 2),
        err("12a", 2),
        err("abc", 0),
        err("5 +* 2", 3),
        err("(1+2", 4),
        err("d(1)", 3),
        err("v()", 2),
        err("v(1,2)", 3),
        err("v 5", 2),
        err("d(d(1,2),3)", 2),
    ]
}
