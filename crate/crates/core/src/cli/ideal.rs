//! Edge ideal text for computer algebra systems.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum IdealFormat {
    Macaulay2,
    Singular,
    Plain,
}

/// Renders the ideal generated by `x_i x_j` for each `(i, j)` in `gens`,
/// in a ring with variables `x_1..x_n`. No trailing newline.
pub fn render_ideal(format: IdealFormat, n: usize, gens: &[(usize, usize)]) -> String {
    let join = |f: &dyn Fn(usize, usize) -> String| {
        gens.iter()
            .map(|&(i, j)| f(i, j))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut out = String::new();
    match format {
        IdealFormat::Macaulay2 => {
            let body = if gens.is_empty() {
                "0_R".to_string()
            } else {
                join(&|i, j| format!("x_{i}*x_{j}"))
            };
            write!(out, "R = QQ[x_1..x_{n}]; I = ideal({body});").unwrap();
        }
        IdealFormat::Singular => {
            let body = if gens.is_empty() {
                "0".to_string()
            } else {
                join(&|i, j| format!("x({i})*x({j})"))
            };
            write!(out, "ring R = 0, (x(1..{n})), dp; ideal I = {body};").unwrap();
        }
        IdealFormat::Plain => {
            if gens.is_empty() {
                out.push_str("<trivial ideal>");
            } else {
                out.push_str(&join(&|i, j| format!("x{i}*x{j}")));
            }
        }
    }
    out
}
