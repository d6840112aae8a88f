//! Figure presets: one entry per published scatter plot.

use rug::Rational;
use serde::Serialize;

use crate::analysis::genus_bound;
use crate::germs::FunctionSpec;
use crate::numerics::ExactComplex;
use crate::twopoint::Split;

/// The computation behind a preset.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    /// Type I polynomials for `[1, f1, f2]`; zero sets `q0, q1, q2`.
    HermitePade { case: u8, a: String, f1: FunctionSpec, f2: FunctionSpec },
    /// Diagonal Padé at infinity; zero sets `zeros, poles`.
    Pade { f: FunctionSpec, genus: usize, junctions: bool },
    /// Two-point Padé; zero sets `zeros, poles`.
    TwoPoint { f0: FunctionSpec, f_inf: FunctionSpec, split: Split, genus: usize },
}

impl Problem {
    /// Labels of the zero sets in solve order.
    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            Problem::HermitePade { .. } => &["q0", "q1", "q2"],
            _ => &["zeros", "poles"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Preset {
    pub id: String,
    pub title: String,
    pub problem: Problem,
    pub n: usize,
    /// Indices into [`Problem::labels`] that are exported and drawn.
    pub view: Vec<usize>,
}

fn q(s: &str) -> Rational {
    crate::numerics::parse_rational(s).expect("literal rational")
}

fn c(re: &str, im: &str) -> ExactComplex {
    ExactComplex::parse(re, im).expect("literal rational")
}

fn three_point() -> FunctionSpec {
    FunctionSpec::algebraic(vec![c("-6/5", "4/5"), c("9/10", "3/2"), c("1/2", "-6/5")], vec![q("-1/3"); 3])
}

fn six_point() -> FunctionSpec {
    FunctionSpec::algebraic(
        vec![c("43/10", "1"), c("2", "1/2"), c("2", "2"), c("1", "-3"), c("4", "2"), c("3", "5")],
        vec![q("-1/6"); 6],
    )
}

/// `((1 - 2z)(2 - z))^(-1/2)` at 0 and the other branch plus one at
/// infinity.
fn two_branch_pair() -> (FunctionSpec, FunctionSpec) {
    let f0 = FunctionSpec::algebraic(vec![c("1/2", "0"), c("2", "0")], vec![q("-1/2"); 2]).with_lead(c("1/2", "0"));
    let f_inf = f0.clone().with_shift(c("1", "0"));
    (f0, f_inf)
}

/// `((z - a1)/(z - a2))^(1/4)` at 0 and its negative at infinity.
fn quarter_ratio() -> (FunctionSpec, FunctionSpec) {
    let f = FunctionSpec::two_point_ratio(c("9/10", "-11/10"), c("1/10", "1/5"), q("1/4"));
    (f.clone(), f.with_branch_tag(2))
}

fn hp(case: u8, a: &str) -> Problem {
    let a_q = q(a);
    Problem::HermitePade {
        case,
        a: a.to_string(),
        f1: FunctionSpec::case(case, a_q.clone(), 1).expect("case in 1..=3"),
        f2: FunctionSpec::case(case, a_q, 2).expect("case in 1..=3"),
    }
}

fn case_name(case: u8) -> &'static str {
    match case {
        1 => "logarithmic",
        2 => "square-root",
        _ => "cubic-root",
    }
}

/// All presets, ordered by id.
pub fn all() -> Vec<Preset> {
    let mut out = Vec::new();
    let stahl3 = Problem::Pade { f: three_point(), genus: genus_bound(3), junctions: true };
    let title3 = "[n/n] of the three-point cube-root function";
    for (k, view) in [(1, vec![0, 1]), (2, vec![1]), (3, vec![0])] {
        out.push(Preset { id: format!("fig1_{k}"), title: title3.into(), problem: stahl3.clone(), n: 130, view });
    }
    out.push(Preset {
        id: "fig1_4".into(),
        title: "[n/n] of the six-point sixth-root function".into(),
        problem: Problem::Pade { f: six_point(), genus: genus_bound(6), junctions: false },
        n: 103,
        view: vec![0, 1],
    });
    let (f0, f_inf) = two_branch_pair();
    out.push(Preset {
        id: "fig2_1".into(),
        title: "two-point [n/n], two inverse-square-root germs".into(),
        problem: Problem::TwoPoint { f0, f_inf, split: Split::Displayed, genus: 1 },
        n: 120,
        view: vec![0, 1],
    });
    let (f0, f_inf) = quarter_ratio();
    let ratio = Problem::TwoPoint { f0, f_inf, split: Split::Displayed, genus: 1 };
    for (k, view) in [(2, vec![0, 1]), (3, vec![0]), (4, vec![1])] {
        out.push(Preset {
            id: format!("fig2_{k}"),
            title: "two-point [n/n], opposite branches of a fourth-root ratio".into(),
            problem: ratio.clone(),
            n: 199,
            view: view.clone(),
        });
    }
    for (k, (case, view)) in [(1, vec![0, 1, 2]), (1, vec![0]), (2, vec![0, 1, 2]), (2, vec![0])].into_iter().enumerate() {
        out.push(Preset {
            id: format!("fig3_{}", k + 1),
            title: format!("type I polynomials, {} case, a=-1/10", case_name(case)),
            problem: hp(case, "-1/10"),
            n: 200,
            view,
        });
    }
    for (fig, a) in [(4, "1/5"), (5, "2/5"), (6, "5/8"), (7, "73/100"), (8, "4/5")] {
        for case in 1..=3u8 {
            let a = if fig == 8 && case == 3 { "17/20" } else { a };
            let n = if fig == 7 && case == 3 { 300 } else { 200 };
            let views = [vec![0, 1, 2], vec![0], vec![1], vec![2]];
            for (k, view) in views.into_iter().enumerate() {
                out.push(Preset {
                    id: format!("fig{fig}_{}", 4 * (case as usize - 1) + k + 1),
                    title: format!("type I polynomials, {} case, a={a}", case_name(case)),
                    problem: hp(case, a),
                    n,
                    view,
                });
            }
        }
    }
    out
}

pub fn find(id: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.id == id)
}
