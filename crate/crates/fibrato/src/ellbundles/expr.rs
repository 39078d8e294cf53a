use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::label::PointLabel;
use super::EllError;

/// Line bundle `O(degree·[0]) ⊗ P` where `P` is the degree-0 class `label`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EllLine {
    pub degree: i64,
    pub label: PointLabel,
}

impl EllLine {
    pub fn new(degree: i64, label: PointLabel) -> Self {
        EllLine { degree, label }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `O(p)` for the point `p = [0] + label`.
    pub fn point(label: PointLabel) -> Self {
        EllLine { degree: 1, label }
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0 && self.label.is_zero()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        EllLine { degree: self.degree + other.degree, label: self.label.add(&other.label) }
    }

    pub fn pow(&self, n: i64) -> Self {
        EllLine { degree: self.degree * n, label: self.label.scale(n) }
    }

    pub fn dual(&self) -> Self {
        self.pow(-1)
    }

    /// `(h^0, h^1)`.
    pub fn cohomology(&self) -> (u64, u64) {
        match self.degree {
            d if d > 0 => (d as u64, 0),
            d if d < 0 => (0, d.unsigned_abs()),
            _ if self.label.is_zero() => (1, 1),
            _ => (0, 0),
        }
    }
}

impl fmt::Display for EllLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(line {} {})", self.degree, self.label)
    }
}

/// A line bundle or the indecomposable bundle of the given rank and
/// determinant (rank and degree coprime).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Atom {
    Line(EllLine),
    Indec { rank: u32, det: EllLine },
}

impl Atom {
    pub fn indec(rank: u32, det: EllLine) -> Result<Self, EllError> {
        match rank {
            0 => Err(EllError::Unsupported("rank 0 indecomposable".into())),
            1 => Ok(Atom::Line(det)),
            r if det.degree == 0 => Err(EllError::Unsupported(format!(
                "degree-0 indecomposable of rank {r}"
            ))),
            r if (r as i64).gcd(&det.degree) != 1 => Err(EllError::NotCoprime { rank: r, degree: det.degree }),
            r => Ok(Atom::Indec { rank: r, det }),
        }
    }

    pub fn rank(&self) -> u32 {
        match self {
            Atom::Line(_) => 1,
            Atom::Indec { rank, .. } => *rank,
        }
    }

    pub fn det(&self) -> &EllLine {
        match self {
            Atom::Line(l) => l,
            Atom::Indec { det, .. } => det,
        }
    }

    pub fn degree(&self) -> i64 {
        self.det().degree
    }

    pub fn cohomology(&self) -> (u64, u64) {
        match self {
            Atom::Line(l) => l.cohomology(),
            Atom::Indec { det, .. } if det.degree > 0 => (det.degree as u64, 0),
            Atom::Indec { det, .. } => (0, det.degree.unsigned_abs()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Line(l) => write!(f, "{l}"),
            Atom::Indec { rank, det } => write!(f, "(E {rank} {} {})", det.degree, det.label),
        }
    }
}

/// Formal bundle expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Sum(Vec<Expr>),
    Tensor(Vec<Expr>),
    Sym(usize, Box<Expr>),
    Wedge(usize, Box<Expr>),
    Dual(Box<Expr>),
}

impl Expr {
    pub fn line(l: EllLine) -> Self {
        Expr::Atom(Atom::Line(l))
    }

    pub fn indec(rank: u32, det: EllLine) -> Result<Self, EllError> {
        Atom::indec(rank, det).map(Expr::Atom)
    }

    pub fn sym(n: usize, e: Expr) -> Self {
        Expr::Sym(n, Box::new(e))
    }

    pub fn wedge(k: usize, e: Expr) -> Self {
        Expr::Wedge(k, Box::new(e))
    }

    pub fn tensor(a: Expr, b: Expr) -> Self {
        Expr::Tensor(vec![a, b])
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, items: &[Expr]| -> fmt::Result {
            write!(f, "({head}")?;
            for e in items {
                write!(f, " {e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Sum(v) => list(f, "sum", v),
            Expr::Tensor(v) => list(f, "tensor", v),
            Expr::Sym(n, e) => write!(f, "(sym {n} {e})"),
            Expr::Wedge(k, e) => write!(f, "(wedge {k} {e})"),
            Expr::Dual(e) => write!(f, "(dual {e})"),
        }
    }
}

/// Direct sum of atoms, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    atoms: Vec<Atom>,
}

impl NormalForm {
    pub fn new(mut atoms: Vec<Atom>) -> Self {
        atoms.sort();
        NormalForm { atoms }
    }

    pub fn trivial() -> Self {
        Self::new(vec![Atom::Line(EllLine::trivial())])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn rank(&self) -> u32 {
        self.atoms.iter().map(Atom::rank).sum()
    }

    pub fn degree(&self) -> i64 {
        self.atoms.iter().map(Atom::degree).sum()
    }

    pub fn det(&self) -> EllLine {
        self.atoms.iter().fold(EllLine::trivial(), |acc, a| acc.tensor(a.det()))
    }

    pub fn is_sum_of_lines(&self) -> bool {
        self.atoms.iter().all(|a| matches!(a, Atom::Line(_)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.atoms.iter().chain(&other.atoms).cloned().collect())
    }

    /// `(h^0, h^1)`.
    pub fn cohomology(&self) -> (u64, u64) {
        self.atoms.iter().map(Atom::cohomology).fold((0, 0), |(a, b), (c, d)| (a + c, b + d))
    }

    pub fn twist(&self, l: &EllLine) -> Self {
        Self::new(self.atoms.iter().map(|a| tensor_line(a, l)).collect())
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, EllError> {
        let mut out = Vec::new();
        for a in &self.atoms {
            for b in &other.atoms {
                out.extend(tensor_atoms(a, b)?);
            }
        }
        Ok(Self::new(out))
    }

    pub fn dual(&self) -> Self {
        Self::new(
            self.atoms
                .iter()
                .map(|a| match a {
                    Atom::Line(l) => Atom::Line(l.dual()),
                    Atom::Indec { rank, det } => Atom::Indec { rank: *rank, det: det.dual() },
                })
                .collect(),
        )
    }

    pub fn sym(&self, n: usize) -> Result<Self, EllError> {
        let Some((first, rest)) = self.atoms.split_first() else {
            return Ok(if n == 0 { Self::trivial() } else { Self::default() });
        };
        let rest = NormalForm { atoms: rest.to_vec() };
        let mut out = Self::default();
        for k in 0..=n {
            let part = sym_atom(first, k)?.tensor(&rest.sym(n - k)?)?;
            out = out.direct_sum(&part);
        }
        Ok(out)
    }

    pub fn wedge(&self, n: usize) -> Result<Self, EllError> {
        let Some((first, rest)) = self.atoms.split_first() else {
            return Ok(if n == 0 { Self::trivial() } else { Self::default() });
        };
        let rest = NormalForm { atoms: rest.to_vec() };
        let mut out = Self::default();
        for k in 0..=n.min(first.rank() as usize) {
            let part = wedge_atom(first, k)?.tensor(&rest.wedge(n - k)?)?;
            out = out.direct_sum(&part);
        }
        Ok(out)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sum")?;
        for a in &self.atoms {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

/// Evaluate an expression with the decomposition rules.
pub fn rewrite(e: &Expr) -> Result<NormalForm, EllError> {
    match e {
        Expr::Atom(a) => Ok(NormalForm::new(vec![a.clone()])),
        Expr::Sum(v) => v.iter().try_fold(NormalForm::default(), |acc, x| Ok(acc.direct_sum(&rewrite(x)?))),
        Expr::Tensor(v) => v.iter().try_fold(NormalForm::trivial(), |acc, x| acc.tensor(&rewrite(x)?)),
        Expr::Sym(n, x) => rewrite(x)?.sym(*n),
        Expr::Wedge(k, x) => rewrite(x)?.wedge(*k),
        Expr::Dual(x) => Ok(rewrite(x)?.dual()),
    }
}

fn line(l: EllLine) -> Atom {
    Atom::Line(l)
}

fn indec(rank: u32, det: EllLine) -> Atom {
    Atom::indec(rank, det).expect("rule output is coprime")
}

fn tensor_line(a: &Atom, l: &EllLine) -> Atom {
    match a {
        Atom::Line(m) => line(m.tensor(l)),
        Atom::Indec { rank, det } => indec(*rank, det.tensor(&l.pow(*rank as i64))),
    }
}

fn tensor_atoms(a: &Atom, b: &Atom) -> Result<Vec<Atom>, EllError> {
    match (a, b) {
        (Atom::Line(l), x) | (x, Atom::Line(l)) => Ok(vec![tensor_line(x, l)]),
        (Atom::Indec { rank: 3, det: d1 }, Atom::Indec { rank: 3, det: d2 }) => {
            let s = d1.tensor(d2);
            if s.degree % 3 == 0 {
                // E ⊗ E' with det E' = det E^2 ⊗ μ^3 is End E ⊗ det E ⊗ μ.
                let lam = s.label.divide_by_three().ok_or_else(|| not_covered(a, b))?;
                let base = EllLine::new(s.degree / 3, lam);
                return Ok(PointLabel::all_three_torsion()
                    .into_iter()
                    .map(|x| line(base.tensor(&EllLine::new(0, x))))
                    .collect());
            }
            let diff = d1.tensor(&d2.dual());
            if diff.degree % 3 == 0 && diff.label.divide_by_three().is_some() {
                // E' = E ⊗ μ, and E ⊗ E = S^2 E ⊕ Λ^2 E.
                return Ok(vec![indec(3, s.clone()), indec(3, s.clone()), indec(3, s)]);
            }
            Err(not_covered(a, b))
        }
        _ => Err(not_covered(a, b)),
    }
}

fn not_covered(a: &Atom, b: &Atom) -> EllError {
    EllError::Unsupported(format!("tensor product {a} ⊗ {b}"))
}

fn sym_atom(a: &Atom, n: usize) -> Result<NormalForm, EllError> {
    let det = a.det();
    let out = match (a, n) {
        (_, 0) => return Ok(NormalForm::trivial()),
        (_, 1) => vec![a.clone()],
        (Atom::Line(l), n) => vec![line(l.pow(n as i64))],
        (Atom::Indec { rank: 2, .. }, 2) => {
            (1..=3).map(|i| line(det.tensor(&EllLine::new(0, PointLabel::two_torsion(i))))).collect()
        }
        (Atom::Indec { rank: 2, .. }, 3) => vec![indec(2, det.pow(3)); 2],
        (Atom::Indec { rank: 3, .. }, 2) => vec![indec(3, det.pow(2)); 2],
        (Atom::Indec { rank: 3, .. }, 3) => {
            let mut v = vec![line(det.clone()); 2];
            v.extend((1..=8).map(|i| line(det.tensor(&EllLine::new(0, PointLabel::three_torsion(i))))));
            v
        }
        _ => return Err(EllError::Unsupported(format!("S^{n} of {a}"))),
    };
    Ok(NormalForm::new(out))
}

fn wedge_atom(a: &Atom, k: usize) -> Result<NormalForm, EllError> {
    let r = a.rank() as usize;
    let out = match k {
        0 => return Ok(NormalForm::trivial()),
        1 => vec![a.clone()],
        k if k > r => vec![],
        k if k == r => vec![line(a.det().clone())],
        2 if r == 3 => vec![indec(3, a.det().pow(2))],
        _ => return Err(EllError::Unsupported(format!("Λ^{k} of {a}"))),
    };
    Ok(NormalForm::new(out))
}

/// `dim Ext^1(O_τ, E) = rank(E)·deg(τ)`.
pub fn ext1_dim(tau_degree: u64, e: &NormalForm) -> u64 {
    e.rank() as u64 * tau_degree
}
