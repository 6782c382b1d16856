//! Linear and mixed-integer programming.
//!
//! [`ModelSpec`] describes a model; [`solve_lp`] relaxes integrality and runs a
//! bounded primal/dual simplex on a dense tableau, [`solve_mip`] adds LP-based
//! branch-and-bound. [`LpSession`] keeps a factorized LP alive so rows and
//! columns can be appended and the model re-solved from the previous basis.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

mod bnb;
mod simplex;

pub use bnb::{solve_mip, solve_mip_with, MipOptions};
pub use simplex::LpSession;

/// Primal feasibility and duality tolerance used to verify results.
pub const FEAS_TOL: f64 = 1e-6;
/// Integrality tolerance for branch-and-bound.
pub const INT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub integer: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    /// Sparse row, one entry per variable, sorted by variable index.
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. For statuses other than `Optimal` the objective is NaN
/// and the vectors are empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub status: Status,
    pub objective: f64,
    pub primal: Vec<f64>,
    /// One value per constraint, LP solves only; the sensitivity of the
    /// objective (in the model's own sense) to the row's right-hand side.
    pub duals: Vec<f64>,
}

impl Solution {
    pub(crate) fn without_optimum(status: Status) -> Self {
        Solution {
            status,
            objective: f64::NAN,
            primal: Vec::new(),
            duals: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum MpError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("node limit of {limit} reached with open bound {bound}")]
    NodeLimit {
        limit: usize,
        incumbent: Option<Box<Solution>>,
        bound: f64,
    },
}

/// A linear or mixed-integer program.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    sense: Sense,
    vars: Vec<Variable>,
    objective: Vec<f64>,
    offset: f64,
    constraints: Vec<Constraint>,
}

impl ModelSpec {
    pub fn new(sense: Sense) -> Self {
        ModelSpec {
            sense,
            vars: Vec::new(),
            objective: Vec::new(),
            offset: 0.0,
            constraints: Vec::new(),
        }
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Declares a variable with bounds `[lower, upper]` (infinite bounds allowed)
    /// and objective coefficient `obj`; returns its index.
    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        lower: f64,
        upper: f64,
        integer: bool,
        obj: f64,
    ) -> Result<usize, MpError> {
        let name = name.into();
        if lower.is_nan()
            || upper.is_nan()
            || lower > upper
            || lower == f64::INFINITY
            || upper == f64::NEG_INFINITY
        {
            return Err(MpError::InvalidModel(format!(
                "variable {name} has bounds [{lower}, {upper}]"
            )));
        }
        if !obj.is_finite() {
            return Err(MpError::InvalidModel(format!(
                "variable {name} has objective {obj}"
            )));
        }
        self.vars.push(Variable {
            name,
            lower,
            upper,
            integer,
        });
        self.objective.push(obj);
        Ok(self.vars.len() - 1)
    }

    /// Shorthand for a `{0, 1}` variable.
    pub fn add_binary(&mut self, name: impl Into<String>, obj: f64) -> usize {
        self.add_var(name, 0.0, 1.0, true, obj)
            .expect("binary bounds are valid")
    }

    /// Shorthand for a continuous variable.
    pub fn add_continuous(
        &mut self,
        name: impl Into<String>,
        lower: f64,
        upper: f64,
        obj: f64,
    ) -> Result<usize, MpError> {
        self.add_var(name, lower, upper, false, obj)
    }

    pub fn set_objective(&mut self, var: usize, coef: f64) {
        self.objective[var] = coef;
    }

    pub fn set_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> Result<(), MpError> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(MpError::InvalidModel(format!(
                "variable {var} bounds [{lower}, {upper}]"
            )));
        }
        self.vars[var].lower = lower;
        self.vars[var].upper = upper;
        Ok(())
    }

    /// Appends a constraint; repeated variables are merged and zeros dropped.
    pub fn add_constraint<I>(
        &mut self,
        coeffs: I,
        relation: Relation,
        rhs: f64,
    ) -> Result<usize, MpError>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let row = normalize_row(coeffs, self.vars.len())?;
        if !rhs.is_finite() {
            return Err(MpError::InvalidModel(format!("constraint rhs {rhs}")));
        }
        self.constraints.push(Constraint {
            coeffs: row,
            relation,
            rhs,
        });
        Ok(self.constraints.len() - 1)
    }

    /// Objective value of `x` in the model's sense, including the offset.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.offset
            + self
                .objective
                .iter()
                .zip(x)
                .map(|(c, v)| c * v)
                .sum::<f64>()
    }

    /// Largest bound, row or integrality violation of `x`.
    pub fn max_violation(&self, x: &[f64], check_integrality: bool) -> f64 {
        let mut worst: f64 = 0.0;
        for (v, &xj) in self.vars.iter().zip(x) {
            worst = worst.max(v.lower - xj).max(xj - v.upper);
            if check_integrality && v.integer {
                worst = worst.max((xj - libm_round(xj)).abs());
            }
        }
        for c in &self.constraints {
            worst = worst.max(c.violation(x));
        }
        worst
    }

    /// Writes the model in a CPLEX-like LP text format.
    pub fn write_lp<W: Write>(&self, out: &mut W) -> fmt::Result {
        let names: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .map(|(j, v)| sanitize(&v.name, j))
            .collect();
        writeln!(
            out,
            "\\ {} variables, {} constraints",
            self.vars.len(),
            self.constraints.len()
        )?;
        writeln!(
            out,
            "{}",
            if self.sense == Sense::Max {
                "Maximize"
            } else {
                "Minimize"
            }
        )?;
        write!(out, " obj:")?;
        let terms: Vec<(usize, f64)> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(j, &c)| (j, c))
            .collect();
        write_terms(out, &terms, &names)?;
        if self.offset != 0.0 {
            write!(
                out,
                " {} {}",
                if self.offset < 0.0 { '-' } else { '+' },
                self.offset.abs()
            )?;
        }
        writeln!(out)?;
        writeln!(out, "Subject To")?;
        for (i, c) in self.constraints.iter().enumerate() {
            write!(out, " c{i}:")?;
            write_terms(out, &c.coeffs, &names)?;
            writeln!(out, " {} {}", c.relation, c.rhs)?;
        }
        writeln!(out, "Bounds")?;
        for (v, name) in self.vars.iter().zip(&names) {
            match (v.lower.is_finite(), v.upper.is_finite()) {
                (true, true) if v.lower == v.upper => writeln!(out, " {name} = {}", v.lower)?,
                (true, true) => writeln!(out, " {} <= {name} <= {}", v.lower, v.upper)?,
                (true, false) => writeln!(out, " {name} >= {}", v.lower)?,
                (false, true) => writeln!(out, " -inf <= {name} <= {}", v.upper)?,
                (false, false) => writeln!(out, " {name} free")?,
            }
        }
        let ints: Vec<&String> = self
            .vars
            .iter()
            .zip(&names)
            .filter(|(v, _)| v.integer)
            .map(|(_, n)| n)
            .collect();
        if !ints.is_empty() {
            writeln!(out, "Generals")?;
            for chunk in ints.chunks(10) {
                for name in chunk {
                    write!(out, " {name}")?;
                }
                writeln!(out)?;
            }
        }
        writeln!(out, "End")
    }

    /// The model as LP text.
    pub fn to_lp_string(&self) -> String {
        let mut s = String::new();
        self.write_lp(&mut s)
            .expect("writing to a String cannot fail");
        s
    }
}

pub(crate) fn normalize_row<I>(coeffs: I, nvars: usize) -> Result<Vec<(usize, f64)>, MpError>
where
    I: IntoIterator<Item = (usize, f64)>,
{
    let mut row: Vec<(usize, f64)> = Vec::new();
    for (j, a) in coeffs {
        if j >= nvars {
            return Err(MpError::InvalidModel(format!(
                "constraint references undeclared variable {j}"
            )));
        }
        if !a.is_finite() {
            return Err(MpError::InvalidModel(format!(
                "coefficient {a} on variable {j}"
            )));
        }
        row.push((j, a));
    }
    row.sort_unstable_by_key(|&(j, _)| j);
    let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
    for (j, a) in row {
        match merged.last_mut() {
            Some(last) if last.0 == j => last.1 += a,
            _ => merged.push((j, a)),
        }
    }
    merged.retain(|&(_, a)| a != 0.0);
    Ok(merged)
}

fn write_terms<W: Write>(out: &mut W, terms: &[(usize, f64)], names: &[String]) -> fmt::Result {
    if terms.is_empty() {
        return write!(out, " 0");
    }
    for (k, &(j, a)) in terms.iter().enumerate() {
        let sign = if a < 0.0 {
            "-"
        } else if k == 0 {
            ""
        } else {
            "+"
        };
        if k == 0 {
            write!(out, " {sign}")?;
        } else {
            write!(out, " {sign} ")?;
        }
        if a.abs() == 1.0 {
            write!(out, "{}", names[j])?;
        } else {
            write!(out, "{} {}", a.abs(), names[j])?;
        }
    }
    Ok(())
}

fn sanitize(name: &str, j: usize) -> String {
    let clean: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "_.[]".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    if clean.is_empty() || clean.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        format!("x{j}_{clean}")
    } else {
        clean
    }
}

pub(crate) fn libm_round(x: f64) -> f64 {
    num_traits::float::FloatCore::round(x)
}

/// Solves the LP relaxation of `spec`.
pub fn solve_lp(spec: &ModelSpec) -> Result<Solution, MpError> {
    let mut lp = LpSession::new(spec)?;
    lp.solve()?;
    Ok(lp.solution())
}

#[cfg(test)]
mod tests;
