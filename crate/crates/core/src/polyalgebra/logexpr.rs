//! Sums of `Log[1/±(x^e − c)]/Log(x)` terms.

use dashu_int::IBig;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::{self, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// argument `x^e − c`
    XMinusC,
    /// argument `c − x^e`
    CMinusX,
}

#[derive(Debug, Clone, Serialize)]
pub struct LogAtom {
    pub sign: i8,
    pub orientation: Orientation,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub shift: Real,
    pub power: u32,
}

impl LogAtom {
    pub fn new(sign: i8, orientation: Orientation, shift: Real, power: u32) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        assert!(power >= 1, "power must be positive");
        Self { sign, orientation, shift, power }
    }

    /// `+Log[1/(x − c)]/Log(x)` with an integer shift.
    pub fn x_minus(c: i64) -> Self {
        Self::new(1, Orientation::XMinusC, real::exact_integer(&c.into()), 1)
    }

    /// `+Log[1/(c − x)]/Log(x)` with an integer shift.
    pub fn minus_x(c: i64) -> Self {
        Self::new(1, Orientation::CMinusX, real::exact_integer(&c.into()), 1)
    }

    pub fn negated(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    pub fn with_power(mut self, power: u32) -> Self {
        assert!(power >= 1, "power must be positive");
        self.power = power;
        self
    }

    fn argument(&self, x: &Real) -> Real {
        let digits = x.precision();
        let xe = if self.power == 1 { x.clone() } else { x.powi(IBig::from(self.power)) };
        let c = self.shift.clone().with_precision(digits).value();
        match self.orientation {
            Orientation::XMinusC => xe - c,
            Orientation::CMinusX => c - xe,
        }
    }

    fn render(&self) -> String {
        let xe = if self.power == 1 { "x".to_string() } else { format!("x^{}", self.power) };
        let c = self.shift.to_string();
        let arg = match self.orientation {
            Orientation::XMinusC => format!("{xe}-{c}"),
            Orientation::CMinusX => format!("{c}-{xe}"),
        };
        format!("Log[1/({arg})]/Log(x)")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LogExpr {
    pub atoms: Vec<LogAtom>,
}

impl LogExpr {
    pub fn new(atoms: Vec<LogAtom>) -> Self {
        Self { atoms }
    }

    pub fn single(atom: LogAtom) -> Self {
        Self { atoms: vec![atom] }
    }
}

impl std::fmt::Display for LogExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            match (i, a.sign) {
                (0, -1) => f.write_str("-")?,
                (0, _) => {}
                (_, -1) => f.write_str(" - ")?,
                _ => f.write_str(" + ")?,
            }
            f.write_str(&a.render())?;
        }
        Ok(())
    }
}

/// Evaluates the expression at `x`, at the precision carried by `x`.
pub fn eval_log_expr(expr: &LogExpr, x: &Real) -> Result<Real> {
    let digits = x.precision().max(1);
    let one = real::from_i64(1, digits);
    if !real::is_positive(x) || *x == one {
        return Err(Error::InvalidArgument(format!("log base must be positive and not 1, got {x}")));
    }
    let log_x = x.ln();
    let mut total = real::from_i64(0, digits);
    for (i, atom) in expr.atoms.iter().enumerate() {
        let arg = atom.argument(x);
        if !real::is_positive(&arg) {
            return Err(Error::NonPositiveLogArgument { atom: i });
        }
        // Log[1/a] = −Log[a]
        let term = -(arg.ln()) / &log_x;
        if atom.sign < 0 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}
