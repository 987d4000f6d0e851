//! Second-order forward-mode jets and the expression evaluator.
//!
//! A [`Jet2`] carries a value, a 2-slot gradient and the symmetric 2×2
//! Hessian with respect to up to two differentiation parameters. Chart
//! parameters occupy the axes; bound constants (like `c`) are constant
//! jets. Everything in the crate differentiates through these — no
//! numeric differentiation happens at the expression level.

use super::{BinOp, Expr, Func, Var};
use std::fmt;

/// Value, gradient, and symmetric Hessian with respect to two parameters.
///
/// `dd = [∂₀₀, ∂₀₁, ∂₁₁]` stores the single Hessian triangle, so symmetry
/// is structural.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub d: [f64; 2],
    pub dd: [f64; 3],
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2 {
        v: 0.0,
        d: [0.0, 0.0],
        dd: [0.0, 0.0, 0.0],
    };

    /// A constant: no derivatives.
    pub fn constant(v: f64) -> Jet2 {
        Jet2 {
            v,
            ..Jet2::ZERO
        }
    }

    /// The value of differentiation parameter `axis` (0 or 1).
    pub fn var(v: f64, axis: usize) -> Jet2 {
        let mut d = [0.0, 0.0];
        d[axis] = 1.0;
        Jet2 {
            v,
            d,
            dd: [0.0, 0.0, 0.0],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite()
            && self.d.iter().all(|x| x.is_finite())
            && self.dd.iter().all(|x| x.is_finite())
    }

    /// True when both derivative levels vanish exactly.
    fn is_constant(&self) -> bool {
        self.d == [0.0, 0.0] && self.dd == [0.0, 0.0, 0.0]
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            d: [self.d[0] + o.d[0], self.d[1] + o.d[1]],
            dd: [
                self.dd[0] + o.dd[0],
                self.dd[1] + o.dd[1],
                self.dd[2] + o.dd[2],
            ],
        }
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: self.v - o.v,
            d: [self.d[0] - o.d[0], self.d[1] - o.d[1]],
            dd: [
                self.dd[0] - o.dd[0],
                self.dd[1] - o.dd[1],
                self.dd[2] - o.dd[2],
            ],
        }
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 {
            v: -self.v,
            d: [-self.d[0], -self.d[1]],
            dd: [-self.dd[0], -self.dd[1], -self.dd[2]],
        }
    }

    pub fn mul(&self, o: &Jet2) -> Jet2 {
        // (fg)'' = f''g + f'g' + g'f' + fg''
        Jet2 {
            v: self.v * o.v,
            d: [
                self.d[0] * o.v + self.v * o.d[0],
                self.d[1] * o.v + self.v * o.d[1],
            ],
            dd: [
                self.dd[0] * o.v + 2.0 * self.d[0] * o.d[0] + self.v * o.dd[0],
                self.dd[1] * o.v + self.d[0] * o.d[1] + self.d[1] * o.d[0] + self.v * o.dd[1],
                self.dd[2] * o.v + 2.0 * self.d[1] * o.d[1] + self.v * o.dd[2],
            ],
        }
    }

    pub fn scale(&self, k: f64) -> Jet2 {
        Jet2 {
            v: k * self.v,
            d: [k * self.d[0], k * self.d[1]],
            dd: [k * self.dd[0], k * self.dd[1], k * self.dd[2]],
        }
    }

    /// Reciprocal; caller checks `v != 0`.
    fn recip(&self) -> Jet2 {
        let inv = 1.0 / self.v;
        let inv2 = inv * inv;
        let inv3 = inv2 * inv;
        Jet2 {
            v: inv,
            d: [-self.d[0] * inv2, -self.d[1] * inv2],
            dd: [
                -self.dd[0] * inv2 + 2.0 * self.d[0] * self.d[0] * inv3,
                -self.dd[1] * inv2 + 2.0 * self.d[0] * self.d[1] * inv3,
                -self.dd[2] * inv2 + 2.0 * self.d[1] * self.d[1] * inv3,
            ],
        }
    }

    pub fn div(&self, o: &Jet2) -> Jet2 {
        self.mul(&o.recip())
    }

    /// Chain rule through a scalar function given (f, f', f'') at `self.v`.
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        Jet2 {
            v: f0,
            d: [f1 * self.d[0], f1 * self.d[1]],
            dd: [
                f1 * self.dd[0] + f2 * self.d[0] * self.d[0],
                f1 * self.dd[1] + f2 * self.d[0] * self.d[1],
                f1 * self.dd[2] + f2 * self.d[1] * self.d[1],
            ],
        }
    }

    pub fn sqrt(&self) -> Jet2 {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(&self) -> Jet2 {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn ln(&self) -> Jet2 {
        let inv = 1.0 / self.v;
        self.chain(self.v.ln(), inv, -inv * inv)
    }

    pub fn atan(&self) -> Jet2 {
        let den = 1.0 + self.v * self.v;
        self.chain(self.v.atan(), 1.0 / den, -2.0 * self.v / (den * den))
    }

    pub fn abs(&self) -> Jet2 {
        // Smooth away from zero; sign(0) taken as 0.
        let sign = if self.v > 0.0 {
            1.0
        } else if self.v < 0.0 {
            -1.0
        } else {
            0.0
        };
        self.chain(self.v.abs(), sign, 0.0)
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, n: i64) -> Jet2 {
        if n == 0 {
            return Jet2::constant(1.0);
        }
        let mut acc = *self;
        for _ in 1..n.unsigned_abs() {
            acc = acc.mul(self);
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
}

/// Evaluation failure: unbound variable or a domain fault, reported with
/// the offending subexpression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("variable `{}` is not bound", var.name())]
    Unbound { var: Var },
    #[error("domain error in `{subexpr}`: {msg}")]
    Domain { subexpr: String, msg: String },
}

impl EvalError {
    fn domain(e: &Expr, msg: impl fmt::Display) -> EvalError {
        EvalError::Domain {
            subexpr: e.to_string(),
            msg: msg.to_string(),
        }
    }
}

/// Per-variable jet seeds for an evaluation.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    slots: [Option<Jet2>; 5],
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn set(mut self, var: Var, jet: Jet2) -> Bindings {
        self.slots[var.index()] = Some(jet);
        self
    }

    pub fn get(&self, var: Var) -> Option<Jet2> {
        self.slots[var.index()]
    }

    /// One-parameter seed: t on axis 0.
    pub fn t(t: f64) -> Bindings {
        Bindings::new().set(Var::T, Jet2::var(t, 0))
    }

    /// Ruled-chart seed: t on axis 0, s on axis 1.
    pub fn ts(t: f64, s: f64) -> Bindings {
        Bindings::new()
            .set(Var::T, Jet2::var(t, 0))
            .set(Var::S, Jet2::var(s, 1))
    }

    /// Graph seed: x on axis 0, y on axis 1.
    pub fn xy(x: f64, y: f64) -> Bindings {
        Bindings::new()
            .set(Var::X, Jet2::var(x, 0))
            .set(Var::Y, Jet2::var(y, 1))
    }

    /// Bind the family constant c.
    pub fn with_c(self, c: f64) -> Bindings {
        self.set(Var::C, Jet2::constant(c))
    }
}

/// Evaluate an expression with full second-order jet propagation.
pub fn eval_jet2(e: &Expr, bindings: &Bindings) -> Result<Jet2, EvalError> {
    let jet = eval_inner(e, bindings)?;
    if !jet.is_finite() {
        return Err(EvalError::domain(e, "result is not finite"));
    }
    Ok(jet)
}

fn eval_inner(e: &Expr, b: &Bindings) -> Result<Jet2, EvalError> {
    let out = match e {
        Expr::Num(v) => Jet2::constant(*v),
        Expr::Var(var) => b.get(*var).ok_or(EvalError::Unbound { var: *var })?,
        Expr::Neg(inner) => eval_inner(inner, b)?.neg(),
        Expr::Bin(op, l, r) => {
            let lhs = eval_inner(l, b)?;
            let rhs = eval_inner(r, b)?;
            match op {
                BinOp::Add => lhs.add(&rhs),
                BinOp::Sub => lhs.sub(&rhs),
                BinOp::Mul => lhs.mul(&rhs),
                BinOp::Div => {
                    if rhs.v == 0.0 {
                        return Err(EvalError::domain(e, "division by zero"));
                    }
                    lhs.div(&rhs)
                }
                BinOp::Pow => {
                    let int_exp = rhs.is_constant()
                        && rhs.v.fract() == 0.0
                        && rhs.v.abs() <= 1024.0;
                    if int_exp {
                        let n = rhs.v as i64;
                        if n < 0 && lhs.v == 0.0 {
                            return Err(EvalError::domain(e, "zero base with negative exponent"));
                        }
                        lhs.powi(n)
                    } else {
                        // Non-integer or non-constant exponent: positive base.
                        if lhs.v <= 0.0 {
                            return Err(EvalError::domain(
                                e,
                                "power with non-integer exponent needs a positive base",
                            ));
                        }
                        rhs.mul(&lhs.ln()).exp()
                    }
                }
            }
        }
        Expr::Call(func, arg) => {
            let a = eval_inner(arg, b)?;
            match func {
                Func::Sqrt => {
                    if a.v < 0.0 {
                        return Err(EvalError::domain(e, "sqrt of a negative number"));
                    }
                    a.sqrt()
                }
                Func::Log => {
                    if a.v <= 0.0 {
                        return Err(EvalError::domain(e, "log of a non-positive number"));
                    }
                    a.ln()
                }
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Tan => a.tan(),
                Func::Exp => a.exp(),
                Func::Atan => a.atan(),
                Func::Abs => a.abs(),
            }
        }
    };
    if !out.is_finite() {
        return Err(EvalError::domain(e, "result is not finite"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn polynomial_jet() {
        let e = parse("t^2").unwrap();
        let j = eval_jet2(&e, &Bindings::t(3.0)).unwrap();
        assert_eq!(j.v, 9.0);
        assert_eq!(j.d[0], 6.0);
        assert_eq!(j.dd[0], 2.0);
    }

    #[test]
    fn cylinder_profile_jet() {
        let e = parse("sqrt(4 - t^2)").unwrap();
        let j = eval_jet2(&e, &Bindings::t(1.0)).unwrap();
        let s3 = 3.0_f64.sqrt();
        assert!(close(j.v, s3, 1e-15));
        assert!(close(j.d[0], -1.0 / s3, 1e-15));
        assert!(close(j.dd[0], -4.0 / (3.0 * s3), 1e-14));
    }

    #[test]
    fn two_variable_jet() {
        let e = parse("x*y/2").unwrap();
        let j = eval_jet2(&e, &Bindings::xy(1.0, 2.0)).unwrap();
        assert_eq!(j.v, 1.0);
        assert_eq!(j.d, [1.0, 0.5]);
        assert_eq!(j.dd, [0.0, 0.5, 0.0]);
    }

    #[test]
    fn family_constant() {
        let e = parse("sqrt(c - t^2)").unwrap();
        let j = eval_jet2(&e, &Bindings::t(1.0).with_c(4.0)).unwrap();
        assert!(close(j.v, 3.0_f64.sqrt(), 1e-15));
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let e = parse("1/(t - 1)").unwrap();
        let err = eval_jet2(&e, &Bindings::t(1.0)).unwrap_err();
        match err {
            EvalError::Domain { subexpr, msg } => {
                assert!(subexpr.contains("t - 1"), "{subexpr}");
                assert!(msg.contains("division"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let e = parse("sqrt(-1 - t^2)").unwrap();
        assert!(matches!(
            eval_jet2(&e, &Bindings::t(0.0)),
            Err(EvalError::Domain { .. })
        ));

        let e = parse("x + s").unwrap();
        assert!(matches!(
            eval_jet2(&e, &Bindings::xy(0.0, 0.0)),
            Err(EvalError::Unbound { var: Var::S })
        ));
    }

    #[test]
    fn integer_and_real_powers() {
        let e = parse("t^3").unwrap();
        let j = eval_jet2(&e, &Bindings::t(2.0)).unwrap();
        assert_eq!(j.v, 8.0);
        assert_eq!(j.d[0], 12.0);
        assert_eq!(j.dd[0], 12.0);

        let e = parse("t^-2").unwrap();
        let j = eval_jet2(&e, &Bindings::t(2.0)).unwrap();
        assert!(close(j.v, 0.25, 1e-15));
        assert!(close(j.d[0], -0.25, 1e-15));

        let e = parse("t^0.5").unwrap();
        let j = eval_jet2(&e, &Bindings::t(4.0)).unwrap();
        assert!(close(j.v, 2.0, 1e-14));
        assert!(close(j.d[0], 0.25, 1e-14));
        assert!(eval_jet2(&e, &Bindings::t(-4.0)).is_err());

        // c bound to an integer takes the exact path.
        let e = parse("t^c").unwrap();
        let j = eval_jet2(&e, &Bindings::t(-2.0).with_c(2.0)).unwrap();
        assert_eq!(j.v, 4.0);
    }

    #[test]
    fn evaluation_is_bit_deterministic() {
        let e = parse("sin(t)*exp(t/3) - sqrt(t + 2)^3").unwrap();
        let a = eval_jet2(&e, &Bindings::t(0.7)).unwrap();
        let b = eval_jet2(&e, &Bindings::t(0.7)).unwrap();
        assert_eq!(a.v.to_bits(), b.v.to_bits());
        assert_eq!(a.d[0].to_bits(), b.d[0].to_bits());
        assert_eq!(a.dd[0].to_bits(), b.dd[0].to_bits());
    }
}
