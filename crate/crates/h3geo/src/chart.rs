//! Surface charts into H₃ carrying exact second-order jets.
//!
//! A chart maps parameters (u, v) to global coordinates (x, y, z) and
//! exposes value, gradient, and Hessian of each coordinate function.
//! Everything downstream (fundamental forms, curvature, Laplacians)
//! differentiates through these jets; the only numeric differentiation in
//! the crate is the outer derivative of divergence fluxes and surface
//! Christoffel symbols.

use crate::error::Error;
use crate::expr::{eval_jet2, Bindings, Expr, Jet2, Var};
use crate::heisenberg::{CoordPoint, CoordVector, Isometry};
use crate::Result;

/// Closed parameter rectangle [u0, u1] × [v0, v1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub u: (f64, f64),
    pub v: (f64, f64),
}

impl Domain {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Result<Domain> {
        if !(u0 < u1 && v0 < v1) {
            return Err(Error::InvalidInput(format!(
                "domain needs u0 < u1 and v0 < v1, got [{u0}, {u1}] x [{v0}, {v1}]"
            )));
        }
        Ok(Domain {
            u: (u0, u1),
            v: (v0, v1),
        })
    }

    /// Symmetric unit square, the default when nothing else is given.
    pub fn unit() -> Domain {
        Domain {
            u: (-1.0, 1.0),
            v: (-1.0, 1.0),
        }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.u.0 <= p[0] && p[0] <= self.u.1 && self.v.0 <= p[1] && p[1] <= self.v.1
    }
}

/// Jets of the three coordinate functions with respect to the chart
/// parameters (axis 0 = u, axis 1 = v).
#[derive(Debug, Clone, Copy)]
pub struct ChartJet {
    pub x: Jet2,
    pub y: Jet2,
    pub z: Jet2,
}

impl ChartJet {
    pub fn point(&self) -> CoordPoint {
        CoordPoint::new(self.x.v, self.y.v, self.z.v)
    }

    /// Coordinate velocity along parameter axis 0 or 1.
    pub fn velocity(&self, axis: usize) -> CoordVector {
        CoordVector::new(self.x.d[axis], self.y.d[axis], self.z.d[axis])
    }
}

#[derive(Debug, Clone)]
enum Kind {
    /// z = f(x, y), parameters are (x, y) themselves.
    Graph { f: Expr },
    /// Fully parametric (x(t,s), y(t,s), z(t,s)).
    Parametric { x: Expr, y: Expr, z: Expr },
    /// Vertical rulings over the plane curve (t, a(t), 0):
    /// r(t, s) = (t, a(t), s).
    S1 { a: Expr },
    /// Rulings inside ker ω:
    /// r(t, s) = (t + s·u(t), s, a(t) + t·s/2).
    S2 { a: Expr, u: Expr },
    /// An isometry applied to another chart, same parameters.
    Transformed { inner: Box<Chart>, g: Isometry },
}

/// An immersed surface chart.
#[derive(Debug, Clone)]
pub struct Chart {
    kind: Kind,
    domain: Domain,
    /// Value bound to the expression constant `c`, if any.
    c: Option<f64>,
}

impl Chart {
    pub fn graph(f: Expr, domain: Domain) -> Result<Chart> {
        if !f.uses_only(&[Var::X, Var::Y, Var::C]) {
            return Err(Error::InvalidInput(
                "graph height must be an expression in x, y (and c)".into(),
            ));
        }
        Ok(Chart {
            kind: Kind::Graph { f },
            domain,
            c: None,
        })
    }

    pub fn parametric(x: Expr, y: Expr, z: Expr, domain: Domain) -> Result<Chart> {
        for e in [&x, &y, &z] {
            if !e.uses_only(&[Var::T, Var::S, Var::C]) {
                return Err(Error::InvalidInput(
                    "parametric coordinates must be expressions in t, s (and c)".into(),
                ));
            }
        }
        Ok(Chart {
            kind: Kind::Parametric { x, y, z },
            domain,
            c: None,
        })
    }

    pub fn s1(a: Expr, domain: Domain) -> Result<Chart> {
        if !a.uses_only(&[Var::T, Var::C]) {
            return Err(Error::InvalidInput(
                "ruling profile a must be an expression in t (and c)".into(),
            ));
        }
        Ok(Chart {
            kind: Kind::S1 { a },
            domain,
            c: None,
        })
    }

    pub fn s2(a: Expr, u: Expr, domain: Domain) -> Result<Chart> {
        for e in [&a, &u] {
            if !e.uses_only(&[Var::T, Var::C]) {
                return Err(Error::InvalidInput(
                    "ruling data a, u must be expressions in t (and c)".into(),
                ));
            }
        }
        Ok(Chart {
            kind: Kind::S2 { a, u },
            domain,
            c: None,
        })
    }

    /// Bind the family constant `c` for every expression in the chart.
    pub fn with_c(mut self, c: f64) -> Chart {
        self.c = Some(c);
        self
    }

    /// The image of this chart under an isometry, with the same
    /// parameters.
    pub fn transformed(self, g: Isometry) -> Chart {
        let domain = self.domain;
        Chart {
            kind: Kind::Transformed {
                inner: Box::new(self),
                g,
            },
            domain,
            c: None,
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Short kind tag for reports.
    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            Kind::Graph { .. } => "graph",
            Kind::Parametric { .. } => "parametric",
            Kind::S1 { .. } => "s1",
            Kind::S2 { .. } => "s2",
            Kind::Transformed { .. } => "transformed",
        }
    }

    /// Key/value description for report echoes.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("kind", self.kind_name().to_string())];
        match &self.kind {
            Kind::Graph { f } => out.push(("f", f.to_string())),
            Kind::Parametric { x, y, z } => {
                out.push(("x", x.to_string()));
                out.push(("y", y.to_string()));
                out.push(("z", z.to_string()));
            }
            Kind::S1 { a } => out.push(("a", a.to_string())),
            Kind::S2 { a, u } => {
                out.push(("a", a.to_string()));
                out.push(("u", u.to_string()));
            }
            Kind::Transformed { inner, .. } => {
                for (k, v) in inner.describe() {
                    if k != "kind" {
                        out.push((k, v));
                    }
                }
            }
        }
        if let Some(c) = self.c {
            out.push(("c", format!("{c}")));
        }
        out
    }

    fn bind(&self, b: Bindings) -> Bindings {
        match self.c {
            Some(c) => b.with_c(c),
            None => b,
        }
    }

    /// Evaluate the coordinate jets at parameters p = (u, v).
    pub fn eval(&self, p: [f64; 2]) -> Result<ChartJet> {
        match &self.kind {
            Kind::Graph { f } => {
                let b = self.bind(Bindings::xy(p[0], p[1]));
                Ok(ChartJet {
                    x: Jet2::var(p[0], 0),
                    y: Jet2::var(p[1], 1),
                    z: eval_jet2(f, &b)?,
                })
            }
            Kind::Parametric { x, y, z } => {
                let b = self.bind(Bindings::ts(p[0], p[1]));
                Ok(ChartJet {
                    x: eval_jet2(x, &b)?,
                    y: eval_jet2(y, &b)?,
                    z: eval_jet2(z, &b)?,
                })
            }
            Kind::S1 { a } => {
                let b = self.bind(Bindings::ts(p[0], p[1]));
                Ok(ChartJet {
                    x: Jet2::var(p[0], 0),
                    y: eval_jet2(a, &b)?,
                    z: Jet2::var(p[1], 1),
                })
            }
            Kind::S2 { a, u } => {
                let b = self.bind(Bindings::ts(p[0], p[1]));
                let t = Jet2::var(p[0], 0);
                let s = Jet2::var(p[1], 1);
                let a_jet = eval_jet2(a, &b)?;
                let u_jet = eval_jet2(u, &b)?;
                Ok(ChartJet {
                    x: t.add(&s.mul(&u_jet)),
                    y: s,
                    z: a_jet.add(&t.mul(&s).scale(0.5)),
                })
            }
            Kind::Transformed { inner, g } => {
                let base = inner.eval(p)?;
                Ok(apply_isometry_jet(g, &base))
            }
        }
    }
}

/// Push coordinate jets through an isometry. The map is affine in the
/// coordinates, so jets transform linearly.
fn apply_isometry_jet(g: &Isometry, jet: &ChartJet) -> ChartJet {
    let (s, co) = g.theta.sin_cos();
    let a_row = 0.5 * (g.a * s - g.b * co);
    let b_row = 0.5 * (g.a * co + g.b * s);

    let lin = |cx: f64, cy: f64, cz: f64, t: f64| -> Jet2 {
        jet.x
            .scale(cx)
            .add(&jet.y.scale(cy))
            .add(&jet.z.scale(cz))
            .add(&Jet2::constant(t))
    };

    ChartJet {
        x: lin(co, -s, 0.0, g.a),
        y: lin(s, co, 0.0, g.b),
        z: lin(a_row, b_row, 1.0, g.c),
    }
}
