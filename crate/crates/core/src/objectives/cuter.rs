//! Standard formulations of nonconvex unconstrained test problems with
//! their conventional starting points.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::SmoothObjective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CuterName {
    Vardim,
    Cosine,
    Genrose,
    Woods,
    Chainwoo,
}

impl CuterName {
    pub const ALL: [CuterName; 5] = [
        CuterName::Vardim,
        CuterName::Cosine,
        CuterName::Genrose,
        CuterName::Woods,
        CuterName::Chainwoo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CuterName::Vardim => "VARDIM",
            CuterName::Cosine => "COSINE",
            CuterName::Genrose => "GENROSE",
            CuterName::Woods => "WOODS",
            CuterName::Chainwoo => "CHAINWOO",
        }
    }

    /// Dimension used for the benchmark table.
    pub fn default_dim(self) -> usize {
        match self {
            CuterName::Vardim => 1000,
            CuterName::Cosine => 1000,
            CuterName::Genrose => 200,
            CuterName::Woods => 1000,
            CuterName::Chainwoo => 1000,
        }
    }
}

impl fmt::Display for CuterName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CuterName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "VARDIM" => Ok(CuterName::Vardim),
            "COSINE" => Ok(CuterName::Cosine),
            "GENROSE" => Ok(CuterName::Genrose),
            "WOODS" => Ok(CuterName::Woods),
            "CHAINWOO" | "CHAIWOO" => Ok(CuterName::Chainwoo),
            other => Err(Error::InvalidArgument(format!(
                "unknown test problem {other:?} (expected VARDIM, COSINE, GENROSE, WOODS or CHAINWOO)"
            ))),
        }
    }
}

/// A named test function with its standard starting point.
#[derive(Clone)]
pub struct TestProblem {
    pub name: CuterName,
    pub n: usize,
    pub x0: Vec<f64>,
    pub objective: Arc<dyn SmoothObjective>,
}

impl fmt::Debug for TestProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestProblem")
            .field("name", &self.name)
            .field("n", &self.n)
            .finish()
    }
}

pub fn cuter_problem(name: CuterName, n: usize) -> Result<TestProblem> {
    let inadmissible = |rule: &str| {
        Err(Error::InvalidArgument(format!(
            "{name} requires {rule}, got n = {n}"
        )))
    };
    let (objective, x0): (Arc<dyn SmoothObjective>, Vec<f64>) = match name {
        CuterName::Vardim => {
            if n < 1 {
                return inadmissible("n >= 1");
            }
            let x0 = (1..=n).map(|i| 1.0 - i as f64 / n as f64).collect();
            (Arc::new(Vardim { n }), x0)
        }
        CuterName::Cosine => {
            if n < 2 {
                return inadmissible("n >= 2");
            }
            (Arc::new(Cosine { n }), vec![1.0; n])
        }
        CuterName::Genrose => {
            if n < 2 {
                return inadmissible("n >= 2");
            }
            let x0 = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
            (Arc::new(Genrose { n }), x0)
        }
        CuterName::Woods => {
            if n < 4 || !n.is_multiple_of(4) {
                return inadmissible("n to be a positive multiple of 4");
            }
            let x0 = (0..n).map(|i| if i % 2 == 0 { -3.0 } else { -1.0 }).collect();
            (Arc::new(Woods { n }), x0)
        }
        CuterName::Chainwoo => {
            if n < 4 || !n.is_multiple_of(2) {
                return inadmissible("an even n >= 4");
            }
            let mut x0 = vec![-2.0; n];
            x0[..4].copy_from_slice(&[-3.0, -1.0, -3.0, -1.0]);
            (Arc::new(Chainwoo { n }), x0)
        }
    };
    Ok(TestProblem {
        name,
        n,
        x0,
        objective,
    })
}

/// `Σ(xᵢ − 1)² + s² + s⁴` with `s = Σ i(xᵢ − 1)`.
struct Vardim {
    n: usize,
}

impl SmoothObjective for Vardim {
    fn dim(&self) -> usize {
        self.n
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let s: f64 = x.iter().enumerate().map(|(i, xi)| (i + 1) as f64 * (xi - 1.0)).sum();
        let ds = 2.0 * s + 4.0 * s * s * s;
        let mut f = s * s + s * s * s * s;
        for (i, (gi, xi)) in grad.iter_mut().zip(x).enumerate() {
            f += (xi - 1.0) * (xi - 1.0);
            *gi = 2.0 * (xi - 1.0) + ds * (i + 1) as f64;
        }
        f
    }
}

/// `Σᵢ cos(xᵢ² − xᵢ₊₁/2)`.
struct Cosine {
    n: usize,
}

impl SmoothObjective for Cosine {
    fn dim(&self) -> usize {
        self.n
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.fill(0.0);
        let mut f = 0.0;
        for i in 0..self.n - 1 {
            let t = x[i] * x[i] - 0.5 * x[i + 1];
            f += t.cos();
            let s = t.sin();
            grad[i] -= 2.0 * x[i] * s;
            grad[i + 1] += 0.5 * s;
        }
        f
    }
}

/// `1 + Σᵢ₌₂ⁿ [100(xᵢ − xᵢ₋₁²)² + (xᵢ − 1)²]`.
struct Genrose {
    n: usize,
}

impl SmoothObjective for Genrose {
    fn dim(&self) -> usize {
        self.n
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.fill(0.0);
        let mut f = 1.0;
        for i in 1..self.n {
            let r = x[i] - x[i - 1] * x[i - 1];
            let q = x[i] - 1.0;
            f += 100.0 * r * r + q * q;
            grad[i] += 200.0 * r + 2.0 * q;
            grad[i - 1] -= 400.0 * r * x[i - 1];
        }
        f
    }
}

/// Wood function terms on `(x[a], x[a+1], x[a+2], x[a+3])`; adds to `grad`.
fn wood_block(x: &[f64], a: usize, grad: &mut [f64]) -> f64 {
    let (w1, w2, w3, w4) = (x[a], x[a + 1], x[a + 2], x[a + 3]);
    let r1 = w2 - w1 * w1;
    let r2 = w4 - w3 * w3;
    let (e1, e3) = (1.0 - w1, 1.0 - w3);
    let (e2, e4) = (w2 - 1.0, w4 - 1.0);
    grad[a] += -400.0 * w1 * r1 - 2.0 * e1;
    grad[a + 1] += 200.0 * r1 + 20.2 * e2 + 19.8 * e4;
    grad[a + 2] += -360.0 * w3 * r2 - 2.0 * e3;
    grad[a + 3] += 180.0 * r2 + 20.2 * e4 + 19.8 * e2;
    100.0 * r1 * r1 + e1 * e1 + 90.0 * r2 * r2 + e3 * e3 + 10.1 * (e2 * e2 + e4 * e4) + 19.8 * e2 * e4
}

/// Separable Wood function over consecutive blocks of four.
struct Woods {
    n: usize,
}

impl SmoothObjective for Woods {
    fn dim(&self) -> usize {
        self.n
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.fill(0.0);
        (0..self.n).step_by(4).map(|a| wood_block(x, a, grad)).sum()
    }
}

/// Chained Wood function: overlapping blocks starting every two
/// coordinates, plus a constant 1.
struct Chainwoo {
    n: usize,
}

impl SmoothObjective for Chainwoo {
    fn dim(&self) -> usize {
        self.n
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.fill(0.0);
        1.0 + (0..=self.n - 4).step_by(2).map(|a| wood_block(x, a, grad)).sum::<f64>()
    }
}
