//! Map functions f(x; parameter): builtin families and parsed expressions,
//! with exact forward-mode derivative evaluation.

pub mod expr;

use expr::Expr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("invalid parameter name `{0}` (must be non-empty and not x/exp/sin/cos)")]
    InvalidParameterName(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative base {base} raised to non-integer exponent {exponent}")]
    NegativeBaseNonIntegerPower { base: f64, exponent: f64 },
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
}

/// Time parity of the iteration step, which selects the branch of the
/// two-periodic linear map. All other map kinds ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    #[inline]
    pub fn of(t: usize) -> Parity {
        if t % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Value and x-derivative pair produced by forward-mode evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub value: f64,
    pub derivative: f64,
}

impl DualValue {
    #[inline]
    pub fn constant(value: f64) -> Self {
        Self {
            value,
            derivative: 0.0,
        }
    }
}

/// A one-parameter map family or a parsed expression.
#[derive(Debug, Clone)]
pub enum MapSpec {
    /// f(x) = a*x at even times, b*x at odd times.
    LinearTwoPeriodic { a: f64, b: f64 },
    /// f(x) = lambda * x * (1 - x)
    Logistic { lambda: f64 },
    /// f(x) = beta * x * (6 - x^2)
    Cubic { beta: f64 },
    /// f(x) = exp(-7.5 x^2) + beta
    Gauss { beta: f64 },
    /// A parsed expression with one named parameter.
    Expression {
        ast: Expr,
        parameter_name: String,
        parameter: f64,
    },
}

impl MapSpec {
    pub fn linear_two_periodic(a: f64, b: f64) -> Self {
        MapSpec::LinearTwoPeriodic { a, b }
    }

    pub fn logistic(lambda: f64) -> Self {
        MapSpec::Logistic { lambda }
    }

    pub fn cubic(beta: f64) -> Self {
        MapSpec::Cubic { beta }
    }

    pub fn gauss(beta: f64) -> Self {
        MapSpec::Gauss { beta }
    }

    /// Parses an expression map; `parameter_name` binds the free parameter.
    /// The parameter value starts at 0 and is set with [`with_parameter`].
    ///
    /// [`with_parameter`]: MapSpec::with_parameter
    pub fn parse(source: &str, parameter_name: &str) -> Result<Self, ParseError> {
        let ast = expr::parse(source, parameter_name)?;
        Ok(MapSpec::Expression {
            ast,
            parameter_name: parameter_name.to_string(),
            parameter: 0.0,
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MapSpec::LinearTwoPeriodic { .. } => "linear2",
            MapSpec::Logistic { .. } => "logistic",
            MapSpec::Cubic { .. } => "cubic",
            MapSpec::Gauss { .. } => "gauss",
            MapSpec::Expression { .. } => "expr",
        }
    }

    /// The scalar parameter, if the map has one (the two-periodic linear map
    /// carries the pair (a, b) instead).
    pub fn parameter(&self) -> Option<f64> {
        match self {
            MapSpec::LinearTwoPeriodic { .. } => None,
            MapSpec::Logistic { lambda } => Some(*lambda),
            MapSpec::Cubic { beta } | MapSpec::Gauss { beta } => Some(*beta),
            MapSpec::Expression { parameter, .. } => Some(*parameter),
        }
    }

    /// A copy of the map with its scalar parameter replaced; `None` for the
    /// two-periodic linear map.
    pub fn with_parameter(&self, p: f64) -> Option<MapSpec> {
        match self {
            MapSpec::LinearTwoPeriodic { .. } => None,
            MapSpec::Logistic { .. } => Some(MapSpec::Logistic { lambda: p }),
            MapSpec::Cubic { .. } => Some(MapSpec::Cubic { beta: p }),
            MapSpec::Gauss { .. } => Some(MapSpec::Gauss { beta: p }),
            MapSpec::Expression {
                ast,
                parameter_name,
                ..
            } => Some(MapSpec::Expression {
                ast: ast.clone(),
                parameter_name: parameter_name.clone(),
                parameter: p,
            }),
        }
    }

    /// f(x) at the given time parity.
    pub fn eval(&self, x: f64, parity: Parity) -> Result<f64, EvalError> {
        match self {
            MapSpec::LinearTwoPeriodic { a, b } => Ok(match parity {
                Parity::Even => a * x,
                Parity::Odd => b * x,
            }),
            MapSpec::Logistic { lambda } => Ok(lambda * x * (1.0 - x)),
            MapSpec::Cubic { beta } => Ok(beta * x * (6.0 - x * x)),
            MapSpec::Gauss { beta } => Ok((-7.5 * x * x).exp() + beta),
            MapSpec::Expression { ast, parameter, .. } => expr::eval(ast, x, *parameter),
        }
    }

    /// (f(x), f'(x)) at the given time parity; derivatives of the builtin
    /// families are closed-form, expressions use forward-mode rules.
    pub fn eval_with_derivative(
        &self,
        x: f64,
        parity: Parity,
    ) -> Result<DualValue, EvalError> {
        match self {
            MapSpec::LinearTwoPeriodic { a, b } => {
                let c = match parity {
                    Parity::Even => *a,
                    Parity::Odd => *b,
                };
                Ok(DualValue {
                    value: c * x,
                    derivative: c,
                })
            }
            MapSpec::Logistic { lambda } => Ok(DualValue {
                value: lambda * x * (1.0 - x),
                derivative: lambda * (1.0 - 2.0 * x),
            }),
            MapSpec::Cubic { beta } => Ok(DualValue {
                value: beta * x * (6.0 - x * x),
                derivative: beta * (6.0 - 3.0 * x * x),
            }),
            MapSpec::Gauss { beta } => {
                let e = (-7.5 * x * x).exp();
                Ok(DualValue {
                    value: e + beta,
                    derivative: -15.0 * x * e,
                })
            }
            MapSpec::Expression { ast, parameter, .. } => {
                expr::eval_dual(ast, x, *parameter)
            }
        }
    }
}
