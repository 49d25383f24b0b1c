//! Statement evaluator: static binding checks, builtin dispatch, and value
//! arithmetic. Evaluation is deterministic; outputs arrive in statement
//! order through a sink so the CLI can stream them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::bogomolov::{
    branch_gamma, branch_report, chi_sym_cubic, instability_check, InstabilityInput, Rank2Setup,
};
use crate::bundle::{jet1_line, BundleClass};
use crate::catalog;
use crate::discriminant::{
    classify, closed_form_degree, expected_degree, jet_route_degree, ramification_profile,
    ClosedFormMode,
};
use crate::graded::{GradedClass, Integrated, Rat, VarietyModel};
use crate::proj::ProjBundle;

use super::parser::{Expr, ExprKind, Script, Stmt};
use super::value::{ReportValue, Value};

/// Builtin function names, the complete evaluator surface.
pub const BUILTINS: [&str; 29] = [
    "P",
    "multiP",
    "line",
    "tangent",
    "cotangent",
    "dual",
    "dsum",
    "twist",
    "tensor",
    "sym",
    "segre",
    "c",
    "ctotal",
    "ch",
    "jet1",
    "projb",
    "xi",
    "pullback",
    "pushforward",
    "integral",
    "ram_profile",
    "disc_degree",
    "disc_degree_closed",
    "disc_degree_jet",
    "classify",
    "bog_gamma",
    "bog_branch",
    "bog_chi",
    "bog_check",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Script-validity error found before evaluation (exit code 2).
    Static {
        line: u32,
        column: u32,
        message: String,
    },
    /// Evaluation error (exit code 1).
    Runtime {
        line: u32,
        column: u32,
        message: String,
    },
    /// Failed assertion (exit code 3).
    Assertion {
        line: u32,
        column: u32,
        message: String,
    },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Static {
                line,
                column,
                message,
            } => write!(f, "script error at {line}:{column}: {message}"),
            EvalError::Runtime {
                line,
                column,
                message,
            } => write!(f, "runtime error at {line}:{column}: {message}"),
            EvalError::Assertion {
                line,
                column,
                message,
            } => write!(f, "assertion failed at {line}:{column}: {message}"),
        }
    }
}

impl std::error::Error for EvalError {}

/// One `print` result.
pub type Output = Value;

/// Evaluate a script, streaming each `print` value into the sink.
pub fn evaluate_with(script: &Script, mut sink: impl FnMut(Output)) -> Result<(), EvalError> {
    check_statics(script)?;
    let mut env: HashMap<String, Value> = HashMap::new();
    for stmt in &script.statements {
        match stmt {
            Stmt::Let { name, value, .. } => {
                let value = eval_expr(value, &env)?;
                env.insert(name.clone(), value);
            }
            Stmt::Print { value } => {
                sink(eval_expr(value, &env)?);
            }
            Stmt::Assert {
                lhs,
                rhs,
                negated,
                line,
                column,
            } => {
                let left = eval_expr(lhs, &env)?;
                let right = eval_expr(rhs, &env)?;
                let equal = values_equal(&left, &right).map_err(|message| EvalError::Runtime {
                    line: *line,
                    column: *column,
                    message,
                })?;
                let passed = if *negated { !equal } else { equal };
                if !passed {
                    let op = if *negated { "!=" } else { "==" };
                    return Err(EvalError::Assertion {
                        line: *line,
                        column: *column,
                        message: format!("`{}` {op} `{}`", left.render_text(), right.render_text()),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Evaluate a script, collecting the printed values.
pub fn evaluate(script: &Script) -> Result<Vec<Output>, EvalError> {
    let mut outputs = Vec::new();
    evaluate_with(script, |value| outputs.push(value))?;
    Ok(outputs)
}

/// Single-assignment and use-before-define checks, done before any
/// evaluation so failures are reported as script errors.
fn check_statics(script: &Script) -> Result<(), EvalError> {
    let mut defined: Vec<String> = Vec::new();
    let check_expr = |expr: &Expr, defined: &Vec<String>| -> Result<(), EvalError> {
        walk(expr, &mut |node| match &node.kind {
            ExprKind::Ident(name) => {
                if !defined.contains(name) {
                    Err(EvalError::Static {
                        line: node.line,
                        column: node.column,
                        message: format!("use of undefined identifier `{name}`"),
                    })
                } else {
                    Ok(())
                }
            }
            ExprKind::Call(name, _) => {
                if !BUILTINS.contains(&name.as_str()) {
                    Err(EvalError::Static {
                        line: node.line,
                        column: node.column,
                        message: format!("unknown function `{name}`"),
                    })
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        })
    };
    for stmt in &script.statements {
        match stmt {
            Stmt::Let {
                name,
                value,
                line,
                column,
            } => {
                check_expr(value, &defined)?;
                if defined.contains(name) {
                    return Err(EvalError::Static {
                        line: *line,
                        column: *column,
                        message: format!("`{name}` is already defined"),
                    });
                }
                if BUILTINS.contains(&name.as_str()) {
                    return Err(EvalError::Static {
                        line: *line,
                        column: *column,
                        message: format!("`{name}` shadows a builtin"),
                    });
                }
                defined.push(name.clone());
            }
            Stmt::Print { value } => check_expr(value, &defined)?,
            Stmt::Assert { lhs, rhs, .. } => {
                check_expr(lhs, &defined)?;
                check_expr(rhs, &defined)?;
            }
        }
    }
    Ok(())
}

fn walk(
    expr: &Expr,
    visit: &mut impl FnMut(&Expr) -> Result<(), EvalError>,
) -> Result<(), EvalError> {
    visit(expr)?;
    match &expr.kind {
        ExprKind::Call(_, args) => {
            for arg in args {
                walk(arg, visit)?;
            }
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
            walk(a, visit)?;
            walk(b, visit)?;
        }
        ExprKind::Pow(a, _) | ExprKind::Neg(a) | ExprKind::Paren(a) => walk(a, visit)?,
        ExprKind::IntLit(_) | ExprKind::Ident(_) | ExprKind::IntList(_) => {}
    }
    Ok(())
}

fn runtime(expr: &Expr, message: impl Into<String>) -> EvalError {
    EvalError::Runtime {
        line: expr.line,
        column: expr.column,
        message: message.into(),
    }
}

fn eval_expr(expr: &Expr, env: &HashMap<String, Value>) -> Result<Value, EvalError> {
    match &expr.kind {
        ExprKind::IntLit(v) => Ok(Value::Number(Rat::from_integer(v.clone()))),
        ExprKind::Ident(name) => Ok(env
            .get(name)
            .cloned()
            .expect("static check guarantees bindings")),
        ExprKind::IntList(values) => Ok(Value::Ints(values.clone())),
        ExprKind::Paren(inner) => eval_expr(inner, env),
        ExprKind::Neg(inner) => match eval_expr(inner, env)? {
            Value::Number(n) => Ok(Value::Number(-n)),
            Value::Class(c) => Ok(Value::Class(c.neg())),
            other => Err(runtime(
                expr,
                format!("cannot negate a {}", other.type_tag()),
            )),
        },
        ExprKind::Add(a, b) => arith(expr, env, a, b, "+"),
        ExprKind::Sub(a, b) => arith(expr, env, a, b, "-"),
        ExprKind::Mul(a, b) => arith(expr, env, a, b, "*"),
        ExprKind::Pow(base, exponent) => match eval_expr(base, env)? {
            Value::Number(n) => {
                let mut out = Rat::from_integer(BigInt::from(1));
                for _ in 0..*exponent {
                    out *= &n;
                }
                Ok(Value::Number(out))
            }
            Value::Class(c) => Ok(Value::Class(c.pow(*exponent))),
            other => Err(runtime(
                expr,
                format!("cannot raise a {} to a power", other.type_tag()),
            )),
        },
        ExprKind::Call(name, args) => {
            let mut values = Vec::with_capacity(args.len());
            for arg in args {
                values.push(eval_expr(arg, env)?);
            }
            call_builtin(expr, name, &values)
        }
    }
}

fn arith(
    expr: &Expr,
    env: &HashMap<String, Value>,
    a: &Expr,
    b: &Expr,
    op: &str,
) -> Result<Value, EvalError> {
    let left = eval_expr(a, env)?;
    let right = eval_expr(b, env)?;
    let incompatible = || {
        runtime(
            expr,
            format!(
                "cannot apply `{op}` to {} and {}",
                left.type_tag(),
                right.type_tag()
            ),
        )
    };
    match (&left, &right) {
        (Value::Number(x), Value::Number(y)) => Ok(Value::Number(match op {
            "+" => x + y,
            "-" => x - y,
            _ => x * y,
        })),
        (Value::Class(x), Value::Class(y)) => {
            let result = match op {
                "+" => x.add(y),
                "-" => x.sub(y),
                _ => x.mul(y),
            };
            result
                .map(Value::Class)
                .map_err(|e| runtime(expr, e.to_string()))
        }
        (Value::Number(x), Value::Class(y)) => {
            let constant = GradedClass::constant(y.model(), x.clone());
            let result = match op {
                "+" => constant.add(y),
                "-" => constant.sub(y),
                _ => constant.mul(y),
            };
            result
                .map(Value::Class)
                .map_err(|e| runtime(expr, e.to_string()))
        }
        (Value::Class(x), Value::Number(y)) => {
            let constant = GradedClass::constant(x.model(), y.clone());
            let result = match op {
                "+" => x.add(&constant),
                "-" => x.sub(&constant),
                _ => x.mul(&constant),
            };
            result
                .map(Value::Class)
                .map_err(|e| runtime(expr, e.to_string()))
        }
        _ => Err(incompatible()),
    }
}

/// Structural equality for `assert`; numbers compare against degree-0
/// classes, everything else compares within its own tag.
fn values_equal(a: &Value, b: &Value) -> Result<bool, String> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => Ok(x == y),
        (Value::Class(x), Value::Class(y)) => Ok(x == y),
        (Value::Number(x), Value::Class(y)) | (Value::Class(y), Value::Number(x)) => {
            Ok(&GradedClass::constant(y.model(), x.clone()) == y)
        }
        (Value::Bundle(x), Value::Bundle(y)) => Ok(x == y),
        (Value::Variety(x), Value::Variety(y)) => Ok(x == y),
        (Value::Proj(x), Value::Proj(y)) => Ok(x == y),
        (Value::Ints(x), Value::Ints(y)) => Ok(x == y),
        (Value::Report(x), Value::Report(y)) => Ok(x == y),
        _ => Err(format!(
            "cannot compare a {} with a {}",
            a.type_tag(),
            b.type_tag()
        )),
    }
}

// ---- builtin dispatch ----

struct Args<'a> {
    expr: &'a Expr,
    name: &'a str,
    values: &'a [Value],
}

impl<'a> Args<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, EvalError> {
        Err(runtime(
            self.expr,
            format!("{}: {}", self.name, message.into()),
        ))
    }

    fn count(&self, allowed: &[usize]) -> Result<(), EvalError> {
        if allowed.contains(&self.values.len()) {
            Ok(())
        } else {
            self.fail(format!(
                "expected {} argument(s), got {}",
                allowed
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" or "),
                self.values.len()
            ))
        }
    }

    fn value(&self, i: usize) -> &'a Value {
        &self.values[i]
    }

    fn variety(&self, i: usize) -> Result<&'a VarietyModel, EvalError> {
        match self.value(i) {
            Value::Variety(m) => Ok(m),
            other => self.fail(format!(
                "argument {} must be a variety, got {}",
                i + 1,
                other.type_tag()
            )),
        }
    }

    fn bundle(&self, i: usize) -> Result<&'a BundleClass, EvalError> {
        match self.value(i) {
            Value::Bundle(b) => Ok(b),
            other => self.fail(format!(
                "argument {} must be a bundle, got {}",
                i + 1,
                other.type_tag()
            )),
        }
    }

    fn class(&self, i: usize) -> Result<&'a GradedClass, EvalError> {
        match self.value(i) {
            Value::Class(c) => Ok(c),
            other => self.fail(format!(
                "argument {} must be a class, got {}",
                i + 1,
                other.type_tag()
            )),
        }
    }

    fn proj(&self, i: usize) -> Result<&'a ProjBundle, EvalError> {
        match self.value(i) {
            Value::Proj(p) => Ok(p),
            other => self.fail(format!(
                "argument {} must be a projective bundle, got {}",
                i + 1,
                other.type_tag()
            )),
        }
    }

    fn integer(&self, i: usize) -> Result<i64, EvalError> {
        match self.value(i) {
            Value::Number(n) if n.is_integer() => n
                .to_integer()
                .to_i64()
                .ok_or_else(|| runtime(self.expr, format!("{}: integer out of range", self.name))),
            other => self.fail(format!(
                "argument {} must be an integer, got {}",
                i + 1,
                other.type_tag()
            )),
        }
    }

    fn nonneg(&self, i: usize) -> Result<usize, EvalError> {
        let value = self.integer(i)?;
        if value < 0 {
            self.fail(format!("argument {} must be nonnegative", i + 1))
        } else {
            Ok(value as usize)
        }
    }

    fn int_list(&self, i: usize) -> Result<Vec<i64>, EvalError> {
        match self.value(i) {
            Value::Ints(values) => values
                .iter()
                .map(|v| {
                    v.to_i64().ok_or_else(|| {
                        runtime(self.expr, format!("{}: integer out of range", self.name))
                    })
                })
                .collect(),
            other => self.fail(format!(
                "argument {} must be an integer list, got {}",
                i + 1,
                other.type_tag()
            )),
        }
    }

    fn lift<T>(&self, result: crate::Result<T>) -> Result<T, EvalError> {
        result.map_err(|e| runtime(self.expr, format!("{}: {e}", self.name)))
    }
}

fn default_cotangent(args: &Args, bundle: &BundleClass) -> Result<BundleClass, EvalError> {
    catalog::cotangent(bundle.model()).map_err(|_| {
        runtime(
            args.expr,
            format!(
                "{}: the base is not a product of projective spaces; pass the cotangent bundle \
                 explicitly as the second argument",
                args.name
            ),
        )
    })
}

fn twist_class(args: &Args, bundle: &BundleClass, i: usize) -> Result<GradedClass, EvalError> {
    match args.value(i) {
        Value::Bundle(l) if l.rank() == 1 => Ok(l.total_chern().component(1)),
        Value::Bundle(l) => args.fail(format!(
            "twisting bundle must be a line bundle, got rank {}",
            l.rank()
        )),
        Value::Class(c) => Ok(c.clone()),
        Value::Number(n) if n.is_zero() => Ok(bundle.model().zero()),
        other => args.fail(format!(
            "argument {} must be a line bundle or degree-1 class, got {}",
            i + 1,
            other.type_tag()
        )),
    }
}

fn integrated_value(result: Integrated) -> Value {
    match result {
        Integrated::Number(n) => Value::Number(n),
        Integrated::Formal(class) => Value::Class(class),
    }
}

fn big(value: BigInt) -> Value {
    Value::Number(Rat::from_integer(value))
}

fn call_builtin(expr: &Expr, name: &str, values: &[Value]) -> Result<Value, EvalError> {
    let args = Args { expr, name, values };
    match name {
        "P" => {
            args.count(&[1])?;
            Ok(Value::Variety(catalog::projective_space(args.nonneg(0)?)))
        }
        "multiP" => {
            let factors: Vec<usize> = if values.len() == 1 && matches!(values[0], Value::Ints(_)) {
                args.int_list(0)?
                    .into_iter()
                    .map(|v| {
                        if v >= 1 {
                            Ok(v as usize)
                        } else {
                            args.fail::<usize>("factors must be at least 1".to_string())
                        }
                    })
                    .collect::<Result<_, _>>()?
            } else {
                args.count(&[1, 2, 3, 4])?;
                (0..values.len())
                    .map(|i| args.nonneg(i))
                    .collect::<Result<_, _>>()?
            };
            if factors.is_empty() || factors.iter().any(|&n| n < 1) {
                return args.fail("factors must be at least 1");
            }
            Ok(Value::Variety(catalog::multi_projective(&factors)))
        }
        "line" => {
            args.count(&[2])?;
            let model = args.variety(0)?;
            let degrees = args.int_list(1)?;
            Ok(Value::Bundle(
                args.lift(catalog::line_bundle(model, &degrees))?,
            ))
        }
        "tangent" => {
            args.count(&[1])?;
            Ok(Value::Bundle(
                args.lift(catalog::tangent(args.variety(0)?))?,
            ))
        }
        "cotangent" => {
            args.count(&[1])?;
            Ok(Value::Bundle(
                args.lift(catalog::cotangent(args.variety(0)?))?,
            ))
        }
        "dual" => {
            args.count(&[1])?;
            Ok(Value::Bundle(args.bundle(0)?.dual()))
        }
        "dsum" => {
            args.count(&[2])?;
            Ok(Value::Bundle(
                args.lift(args.bundle(0)?.direct_sum(args.bundle(1)?))?,
            ))
        }
        "twist" => {
            args.count(&[2])?;
            let bundle = args.bundle(0)?;
            let l = twist_class(&args, bundle, 1)?;
            Ok(Value::Bundle(args.lift(bundle.twist_by_line(&l))?))
        }
        "tensor" => {
            args.count(&[2])?;
            Ok(Value::Bundle(
                args.lift(args.bundle(0)?.tensor(args.bundle(1)?))?,
            ))
        }
        "sym" => {
            args.count(&[2])?;
            Ok(Value::Bundle(
                args.lift(args.bundle(0)?.sym_power(args.nonneg(1)?))?,
            ))
        }
        "segre" => {
            args.count(&[1])?;
            Ok(Value::Class(args.bundle(0)?.segre_total()))
        }
        "c" => {
            args.count(&[2])?;
            let k = args.nonneg(1)?;
            match args.value(0) {
                Value::Bundle(b) => Ok(Value::Class(b.chern(k))),
                Value::Class(cl) => Ok(Value::Class(cl.component(k))),
                other => args.fail(format!(
                    "argument 1 must be a bundle or class, got {}",
                    other.type_tag()
                )),
            }
        }
        "ctotal" => {
            args.count(&[1])?;
            Ok(Value::Class(args.bundle(0)?.total_chern().clone()))
        }
        "ch" => {
            args.count(&[1])?;
            Ok(Value::Class(
                args.bundle(0)?.chern_character().terms().clone(),
            ))
        }
        "jet1" => {
            args.count(&[2])?;
            Ok(Value::Bundle(
                args.lift(jet1_line(args.bundle(0)?, args.bundle(1)?))?,
            ))
        }
        "projb" => {
            args.count(&[2])?;
            let model = args.variety(0)?;
            let bundle = args.bundle(1)?;
            if bundle.model() != model {
                return args.fail("bundle does not live on the given variety");
            }
            Ok(Value::Proj(args.lift(ProjBundle::new(bundle))?))
        }
        "xi" => {
            args.count(&[1])?;
            Ok(Value::Class(args.proj(0)?.xi_class()))
        }
        "pullback" => {
            args.count(&[2])?;
            Ok(Value::Class(
                args.lift(args.proj(0)?.pullback(args.class(1)?))?,
            ))
        }
        "pushforward" => {
            args.count(&[2])?;
            Ok(Value::Class(
                args.lift(args.proj(0)?.pushforward_class(args.class(1)?))?,
            ))
        }
        "integral" => {
            args.count(&[2])?;
            match args.value(0) {
                Value::Variety(model) => Ok(integrated_value(
                    args.lift(model.integrate(args.class(1)?))?,
                )),
                Value::Proj(p) => Ok(integrated_value(
                    args.lift(p.integrate_total(args.class(1)?))?,
                )),
                other => args.fail(format!(
                    "argument 1 must be a variety or projective bundle, got {}",
                    other.type_tag()
                )),
            }
        }
        "ram_profile" => {
            args.count(&[3])?;
            let model = args.variety(0)?;
            let bundle = args.bundle(1)?;
            let omega = args.bundle(2)?;
            if bundle.model() != model {
                return args.fail("bundle does not live on the given variety");
            }
            let profile = args.lift(ramification_profile(bundle, omega))?;
            Ok(Value::Class(profile.as_extended_class()))
        }
        "disc_degree" => {
            args.count(&[1, 2])?;
            let bundle = args.bundle(0)?;
            let omega = if values.len() == 2 {
                args.bundle(1)?.clone()
            } else {
                default_cotangent(&args, bundle)?
            };
            Ok(big(args.lift(expected_degree(bundle, &omega))?))
        }
        "disc_degree_closed" => {
            args.count(&[1, 2])?;
            let bundle = args.bundle(0)?;
            let omega = if values.len() == 2 {
                args.bundle(1)?.clone()
            } else {
                default_cotangent(&args, bundle)?
            };
            let (e, n) = (bundle.rank(), bundle.model().dimension());
            let mode = if e == 1 {
                ClosedFormMode::RankOne
            } else if e == n {
                ClosedFormMode::RankEqualsDim
            } else if e + 1 == n {
                ClosedFormMode::RankDimMinusOne
            } else {
                return args.fail(format!("no closed form for rank {e} on dimension {n}"));
            };
            Ok(big(args.lift(closed_form_degree(bundle, &omega, mode))?))
        }
        "disc_degree_jet" => {
            args.count(&[1, 2])?;
            let bundle = args.bundle(0)?;
            let omega = if values.len() == 2 {
                args.bundle(1)?.clone()
            } else {
                default_cotangent(&args, bundle)?
            };
            Ok(big(args.lift(jet_route_degree(bundle, &omega))?))
        }
        "classify" => {
            args.count(&[1, 2])?;
            let bundle = args.bundle(0)?;
            let omega = if values.len() == 2 {
                args.bundle(1)?.clone()
            } else {
                default_cotangent(&args, bundle)?
            };
            let report = args.lift(classify(bundle, &omega))?;
            Ok(Value::Report(ReportValue::Discriminant(report)))
        }
        "bog_gamma" => {
            args.count(&[1])?;
            let setup = Rank2Setup::standard();
            let gamma = args.lift(branch_gamma(&setup, args.integer(0)?))?;
            Ok(Value::Class(gamma.to_total()))
        }
        "bog_branch" => {
            args.count(&[1])?;
            let setup = Rank2Setup::standard();
            let report = args.lift(branch_report(&setup, args.integer(0)?))?;
            Ok(Value::Report(ReportValue::Branch(report)))
        }
        "bog_chi" => {
            args.count(&[0])?;
            let setup = Rank2Setup::standard();
            Ok(Value::Report(ReportValue::Chi(
                args.lift(chi_sym_cubic(&setup))?,
            )))
        }
        "bog_check" => {
            args.count(&[7])?;
            let input = InstabilityInput {
                d_squared: args.integer(0)?,
                a_squared: args.integer(1)?,
                a_dot_d: args.integer(2)?,
                a_dot_h: args.integer(3)?,
                d_dot_h: args.integer(4)?,
                c2: args.integer(5)?,
                length_w: args.integer(6)?,
            };
            Ok(Value::Report(ReportValue::Instability(instability_check(
                &input,
            ))))
        }
        other => Err(runtime(expr, format!("unknown function `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rat_int;
    use crate::script::parser::parse;

    fn run(source: &str) -> Result<Vec<Value>, EvalError> {
        evaluate(&parse(source).unwrap())
    }

    #[test]
    fn twisted_tangent_demo() {
        let outputs =
            run("let X = P(2); print disc_degree(twist(tangent(X), line(X,[1])));").unwrap();
        assert_eq!(outputs, vec![Value::Number(rat_int(24))]);
    }

    #[test]
    fn defect_assertion_passes() {
        run("assert disc_degree(dsum(line(P(2),[1]), line(P(2),[1]))) == 0;").unwrap();
    }

    #[test]
    fn integral_of_total_chern() {
        let outputs = run("print integral(P(2), ctotal(tangent(P(2))));").unwrap();
        assert_eq!(outputs, vec![Value::Number(rat_int(3))]);
    }

    #[test]
    fn class_arithmetic_with_numbers() {
        let outputs =
            run("let X = P(2); let h = c(line(X,[1]), 1); print 1 + 2*h + h^2; print (1+h)^2 - 1;")
                .unwrap();
        assert_eq!(outputs[0].render_text(), "1 + 2*h + h^2");
        assert_eq!(outputs[1].render_text(), "2*h + h^2");
    }

    #[test]
    fn use_before_define_is_static() {
        let err = run("print disc_degree(E);").unwrap_err();
        assert!(matches!(err, EvalError::Static { .. }));
        let err = run("let x = 1; let x = 2;").unwrap_err();
        assert!(matches!(err, EvalError::Static { .. }));
        let err = run("print nosuch(1);").unwrap_err();
        assert!(matches!(err, EvalError::Static { .. }));
    }

    #[test]
    fn runtime_errors_carry_positions() {
        let err = run("print integral(P(2), tangent(P(2)));").unwrap_err();
        match err {
            EvalError::Runtime { line, column, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 7);
            }
            other => panic!("expected runtime error, got {other:?}"),
        }
    }

    #[test]
    fn assertion_failures_report_both_sides() {
        let err = run("assert 1 + 1 == 3;").unwrap_err();
        match err {
            EvalError::Assertion { message, .. } => {
                assert!(message.contains('2'));
                assert!(message.contains('3'));
            }
            other => panic!("expected assertion error, got {other:?}"),
        }
    }

    #[test]
    fn bogomolov_builtins() {
        let outputs = run("print bog_branch(3); print bog_check(0,0,-1,1,0,-1,0);").unwrap();
        match &outputs[0] {
            Value::Report(ReportValue::Branch(report)) => {
                assert_eq!(report.class.render(), "6*D - 4*A");
            }
            other => panic!("expected branch report, got {other:?}"),
        }
        match &outputs[1] {
            Value::Report(ReportValue::Instability(report)) => {
                assert!(report.bogomolov_inequality);
                assert!(report.destabilizer_valid);
                assert!(report.c2_consistent);
            }
            other => panic!("expected instability report, got {other:?}"),
        }
    }

    #[test]
    fn proj_builtins() {
        let outputs = run("let X = P(1); \
             let E = dsum(line(X,[0]), line(X,[1])); \
             let B = projb(X, E); \
             print xi(B)^2; \
             print integral(B, xi(B)^2); \
             print pushforward(B, pullback(B, c(line(X,[1]),1)) * xi(B));")
        .unwrap();
        assert_eq!(outputs[0].render_text(), "h*xi");
        assert_eq!(outputs[1], Value::Number(rat_int(1)));
        assert_eq!(outputs[2].render_text(), "h");
    }

    #[test]
    fn ram_profile_renders_in_zeta() {
        let outputs = run("let X = P(2); print ram_profile(X, tangent(X), cotangent(X));").unwrap();
        assert_eq!(outputs[0].render_text(), "2*zeta");
    }
}
