//! Evaluation of parsed expressions against an algebra context.

use crate::expr::{CallKind, Expr, ExprKind, GenCase, GenKind};
use qboson_core::algebra::{
    antipode, braided_antipode, braided_delta0, delta, AlgebraTag, Element, Monomial,
    TensorElement,
};
use qboson_core::action::{
    act_heisenberg, schrodinger_act, uq_act_on_wq, UqLift,
};
use qboson_core::category_o::{ModVec, RawModule};
use qboson_core::doubles::{dphi_mul, hphi_mul, DoubleElement, DoubleKind};
use qboson_core::lattice::{CartanData, Weight};
use qboson_core::pairing::{BrickPair, PairingSession};
use qboson_core::scalars::QRat;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
pub struct EvalError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
    pub subexpr: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} in `{}`",
            self.line, self.col, self.msg, self.subexpr
        )
    }
}

impl std::error::Error for EvalError {}

fn err(at: &Expr, msg: impl Into<String>) -> EvalError {
    EvalError {
        line: at.line,
        col: at.col,
        msg: msg.into(),
        subexpr: at.to_string(),
    }
}

/// Which algebra the expression lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraCtx {
    Element(AlgebraTag),
    /// Quantum double over the tilde bricks (`E`, `F`, `K`, `K'`).
    Dphi,
    /// Heisenberg double over the q-Boson bricks (`e`, `f`, `t`, `t'`).
    Hphi,
    /// Quantum-group generators lifted into the double over the q-Boson
    /// bricks; this is the acting algebra of `act(u; x)`.
    UqLift,
}

impl AlgebraCtx {
    pub fn parse_name(name: &str) -> Option<AlgebraCtx> {
        match name {
            "dphi" => Some(AlgebraCtx::Dphi),
            "hphi" => Some(AlgebraCtx::Hphi),
            other => AlgebraTag::parse_name(other).map(AlgebraCtx::Element),
        }
    }

    pub fn brick_pair(self) -> BrickPair {
        match self {
            AlgebraCtx::Dphi => BrickPair::Tilde,
            AlgebraCtx::Hphi | AlgebraCtx::UqLift => BrickPair::Boson,
            AlgebraCtx::Element(tag) => match tag {
                AlgebraTag::UqPlusTilde | AlgebraTag::UqMinusTilde | AlgebraTag::Uq => {
                    BrickPair::Tilde
                }
                _ => BrickPair::Boson,
            },
        }
    }
}

pub struct Context {
    pub cartan: Arc<CartanData>,
    pub algebra: AlgebraCtx,
    pub session: PairingSession,
    pub braided: bool,
    pub module: Option<RawModule>,
}

impl Context {
    pub fn new(cartan: Arc<CartanData>, algebra: AlgebraCtx) -> Context {
        let session = PairingSession::new(cartan.clone(), algebra.brick_pair());
        Context {
            cartan,
            algebra,
            session,
            braided: false,
            module: None,
        }
    }

    fn with_algebra(&self, algebra: AlgebraCtx) -> Context {
        let mut c = Context::new(self.cartan.clone(), algebra);
        c.braided = self.braided;
        c.module = self.module.clone();
        c
    }
}

#[derive(Clone)]
pub enum Value {
    Scalar(QRat),
    Elem(Element),
    Tensor(TensorElement),
    Double(DoubleElement),
    Vector(ModVec),
    Comodule(BTreeMap<Monomial, ModVec>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Elem(_) => "element",
            Value::Tensor(_) => "tensor",
            Value::Double(_) => "double",
            Value::Vector(_) => "vector",
            Value::Comodule(_) => "comodule",
        }
    }
}

pub fn eval(ctx: &Context, expr: &Expr) -> Result<Value, EvalError> {
    match &expr.kind {
        ExprKind::Int(n) => Ok(Value::Scalar(QRat::from_bigint(n.clone()))),
        ExprKind::QVar => Ok(Value::Scalar(QRat::q())),
        ExprKind::Gen { kind, case } => eval_generator(ctx, expr, kind, *case),
        ExprKind::VecRef { coords, index } => {
            let module = ctx
                .module
                .as_ref()
                .ok_or_else(|| err(expr, "module vectors need a module file"))?;
            let cell = Weight(coords.clone());
            if cell.rank() != ctx.cartan.rank() {
                return Err(err(expr, "weight rank mismatch"));
            }
            let dim = module.dim(&cell);
            if *index >= dim {
                return Err(err(
                    expr,
                    format!("cell {cell} has dimension {dim}"),
                ));
            }
            Ok(Value::Vector(ModVec::basis(cell, *index)))
        }
        ExprKind::Neg(x) => match eval(ctx, x)? {
            Value::Scalar(v) => Ok(Value::Scalar(-&v)),
            Value::Elem(v) => Ok(Value::Elem(-&v)),
            Value::Tensor(v) => Ok(Value::Tensor(v.scaled(&-&QRat::one()))),
            Value::Double(v) => Ok(Value::Double(v.scaled(&-&QRat::one()))),
            Value::Vector(v) => Ok(Value::Vector(v.scaled(&-&QRat::one()))),
            Value::Comodule(_) => Err(err(expr, "cannot negate a comodule expansion")),
        },
        ExprKind::Add(a, b) => combine(ctx, expr, a, b, false),
        ExprKind::Sub(a, b) => combine(ctx, expr, a, b, true),
        ExprKind::Mul(a, b) => multiply(ctx, expr, a, b),
        ExprKind::Div(a, b) => {
            let num = eval(ctx, a)?;
            let den = eval(ctx, b)?;
            let Value::Scalar(d) = den else {
                return Err(err(b, "division only by scalars"));
            };
            let inv = d.inv().map_err(|_| err(b, "division by zero"))?;
            scale_value(num, &inv).map_err(|m| err(expr, m))
        }
        ExprKind::Pow { base, num, den } => {
            if *den != 1 {
                // fractional powers only on the formal variable
                if matches!(base.kind, ExprKind::QVar) {
                    return Ok(Value::Scalar(QRat::q_frac_pow(*num, *den)));
                }
                return Err(err(expr, "fractional exponent is only allowed on q"));
            }
            match eval(ctx, base)? {
                Value::Scalar(v) => Ok(Value::Scalar(
                    v.pow(*num).map_err(|_| err(expr, "zero to a negative power"))?,
                )),
                Value::Elem(v) => {
                    let n = u32::try_from(*num)
                        .map_err(|_| err(expr, "element powers must be nonnegative"))?;
                    Ok(Value::Elem(v.pow(n)))
                }
                Value::Double(v) => {
                    let n = u32::try_from(*num)
                        .map_err(|_| err(expr, "powers must be nonnegative"))?;
                    let mut acc = DoubleElement::one(v.kind(), v.brick_pair(), ctx.cartan.clone());
                    for _ in 0..n {
                        acc = double_mul(ctx, expr, &acc, &v)?;
                    }
                    Ok(Value::Double(acc))
                }
                other => Err(err(expr, format!("cannot raise a {}", other.type_name()))),
            }
        }
        ExprKind::Tensor(a, b) => {
            let left = eval(ctx, a)?;
            let right = eval(ctx, b)?;
            match (left, right) {
                (Value::Elem(x), Value::Elem(y)) => {
                    Ok(Value::Tensor(TensorElement::tensor(&[&x, &y])))
                }
                (l, r) => Err(err(
                    expr,
                    format!("tensor of {} and {}", l.type_name(), r.type_name()),
                )),
            }
        }
        ExprKind::Call(kind, args) => eval_call(ctx, expr, kind, args),
    }
}

fn eval_generator(
    ctx: &Context,
    expr: &Expr,
    kind: &GenKind,
    case: GenCase,
) -> Result<Value, EvalError> {
    let cartan = ctx.cartan.clone();
    let check_index = |i: usize| -> Result<(), EvalError> {
        if i >= cartan.rank() {
            Err(err(expr, format!("index out of range for rank {}", cartan.rank())))
        } else {
            Ok(())
        }
    };
    match ctx.algebra {
        AlgebraCtx::Element(tag) => {
            let value = match kind {
                GenKind::Raise(i) => {
                    check_index(*i)?;
                    let want_upper = tag.e_name() == "E";
                    if (case == GenCase::Upper) != want_upper {
                        return Err(err(expr, format!("this algebra spells the raising letter '{}'", tag.e_name())));
                    }
                    Element::e_letter(tag, cartan, *i)
                }
                GenKind::Lower(i) => {
                    check_index(*i)?;
                    let want_upper = tag.f_name() == "F";
                    if (case == GenCase::Upper) != want_upper {
                        return Err(err(expr, format!("this algebra spells the lowering letter '{}'", tag.f_name())));
                    }
                    Element::f_letter(tag, cartan, *i)
                }
                GenKind::Torus { coords, primed } => {
                    let name = tag.torus_name();
                    let want_upper = name.starts_with('K');
                    let want_primed = name.ends_with('\'');
                    if (case == GenCase::Upper) != want_upper || *primed != want_primed {
                        return Err(err(expr, format!("this algebra spells the torus '{name}'")));
                    }
                    if coords.len() != cartan.rank() {
                        return Err(err(expr, "weight rank mismatch"));
                    }
                    Element::torus(tag, cartan, Weight(coords.clone()))
                }
            };
            value.map(Value::Elem).map_err(|e| err(expr, e.to_string()))
        }
        AlgebraCtx::Dphi => {
            let mk = |r: Result<DoubleElement, qboson_core::doubles::DoubleError>| {
                r.map(Value::Double).map_err(|e| err(expr, e.to_string()))
            };
            match kind {
                GenKind::Raise(i) => {
                    check_index(*i)?;
                    if case != GenCase::Upper {
                        return Err(err(expr, "the quantum double spells raising letters 'E'"));
                    }
                    let e = Element::e_letter(AlgebraTag::UqPlusTilde, cartan, *i)
                        .map_err(|e| err(expr, e.to_string()))?;
                    mk(DoubleElement::embed_plus(DoubleKind::Quantum, BrickPair::Tilde, &e))
                }
                GenKind::Lower(i) => {
                    check_index(*i)?;
                    if case != GenCase::Upper {
                        return Err(err(expr, "the quantum double spells lowering letters 'F'"));
                    }
                    let f = Element::f_letter(AlgebraTag::UqMinusTilde, cartan, *i)
                        .map_err(|e| err(expr, e.to_string()))?;
                    mk(DoubleElement::embed_minus(DoubleKind::Quantum, BrickPair::Tilde, &f))
                }
                GenKind::Torus { coords, primed } => {
                    if case != GenCase::Upper {
                        return Err(err(expr, "the quantum double spells the torus 'K'"));
                    }
                    if coords.len() != cartan.rank() {
                        return Err(err(expr, "weight rank mismatch"));
                    }
                    let w = Weight(coords.clone());
                    if *primed {
                        let t = Element::torus(AlgebraTag::UqMinusTilde, cartan, w)
                            .map_err(|e| err(expr, e.to_string()))?;
                        mk(DoubleElement::embed_minus(DoubleKind::Quantum, BrickPair::Tilde, &t))
                    } else {
                        let t = Element::torus(AlgebraTag::UqPlusTilde, cartan, w)
                            .map_err(|e| err(expr, e.to_string()))?;
                        mk(DoubleElement::embed_plus(DoubleKind::Quantum, BrickPair::Tilde, &t))
                    }
                }
            }
        }
        AlgebraCtx::Hphi => {
            let mk = |r: Result<DoubleElement, qboson_core::doubles::DoubleError>| {
                r.map(Value::Double).map_err(|e| err(expr, e.to_string()))
            };
            match kind {
                GenKind::Raise(i) => {
                    check_index(*i)?;
                    if case != GenCase::Lower {
                        return Err(err(expr, "the Heisenberg double spells raising letters 'e'"));
                    }
                    let e = Element::e_letter(AlgebraTag::BosonPlus, cartan, *i)
                        .map_err(|e| err(expr, e.to_string()))?;
                    mk(DoubleElement::embed_plus(DoubleKind::Heisenberg, BrickPair::Boson, &e))
                }
                GenKind::Lower(i) => {
                    check_index(*i)?;
                    if case != GenCase::Lower {
                        return Err(err(expr, "the Heisenberg double spells lowering letters 'f'"));
                    }
                    let f = Element::f_letter(AlgebraTag::BosonMinus, cartan, *i)
                        .map_err(|e| err(expr, e.to_string()))?;
                    mk(DoubleElement::embed_minus(DoubleKind::Heisenberg, BrickPair::Boson, &f))
                }
                GenKind::Torus { coords, primed } => {
                    if case != GenCase::Lower {
                        return Err(err(expr, "the Heisenberg double spells the torus 't'"));
                    }
                    if coords.len() != cartan.rank() {
                        return Err(err(expr, "weight rank mismatch"));
                    }
                    let w = Weight(coords.clone());
                    if *primed {
                        let t = Element::torus(AlgebraTag::BosonMinus, cartan, w)
                            .map_err(|e| err(expr, e.to_string()))?;
                        mk(DoubleElement::embed_minus(DoubleKind::Heisenberg, BrickPair::Boson, &t))
                    } else {
                        let t = Element::torus(AlgebraTag::BosonPlus, cartan, w)
                            .map_err(|e| err(expr, e.to_string()))?;
                        mk(DoubleElement::embed_plus(DoubleKind::Heisenberg, BrickPair::Boson, &t))
                    }
                }
            }
        }
        AlgebraCtx::UqLift => {
            let mk = |r: Result<DoubleElement, qboson_core::action::ActionError>| {
                r.map(Value::Double).map_err(|e| err(expr, e.to_string()))
            };
            match kind {
                GenKind::Raise(i) => {
                    check_index(*i)?;
                    if case != GenCase::Upper {
                        return Err(err(expr, "acting generators are spelled 'E', 'F', 'K', 'K''"));
                    }
                    mk(UqLift::e(&ctx.session, *i))
                }
                GenKind::Lower(i) => {
                    check_index(*i)?;
                    if case != GenCase::Upper {
                        return Err(err(expr, "acting generators are spelled 'E', 'F', 'K', 'K''"));
                    }
                    mk(UqLift::f(&ctx.session, *i))
                }
                GenKind::Torus { coords, primed } => {
                    if case != GenCase::Upper {
                        return Err(err(expr, "acting generators are spelled 'E', 'F', 'K', 'K''"));
                    }
                    if coords.len() != cartan.rank() {
                        return Err(err(expr, "weight rank mismatch"));
                    }
                    let w = Weight(coords.clone());
                    if *primed {
                        mk(UqLift::k_primed(&ctx.session, &w))
                    } else {
                        mk(UqLift::k(&ctx.session, &w))
                    }
                }
            }
        }
    }
}

fn combine(
    ctx: &Context,
    expr: &Expr,
    a: &Expr,
    b: &Expr,
    subtract: bool,
) -> Result<Value, EvalError> {
    let left = eval(ctx, a)?;
    let right = eval(ctx, b)?;
    let right = if subtract {
        match right {
            Value::Scalar(v) => Value::Scalar(-&v),
            Value::Elem(v) => Value::Elem(-&v),
            Value::Tensor(v) => Value::Tensor(v.scaled(&-&QRat::one())),
            Value::Double(v) => Value::Double(v.scaled(&-&QRat::one())),
            Value::Vector(v) => Value::Vector(v.scaled(&-&QRat::one())),
            Value::Comodule(_) => return Err(err(b, "cannot subtract a comodule expansion")),
        }
    } else {
        right
    };
    match (left, right) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
        (Value::Elem(x), Value::Elem(y)) => {
            if x.tag() != y.tag() {
                return Err(err(expr, "algebra tag mismatch in sum"));
            }
            Ok(Value::Elem(&x + &y))
        }
        (Value::Scalar(x), Value::Elem(y)) => {
            let one = Element::scalar(y.tag(), ctx.cartan.clone(), x);
            Ok(Value::Elem(&one + &y))
        }
        (Value::Elem(x), Value::Scalar(y)) => {
            let one = Element::scalar(x.tag(), ctx.cartan.clone(), y);
            Ok(Value::Elem(&x + &one))
        }
        (Value::Tensor(x), Value::Tensor(y)) => {
            if x.tags() != y.tags() {
                return Err(err(expr, "tensor leg mismatch in sum"));
            }
            Ok(Value::Tensor(x.add(&y)))
        }
        (Value::Double(x), Value::Double(y)) => {
            if x.kind() != y.kind() {
                return Err(err(expr, "double kind mismatch in sum"));
            }
            Ok(Value::Double(x.add(&y)))
        }
        (Value::Scalar(x), Value::Double(y)) => {
            let one =
                DoubleElement::one(y.kind(), y.brick_pair(), ctx.cartan.clone()).scaled(&x);
            Ok(Value::Double(one.add(&y)))
        }
        (Value::Double(x), Value::Scalar(y)) => {
            let one =
                DoubleElement::one(x.kind(), x.brick_pair(), ctx.cartan.clone()).scaled(&y);
            Ok(Value::Double(x.add(&one)))
        }
        (Value::Vector(x), Value::Vector(y)) => Ok(Value::Vector(x.add(&y))),
        (l, r) => Err(err(
            expr,
            format!("cannot add {} and {}", l.type_name(), r.type_name()),
        )),
    }
}

fn scale_value(v: Value, c: &QRat) -> Result<Value, String> {
    Ok(match v {
        Value::Scalar(x) => Value::Scalar(&x * c),
        Value::Elem(x) => Value::Elem(x.scaled(c)),
        Value::Tensor(x) => Value::Tensor(x.scaled(c)),
        Value::Double(x) => Value::Double(x.scaled(c)),
        Value::Vector(x) => Value::Vector(x.scaled(c)),
        Value::Comodule(_) => return Err("cannot scale a comodule expansion".to_string()),
    })
}

fn double_mul(
    ctx: &Context,
    expr: &Expr,
    x: &DoubleElement,
    y: &DoubleElement,
) -> Result<DoubleElement, EvalError> {
    let r = match x.kind() {
        DoubleKind::Quantum => dphi_mul(&ctx.session, x, y),
        DoubleKind::Heisenberg => hphi_mul(&ctx.session, x, y),
    };
    r.map_err(|e| err(expr, e.to_string()))
}

fn multiply(ctx: &Context, expr: &Expr, a: &Expr, b: &Expr) -> Result<Value, EvalError> {
    let left = eval(ctx, a)?;
    let right = eval(ctx, b)?;
    match (left, right) {
        (Value::Scalar(x), r) => scale_value(r, &x).map_err(|m| err(expr, m)),
        (l, Value::Scalar(y)) => scale_value(l, &y).map_err(|m| err(expr, m)),
        (Value::Elem(x), Value::Elem(y)) => x
            .checked_mul(&y)
            .map(Value::Elem)
            .map_err(|e| err(expr, e.to_string())),
        (Value::Double(x), Value::Double(y)) => {
            if x.kind() != y.kind() {
                return Err(err(expr, "double kind mismatch in product"));
            }
            Ok(Value::Double(double_mul(ctx, expr, &x, &y)?))
        }
        (Value::Elem(x), Value::Vector(v)) => {
            let module = ctx
                .module
                .as_ref()
                .ok_or_else(|| err(expr, "module vectors need a module file"))?;
            apply_element(module, &x, &v).map(Value::Vector).map_err(|m| err(expr, m))
        }
        (l, r) => Err(err(
            expr,
            format!("cannot multiply {} by {}", l.type_name(), r.type_name()),
        )),
    }
}

// the mixed action of a torus-free Weyl element on a module vector
fn apply_element(module: &RawModule, x: &Element, v: &ModVec) -> Result<ModVec, String> {
    let mut out = ModVec::zero();
    for (mono, c) in x.terms() {
        if !mono.torus.is_zero() {
            return Err("only torus-free elements act on module vectors".to_string());
        }
        let mut cur = v.scaled(c);
        for &i in mono.e_word.iter().rev() {
            cur = module.act_e(i as usize, &cur);
        }
        for &i in mono.f_word.iter().rev() {
            cur = module.act_f(i as usize, &cur).map_err(|e| e.to_string())?;
        }
        out = out.add(&cur);
    }
    Ok(out)
}

fn eval_call(
    ctx: &Context,
    expr: &Expr,
    kind: &CallKind,
    args: &[Expr],
) -> Result<Value, EvalError> {
    match kind {
        CallKind::Pair => {
            let pair = ctx.algebra.brick_pair();
            let plus_tag = match pair {
                BrickPair::Tilde => AlgebraTag::UqPlusTilde,
                BrickPair::Boson => AlgebraTag::PosPart,
            };
            let minus_tag = match pair {
                BrickPair::Tilde => AlgebraTag::UqMinusTilde,
                BrickPair::Boson => AlgebraTag::NegPart,
            };
            let a = eval(&ctx.with_algebra(AlgebraCtx::Element(plus_tag)), &args[0])?;
            let b = eval(&ctx.with_algebra(AlgebraCtx::Element(minus_tag)), &args[1])?;
            let (Value::Elem(a), Value::Elem(b)) = (a, b) else {
                return Err(err(expr, "pair takes two brick elements"));
            };
            ctx.session
                .pair(&a, &b)
                .map(Value::Scalar)
                .map_err(|e| err(expr, e.to_string()))
        }
        CallKind::Delta => {
            let x = eval(ctx, &args[0])?;
            let Value::Elem(x) = x else {
                return Err(err(expr, "delta takes an element"));
            };
            if ctx.braided {
                let x = x
                    .retagged(AlgebraTag::NegPart)
                    .map_err(|e| err(expr, e.to_string()))?;
                braided_delta0(&x)
                    .map(Value::Tensor)
                    .map_err(|e| err(expr, e.to_string()))
            } else {
                delta(&x)
                    .map(Value::Tensor)
                    .map_err(|e| err(expr, e.to_string()))
            }
        }
        CallKind::Antipode => {
            let x = eval(ctx, &args[0])?;
            let Value::Elem(x) = x else {
                return Err(err(expr, "S takes an element"));
            };
            if ctx.braided {
                let x = x
                    .retagged(AlgebraTag::NegPart)
                    .map_err(|e| err(expr, e.to_string()))?;
                braided_antipode(&x)
                    .map(Value::Elem)
                    .map_err(|e| err(expr, e.to_string()))
            } else {
                antipode(&x)
                    .map(Value::Elem)
                    .map_err(|e| err(expr, e.to_string()))
            }
        }
        CallKind::Act => {
            // the acting side always reads quantum-group generators
            let boson = Context::new(ctx.cartan.clone(), AlgebraCtx::UqLift);
            let u = eval(&boson, &args[0])?;
            let Value::Double(u) = u else {
                return Err(err(expr, "the acting argument must be a double element"));
            };
            let x = eval(ctx, &args[1])?;
            match x {
                Value::Elem(x) => {
                    let res = match x.tag() {
                        AlgebraTag::Wq => uq_act_on_wq(&boson.session, &u, &x),
                        AlgebraTag::PosPart | AlgebraTag::NegPart
                        | AlgebraTag::BosonPlus | AlgebraTag::BosonMinus => {
                            schrodinger_act(&boson.session, &u, &x)
                        }
                        other => {
                            return Err(err(
                                expr,
                                format!("cannot act on elements tagged {other:?}"),
                            ))
                        }
                    };
                    res.map(Value::Elem).map_err(|e| err(expr, e.to_string()))
                }
                Value::Double(h) => act_heisenberg(&boson.session, &u, &h)
                    .map(Value::Double)
                    .map_err(|e| err(expr, e.to_string())),
                other => Err(err(
                    expr,
                    format!("cannot act on a {}", other.type_name()),
                )),
            }
        }
        CallKind::Project => {
            let module = ctx
                .module
                .as_ref()
                .ok_or_else(|| err(expr, "P needs a module file"))?;
            let v = eval(ctx, &args[0])?;
            let Value::Vector(v) = v else {
                return Err(err(expr, "P takes a module vector"));
            };
            module
                .projector(&ctx.session, &v)
                .map(Value::Vector)
                .map_err(|e| err(expr, e.to_string()))
        }
        CallKind::Rho => {
            let module = ctx
                .module
                .as_ref()
                .ok_or_else(|| err(expr, "rho needs a module file"))?;
            let v = eval(ctx, &args[0])?;
            let Value::Vector(v) = v else {
                return Err(err(expr, "rho takes a module vector"));
            };
            module
                .rho(&ctx.session, &v)
                .map(Value::Comodule)
                .map_err(|e| err(expr, e.to_string()))
        }
    }
}

/// Deterministic rendering of a value for command output.
pub fn render_value(v: &Value) -> String {
    match v {
        Value::Scalar(x) => x.to_string(),
        Value::Elem(x) => x.to_string(),
        Value::Tensor(x) => x.to_string(),
        Value::Double(x) => x.to_string(),
        Value::Vector(x) => render_vector(x),
        Value::Comodule(map) => {
            if map.is_empty() {
                return "0".to_string();
            }
            let parts: Vec<String> = map
                .iter()
                .map(|(mono, vec)| {
                    format!("{} (x) ({})", format_neg_monomial(mono), render_vector(vec))
                })
                .collect();
            parts.join(" + ")
        }
    }
}

fn format_neg_monomial(m: &Monomial) -> String {
    if m.f_word.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < m.f_word.len() {
        let mut run = 1;
        while k + run < m.f_word.len() && m.f_word[k + run] == m.f_word[k] {
            run += 1;
        }
        if run == 1 {
            parts.push(format!("f{}", m.f_word[k] + 1));
        } else {
            parts.push(format!("f{}^{}", m.f_word[k] + 1, run));
        }
        k += run;
    }
    parts.join("*")
}

pub fn render_vector(v: &ModVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for ((cell, idx), c) in v.entries() {
        let coeff = if c.is_one() {
            String::new()
        } else {
            let s = c.to_string();
            if s.contains(" + ") || s.contains(" - ") {
                format!("({s}) * ")
            } else {
                format!("{s} * ")
            }
        };
        parts.push(format!("{coeff}v{{{cell}}}[{idx}]"));
    }
    parts.join(" + ")
}
