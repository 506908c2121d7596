//! Property tests for the exact scalar field: field axioms, canonical-form
//! stability, text round-trips and agreement with rational evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qboson_core::scalars::{parse_scalar, QRat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn arb_qrat() -> impl Strategy<Value = QRat> {
    // sums of signed monomials c * q^(k/2), occasionally divided
    let term = (-4i64..=4, -6i64..=6, prop::bool::ANY).prop_map(|(c, k, half)| {
        let den = if half { 2 } else { 1 };
        &QRat::from_int(c) * &QRat::q_frac_pow(k, den)
    });
    let sum = prop::collection::vec(term, 1..5)
        .prop_map(|ts| ts.iter().fold(QRat::zero(), |acc, t| &acc + t));
    (sum.clone(), sum).prop_map(|(a, b)| {
        if b.is_zero() {
            a
        } else {
            a.div(&b).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &QRat::zero(), a.clone());
        prop_assert_eq!(&a * &QRat::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_invariants(a in arb_qrat()) {
        // denominator has positive leading coefficient and is coprime to the
        // numerator; zero is 0/1
        use num_traits::Signed;
        prop_assert!(!a.denominator().leading().is_negative());
        if a.is_zero() {
            prop_assert!(a.denominator().is_single_term());
            prop_assert_eq!(a.denominator().degree(), Some(0));
        }
        let g = qboson_core::scalars::IntPoly::gcd(a.numerator(), a.denominator());
        prop_assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn text_round_trip(a in arb_qrat()) {
        let s = a.to_string();
        let back = parse_scalar(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

// A small expression interpreter evaluated two ways: symbolically in the
// field, and numerically at a rational point. Division by a vanishing
// denominator skips the sample.
#[derive(Clone, Debug)]
enum Node {
    Int(i64),
    QPow(i64),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
}

fn random_node(rng: &mut StdRng, depth: usize) -> Node {
    if depth == 0 || rng.random_bool(0.3) {
        if rng.random_bool(0.5) {
            Node::Int(rng.random_range(-9..=9))
        } else {
            Node::QPow(rng.random_range(-5..=5))
        }
    } else {
        let a = Box::new(random_node(rng, depth - 1));
        let b = Box::new(random_node(rng, depth - 1));
        match rng.random_range(0..4) {
            0 => Node::Add(a, b),
            1 => Node::Sub(a, b),
            2 => Node::Mul(a, b),
            _ => Node::Div(a, b),
        }
    }
}

fn eval_symbolic(n: &Node) -> Option<QRat> {
    Some(match n {
        Node::Int(v) => QRat::from_int(*v),
        Node::QPow(k) => QRat::q_pow(*k),
        Node::Add(a, b) => &eval_symbolic(a)? + &eval_symbolic(b)?,
        Node::Sub(a, b) => &eval_symbolic(a)? - &eval_symbolic(b)?,
        Node::Mul(a, b) => &eval_symbolic(a)? * &eval_symbolic(b)?,
        Node::Div(a, b) => eval_symbolic(a)?.div(&eval_symbolic(b)?).ok()?,
    })
}

fn eval_numeric(n: &Node, q: &BigRational) -> Option<BigRational> {
    Some(match n {
        Node::Int(v) => BigRational::from_integer(BigInt::from(*v)),
        Node::QPow(k) => {
            if *k >= 0 {
                num_traits::pow::pow(q.clone(), *k as usize)
            } else {
                let p = num_traits::pow::pow(q.clone(), (-k) as usize);
                BigRational::from_integer(BigInt::from(1)) / p
            }
        }
        Node::Add(a, b) => eval_numeric(a, q)? + eval_numeric(b, q)?,
        Node::Sub(a, b) => eval_numeric(a, q)? - eval_numeric(b, q)?,
        Node::Mul(a, b) => eval_numeric(a, q)? * eval_numeric(b, q)?,
        Node::Div(a, b) => {
            use num_traits::Zero;
            let d = eval_numeric(b, q)?;
            if d.is_zero() {
                return None;
            }
            eval_numeric(a, q)? / d
        }
    })
}

#[test]
fn symbolic_matches_numeric_evaluation() {
    let mut rng = StdRng::seed_from_u64(99);
    let points: Vec<BigRational> = vec![
        BigRational::new(BigInt::from(2), BigInt::from(1)),
        BigRational::new(BigInt::from(3), BigInt::from(5)),
        BigRational::new(BigInt::from(-7), BigInt::from(4)),
    ];
    let mut checked = 0;
    while checked < 100 {
        let node = random_node(&mut rng, 4);
        let Some(sym) = eval_symbolic(&node) else {
            continue;
        };
        let mut used = false;
        for pt in &points {
            let Some(num) = eval_numeric(&node, pt) else {
                continue;
            };
            let Some(sym_at) = sym.eval_at_q(pt) else {
                continue;
            };
            assert_eq!(sym_at, num);
            used = true;
        }
        if used {
            checked += 1;
        }
    }
}
