//! Schrödinger representations of the double on its two bricks, the induced
//! action and coaction on the Heisenberg double and the quantized Weyl
//! algebra, the Yetter-Drinfel'd braiding and the braided construction of the
//! Weyl algebra from its two halves.

use crate::algebra::{antipode, delta, AlgebraError, AlgebraTag, Element, Monomial, TensorElement};
use crate::doubles::{dphi_mul, DoubleElement, DoubleError, DoubleKind};
use crate::lattice::Weight;
use crate::pairing::{BrickPair, PairingError, PairingSession};
use crate::scalars::QRat;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("target must live in one of the session's bricks, found {0:?}")]
    WrongBrick(AlgebraTag),
    #[error("expected a torus-free element of the Weyl algebra, found {0:?}")]
    NotWeyl(AlgebraTag),
    #[error("action left the Weyl algebra; the input was not torus-free")]
    EscapedWeyl,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// Schrödinger action of a double element on a brick element.
///
/// On the plus brick: `(a (x) 1).x = sum a1 x S(a2)` and
/// `(1 (x) b).x = sum phi(x1, S(b)) x2`. On the minus brick the formulas are
/// mirrored: `(a (x) 1).y = sum phi(a, y1) y2`, `(1 (x) b).y = sum b1 y S(b2)`.
pub fn schrodinger_act(
    session: &PairingSession,
    u: &DoubleElement,
    x: &Element,
) -> Result<Element, ActionError> {
    let plus = session.plus_tag();
    let minus = session.minus_tag();
    let target = if x.tag() == plus || (session.brick_pair() == BrickPair::Boson && x.tag() == AlgebraTag::PosPart)
    {
        Side::Plus
    } else if x.tag() == minus
        || (session.brick_pair() == BrickPair::Boson && x.tag() == AlgebraTag::NegPart)
    {
        Side::Minus
    } else {
        return Err(ActionError::WrongBrick(x.tag()));
    };
    let x = match target {
        Side::Plus => x.retagged(plus)?,
        Side::Minus => x.retagged(minus)?,
    };
    let mut out = Element::zero(x.tag(), x.cartan().clone());
    for ((a, b), c) in u.terms() {
        let a_el = Element::from_monomial(plus, x.cartan().clone(), a.clone(), QRat::one());
        let b_el = Element::from_monomial(minus, x.cartan().clone(), b.clone(), QRat::one());
        let step = match target {
            Side::Plus => act_on_plus(session, &a_el, &b_el, &x)?,
            Side::Minus => act_on_minus(session, &a_el, &b_el, &x)?,
        };
        out = &out + &step.scaled(c);
    }
    Ok(out)
}

enum Side {
    Plus,
    Minus,
}

fn act_on_plus(
    session: &PairingSession,
    a: &Element,
    b: &Element,
    x: &Element,
) -> Result<Element, ActionError> {
    // first (1 (x) b): sum phi(x1, S(b)) x2
    let sb = antipode(b)?;
    let dx = delta(x)?;
    let mut mid = Element::zero(x.tag(), x.cartan().clone());
    for (legs, c) in dx.terms() {
        let v = session.pair(
            &Element::from_monomial(x.tag(), x.cartan().clone(), legs[0].clone(), QRat::one()),
            &sb,
        )?;
        if v.is_zero() {
            continue;
        }
        mid.add_term(legs[1].clone(), &v * c);
    }
    // then (a (x) 1): sum a1 mid S(a2)
    let da = delta(a)?;
    let mut out = Element::zero(x.tag(), x.cartan().clone());
    for (legs, c) in da.terms() {
        let a1 = Element::from_monomial(a.tag(), a.cartan().clone(), legs[0].clone(), QRat::one());
        let a2 = Element::from_monomial(a.tag(), a.cartan().clone(), legs[1].clone(), QRat::one());
        let piece = &(&a1 * &mid) * &antipode(&a2)?;
        out = &out + &piece.scaled(c);
    }
    Ok(out)
}

fn act_on_minus(
    session: &PairingSession,
    a: &Element,
    b: &Element,
    y: &Element,
) -> Result<Element, ActionError> {
    // first (1 (x) b): sum b1 y S(b2)
    let db = delta(b)?;
    let mut mid = Element::zero(y.tag(), y.cartan().clone());
    for (legs, c) in db.terms() {
        let b1 = Element::from_monomial(b.tag(), b.cartan().clone(), legs[0].clone(), QRat::one());
        let b2 = Element::from_monomial(b.tag(), b.cartan().clone(), legs[1].clone(), QRat::one());
        let piece = &(&b1 * y) * &antipode(&b2)?;
        mid = &mid + &piece.scaled(c);
    }
    // then (a (x) 1): sum phi(a, y1) y2
    let dm = delta(&mid)?;
    let mut out = Element::zero(y.tag(), y.cartan().clone());
    for (legs, c) in dm.terms() {
        let v = session.pair(
            a,
            &Element::from_monomial(y.tag(), y.cartan().clone(), legs[0].clone(), QRat::one()),
        )?;
        if v.is_zero() {
            continue;
        }
        out.add_term(legs[1].clone(), &v * c);
    }
    Ok(out)
}

/// Diagonal action of the double on the Heisenberg double:
/// `(a (x) b).(b' # a') = sum (a1 (x) b1).b' # (a2 (x) b2).a'`.
pub fn act_heisenberg(
    session: &PairingSession,
    u: &DoubleElement,
    h: &DoubleElement,
) -> Result<DoubleElement, ActionError> {
    let mut out = DoubleElement::zero(h.kind(), h.brick_pair(), h.cartan().clone());
    for (u1, u2, cu) in u.coproduct_legs()? {
        let u1d = double_from_legs(u, &u1);
        let u2d = double_from_legs(u, &u2);
        for ((ap, bp), ch) in h.terms() {
            let b_el = Element::from_monomial(
                session.minus_tag(),
                h.cartan().clone(),
                bp.clone(),
                QRat::one(),
            );
            let a_el = Element::from_monomial(
                session.plus_tag(),
                h.cartan().clone(),
                ap.clone(),
                QRat::one(),
            );
            let b_res = schrodinger_act(session, &u1d, &b_el)?;
            if b_res.is_zero() {
                continue;
            }
            let a_res = schrodinger_act(session, &u2d, &a_el)?;
            for (mb, cb) in b_res.terms() {
                for (ma, ca) in a_res.terms() {
                    out.add_term(ma.clone(), mb.clone(), &(&(&cu * ch) * cb) * ca);
                }
            }
        }
    }
    Ok(out)
}

fn double_from_legs(model: &DoubleElement, legs: &(Monomial, Monomial)) -> DoubleElement {
    let mut d = DoubleElement::zero(model.kind(), model.brick_pair(), model.cartan().clone());
    d.add_term(legs.0.clone(), legs.1.clone(), QRat::one());
    d
}

/// Lifts of the quantum-group generators into the double over the q-Boson
/// bricks: `E_i = t_i^{-1} e'_i/(q_i^{-1} - q_i) (x) 1`, `F_i = 1 (x) f_i`,
/// `K_lam = t_lam (x) 1`, `K'_lam = 1 (x) t'_lam`.
pub struct UqLift;

impl UqLift {
    pub fn e(session: &PairingSession, i: usize) -> Result<DoubleElement, ActionError> {
        let cartan = session.cartan().clone();
        let tag = session.plus_tag();
        let alpha = cartan.simple_root(i);
        let tinv = Element::torus(tag, cartan.clone(), -&alpha)?;
        let e = Element::e_letter(tag, cartan.clone(), i)?;
        let di = cartan.symmetrizer(i);
        let denom = &QRat::q_pow(-di) - &QRat::q_pow(di);
        let a = (&tinv * &e).scaled(&denom.inv().expect("nonzero"));
        Ok(DoubleElement::embed_plus(
            DoubleKind::Quantum,
            session.brick_pair(),
            &a,
        )?)
    }

    pub fn f(session: &PairingSession, i: usize) -> Result<DoubleElement, ActionError> {
        let cartan = session.cartan().clone();
        let f = Element::f_letter(session.minus_tag(), cartan, i)?;
        Ok(DoubleElement::embed_minus(
            DoubleKind::Quantum,
            session.brick_pair(),
            &f,
        )?)
    }

    pub fn k(session: &PairingSession, lam: &Weight) -> Result<DoubleElement, ActionError> {
        let cartan = session.cartan().clone();
        let t = Element::torus(session.plus_tag(), cartan, lam.clone())?;
        Ok(DoubleElement::embed_plus(
            DoubleKind::Quantum,
            session.brick_pair(),
            &t,
        )?)
    }

    pub fn k_primed(session: &PairingSession, lam: &Weight) -> Result<DoubleElement, ActionError> {
        let cartan = session.cartan().clone();
        let t = Element::torus(session.minus_tag(), cartan, lam.clone())?;
        Ok(DoubleElement::embed_minus(
            DoubleKind::Quantum,
            session.brick_pair(),
            &t,
        )?)
    }
}

/// Embed a torus-free Weyl element `f-word * e'-word` into the Heisenberg
/// double as `f-word # e'-word`.
pub fn weyl_to_heisenberg(
    session: &PairingSession,
    w: &Element,
) -> Result<DoubleElement, ActionError> {
    if !matches!(
        w.tag(),
        AlgebraTag::Wq | AlgebraTag::NegPart | AlgebraTag::PosPart
    ) {
        return Err(ActionError::NotWeyl(w.tag()));
    }
    let rank = w.cartan().rank();
    let mut out = DoubleElement::zero(
        DoubleKind::Heisenberg,
        session.brick_pair(),
        w.cartan().clone(),
    );
    for (m, c) in w.terms() {
        let a = Monomial {
            f_word: Vec::new(),
            torus: Weight::zero(rank),
            e_word: m.e_word.clone(),
        };
        let b = Monomial {
            f_word: m.f_word.clone(),
            torus: Weight::zero(rank),
            e_word: Vec::new(),
        };
        out.add_term(a, b, c.clone());
    }
    Ok(out)
}

/// Read a Heisenberg element back as a Weyl element; errors when any torus
/// letter survives.
pub fn heisenberg_to_weyl(h: &DoubleElement) -> Result<Element, ActionError> {
    let mut out = Element::zero(AlgebraTag::Wq, h.cartan().clone());
    for ((a, b), c) in h.terms() {
        if !a.torus.is_zero() || !b.torus.is_zero() {
            return Err(ActionError::EscapedWeyl);
        }
        let mono = Monomial {
            f_word: b.f_word.clone(),
            torus: Weight::zero(h.cartan().rank()),
            e_word: a.e_word.clone(),
        };
        out.add_term(mono, c.clone());
    }
    Ok(out)
}

/// Action of a (lifted) quantum-group element on the Weyl algebra; the result
/// is asserted to stay torus-free.
pub fn uq_act_on_wq(
    session: &PairingSession,
    u: &DoubleElement,
    w: &Element,
) -> Result<Element, ActionError> {
    let h = weyl_to_heisenberg(session, w)?;
    let res = act_heisenberg(session, u, &h)?;
    heisenberg_to_weyl(&res)
}

/// A brick or Weyl element together with its comodule expansion
/// `sum v_(-1) (x) v_(0)` over the double.
pub struct YDVector {
    element: Element,
    expansion: Vec<(DoubleElement, Element)>,
}

impl YDVector {
    pub fn new(session: &PairingSession, v: &Element) -> Result<YDVector, ActionError> {
        Ok(YDVector {
            element: v.clone(),
            expansion: coaction(session, v)?,
        })
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn expansion(&self) -> &[(DoubleElement, Element)] {
        &self.expansion
    }
}

/// Comodule structure map of the Heisenberg double over the quantum double,
/// restricted to torus-free elements:
/// `b # a -> sum (1 (x) b1)(a1 (x) 1) (x) (b2 # a2)`, read back in the Weyl
/// algebra.
pub fn coaction(
    session: &PairingSession,
    w: &Element,
) -> Result<Vec<(DoubleElement, Element)>, ActionError> {
    let cartan = w.cartan().clone();
    let mut acc: BTreeMap<Monomial, DoubleElement> = BTreeMap::new();
    for (m, c) in w.terms() {
        let a_el = Element::from_monomial(
            session.plus_tag(),
            cartan.clone(),
            Monomial {
                f_word: Vec::new(),
                torus: Weight::zero(cartan.rank()),
                e_word: m.e_word.clone(),
            },
            QRat::one(),
        );
        let b_el = Element::from_monomial(
            session.minus_tag(),
            cartan.clone(),
            Monomial {
                f_word: m.f_word.clone(),
                torus: Weight::zero(cartan.rank()),
                e_word: Vec::new(),
            },
            QRat::one(),
        );
        let da = delta(&a_el)?;
        let db = delta(&b_el)?;
        for (la, ca) in da.terms() {
            for (lb, cb) in db.terms() {
                // first leg: (1 (x) b1)(a1 (x) 1) in the double
                let left = dphi_mul(
                    session,
                    &DoubleElement::embed_minus(
                        DoubleKind::Quantum,
                        session.brick_pair(),
                        &Element::from_monomial(
                            session.minus_tag(),
                            cartan.clone(),
                            lb[0].clone(),
                            QRat::one(),
                        ),
                    )?,
                    &DoubleElement::embed_plus(
                        DoubleKind::Quantum,
                        session.brick_pair(),
                        &Element::from_monomial(
                            session.plus_tag(),
                            cartan.clone(),
                            la[0].clone(),
                            QRat::one(),
                        ),
                    )?,
                )?;
                // second leg: b2 # a2 must be torus-free again
                if !lb[1].torus.is_zero() || !la[1].torus.is_zero() {
                    return Err(ActionError::EscapedWeyl);
                }
                let mono = Monomial {
                    f_word: lb[1].f_word.clone(),
                    torus: Weight::zero(cartan.rank()),
                    e_word: la[1].e_word.clone(),
                };
                let scaled = left.scaled(&(&(c * ca) * cb));
                match acc.entry(mono) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(scaled);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let merged = o.get().add(&scaled);
                        *o.get_mut() = merged;
                    }
                }
            }
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(m, d)| {
            (
                d,
                Element::from_monomial(AlgebraTag::Wq, cartan.clone(), m, QRat::one()),
            )
        })
        .collect())
}

/// The Yetter-Drinfel'd braiding `sigma(v (x) w) = sum v_(-1).w (x) v_(0)` on
/// torus-free Weyl elements.
pub fn braiding_sigma(
    session: &PairingSession,
    v: &Element,
    w: &Element,
) -> Result<TensorElement, ActionError> {
    let cartan = v.cartan().clone();
    let mut out = TensorElement::zero(vec![AlgebraTag::Wq, AlgebraTag::Wq], cartan.clone());
    let v = v.retagged(AlgebraTag::Wq)?;
    let w = w.retagged(AlgebraTag::Wq)?;
    for (du, v0) in coaction(session, &v)? {
        let moved = uq_act_on_wq(session, &du, &w)?;
        for (m1, c1) in moved.terms() {
            for (m0, c0) in v0.terms() {
                out.add_term(vec![m1.clone(), m0.clone()], c1 * c0);
            }
        }
    }
    Ok(out)
}

/// Yetter-Drinfel'd compatibility of an acting double element `h` and a
/// torus-free vector `v`:
/// `sum h1 v_(-1) (x) h2.v_(0) = sum (h1.v)_(-1) h2 (x) (h1.v)_(0)`.
pub fn yd_check(
    session: &PairingSession,
    h: &DoubleElement,
    v: &Element,
) -> Result<bool, ActionError> {
    type Flat = BTreeMap<(Monomial, Monomial, Monomial), QRat>;
    let add = |map: &mut Flat, d: &DoubleElement, w: &Element, scale: &QRat| {
        for ((a, b), cd) in d.terms() {
            for (m, cw) in w.terms() {
                let key = (a.clone(), b.clone(), m.clone());
                let c = map.entry(key).or_insert_with(QRat::zero);
                *c = &*c + &(&(cd * cw) * scale);
            }
        }
    };
    let v = v.retagged(AlgebraTag::Wq)?;
    let mut lhs: Flat = BTreeMap::new();
    for (h1, h2, ch) in h.coproduct_legs()? {
        let h1d = double_from_legs(h, &h1);
        let h2d = double_from_legs(h, &h2);
        for (vm1, v0) in coaction(session, &v)? {
            let left = dphi_mul(session, &h1d, &vm1)?;
            let moved = uq_act_on_wq(session, &h2d, &v0)?;
            add(&mut lhs, &left, &moved, &ch);
        }
    }
    let mut rhs: Flat = BTreeMap::new();
    for (h1, h2, ch) in h.coproduct_legs()? {
        let h1d = double_from_legs(h, &h1);
        let h2d = double_from_legs(h, &h2);
        let hv = uq_act_on_wq(session, &h1d, &v)?;
        for (hv_m1, hv_0) in coaction(session, &hv)? {
            let left = dphi_mul(session, &hv_m1, &h2d)?;
            add(&mut rhs, &left, &hv_0, &ch);
        }
    }
    lhs.retain(|_, c| !c.is_zero());
    rhs.retain(|_, c| !c.is_zero());
    Ok(lhs == rhs)
}

/// Product on `B^{--} (x) B^{++}` through the braiding:
/// `(x1 (x) x2)(y1 (x) y2) = sum x1 sigma_1 (x) sigma_2 y2` with
/// `sigma(x2 (x) y1) = sum (x2)_(-1).y1 (x) (x2)_(0)`.
pub fn braided_weyl_mul(
    session: &PairingSession,
    x: &TensorElement,
    y: &TensorElement,
) -> Result<TensorElement, ActionError> {
    assert_eq!(x.tags(), &[AlgebraTag::NegPart, AlgebraTag::PosPart]);
    assert_eq!(y.tags(), &[AlgebraTag::NegPart, AlgebraTag::PosPart]);
    let cartan = x.cartan().clone();
    let mut out = TensorElement::zero(
        vec![AlgebraTag::NegPart, AlgebraTag::PosPart],
        cartan.clone(),
    );
    for (kx, cx) in x.terms() {
        // coaction of the positive leg is the brick coproduct with the first
        // leg embedded as a (x) 1
        let a_el = Element::from_monomial(
            session.plus_tag(),
            cartan.clone(),
            Monomial {
                f_word: Vec::new(),
                torus: Weight::zero(cartan.rank()),
                e_word: kx[1].e_word.clone(),
            },
            QRat::one(),
        );
        let da = delta(&a_el)?;
        for (ky, cy) in y.terms() {
            let f_el = Element::from_monomial(
                session.minus_tag(),
                cartan.clone(),
                Monomial {
                    f_word: ky[0].f_word.clone(),
                    torus: Weight::zero(cartan.rank()),
                    e_word: Vec::new(),
                },
                QRat::one(),
            );
            for (la, ca) in da.terms() {
                let acting = DoubleElement::embed_plus(
                    DoubleKind::Quantum,
                    session.brick_pair(),
                    &Element::from_monomial(
                        session.plus_tag(),
                        cartan.clone(),
                        la[0].clone(),
                        QRat::one(),
                    ),
                )?;
                let moved = schrodinger_act(session, &acting, &f_el)?;
                if moved.is_zero() {
                    continue;
                }
                debug_assert!(la[1].torus.is_zero());
                for (mm, cm) in moved.terms() {
                    if !mm.torus.is_zero() {
                        return Err(ActionError::EscapedWeyl);
                    }
                    // assemble x1 * moved (x) la[1] * y2
                    let mut left = kx[0].clone();
                    left.f_word.extend_from_slice(&mm.f_word);
                    let mut right = Monomial {
                        f_word: Vec::new(),
                        torus: Weight::zero(cartan.rank()),
                        e_word: la[1].e_word.clone(),
                    };
                    right.e_word.extend_from_slice(&ky[1].e_word);
                    out.add_term(
                        vec![left, right],
                        &(&(cx * cy) * &(ca * cm)) * &QRat::one(),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// The multiplication map `f (x) e -> f e` identifying the braided product of
/// the two halves with the Weyl algebra.
pub fn weyl_iso(x: &TensorElement) -> Result<Element, ActionError> {
    assert_eq!(x.tags(), &[AlgebraTag::NegPart, AlgebraTag::PosPart]);
    let cartan = x.cartan().clone();
    let mut out = Element::zero(AlgebraTag::Wq, cartan.clone());
    for (k, c) in x.terms() {
        let mono = Monomial {
            f_word: k[0].f_word.clone(),
            torus: Weight::zero(cartan.rank()),
            e_word: k[1].e_word.clone(),
        };
        out.add_term(mono, c.clone());
    }
    Ok(out)
}
