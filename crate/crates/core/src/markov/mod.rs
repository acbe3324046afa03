//! Markov elements of `TL-hat_{n+1}` and the reduction of traces to them.
//!
//! A Markov element is `A g_{σ_n}^ε B` with `A, B` in the image of `F_n`. Both factors are
//! stored as preimages in `TL-hat_n` and realised on demand.

pub mod cyclic;
pub mod lemmas;
pub mod normal_form;
pub mod preimage;
pub mod reduce;
pub mod solver;

use serde_json::{json, Value};

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::homs::{apply_f, coxeter_power};
use crate::ring::RingElem;
use crate::trace::rho;
use crate::words::{Letter, System};

pub use lemmas::{corollary_516_expand, lemma_513_decompose, lemma_515_decompose, CoxeterSplit, TypedTerm, Side};
pub use normal_form::{classify_affine, is_markov, AffineNormalForm, NormalFormVariant};
pub use reduce::reduce_trace_to_markov;
pub use solver::{trace_relation_solver, SolverReport, SolverStatus, TraceSolver};

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Usage(format!("Markov elements are defined for n >= 2, got n = {n}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkovElement {
    pub n: usize,
    /// Preimage of `A` in `TL-hat_n`.
    pub a: Element,
    pub epsilon: bool,
    /// Preimage of `B` in `TL-hat_n`.
    pub b: Element,
}

impl MarkovElement {
    pub fn new(n: usize, a: Element, epsilon: bool, b: Element) -> Result<Self> {
        check_rank(n)?;
        let src = System::affine(n - 1);
        src.ensure_same(&a.system())?;
        src.ensure_same(&b.system())?;
        Ok(MarkovElement { n, a, epsilon, b })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let one = Element::one(System::affine(n - 1));
        Self::new(n, one.clone(), false, one)
    }

    /// `A g_{σ_n}^ε B` in `TL-hat_{n+1}`.
    pub fn realize(&self) -> Result<Element> {
        let mut x = apply_f(self.n, &self.a)?;
        if self.epsilon {
            x = x.mul(&Element::generator(System::affine(self.n), self.n as Letter)?)?;
        }
        x.mul(&apply_f(self.n, &self.b)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "A_preimage": self.a.to_text(),
            "epsilon": u8::from(self.epsilon),
            "B_preimage": self.b.to_text(),
        })
    }
}

/// Whether a rewriting step is an equality in the algebra or only under every trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    AlgebraIdentity,
    CyclicMove,
}

impl Move {
    pub fn tag(self) -> &'static str {
        match self {
            Move::AlgebraIdentity => "algebra-identity",
            Move::CyclicMove => "cyclic-move",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditStep {
    pub kind: Move,
    pub note: String,
}

/// `Σ c_i M_i + Σ F(c) C^k` with `C = g_{σ_n ... σ_1 a_{n+1}}`; the second sum is the residual.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovCombination {
    pub n: usize,
    pub terms: Vec<(RingElem, MarkovElement)>,
    /// `(preimage of c, k)` standing for `F(c) C^k`.
    pub residual: Vec<(Element, u32)>,
    pub audit: Vec<AuditStep>,
}

impl MarkovCombination {
    pub fn new(n: usize) -> Self {
        MarkovCombination { n, terms: Vec::new(), residual: Vec::new(), audit: Vec::new() }
    }

    pub fn is_reduced(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn push(&mut self, c: RingElem, m: MarkovElement) {
        if !c.is_zero() {
            self.terms.push((c, m));
        }
    }

    pub fn note(&mut self, kind: Move, note: impl Into<String>) {
        self.audit.push(AuditStep { kind, note: note.into() });
    }

    pub fn extend_scaled(&mut self, other: &MarkovCombination, c: &RingElem) -> Result<()> {
        for (d, m) in &other.terms {
            self.push(c.mul(d), m.clone());
        }
        for (x, k) in &other.residual {
            self.residual.push((x.scale(c), *k));
        }
        self.audit.extend(other.audit.iter().cloned());
        Ok(())
    }

    /// The element `Σ c_i M_i + Σ F(c) C^k`. Equal to the input only when every step was an
    /// algebra identity.
    pub fn realize(&self) -> Result<Element> {
        let sys = System::affine(self.n);
        let mut acc = Element::zero(sys, Basis::G);
        for (c, m) in &self.terms {
            acc = acc.add_scale(&m.realize()?, c)?;
        }
        for (x, k) in &self.residual {
            let p = apply_f(self.n, x)?.mul(&coxeter_power(self.n, *k as i64)?)?;
            acc = acc.add_scale(&p, &RingElem::one())?;
        }
        Ok(acc)
    }

    /// `Σ c_i τ(M_i) + Σ τ(F(c) C^k)` for a trace functional `τ`.
    pub fn evaluate(&self, tau: &dyn Fn(&Element) -> Result<RingElem>) -> Result<RingElem> {
        let mut acc = RingElem::zero();
        for (c, m) in &self.terms {
            acc = acc.add(&c.mul(&tau(&m.realize()?)?));
        }
        for (x, k) in &self.residual {
            let p = apply_f(self.n, x)?.mul(&coxeter_power(self.n, *k as i64)?)?;
            acc = acc.add(&tau(&p)?);
        }
        Ok(acc)
    }

    /// Evaluation under `ρ_{n+1}`.
    pub fn evaluate_rho(&self) -> Result<RingElem> {
        let n1 = self.n + 1;
        self.evaluate(&|x| rho(n1, x))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n + 1,
            "terms": self.terms.iter().map(|(c, m)| {
                let mut v = m.to_json();
                v["coeff"] = json!(c.to_text());
                v
            }).collect::<Vec<_>>(),
            "residual": self.residual.iter().map(|(x, k)| json!({"c_preimage": x.to_text(), "power": k})).collect::<Vec<_>>(),
            "audit": self.audit.iter().map(|s| json!({"kind": s.kind.tag(), "step": s.note})).collect::<Vec<_>>(),
        })
    }
}
