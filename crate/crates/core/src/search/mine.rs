//! Counterexample mining over enumerated multiplicative lattices.
//!
//! Query syntax, whitespace separated:
//!
//! ```text
//! scope:element hyp=strongly_hollow,cancellation concl=lattice.le2_maximals
//! ```
//!
//! Bare names are element predicates; `lattice.`-prefixed names are
//! lattice predicates. A lattice-scope query may only use lattice
//! predicates. An empty hypothesis list is allowed.

use std::fmt;

use rayon::prelude::*;

use crate::elements::{lattice_profile, maximal_elements, ElementPredicate, LatticePredicate};
use crate::hollow::{is_completely_strongly_hollow, is_strongly_hollow};
use crate::lattice::{ElementId, MultLattice};
use crate::search::enumerate::{mult_lattices, SearchError};

/// Largest `n` accepted by [`mine`].
pub const MAX_MINE: usize = 6;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Element,
    Lattice,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ElementAtom {
    Is(ElementPredicate),
    StronglyHollow,
    CompletelyStronglyHollow,
    Top,
    Bottom,
    Nonzero,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LatticeAtom {
    Is(LatticePredicate),
    /// Fewer than two maximal elements.
    Le2Maximals,
    /// Order-isomorphic to the four-element Boolean algebra.
    B4,
    EveryNonzeroCsh,
    EveryNonzeroPrimeCsh,
    EveryNonzeroMaximalCsh,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Element(ElementAtom),
    Lattice(LatticeAtom),
}

impl Atom {
    pub fn parse(name: &str) -> Result<Atom, SearchError> {
        if let Some(rest) = name.strip_prefix("lattice.") {
            let atom = match rest {
                "le2_maximals" => LatticeAtom::Le2Maximals,
                "b4" => LatticeAtom::B4,
                "every_nonzero_csh" => LatticeAtom::EveryNonzeroCsh,
                "every_nonzero_prime_csh" => LatticeAtom::EveryNonzeroPrimeCsh,
                "every_nonzero_maximal_csh" => LatticeAtom::EveryNonzeroMaximalCsh,
                other => LatticeAtom::Is(LatticePredicate::from_name(other).ok_or_else(|| {
                    SearchError::Query(format!("unknown lattice predicate `{other}`"))
                })?),
            };
            return Ok(Atom::Lattice(atom));
        }
        let rest = name.strip_prefix("element.").unwrap_or(name);
        let atom = match rest {
            "strongly_hollow" => ElementAtom::StronglyHollow,
            "completely_strongly_hollow" => ElementAtom::CompletelyStronglyHollow,
            "top" => ElementAtom::Top,
            "bottom" => ElementAtom::Bottom,
            "nonzero" => ElementAtom::Nonzero,
            other => ElementAtom::Is(ElementPredicate::from_name(other).ok_or_else(|| {
                SearchError::Query(format!("unknown element predicate `{other}`"))
            })?),
        };
        Ok(Atom::Element(atom))
    }

    fn name(self) -> String {
        match self {
            Atom::Element(e) => match e {
                ElementAtom::Is(p) => p.name().to_string(),
                ElementAtom::StronglyHollow => "strongly_hollow".into(),
                ElementAtom::CompletelyStronglyHollow => "completely_strongly_hollow".into(),
                ElementAtom::Top => "top".into(),
                ElementAtom::Bottom => "bottom".into(),
                ElementAtom::Nonzero => "nonzero".into(),
            },
            Atom::Lattice(a) => {
                let s = match a {
                    LatticeAtom::Is(p) => p.name(),
                    LatticeAtom::Le2Maximals => "le2_maximals",
                    LatticeAtom::B4 => "b4",
                    LatticeAtom::EveryNonzeroCsh => "every_nonzero_csh",
                    LatticeAtom::EveryNonzeroPrimeCsh => "every_nonzero_prime_csh",
                    LatticeAtom::EveryNonzeroMaximalCsh => "every_nonzero_maximal_csh",
                };
                format!("lattice.{s}")
            }
        }
    }
}

fn eval_element(l: &MultLattice, atom: ElementAtom, a: ElementId) -> bool {
    match atom {
        ElementAtom::Is(p) => p.eval(l, a),
        ElementAtom::StronglyHollow => is_strongly_hollow(l, a),
        ElementAtom::CompletelyStronglyHollow => is_completely_strongly_hollow(l, a),
        ElementAtom::Top => l.is_top(a),
        ElementAtom::Bottom => l.is_bottom(a),
        ElementAtom::Nonzero => !l.is_bottom(a),
    }
}

fn eval_lattice(l: &MultLattice, atom: LatticeAtom) -> bool {
    let nonzero_csh = |filter: &dyn Fn(ElementId) -> bool| {
        l.elements()
            .filter(|&a| !l.is_bottom(a) && filter(a))
            .all(|a| is_completely_strongly_hollow(l, a))
    };
    match atom {
        LatticeAtom::Is(p) => lattice_profile(l).get(p),
        LatticeAtom::Le2Maximals => maximal_elements(l).len() < 2,
        LatticeAtom::B4 => l.len() == 4 && !l.is_chain(),
        LatticeAtom::EveryNonzeroCsh => nonzero_csh(&|_| true),
        LatticeAtom::EveryNonzeroPrimeCsh => {
            nonzero_csh(&|a| crate::elements::is_prime(l, a))
        }
        LatticeAtom::EveryNonzeroMaximalCsh => {
            nonzero_csh(&|a| crate::elements::is_maximal(l, a))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub scope: Scope,
    pub hypothesis: Vec<Atom>,
    pub conclusion: Atom,
}

impl Query {
    pub fn parse(text: &str) -> Result<Query, SearchError> {
        let mut scope = None;
        let mut hyp = None;
        let mut concl = None;
        for tok in text.split_whitespace() {
            if let Some(s) = tok.strip_prefix("scope:") {
                scope = Some(match s {
                    "element" => Scope::Element,
                    "lattice" => Scope::Lattice,
                    other => return Err(SearchError::Query(format!("unknown scope `{other}`"))),
                });
            } else if let Some(h) = tok.strip_prefix("hyp=") {
                hyp = Some(
                    h.split(',')
                        .filter(|s| !s.is_empty())
                        .map(Atom::parse)
                        .collect::<Result<Vec<_>, _>>()?,
                );
            } else if let Some(c) = tok.strip_prefix("concl=") {
                concl = Some(Atom::parse(c)?);
            } else {
                return Err(SearchError::Query(format!("unexpected token `{tok}`")));
            }
        }
        let scope = scope.ok_or_else(|| SearchError::Query("missing scope:".into()))?;
        let conclusion = concl.ok_or_else(|| SearchError::Query("missing concl=".into()))?;
        let hypothesis = hyp.unwrap_or_default();
        if scope == Scope::Lattice
            && hypothesis
                .iter()
                .chain(std::iter::once(&conclusion))
                .any(|a| matches!(a, Atom::Element(_)))
        {
            return Err(SearchError::Query(
                "lattice scope only admits lattice.* predicates".into(),
            ));
        }
        Ok(Query {
            scope,
            hypothesis,
            conclusion,
        })
    }

    fn eval(&self, l: &MultLattice, a: Option<ElementId>, atom: Atom) -> bool {
        match atom {
            Atom::Element(e) => eval_element(l, e, a.expect("element scope")),
            Atom::Lattice(p) => eval_lattice(l, p),
        }
    }

    /// First failing element (or the lattice itself, as `Some(None)`).
    fn counterexample(&self, l: &MultLattice) -> Option<Option<ElementId>> {
        let fails = |a: Option<ElementId>| {
            self.hypothesis.iter().all(|&h| self.eval(l, a, h)) && !self.eval(l, a, self.conclusion)
        };
        match self.scope {
            Scope::Lattice => fails(None).then_some(None),
            Scope::Element => l.elements().find(|&a| fails(Some(a))).map(Some),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = match self.scope {
            Scope::Element => "element",
            Scope::Lattice => "lattice",
        };
        let hyp: Vec<String> = self.hypothesis.iter().map(|a| a.name()).collect();
        write!(
            f,
            "scope:{scope} hyp={} concl={}",
            hyp.join(","),
            self.conclusion.name()
        )
    }
}

#[derive(Clone, Debug)]
pub enum MineResult {
    Holds {
        max_n: usize,
        lattices: usize,
    },
    Counterexample {
        lattice: MultLattice,
        element: Option<ElementId>,
    },
}

/// Runs `query` over every multiplicative lattice with `2 ≤ n ≤ max_n`, in
/// size order and canonical order within each size. The reported
/// counterexample is the first in that order, whatever the scheduling.
pub fn mine(query: &Query, max_n: usize) -> Result<MineResult, SearchError> {
    if max_n > MAX_MINE {
        return Err(SearchError::MineCap {
            cap: MAX_MINE,
            got: max_n,
        });
    }
    let mut total = 0;
    for n in 2..=max_n {
        let lattices = mult_lattices(n)?;
        total += lattices.len();
        let hits: Vec<Option<Option<ElementId>>> =
            lattices.par_iter().map(|l| query.counterexample(l)).collect();
        if let Some((i, element)) = hits
            .into_iter()
            .enumerate()
            .find_map(|(i, h)| h.map(|e| (i, e)))
        {
            return Ok(MineResult::Counterexample {
                lattice: lattices[i].clone(),
                element,
            });
        }
    }
    Ok(MineResult::Holds {
        max_n,
        lattices: total,
    })
}

pub fn render_mine_result(query: &Query, r: &MineResult) -> String {
    match r {
        MineResult::Holds { max_n, lattices } => {
            format!("query {query}\nholds up to n={max_n} ({lattices} lattices)\n")
        }
        MineResult::Counterexample { lattice, element } => {
            let at = element
                .map(|a| format!(" element {}", lattice.element_name(a)))
                .unwrap_or_default();
            format!("query {query}\ncounterexample {}{at}\n", lattice.name())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let q = Query::parse("scope:element hyp=strongly_hollow,cancellation concl=lattice.le2_maximals")
            .unwrap();
        assert_eq!(
            q.to_string(),
            "scope:element hyp=strongly_hollow,cancellation concl=lattice.le2_maximals"
        );
        assert!(Query::parse("scope:element concl=nope").is_err());
        assert!(Query::parse("scope:lattice concl=prime").is_err());
    }

    #[test]
    fn b4_counterexample() {
        let q = Query::parse("scope:lattice hyp=lattice.b4 concl=lattice.every_nonzero_csh").unwrap();
        match mine(&q, 4).unwrap() {
            MineResult::Counterexample { lattice, .. } => assert_eq!(lattice.len(), 4),
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }
}
