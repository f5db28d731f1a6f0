//! Exhaustive search for two-point selectors under explicit constraints.
//!
//! A constraint scenario fixes a finite family of two-point subsets, a
//! symmetric *closeness* relation on those subsets, and a symmetric
//! reflexive *requirement* relation on points.  A witness assigns to every
//! subset one of its two points so that the values of close subsets satisfy
//! the requirement.  The search is plain backtracking with forward checking
//! over a static most-constrained-first variable order, so its behaviour is
//! a deterministic function of the scenario.
//!
//! Unsatisfiability is returned with a *certificate*: the ordered trace of
//! decisions, prunes, conflicts, and retractions.  [`replay_certificate`]
//! re-validates a certificate step by step without consulting the search:
//! every prune must cite an assigned source whose value forbids the pruned
//! one, every conflict must name a subset with no remaining values, and
//! every retraction must close off a fully explored branch.  A certificate
//! that replays proves the scenario unsatisfiable on its own.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Error;
use crate::point::{PointId, PointSet};
use crate::selector::{SelectorDomain, SelectorMap};
use crate::window::Window;

/// Hard cap for the brute-force oracle.
pub const EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Debug, Clone)]
pub struct ConstraintScenario {
    window: Arc<Window>,
    /// Two-point subsets, each stored `(lo, hi)`, in listed order; closeness
    /// indices refer to this order.
    pairs: Vec<(PointId, PointId)>,
    /// Adjacency over pair indices; symmetric with self-loops.
    closeness: Vec<PointSet>,
    /// Allowed value pairs over points; symmetric and reflexive.
    requirement: Vec<PointSet>,
}

impl ConstraintScenario {
    /// Builds a scenario, closing `close_edges` under symmetry and
    /// reflexivity and `allowed` under symmetry (the diagonal is added).
    pub fn new(
        window: Arc<Window>,
        pairs: Vec<(PointId, PointId)>,
        close_edges: &[(usize, usize)],
        allowed: &[(PointId, PointId)],
    ) -> Result<Self, Error> {
        let n = window.len();
        let mut seen = BTreeSet::new();
        let mut norm_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            if a.idx() >= n || b.idx() >= n {
                return Err(Error::UnknownPoint {
                    detail: format!("in subset ({a}, {b})"),
                });
            }
            if a == b {
                return Err(Error::BadParameter {
                    what: format!("subset has one point: {}", window.label(a)),
                });
            }
            let p = if a < b { (a, b) } else { (b, a) };
            if !seen.insert(p) {
                return Err(Error::BadParameter {
                    what: format!(
                        "subset {{{},{}}} listed twice",
                        window.label(p.0),
                        window.label(p.1)
                    ),
                });
            }
            norm_pairs.push(p);
        }
        let k = norm_pairs.len();
        let mut closeness = vec![PointSet::empty(k); k];
        for (i, set) in closeness.iter_mut().enumerate() {
            set.insert(PointId(i as u32));
        }
        for &(i, j) in close_edges {
            if i >= k || j >= k {
                return Err(Error::BadParameter {
                    what: format!("closeness edge ({i}, {j}) outside {k} subsets"),
                });
            }
            closeness[i].insert(PointId(j as u32));
            closeness[j].insert(PointId(i as u32));
        }
        let mut requirement = vec![PointSet::empty(n); n];
        for (x, set) in requirement.iter_mut().enumerate() {
            set.insert(PointId(x as u32));
        }
        for &(x, y) in allowed {
            if x.idx() >= n || y.idx() >= n {
                return Err(Error::UnknownPoint {
                    detail: format!("in requirement ({x}, {y})"),
                });
            }
            requirement[x.idx()].insert(y);
            requirement[y.idx()].insert(x);
        }
        Ok(ConstraintScenario {
            window,
            pairs: norm_pairs,
            closeness,
            requirement,
        })
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn pairs(&self) -> &[(PointId, PointId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_close(&self, i: usize, j: usize) -> bool {
        self.closeness[i].contains(PointId(j as u32))
    }

    pub fn is_allowed(&self, x: PointId, y: PointId) -> bool {
        self.requirement[x.idx()].contains(y)
    }

    fn values_of(&self, i: usize) -> [PointId; 2] {
        [self.pairs[i].0, self.pairs[i].1]
    }

    /// Static variable order: most close neighbors first, index breaking
    /// ties.
    fn variable_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (usize::MAX - self.closeness[i].len(), i));
        order
    }

    pub fn render_pair(&self, i: usize) -> String {
        let (a, b) = self.pairs[i];
        format!(
            "{{{},{}}}",
            self.window.label(a),
            self.window.label(b)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStep {
    /// Assign `value` to subset `pair`.
    Decide { pair: usize, value: PointId },
    /// Remove `value` from subset `pair` because the assigned `source`
    /// forbids it.
    Prune {
        pair: usize,
        value: PointId,
        source: usize,
    },
    /// Subset `pair` has no remaining values.
    Conflict { pair: usize },
    /// Undo the decision on `pair`; its prunes are rolled back.
    Retract { pair: usize, value: PointId },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub steps: Vec<SearchStep>,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// A witness: `assignment[i]` is the chosen point of subset `i`.
    Found { assignment: Vec<PointId> },
    Unsat { certificate: Certificate },
    /// The step budget ran out before the search finished.
    Inconclusive { steps_used: u64 },
}

struct Search<'a> {
    sc: &'a ConstraintScenario,
    order: Vec<usize>,
    candidate: Vec<[bool; 2]>,
    assigned: Vec<Option<u8>>,
    steps: Vec<SearchStep>,
    budget: u64,
    used: u64,
}

enum Explored {
    Sat,
    Exhausted,
    OverBudget,
}

impl<'a> Search<'a> {
    fn push(&mut self, step: SearchStep) -> bool {
        if self.used == self.budget {
            return false;
        }
        self.used += 1;
        self.steps.push(step);
        true
    }

    fn solve(&mut self, level: usize) -> Explored {
        if level == self.order.len() {
            return Explored::Sat;
        }
        let var = self.order[level];
        let values = self.sc.values_of(var);
        for slot in 0..2 {
            if !self.candidate[var][slot] {
                continue;
            }
            let value = values[slot];
            if !self.push(SearchStep::Decide { pair: var, value }) {
                return Explored::OverBudget;
            }
            self.assigned[var] = Some(slot as u8);

            let mut pruned: Vec<(usize, usize)> = Vec::new();
            let mut conflict = None;
            for q in self.sc.closeness[var].iter() {
                let q = q.idx();
                if q == var || self.assigned[q].is_some() {
                    continue;
                }
                let q_values = self.sc.values_of(q);
                for (q_slot, &w) in q_values.iter().enumerate() {
                    if self.candidate[q][q_slot] && !self.sc.is_allowed(value, w) {
                        if !self.push(SearchStep::Prune {
                            pair: q,
                            value: w,
                            source: var,
                        }) {
                            return Explored::OverBudget;
                        }
                        self.candidate[q][q_slot] = false;
                        pruned.push((q, q_slot));
                    }
                }
                if !self.candidate[q][0] && !self.candidate[q][1] {
                    conflict = Some(q);
                    break;
                }
            }

            match conflict {
                Some(q) => {
                    if !self.push(SearchStep::Conflict { pair: q }) {
                        return Explored::OverBudget;
                    }
                }
                None => match self.solve(level + 1) {
                    Explored::Sat => return Explored::Sat,
                    Explored::OverBudget => return Explored::OverBudget,
                    Explored::Exhausted => {}
                },
            }

            for (q, q_slot) in pruned {
                self.candidate[q][q_slot] = true;
            }
            self.assigned[var] = None;
            if !self.push(SearchStep::Retract { pair: var, value }) {
                return Explored::OverBudget;
            }
        }
        Explored::Exhausted
    }
}

/// Runs the backtracking search without a step budget.
pub fn search_two_selector(sc: &ConstraintScenario) -> SearchOutcome {
    search_with_budget(sc, u64::MAX)
}

/// Runs the backtracking search, giving up after `max_steps` trace steps.
pub fn search_with_budget(sc: &ConstraintScenario, max_steps: u64) -> SearchOutcome {
    let mut search = Search {
        sc,
        order: sc.variable_order(),
        candidate: vec![[true; 2]; sc.len()],
        assigned: vec![None; sc.len()],
        steps: Vec::new(),
        budget: max_steps,
        used: 0,
    };
    match search.solve(0) {
        Explored::Sat => {
            let assignment = (0..sc.len())
                .map(|i| {
                    let slot = search.assigned[i].expect("all subsets assigned at a solution");
                    sc.values_of(i)[slot as usize]
                })
                .collect();
            SearchOutcome::Found { assignment }
        }
        Explored::Exhausted => SearchOutcome::Unsat {
            certificate: Certificate {
                steps: search.steps,
            },
        },
        Explored::OverBudget => SearchOutcome::Inconclusive {
            steps_used: search.used,
        },
    }
}

/// Checks an assignment directly against the scenario.
pub fn verify_witness(sc: &ConstraintScenario, assignment: &[PointId]) -> Result<(), String> {
    if assignment.len() != sc.len() {
        return Err(format!(
            "assignment covers {} of {} subsets",
            assignment.len(),
            sc.len()
        ));
    }
    for (i, &v) in assignment.iter().enumerate() {
        let (a, b) = sc.pairs()[i];
        if v != a && v != b {
            return Err(format!(
                "value {} is not a member of {}",
                sc.window().label(v),
                sc.render_pair(i)
            ));
        }
    }
    for i in 0..sc.len() {
        for j in (i + 1)..sc.len() {
            if sc.is_close(i, j) && !sc.is_allowed(assignment[i], assignment[j]) {
                return Err(format!(
                    "close subsets {} and {} have forbidden values {} and {}",
                    sc.render_pair(i),
                    sc.render_pair(j),
                    sc.window().label(assignment[i]),
                    sc.window().label(assignment[j])
                ));
            }
        }
    }
    Ok(())
}

/// Packages a witness as a selector map over the scenario's subsets.
pub fn witness_selector(sc: &ConstraintScenario, assignment: &[PointId]) -> SelectorMap {
    let n = sc.window().len();
    let mut s = SelectorMap::new(SelectorDomain::TwoSubsets);
    for (i, &(a, b)) in sc.pairs().iter().enumerate() {
        s.insert(PointSet::from_points(n, [a, b]), assignment[i]);
    }
    s
}

/// Brute-force oracle: tries every assignment in canonical order.
pub fn exhaustive_search(sc: &ConstraintScenario) -> Result<Option<Vec<PointId>>, Error> {
    if sc.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::DomainTooLarge {
            what: "exhaustive assignment enumeration",
            size: sc.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let k = sc.len();
    'outer: for mask in 0u64..(1u64 << k) {
        let assignment: Vec<PointId> = (0..k)
            .map(|i| {
                let (lo, hi) = sc.pairs()[i];
                if mask & (1 << i) == 0 {
                    lo
                } else {
                    hi
                }
            })
            .collect();
        for i in 0..k {
            for j in (i + 1)..k {
                if sc.is_close(i, j) && !sc.is_allowed(assignment[i], assignment[j]) {
                    continue 'outer;
                }
            }
        }
        return Ok(Some(assignment));
    }
    Ok(None)
}

/// Re-validates an unsatisfiability certificate independently of the
/// search.  Returns `Ok(())` when the trace is locally sound (every prune
/// and conflict justified) and globally exhaustive (every branch of every
/// visited subset closed off), which together prove unsatisfiability.
pub fn replay_certificate(sc: &ConstraintScenario, cert: &Certificate) -> Result<(), String> {
    let k = sc.len();
    let mut assigned: Vec<Option<u8>> = vec![None; k];
    // Removal depth tag per (pair, slot).
    let mut removed: Vec<[Option<usize>; 2]> = vec![[None; 2]; k];
    let mut stack: Vec<(usize, u8)> = Vec::new();
    // Per depth: the subset decided there and the slots already refuted.
    let mut refuted: Vec<Option<(usize, BTreeSet<u8>)>> = vec![None; k + 1];
    let mut just_exhausted: Option<usize> = None;

    let slot_of = |pair: usize, value: PointId| -> Result<u8, String> {
        let (lo, hi) = sc.pairs()[pair];
        if value == lo {
            Ok(0)
        } else if value == hi {
            Ok(1)
        } else {
            Err(format!(
                "step names value {} outside subset {}",
                sc.window().label(value),
                sc.render_pair(pair)
            ))
        }
    };

    for (n, step) in cert.steps.iter().enumerate() {
        let fail = |msg: String| Err(format!("step {n}: {msg}"));
        match *step {
            SearchStep::Decide { pair, value } => {
                if pair >= k {
                    return fail(format!("subset index {pair} out of range"));
                }
                let slot = match slot_of(pair, value) {
                    Ok(s) => s,
                    Err(e) => return fail(e),
                };
                if just_exhausted.is_some() {
                    return fail("decision after a branch was closed off".into());
                }
                if assigned[pair].is_some() {
                    return fail(format!("{} already assigned", sc.render_pair(pair)));
                }
                if removed[pair][slot as usize].is_some() {
                    return fail(format!(
                        "decided value {} was pruned",
                        sc.window().label(value)
                    ));
                }
                let depth = stack.len();
                match &refuted[depth] {
                    Some((p, slots)) => {
                        if *p != pair {
                            return fail(format!(
                                "depth {depth} switches subsets before exhausting {}",
                                sc.render_pair(*p)
                            ));
                        }
                        if slots.contains(&slot) {
                            return fail(format!(
                                "value {} retried after refutation",
                                sc.window().label(value)
                            ));
                        }
                    }
                    None => {
                        refuted[depth] = Some((pair, BTreeSet::new()));
                    }
                }
                for entry in refuted.iter_mut().skip(depth + 1) {
                    *entry = None;
                }
                stack.push((pair, slot));
                assigned[pair] = Some(slot);
            }
            SearchStep::Prune {
                pair,
                value,
                source,
            } => {
                if pair >= k || source >= k {
                    return fail("subset index out of range".into());
                }
                if just_exhausted.is_some() {
                    return fail("prune after a branch was closed off".into());
                }
                let slot = match slot_of(pair, value) {
                    Ok(s) => s,
                    Err(e) => return fail(e),
                };
                let src_slot = match assigned[source] {
                    Some(s) => s,
                    None => {
                        return fail(format!(
                            "prune cites unassigned source {}",
                            sc.render_pair(source)
                        ))
                    }
                };
                if source == pair || assigned[pair].is_some() {
                    return fail(format!(
                        "prune targets assigned subset {}",
                        sc.render_pair(pair)
                    ));
                }
                if !sc.is_close(source, pair) {
                    return fail(format!(
                        "{} and {} are not close",
                        sc.render_pair(source),
                        sc.render_pair(pair)
                    ));
                }
                let src_value = sc.values_of(source)[src_slot as usize];
                if sc.is_allowed(src_value, value) {
                    return fail(format!(
                        "values {} and {} are allowed; prune unjustified",
                        sc.window().label(src_value),
                        sc.window().label(value)
                    ));
                }
                if removed[pair][slot as usize].is_some() {
                    return fail("value pruned twice".into());
                }
                removed[pair][slot as usize] = Some(stack.len());
            }
            SearchStep::Conflict { pair } => {
                if pair >= k {
                    return fail(format!("subset index {pair} out of range"));
                }
                if assigned[pair].is_some() {
                    return fail(format!(
                        "conflict names assigned subset {}",
                        sc.render_pair(pair)
                    ));
                }
                if removed[pair][0].is_none() || removed[pair][1].is_none() {
                    return fail(format!(
                        "{} still has a value; conflict unjustified",
                        sc.render_pair(pair)
                    ));
                }
                just_exhausted = Some(stack.len());
            }
            SearchStep::Retract { pair, value } => {
                let slot = match slot_of(pair, value) {
                    Ok(s) => s,
                    Err(e) => return fail(e),
                };
                let (top_pair, top_slot) = match stack.last() {
                    Some(&t) => t,
                    None => return fail("retract with an empty stack".into()),
                };
                if top_pair != pair || top_slot != slot {
                    return fail(format!(
                        "retract does not match the open decision on {}",
                        sc.render_pair(top_pair)
                    ));
                }
                let depth = stack.len() - 1;
                if just_exhausted != Some(depth + 1) {
                    return fail("retract of a branch that was not closed off".into());
                }
                stack.pop();
                assigned[pair] = None;
                for slots in removed.iter_mut() {
                    for r in slots.iter_mut() {
                        if r.is_some_and(|tag| tag > depth) {
                            *r = None;
                        }
                    }
                }
                let slots = match &mut refuted[depth] {
                    Some((p, slots)) if *p == pair => slots,
                    _ => return fail("retract without a matching decision record".into()),
                };
                slots.insert(slot);
                let mut remaining = false;
                for s in 0..2 {
                    if removed[pair][s].is_none() && !slots.contains(&(s as u8)) {
                        remaining = true;
                    }
                }
                just_exhausted = if remaining { None } else { Some(depth) };
            }
        }
    }

    if !stack.is_empty() {
        return Err(format!(
            "certificate leaves {} decisions open",
            stack.len()
        ));
    }
    if sc.is_empty() {
        return Err("an empty scenario is trivially satisfiable".into());
    }
    if just_exhausted != Some(0) {
        return Err("certificate does not close off the root subset".into());
    }
    Ok(())
}
