//! Homfly polynomial of the link diagram `L_G` drawn on an orientable
//! signed ribbon graph.
//!
//! `L_G` is only ever handled through its skein expansion. Resolving the
//! crossing at every edge yields crossing-free diagrams, one per state `F`,
//! made of `∂(F)` disjoint circles; each evaluates to `δ^(∂(F)−1)` with
//! `δ = (X − X⁻¹)/Y`. Powers of `δ` are tracked symbolically and expanded
//! once at the end.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brpoly::{br_polynomial, restrict_to_surface, StateEngine};
use crate::dual::partial_dual;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quad::{QuadField, QuadValue};
use crate::ribbon::{EdgeSubset, RibbonGraph, Sign};

pub const HOMFLY_VARS: [&str; 2] = ["X", "Y"];

/// A homfly polynomial in `Z[X^±1, Y^±1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomflyPoly(pub LaurentPoly);

impl std::fmt::Display for HomflyPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Smoothing coefficients at one edge, keyed by whether the edge joins the
/// state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolutionWeights {
    /// Doubled `(X, Y)` exponents of the coefficient when the edge is in `F`.
    pub include: [i64; 2],
    /// Doubled `(X, Y)` exponents when the edge is not in `F`.
    pub exclude: [i64; 2],
}

const X_INV_SQ: [i64; 2] = [-4, 0];
const Y_OVER_X: [i64; 2] = [-2, 2];

impl ResolutionWeights {
    pub fn for_sign(sign: Sign) -> Self {
        match sign {
            Sign::Plus => ResolutionWeights { include: Y_OVER_X, exclude: X_INV_SQ },
            Sign::Minus => ResolutionWeights { include: X_INV_SQ, exclude: Y_OVER_X },
        }
    }
}

/// `δ = (X − X⁻¹)/Y`.
pub fn delta() -> LaurentPoly {
    LaurentPoly::parse("X*Y^-1 - X^-1*Y^-1", &HOMFLY_VARS).expect("valid literal")
}

fn require_orientable(graph: &RibbonGraph) -> Result<()> {
    if graph.is_orientable() {
        Ok(())
    } else {
        Err(Error::Domain("homfly polynomial is only defined for orientable ribbon graphs".into()))
    }
}

/// Expand `Σ c · X^i Y^j δ^m` given counts keyed by `[2i, 2j, m]`.
fn expand_delta(counts: HashMap<[i64; 3], u64>) -> LaurentPoly {
    let mut by_power: BTreeMap<i64, Vec<(Vec<i64>, BigInt)>> = BTreeMap::new();
    for ([x, y, m], c) in counts {
        by_power.entry(m).or_default().push((vec![x, y], BigInt::from(c)));
    }
    let d = delta();
    let mut total = LaurentPoly::zero(&HOMFLY_VARS);
    for (m, terms) in by_power {
        let weights = LaurentPoly::from_terms(&HOMFLY_VARS, terms);
        total = &total + &(&weights * &d.pow(m as u32));
    }
    total
}

/// One summand of the state-sum formula, before expanding `δ`:
/// `monomial · δ^delta_power` with coefficient `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomflyStateTerm {
    pub mask: u64,
    /// Doubled `(X, Y)` exponents of the monomial weight.
    pub monomial: [i64; 2],
    pub delta_power: i64,
}

/// Per-state summands of
/// `P(L_G) = δ⁻¹ (Y/X)^e₋ (X⁻²)^e₊ Σ_F δ^∂(F) Π_{e∈F} w_e`,
/// `w_e = XY` on positive and `(XY)⁻¹` on negative edges.
pub fn homfly_state_terms(graph: &RibbonGraph) -> Result<Vec<HomflyStateTerm>> {
    require_orientable(graph)?;
    let em = graph.count_sign(Sign::Minus) as i64;
    let ep = graph.count_sign(Sign::Plus) as i64;
    let pre = [2 * (-em - 2 * ep), 2 * em];
    let engine = StateEngine::new(graph);
    let mut out = Vec::with_capacity(engine.state_count() as usize);
    engine.for_each(0..engine.state_count(), |t| {
        let pos = (t.edges - t.negative) as i64;
        let neg = t.negative as i64;
        // Π w_e = (XY)^(pos − neg)
        let w = 2 * (pos - neg);
        debug_assert!(t.boundary >= 1);
        out.push(HomflyStateTerm {
            mask: t.mask,
            monomial: [pre[0] + w, pre[1] + w],
            delta_power: t.boundary as i64 - 1,
        });
    });
    Ok(out)
}

/// `P(L_G; X, Y)` from the ribbon-graph state-sum formula.
pub fn homfly_state_sum(graph: &RibbonGraph) -> Result<HomflyPoly> {
    let mut counts: HashMap<[i64; 3], u64> = HashMap::new();
    for t in homfly_state_terms(graph)? {
        *counts.entry([t.monomial[0], t.monomial[1], t.delta_power]).or_default() += 1;
    }
    Ok(HomflyPoly(expand_delta(counts)))
}

/// `P(L_G; X, Y)` by resolving every crossing with the skein relation and
/// evaluating the crossing-free diagrams. Shares no code with
/// [`homfly_state_sum`] beyond `δ`: boundary circles come from
/// [`RibbonGraph::boundary_count`] of explicit spanning sub-graphs.
pub fn homfly_resolution(graph: &RibbonGraph) -> Result<HomflyPoly> {
    require_orientable(graph)?;
    let weights: Vec<ResolutionWeights> = graph.edges().iter().map(|e| ResolutionWeights::for_sign(e.sign)).collect();
    let e = graph.num_edges();
    if e >= 64 {
        return Err(Error::Input("at most 63 edges".into()));
    }
    let d = delta();
    let mut delta_powers: Vec<LaurentPoly> = vec![LaurentPoly::one(&HOMFLY_VARS)];
    let mut total = LaurentPoly::zero(&HOMFLY_VARS);
    for mask in 0..1u64 << e {
        let mut coef = [0i64; 2];
        for (i, w) in weights.iter().enumerate() {
            let pick = if mask >> i & 1 == 1 { w.include } else { w.exclude };
            coef[0] += pick[0];
            coef[1] += pick[1];
        }
        let state = graph.spanning_subgraph(&EdgeSubset::from_mask(graph, mask))?;
        let circles = state.boundary_count();
        while delta_powers.len() < circles {
            let next = delta_powers.last().unwrap() * &d;
            delta_powers.push(next);
        }
        let term = &LaurentPoly::monomial(&HOMFLY_VARS, coef.to_vec(), 1) * &delta_powers[circles - 1];
        total = &total + &term;
    }
    Ok(HomflyPoly(total))
}

/// `P(L_G) = P(L_{G^A})`.
pub fn verify_link_duality(graph: &RibbonGraph, subset: &EdgeSubset) -> Result<bool> {
    require_orientable(graph)?;
    let dual = partial_dual(graph, subset)?;
    Ok(homfly_state_sum(graph)? == homfly_state_sum(&dual)?)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Checks, at one rational point `(y, z)` with `y ∉ {0, −1}`, `z ≠ 0`:
/// `P(L_G; √(y+1), yz/√(y+1)) = (y+1)^−e x^k y^v z^(v+1) R_s(G; x, y, z)`
/// with `x = 1/(y z²)`, exactly in `Q(√(y+1))`.
pub fn check_transfer_at(
    graph: &RibbonGraph,
    homfly: &HomflyPoly,
    restricted_br: &LaurentPoly,
    y: &BigRational,
    z: &BigRational,
) -> Result<bool> {
    use num_traits::{One, Zero};
    if y.is_zero() || z.is_zero() || *y == -BigRational::one() {
        return Err(Error::Input(format!("degenerate sample y={y}, z={z}")));
    }
    let rho = y + BigRational::one();
    let field = QuadField::new(rho.clone());
    let root = field.sqrt();
    let root_inv = field.inv(&root)?;
    let big_y = field.mul(&QuadValue::rational(y * z), &root_inv);
    let lhs = homfly.0.eval_quad(&BTreeMap::from([("X", root), ("Y", big_y)]), &field)?;

    let (e, k, v) = (graph.num_edges() as i64, graph.num_components() as i64, graph.num_vertices() as i64);
    let x = (y * z * z).recip();
    let pow = |q: &BigRational, n: i64| -> BigRational {
        let p = num_traits::pow(q.clone(), n.unsigned_abs() as usize);
        if n < 0 {
            p.recip()
        } else {
            p
        }
    };
    let factor = pow(&rho, -e) * pow(&x, k) * pow(y, v) * pow(z, v + 1);
    let rs = restricted_br.eval_quad(
        &BTreeMap::from([("y", QuadValue::rational(y.clone())), ("z", QuadValue::rational(z.clone()))]),
        &field,
    )?;
    let rhs = field.mul(&QuadValue::rational(factor), &rs);
    Ok(lhs == rhs)
}

/// Checks the homfly / ribbon-graph polynomial transfer identity at
/// `samples` seeded random rational points.
pub fn verify_transfer(graph: &RibbonGraph, samples: usize, seed: u64) -> Result<bool> {
    let homfly = homfly_state_sum(graph)?;
    let restricted = restrict_to_surface(&br_polynomial(graph))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let y = rat(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        let z = rat(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        use num_traits::{One, Zero};
        if y.is_zero() || z.is_zero() || y == -BigRational::one() {
            continue;
        }
        if !check_transfer_at(graph, &homfly, &restricted, &y, &z)? {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}
