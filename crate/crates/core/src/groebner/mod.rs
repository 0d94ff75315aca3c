//! Buchberger's algorithm over finite fields, for deciding whether a
//! homogeneous ideal cuts out the empty projective scheme.

use std::collections::BTreeSet;

use crate::ff::FieldElement;
use crate::mpoly::{Field, Monomial, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("generator {0} is not weighted-homogeneous")]
    NotHomogeneous(usize),
    #[error("generators do not share a variable count")]
    MixedArity,
}

/// Generators of an ideal in `F_q[x_1..x_v]`, zero generators dropped.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    field: Field,
    nvars: usize,
    generators: Vec<MultiPoly<FieldElement>>,
}

impl IdealBasis {
    pub fn new(field: &Field, nvars: usize, generators: Vec<MultiPoly<FieldElement>>) -> Result<Self, GroebnerError> {
        if generators.iter().any(|g| g.nvars() != nvars) {
            return Err(GroebnerError::MixedArity);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealBasis { field: field.clone(), nvars, generators })
    }

    pub fn generators(&self) -> &[MultiPoly<FieldElement>] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

/// Terms in descending grevlex order.
type Poly = Vec<(Monomial, FieldElement)>;

fn to_poly(f: &MultiPoly<FieldElement>) -> Poly {
    f.terms().rev().map(|(m, c)| (*m, *c)).collect()
}

fn from_poly(field: &Field, nvars: usize, p: &Poly) -> MultiPoly<FieldElement> {
    let mut r = MultiPoly::zero(field, nvars);
    for (m, c) in p {
        r.add_term(*m, *c);
    }
    r
}

/// `a - c * m * b`, both sorted descending.
fn sub_mul(field: &Field, a: &Poly, c: FieldElement, m: &Monomial, b: &Poly) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        let next_b = b.get(j).map(|(bm, bc)| (bm.mul(m), field.mul(*bc, c)));
        match (a.get(i), next_b) {
            (Some(&(am, ac)), Some((bm, bc))) => match am.cmp(&bm) {
                std::cmp::Ordering::Greater => {
                    out.push((am, ac));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((bm, field.neg(bc)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = field.sub(ac, bc);
                    if !s.is_zero() {
                        out.push((am, s));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(&t), None) => {
                out.push(t);
                i += 1;
            }
            (None, Some((bm, bc))) => {
                out.push((bm, field.neg(bc)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn make_monic(field: &Field, p: &mut Poly) {
    if let Some(&(_, lc)) = p.first() {
        let inv = field.inv(lc).expect("nonzero leading coefficient");
        for (_, c) in p.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
}

/// Full reduction of `f` by monic polynomials `g`.
fn reduce(field: &Field, f: &Poly, g: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut done: Poly = Vec::new();
    while let Some(&(m, c)) = p.first() {
        match g.iter().find(|gi| gi[0].0.divides(&m)) {
            Some(gi) => {
                let q = gi[0].0.quotient(&m);
                p = sub_mul(field, &p, c, &q, gi);
            }
            None => {
                done.push((m, c));
                p.remove(0);
            }
        }
    }
    done
}

fn s_poly(field: &Field, f: &Poly, g: &Poly) -> Poly {
    let l = f[0].0.lcm(&g[0].0);
    let fm = f[0].0.quotient(&l);
    let gm = g[0].0.quotient(&l);
    let zero = Vec::new();
    let a = sub_mul(field, &zero, field.neg(field.one()), &fm, f);
    sub_mul(field, &a, field.one(), &gm, g)
}

/// Interreduces a Gröbner basis into the reduced one, sorted by leading
/// monomial.
fn interreduce(field: &Field, mut g: Vec<Poly>) -> Vec<Poly> {
    g.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, gi) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, gj)| {
            j != i && gj[0].0.divides(&gi[0].0) && (gj[0].0 != gi[0].0 || j < i)
        });
        if !redundant {
            minimal.push(gi.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let lead = minimal[i][0];
        let tail: Poly = minimal[i][1..].to_vec();
        let mut r = vec![lead];
        r.extend(reduce(field, &tail, &others));
        make_monic(field, &mut r);
        out.push(r);
    }
    out
}

/// Reduced Gröbner basis under grevlex, using the normal selection strategy
/// with Buchberger's coprime and chain criteria.
pub fn buchberger(basis: &IdealBasis) -> IdealBasis {
    let field = &basis.field;
    let mut g: Vec<Poly> = Vec::new();
    for f in &basis.generators {
        let mut p = reduce(field, &to_poly(f), &g);
        if p.is_empty() {
            continue;
        }
        make_monic(field, &mut p);
        g.push(p);
    }
    // Pairs keyed by (lcm degree, lcm, i, j) so the set pops the normal-strategy choice.
    let mut pairs: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let mut live: Vec<bool> = vec![true; g.len()];
    for j in 0..g.len() {
        for i in 0..j {
            let l = g[i][0].0.lcm(&g[j][0].0);
            pairs.insert((l.degree(), l, i, j));
        }
    }
    while let Some(pair) = pairs.pop_first() {
        let (_, l, i, j) = pair;
        if !live[i] || !live[j] {
            continue;
        }
        if g[i][0].0.is_coprime(&g[j][0].0) {
            continue;
        }
        // Chain criterion: some k with lm(k) | lcm and both other pairs already handled.
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && live[k] && g[k][0].0.divides(&l) && {
                let (a, b) = (i.min(k), i.max(k));
                let (c, d) = (j.min(k), j.max(k));
                let lik = g[a][0].0.lcm(&g[b][0].0);
                let ljk = g[c][0].0.lcm(&g[d][0].0);
                !pairs.contains(&(lik.degree(), lik, a, b)) && !pairs.contains(&(ljk.degree(), ljk, c, d))
            }
        });
        if chain {
            continue;
        }
        let active: Vec<Poly> = g.iter().zip(&live).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
        let mut h = reduce(field, &s_poly(field, &g[i], &g[j]), &active);
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        let n = g.len();
        let hm = h[0].0;
        g.push(h);
        live.push(true);
        for k in 0..n {
            if live[k] {
                let l = g[k][0].0.lcm(&hm);
                pairs.insert((l.degree(), l, k, n));
            }
        }
        if hm.degree() == 0 {
            break;
        }
    }
    let kept: Vec<Poly> = g.into_iter().zip(live).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    let reduced = if kept.iter().any(|p| p[0].0.degree() == 0) {
        vec![vec![(Monomial::one(basis.nvars), field.one())]]
    } else {
        interreduce(field, kept)
    };
    IdealBasis {
        field: field.clone(),
        nvars: basis.nvars,
        generators: reduced.iter().map(|p| from_poly(field, basis.nvars, p)).collect(),
    }
}

/// Remainder of `f` on division by a Gröbner basis.
pub fn normal_form(f: &MultiPoly<FieldElement>, gb: &IdealBasis) -> MultiPoly<FieldElement> {
    let g: Vec<Poly> = gb.generators.iter().map(to_poly).collect();
    let mut g = g;
    for p in g.iter_mut() {
        make_monic(&gb.field, p);
    }
    from_poly(&gb.field, gb.nvars, &reduce(&gb.field, &to_poly(f), &g))
}

/// True iff the only common zero over the algebraic closure of the
/// weighted-homogeneous generators is the origin.
pub fn projective_empty(basis: &IdealBasis, weights: &[u32]) -> Result<bool, GroebnerError> {
    for (i, g) in basis.generators.iter().enumerate() {
        if g.weighted_homogeneous_degree(weights).is_none() {
            return Err(GroebnerError::NotHomogeneous(i));
        }
    }
    let gb = buchberger(basis);
    let mut covered = vec![false; basis.nvars];
    for g in &gb.generators {
        let (m, _) = g.leading().expect("nonzero");
        if m.degree() == 0 {
            return Ok(true);
        }
        if let Some(i) = m.pure_power_of() {
            covered[i] = true;
        }
    }
    Ok(covered.iter().all(|&c| c))
}
