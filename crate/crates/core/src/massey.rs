//! Massey products evaluated on relators through Magnus coefficients, the
//! relators of the semidirect presentation built from an automorphism, and
//! the comparison between p-Johnson coefficients and Massey values.
//!
//! For a defining system `A = (a_kl)` and a relator `f`,
//!
//! ```text
//! <a_1, ..., a_m>_A(f) = sum_j (-1)^(j+1) sum_{c_1+...+c_j = m}
//!     sum_{i_1..i_j} a_{1,1+c_1}(g_{i_1}) ... a_{m+1-c_j,m+1}(g_{i_j}) eps(i_1...i_j; f)
//! ```
//!
//! where the position `(1, m+1)` never occurs in `A`, so the `j = 1` term is
//! always absent.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::autom::{aj_depth, AutDepth, GroupEndo, Iterate, JohnsonTable};
use crate::context::{GroupContext, MAX_RANK, MAX_TRUNC};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::magnus::{magnus_embed, Monomial, TruncSeries};
use crate::words::{Letter, Word};

/// Values `a_kl(g_i)` of a defining system on the presentation generators,
/// for `1 <= k < l <= m+1` with `(k, l) != (1, m+1)`. Missing values are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    field: PrimeField,
    m: usize,
    generators: usize,
    values: BTreeMap<(usize, usize, usize), u32>,
}

impl DefiningSystem {
    /// An all-zero system for a product of length `m` on `generators` generators.
    pub fn new(p: u32, m: usize, generators: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if p == 2 {
            return Err(Error::OddPrimeRequired(p));
        }
        if !(2..=MAX_TRUNC).contains(&m) {
            return Err(Error::MalformedDefiningSystem(format!("product length {m} must lie in 2..={MAX_TRUNC}")));
        }
        if generators == 0 || generators > MAX_RANK {
            return Err(Error::RankOutOfRange(generators));
        }
        Ok(DefiningSystem { field, m, generators, values: BTreeMap::new() })
    }

    /// The system with `a_{k,k+1} = g_{i_k}^*` and nothing else.
    pub fn superdiagonal(p: u32, mono: &Monomial, generators: usize) -> Result<Self> {
        let mut ds = DefiningSystem::new(p, mono.degree(), generators)?;
        for (k, i) in mono.letters().enumerate() {
            ds.set(k + 1, k + 2, i, 1)?;
        }
        Ok(ds)
    }

    pub fn set(&mut self, k: usize, l: usize, i: usize, value: i64) -> Result<()> {
        let m = self.m;
        if !(1 <= k && k < l && l <= m + 1) {
            return Err(Error::MalformedDefiningSystem(format!("position ({k},{l}) outside 1 <= k < l <= {}", m + 1)));
        }
        if (k, l) == (1, m + 1) {
            return Err(Error::MalformedDefiningSystem(format!("position (1,{}) is not part of a defining system", m + 1)));
        }
        if i == 0 || i > self.generators {
            return Err(Error::GeneratorOutOfRange { index: i, max: self.generators });
        }
        let v = self.field.reduce(value);
        if v == 0 {
            self.values.remove(&(k, l, i));
        } else {
            self.values.insert((k, l, i), v);
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    /// The product length `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// `a_kl(g_i)`.
    pub fn value(&self, k: usize, l: usize, i: usize) -> u32 {
        self.values.get(&(k, l, i)).copied().unwrap_or(0)
    }

    /// Nonzero values `((k, l, i), value)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), u32)> + '_ {
        self.values.iter().map(|(key, &v)| (*key, v))
    }

    /// `sum over c of prod_t a_{k_t, k_t + c_t}(g_{i_t})` for one monomial,
    /// by a walk from column 1 to column `m+1`.
    fn path_weight(&self, mono: &Monomial) -> u32 {
        let f = self.field;
        let end = self.m + 1;
        let mut reach = vec![0u32; end + 1];
        reach[1] = 1;
        for i in mono.letters() {
            let mut next = vec![0u32; end + 1];
            for k in 1..end {
                if reach[k] == 0 {
                    continue;
                }
                for (l, slot) in next.iter_mut().enumerate().skip(k + 1) {
                    let a = self.value(k, l, i);
                    if a != 0 {
                        *slot = f.add(*slot, f.mul(reach[k], a));
                    }
                }
            }
            reach = next;
            if reach.iter().all(|&v| v == 0) {
                return 0;
            }
        }
        reach[end]
    }
}

/// `<alpha_1, ..., alpha_m>_A` on the class of `relator`.
pub fn massey_eval(ds: &DefiningSystem, relator: &Word) -> Result<u32> {
    if relator.max_generator() > ds.generators {
        return Err(Error::GeneratorOutOfRange { index: relator.max_generator(), max: ds.generators });
    }
    let ctx = GroupContext::new(ds.p(), ds.generators, ds.m.max(2))?;
    massey_eval_expansion(ds, &magnus_embed(relator, &ctx)?)
}

/// The same evaluation, starting from `theta(relator)`.
pub fn massey_eval_expansion(ds: &DefiningSystem, theta: &TruncSeries) -> Result<u32> {
    let ctx = theta.ctx();
    if ctx.p() != ds.p() {
        return Err(Error::ContextMismatch);
    }
    if ctx.trunc() < ds.m {
        return Err(Error::LevelOutOfRange { level: ds.m, max: ctx.trunc() });
    }
    let f = ds.field;
    let mut total = 0;
    for (mono, eps) in theta.terms() {
        let j = mono.degree();
        if j == 0 || j > ds.m {
            continue;
        }
        let w = ds.path_weight(mono);
        if w != 0 {
            total = f.add(total, f.mul(f.sign(j + 1), f.mul(w, eps)));
        }
    }
    Ok(total)
}

/// Relators `R_j = phi^(p^d)(x_j) (x_{r+1} x_j x_{r+1}^-1)^-1` over `r+1`
/// generators, with their reduced forms `R'_j = phi^(p^d)(x_j) x_j^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorSet {
    pub d: u32,
    pub relators: Vec<Word>,
    pub reduced: Vec<Word>,
}

fn require_ia(phi: &GroupEndo) -> Result<()> {
    phi.ctx().require_odd()?;
    match aj_depth(phi)? {
        AutDepth::Level(0) => Err(Error::NotInAndreadakis { level: 1, depth: 0 }),
        _ => Ok(()),
    }
}

pub fn build_relators(phi: &GroupEndo, d: u32) -> Result<RelatorSet> {
    require_ia(phi)?;
    let ctx = phi.ctx();
    let t = ctx.rank() + 1;
    ctx.extended()?;
    let k = (ctx.p() as u64).checked_pow(d).ok_or(Error::ExponentOverflow)?;
    let iterate = phi.power(k)?;
    let mut relators = Vec::new();
    let mut reduced = Vec::new();
    for j in 1..=ctx.rank() {
        let image = iterate.image(j);
        let mut r = image.clone();
        r.append(&Word::from_letters([Letter::new(t, 1), Letter::new(j, -1), Letter::new(t, -1)]));
        relators.push(r);
        let mut rr = image.clone();
        rr.push(Letter::new(j, -1));
        reduced.push(rr);
    }
    Ok(RelatorSet { d, relators, reduced })
}

/// Outcome of comparing `tau_{m(d)}(phi^(p^d))(mono; X_j)` with the Massey
/// value `<g_{i_1}^*, ..., g_{i_{m(d)+1}}^*>(xi_{j,d})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonMasseyCheck {
    pub d: u32,
    pub j: usize,
    pub mono: Monomial,
    /// `m(d)`, the Andreadakis-Johnson depth of the iterate.
    pub level: usize,
    /// The p-Johnson coefficient.
    pub lhs: u32,
    /// The Massey value on `R_{j,d}`, superdiagonal defining system.
    pub massey: u32,
    /// `(-1)^{m(d)} * massey`, which is `eps(mono; R'_{j,d})`.
    pub rhs: u32,
    pub equal: bool,
    /// Every Magnus coefficient of `R_{j,d}` in `x_1..x_r` of degree
    /// `1..=m(d)` vanishes, so the shorter Massey products are zero.
    pub lower_terms_vanish: bool,
}

/// The iterate's depth, its `tau_{m(d)}` table and `theta(R_{j,d})` for
/// every `j`, computed once per `(phi, d)`.
struct Prepared {
    ctx: GroupContext,
    d: u32,
    level: usize,
    table: JohnsonTable,
    relators: Vec<TruncSeries>,
}

fn prepare(phi: &GroupEndo, d: u32) -> Result<Option<Prepared>> {
    require_ia(phi)?;
    let ctx = *phi.ctx();
    let ext = ctx.extended()?;
    let iterate = Iterate::p_power(phi, d)?;
    let level = match iterate.aj_depth()? {
        AutDepth::Level(m) => m,
        AutDepth::BeyondHorizon => return Ok(None),
    };
    let table = iterate.johnson_hom(level)?;
    let t = ctx.rank() + 1;
    let algebra = match iterate.as_word() {
        Some(_) => None,
        None => Some(iterate.algebra()?),
    };
    let mut relators = Vec::with_capacity(ctx.rank());
    for j in 1..=ctx.rank() {
        let tail = Word::from_letters([Letter::new(t, 1), Letter::new(j, -1), Letter::new(t, -1)]);
        let theta = match (iterate.as_word(), &algebra) {
            (Some(e), _) => magnus_embed(&e.image(j).mul(&tail), &ext)?,
            (None, Some(a)) => {
                let image = &a.image(j).in_context(ext)? + &TruncSeries::one(ext);
                &image * &magnus_embed(&tail, &ext)?
            }
            (None, None) => unreachable!("algebra form is built whenever words are absent"),
        };
        relators.push(theta);
    }
    Ok(Some(Prepared { ctx, d, level, table, relators }))
}

impl Prepared {
    fn check(&self, mono: &Monomial, j: usize) -> Result<JohnsonMasseyCheck> {
        let (ctx, level) = (self.ctx, self.level);
        if mono.degree() != level + 1 {
            return Err(Error::DegreeMismatch { expected: level + 1, found: mono.degree() });
        }
        let lhs = self.table.coefficient(j, mono);
        let theta_r = &self.relators[j - 1];
        let ds = DefiningSystem::superdiagonal(ctx.p(), mono, ctx.rank() + 1)?;
        let massey = massey_eval_expansion(&ds, theta_r)?;
        let rhs = ctx.field().mul(ctx.field().sign(level), massey);
        let lower_terms_vanish = theta_r
            .terms()
            .all(|(m, _)| m.degree() == 0 || m.degree() > level || m.max_index() > ctx.rank());
        Ok(JohnsonMasseyCheck {
            d: self.d,
            j,
            mono: *mono,
            level,
            lhs,
            massey,
            rhs,
            equal: lhs == rhs,
            lower_terms_vanish,
        })
    }
}

pub fn johnson_massey_check(phi: &GroupEndo, d: u32, mono: &Monomial, j: usize) -> Result<JohnsonMasseyCheck> {
    let ctx = *phi.ctx();
    ctx.check_generator(j)?;
    if mono.max_index() > ctx.rank() {
        return Err(Error::GeneratorOutOfRange { index: mono.max_index(), max: ctx.rank() });
    }
    match prepare(phi, d)? {
        Some(prep) => prep.check(mono, j),
        None => Err(Error::LevelOutOfRange { level: ctx.trunc(), max: ctx.trunc() - 1 }),
    }
}

/// Every `(j, mono)` check for one `d`, or `None` when `m(d) + 1` exceeds `N`.
pub fn johnson_massey_grid(phi: &GroupEndo, d: u32) -> Result<Option<Vec<JohnsonMasseyCheck>>> {
    let Some(prep) = prepare(phi, d)? else { return Ok(None) };
    let rank = prep.ctx.rank();
    let mut out = Vec::new();
    for j in 1..=rank {
        for mono in Monomial::all_of_degree(rank, prep.level + 1) {
            out.push(prep.check(&mono, j)?);
        }
    }
    Ok(Some(out))
}
