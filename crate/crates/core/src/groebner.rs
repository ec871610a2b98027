//! Buchberger's algorithm over `F_p` in graded reverse lexicographic order,
//! used to decide whether homogeneous equations have a common zero over the
//! algebraic closure.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::Polynomial;

/// Cap on S-pairs reduced in one run.
pub const PAIR_BUDGET: u128 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mono(Vec<u32>);

impl Mono {
    fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when this is a pure power `x_i^e`, `e >= 1`.
    fn pure_power(&self) -> Option<usize> {
        let mut it = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Poly = BTreeMap<Mono, u64>;

struct Ring {
    f: PrimeField,
}

impl Ring {
    fn lead(&self, a: &Poly) -> Option<(Mono, u64)> {
        a.iter().next_back().map(|(m, &c)| (m.clone(), c))
    }

    fn make_monic(&self, a: &mut Poly) {
        if let Some((_, c)) = self.lead(a) {
            let inv = self.f.inv(&c).expect("nonzero");
            for x in a.values_mut() {
                *x = self.f.mul(x, &inv);
            }
        }
    }

    /// `a -= c * m * b`.
    fn sub_mul(&self, a: &mut Poly, c: u64, m: &Mono, b: &Poly) {
        for (bm, bc) in b {
            let key = bm.mul(m);
            let delta = self.f.mul(&c, bc);
            let entry = a.entry(key.clone()).or_insert(0);
            *entry = self.f.sub(entry, &delta);
            if *entry == 0 {
                a.remove(&key);
            }
        }
    }

    /// Full reduction of `a` by the monic polynomials `basis`.
    fn reduce(&self, mut a: Poly, basis: &[Poly], leads: &[Mono]) -> Poly {
        let mut out = Poly::new();
        while let Some((m, c)) = self.lead(&a) {
            match leads.iter().position(|l| l.divides(&m)) {
                Some(i) => {
                    let q = m.div(&leads[i]);
                    self.sub_mul(&mut a, c, &q, &basis[i]);
                }
                None => {
                    a.remove(&m);
                    out.insert(m, c);
                }
            }
        }
        out
    }

    fn spoly(&self, a: &Poly, la: &Mono, b: &Poly, lb: &Mono) -> Poly {
        let l = la.lcm(lb);
        let mut out = Poly::new();
        self.sub_mul(&mut out, self.f.p() - 1, &l.div(la), a);
        self.sub_mul(&mut out, 1, &l.div(lb), b);
        out
    }
}

fn convert(f: &PrimeField, p: &Polynomial<PrimeField>) -> Poly {
    p.terms().filter(|(_, c)| !f.is_zero(c)).map(|(e, c)| (Mono(e.clone()), *c)).collect()
}

/// Outcome of a Buchberger run: the (not inter-reduced) basis, or an early
/// stop once every variable has a pure power among the leading monomials.
struct Run {
    basis: Vec<Poly>,
    leads: Vec<Mono>,
    m_primary: bool,
}

fn buchberger(field: PrimeField, gens: &[Polynomial<PrimeField>], stop_when_m_primary: bool) -> Result<Run> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let ring = Ring { f: field };
    let mut basis: Vec<Poly> = Vec::new();
    let mut leads: Vec<Mono> = Vec::new();
    let mut powers = vec![false; nvars];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut processed: u128 = 0;

    let mut pending: Vec<Poly> = gens.iter().map(|g| convert(&field, g)).filter(|p| !p.is_empty()).collect();
    pending.sort_by(|a, b| b.keys().next_back().cmp(&a.keys().next_back()));
    loop {
        let next = if let Some(p) = pending.pop() {
            Some(p)
        } else {
            let Some(idx) = (0..pairs.len()).min_by_key(|&i| {
                let (a, b) = pairs[i];
                leads[a].lcm(&leads[b]).deg()
            }) else {
                break;
            };
            let (a, b) = pairs.swap_remove(idx);
            processed += 1;
            if processed > PAIR_BUDGET {
                return Err(Error::BudgetExceeded { needed: processed, cap: PAIR_BUDGET });
            }
            if leads[a].coprime(&leads[b]) {
                continue;
            }
            Some(ring.spoly(&basis[a], &leads[a], &basis[b], &leads[b]))
        };
        let Some(h) = next else { break };
        let mut h = ring.reduce(h, &basis, &leads);
        if h.is_empty() {
            continue;
        }
        ring.make_monic(&mut h);
        let lh = ring.lead(&h).expect("nonzero").0;
        let m = basis.len();
        // Gebauer-Moller chain criterion on the existing pairs.
        pairs.retain(|&(a, b)| {
            let l = leads[a].lcm(&leads[b]);
            !(lh.divides(&l) && leads[a].lcm(&lh) != l && leads[b].lcm(&lh) != l)
        });
        pairs.extend((0..m).map(|i| (i, m)));
        if lh.deg() == 0 {
            return Ok(Run { basis: vec![h], leads: vec![lh], m_primary: true });
        }
        if let Some(i) = lh.pure_power() {
            powers[i] = true;
        }
        basis.push(h);
        leads.push(lh);
        if stop_when_m_primary && powers.iter().all(|&b| b) {
            return Ok(Run { basis, leads, m_primary: true });
        }
    }
    let m_primary = powers.iter().all(|&b| b);
    Ok(Run { basis, leads, m_primary })
}

/// Reduced Groebner basis in grevlex order, leading term last in each polynomial's term map.
pub fn groebner_basis(field: PrimeField, gens: &[Polynomial<PrimeField>]) -> Result<Vec<Polynomial<PrimeField>>> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let run = buchberger(field, gens, false)?;
    let ring = Ring { f: field };
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..run.basis.len() {
        let redundant = (0..run.basis.len()).any(|j| {
            j != i && run.leads[j].divides(&run.leads[i]) && (run.leads[j] != run.leads[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let basis: Vec<Poly> = keep.iter().map(|&i| run.basis[i].clone()).collect();
    let leads: Vec<Mono> = keep.iter().map(|&i| run.leads[i].clone()).collect();
    let mut out = Vec::new();
    for i in 0..basis.len() {
        let (lm, lc) = ring.lead(&basis[i]).expect("nonzero");
        let mut tail = basis[i].clone();
        tail.remove(&lm);
        let others: Vec<Poly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let other_leads: Vec<Mono> = leads.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m.clone()).collect();
        let mut red = ring.reduce(tail, &others, &other_leads);
        red.insert(lm, lc);
        let terms = red.into_iter().map(|(m, c)| (m.0, c));
        out.push(Polynomial::from_terms(field, nvars, terms));
    }
    out.sort_by(|a, b| {
        let la = a.terms().map(|(e, _)| Mono(e.clone())).max();
        let lb = b.terms().map(|(e, _)| Mono(e.clone())).max();
        la.cmp(&lb)
    });
    Ok(out)
}

/// Whether homogeneous `gens` have no common zero in projective space over
/// the algebraic closure of `F_p`, i.e. the ideal is primary to the
/// irrelevant ideal.
pub fn projectively_empty(field: PrimeField, nvars: usize, gens: &[Polynomial<PrimeField>]) -> Result<bool> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::InvalidParameters("projective emptiness needs homogeneous equations".into()));
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(nvars == 0);
    }
    Ok(buchberger(field, gens, true)?.m_primary)
}
