//! Roots of univariate polynomials in the base field. Factors without roots are
//! returned as a residual rather than factored further.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::{Poly, PolyRing};
use super::primefield::PrimeField;
use super::rational::{Rationals, Q};
use super::ring::{Field, GcdDomain, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit<E> {
    /// Distinct roots with multiplicities, in a deterministic order.
    pub roots: Vec<(E, usize)>,
    /// Monic cofactor with no roots in the field.
    pub residual: Poly<E>,
}

pub trait RootFinding: Field {
    fn split_roots(&self, p: &Poly<Self::Elem>) -> RootSplit<Self::Elem>;
}

fn strip_roots<F: Field>(
    pr: &PolyRing<F>,
    p: &Poly<F::Elem>,
    candidates: Vec<F::Elem>,
) -> RootSplit<F::Elem> {
    let mut cur = pr.monic(p);
    let mut roots = Vec::new();
    for r in candidates {
        let v = pr.valuation_at(&cur, &r).unwrap_or(0);
        if v > 0 {
            let lin = pr.pow(&pr.linear(&r), v as u64);
            cur = pr.div_exact_poly(&cur, &lin);
            roots.push((r, v));
        }
    }
    RootSplit { roots, residual: cur }
}

impl<F: Field> PolyRing<F> {
    pub(crate) fn div_exact_poly(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        use super::ring::Domain;
        self.div_exact(a, b).expect("exact polynomial division")
    }
}

impl RootFinding for Rationals {
    fn split_roots(&self, p: &Poly<Q>) -> RootSplit<Q> {
        let pr = PolyRing::new(Rationals, "t");
        if p.is_empty() {
            return RootSplit { roots: Vec::new(), residual: Vec::new() };
        }
        // Clear denominators, then apply the rational root theorem to the
        // squarefree part with the zero root removed.
        let sq = squarefree(&pr, p);
        let lcm = sq.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = sq.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
        let shift = ints.iter().take_while(|c| c.is_zero()).count();
        let ints = &ints[shift..];
        let mut cands = Vec::new();
        if shift > 0 {
            cands.push(Q::zero());
        }
        if ints.len() > 1 {
            if let (Some(a0), Some(an)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap())) {
                let mut seen = std::collections::BTreeSet::new();
                for num in &a0 {
                    for den in &an {
                        for s in [1i64, -1] {
                            let r = Q::new(BigInt::from(s) * num, den.clone());
                            if seen.insert(r.clone()) {
                                cands.push(r);
                            }
                        }
                    }
                }
            }
        }
        cands.sort();
        strip_roots(&pr, p, cands)
    }
}

/// Positive divisors of |n| when |n| fits comfortably for trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1u64 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn squarefree<F: Field>(pr: &PolyRing<F>, p: &Poly<F::Elem>) -> Poly<F::Elem> {
    let d = pr.derivative(p);
    if d.is_empty() {
        return pr.monic(p);
    }
    let g = pr.gcd(p, &d);
    pr.monic(&pr.div_exact_poly(p, &g))
}

impl RootFinding for PrimeField {
    fn split_roots(&self, p: &Poly<u64>) -> RootSplit<u64> {
        let pr = PolyRing::new(*self, "t");
        if p.is_empty() {
            return RootSplit { roots: Vec::new(), residual: Vec::new() };
        }
        let mut roots = Vec::new();
        let x = pr.gen();
        let prime = self.modulus();
        // Product of distinct linear factors: gcd(p, t^p - t).
        let xp = pr.pow_mod(&x, prime, p);
        let lin = pr.gcd(p, &pr.sub(&xp, &x));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        equal_degree_split(&pr, &lin, &mut rng, &mut roots);
        roots.sort();
        strip_roots(&pr, p, roots)
    }
}

/// Cantor-Zassenhaus splitting of a product of distinct linear factors.
fn equal_degree_split(pr: &PolyRing<PrimeField>, f: &Poly<u64>, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    let fld = *pr.base();
    match pr.degree(f) {
        None | Some(0) => {}
        Some(1) => {
            let m = pr.monic(f);
            out.push(fld.neg(&m[0]));
        }
        Some(_) => {
            let e = (fld.modulus() - 1) / 2;
            loop {
                let a = fld.random_elem(rng);
                let g = pr.sub(&pr.pow_mod(&pr.linear(&fld.neg(&a)), e, f), &pr.one());
                let d = pr.gcd(f, &g);
                let dd = pr.degree(&d).unwrap_or(0);
                if dd > 0 && dd < pr.degree(f).unwrap() {
                    let other = pr.div_exact_poly(f, &d);
                    equal_degree_split(pr, &d, rng, out);
                    equal_degree_split(pr, &other, rng, out);
                    return;
                }
            }
        }
    }
}
