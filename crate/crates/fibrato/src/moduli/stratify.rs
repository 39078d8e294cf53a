//! Rank stratification of `F'` over the parameter space `(a, b, c, d)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactalg::linalg::{minor_gcd, rank, MinorGcd};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::multipoly::{MPoly, MultiPolyRing};
use crate::exactalg::poly::PolyRing;
use crate::exactalg::primefield::PrimeField;
use crate::exactalg::rational::{Rationals, Q};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::roots::RootFinding;
use crate::exactalg::smith::smith_normal_form;
use crate::parallel::{map_indexed, trial_rng, Execution};

use super::matriciona::{fprime, fprime_formal, param_ring, FPRIME_COLS, FPRIME_ROWS};
use super::ModuliError;

/// Dimension of the cokernel of `F'`.
pub fn h0_from_rank(rank: usize) -> usize {
    FPRIME_ROWS - rank
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRow {
    pub seed: u64,
    pub trial: usize,
    pub params: [u64; 4],
    pub rank: usize,
    pub corank: usize,
    pub h0: usize,
}

impl SampleRow {
    pub fn tsv(&self) -> String {
        let [a, b, c, d] = self.params;
        format!("{}\t{}\t{a}\t{b}\t{c}\t{d}\t{}\t{}\t{}", self.seed, self.trial, self.rank, self.corank, self.h0)
    }
}

pub const TSV_HEADER: &str = "seed\ttrial\ta\tb\tc\td\trank\tcorank\th0";

fn sample_at(f: &PrimeField, params: [u64; 4]) -> Result<usize, ModuliError> {
    Ok(rank(f, &fprime(f, &params)?))
}

/// One line `P + t Q` in parameter space and what it meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineProbe {
    /// Degree of the gcd of maximal minors of `F'` restricted to the line.
    pub gcd_degree: usize,
    /// Parameter values at the rational roots of that gcd, with coranks.
    pub hits: Vec<([u64; 4], usize)>,
}

fn probe_line(f: &PrimeField, base: [u64; 4], dir: [u64; 4]) -> Result<LineProbe, ModuliError> {
    let pr = PolyRing::new(*f, "t");
    let params: [_; 4] = std::array::from_fn(|i| pr.from_coeffs(vec![base[i], dir[i]]));
    let m = fprime(&pr, &params)?;
    let snf = smith_normal_form(&pr, &m);
    if snf.rank() < FPRIME_COLS {
        return Ok(LineProbe { gcd_degree: usize::MAX, hits: Vec::new() });
    }
    let g = snf.factors.iter().fold(pr.one(), |acc, x| pr.mul(&acc, x));
    let gcd_degree = pr.degree(&g).unwrap_or(0);
    let mut hits = Vec::new();
    for (t, _) in f.split_roots(&g).roots {
        let pt: [u64; 4] = std::array::from_fn(|i| f.add(&base[i], &f.mul(&t, &dir[i])));
        hits.push((pt, FPRIME_COLS - sample_at(f, pt)?));
    }
    Ok(LineProbe { gcd_degree, hits })
}

#[derive(Clone, Copy, Debug)]
pub struct StratifyOptions {
    pub samples: usize,
    pub lines: usize,
    pub seed: u64,
    pub prime: u64,
    pub exact_gcd: bool,
    pub exec: Execution,
}

impl Default for StratifyOptions {
    fn default() -> Self {
        StratifyOptions {
            samples: 10_000,
            lines: 100,
            seed: 0,
            prime: crate::exactalg::primefield::DEFAULT_PRIME,
            exact_gcd: false,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratificationReport {
    pub seed: u64,
    pub prime: u64,
    pub rows: Vec<SampleRow>,
    /// `corank ↦ count` over the random samples.
    pub corank_counts: BTreeMap<usize, usize>,
    pub generic_corank: usize,
    pub generic_fraction: f64,
    pub lines: usize,
    /// Lines on which the restricted minor gcd is nonconstant.
    pub lines_with_drop: usize,
    pub on_locus_points: usize,
    pub on_locus_corank_one: usize,
    /// Samples and on-locus points of corank at least 2.
    pub corank_two_sightings: usize,
    /// Gcd of the maximal minors over `Q[a, b, c, d]`, when requested.
    pub exact_gcd: Option<String>,
    pub caveat: &'static str,
}

impl StratificationReport {
    pub fn tsv(&self) -> String {
        let mut out = String::from(TSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.tsv());
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = Vec::new();
        s.push(format!("# samples {} seed {} prime {}", self.rows.len(), self.seed, self.prime));
        for (k, v) in &self.corank_counts {
            s.push(format!("# corank {k}: {v}"));
        }
        s.push(format!("# generic corank {} (h0 = {}) on {:.4} of samples", self.generic_corank, 2 + self.generic_corank, self.generic_fraction));
        s.push(format!("# lines with a rank drop: {} of {}", self.lines_with_drop, self.lines));
        s.push(format!("# on-locus points: {} ({} with corank 1, h0 = 3)", self.on_locus_points, self.on_locus_corank_one));
        s.push(format!("# corank >= 2 sightings: {}", self.corank_two_sightings));
        if let Some(g) = &self.exact_gcd {
            s.push(format!("# gcd of maximal minors: {g}"));
        }
        s.push(format!("# note: {}", self.caveat));
        s.join("\n") + "\n"
    }
}

pub fn stratify(opts: &StratifyOptions) -> Result<StratificationReport, ModuliError> {
    if opts.samples == 0 {
        return Err(ModuliError::InsufficientSamples(opts.samples));
    }
    let f = PrimeField::new(opts.prime).map_err(|e| ModuliError::Field(e.to_string()))?;
    let random_point = |rng: &mut rand_chacha::ChaCha8Rng| -> [u64; 4] { std::array::from_fn(|_| f.random_elem(rng)) };

    let rows = map_indexed(opts.exec, opts.samples, |t| {
        let mut rng = trial_rng(opts.seed, t as u64);
        let params = random_point(&mut rng);
        sample_at(&f, params).map(|rank| {
            let corank = FPRIME_COLS - rank;
            SampleRow { seed: opts.seed, trial: t, params, rank, corank, h0: h0_from_rank(rank) }
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut corank_counts = BTreeMap::new();
    for r in &rows {
        *corank_counts.entry(r.corank).or_insert(0) += 1;
    }
    let (&generic_corank, &top) = corank_counts.iter().max_by_key(|(_, &v)| v).expect("nonempty");

    // Lines use streams after the point samples so the two never overlap.
    let probes = map_indexed(opts.exec, opts.lines, |l| {
        let mut rng = trial_rng(opts.seed, (opts.samples + l) as u64);
        let (base, dir) = (random_point(&mut rng), random_point(&mut rng));
        probe_line(&f, base, dir)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let lines_with_drop = probes.iter().filter(|p| p.gcd_degree > 0).count();
    let hits: Vec<usize> = probes.iter().flat_map(|p| p.hits.iter().map(|h| h.1)).collect();

    let exact_gcd = if opts.exact_gcd { Some(exact_minor_gcd()?) } else { None };
    Ok(StratificationReport {
        seed: opts.seed,
        prime: opts.prime,
        corank_two_sightings: rows.iter().filter(|r| r.corank >= 2).count() + hits.iter().filter(|&&c| c >= 2).count(),
        generic_fraction: top as f64 / rows.len() as f64,
        rows,
        corank_counts,
        generic_corank,
        lines: opts.lines,
        lines_with_drop,
        on_locus_points: hits.len(),
        on_locus_corank_one: hits.iter().filter(|&&c| c == 1).count(),
        exact_gcd,
        caveat: "sampling shows consistency with a corank-2 locus of high codimension; it does not certify the codimension",
    })
}

/// Eliminate with constant pivots, keeping the gcd of maximal minors.
pub fn unit_reduce(r: &MultiPolyRing<Rationals>, m: &Matrix<MPoly<Q>>) -> Matrix<MPoly<Q>> {
    let mut a = m.clone();
    let mut rows: Vec<usize> = (0..a.rows()).collect();
    let mut cols: Vec<usize> = (0..a.cols()).collect();
    loop {
        let pivot = cols.iter().find_map(|&j| {
            rows.iter().find(|&&i| r.constant_value(a.get(i, j)).is_some_and(|c| !Rationals.is_zero(&c))).map(|&i| (i, j))
        });
        let Some((pi, pj)) = pivot else { break };
        let inv = r.constant(Rationals.inv(&r.constant_value(a.get(pi, pj)).expect("constant")));
        for &i in &rows {
            if i == pi || r.is_zero(a.get(i, pj)) {
                continue;
            }
            let factor = r.mul(a.get(i, pj), &inv);
            for &j in &cols {
                if j == pj || r.is_zero(a.get(pi, j)) {
                    continue;
                }
                let x = r.sub(a.get(i, j), &r.mul(&factor, a.get(pi, j)));
                a.set(i, j, x);
            }
        }
        rows.retain(|&i| i != pi);
        cols.retain(|&j| j != pj);
    }
    a.submatrix(&rows, &cols)
}

/// Gcd of the 16 × 16 minors of `F'` over `Q[a, b, c, d]`, as text.
pub fn exact_minor_gcd() -> Result<String, ModuliError> {
    let r = param_ring();
    let m = fprime_formal(&r);
    let red = unit_reduce(&r, &m);
    let g = if red.cols() == 0 {
        r.one()
    } else {
        match minor_gcd(&r, &red, red.cols()) {
            MinorGcd::Zero => return Err(ModuliError::Degenerate),
            MinorGcd::Value(g) => g,
        }
    };
    Ok(r.fmt_elem(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::sampling::specialize;
    use proptest::prelude::*;

    fn quick(samples: usize, lines: usize, seed: u64) -> StratificationReport {
        stratify(&StratifyOptions { samples, lines, seed, ..Default::default() }).unwrap()
    }

    /// `a b d^2 - a b - b^2 c d + c d` at a point of `F_p`.
    fn hypersurface(f: &PrimeField, [a, b, c, d]: [u64; 4]) -> u64 {
        let ab = f.mul(&a, &b);
        let cd = f.mul(&c, &d);
        let t = f.sub(&f.mul(&ab, &f.mul(&d, &d)), &ab);
        f.add(&f.sub(&t, &f.mul(&f.mul(&b, &b), &cd)), &cd)
    }

    #[test]
    fn exact_gcd_is_the_quartic() {
        assert_eq!(exact_minor_gcd().unwrap(), "a*b*d^2 - a*b - b^2*c*d + c*d");
        let r = param_ring();
        let red = unit_reduce(&r, &fprime_formal(&r));
        assert_eq!((red.rows(), red.cols()), (5, 3));
    }

    #[test]
    fn generic_samples_are_injective() {
        let rep = quick(200, 0, 7);
        assert_eq!(rep.generic_corank, 0);
        assert_eq!(rep.corank_counts.get(&0), Some(&200));
        assert!(rep.rows.iter().all(|r| r.h0 == 2 && r.rank == 16));
        assert_eq!(rep.corank_two_sightings, 0);
    }

    #[test]
    fn lines_meet_the_hypersurface_in_corank_one() {
        let rep = quick(10, 40, 3);
        assert_eq!(rep.lines_with_drop, 40);
        assert!(rep.on_locus_points > 0);
        assert_eq!(rep.on_locus_corank_one, rep.on_locus_points);
        assert_eq!(rep.corank_two_sightings, 0);
    }

    #[test]
    fn point_on_the_hypersurface() {
        // b = 2, c = 3, d = 5: a = c d (b^2 - 1) / (b (d^2 - 1)) = 45 / 48.
        let f = PrimeField::new(1_000_003).unwrap();
        let a = f.mul(&45, &f.inv(&48));
        let pt = [a, 2, 3, 5];
        assert_eq!(hypersurface(&f, pt), 0);
        assert_eq!(FPRIME_COLS - sample_at(&f, pt).unwrap(), 1);
        assert_eq!(h0_from_rank(sample_at(&f, pt).unwrap()), 3);
    }

    #[test]
    fn line_gcd_is_the_restricted_quartic() {
        let f = PrimeField::new(10_007).unwrap();
        let probe = probe_line(&f, [1, 2, 3, 4], [5, 6, 7, 9]).unwrap();
        assert_eq!(probe.gcd_degree, 4);
        for (pt, corank) in probe.hits {
            assert_eq!(hypersurface(&f, pt), 0);
            assert_eq!(corank, 1);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            stratify(&StratifyOptions { samples: 0, ..Default::default() }),
            Err(ModuliError::InsufficientSamples(0))
        );
        assert!(matches!(stratify(&StratifyOptions { prime: 15, ..Default::default() }), Err(ModuliError::Field(_))));
    }

    #[test]
    fn deterministic_and_schedule_independent() {
        let par = quick(50, 5, 11);
        let seq = stratify(&StratifyOptions { samples: 50, lines: 5, seed: 11, exec: Execution::Sequential, ..Default::default() })
            .unwrap();
        assert_eq!(par, seq);
        assert!(par.tsv().starts_with(TSV_HEADER));
        assert_eq!(par.tsv().lines().count(), 51);
        assert!(par.summary().contains("corank >= 2 sightings: 0"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn specialization_commutes(pt in prop::array::uniform4(0u64..10_007)) {
            let f = PrimeField::new(10_007).unwrap();
            let r = param_ring();
            let formal = specialize(&r, &fprime_formal(&r), &f, &pt).unwrap();
            prop_assert_eq!(formal, fprime(&f, &pt).unwrap());
        }

        #[test]
        fn h0_at_least_two(pt in prop::array::uniform4(0u64..101)) {
            let f = PrimeField::new(101).unwrap();
            let rank = sample_at(&f, pt).unwrap();
            prop_assert!(h0_from_rank(rank) >= 2);
            if hypersurface(&f, pt) != 0 {
                prop_assert_eq!(rank, 16);
            }
        }
    }
}
