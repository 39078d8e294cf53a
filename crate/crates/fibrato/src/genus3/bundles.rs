//! Bundles built from `σ2 : S^2 V1 → V2` over `P^1`: `V3`, `Ṽ4` and the
//! fiberwise test for the embedding of `L4'`.

use serde::Serialize;

use crate::exactalg::linalg::{inverse, kernel_basis, rank};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly::PolyRing;
use crate::exactalg::ring::Field;
use crate::exactalg::roots::RootFinding;
use crate::exactalg::smith::smith_normal_form;
use crate::p1bundles::bundle::sym_degrees;
use crate::p1bundles::cokernel::PointP1;
use crate::p1bundles::{cokernel_analysis, locally_free_certificate, BiForm, GradedMap, SplitBundle};

use super::maps::{build_maps_abc, pair_index, sym2_index};
use super::Genus3Error;

/// `V1` degrees read off the source `S^2 V1` of `σ2`.
pub fn v1_from_sigma2<F: Field>(sigma2: &GradedMap<F>) -> Result<Vec<i64>, Genus3Error> {
    let src = sigma2.source_degrees();
    if src.len() != 6 || sigma2.target_degrees().len() != 6 {
        return Err(Genus3Error::InvalidXi("σ2 must be a map between rank-6 bundles".into()));
    }
    let diag = [src[0], src[3], src[5]];
    if diag.iter().any(|d| d % 2 != 0) {
        return Err(Genus3Error::InvalidXi(format!("source {src:?} is not S^2 of a rank-3 split bundle")));
    }
    let v1: Vec<i64> = diag.iter().map(|d| d / 2).collect();
    if sym_degrees(&v1, 2) != src {
        return Err(Genus3Error::InvalidXi(format!("source {src:?} is not S^2 of a rank-3 split bundle")));
    }
    Ok(v1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelConic<E> {
    pub point: PointP1<E>,
    pub s: u32,
    /// Kernel of `σ2(p)` on the basis `x0^2, x0x1, x0x2, x1^2, x1x2, x2^2`.
    pub kernel: Vec<E>,
    /// Rank of the kernel conic as a symmetric form.
    pub conic_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sigma2Analysis<E> {
    pub v1: SplitBundle,
    pub v2: SplitBundle,
    pub tau_degree: usize,
    pub points: Vec<KernelConic<E>>,
    pub has_unsplit_points: bool,
}

/// Symmetric matrix of a quadric on the `S^2 V1` basis.
pub fn conic_matrix<F: Field>(f: &F, q: &[F::Elem]) -> Matrix<F::Elem> {
    let half = f.inv(&f.from_int(2));
    Matrix::from_fn(3, 3, |i, j| {
        let c = q[sym2_index(i, j)].clone();
        if i == j {
            c
        } else {
            f.mul(&c, &half)
        }
    })
}

/// Checks that `coker σ2` is `O_τ` (fiberwise rank drop at most one) and
/// records the kernel conic at each rational point of `τ`.
pub fn analyze_sigma2_g3<F: RootFinding>(sigma2: &GradedMap<F>) -> Result<Sigma2Analysis<F::Elem>, Genus3Error> {
    let v1 = v1_from_sigma2(sigma2)?;
    let f = sigma2.field();
    let pr = PolyRing::new(f.clone(), "t");
    for chart in [sigma2.chart_t1(&pr), sigma2.chart_t0(&pr)] {
        let snf = smith_normal_form(&pr, &chart);
        if snf.rank() < 6 {
            return Err(Genus3Error::InvalidXi("σ2 is not injective".into()));
        }
        if snf.factors[..5].iter().any(|g| pr.degree(g) != Some(0)) {
            return Err(Genus3Error::RankDrop);
        }
    }
    let ca = cokernel_analysis(sigma2)?;
    let mut points = Vec::new();
    for tp in &ca.torsion.points {
        let ker = kernel_basis(f, &sigma2.eval(&tp.point.x0, &tp.point.x1));
        let [k] = <[_; 1]>::try_from(ker).map_err(|_| Genus3Error::RankDrop)?;
        let conic_rank = rank(f, &conic_matrix(f, &k));
        points.push(KernelConic {
            point: tp.point.clone(),
            s: tp.valuations.iter().sum::<usize>() as u32,
            kernel: k,
            conic_rank,
        });
    }
    Ok(Sigma2Analysis {
        v1: SplitBundle::new(v1),
        v2: sigma2.target(),
        tau_degree: ca.torsion.length(),
        points,
        has_unsplit_points: !ca.torsion.unsplit.is_empty(),
    })
}

/// `σ2 = D · Q^{-1}` for `V1 = O(a)^3`: the diagonal forms `D` set the
/// target degrees and `σ2(q_i) = D_i e_i` for the columns `q_i` of `Q`.
pub fn diagonal_sigma2<F: Field>(
    f: &F,
    a: i64,
    diag: &[BiForm<F::Elem>],
    q: &Matrix<F::Elem>,
) -> Result<GradedMap<F>, Genus3Error> {
    if diag.len() != 6 || q.rows() != 6 || q.cols() != 6 {
        return Err(Genus3Error::InvalidArgument("need six diagonal forms and a 6x6 basis change".into()));
    }
    let qinv = inverse(f, q).ok_or_else(|| Genus3Error::InvalidArgument("basis change is singular".into()))?;
    let target = diag.iter().map(|d| d.degree + 2 * a).collect();
    Ok(GradedMap::from_fn(f.clone(), vec![2 * a; 6], target, |i, j| diag[i].scale(f, qinv.get(i, j)))?)
}

/// `(σ2 ⊗ Id) ∘ A` restricted to the eight columns other than `x0 ⊗ (x1∧x2)`,
/// which span the image of `A`.
pub fn v3_presentation<F: Field>(sigma2: &GradedMap<F>) -> Result<GradedMap<F>, Genus3Error> {
    let v1 = v1_from_sigma2(sigma2)?;
    let maps = build_maps_abc(sigma2.field(), &v1)?;
    let id = GradedMap::identity(sigma2.field().clone(), v1);
    let comp = sigma2.kron(&id).compose(&maps.a)?;
    let keep: Vec<usize> = (0..9).filter(|&j| j != 2).collect();
    Ok(comp.select_source(&keep))
}

pub fn v3_of<F: RootFinding>(sigma2: &GradedMap<F>) -> Result<SplitBundle, Genus3Error> {
    let ca = cokernel_analysis(&v3_presentation(sigma2)?)?;
    match ca.locally_free_part {
        Some(b) if ca.is_injective && ca.torsion.is_zero() && b.rank() == 10 => Ok(b),
        _ => Err(Genus3Error::NotLocallyFree("V3".into())),
    }
}

/// `S^2(σ2) ∘ C : S^2(Λ^2 V1) → S^2 V2`.
pub fn v4_presentation<F: Field>(sigma2: &GradedMap<F>) -> Result<GradedMap<F>, Genus3Error> {
    let v1 = v1_from_sigma2(sigma2)?;
    let maps = build_maps_abc(sigma2.field(), &v1)?;
    Ok(sigma2.sym_power(2).compose(&maps.c)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct V4Tilde {
    pub splitting: SplitBundle,
    pub locally_free: bool,
}

pub fn v4_tilde<F: RootFinding>(sigma2: &GradedMap<F>) -> Result<V4Tilde, Genus3Error> {
    let pres = v4_presentation(sigma2)?;
    if !locally_free_certificate(&pres).locally_free_cokernel {
        return Err(Genus3Error::NotLocallyFree("Ṽ4".into()));
    }
    let ca = cokernel_analysis(&pres)?;
    let splitting = ca.locally_free_part.ok_or_else(|| Genus3Error::NotLocallyFree("Ṽ4".into()))?;
    if splitting.rank() != 15 {
        return Err(Genus3Error::NotLocallyFree(format!("Ṽ4 has rank {}", splitting.rank())));
    }
    Ok(V4Tilde { splitting, locally_free: true })
}

/// Columns `e_k · σ2(p)(q_l)` in the fiber of `S^2 V2` at `p`: the image of
/// `V2 ⊗ S^2 V1`.
pub fn v2_times_s2v1_image<F: Field>(sigma2: &GradedMap<F>, p: &PointP1<F::Elem>) -> Matrix<F::Elem> {
    let f = sigma2.field();
    let s = sigma2.eval(&p.x0, &p.x1);
    let mut m = Matrix::zeros(f, 21, 36);
    for k in 0..6 {
        for l in 0..6 {
            for i in 0..6 {
                let c = s.get(i, l);
                if f.is_zero(c) {
                    continue;
                }
                let r = pair_index(6, k, i);
                let x = f.add(m.get(r, k * 6 + l), c);
                m.set(r, k * 6 + l, x);
            }
        }
    }
    m
}

/// Whether the fiber of `w : L4' → S^2 V2` at `p` leaves the image of
/// `V2 ⊗ S^2 V1`.
pub fn check_condition_iv<F: Field>(
    sigma2: &GradedMap<F>,
    w: &GradedMap<F>,
    p: &PointP1<F::Elem>,
) -> Result<bool, Genus3Error> {
    if w.source_degrees().len() != 1 || w.target_degrees() != sym_degrees(sigma2.target_degrees(), 2) {
        return Err(Genus3Error::InvalidArgument("w must be one section of S^2 V2".into()));
    }
    let f = sigma2.field();
    let m = v2_times_s2v1_image(sigma2, p);
    let wp = w.eval(&p.x0, &p.x1);
    Ok(rank(f, &m.hcat(&wp)) > rank(f, &m))
}

/// The cokernel of `[S^2(σ2) ∘ C | w]` is locally free, i.e. `L4' → Ṽ4` is
/// a subbundle.
pub fn embedding_is_subbundle<F: Field>(sigma2: &GradedMap<F>, w: &GradedMap<F>) -> Result<bool, Genus3Error> {
    let pres = v4_presentation(sigma2)?;
    if w.source_degrees().len() != 1 || w.target_degrees() != pres.target_degrees() {
        return Err(Genus3Error::InvalidArgument("w must be one section of S^2 V2".into()));
    }
    let mut source = pres.source_degrees().to_vec();
    source.extend_from_slice(w.source_degrees());
    let joined = GradedMap::from_fn(pres.field().clone(), source, pres.target_degrees().to_vec(), |i, j| {
        if j < 6 {
            pres.entry(i, j).clone()
        } else {
            w.entry(i, 0).clone()
        }
    })?;
    Ok(locally_free_certificate(&joined).locally_free_cokernel)
}
