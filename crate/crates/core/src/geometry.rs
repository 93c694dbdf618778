//! Metric fields on parameter grids, curvature by finite differences of the
//! analytic metric, and flat / sphere / degenerate classification.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::{MetricTensor, ParameterPoint, StateManifold};

/// Stencil step for metric derivatives.
pub const CURVATURE_STEP: f64 = 1e-3;
/// Relative eigenvalue threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-10;
/// Smallest admissible 2×2 section determinant.
pub const SECTION_DET_TOL: f64 = 1e-10;

pub const FLAT_CURVATURE_TOL: f64 = 1e-5;
pub const FLAT_VARIATION_TOL: f64 = 1e-8;
pub const SPHERE_SPREAD_TOL: f64 = 1e-4;

/// One swept parameter, `count` evenly spaced values in `[min, max]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Sweep {
    pub fn new(name: impl Into<String>, min: f64, max: f64, count: usize) -> Self {
        Self {
            name: name.into(),
            min,
            max,
            count,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => vec![],
            1 => vec![self.min],
            n => (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

impl FromStr for Sweep {
    type Err = Error;

    /// `name=min:max:count`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("sweep `{s}` is not of the form name=min:max:count"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        if name.is_empty() || parts.len() != 3 {
            return Err(bad());
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !min.is_finite() || !max.is_finite() {
            return Err(bad());
        }
        Ok(Self::new(name.trim(), min, max, count))
    }
}

/// Metric tensors on a rectangular grid, nodes in row-major order over the
/// sweeps (first sweep varies slowest).
#[derive(Clone, Debug)]
pub struct MetricField {
    pub label: String,
    pub gamma: f64,
    pub sweeps: Vec<Sweep>,
    pub nodes: Vec<ParameterPoint>,
    pub tensors: Vec<MetricTensor>,
    manifold: StateManifold,
}

impl MetricField {
    pub fn manifold(&self) -> &StateManifold {
        &self.manifold
    }

    /// Largest componentwise deviation from the first node's tensor.
    pub fn max_variation(&self) -> f64 {
        let first = &self.tensors[0];
        self.tensors
            .iter()
            .map(|t| t.max_abs_diff(first))
            .fold(0.0, f64::max)
    }
}

/// Evaluates the analytic metric at every grid node (in parallel).
///
/// Parameters that are not swept take their value from `base`.
pub fn metric_field(
    manifold: &StateManifold,
    sweeps: &[Sweep],
    base: &ParameterPoint,
) -> Result<MetricField> {
    if sweeps.is_empty() || sweeps.iter().any(|s| s.count == 0) {
        return Err(Error::EmptyGrid);
    }
    let names = manifold.parameter_names();
    for s in sweeps {
        if !names.contains(&s.name) {
            return Err(Error::Parse(format!(
                "sweep over unknown parameter `{}`",
                s.name
            )));
        }
    }
    for n in &names {
        if !sweeps.iter().any(|s| &s.name == n) && base.get(n).is_none() {
            return Err(Error::MissingParameter(n.clone()));
        }
    }

    let mut nodes = vec![base.clone()];
    for s in sweeps {
        let values = s.values();
        nodes = nodes
            .into_iter()
            .flat_map(|p| values.iter().map(move |&v| p.clone().with(&s.name, v)))
            .collect();
    }
    let tensors = nodes
        .par_iter()
        .map(|p| manifold.metric(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(MetricField {
        label: manifold.label.clone(),
        gamma: manifold.gamma,
        sweeps: sweeps.to_vec(),
        nodes,
        tensors,
        manifold: manifold.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct RankAnalysis {
    pub rank: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal basis of the near-null space.
    pub null_directions: Vec<DVector<f64>>,
}

pub fn rank_analysis(g: &MetricTensor) -> RankAnalysis {
    let eig = SymmetricEigen::new(g.matrix().clone());
    let mut order: Vec<usize> = (0..g.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let top = eigenvalues.last().copied().unwrap_or(0.0);
    let threshold = RANK_TOL * top.max(1.0);
    let null_directions: Vec<DVector<f64>> = order
        .iter()
        .filter(|&&i| eig.eigenvalues[i] <= threshold)
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    RankAnalysis {
        rank: g.dim() - null_directions.len(),
        eigenvalues,
        null_directions,
    }
}

/// Gaussian curvature of a 2D metric `(E, F, G)(u, v)` from the Brioschi
/// formula with central differences of step `h`.
pub fn brioschi<F>(metric: F, u: f64, v: f64, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<[f64; 3]>,
{
    let at = |du: f64, dv: f64| metric(u + du * h, v + dv * h);
    let c0 = at(0.0, 0.0)?;
    let up = at(1.0, 0.0)?;
    let um = at(-1.0, 0.0)?;
    let vp = at(0.0, 1.0)?;
    let vm = at(0.0, -1.0)?;
    let pp = at(1.0, 1.0)?;
    let pm = at(1.0, -1.0)?;
    let mp = at(-1.0, 1.0)?;
    let mm = at(-1.0, -1.0)?;
    let [e, f, g] = c0;
    let du = |k: usize| (up[k] - um[k]) / (2.0 * h);
    let dv = |k: usize| (vp[k] - vm[k]) / (2.0 * h);
    let (e_u, f_u, g_u) = (du(0), du(1), du(2));
    let (e_v, f_v, g_v) = (dv(0), dv(1), dv(2));
    let e_vv = (vp[0] - 2.0 * e + vm[0]) / (h * h);
    let g_uu = (up[2] - 2.0 * g + um[2]) / (h * h);
    let f_uv = (pp[1] - pm[1] - mp[1] + mm[1]) / (4.0 * h * h);

    let det = e * g - f * f;
    if det.is_nan() || det <= SECTION_DET_TOL {
        return Err(Error::Numerical(format!(
            "section metric is singular (det = {det:e})"
        )));
    }
    let m1 = nalgebra::Matrix3::new(
        -0.5 * e_vv + f_uv - 0.5 * g_uu,
        0.5 * e_u,
        f_u - 0.5 * e_v,
        f_v - 0.5 * g_u,
        e,
        f,
        0.5 * g_v,
        f,
        g,
    );
    let m2 = nalgebra::Matrix3::new(0.0, 0.5 * e_v, 0.5 * g_u, 0.5 * e_v, e, f, 0.5 * g_u, f, g);
    Ok((m1.determinant() - m2.determinant()) / (det * det))
}

fn section_indices(manifold: &StateManifold, section: (&str, &str)) -> Result<(usize, usize)> {
    let find = |name: &str| {
        manifold
            .circuit
            .parameter_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}` in section")))
    };
    let (i, j) = (find(section.0)?, find(section.1)?);
    if i == j {
        return Err(Error::Parse("section needs two distinct parameters".into()));
    }
    Ok((i, j))
}

/// Gaussian curvature of the coordinate surface spanned by two parameters,
/// with every other parameter held at `point`.
///
/// Brioschi estimates at `step` and `step / 2` are Richardson-combined, which
/// cancels the leading O(h²) stencil error.
pub fn gauss_curvature(
    manifold: &StateManifold,
    point: &ParameterPoint,
    section: (&str, &str),
    step: f64,
) -> Result<f64> {
    let (i, j) = section_indices(manifold, section)?;
    let base = manifold.circuit.resolve(point)?;
    let metric = |u: f64, v: f64| -> Result<[f64; 3]> {
        let mut angles = base.clone();
        angles[i] = u;
        angles[j] = v;
        let g = manifold.metric_matrix_at(&angles)?;
        Ok([g[(i, i)], g[(i, j)], g[(j, j)]])
    };
    let [e, f, g] = metric(base[i], base[j])?;
    let det = e * g - f * f;
    if det.is_nan() || det <= SECTION_DET_TOL {
        return Err(Error::DegenerateSection(
            section.0.to_string(),
            section.1.to_string(),
            det,
        ));
    }
    let coarse = brioschi(metric, base[i], base[j], step)?;
    let fine = brioschi(metric, base[i], base[j], 0.5 * step)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Scalar curvature of a full-rank metric `g(x)` via Christoffel symbols,
/// with nested central differences of step `h`.
pub fn scalar_curvature_of<F>(metric: F, x: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    let n = x.len();
    let shift = |p: &[f64], k: usize, s: f64| {
        let mut q = p.to_vec();
        q[k] += s;
        q
    };
    let inverse = |g: DMatrix<f64>| {
        g.try_inverse()
            .ok_or_else(|| Error::Numerical("metric is singular".into()))
    };
    // gamma[a][b][c] = Γ^a_{bc}
    let christoffel = |p: &[f64]| -> Result<Vec<Vec<Vec<f64>>>> {
        let ginv = inverse(metric(p)?)?;
        let dg: Vec<DMatrix<f64>> = (0..n)
            .map(|k| Ok((metric(&shift(p, k, h))? - metric(&shift(p, k, -h))?) / (2.0 * h)))
            .collect::<Result<_>>()?;
        let mut out = vec![vec![vec![0.0; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let mut s = 0.0;
                    for d in 0..n {
                        s += ginv[(a, d)] * (dg[b][(d, cc)] + dg[cc][(d, b)] - dg[d][(b, cc)]);
                    }
                    out[a][b][cc] = 0.5 * s;
                }
            }
        }
        Ok(out)
    };
    let gam = christoffel(x)?;
    // dgam[m][a][b][c] = ∂_m Γ^a_{bc}
    let mut dgam = Vec::with_capacity(n);
    for m in 0..n {
        let plus = christoffel(&shift(x, m, h))?;
        let minus = christoffel(&shift(x, m, -h))?;
        let mut d = vec![vec![vec![0.0; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    d[a][b][cc] = (plus[a][b][cc] - minus[a][b][cc]) / (2.0 * h);
                }
            }
        }
        dgam.push(d);
    }
    let ginv = inverse(metric(x)?)?;
    let mut scalar = 0.0;
    for b in 0..n {
        for d in 0..n {
            // Ricci R_{bd} = R^a_{bad}
            let mut ricci = 0.0;
            for a in 0..n {
                let mut r = dgam[a][a][d][b] - dgam[d][a][a][b];
                for (e, ge) in gam.iter().enumerate() {
                    r += gam[a][a][e] * ge[d][b] - gam[a][d][e] * ge[a][b];
                }
                ricci += r;
            }
            scalar += ginv[(b, d)] * ricci;
        }
    }
    Ok(scalar)
}

/// Scalar curvature of the full parameter manifold at `point`.
pub fn scalar_curvature(
    manifold: &StateManifold,
    point: &ParameterPoint,
    step: f64,
) -> Result<f64> {
    let x = manifold.circuit.resolve(point)?;
    scalar_curvature_of(|p| manifold.metric_matrix_at(p), &x, step)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Flat,
    Sphere { radius: f64 },
    Degenerate { rank: usize },
    Generic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Flat => write!(f, "flat"),
            Classification::Sphere { radius } => write!(f, "sphere(R = {radius})"),
            Classification::Degenerate { rank } => write!(f, "degenerate(rank {rank})"),
            Classification::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    /// Largest metric rank over the grid.
    pub rank: usize,
    pub dim: usize,
    /// Null directions at the first node.
    pub null_directions: Vec<Vec<f64>>,
    pub section: Option<(String, String)>,
    /// Mean Gaussian curvature of the section over the grid.
    pub gaussian_curvature: Option<f64>,
    /// (max K - min K) / |mean K|
    pub curvature_spread: Option<f64>,
    /// At the first node, when the metric is full rank there.
    pub scalar_curvature: Option<f64>,
    pub metric_variation: f64,
    pub classification: Classification,
}

fn section_candidates(field: &MetricField) -> Vec<(String, String)> {
    let mut order: Vec<String> = field.sweeps.iter().map(|s| s.name.clone()).collect();
    for p in field.manifold.parameter_names() {
        if !order.contains(&p) {
            order.push(p);
        }
    }
    let mut out = Vec::new();
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            out.push((order[i].clone(), order[j].clone()));
        }
    }
    out
}

/// Labels the manifold sampled by `field`.
///
/// * flat: metric constant over the grid and every section curvature ≈ 0;
/// * sphere(R): rank ≤ 2 and a nondegenerate section with constant K > 0;
/// * degenerate(rank): rank below the parameter count everywhere;
/// * generic otherwise.
pub fn classify(field: &MetricField) -> Result<CurvatureReport> {
    for s in &field.sweeps {
        if s.count < 3 {
            return Err(Error::InsufficientGrid {
                parameter: s.name.clone(),
                needed: 3,
                actual: s.count,
            });
        }
    }
    let dim = field.tensors[0].dim();
    let ranks: Vec<RankAnalysis> = field.tensors.iter().map(rank_analysis).collect();
    let max_rank = ranks.iter().map(|r| r.rank).max().unwrap_or(0);
    let min_rank = ranks.iter().map(|r| r.rank).min().unwrap_or(0);
    let variation = field.max_variation();

    let manifold = &field.manifold;
    let mut section = None;
    for (p, q) in section_candidates(field) {
        let (i, j) = section_indices(manifold, (&p, &q))?;
        let ok = field
            .tensors
            .iter()
            .all(|t| t.get(i, i) * t.get(j, j) - t.get(i, j) * t.get(i, j) > SECTION_DET_TOL);
        if ok {
            section = Some((p, q));
            break;
        }
    }

    let curvatures = match &section {
        Some((p, q)) => Some(
            field
                .nodes
                .par_iter()
                .map(|node| gauss_curvature(manifold, node, (p, q), CURVATURE_STEP))
                .collect::<Result<Vec<f64>>>()?,
        ),
        None => None,
    };
    let stats = curvatures.as_ref().map(|ks| {
        let mean = ks.iter().sum::<f64>() / ks.len() as f64;
        let lo = ks.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let max_abs = ks.iter().map(|k| k.abs()).fold(0.0, f64::max);
        (mean, lo, hi, max_abs)
    });

    let classification = match stats {
        _ if variation <= FLAT_VARIATION_TOL
            && stats.is_none_or(|(_, _, _, max_abs)| max_abs <= FLAT_CURVATURE_TOL) =>
        {
            Classification::Flat
        }
        Some((mean, lo, hi, _))
            if max_rank <= 2 && lo > 0.0 && (hi - lo) / mean <= SPHERE_SPREAD_TOL =>
        {
            Classification::Sphere {
                radius: 1.0 / mean.sqrt(),
            }
        }
        _ if max_rank < dim => Classification::Degenerate { rank: max_rank },
        _ => Classification::Generic,
    };

    let scalar = if min_rank == dim && dim >= 2 {
        Some(scalar_curvature(manifold, &field.nodes[0], CURVATURE_STEP)?)
    } else {
        None
    };

    Ok(CurvatureReport {
        rank: max_rank,
        dim,
        null_directions: ranks[0]
            .null_directions
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect(),
        section,
        gaussian_curvature: stats.map(|s| s.0),
        curvature_spread: stats.map(|(mean, lo, hi, _)| (hi - lo) / mean.abs()),
        scalar_curvature: scalar,
        metric_variation: variation,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{oscillator_model, spin_model, OscillatorModelSpec, SpinModelSpec};
    use std::f64::consts::PI;

    fn at(t1: f64, t2: f64, t3: f64) -> ParameterPoint {
        ParameterPoint::from_pairs(&[("theta1", t1), ("theta2", t2), ("theta3", t3)])
    }

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "theta2=0.1:3.0:30".parse().unwrap();
        assert_eq!(s, Sweep::new("theta2", 0.1, 3.0, 30));
        assert_eq!(s.values().len(), 30);
        assert!((s.values()[29] - 3.0).abs() < 1e-15);
        assert_eq!(Sweep::new("a", 0.5, 2.0, 1).values(), vec![0.5]);
        for bad in ["theta", "=1:2:3", "a=1:2", "a=x:2:3", "a=1:2:-1"] {
            assert!(bad.parse::<Sweep>().is_err(), "{bad}");
        }
    }

    #[test]
    fn brioschi_on_round_sphere() {
        let r: f64 = 1.7;
        let k = brioschi(
            |_, v| Ok([r * r * v.sin().powi(2), 0.0, r * r]),
            0.3,
            1.1,
            1e-3,
        )
        .unwrap();
        assert!((k - 1.0 / (r * r)).abs() < 1e-6);
        // polar coordinates on the plane
        let k = brioschi(|_, v| Ok([v * v, 0.0, 1.0]), 0.0, 2.0, 1e-3).unwrap();
        assert!(k.abs() < 1e-6);
    }

    #[test]
    fn scalar_curvature_of_round_sphere() {
        let r: f64 = 0.8;
        let metric = |x: &[f64]| {
            Ok(DMatrix::from_diagonal(&DVector::from_vec(vec![
                r * r * x[1].sin().powi(2),
                r * r,
            ])))
        };
        let s = scalar_curvature_of(metric, &[0.2, 1.0], 1e-3).unwrap();
        assert!((s - 2.0 / (r * r)).abs() < 1e-4, "{s}");
    }

    #[test]
    fn single_node_field_matches_pointwise_metric() {
        let m = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5)).unwrap();
        let base = at(0.1, 0.0, 0.2);
        let field = metric_field(&m, &[Sweep::new("theta2", 0.9, 0.9, 1)], &base).unwrap();
        assert_eq!(field.tensors.len(), 1);
        let direct = m.metric(&base.with("theta2", 0.9)).unwrap();
        assert_eq!(field.tensors[0].matrix(), direct.matrix());
    }

    #[test]
    fn field_errors() {
        let m = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5)).unwrap();
        assert!(matches!(
            metric_field(&m, &[], &at(0.0, 0.0, 0.0)),
            Err(Error::EmptyGrid)
        ));
        let partial = ParameterPoint::from_pairs(&[("theta1", 0.0)]);
        assert!(matches!(
            metric_field(&m, &[Sweep::new("theta2", 0.1, 1.0, 3)], &partial),
            Err(Error::MissingParameter(_))
        ));
        let field =
            metric_field(&m, &[Sweep::new("theta2", 0.1, 1.0, 2)], &at(0.0, 0.0, 0.0)).unwrap();
        assert!(matches!(
            classify(&field),
            Err(Error::InsufficientGrid { .. })
        ));
    }

    #[test]
    fn node_order_is_row_major() {
        let m = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5)).unwrap();
        let field = metric_field(
            &m,
            &[
                Sweep::new("theta1", 0.0, 1.0, 2),
                Sweep::new("theta2", 0.5, 1.5, 3),
            ],
            &at(0.0, 0.0, 0.0),
        )
        .unwrap();
        let seq: Vec<(f64, f64)> = field
            .nodes
            .iter()
            .map(|p| (p.get("theta1").unwrap(), p.get("theta2").unwrap()))
            .collect();
        assert_eq!(
            seq,
            vec![
                (0.0, 0.5),
                (0.0, 1.0),
                (0.0, 1.5),
                (1.0, 0.5),
                (1.0, 1.0),
                (1.0, 1.5)
            ]
        );
    }

    #[test]
    fn spin_sphere_field() {
        let m = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5)).unwrap();
        let field = metric_field(
            &m,
            &[Sweep::new("theta2", 0.1, PI - 0.1, 7)],
            &at(0.4, 0.0, 0.0),
        )
        .unwrap();
        for (node, t) in field.nodes.iter().zip(&field.tensors) {
            let s = node.get("theta2").unwrap().sin();
            assert!((t.get(0, 0) / (s * s) - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_of_eigenstate_and_zero_metrics() {
        let m = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5)).unwrap();
        let r = rank_analysis(&m.metric(&at(0.3, 1.2, 0.4)).unwrap());
        assert_eq!(r.rank, 2);
        assert_eq!(r.null_directions.len(), 1);
        let zero = MetricTensor::new(
            vec!["a".into(), "b".into()],
            DMatrix::zeros(2, 2),
            1.0,
            ParameterPoint::new(),
        );
        assert_eq!(rank_analysis(&zero).rank, 0);
    }

    #[test]
    fn spin_gauss_curvatures() {
        let half = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5)).unwrap();
        let k = gauss_curvature(
            &half,
            &at(0.2, 1.0, 0.3),
            ("theta1", "theta2"),
            CURVATURE_STEP,
        )
        .unwrap();
        assert!((k - 4.0).abs() < 1e-3);
        let one = spin_model(&SpinModelSpec::eigenstate(1.0, 0.0).with_gamma(1.5)).unwrap();
        let k = gauss_curvature(
            &one,
            &at(0.2, 1.0, 0.3),
            ("theta1", "theta2"),
            CURVATURE_STEP,
        )
        .unwrap();
        assert!((k - 1.0 / 2.25).abs() < 1e-3);
        assert!(matches!(
            gauss_curvature(
                &half,
                &at(0.2, 1.0, 0.3),
                ("theta1", "theta3"),
                CURVATURE_STEP
            ),
            Err(Error::DegenerateSection(..))
        ));
    }

    #[test]
    fn classify_sphere_and_plane() {
        let m = spin_model(&SpinModelSpec::eigenstate(1.0, 1.0)).unwrap();
        let sweeps = [
            Sweep::new("theta1", -1.0, 1.0, 3),
            Sweep::new("theta2", 0.4, 2.6, 4),
        ];
        let report = classify(&metric_field(&m, &sweeps, &at(0.0, 0.0, 0.5)).unwrap()).unwrap();
        let want = crate::models::spin_sphere_radius(1.0, 1.0, 1.0);
        match report.classification {
            Classification::Sphere { radius } => assert!((radius - want).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
        assert_eq!(report.rank, 2);
        assert_eq!(report.null_directions.len(), 1);

        let osc = oscillator_model(&OscillatorModelSpec::new(1, 64)).unwrap();
        let sweeps = [
            Sweep::new("theta", -1.0, 1.0, 3),
            Sweep::new("phi", -1.0, 1.0, 3),
        ];
        let base = ParameterPoint::new();
        let report = classify(&metric_field(&osc, &sweeps, &base).unwrap()).unwrap();
        assert_eq!(report.classification, Classification::Flat);
        assert!(report.gaussian_curvature.unwrap().abs() < 1e-6);
    }
}
