//! Principal component analysis over feature matrices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{FeatureMatrix, ShapeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("need at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("k = {k} outside 1..={max}")]
    InvalidK { k: usize, max: usize },
    #[error("eigensolver did not converge after {iterations} sweeps")]
    ConvergenceFailure { iterations: usize },
    #[error("component {index} out of range (k = {k})")]
    IndexOutOfRange { index: usize, k: usize },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// A standardized matrix plus the statistics used to produce it.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    pub matrix: FeatureMatrix,
    pub means: Vec<f64>,
    /// Population standard deviations of the input columns.
    pub stds: Vec<f64>,
    /// Indices of constant columns, which are left at zero.
    pub zero_variance: Vec<usize>,
}

fn column_stats(m: &FeatureMatrix) -> (Vec<f64>, Vec<f64>) {
    let (n, p) = (m.n_rows(), m.n_cols());
    let mut means = vec![0.0; p];
    for i in 0..n {
        for (j, v) in m.row(i).iter().enumerate() {
            means[j] += v;
        }
    }
    means.iter_mut().for_each(|v| *v /= n as f64);
    let mut var = vec![0.0; p];
    for i in 0..n {
        for (j, v) in m.row(i).iter().enumerate() {
            var[j] += (v - means[j]).powi(2);
        }
    }
    (means, var.into_iter().map(|v| (v / n as f64).sqrt()).collect())
}

/// Relative variance below which a column counts as constant.
const ZERO_VARIANCE: f64 = 1e-12;

/// Center every column and scale it to unit population variance.
pub fn standardize(matrix: &FeatureMatrix) -> Result<Standardized, AnalyticsError> {
    let n = matrix.n_rows();
    if n < 2 {
        return Err(AnalyticsError::TooFewRows(n));
    }
    let (means, stds) = column_stats(matrix);
    let zero_variance: Vec<usize> = (0..matrix.n_cols())
        .filter(|&j| stds[j] <= ZERO_VARIANCE * means[j].abs().max(1.0))
        .collect();
    let p = matrix.n_cols();
    let values = matrix
        .values()
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let j = idx % p;
            if zero_variance.binary_search(&j).is_ok() {
                0.0
            } else {
                (v - means[j]) / stds[j]
            }
        })
        .collect();
    Ok(Standardized {
        matrix: matrix.with_values(values)?,
        means,
        stds,
        zero_variance,
    })
}

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric `n × n` row-major matrix by cyclic
/// Jacobi rotations. Returns eigenvalues in descending order and the
/// matching unit eigenvectors as the columns of a row-major `n × n` matrix.
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>), AnalyticsError> {
    assert_eq!(a.len(), n * n);
    let mut a = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = n < 2 || scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(AnalyticsError::ConvergenceFailure { iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum::<f64>()
            .sqrt();
        converged = off <= f64::EPSILON * scale;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]).then(x.cmp(&y)));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (c, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + c] = v[r * n + src];
        }
    }
    Ok((values, vectors))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaResult {
    pub columns: Vec<String>,
    pub row_ids: Vec<String>,
    pub labels: Option<Vec<String>>,
    pub k: usize,
    /// `columns.len() × k`, row-major: entry `(j, c)` is the loading of
    /// column `j` on component `c`.
    pub components: Vec<f64>,
    pub explained_variance: Vec<f64>,
    pub explained_ratio: Vec<f64>,
    /// `rows × k`, row-major.
    pub scores: Vec<f64>,
    pub column_means: Vec<f64>,
    pub column_stds: Vec<f64>,
}

impl PcaResult {
    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn loading(&self, column: usize, component: usize) -> f64 {
        self.components[column * self.k + component]
    }

    pub fn loadings(&self, component: usize) -> Vec<f64> {
        (0..self.n_cols()).map(|j| self.loading(j, component)).collect()
    }

    pub fn score(&self, row: usize, component: usize) -> f64 {
        self.scores[row * self.k + component]
    }

    pub fn scores_of(&self, component: usize) -> Vec<f64> {
        (0..self.row_ids.len()).map(|i| self.score(i, component)).collect()
    }
}

/// Top-`k` principal components of the sample covariance of `matrix`.
/// The input is expected to be standardized; it is centered again here, which
/// is a no-op for standardized data.
pub fn pca(matrix: &FeatureMatrix, k: usize) -> Result<PcaResult, AnalyticsError> {
    let (n, p) = (matrix.n_rows(), matrix.n_cols());
    if n < 2 {
        return Err(AnalyticsError::TooFewRows(n));
    }
    let max = (n - 1).min(p);
    if k < 1 || k > max {
        return Err(AnalyticsError::InvalidK { k, max });
    }
    let (means, stds) = column_stats(matrix);
    let centered: Vec<f64> = matrix
        .values()
        .iter()
        .enumerate()
        .map(|(idx, v)| v - means[idx % p])
        .collect();
    let mut cov = vec![0.0; p * p];
    for i in 0..n {
        let row = &centered[i * p..(i + 1) * p];
        for a in 0..p {
            if row[a] == 0.0 {
                continue;
            }
            for b in a..p {
                cov[a * p + b] += row[a] * row[b];
            }
        }
    }
    for a in 0..p {
        for b in a..p {
            let v = cov[a * p + b] / (n - 1) as f64;
            cov[a * p + b] = v;
            cov[b * p + a] = v;
        }
    }
    let trace: f64 = (0..p).map(|j| cov[j * p + j]).sum();
    let (values, vectors) = symmetric_eigen(&cov, p)?;

    let mut components = vec![0.0; p * k];
    for c in 0..k {
        // largest-magnitude entry positive; earliest index wins ties
        let mut pivot = 0;
        for j in 1..p {
            if vectors[j * p + c].abs() > vectors[pivot * p + c].abs() {
                pivot = j;
            }
        }
        let sign = if vectors[pivot * p + c] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..p {
            components[j * k + c] = sign * vectors[j * p + c];
        }
    }
    let mut scores = vec![0.0; n * k];
    for i in 0..n {
        for c in 0..k {
            scores[i * k + c] = (0..p).map(|j| centered[i * p + j] * components[j * k + c]).sum();
        }
    }
    let explained_variance: Vec<f64> = values[..k].iter().map(|v| v.max(0.0)).collect();
    let explained_ratio = explained_variance
        .iter()
        .map(|v| if trace > 0.0 { v / trace } else { 0.0 })
        .collect();
    Ok(PcaResult {
        columns: matrix.columns().to_vec(),
        row_ids: matrix.row_ids().to_vec(),
        labels: matrix.labels().map(<[String]>::to_vec),
        k,
        components,
        explained_variance,
        explained_ratio,
        scores,
        column_means: means,
        column_stds: stds,
    })
}

/// Standardize, then run [`pca`]. The reported column statistics are those
/// of the raw input.
pub fn pca_standardized(matrix: &FeatureMatrix, k: usize) -> Result<PcaResult, AnalyticsError> {
    let s = standardize(matrix)?;
    let mut r = pca(&s.matrix, k)?;
    r.column_means = s.means;
    r.column_stds = s.stds;
    Ok(r)
}

/// The `n` strongest loadings of a component by absolute weight, sign kept.
pub fn top_loadings(
    result: &PcaResult,
    component: usize,
    n: usize,
) -> Result<Vec<(String, f64)>, AnalyticsError> {
    if component >= result.k {
        return Err(AnalyticsError::IndexOutOfRange { index: component, k: result.k });
    }
    let mut all: Vec<(usize, f64)> = result.loadings(component).into_iter().enumerate().collect();
    all.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then(a.0.cmp(&b.0)));
    Ok(all
        .into_iter()
        .take(n)
        .map(|(j, w)| (result.columns[j].clone(), w))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterRecord {
    pub doc_id: String,
    pub label: String,
    pub score_a: f64,
    pub score_b: f64,
}

/// One record per document with its scores on components `a` and `b`.
/// `labels` overrides the labels carried by the result; missing labels are
/// written as empty strings.
pub fn export_scatter(
    result: &PcaResult,
    components: (usize, usize),
    labels: Option<&[String]>,
) -> Result<Vec<ScatterRecord>, AnalyticsError> {
    let (a, b) = components;
    for c in [a, b] {
        if c >= result.k {
            return Err(AnalyticsError::IndexOutOfRange { index: c, k: result.k });
        }
    }
    let labels = labels.or(result.labels.as_deref());
    Ok(result
        .row_ids
        .iter()
        .enumerate()
        .map(|(i, id)| ScatterRecord {
            doc_id: id.clone(),
            label: labels.and_then(|l| l.get(i)).cloned().unwrap_or_default(),
            score_a: result.score(i, a),
            score_b: result.score(i, b),
        })
        .collect())
}

/// Varimax rotation of a `p × k` row-major loading matrix by pairwise
/// planar rotations. Returns the rotated loadings.
pub fn varimax(loadings: &[f64], p: usize, k: usize, max_iter: usize, tol: f64) -> Vec<f64> {
    assert_eq!(loadings.len(), p * k);
    let mut l = loadings.to_vec();
    if k < 2 || p == 0 {
        return l;
    }
    let pf = p as f64;
    for _ in 0..max_iter {
        let mut biggest = 0.0f64;
        for a in 0..k - 1 {
            for b in a + 1..k {
                let (mut sa, mut sb, mut sc, mut sd) = (0.0, 0.0, 0.0, 0.0);
                for j in 0..p {
                    let (x, y) = (l[j * k + a], l[j * k + b]);
                    let u = x * x - y * y;
                    let v = 2.0 * x * y;
                    sa += u;
                    sb += v;
                    sc += u * u - v * v;
                    sd += 2.0 * u * v;
                }
                let num = sd - 2.0 * sa * sb / pf;
                let den = sc - (sa * sa - sb * sb) / pf;
                let phi = num.atan2(den) / 4.0;
                biggest = biggest.max(phi.abs());
                let (c, s) = (phi.cos(), phi.sin());
                for j in 0..p {
                    let (x, y) = (l[j * k + a], l[j * k + b]);
                    l[j * k + a] = c * x + s * y;
                    l[j * k + b] = -s * x + c * y;
                }
            }
        }
        if biggest < tol {
            break;
        }
    }
    l
}

/// Varimax criterion: summed per-column variance of squared loadings.
pub fn varimax_criterion(l: &[f64], p: usize, k: usize) -> f64 {
    (0..k)
        .map(|c| {
            let sq: Vec<f64> = (0..p).map(|j| l[j * k + c].powi(2)).collect();
            let m = sq.iter().sum::<f64>() / p as f64;
            sq.iter().map(|v| (v - m).powi(2)).sum::<f64>() / p as f64
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[Vec<f64>]) -> FeatureMatrix {
        let p = rows.first().map_or(0, Vec::len);
        FeatureMatrix::from_rows(
            (0..rows.len()).map(|i| format!("d{i}")).collect(),
            None,
            (0..p).map(|j| format!("c{j}")).collect(),
            rows,
        )
        .unwrap()
    }

    fn random(n: usize, p: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| (0..p).map(|_| rng.random_range(-5.0..5.0)).collect()).collect()
    }

    #[test]
    fn standardize_two_values() {
        let s = standardize(&mat(&[vec![1.0], vec![3.0]])).unwrap();
        assert_eq!(s.matrix.values(), &[-1.0, 1.0]);
        assert!(s.zero_variance.is_empty());
    }

    #[test]
    fn standardize_constant_column() {
        let s = standardize(&mat(&[vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 4.0]])).unwrap();
        assert_eq!(s.matrix.column(0), vec![0.0; 3]);
        assert_eq!(s.zero_variance, vec![0]);
    }

    #[test]
    fn standardize_needs_two_rows() {
        assert_eq!(standardize(&mat(&[vec![1.0]])), Err(AnalyticsError::TooFewRows(1)));
    }

    #[test]
    fn standardize_random_fixture() {
        let rows = random(10, 4, 11);
        let s = standardize(&mat(&rows)).unwrap();
        for j in 0..4 {
            // recompute from the raw rows
            let col: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            let m = col.iter().sum::<f64>() / 10.0;
            let sd = (col.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / 10.0).sqrt();
            let out = s.matrix.column(j);
            for (o, v) in out.iter().zip(&col) {
                assert!((o - (v - m) / sd).abs() < 1e-12);
            }
            let om = out.iter().sum::<f64>() / 10.0;
            let osd = (out.iter().map(|v| v * v).sum::<f64>() / 10.0).sqrt();
            assert!(om.abs() < 1e-12 && (osd - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_by_two_eigenvalues() {
        let (vals, vecs) = symmetric_eigen(&[2.0, 1.0, 1.0, 2.0], 2).unwrap();
        // (2-x)^2 - 1 = 0
        assert!((vals[0] - 3.0).abs() < 1e-10 && (vals[1] - 1.0).abs() < 1e-10);
        let h = 0.5f64.sqrt();
        assert!((vecs[0].abs() - h).abs() < 1e-10 && (vecs[2].abs() - h).abs() < 1e-10);
    }

    /// Roots of the 3×3 characteristic polynomial by the trigonometric
    /// closed form.
    fn cubic_roots(a: &[f64; 9]) -> [f64; 3] {
        let tr = a[0] + a[4] + a[8];
        let minors = a[0] * a[4] - a[1] * a[3] + a[0] * a[8] - a[2] * a[6] + a[4] * a[8] - a[5] * a[7];
        let det = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
            + a[2] * (a[3] * a[7] - a[4] * a[6]);
        // x^3 - tr x^2 + minors x - det, shifted to a depressed cubic
        let s = tr / 3.0;
        let p = minors - tr * tr / 3.0;
        let q = -det + minors * s - 2.0 * s * s * s;
        let r = 2.0 * (-p / 3.0).sqrt();
        let phi = (3.0 * q / (p * r)).clamp(-1.0, 1.0).acos() / 3.0;
        let mut roots = [0, 1, 2].map(|m| s + r * (phi - 2.0 * std::f64::consts::PI * m as f64 / 3.0).cos());
        roots.sort_by(|x, y| y.total_cmp(x));
        roots
    }

    #[test]
    fn three_by_three_against_characteristic_polynomial() {
        for a in [
            [4.0, 1.0, 2.0, 1.0, 3.0, 0.5, 2.0, 0.5, 5.0],
            [2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0],
            [1.0, 0.3, 0.2, 0.3, 1.0, 0.1, 0.2, 0.1, 1.0],
        ] {
            let (vals, _) = symmetric_eigen(&a, 3).unwrap();
            let want = cubic_roots(&a);
            for (g, w) in vals.iter().zip(want) {
                assert!((g - w).abs() < 1e-10, "{vals:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn points_on_a_line() {
        let rows: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, 2.0 * i as f64 + 1.0]).collect();
        let r = pca(&mat(&rows), 1).unwrap();
        assert!((r.explained_ratio[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_bounds() {
        let m = mat(&random(3, 5, 1));
        assert_eq!(pca(&m, 0).unwrap_err(), AnalyticsError::InvalidK { k: 0, max: 2 });
        assert_eq!(pca(&m, 3).unwrap_err(), AnalyticsError::InvalidK { k: 3, max: 2 });
        assert!(pca(&m, 2).is_ok());
        assert_eq!(pca(&mat(&[vec![1.0]]), 1).unwrap_err(), AnalyticsError::TooFewRows(1));
    }

    #[test]
    fn top_loadings_edges() {
        let r = pca_standardized(&mat(&random(20, 5, 3)), 2).unwrap();
        assert!(top_loadings(&r, 0, 0).unwrap().is_empty());
        let all = top_loadings(&r, 1, 500).unwrap();
        assert_eq!(all.len(), 5);
        assert!(all.windows(2).all(|w| w[0].1.abs() >= w[1].1.abs()));
        assert_eq!(top_loadings(&r, 2, 1), Err(AnalyticsError::IndexOutOfRange { index: 2, k: 2 }));
    }

    #[test]
    fn rank_one_synthetic_loads_on_its_features() {
        // columns 0,1 rise with a latent score, columns 2,3 fall; 4..8 constant
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|_| {
                let t: f64 = rng.random_range(-1.0..1.0);
                let mut r = vec![t, 2.0 * t, -t, -0.5 * t];
                r.extend([1.0; 4]);
                r
            })
            .collect();
        let r = pca_standardized(&mat(&rows), 1).unwrap();
        let top: Vec<String> = top_loadings(&r, 0, 4).unwrap().into_iter().map(|x| x.0).collect();
        let mut names = top.clone();
        names.sort();
        assert_eq!(names, ["c0", "c1", "c2", "c3"]);
        // brute force: every constant column has zero weight
        for j in 4..8 {
            assert!(r.loading(j, 0).abs() < 1e-12);
        }
    }

    #[test]
    fn scatter_shape_and_values() {
        let mut m = mat(&random(3, 4, 9));
        m = FeatureMatrix::new(m.row_ids().to_vec(), Some(vec!["x".into(), "y".into(), "x".into()]), m.columns().to_vec(), m.values().to_vec()).unwrap();
        let r = pca(&m, 2).unwrap();
        let rec = export_scatter(&r, (0, 1), None).unwrap();
        assert_eq!(rec.len(), 3);
        for (i, s) in rec.iter().enumerate() {
            assert_eq!(s.score_a, r.score(i, 0));
            assert_eq!(s.score_b, r.score(i, 1));
        }
        assert_eq!(rec[1].label, "y");
        assert!(export_scatter(&r, (0, 2), None).is_err());
    }

    #[test]
    fn varimax_keeps_communalities_and_raises_criterion() {
        let r = pca_standardized(&mat(&random(30, 6, 4)), 3).unwrap();
        let rot = varimax(&r.components, 6, 3, 200, 1e-12);
        for j in 0..6 {
            let before: f64 = (0..3).map(|c| r.components[j * 3 + c].powi(2)).sum();
            let after: f64 = (0..3).map(|c| rot[j * 3 + c].powi(2)).sum();
            assert!((before - after).abs() < 1e-10);
        }
        assert!(varimax_criterion(&rot, 6, 3) >= varimax_criterion(&r.components, 6, 3) - 1e-12);
    }

    fn check_orthonormal(r: &PcaResult) -> Result<(), TestCaseError> {
        for a in 0..r.k {
            for b in 0..r.k {
                let dot: f64 = (0..r.n_cols()).map(|j| r.loading(j, a) * r.loading(j, b)).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-8, "dot({a},{b}) = {dot}");
            }
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn components_orthonormal_and_sorted(n in 3usize..25, p in 1usize..10, seed in any::<u64>()) {
            let m = mat(&random(n, p, seed));
            let k = (n - 1).min(p);
            let r = pca(&m, k).unwrap();
            check_orthonormal(&r)?;
            prop_assert!(r.explained_variance.windows(2).all(|w| w[0] >= w[1]));
            let total: f64 = r.explained_ratio.iter().sum();
            prop_assert!(total <= 1.0 + 1e-10);
            for c in 0..k {
                let l = r.loadings(c);
                let big = l.iter().cloned().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
                prop_assert!(big > 0.0);
            }
        }

        #[test]
        fn full_rank_reconstruction(n in 3usize..20, p in 1usize..8, seed in any::<u64>()) {
            let m = mat(&random(n, p, seed));
            let r = pca(&m, (n - 1).min(p)).unwrap();
            let (mut err, mut norm) = (0.0, 0.0);
            for i in 0..n {
                for j in 0..p {
                    let c = m.get(i, j) - r.column_means[j];
                    let rec: f64 = (0..r.k).map(|q| r.score(i, q) * r.loading(j, q)).sum();
                    err += (c - rec).powi(2);
                    norm += c * c;
                }
            }
            prop_assert!(err.sqrt() <= 1e-8 * norm.sqrt().max(1e-300));
            if p < n {
                prop_assert!((r.explained_ratio.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            }
        }

        #[test]
        fn row_permutation(n in 3usize..15, p in 1usize..6, seed in any::<u64>(), rot in 1usize..14) {
            let rows = random(n, p, seed);
            let mut perm = rows.clone();
            perm.rotate_left(rot % n);
            let a = pca(&mat(&rows), 1).unwrap();
            let b = pca(&mat(&perm), 1).unwrap();
            for j in 0..p {
                prop_assert!((a.loading(j, 0) - b.loading(j, 0)).abs() < 1e-8);
            }
            for i in 0..n {
                prop_assert!((a.score((i + rot % n) % n, 0) - b.score(i, 0)).abs() < 1e-8);
            }
        }
    }
}
