//! SMOTE on the sphere: interpolate towards a same-class neighbour, then
//! project back onto the unit sphere.

use rand::Rng;

use super::{synthesize, BalancedSet, Method};
use crate::dataset::EmbeddingDataset;
use crate::directional::{l2_norm, UnitEmbedding};
use crate::error::{Error, Result};
use crate::rng::RngHandle;

pub const DEFAULT_SMOTE_K: usize = 5;

/// `normalize(z + u (z' − z))`; falls back to `z` when the chord passes
/// through the origin.
pub fn smote_interpolate(z: &UnitEmbedding, neighbour: &UnitEmbedding, u: f64) -> UnitEmbedding {
    let v: Vec<f64> = z
        .as_slice()
        .iter()
        .zip(neighbour.as_slice())
        .map(|(a, b)| a + u * (b - a))
        .collect();
    if l2_norm(&v) < 1e-12 {
        return z.clone();
    }
    UnitEmbedding::normalize(v).unwrap_or_else(|_| z.clone())
}

/// Indices of the `k` most cosine-similar other points, ties to lower index.
fn nearest_k(points: &[UnitEmbedding], i: usize, k: usize) -> Vec<usize> {
    let mut sims: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(j, p)| (points[i].dot(p), j))
        .collect();
    sims.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    sims.truncate(k);
    sims.into_iter().map(|(_, j)| j).collect()
}

pub fn balance_smote(dataset: &EmbeddingDataset, k: usize, rng: &mut RngHandle) -> Result<BalancedSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("SMOTE needs k >= 1".into()));
    }
    synthesize(dataset, Method::Smote, rng, |_, rows, deficit, rng| {
        let mut out = Vec::with_capacity(deficit * dataset.dim());
        if rows.len() == 1 {
            for _ in 0..deficit {
                out.extend_from_slice(dataset.row(rows[0]));
            }
            return Ok(out);
        }
        let points: Vec<UnitEmbedding> = rows
            .iter()
            .map(|&i| dataset.embedding(i))
            .collect::<Result<_>>()?;
        let neighbours: Vec<Vec<usize>> = (0..points.len())
            .map(|i| nearest_k(&points, i, k))
            .collect();
        for _ in 0..deficit {
            let i = rng.random_range(0..points.len());
            let j = neighbours[i][rng.random_range(0..neighbours[i].len())];
            let u: f64 = rng.random();
            out.extend(smote_interpolate(&points[i], &points[j], u).to_f32());
        }
        Ok(out)
    })
}
