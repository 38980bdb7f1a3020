//! Deterministic random generation of skeletons and points.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::rational::Q;
use crate::tree::{EdgeId, Point, TreeSkeleton};

/// Generation parameters. Edge lengths are `n/d` with
/// `1 ≤ d ≤ max_denominator` and `0 < n/d ≤ max_length`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_length: u32,
    pub max_denominator: u32,
    pub samples: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            min_vertices: 4,
            max_vertices: 12,
            max_length: 4,
            max_denominator: 16,
            samples: 1000,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_vertices(mut self, min: usize, max: usize) -> Self {
        self.min_vertices = min;
        self.max_vertices = max;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.min_vertices == 0 || self.min_vertices > self.max_vertices {
            return Err(HarnessError::InvalidRange(format!(
                "vertices {}..={}",
                self.min_vertices, self.max_vertices
            )));
        }
        if self.max_length == 0 || self.max_denominator == 0 {
            return Err(HarnessError::InvalidRange(format!(
                "max_length {} / max_denominator {}",
                self.max_length, self.max_denominator
            )));
        }
        Ok(())
    }

    /// Seed of the `index`-th case, independent of the other cases.
    pub fn case_seed(&self, index: u64) -> u64 {
        splitmix64(self.seed ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn case_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random tree: vertex `i` attaches to a uniformly chosen earlier
/// vertex, lengths are random rationals, the root is uniform.
pub fn random_skeleton<R: Rng>(
    config: &GeneratorConfig,
    rng: &mut R,
) -> Result<TreeSkeleton, HarnessError> {
    config.validate()?;
    let n = rng.random_range(config.min_vertices..=config.max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, Q)> = (1..n)
        .map(|i| {
            let j = rng.random_range(0..i);
            let den = rng.random_range(1..=config.max_denominator) as i128;
            let num = rng.random_range(1..=config.max_length as i128 * den);
            (names[j].clone(), names[i].clone(), Q::new(num, den))
        })
        .collect();
    let root = names[rng.random_range(0..n)].clone();
    Ok(TreeSkeleton::new(&root, names.clone(), edges)?)
}

/// The skeleton generated directly from `config.seed`.
pub fn generate_skeleton(config: &GeneratorConfig) -> Result<TreeSkeleton, HarnessError> {
    random_skeleton(config, &mut case_rng(config.seed))
}

/// A random point: a vertex half of the time, otherwise an interior point
/// of a random edge at a fraction `k/m` of its length.
pub fn random_point<R: Rng>(skeleton: &TreeSkeleton, rng: &mut R, max_denominator: u32) -> Point {
    if skeleton.edge_count() == 0 || rng.random_bool(0.5) {
        let v = rng.random_range(0..skeleton.vertex_count());
        return skeleton.vertex_points()[v];
    }
    let edge = EdgeId(rng.random_range(0..skeleton.edge_count()) as u32);
    let m = rng.random_range(2..=max_denominator.max(2)) as i128;
    let k = rng.random_range(1..m);
    let offset = skeleton.edge(edge).length * Q::new(k, m);
    Point::Edge { edge, offset }
}

/// A random vertex point.
pub fn random_vertex<R: Rng>(skeleton: &TreeSkeleton, rng: &mut R) -> Point {
    skeleton.vertex_points()[rng.random_range(0..skeleton.vertex_count())]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_config() {
        let cfg = GeneratorConfig::default().with_seed(1).with_vertices(1, 1);
        let t = generate_skeleton(&cfg).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (1, 0));
    }

    #[test]
    fn deterministic() {
        for k in 0..5 {
            let cfg = GeneratorConfig::default().with_seed(k).with_vertices(4, 4);
            assert_eq!(
                generate_skeleton(&cfg).unwrap(),
                generate_skeleton(&cfg).unwrap()
            );
        }
    }

    #[test]
    fn tree_property() {
        let cfg = GeneratorConfig::default().with_seed(2).with_vertices(5, 10);
        let t = generate_skeleton(&cfg).unwrap();
        assert!((5..=10).contains(&t.vertex_count()));
        assert_eq!(t.edge_count(), t.vertex_count() - 1);
    }

    #[test]
    fn invalid_ranges() {
        let cfg = GeneratorConfig::default().with_vertices(5, 4);
        assert!(matches!(
            generate_skeleton(&cfg),
            Err(HarnessError::InvalidRange(_))
        ));
        let cfg = GeneratorConfig::default().with_vertices(0, 4);
        assert!(matches!(
            generate_skeleton(&cfg),
            Err(HarnessError::InvalidRange(_))
        ));
        let cfg = GeneratorConfig {
            max_denominator: 0,
            ..GeneratorConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn random_points_are_canonical() {
        let cfg = GeneratorConfig::default().with_seed(9);
        let mut rng = case_rng(3);
        for _ in 0..50 {
            let t = random_skeleton(&cfg, &mut rng).unwrap();
            for _ in 0..20 {
                let p = random_point(&t, &mut rng, cfg.max_denominator);
                assert!(t.contains_point(&p));
            }
        }
    }
}
