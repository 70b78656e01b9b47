#![allow(dead_code)]

use quasiep::{
    generate_instances, AffineFractionalInstance, AffineVIInstance, BoxSet, FeasibleSet,
    GeneratorConfig, Matrix, Vector, Xoshiro256StarStar,
};

pub fn v(x: &[f64]) -> Vector<f64> {
    Vector::new(x.to_vec()).unwrap()
}

pub fn instances(n: usize, count: usize, seed: u64) -> Vec<AffineFractionalInstance<f64>> {
    generate_instances(&GeneratorConfig::new(n, count, seed)).unwrap()
}

pub fn random_point(rng: &mut Xoshiro256StarStar, b: &BoxSet<f64>) -> Vector<f64> {
    v(&(0..b.dim())
        .map(|i| rng.uniform(b.lo()[i], b.hi()[i]))
        .collect::<Vec<_>>())
}

/// `F(x) = (I + S)x + r` with `S` skew-symmetric: strongly monotone with modulus 1.
pub fn strongly_monotone_vi(n: usize, seed: u64) -> AffineVIInstance<f64> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let s = rng.uniform(-0.5, 0.5);
            m.set(i, j, s);
            m.set(j, i, -s);
        }
    }
    let r = v(&(0..n).map(|_| rng.uniform(-4.0, -1.0)).collect::<Vec<_>>());
    AffineVIInstance::new(m, r, BoxSet::cube(n, 1.0, 3.0).unwrap()).unwrap()
}
