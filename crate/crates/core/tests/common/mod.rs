#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use tubular::linalg::IntMat2;
use tubular::{IntVec2, QForm2, TubularPresentation};

pub type Pairs = Vec<(IntVec2, IntVec2)>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: i64, y: i64) -> IntVec2 {
    IntVec2::new(x, y)
}

pub fn nonzero_vec(r: &mut ChaCha8Rng, bound: i64) -> IntVec2 {
    loop {
        let (x, y) = (r.gen_range(-bound..=bound), r.gen_range(-bound..=bound));
        if (x, y) != (0, 0) {
            return v(x, y);
        }
    }
}

/// `k` random edges with `1 <= k <= max_k`.
pub fn random_edges(r: &mut ChaCha8Rng, bound: i64, max_k: usize) -> Pairs {
    let k = r.gen_range(1..=max_k);
    (0..k).map(|_| (nonzero_vec(r, bound), nonzero_vec(r, bound))).collect()
}

/// Edges whose differences all lie on one line, with some zero differences.
pub fn parallel_difference_edges(r: &mut ChaCha8Rng, bound: i64, max_k: usize) -> Pairs {
    let d = nonzero_vec(r, 2);
    let k = r.gen_range(1..=max_k);
    let mut out = Vec::new();
    while out.len() < k {
        let a = nonzero_vec(r, bound);
        let lam: i64 = r.gen_range(-2..=2);
        let b = a.add(&d.scale(&lam.into()));
        if !b.is_zero() {
            out.push((a, b));
        }
    }
    out
}

pub fn single(edges: &[(IntVec2, IntVec2)]) -> TubularPresentation {
    TubularPresentation::single_vertex("g", edges).unwrap()
}

/// A random element of GL₂(Z) as a product of elementary matrices.
pub fn unimodular(r: &mut ChaCha8Rng) -> IntMat2 {
    let mut m = IntMat2::identity();
    for _ in 0..r.gen_range(1..=6) {
        let k: i64 = r.gen_range(-2..=2);
        let e = match r.gen_range(0..4) {
            0 => IntMat2::from_i64(1, k, 0, 1),
            1 => IntMat2::from_i64(1, 0, k, 1),
            2 => IntMat2::from_i64(0, 1, 1, 0),
            _ => IntMat2::from_i64(-1, 0, 0, 1),
        };
        m = m.mul(&e);
    }
    m
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ri(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Evaluates `a x² + 2b xy + c y²` directly from the form's fields.
pub fn qeval(q: &QForm2, p: &IntVec2) -> BigRational {
    let (x, y) = (ri(&p.x), ri(&p.y));
    &q.a * &x * &x + rat(2, 1) * &q.b * &x * &y + &q.c * &y * &y
}

/// Independent check of a quadratic-form certificate.
pub fn form_certifies(q: &QForm2, edges: &[(IntVec2, IntVec2)]) -> bool {
    q.a.is_positive()
        && (&q.a * &q.c - &q.b * &q.b).is_positive()
        && edges.iter().all(|(a, b)| qeval(q, a) == qeval(q, b))
}

/// The form `B⁻ᵀ [[1, c], [c, 1]] B⁻¹` for `B = [v₁ w₁]`, built by solving
/// `Q(v₁) = Q(w₁) = 1`, `⟨v₁, w₁⟩_Q = c` as a linear system in `(a, b, c)`.
pub fn form_from_pivot(v1: &IntVec2, w1: &IntVec2, cos: &BigRational) -> Option<QForm2> {
    // Rows: coefficients of (a, 2b, c) in Q(x), and in the bilinear pairing.
    let row = |p: &IntVec2| [ri(&p.x) * ri(&p.x), ri(&p.x) * ri(&p.y), ri(&p.y) * ri(&p.y)];
    let pair = [ri(&v1.x) * ri(&w1.x), (ri(&v1.x) * ri(&w1.y) + ri(&v1.y) * ri(&w1.x)) / rat(2, 1), ri(&v1.y) * ri(&w1.y)];
    let m = [row(v1), row(w1), pair];
    let rhs = [BigRational::one(), BigRational::one(), cos.clone()];
    let sol = solve3(m, rhs)?;
    Some(QForm2::new(sol[0].clone(), &sol[1] / rat(2, 1), sol[2].clone()))
}

fn solve3(mut m: [[BigRational; 3]; 3], mut rhs: [BigRational; 3]) -> Option<[BigRational; 3]> {
    for col in 0..3 {
        let p = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        rhs.swap(col, p);
        for r in 0..3 {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in 0..3 {
                    let s = &f * &m[col][c];
                    m[r][c] -= s;
                }
                let s = &f * &rhs[col];
                rhs[r] -= s;
            }
        }
    }
    Some([&rhs[0] / &m[0][0], &rhs[1] / &m[1][1], &rhs[2] / &m[2][2]])
}

/// Brute-force CAT(0) oracle: scans `cos φ = n/d` with `d <= max_den` for a
/// form equalising every edge; all-parallel inputs need `v = ±w`.
pub fn cat0_scan(edges: &[(IntVec2, IntVec2)], max_den: i64) -> bool {
    let det = |a: &IntVec2, b: &IntVec2| &a.x * &b.y - &a.y * &b.x;
    let Some(p) = edges.iter().position(|(a, b)| !det(a, b).is_zero()) else {
        return edges.iter().all(|(a, b)| *a == *b || *a == b.neg());
    };
    let (v1, w1) = &edges[p];
    for d in 1..=max_den {
        for n in (-d + 1)..d {
            let c = rat(n, d);
            if let Some(q) = form_from_pivot(v1, w1, &c) {
                if form_certifies(&q, edges) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn arb_vec(bound: i64) -> impl proptest::strategy::Strategy<Value = IntVec2> {
    use proptest::prelude::*;
    (-bound..=bound, -bound..=bound).prop_filter("nonzero", |p| *p != (0, 0)).prop_map(|(x, y)| v(x, y))
}

pub fn arb_edges(bound: i64, max_k: usize) -> impl proptest::strategy::Strategy<Value = Pairs> {
    proptest::collection::vec((arb_vec(bound), arb_vec(bound)), 1..=max_k)
}

pub fn arb_unimodular() -> impl proptest::strategy::Strategy<Value = IntMat2> {
    use proptest::prelude::*;
    any::<u64>().prop_map(|seed| unimodular(&mut rng(seed)))
}

/// A random connected multi-vertex presentation on `n` vertices.
pub fn random_graph(r: &mut ChaCha8Rng, n: usize, extra: usize, bound: i64) -> TubularPresentation {
    use tubular::VertexId;
    let mut g = TubularPresentation::new("g");
    for i in 0..n {
        g.add_vertex(format!("V{i}")).unwrap();
    }
    let mut label = 0;
    let mut edge = |g: &mut TubularPresentation, a: usize, b: usize, r: &mut ChaCha8Rng| {
        label += 1;
        g.add_edge(format!("e{label}"), VertexId(a), nonzero_vec(r, bound), VertexId(b), nonzero_vec(r, bound))
            .unwrap();
    };
    for i in 1..n {
        let j = r.gen_range(0..i);
        edge(&mut g, j, i, r);
    }
    for _ in 0..extra {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        edge(&mut g, a, b, r);
    }
    g
}
