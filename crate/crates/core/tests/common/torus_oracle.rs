//! Brute-force `Z^2 / <a, b>` for the torus fundamental group check.

use cohom1::catalog::{GroupSpec, Sub, TorusSubgroup};
use cohom1::diagram::GroupDiagram;
use cohom1::quotients::FundamentalGroup;
use cohom1::SymInt;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = gcd(v[0], v[1]);
    [v[0] / g, v[1] / g]
}

/// Whether `x` lies in the lattice spanned by `a`, `b` (`det != 0`).
fn in_lattice(x: [i64; 2], a: [i64; 2], b: [i64; 2]) -> bool {
    let det = a[0] * b[1] - a[1] * b[0];
    let s = x[0] * b[1] - x[1] * b[0];
    let t = a[0] * x[1] - a[1] * x[0];
    s % det == 0 && t % det == 0
}

fn order(x: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (1..).find(|&k| in_lattice([k * x[0], k * x[1]], a, b)).unwrap()
}

/// Quotient of `Z^2` by the circles with slopes `a` and `b`, found by counting
/// element orders instead of a normal form.
pub fn quotient(a: [i64; 2], b: [i64; 2]) -> FundamentalGroup {
    let (a, b) = (primitive(a), primitive(b));
    let det = a[0] * b[1] - a[1] * b[0];
    let cyc = |n: i64| FundamentalGroup::CyclicZ(SymInt::Concrete(n as u64));
    if det == 0 {
        // Both slopes span the same line, and primitive vectors leave no torsion.
        return FundamentalGroup::FreeAbelian(1);
    }
    let size = det.abs();
    let e1 = order([1, 0], a, b);
    let e2 = order([0, 1], a, b);
    let exponent = e1 / gcd(e1, e2) * e2;
    let small = size / exponent;
    match (small, exponent) {
        (_, 1) => FundamentalGroup::Trivial,
        (1, e) => cyc(e),
        (s, e) => FundamentalGroup::Product(vec![cyc(s), cyc(e)]),
    }
}

pub fn t2_diagram(a: [i64; 2], b: [i64; 2]) -> GroupDiagram {
    let g = GroupSpec::Torus(2);
    let sub = |t: TorusSubgroup| Sub::Torus(t).embed(&g);
    GroupDiagram::new(g.clone(), sub(TorusSubgroup::trivial(2)), sub(TorusSubgroup::circle(&a)), sub(TorusSubgroup::circle(&b)))
}

pub fn slopes(seed: u64, count: usize, max: i64) -> Vec<([i64; 2], [i64; 2])> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut pick = move || loop {
        let v = [rng.gen_range(-max..=max), rng.gen_range(-max..=max)];
        if v != [0, 0] {
            return v;
        }
    };
    (0..count).map(|_| (pick(), pick())).collect()
}
