//! Family tables checked against models built without the library's
//! normal-form code: affine maps, quaternions and unitriangular matrices.

use std::collections::BTreeSet;

use grouprep::group::{build_group, validate_group, Group, GroupSpec};
use grouprep::subgroup::{enumerate_subgroups, Subgroup};

/// Checks that `model` is an injective homomorphism from `g`.
fn assert_faithful<T: PartialEq + std::fmt::Debug>(
    g: &Group,
    model: impl Fn(usize) -> T,
    mul: impl Fn(&T, &T) -> T,
) {
    let images: Vec<T> = (0..g.order()).map(&model).collect();
    for x in 0..g.order() {
        for y in 0..x {
            assert_ne!(images[x], images[y], "{}: {x} and {y} collide", g.name());
        }
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            assert_eq!(
                images[g.mul(x, y)],
                mul(&images[x], &images[y]),
                "{}: {x} * {y}",
                g.name()
            );
        }
    }
    assert!(validate_group(g).is_valid());
}

/// `x -> e x + b` on `Z_n`, stored as `(e, b)`.
fn affine_mul(n: usize) -> impl Fn(&(usize, usize), &(usize, usize)) -> (usize, usize) {
    move |&(e1, b1), &(e2, b2)| ((e1 * e2) % n, (b1 + e1 * b2) % n)
}

fn metacyclic_model(n: usize, twist: usize) -> impl Fn(usize) -> (usize, usize) {
    move |x| {
        let (a, j) = (x % n, x / n);
        (if j == 0 { 1 } else { twist }, a)
    }
}

#[test]
fn dihedral_and_quasidihedral_as_affine_maps() {
    for m in [3, 4, 5, 6, 8, 12] {
        let g = build_group(&GroupSpec::dihedral(m)).unwrap();
        assert_faithful(&g, metacyclic_model(m, m - 1), affine_mul(m));
    }
    for k in 3..=5 {
        let n = 1usize << k;
        let g = build_group(&GroupSpec::qd_minus(k)).unwrap();
        assert_faithful(&g, metacyclic_model(n, n / 2 - 1), affine_mul(n));
        let g = build_group(&GroupSpec::qd_plus(k)).unwrap();
        assert_faithful(&g, metacyclic_model(n, n / 2 + 1), affine_mul(n));
    }
}

#[test]
fn modular_group_as_affine_maps() {
    for p in [3usize, 5] {
        let n = p * p;
        let g = build_group(&GroupSpec::modular(p)).unwrap();
        // r^a s^b at a + p^2 b acts as x -> (1+p)^b x + a
        let model = |x: usize| {
            let (a, b) = (x % n, x / n);
            ((0..b).fold(1, |acc, _| acc * (1 + p) % n), a)
        };
        assert_faithful(&g, model, affine_mul(n));
    }
}

type Mat = [[usize; 3]; 3];

#[test]
fn heisenberg_as_unitriangular_matrices() {
    for p in [3usize, 5] {
        let g = build_group(&GroupSpec::heisenberg(p)).unwrap();
        let mat_mul = |x: &Mat, y: &Mat| {
            let mut z = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    z[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum::<usize>() % p;
                }
            }
            z
        };
        let unit = |i: usize, j: usize, v: usize| {
            let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            m[i][j] = v % p;
            m
        };
        // r^a s^b t^c at a + p b + p^2 c, with r, s, t the elementary matrices
        let model = |x: usize| {
            let (a, b, c) = (x % p, x / p % p, x / (p * p));
            mat_mul(&mat_mul(&unit(0, 1, a), &unit(1, 2, b)), &unit(0, 2, c))
        };
        assert_faithful(&g, model, mat_mul);
    }
}

type Quat = [f64; 4];

fn quat_mul(x: &Quat, y: &Quat) -> Quat {
    let [a1, b1, c1, d1] = *x;
    let [a2, b2, c2, d2] = *y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// Quaternions rounded so that equal products compare equal.
fn rounded(q: Quat) -> [i64; 4] {
    q.map(|v| (v * 1e9).round() as i64)
}

#[test]
fn dicyclic_as_unit_quaternions() {
    for m in [2usize, 3, 4, 5, 6, 8] {
        let g = build_group(&GroupSpec::dicyclic(m)).unwrap();
        let theta = std::f64::consts::PI / m as f64;
        let a: Quat = [theta.cos(), theta.sin(), 0.0, 0.0];
        let x: Quat = [0.0, 0.0, 1.0, 0.0];
        let model = |e: usize| {
            let (i, j) = (e % (2 * m), e / (2 * m));
            let mut q = [1.0, 0.0, 0.0, 0.0];
            for _ in 0..i {
                q = quat_mul(&q, &a);
            }
            if j == 1 {
                q = quat_mul(&q, &x);
            }
            q
        };
        let images: Vec<Quat> = (0..g.order()).map(model).collect();
        let keys: BTreeSet<[i64; 4]> = images.iter().map(|&q| rounded(q)).collect();
        assert_eq!(keys.len(), g.order());
        for e in 0..g.order() {
            for f in 0..g.order() {
                assert_eq!(
                    rounded(images[g.mul(e, f)]),
                    rounded(quat_mul(&images[e], &images[f])),
                    "DiC_{m}: {e} * {f}"
                );
            }
        }
    }
}

#[test]
fn quaternion_group_by_hand() {
    // 1, i, -1, -i, j, ij = k, -j, -k in normal form a^i x^j
    let names = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"];
    let table = [
        ["1", "i", "-1", "-i", "j", "k", "-j", "-k"],
        ["i", "-1", "-i", "1", "k", "-j", "-k", "j"],
        ["-1", "-i", "1", "i", "-j", "-k", "j", "k"],
        ["-i", "1", "i", "-1", "-k", "j", "k", "-j"],
        ["j", "-k", "-j", "k", "-1", "i", "1", "-i"],
        ["k", "j", "-k", "-j", "-i", "-1", "i", "1"],
        ["-j", "k", "j", "-k", "1", "-i", "-1", "i"],
        ["-k", "-j", "k", "j", "i", "1", "-i", "-1"],
    ];
    let q8 = build_group(&GroupSpec::dicyclic(2)).unwrap();
    let pos = |s: &str| names.iter().position(|&n| n == s).unwrap();
    for x in 0..8 {
        for y in 0..8 {
            assert_eq!(
                q8.mul(x, y),
                pos(table[x][y]),
                "{} * {}",
                names[x],
                names[y]
            );
        }
    }
    assert_eq!(build_group(&GroupSpec::modular(2)).unwrap(), q8);
    assert_eq!(
        build_group(&GroupSpec::heisenberg(2)).unwrap(),
        build_group(&GroupSpec::dihedral(4)).unwrap()
    );
}

#[test]
fn products_and_permutations() {
    let g = build_group(&GroupSpec::product(
        GroupSpec::dihedral(3),
        GroupSpec::cyclic(4),
    ))
    .unwrap();
    let d3 = build_group(&GroupSpec::dihedral(3)).unwrap();
    for x in 0..24 {
        for y in 0..24 {
            let (a, b) = (x / 4, x % 4);
            let (c, d) = (y / 4, y % 4);
            assert_eq!(g.mul(x, y), d3.mul(a, c) * 4 + (b + d) % 4);
        }
    }
    let z = build_group(&GroupSpec::abelian(&[3, 4, 2])).unwrap();
    assert_faithful(
        &z,
        |x| [x / 8, x / 2 % 4, x % 2],
        |u, v| [(u[0] + v[0]) % 3, (u[1] + v[1]) % 4, (u[2] + v[2]) % 2],
    );
    let s4 = build_group(&GroupSpec::permutations(vec![
        vec![1, 0, 2, 3],
        vec![1, 2, 3, 0],
    ]))
    .unwrap();
    assert_eq!(s4.order(), 24);
    assert!(!s4.is_abelian());
    assert!(validate_group(&s4).is_valid());
}

fn sets(g: &Group) -> BTreeSet<Vec<usize>> {
    enumerate_subgroups(g)
        .unwrap()
        .iter()
        .map(Subgroup::members)
        .collect()
}

/// `{x^{2^i h}, x^{2^i h + j} y}` inside a group with normal form `x^a y^b`
/// at `a + n b`.
fn coset_form(n: usize, i: u32, j: usize) -> Vec<usize> {
    let step = 1 << i;
    let mut v: Vec<usize> = (0..n)
        .step_by(step)
        .chain((j..n).step_by(step).map(|b| b + n))
        .collect();
    v.sort_unstable();
    v
}

#[test]
fn dihedral_and_dicyclic_two_power_lattices() {
    for k in 2..=4u32 {
        let n = 1usize << k;
        let mut want: BTreeSet<Vec<usize>> =
            (0..=k).map(|i| (0..n).step_by(1 << i).collect()).collect();
        for i in 0..=k {
            for j in 0..1usize << i {
                want.insert(coset_form(n, i, j));
            }
        }
        assert_eq!(
            sets(&build_group(&GroupSpec::dihedral(n)).unwrap()),
            want,
            "D_{n}"
        );
    }
    // DiC_{2^k}: a has order 2^{k+1}; the trivial subgroup is <a^{2^{k+1}}>
    for k in 1..=3u32 {
        let n = 1usize << (k + 1);
        let mut want: BTreeSet<Vec<usize>> = (0..=k + 1)
            .map(|i| (0..n).step_by(1 << i).collect())
            .collect();
        for i in 0..=k {
            for j in 0..1usize << i {
                want.insert(coset_form(n, i, j));
            }
        }
        assert_eq!(
            sets(&build_group(&GroupSpec::dicyclic(n / 2)).unwrap()),
            want,
            "DiC_{}",
            n / 2
        );
    }
}
