//! Closed-form and brute-force oracles, computed without the library's
//! eigen-solver or structure-constant code.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use gelfand::cosets::{double_cosets, BiInvariantFunction, GroupFunction};
use gelfand::group::{FiniteGroup, Limits, Subgroup};
use gelfand::harness::find;
use gelfand::hecke::{convolve, structure_constants};
use gelfand::pair::GelfandPair;

fn pair(name: &str) -> GelfandPair {
    find(name).unwrap().pair(&Limits::default()).unwrap()
}

/// Matches each expected vector to a distinct basis function.
fn same_set(pair: &GelfandPair, expected: &[Vec<Complex64>], tol: f64) {
    let basis = pair.basis().functions();
    assert_eq!(basis.len(), expected.len());
    let mut used = vec![false; basis.len()];
    for want in expected {
        let hit = basis.iter().enumerate().find(|(i, phi)| {
            !used[*i]
                && phi
                    .class_values()
                    .iter()
                    .zip(want)
                    .all(|(a, b)| (a - b).norm() < tol)
        });
        let (i, _) = hit.unwrap_or_else(|| panic!("{}: no basis function matches {want:?}", pair.name()));
        used[i] = true;
    }
}

fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
}

#[test]
fn cyclic_characters() {
    for (name, n) in [("z3", 3), ("z8", 8), ("z16", 16)] {
        let p = pair(name);
        // Element x of the catalog table is the residue x.
        let chars: Vec<Vec<Complex64>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|x| Complex64::from_polar(1.0, TAU * (j * x % n) as f64 / n as f64))
                    .collect()
            })
            .collect();
        same_set(&p, &chars, 1e-10);
    }
    // ℤ₄ in frequency order: φ_j(x) = i^{jx}.
    let p = pair("z4");
    for (j, phi) in p.basis().functions().iter().enumerate() {
        for x in 0..4 {
            let want = Complex64::new(0.0, 1.0).powu((j * x) as u32);
            assert!((phi.at(x) - want).norm() < 1e-12);
        }
    }
}

#[test]
fn klein_characters() {
    let p = pair("klein4");
    let chars: Vec<Vec<Complex64>> = (0..4usize)
        .map(|a| {
            real(
                &(0..4usize)
                    .map(|x| if (a & x).count_ones() % 2 == 0 { 1.0 } else { -1.0 })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    same_set(&p, &chars, 1e-12);
}

#[test]
fn symmetric_point_stabilizer() {
    // Doubly transitive action: the nontrivial function is orthogonal to 1.
    for (name, n) in [("s3/s2", 3.0), ("s4/s3", 4.0), ("s5/s4", 5.0)] {
        let p = pair(name);
        same_set(&p, &[real(&[1.0, 1.0]), real(&[1.0, -1.0 / (n - 1.0)])], 1e-10);
        assert_eq!(p.space().class_size(0), p.space().subgroup().order());
    }
}

fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `K_k(x) = Σ_j (−1)^j C(x, j) C(m − x, k − j)`.
fn krawtchouk(m: i64, k: i64, x: i64) -> f64 {
    (0..=k)
        .map(|j| (-1f64).powi(j as i32) * binomial(x, j) * binomial(m - x, k - j))
        .sum()
}

#[test]
fn cube_krawtchouk() {
    let p = pair("cube3");
    // Classes of the cube pair are Hamming distances 0..3 from vertex 0.
    let expected: Vec<Vec<Complex64>> = (0..4)
        .map(|k| {
            real(
                &(0..4)
                    .map(|d| krawtchouk(3, k, d) / binomial(3, k))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    same_set(&p, &expected, 1e-10);
    let phi1 = p.basis().get(1).class_values();
    for (v, w) in phi1.iter().zip([1.0, 1.0 / 3.0, -1.0 / 3.0, -1.0]) {
        assert!((v.re - w).abs() < 1e-12 && v.im.abs() < 1e-12);
    }
}

#[test]
fn square_cosines() {
    // d8 classes are the graph distances 0, 1, 2 on the 4-cycle.
    let p = pair("d8");
    let perms = p.group().permutations().unwrap();
    for x in 0..p.group().order() {
        let d = perms[x][0].min(4 - perms[x][0]);
        assert_eq!(p.space().class_of(x), d);
    }
    let expected: Vec<Vec<Complex64>> = [0usize, 1, 2]
        .iter()
        .map(|&j| real(&(0..3).map(|d| (TAU * (j * d) as f64 / 4.0).cos()).collect::<Vec<_>>()))
        .collect();
    same_set(&p, &expected, 1e-10);
}

/// For a pair with two self-inverse classes, evaluating `1_{D_1} ⋆ φ = λφ`
/// at `e` and at `r ∈ D_1` gives `|D_1| x² − c₁ x − c₀ = 0` for `x = φ(D_1)`,
/// where `c_j = #{a ∈ D_1 : a⁻¹r ∈ D_j}` is counted on the group directly.
#[test]
fn two_class_quadratic_oracle() {
    for name in ["s3/s2", "s4/s3", "s5/s4"] {
        let p = pair(name);
        let space = p.space();
        let g = p.group();
        let r = space.representative(1);
        let mut c = [0.0f64; 2];
        for &a in space.class(1) {
            c[space.class_of(g.mul(g.inv(a), r))] += 1.0;
        }
        let d1 = space.class_size(1) as f64;
        let disc = (c[1] * c[1] + 4.0 * d1 * c[0]).sqrt();
        let roots = [(c[1] + disc) / (2.0 * d1), (c[1] - disc) / (2.0 * d1)];
        for (phi, x) in p.basis().functions().iter().zip(roots) {
            assert!((phi.class_values()[1].re - x).abs() < 1e-10, "{name}: {x}");
        }
    }
}

fn permutations(n: usize) -> BTreeSet<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if left.is_empty() {
            out.insert(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = BTreeSet::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

#[test]
fn closure_enumerates_the_symmetric_group() {
    let g = FiniteGroup::from_permutations("s4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], 5040)
        .unwrap();
    let perms = g.permutations().unwrap();
    let got: BTreeSet<Vec<usize>> = perms.iter().cloned().collect();
    assert_eq!(got, permutations(4));
    for a in 0..g.order() {
        for b in 0..g.order() {
            let composed: Vec<usize> = (0..4).map(|i| perms[a][perms[b][i]]).collect();
            assert_eq!(perms[g.mul(a, b)], composed);
        }
    }
}

#[test]
fn structure_constants_match_group_convolution() {
    for name in ["s4/s3", "cube3", "d8", "s3/e"] {
        let k = find(name).unwrap().build(&Limits::default()).unwrap();
        let space = Arc::new(double_cosets(&k));
        let sc = structure_constants(&space);
        let g = space.group();
        let n = g.order();
        let d = space.len();
        for i in 0..d {
            let fi = BiInvariantFunction::indicator(&space, i).expand();
            for j in 0..d {
                let fj = BiInvariantFunction::indicator(&space, j).expand();
                let conv = convolve(&fi, &fj).unwrap();
                for x in 0..n {
                    let want = sc.get(i, j, space.class_of(x));
                    assert!((conv.values()[x].re - want).abs() < 1e-12, "{name} {i} {j} {x}");
                }
            }
        }
    }
}

#[test]
fn non_gelfand_control_has_noncommuting_indicators() {
    let k = find("s3/e").unwrap().build(&Limits::default()).unwrap();
    let g = Arc::clone(k.parent());
    let (a, b) = (1, 2);
    let fa = GroupFunction::delta(&g, a);
    let fb = GroupFunction::delta(&g, b);
    assert_ne!(g.mul(a, b), g.mul(b, a));
    let ab = convolve(&fa, &fb).unwrap();
    let ba = convolve(&fb, &fa).unwrap();
    assert!(ab.sub(&ba).unwrap().max_abs() > 0.1);
}

#[test]
fn plancherel_weights_are_inverse_squared_norms() {
    for name in ["s5/s4", "cube3", "d8", "z16", "s3/s3"] {
        let p = pair(name);
        for (j, phi) in p.basis().functions().iter().enumerate() {
            let values = phi.as_function().expand();
            let norm_sq: f64 =
                values.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / values.values().len() as f64;
            assert!((p.plancherel().weights[j] - 1.0 / norm_sq).abs() < 1e-9 * p.plancherel().weights[j]);
        }
    }
}

#[test]
fn full_group_pair_is_trivial() {
    let p = pair("s3/s3");
    assert_eq!(p.basis().len(), 1);
    assert_eq!(p.plancherel().weights, vec![1.0]);
    let g = Arc::clone(p.group());
    let whole = Subgroup::whole(&g);
    assert_eq!(double_cosets(&whole).len(), 1);
}
