//! Independent oracles: every check recomputes a quantity by a route that
//! shares no code with the library beyond the type token.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use picmod::rep_theory::{
    dynkin_index, freudenthal_weights, index_via_weights, tensor_weight_system, weyl_dim, IrrepLabel,
};
use picmod::verlinde::{count_p_ell, enumerate_p_ell, t_ell};
use picmod::wps::{wps_from_group, HilbertTable, WpsWeights};
use picmod::{invariant_factors, lattice_index, LieType, RootDatum, WeightVec};

fn datum(s: &str) -> RootDatum {
    RootDatum::build(s.parse().unwrap()).unwrap()
}

fn all_types() -> Vec<LieType> {
    LieType::all_up_to_rank(8)
}

// ---------- Smith normal form via determinantal divisors ----------

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k = D_k / D_(k-1)` with `D_k` the gcd of all `k x k` minors.
fn determinantal_factors(rows: &[Vec<i64>]) -> Vec<i64> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=m.min(n) {
        let mut g = 0i128;
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                let sub: Vec<Vec<i128>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c] as i128).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as i64);
        prev = g;
    }
    out
}

proptest! {
    #[test]
    fn snf_matches_minors(
        rows in (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
            prop::collection::vec(prop::collection::vec(-9i64..=9, n), m)
        })
    ) {
        prop_assert_eq!(invariant_factors(&rows), determinantal_factors(&rows));
    }
}

/// Long roots written in fundamental-weight coordinates; the index of the
/// lattice they span is `#P/Q_lg`.
fn long_roots_in_weights(d: &RootDatum) -> Vec<Vec<i64>> {
    d.long_positive_roots().map(|r| d.root_to_weight(r).coords().to_vec()).collect()
}

#[test]
fn index_p_over_long_roots() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        let k = t.rank();
        let want: u64 = match t.to_string().chars().next().unwrap() {
            'A' => k as u64 + 1,
            'B' | 'D' => 4,
            'C' => 1 << k,
            'E' => [3, 2, 1][k - 6],
            'F' => 4,
            _ => 3,
        };
        assert_eq!(d.index_p_over_qlg(), want, "{t}");
        if k <= 4 {
            let factors = determinantal_factors(&long_roots_in_weights(&d));
            assert_eq!(factors.len(), k, "{t}");
            assert_eq!(factors.iter().map(|&x| x as u64).product::<u64>(), want, "{t}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn lattice_index_ignores_root_order(
        t in prop::sample::select(all_types()),
        seed in any::<u64>(),
    ) {
        let d = RootDatum::build(t).unwrap();
        let mut rows = long_roots_in_weights(&d);
        // deterministic shuffle from the seed
        let mut s = seed | 1;
        for i in (1..rows.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            rows.swap(i, (s % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(lattice_index(&rows), Some(d.index_p_over_qlg()));
    }
}

// ---------- root data ----------

#[test]
fn b3_orthonormal_model() {
    // simple roots e1-e2, e2-e3, e3 with the standard inner product
    let simple = [[1i64, -1, 0], [0, 1, -1], [0, 0, 1]];
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let d = datum("B3");
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(d.form()[i][j], Rational64::from_integer(dot(&simple[i], &simple[j])));
            let cartan = 2 * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
            assert_eq!(d.cartan()[i][j], cartan);
        }
    }
    // theta = e1 + e2 = a1 + 2 a2 + 2 a3
    assert_eq!(d.theta(), &[1, 2, 2]);
    assert_eq!(d.comarks(), &[1, 2, 1]);
    assert_eq!(d.dual_coxeter(), 5);
    assert_eq!(d.positive_roots().len(), 9);

    // vector: weights +-e_i, 0; spin: (+-1/2)^3. index = 1/2 sum <mu, theta>^2
    let vector: Vec<[i64; 3]> = vec![[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1], [0, 0, 0]];
    let theta = [1i64, 1, 0];
    let idx_vec: i64 = vector.iter().map(|m| dot(m, &theta).pow(2)).sum::<i64>() / 2;
    let mut spin2 = 0i64; // twice the spin index, with weights doubled
    for s in 0..8 {
        let m: Vec<i64> = (0..3).map(|b| if s >> b & 1 == 1 { 1 } else { -1 }).collect();
        spin2 += dot(&m, &theta).pow(2);
    }
    let idx_spin = spin2 / 8; // (1/2)^2 from halving, 1/2 from the formula
    assert_eq!(idx_vec, 2);
    assert_eq!(idx_spin, 2);
    assert_eq!(dynkin_index(&d, &IrrepLabel::fundamental(3, 1)).unwrap(), BigUint::from(idx_vec as u64));
    assert_eq!(dynkin_index(&d, &IrrepLabel::fundamental(3, 3)).unwrap(), BigUint::from(idx_spin as u64));
    assert_eq!(weyl_dim(&d, &IrrepLabel::fundamental(3, 1)).unwrap(), BigUint::from(7u32));
    assert_eq!(weyl_dim(&d, &IrrepLabel::fundamental(3, 3)).unwrap(), BigUint::from(8u32));
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn sl_exterior_powers() {
    // V(w_k) = wedge^k C^(n+1): dim C(n+1, k), index C(n-1, k-1)
    for n in 1..=8u64 {
        let d = datum(&format!("A{n}"));
        for k in 1..=n {
            let lam = IrrepLabel::fundamental(n as usize, k as usize);
            assert_eq!(weyl_dim(&d, &lam).unwrap(), BigUint::from(binom(n + 1, k)), "A{n} w{k}");
            let want = if n == 1 { 1 } else { binom(n - 1, k - 1) };
            assert_eq!(dynkin_index(&d, &lam).unwrap(), BigUint::from(want), "A{n} w{k}");
        }
    }
}

#[test]
fn dimensions_of_lie_algebras() {
    let want = [("A8", 80), ("B8", 136), ("C8", 136), ("D8", 120), ("E6", 78), ("E7", 133), ("E8", 248), ("F4", 52), ("G2", 14)];
    for (t, dim) in want {
        assert_eq!(datum(t).dim_g(), dim, "{t}");
    }
}

#[test]
fn dual_coxeter_two_ways() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        let from_comarks = 1 + d.comarks().iter().sum::<i64>();
        let rho_theta = d.pair_weights(d.rho().coords(), d.root_to_weight(d.theta()).coords());
        assert_eq!(Rational64::from_integer(from_comarks), rho_theta + 1, "{t}");
        assert_eq!(d.dual_coxeter(), from_comarks);
        // theta is long with <theta, theta> = 2
        let th = d.root_to_weight(d.theta());
        assert_eq!(d.pair_weights(th.coords(), th.coords()), Rational64::from_integer(2));
    }
}

fn leading_minors_positive(m: &[Vec<Rational64>]) -> bool {
    // Gaussian elimination; pivots are ratios of consecutive leading minors
    let mut a = m.to_vec();
    let n = a.len();
    for i in 0..n {
        if !a[i][i].is_positive() {
            return false;
        }
        for r in i + 1..n {
            let f = a[r][i] / a[i][i];
            for c in i..n {
                let v = a[i][c];
                a[r][c] -= f * v;
            }
        }
    }
    true
}

#[test]
fn weight_gram_is_positive_definite_and_dual() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        let g = d.weight_form();
        assert!(leading_minors_positive(g), "{t}");
        let k = t.rank();
        for i in 0..k {
            for j in 0..k {
                assert_eq!(g[i][j], g[j][i]);
                // <w_i, a_j^vee> = delta_ij
                let mut e = vec![0i64; k];
                e[j] = 1;
                let aj = d.root_to_weight(&e);
                let pair = d.pair_weights(WeightVec::fundamental(k, i + 1).coords(), aj.coords())
                    / d.half_norms()[j];
                let want = if i == j { Rational64::one() } else { Rational64::zero() };
                assert_eq!(pair, want, "{t} {i} {j}");
            }
        }
    }
}

#[test]
fn positive_roots_closed_under_simple_reflections() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        let k = t.rank();
        let roots = d.positive_roots();
        for i in 0..k {
            for a in roots {
                let pair: i64 = (0..k).map(|j| a[j] * d.cartan()[j][i]).sum();
                let mut r = a.clone();
                r[i] -= pair;
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                let is_simple_i = a.iter().enumerate().all(|(j, &c)| c == i64::from(j == i));
                if is_simple_i {
                    assert!(roots.contains(&neg), "{t}");
                } else {
                    assert!(roots.contains(&r), "{t}: s{} {:?} = {:?}", i + 1, a, r);
                }
            }
        }
    }
}

// ---------- weights ----------

fn small_irrep() -> impl Strategy<Value = (String, Vec<i64>)> {
    prop::sample::select(vec!["A1", "A2", "A3", "B3", "C2", "C3", "D4", "G2"]).prop_flat_map(|t| {
        let k = datum(t).rank();
        (Just(t.to_string()), prop::collection::vec(0i64..=2, k))
    })
}

fn dim_of(d: &RootDatum, w: &[i64]) -> u64 {
    use num_traits::ToPrimitive;
    weyl_dim(d, &IrrepLabel::new(WeightVec::new(w)).unwrap()).unwrap().to_u64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weight_systems_are_weyl_invariant((t, w) in small_irrep()) {
        let d = datum(&t);
        prop_assume!(dim_of(&d, &w) <= 3000);
        let lam = IrrepLabel::new(WeightVec::new(&w)).unwrap();
        let ws = freudenthal_weights(&d, &lam).unwrap();
        prop_assert_eq!(BigUint::from(ws.dim()), weyl_dim(&d, &lam).unwrap());
        let k = d.rank();
        for i in 0..k {
            let mut e = vec![0i64; k];
            e[i] = 1;
            let alpha = d.root_to_weight(&e);
            for (mu, &m) in ws.entries() {
                let image = mu.sub(&alpha.scale(mu.coords()[i]));
                prop_assert_eq!(ws.multiplicity(&image), m);
            }
        }
        prop_assert_eq!(index_via_weights(&ws, &d).unwrap(), dynkin_index(&d, &lam).unwrap());
    }

    #[test]
    fn tensor_index_identity(
        (t, a, b) in prop::sample::select(vec!["A2", "B3", "C2", "G2"]).prop_flat_map(|t| {
            let k = datum(t).rank();
            (Just(t.to_string()), prop::collection::vec(0i64..=1, k), prop::collection::vec(0i64..=2, k))
        })
    ) {
        let d = datum(&t);
        prop_assume!(dim_of(&d, &a) * dim_of(&d, &b) <= 20_000);
        let la = IrrepLabel::new(WeightVec::new(&a)).unwrap();
        let lb = IrrepLabel::new(WeightVec::new(&b)).unwrap();
        let va = freudenthal_weights(&d, &la).unwrap();
        let vb = freudenthal_weights(&d, &lb).unwrap();
        let prod = tensor_weight_system(&va, &vb).unwrap();
        prop_assert_eq!(prod.dim(), va.dim() * vb.dim());
        let lhs = index_via_weights(&prod, &d).unwrap();
        let rhs = dynkin_index(&d, &la).unwrap() * vb.dim() + dynkin_index(&d, &lb).unwrap() * va.dim();
        prop_assert_eq!(lhs, rhs);
    }
}

// ---------- alcoves ----------

/// Nested-loop count of `n >= 0` with `sum n_i c_i <= l`.
fn brute_alcove(comarks: &[i64], l: i64) -> u64 {
    fn go(c: &[i64], budget: i64) -> u64 {
        match c.split_first() {
            None => 1,
            Some((&first, rest)) => (0..=budget / first).map(|n| go(rest, budget - n * first)).sum(),
        }
    }
    go(comarks, l)
}

#[test]
fn alcove_counts_brute_force() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        for l in 0..=8u32 {
            let want = brute_alcove(d.comarks(), l as i64);
            assert_eq!(count_p_ell(&d, l), BigUint::from(want), "{t} l={l}");
            let listed = enumerate_p_ell(&d, l);
            assert_eq!(listed.len() as u64, want);
            assert!(listed.iter().all(|w| d.level(w) <= l as i64 && w.is_dominant()));
        }
    }
}

#[test]
fn t_ell_closed_form() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        for l in 0..4u32 {
            let want = BigUint::from((l as i64 + d.dual_coxeter()) as u64).pow(t.rank() as u32)
                * d.index_p_over_qlg();
            assert_eq!(t_ell(&d, l), want, "{t}");
        }
    }
}

proptest! {
    #[test]
    fn alcove_counts_are_monotone(t in prop::sample::select(all_types()), l in 0u32..40) {
        let d = RootDatum::build(t).unwrap();
        prop_assert!(count_p_ell(&d, l) <= count_p_ell(&d, l + 1));
    }
}

// ---------- weighted projective spaces ----------

/// Monomials of degree `deg` in variables of the given weights, by explicit
/// enumeration of exponent vectors.
fn brute_monomials(weights: &[u64], deg: u64) -> u64 {
    let mut exps = vec![0u64; weights.len()];
    let mut count = 0;
    loop {
        let total: u64 = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        if total == deg {
            count += 1;
        }
        // odometer, each exponent bounded by deg / weight
        let mut i = 0;
        loop {
            if i == exps.len() {
                return count;
            }
            if exps[i] < deg / weights[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn hilbert_function_matches_enumeration(
        weights in prop::collection::vec(1u64..=6, 1..=4),
        deg in 0u64..=18,
    ) {
        prop_assume!(weights.iter().fold(0, |g, &w| g.gcd(&w)) == 1);
        let w = WpsWeights::new(weights.clone()).unwrap();
        let want = BigUint::from(brute_monomials(&weights, deg));
        prop_assert_eq!(&w.hilbert_dim(deg), &want);
        let table = HilbertTable::compute(w.clone(), deg);
        prop_assert_eq!(table.get(deg).unwrap(), &want);
        prop_assert_eq!(w.generator_degree(), weights.iter().fold(1, |l, &x| l.lcm(&x)));
    }
}

#[test]
fn genus_one_model_counts_alcoves() {
    for t in all_types() {
        let d = RootDatum::build(t).unwrap();
        let model = wps_from_group(&d);
        for l in 0..=10u64 {
            assert_eq!(model.hilbert_dim(l), count_p_ell(&d, l as u32), "{t} l={l}");
        }
    }
}

#[test]
fn rejects_bad_weights() {
    assert!(WpsWeights::new(vec![]).is_err());
    assert!(WpsWeights::new(vec![0, 1]).is_err());
    assert!(WpsWeights::new(vec![2, 4, 6]).is_err());
}
