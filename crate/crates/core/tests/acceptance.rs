//! Acceptance suite: prints one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p cosmohedra --test acceptance`. The process exits
//! non-zero when a criterion fails, except for those listed in
//! [`UNATTAINABLE`], which are still reported as FAIL together with the reason.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use cosmohedra::cosmofan::{
    braid2_witness, check_fan_meet, hexagon_m2, hexagon_meet, subdivision_ray, verify_fan, PairSampling,
};
use cosmohedra::exactgeom::{int, rat, Rat};
use cosmohedra::matryoshka::{enumerate, Matryoshka};
use cosmohedra::polygon::{ChordSet, Diagonal, SubPolygon};
use cosmohedra::realization::{
    afv_check, cosmo_vertices, default_params, devadoss_vertex, loday_vertex, verify_cosmohedron,
    verify_cosmohedron_vertices, Sampling,
};
use cosmohedra::series::{
    correlatron_h_direct, correlatron_h_formula, correlatron_inverse_residual, cosmohedron_inverse_residual,
    d_algebraic_residual, f_polynomials_enumeration, f_polynomials_partition, f_polynomials_recurrence,
    max_matryoshka_counts, table_correlatron, FPoly,
};
use cosmohedra::uloop::{
    default_loop_params, enumerate_loop_triangulations, expected_u_vertex_count, loop_assoc_vertices,
    modular_solution_space, u_fan_check, u_polytope_vertices, LoopError, Orientation,
};

/// Criteria that cannot hold as stated; see the README for the analysis.
const UNATTAINABLE: &[usize] = &[7];

const TABLE1: &[&[i64]] = &[
    &[1],
    &[1, 2],
    &[1, 10, 10],
    &[1, 44, 114, 72],
    &[1, 196, 952, 1400, 644],
    &[1, 902, 7116, 18040, 18528, 6704],
    &[1, 4278, 50550, 194616, 332664, 262728, 78408],
];

const TABLE2: &[&[i64]] = &[
    &[0],
    &[0, 1],
    &[0, 3, 4],
    &[0, 11, 35, 25],
    &[0, 45, 251, 405, 200],
    &[0, 197, 1694, 4592, 4984, 1890],
    &[0, 903, 11158, 44932, 80036, 65606, 20248],
];

const M_SEQUENCE: &[i64] = &[1, 2, 10, 72, 644, 6704, 78408];

fn big(row: &[i64]) -> Vec<BigInt> {
    row.iter().map(|&x| BigInt::from(x)).collect()
}

fn coeffs(p: &FPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let enumerated = f_polynomials_enumeration(7);
    let recurrence = f_polynomials_recurrence(8);
    let partition = f_polynomials_partition(8);
    let table_ok = (0..7).all(|d| coeffs(&enumerated[d]) == big(TABLE1[d]) && coeffs(&recurrence[d]) == big(TABLE1[d]));
    let routes_ok = recurrence == partition;
    outcome(
        table_ok && routes_ok,
        format!(
            "enumeration n=1..7 and recurrence match all {} rows; recurrence = partition formula for n<=8: {routes_ok}; f_8 = {}",
            TABLE1.len(),
            recurrence[7]
        ),
    )
}

fn criterion_2() -> Outcome {
    let formula = table_correlatron(6);
    let formula_ok = formula.iter().zip(TABLE2).all(|(r, t)| *r == big(t)) && formula.len() == TABLE2.len();
    let direct = correlatron_h_direct(5);
    let direct_ok = direct == correlatron_h_formula(5);
    outcome(
        formula_ok && direct_ok,
        format!("formula matches rows 0..6: {formula_ok}; direct pair enumeration n<=5 agrees: {direct_ok}"),
    )
}

fn criterion_3() -> Outcome {
    let m = max_matryoshka_counts(7);
    let seq_ok = m == big(M_SEQUENCE);
    let direct_ok = (1..=6).all(|n| BigInt::from(enumerate(n, true).len()) == m[n - 1]);
    let residual_ok = d_algebraic_residual(20).is_zero();
    outcome(
        seq_ok && direct_ok && residual_ok,
        format!("sequence {seq_ok}; direct maximal counts n<=6 {direct_ok}; M - x^2 - M M' = 0 to x^20 {residual_ok}"),
    )
}

fn criterion_4() -> Outcome {
    let f = f_polynomials_recurrence(8);
    let h = correlatron_h_formula(7);
    let cosmo = cosmohedron_inverse_residual(&f, 8).is_zero();
    let corr = correlatron_inverse_residual(&h, &f, 8).is_zero();
    outcome(
        cosmo && corr,
        format!("f/g pair residual zero to x^8: {cosmo}; h/tg pair: {corr}"),
    )
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for n in 1..=4 {
        let r = verify_cosmohedron(&default_params(n), Sampling::Exhaustive);
        pass &= r.ok() && r.tightness_ok && r.support_ok && r.strict_ok;
        detail.push(format!(
            "n={n} exhaustive {} checks {}",
            r.support_checks,
            if r.ok() { "ok" } else { "FAIL" }
        ));
    }
    let r = verify_cosmohedron(
        &default_params(5),
        Sampling::Random {
            seed: 20250101,
            triples: 100_000,
        },
    );
    pass &= r.ok() && r.support_checks >= 100_000;
    detail.push(format!(
        "n=5 sampled {} triples {}",
        r.support_checks,
        if r.ok() { "ok" } else { "FAIL" }
    ));
    outcome(pass, detail.join("; "))
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for n in 1..=4 {
        let r = verify_fan(n, PairSampling::All);
        pass &= r.ok() && r.ridge_pairing && r.connected && r.order_isomorphic && r.proper_intersections;
        detail.push(format!(
            "n={n} {} faces {}",
            r.faces,
            if r.ok() { "ok" } else { "FAIL" }
        ));
    }
    let meet = check_fan_meet(3);
    pass &= meet.is_empty();
    detail.push(format!("fan_meet disagreements at n=3: {}", meet.len()));
    outcome(pass, detail.join("; "))
}

fn criterion_7() -> Outcome {
    let mut structural = true;
    let mut negative = 0;
    let mut nonzero_present = 0;
    let mut limit_ok = true;
    for n in 2..=4 {
        let p = default_params(n);
        let vs = cosmo_vertices(&p).expect("vertices");
        let r = afv_check(&p, &vs);
        structural &= r.ok() && r.rank + 1 == n;
        negative += r.negative_entries;
        nonzero_present += r.present_total - r.present_zero;
        let p0 = p.with_epsilon(Rat::zero());
        let v0 = cosmo_vertices(&p0).expect("vertices");
        let r0 = afv_check(&p0, &v0);
        limit_ok &= r0.present_zero == r0.present_total && r0.negative_entries == 0;
    }
    outcome(
        structural && negative == 0 && nonzero_present == 0,
        format!(
            "ABHY residuals zero, subdivision inequalities and tightness, X_C = -eps b_M(P(C)), rank n-1: {structural}; \
             at eps>0 {nonzero_present} present-chord entries are nonzero and {negative} entries are negative \
             (both vanish at eps=0: {limit_ok}); distinct vertices sharing a triangulation cannot all satisfy X_C = 0 on its chords"
        ),
    )
}

fn criterion_8() -> Outcome {
    let p = default_params(4);
    let loday = loday_vertex(&p, &hexagon_m2().subdivision());
    let loday_ok = loday == [2, 1, 6, 1].map(int).to_vec();
    let bt = hexagon_m2().to_bracketed_tree();
    let mut entries: Vec<Rat> = devadoss_vertex(&bt.tree, &bt.bracketing, &|q: &SubPolygon| p.b(q))
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    entries.sort();
    let devadoss_ok = entries == vec![int(1), int(2)];
    let trap = verify_cosmohedron(&p, Sampling::Exhaustive).trapezoid;
    let trap_ok = trap.as_ref().is_some_and(|t| t.edges_ok && t.parallel && t.unequal);
    let meet = hexagon_meet();
    let s = ChordSet::new(4, vec![Diagonal::new(0, 3), Diagonal::new(3, 5)]);
    let meet_ok =
        meet == Matryoshka::of_subdivision(&s) && subdivision_ray(&s).ray == [0, 0, 1, 0].map(BigInt::from).to_vec();
    let w = braid2_witness();
    let braid_ok = w.inside_ok && w.outside_ok;
    outcome(
        loday_ok && devadoss_ok && trap_ok && meet_ok && braid_ok,
        format!(
            "a_M2 = (2,1,6,1) {loday_ok}; Devadoss entries 2,1 {devadoss_ok}; trapezoid identities {trap_ok}; \
             meet ray x3 >= x124 {meet_ok}; braid witness {braid_ok}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut checked = 0;
    for n in 1..=5 {
        let base = default_params(n);
        let bound = base.epsilon_bound().unwrap_or_else(|| rat(1, 24));
        for d in [2, 10, 100] {
            let p = base.clone().with_epsilon(&bound / int(d));
            match cosmo_vertices(&p) {
                Ok(vs) => checked += vs.len(),
                Err(_) => pass = false,
            }
        }
    }
    outcome(
        pass,
        format!("definition and closed-form routes agree on {checked} vertices (n<=5, three eps values)"),
    )
}

fn criterion_10() -> Outcome {
    let t2 = enumerate_loop_triangulations(2).map(|t| t.len()).unwrap_or(0);
    let t3 = enumerate_loop_triangulations(3).unwrap_or_default();
    let blue3 = t3.iter().filter(|t| t.color() == Some(Orientation::Cw)).count();
    let counts_ok = t2 == 6 && t3.len() == 20 && blue3 == 10;
    let l1_ok = [(2, 6), (3, 20)]
        .iter()
        .all(|&(n, want)| loop_assoc_vertices(&default_loop_params(n, &Rat::zero())).map(|v| v.len()) == Ok(want));
    let u2 = u_polytope_vertices(&default_loop_params(2, &rat(1, 10))).map(|v| v.len());
    let u3 = u_polytope_vertices(&default_loop_params(3, &rat(1, 10))).map(|v| v.len());
    let u_ok = u2 == Ok(8) && u3.as_ref().ok() == expected_u_vertex_count(3).as_ref().ok();
    let eps_ok = (2..=4).all(|n| {
        default_loop_params(n, &rat(1, 10)).problems().is_empty() && modular_solution_space(n) == (n + 1, true)
    });
    let fan = u_fan_check(&default_loop_params(3, &rat(1, 10)), 1);
    let fan_ok = fan
        .as_ref()
        .is_ok_and(|r| r.ok() && r.three_spoke_new_rays == Some(4) && r.three_spoke_cones == Some(3));
    let fan2_ok = u_fan_check(&default_loop_params(2, &rat(1, 10)), 1).is_ok_and(|r| r.ok());
    outcome(
        counts_ok && l1_ok && u_ok && eps_ok && fan_ok && fan2_ok,
        format!(
            "triangulations 6 and 20 ({blue3} blue) {counts_ok}; L1 bijection {l1_ok}; U vertices {u2:?} and {u3:?} {u_ok}; \
             eps family {eps_ok}; U-fan n=2 {fan2_ok}, n=3 three-spoke split {fan_ok}"
        ),
    )
}

fn criterion_11() -> Outcome {
    let p = default_params(4);
    let mut vs = cosmo_vertices(&p).expect("vertices");
    vs[0].coords[0] += rat(1, 1000);
    let perturbed = verify_cosmohedron_vertices(&p, &vs, Sampling::Exhaustive);
    let big = p.epsilon_bound().expect("bound") * int(10);
    let large = verify_cosmohedron(&p.clone().with_epsilon(big), Sampling::Exhaustive);
    let u_large = matches!(
        u_polytope_vertices(&default_loop_params(2, &int(5))),
        Err(LoopError::EpsilonTooLarge(_))
    );
    let pass = !perturbed.ok() && !large.ok() && u_large;
    outcome(
        pass,
        format!(
            "perturbed vertex rejected {}; eps = 10x bound rejected {}; oversized U chisel rejected {u_large}",
            !perturbed.ok(),
            !large.ok()
        ),
    )
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (k, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {k:>2}: {status} ({:.1}s) {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.pass && !UNATTAINABLE.contains(&k) {
            unexpected.push(k);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
