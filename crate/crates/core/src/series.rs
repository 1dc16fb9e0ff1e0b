//! Face-count generating functions: f-, g- and h-polynomials, compositional
//! inverses, the maximal-Matryoshka sequence and its differential equation,
//! and Schröder numbers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactgeom::Rat;
use crate::matryoshka::{enumerate, f_vector_by_enumeration, Matryoshka};
use crate::polygon::{enumerate_subdivisions, ChordSet, SubPolygon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("polynomial has constant term {0}, expected 1")]
    NonDivisible(BigInt),
}

/// Polynomial in `t` with big-integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FPoly(Vec<BigInt>);

impl FPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        FPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        FPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        FPoly::new(vec![c])
    }

    pub fn one() -> Self {
        FPoly::constant(BigInt::one())
    }

    /// The monomial `t^k`.
    pub fn t_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        FPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &FPoly) -> FPoly {
        let len = self.0.len().max(o.0.len());
        FPoly::new((0..len).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &FPoly) -> FPoly {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, s: &BigInt) -> FPoly {
        FPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &FPoly) -> FPoly {
        if self.is_zero() || o.is_zero() {
            return FPoly::default();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        FPoly::new(c)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> FPoly {
        if self.is_zero() {
            return FPoly::default();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        FPoly(c)
    }

    pub fn eval_one(&self) -> BigInt {
        self.0.iter().sum()
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 if c.is_one() => "t".to_string(),
                1 => format!("{c}t"),
                _ if c.is_one() => format!("t^{k}"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for FPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Truncated power series in `x` with polynomial coefficients: entry `k` is
/// the coefficient of `x^k`, kept for `k ≤ order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSeries {
    pub coeffs: Vec<FPoly>,
}

impl TSeries {
    pub fn zero(order: usize) -> Self {
        TSeries {
            coeffs: vec![FPoly::default(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = TSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = FPoly::one();
        }
        s
    }

    /// `x + Σ_{n≥1} sign·p_n x^{n+1}` from `p_1, p_2, …`.
    pub fn shifted(order: usize, sign: i64, polys: &[FPoly]) -> Self {
        let mut s = TSeries::x(order);
        let sg = BigInt::from(sign);
        for (k, p) in polys.iter().enumerate() {
            if k + 2 <= order {
                s.coeffs[k + 2] = p.scale(&sg);
            }
        }
        s
    }

    pub fn add(&self, o: &TSeries) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &TSeries) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, o: &TSeries) -> TSeries {
        let n = self.order();
        let mut out = TSeries::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        out
    }

    /// `self(g(x))` for `g` without constant term.
    pub fn compose(&self, g: &TSeries) -> TSeries {
        assert!(g.coeffs[0].is_zero(), "inner series must vanish at 0");
        let n = self.order();
        let mut out = TSeries::zero(n);
        let mut power = TSeries::zero(n);
        power.coeffs[0] = FPoly::one();
        for k in 0..=n {
            if !self.coeffs[k].is_zero() {
                for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                    *o = o.add(&p.mul(&self.coeffs[k]));
                }
            }
            power = power.mul(g);
        }
        out
    }

    pub fn derivative(&self) -> TSeries {
        let n = self.order();
        let mut out = TSeries::zero(n);
        for k in 1..=n {
            out.coeffs[k - 1] = self.coeffs[k].scale(&BigInt::from(k));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FPoly::is_zero)
    }
}

fn product(ps: &[&FPoly]) -> FPoly {
    ps.iter().fold(FPoly::one(), |acc, p| acc.mul(p))
}

/// f-polynomials `f_1, …, f_N` by the subdivision recurrence
/// `f_n = 1 + t Σ_{S non-trivial} Π_{P∈S} f_{|P|−2}`.
pub fn f_polynomials_recurrence(big_n: usize) -> Vec<FPoly> {
    let mut f: Vec<FPoly> = vec![FPoly::default()];
    for n in 1..=big_n {
        let subs = enumerate_subdivisions(n, false);
        let sum = subs
            .par_iter()
            .map(|s| product(&s.cells().iter().map(|c| &f[c.size() - 2]).collect::<Vec<_>>()))
            .reduce(FPoly::default, |a, b| a.add(&b));
        f.push(FPoly::one().add(&sum.shift(1)));
    }
    f.remove(0);
    f
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// Partitions of `n` into parts smaller than `n`, as multiplicity vectors
/// `a[k]` = number of parts equal to `k`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            cur[k] += 1;
            go(rest - k, k, cur, out);
            cur[k] -= 1;
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(n, n - 1, &mut vec![0; n + 1], &mut out);
    }
    out
}

/// Number of subdivisions of the `(n+2)`-gon with `a[k]` cells that are
/// `(k+2)`-gons: `(n + Σa)! / ((n+1)! Π a_k!)`.
pub fn subdivision_type_count(n: usize, a: &[usize]) -> BigInt {
    let parts: usize = a.iter().sum();
    let den = a.iter().fold(factorial(n + 1), |d, &k| d * factorial(k));
    factorial(n + parts) / den
}

/// Subdivision-type counts read off the enumerated subdivisions.
pub fn subdivision_type_counts_by_enumeration(n: usize) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for s in enumerate_subdivisions(n, false) {
        let mut a = vec![0; n + 1];
        for c in s.cells() {
            a[c.size() - 2] += 1;
        }
        *out.entry(a).or_insert(0) += 1;
    }
    out
}

/// f-polynomials by the partition formula.
pub fn f_polynomials_partition(big_n: usize) -> Vec<FPoly> {
    let mut f: Vec<FPoly> = vec![FPoly::default(), FPoly::one()];
    for n in 2..=big_n {
        let mut sum = FPoly::default();
        for a in partitions(n) {
            let mult = subdivision_type_count(n, &a);
            let prod = a
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .fold(FPoly::one(), |acc, (k, &m)| (0..m).fold(acc, |x, _| x.mul(&f[k])));
            sum = sum.add(&prod.scale(&mult));
        }
        f.push(FPoly::one().add(&sum.shift(1)));
    }
    f.truncate(big_n + 1);
    f.remove(0);
    f
}

/// f-polynomials from direct Matryoshka enumeration.
pub fn f_polynomials_enumeration(big_n: usize) -> Vec<FPoly> {
    (1..=big_n)
        .map(|n| FPoly::new(f_vector_by_enumeration(n).into_iter().map(BigInt::from).collect()))
        .collect()
}

/// `g = ((1+t) f − 1) / t`.
pub fn g_transform(f: &FPoly) -> Result<FPoly, SeriesError> {
    if f.coeff(0) != BigInt::one() {
        return Err(SeriesError::NonDivisible(f.coeff(0)));
    }
    let num = f.add(&f.shift(1)).sub(&FPoly::one());
    Ok(FPoly::new(num.coeffs().iter().skip(1).cloned().collect()))
}

/// `F(G(x)) − x` truncated at `order`.
pub fn inverse_pair_residual(f: &TSeries, g: &TSeries) -> TSeries {
    f.compose(g).sub(&TSeries::x(f.order()))
}

/// Residual of `x − Σ f_n x^{n+1}` composed with `x + Σ g_n x^{n+1}`.
pub fn cosmohedron_inverse_residual(fs: &[FPoly], order: usize) -> TSeries {
    let gs: Vec<FPoly> = fs.iter().map(|f| g_transform(f).expect("f(0) = 1")).collect();
    inverse_pair_residual(&TSeries::shifted(order, -1, fs), &TSeries::shifted(order, 1, &gs))
}

/// Residual of `x + Σ h_n x^{n+1}` composed with `x − Σ t g_n x^{n+1}`.
pub fn correlatron_inverse_residual(hs: &[FPoly], fs: &[FPoly], order: usize) -> TSeries {
    let tg: Vec<FPoly> = fs.iter().map(|f| g_transform(f).expect("f(0) = 1").shift(1)).collect();
    inverse_pair_residual(&TSeries::shifted(order, 1, hs), &TSeries::shifted(order, -1, &tg))
}

/// `m_1, …, m_N` from `m_n = Σ_{k=1}^{n-1} (k+1) m_k m_{n−k}`.
pub fn max_matryoshka_counts(big_n: usize) -> Vec<BigInt> {
    let mut m: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for n in 2..=big_n {
        let v = (1..n).map(|k| BigInt::from(k + 1) * &m[k] * &m[n - k]).sum();
        m.push(v);
    }
    m.truncate(big_n + 1);
    m.remove(0);
    m
}

/// Residual of `M − x² − M·M′` for `M = Σ_{n≥2} m_{n−1} x^n`, truncated at `order`.
pub fn d_algebraic_residual(order: usize) -> TSeries {
    let m = max_matryoshka_counts(order.max(2));
    let mut s = TSeries::zero(order);
    for k in 2..=order {
        s.coeffs[k] = FPoly::constant(m[k - 2].clone());
    }
    let mut x2 = TSeries::zero(order);
    if order >= 2 {
        x2.coeffs[2] = FPoly::one();
    }
    s.sub(&x2).sub(&s.mul(&s.derivative()))
}

/// Bounded-correlatron polynomials `h_1, …, h_N` from
/// `h_n = Σ_S t^{#cells(S)} Π_{P∈S} g_{|P|−2}` over all subdivisions.
pub fn correlatron_h_formula(big_n: usize) -> Vec<FPoly> {
    let fs = f_polynomials_recurrence(big_n);
    let gs: Vec<FPoly> = fs.iter().map(|f| g_transform(f).expect("f(0) = 1")).collect();
    (1..=big_n)
        .map(|n| {
            enumerate_subdivisions(n, true)
                .par_iter()
                .map(|s| {
                    let cells = s.cells();
                    product(&cells.iter().map(|c| &gs[c.size() - 3]).collect::<Vec<_>>()).shift(cells.len())
                })
                .reduce(FPoly::default, |a, b| a.add(&b))
        })
        .collect()
}

fn relabel_into(p: &SubPolygon, local: &SubPolygon) -> SubPolygon {
    let vs = p.vertices();
    SubPolygon(local.vertices().iter().fold(0, |acc, &k| acc | 1 << vs[k]))
}

/// Bounded-correlatron polynomials by enumerating compatible pairs.
///
/// A face is a chord set `C` together with, on each piece `P` of `C`, a
/// Matryoshka `M_P`; when `M_P` is non-trivial the piece itself may be kept or
/// dropped. Its codimension is `|C| + 1 + Σ_P (nonmin(M_P) + kept(P) − 1)`.
/// Faces are materialized as (chords, polygon family) and checked distinct.
pub fn correlatron_h_direct(big_n: usize) -> Vec<FPoly> {
    (1..=big_n)
        .map(|n| {
            let mut local: BTreeMap<usize, Vec<Matryoshka>> = BTreeMap::new();
            for k in 1..=n {
                local.insert(k, enumerate(k, false));
            }
            let faces: Vec<(ChordSet, BTreeSet<SubPolygon>, usize)> = enumerate_subdivisions(n, true)
                .into_iter()
                .flat_map(|s| {
                    let cells = s.cells();
                    let mut partial: Vec<(BTreeSet<SubPolygon>, usize)> = vec![(BTreeSet::new(), s.len() + 1)];
                    for p in &cells {
                        let mut next = Vec::new();
                        for (fam, codim) in &partial {
                            for m in &local[&(p.size() - 2)] {
                                let polys: Vec<SubPolygon> = m.polygons().iter().map(|q| relabel_into(p, q)).collect();
                                let nonmin = m.non_minimal().len();
                                let options: &[bool] = if m.polygons().len() == 1 {
                                    &[true]
                                } else {
                                    &[true, false]
                                };
                                for &keep in options {
                                    let mut f = fam.clone();
                                    f.extend(polys.iter().copied().filter(|q| keep || q != p));
                                    next.push((f, codim + nonmin + keep as usize - 1));
                                }
                            }
                        }
                        partial = next;
                    }
                    partial.into_iter().map(move |(f, c)| (s.clone(), f, c))
                })
                .collect();
            let distinct: BTreeSet<(&ChordSet, &BTreeSet<SubPolygon>)> = faces.iter().map(|(s, f, _)| (s, f)).collect();
            assert_eq!(distinct.len(), faces.len(), "correlatron faces are distinct");
            let top = faces.iter().map(|f| f.2).max().unwrap_or(0);
            let mut c = vec![BigInt::zero(); top + 1];
            for (_, _, k) in &faces {
                c[*k] += 1;
            }
            FPoly::new(c)
        })
        .collect()
}

/// Exact power-series square root of a series with constant term 1, over the rationals.
pub fn sqrt_series(a: &[Rat]) -> Vec<Rat> {
    assert!(a[0] == Rat::one(), "constant term must be 1");
    let n = a.len();
    let mut s = vec![Rat::zero(); n];
    s[0] = Rat::one();
    for k in 1..n {
        let cross: Rat = (1..k).map(|i| &s[i] * &s[k - i]).sum();
        s[k] = (&a[k] - cross) / Rat::from_integer(2.into());
    }
    s
}

/// Coefficients of `(1 + x − √(1 − 6x + x²)) / 4` up to `x^order`.
pub fn schroeder_series(order: usize) -> Vec<BigInt> {
    let mut a = vec![Rat::zero(); order + 1];
    a[0] = Rat::one();
    if order >= 1 {
        a[1] = Rat::from_integer((-6).into());
    }
    if order >= 2 {
        a[2] = Rat::one();
    }
    let s = sqrt_series(&a);
    (0..=order)
        .map(|k| {
            let lin = match k {
                0 | 1 => Rat::one(),
                _ => Rat::zero(),
            };
            let v = (lin - &s[k]) / Rat::from_integer(4.into());
            assert!(v.is_integer(), "Schröder coefficients are integers");
            v.to_integer()
        })
        .collect()
}

/// Diagnostic estimate of `c` in `m_n ~ c·n!·n⁴`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticProbe {
    pub n: usize,
    pub ratio: f64,
    pub richardson: Vec<f64>,
    pub ratio_increasing_from: Option<usize>,
    pub facet_ratio: f64,
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    let g = num.gcd(den);
    let (a, b) = (num / &g, den / &g);
    let shift = (a.bits().max(b.bits()) as i64 - 60).max(0) as u32;
    let a = (a >> shift).to_f64().unwrap_or(f64::NAN);
    let b = (b >> shift).to_f64().unwrap_or(f64::NAN);
    a / b
}

/// Ratios `m_n / (n!·n⁴)` up to `N` with Richardson extrapolation of orders
/// 1 to 4, plus the Schröder facet ratio `r_n / ((3+√8)^n n^{−3/2})`.
pub fn asymptotic_probe(big_n: usize) -> AsymptoticProbe {
    let m = max_matryoshka_counts(big_n);
    let ratio = |n: usize| ratio_f64(&m[n - 1], &(factorial(n) * BigInt::from(n).pow(4)));
    let ratios: Vec<f64> = (1..=big_n).map(ratio).collect();
    let richardson = (1..=4)
        .map(|k| {
            let n0 = big_n - k;
            (0..=k)
                .map(|j| {
                    let nj = (n0 + j) as f64;
                    let sign = if (k + j) % 2 == 0 { 1.0 } else { -1.0 };
                    let binom = factorial(k) / (factorial(j) * factorial(k - j));
                    sign * binom.to_f64().unwrap_or(f64::NAN) * nj.powi(k as i32) * ratios[n0 + j - 1]
                })
                .sum::<f64>()
                / factorial(k).to_f64().unwrap_or(f64::NAN)
        })
        .collect();
    let increasing_from = (1..ratios.len())
        .rev()
        .take_while(|&i| ratios[i] > ratios[i - 1])
        .last();
    let fs = 60.min(big_n);
    let sch = schroeder_series(fs + 1);
    let r = &sch[fs + 1] - BigInt::one();
    let growth = (3.0 + 8f64.sqrt()).powi(fs as i32) * (fs as f64).powf(-1.5);
    AsymptoticProbe {
        n: big_n,
        ratio: ratios[big_n - 1],
        richardson,
        ratio_increasing_from: increasing_from,
        facet_ratio: r.to_f64().unwrap_or(f64::NAN) / growth,
    }
}

/// Rows of the cosmohedron face table: row `d` lists the coefficients of `f_{d+1}`.
pub fn table_cosmohedron(big_n: usize) -> Vec<Vec<BigInt>> {
    f_polynomials_recurrence(big_n + 1)
        .into_iter()
        .map(|f| f.coeffs().to_vec())
        .collect()
}

/// Rows of the bounded-correlatron face table: row `d` lists the coefficients
/// of `h_d`, with row 0 equal to `0`.
pub fn table_correlatron(big_n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::zero()]];
    rows.extend(correlatron_h_formula(big_n).into_iter().map(|h| h.coeffs().to_vec()));
    rows
}

/// CSV with one comma-separated line per row.
pub fn to_csv(rows: &[Vec<BigInt>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
        .map(|l| l + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> FPoly {
        FPoly::from_i64(c)
    }

    #[test]
    fn small_f_polynomials() {
        let f = f_polynomials_recurrence(4);
        assert_eq!(f[1], p(&[1, 2]));
        assert_eq!(f[3], p(&[1, 44, 114, 72]));
        assert_eq!(f, f_polynomials_partition(4));
        assert_eq!(f, f_polynomials_enumeration(4));
    }

    #[test]
    fn g_values() {
        let f = f_polynomials_recurrence(4);
        assert_eq!(g_transform(&f[0]).unwrap(), p(&[1]));
        assert_eq!(g_transform(&f[2]).unwrap(), p(&[11, 20, 10]));
        assert_eq!(g_transform(&f[3]).unwrap(), p(&[45, 158, 186, 72]));
        assert!(g_transform(&p(&[2, 1])).is_err());
    }

    #[test]
    fn partition_multiplicities_match_enumeration() {
        for n in 2..=7 {
            for (a, count) in subdivision_type_counts_by_enumeration(n) {
                assert_eq!(subdivision_type_count(n, &a), BigInt::from(count));
            }
        }
    }

    #[test]
    fn identity_composition() {
        let x = TSeries::x(6);
        assert!(inverse_pair_residual(&x, &x).is_zero());
    }

    #[test]
    fn inverse_pairs() {
        let f = f_polynomials_recurrence(8);
        assert!(cosmohedron_inverse_residual(&f, 8).is_zero());
        let h = correlatron_h_formula(7);
        assert!(correlatron_inverse_residual(&h, &f, 8).is_zero());
    }

    #[test]
    fn m_sequence() {
        let m = max_matryoshka_counts(7);
        let want: Vec<BigInt> = [1, 2, 10, 72, 644, 6704, 78408]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(m, want);
        assert!(d_algebraic_residual(20).is_zero());
    }

    #[test]
    fn correlatron_small() {
        let h = correlatron_h_formula(3);
        assert_eq!(h[0], p(&[0, 1]));
        assert_eq!(h[1], p(&[0, 3, 4]));
        assert_eq!(h[2], p(&[0, 11, 35, 25]));
        assert_eq!(correlatron_h_direct(4), correlatron_h_formula(4));
    }

    #[test]
    fn schroeder() {
        let s = schroeder_series(10);
        let head: Vec<BigInt> = [0, 1, 1, 3, 11, 45, 197].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(&s[..7], &head[..]);
        for n in 1..=7 {
            assert_eq!(BigInt::from(enumerate_subdivisions(n, false).len()), &s[n + 1] - 1);
        }
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 44, 114, 72]).to_string(), "1 + 44t + 114t^2 + 72t^3");
        assert_eq!(p(&[0, 1]).to_string(), "t");
    }

    #[test]
    fn probe_runs() {
        let pr = asymptotic_probe(60);
        assert!(pr.ratio.is_finite() && pr.ratio > 0.0);
        assert!(pr.facet_ratio > 0.0);
    }
}
