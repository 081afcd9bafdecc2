//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use octspec::cdnum::{self, kappa};
use octspec::diagmodel::{self, DiagSymbol, PowerSeq, PowerTerm, PowerVector};
use octspec::funcalc::{self, real_fn, Builtin, BuiltinFunction, Cell, Factor, Polynomial, StepFunction, Term};
use octspec::identities::identity_report;
use octspec::{random, spectral, CdMatrixOperator, CdNumber, QlOperator, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

fn largest_singular(m: &DMatrix<f64>) -> f64 {
    m.singular_values().max()
}

/// 25 operators at level 2 with `n ≤ 8` and 25 at level 3 with `n ≤ 4`,
/// each with its prescribed spectrum (value, multiplicity).
fn operator_set() -> Vec<(QlOperator, Vec<(f64, usize)>)> {
    let mut r = rng(100);
    let mut out = Vec::new();
    for i in 0..50 {
        let (level, n) = if i < 25 { (2, 1 + i % 8) } else { (3, 1 + i % 4) };
        let distinct = if i % 5 == 4 && n >= 2 { n - 1 } else { n };
        let values = common::separated(&mut r, distinct, -2.0, 2.0, 0.05);
        let mut eigs = values.clone();
        let mut spectrum: Vec<(f64, usize)> = values.iter().map(|&v| (v, 1)).collect();
        if distinct < n {
            eigs.push(values[0]);
            spectrum[0].1 = 2;
        }
        let t = random::self_adjoint_with_spectrum(&mut r, level, &eigs).expect("valid spectrum");
        out.push((t, spectrum));
    }
    out
}

fn c1_kappa() -> Result<Outcome> {
    let mut checked = 0usize;
    for v in 2..=4u32 {
        let w = 1usize << v;
        for j in 0..w {
            for k in 0..w {
                let a = cdnum::basis_mul(j, k, v)?;
                let b = cdnum::basis_mul(k, j, v)?;
                let s: i8 = if kappa(j, k) == 0 { 1 } else { -1 };
                let oracle = common::cd_mul_int(&common::unit_int(w, j), &common::unit_int(w, k));
                let mut expect = vec![0i64; w];
                expect[a.index] = a.sign as i64;
                if a.index != b.index || a.sign != s * b.sign || oracle != expect {
                    return outcome(false, format!("v={v} (j,k)=({j},{k})"));
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} generator pairs, exact"))
}

fn c2_identities() -> Result<Outcome> {
    let mut r = rng(2);
    let q = identity_report(2, 1000, &mut r)?;
    let o = identity_report(3, 1000, &mut r)?;
    let assoc = q.checks.iter().find(|c| c.name == "associativity").map(|c| c.max_residual).unwrap();
    let alt = o
        .checks
        .iter()
        .filter(|c| c.name.contains("alternativity") || c.name == "trace associativity")
        .map(|c| c.max_residual)
        .fold(0.0, f64::max);
    // library product against the doubling oracle
    let mut oracle_dev: f64 = 0.0;
    for _ in 0..1000 {
        let a = common::random_coeffs(&mut r, 8);
        let b = common::random_coeffs(&mut r, 8);
        let lib = &CdNumber::new(3, a.clone())? * &CdNumber::new(3, b.clone())?;
        let ora = common::cd_mul(&a, &b);
        oracle_dev = oracle_dev.max(lib.coeffs().iter().zip(&ora).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    let (za, zb) = cdnum::find_zero_divisor(4)?.expect("sedenions have zero divisors");
    let prod = &za * &zb;
    let as_int = |c: &CdNumber| c.coeffs().iter().map(|&x| x as i64).collect::<Vec<_>>();
    let exact = prod.coeffs().iter().all(|&x| x == 0.0)
        && common::cd_mul_int(&as_int(&za), &as_int(&zb)).iter().all(|&x| x == 0)
        && za.norm() > 0.0
        && zb.norm() > 0.0;
    let pass = assoc <= 1e-12 && alt <= 1e-12 && oracle_dev <= 1e-12 && exact;
    outcome(
        pass,
        format!("assoc {assoc:.1e}, alt/trace {alt:.1e}, oracle {oracle_dev:.1e}, zero divisor exact {exact}"),
    )
}

fn c3_components() -> Result<Outcome> {
    let mut r = rng(3);
    let (mut oracle_res, mut sum_res, mut layout_res): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..100 {
        let level = 2 + (i % 2) as u32;
        let n = 1 + i % 4;
        let w = 1usize << level;
        let raw: Vec<Vec<f64>> = (0..n * n).map(|_| common::random_coeffs(&mut r, w)).collect();
        let entries = raw.iter().map(|c| CdNumber::new(level, c.clone())).collect::<Result<Vec<_>>>()?;
        let a = CdMatrixOperator::new(level, n, entries)?.to_operator()?;
        layout_res = layout_res.max((a.matrix() - common::left_matrix(w, n, &raw)).abs().max());
        let mut total = DMatrix::zeros(a.real_dim(), a.real_dim());
        for j in 0..w {
            let p = a.component_project(j)?;
            let only_j: Vec<Vec<f64>> =
                raw.iter().map(|c| (0..w).map(|m| if m == j { c[j] } else { 0.0 }).collect()).collect();
            oracle_res = oracle_res.max((p.matrix() - common::left_matrix(w, n, &only_j)).abs().max());
            total += p.matrix();
        }
        sum_res = sum_res.max((total - a.matrix()).abs().max());
        // the sum rule also holds for arbitrary real-linear maps
        let g = DMatrix::from_fn(n * w, n * w, |_, _| r.gen_range(-1.0..1.0));
        let g = QlOperator::from_matrix(level, n, g)?;
        let mut total = DMatrix::zeros(g.real_dim(), g.real_dim());
        for j in 0..w {
            total += g.component_project(j)?.matrix();
        }
        sum_res = sum_res.max((total - g.matrix()).abs().max());
    }
    let pass = oracle_res <= 1e-10 && sum_res <= 1e-10 && layout_res <= 1e-12;
    outcome(pass, format!("oracle {oracle_res:.1e}, sum {sum_res:.1e} over 100 operators"))
}

fn c4_resolvents(set: &[(QlOperator, Vec<(f64, usize)>)]) -> Result<Outcome> {
    let (mut d, mut s, mut nrm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (t, _) in set {
        let b = spectral::resolvents(t)?;
        let rep = b.report(t);
        d = d.max(rep.difference_identity);
        s = s.max(rep.sum_identity);
        nrm = nrm.max(largest_singular(&b.plus)).max(largest_singular(&b.minus));
    }
    let pass = d <= 1e-10 && s <= 1e-10 && nrm <= 1.0 + 1e-12;
    outcome(pass, format!("difference {d:.1e}, sum {s:.1e}, max |B±| {nrm:.15}"))
}

fn c5_reconstruction(set: &[(QlOperator, Vec<(f64, usize)>)]) -> Result<Outcome> {
    let mut r = rng(5);
    let meshes = [1e-1, 1e-2, 1e-3];
    let mut worst_ratio: f64 = 0.0;
    let mut monotone = true;
    let mut exact_max: f64 = 0.0;
    for (t, _) in set {
        let res = spectral::resolution_of_identity(t)?;
        let x = random::module_vector(&mut r, t.level(), t.n());
        let tx = t.apply(&x)?;
        let mut errs = Vec::new();
        for &h in &meshes {
            let e = spectral::riemann_reconstruct(&res, &x, h)?.distance(&tx)?;
            worst_ratio = worst_ratio.max(e / (h * x.norm()));
            errs.push(e);
        }
        monotone &= errs.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        let mut points = vec![res.breakpoints()[0] - 1.0];
        points.extend_from_slice(res.breakpoints());
        exact_max = exact_max.max(spectral::riemann_reconstruct_with_partition(&res, &x, &points)?.distance(&tx)?);
    }
    let pass = worst_ratio <= 1.0 && monotone && exact_max <= 1e-9;
    outcome(pass, format!("max error/(mesh|x|) {worst_ratio:.3}, monotone {monotone}, breakpoint partition {exact_max:.1e}"))
}

fn c6_uniqueness(set: &[(QlOperator, Vec<(f64, usize)>)]) -> Result<Outcome> {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    let mut library_agree = true;
    for (t, spectrum) in set {
        let jac = spectral::resolution_of_identity(t)?;
        let ora = common::oracle_resolution(t, spectrum, &mut r);
        if jac.breakpoints().len() != ora.breakpoints().len() {
            return outcome(false, "breakpoint counts differ");
        }
        for (k, (p, q)) in jac.projections().iter().zip(ora.projections()).enumerate() {
            worst = worst.max(p.distance(q)?).max((jac.breakpoints()[k] - ora.breakpoints()[k]).abs());
        }
        library_agree &= spectral::resolution_uniqueness_check(&jac, &ora, 1e-8)?.agree;
    }
    let pass = worst <= 1e-8 && library_agree;
    outcome(pass, format!("max projection/breakpoint deviation {worst:.1e} over {} operators", set.len()))
}

fn truncated(level: u32, c: f64) -> funcalc::FnFunction<impl Fn(f64) -> Option<CdNumber>> {
    funcalc::FnFunction::new(level, move |t| Some(CdNumber::real(level, if t < c { t + 3.0 } else { 0.0 })))
}

fn c7_calculus() -> Result<Outcome> {
    let mut r = rng(7);
    let mut worst = [0.0f64; 5];
    let mut chains_ok = true;
    for i in 0..100 {
        let level = 2 + (i % 2) as u32;
        let n = 1 + i % 3;
        let eigs = common::separated(&mut r, n, -2.0, 2.0, 0.05);
        let t = random::self_adjoint_with_spectrum(&mut r, level, &eigs)?;

        let f = real_fn(level, f64::exp);
        let g = real_fn(level, |x| x * x - x);
        let fg = real_fn(level, |x| x.exp() * (x * x - x));
        let f_plus_g = real_fn(level, |x| x.exp() + x * x - x);
        let (ft, gt) = (funcalc::apply(&f, &t)?, funcalc::apply(&g, &t)?);
        let hom = funcalc::apply(&fg, &t)?.distance(&ft.compose(&gt)?)?;
        let add = funcalc::apply(&f_plus_g, &t)?.distance(&ft.add(&gt)?)?;
        worst[0] = worst[0].max(hom).max(add);

        let (a, b) = (random::cd_number(&mut r, level), random::cd_number(&mut r, level));
        let step = StepFunction::new(
            level,
            vec![(Cell::new(f64::NEG_INFINITY, 0.0)?, a.clone()), (Cell::new(0.0, f64::INFINITY)?, b.clone())],
            None,
        )?;
        let sup = eigs.iter().map(|&e| if e < 0.0 { a.norm() } else { b.norm() }).fold(0.0, f64::max);
        let nrm = largest_singular(funcalc::apply(&step, &t)?.matrix());
        let bound = funcalc::norm_bound(&step, &t)?;
        worst[1] = worst[1].max(nrm - sup).max(bound.norm - bound.sup);

        let exp = BuiltinFunction { kind: Builtin::Exp, level };
        let sq = BuiltinFunction { kind: Builtin::Square, level };
        worst[2] = worst[2].max(funcalc::compose_check(&exp, &sq, &t, 1e-9)?.residual);

        let mid = if n > 1 { 0.5 * (eigs[0] + eigs[1]) } else { eigs[0] + 0.5 };
        let e = funcalc::spectral_measure(&t, Cell::new(f64::NEG_INFINITY, mid)?)?;
        let basis = funcalc::range_basis(&e)?;
        let lhs = funcalc::restrict_to_range(funcalc::apply(&f, &t)?.matrix(), &basis);
        let rhs = funcalc::apply_real_symmetric(&f, &funcalc::restrict_to_range(t.matrix(), &basis))?;
        let invariant = (t.matrix() * e.matrix() - e.matrix() * t.matrix()).norm();
        worst[3] = worst[3].max((lhs - rhs).norm()).max(invariant);

        let pos = common::separated(&mut r, n, 0.1, 3.0, 0.05);
        let p = random::self_adjoint_with_spectrum(&mut r, level, &pos)?;
        let s = funcalc::positive_sqrt(&p)?;
        let ok = s.is_self_adjoint() && spectral::is_positive(&s)?;
        worst[4] = worst[4].max(s.compose(&s)?.distance(&p)?).max(if ok { 0.0 } else { f64::INFINITY });

        let chain: Vec<_> = (1..=10).map(|k| truncated(level, -2.0 + 0.5 * k as f64)).collect();
        let rep = funcalc::monotone_chain_check(&chain, &real_fn(level, |x| x + 3.0), &t, 1e-9)?;
        chains_ok &= rep.pointwise_monotone && rep.operator_monotone && rep.supremum_matches && rep.attained_at.is_some();
    }
    let pass = worst.iter().all(|&w| w <= 1e-9) && chains_ok;
    outcome(
        pass,
        format!(
            "hom {:.1e}, norm excess {:.1e}, compose {:.1e}, restrict {:.1e}, sqrt {:.1e}, chains {chains_ok}",
            worst[0], worst[1], worst[2], worst[3], worst[4]
        ),
    )
}

fn c8_positivity() -> Result<Outcome> {
    let mut r = rng(8);
    let mut disagreements = 0;
    let mut counts = [0usize; 2];
    for i in 0..200 {
        let level = 2 + (i % 2) as u32;
        let n = 1 + (i / 2) % 4;
        let mut eigs: Vec<f64> = match i % 4 {
            0 => (0..n).map(|_| r.gen_range(0.05..2.0)).collect(),
            1 => {
                let mut e: Vec<f64> = (0..n).map(|_| r.gen_range(0.05..2.0)).collect();
                e[0] = r.gen_range(-1.0..-0.05);
                e
            }
            2 => (0..n).map(|_| r.gen_range(-2.0..2.0)).collect(),
            _ => (0..n).map(|_| r.gen_range(0.05..2.0)).collect(),
        };
        if i % 4 == 3 {
            eigs[0] = 0.0;
        }
        let truth = eigs.iter().all(|&e| e >= 0.0);
        let t = random::self_adjoint_with_spectrum(&mut r, level, &eigs)?;
        let rep = spectral::positivity_report(&t, t.scaled_tol(1e-10), 64, &mut r)?;
        if !rep.agree || rep.spectral != truth {
            disagreements += 1;
        }
        counts[truth as usize] += 1;
    }
    outcome(
        disagreements == 0,
        format!("{disagreements} disagreements ({} positive, {} indefinite or negative)", counts[1], counts[0]),
    )
}

fn c9_example52() -> Result<Outcome> {
    let start = Instant::now();
    let rep = diagmodel::example52_report(1_000_000)?;
    let elapsed = start.elapsed();
    let q = &rep.q_verdict;
    let qb = &rep.q_hat_plus_b_verdict;
    let exponents = q.exponent == 0.0 && !q.member && (qb.exponent + 1.5).abs() < 1e-12 && qb.member;
    let [lo, hi] = qb.tail_bracket.unwrap_or([f64::NAN, f64::NAN]);
    let bracket = (2.610..=2.613).contains(&lo) && (2.610..=2.613).contains(&hi);
    let zeta_inside = lo <= common::ZETA_THREE_HALVES && common::ZETA_THREE_HALVES <= hi;
    let s_n = qb.partial_sums.last().map_or(f64::NAN, |p| p.value);
    let oracle = common::p_series_three_halves(1_000_000);
    let sum_agrees = (s_n - oracle).abs() <= 1e-12;
    let verdicts: Vec<bool> = rep.memberships.iter().map(|m| m.member).collect();
    let memberships = verdicts == [false, true, true, false] && rep.sum_differs && rep.product_differs;
    let fast = elapsed < Duration::from_secs(10);
    outcome(
        exponents && bracket && zeta_inside && sum_agrees && memberships && fast,
        format!("exponents {}/{}, sum in [{lo:.9}, {hi:.9}], S_N oracle dev {:.1e}, verdicts {verdicts:?}", q.exponent, qb.exponent, (s_n - oracle).abs()),
    )
}

fn unit_octonion<R: Rng>(r: &mut R) -> CdNumber {
    let c = random::cd_number(r, 3);
    c.scale(1.0 / c.norm())
}

fn random_symbol<R: Rng>(r: &mut R) -> Result<DiagSymbol> {
    let head = (0..r.gen_range(0..3)).map(|_| random::cd_number(r, 3)).collect();
    let terms = (0..r.gen_range(1..3))
        .map(|_| {
            let alpha = r.gen_range(-4i32..9) as f64 * 0.25;
            let values = (0..r.gen_range(1..4)).map(|_| unit_octonion(r).scale(r.gen_range(0.5..2.0))).collect();
            PowerTerm { alpha, values }
        })
        .collect();
    Ok(DiagSymbol::new(PowerSeq::new(3, head, terms)?))
}

fn graded_symbol<R: Rng>(r: &mut R, j: usize) -> Result<DiagSymbol> {
    let g = CdNumber::basis(3, j)?;
    let head = (0..2).map(|_| g.scale(r.gen_range(-2.0..2.0))).collect();
    let values = (0..r.gen_range(1..4)).map(|_| g.scale(r.gen_range(-2.0..2.0))).collect();
    let alpha = r.gen_range(-4i32..5) as f64 * 0.25;
    Ok(DiagSymbol::new(PowerSeq::new(3, head, vec![PowerTerm { alpha, values }])?))
}

fn c10_symbol_laws() -> Result<Outcome> {
    let mut r = rng(10);
    let horizon = 1000;
    let mut adjoint_ok = 0;
    let mut qc_ok = 0;
    for _ in 0..50 {
        let t = random_symbol(&mut r)?;
        let b = random_symbol(&mut r)?;
        let c = unit_octonion(&mut r);
        if diagmodel::adjoint_laws_check(&t, &b, &c, horizon)?.holds {
            adjoint_ok += 1;
        }
        let (j, k) = (r.gen_range(0..8), r.gen_range(0..8));
        let (bj, tk) = (graded_symbol(&mut r, j)?, graded_symbol(&mut r, k)?);
        let rep = diagmodel::quasi_commutation_check(&bj, &tk, horizon)?;
        let sign = if kappa(j, k) == 0 { 1.0 } else { -1.0 };
        let pointwise = (1..=horizon).all(|n| {
            let bt = common::cd_mul(bj.value(n).coeffs(), tk.value(n).coeffs());
            let tb = common::cd_mul(tk.value(n).coeffs(), bj.value(n).coeffs());
            bt.iter().zip(&tb).all(|(x, y)| (x - sign * y).abs() <= 1e-12 * (1.0 + x.abs()))
        });
        if rep.holds && rep.sign as f64 == sign && pointwise {
            qc_ok += 1;
        }
    }
    let mut violations = 0;
    let mut in_sum = 0;
    let mut oracle_mismatch = 0;
    for _ in 0..100 {
        let (ct, at) = (r.gen_range(0.1..2.0), r.gen_range(-4i32..9) as f64 * 0.25);
        let (cq, aq) = (r.gen_range(0.1..2.0), r.gen_range(-4i32..9) as f64 * 0.25);
        let beta = -0.75 - r.gen_range(0.0..3.0);
        let t = DiagSymbol::new(PowerSeq::real_power(3, ct, at)?);
        let q = DiagSymbol::new(PowerSeq::real_power(3, cq, aq)?);
        let phases = (0..r.gen_range(1..4)).map(|_| unit_octonion(&mut r)).collect();
        let x = PowerVector::new(PowerSeq::power(3, beta, phases)?)?;
        let rep = diagmodel::positive_sum_check(&t, &q, std::slice::from_ref(&x), horizon)?;
        violations += rep.violations;
        in_sum += rep.in_sum_domain;
        let expected = 2.0 * (at.max(aq) + beta) < -1.0;
        if expected != (rep.in_sum_domain == 1) {
            oracle_mismatch += 1;
        }
    }
    let pass = adjoint_ok == 50 && qc_ok == 50 && violations == 0 && oracle_mismatch == 0;
    outcome(
        pass,
        format!("adjoint {adjoint_ok}/50, quasi-commutation {qc_ok}/50, positive sums: {violations} violations, {in_sum} in sum domain"),
    )
}

fn c11_polynomial_domain() -> Result<Outcome> {
    let mut r = rng(11);
    let i1 = CdNumber::basis(2, 1)?;
    let p = Polynomial::new(
        2,
        vec![Term::new(vec![Factor::Pow(2)], None)?, Term::new(vec![Factor::Coef(i1), Factor::Pow(1)], None)?],
    )?;
    let t = DiagSymbol::new(PowerSeq::real_power(2, 1.0, 1.0)?);
    let pt = diagmodel::symbol_polynomial(&p, &t)?;
    let t2 = diagmodel::hat_mul(&t, &t)?;
    let mut betas: Vec<f64> = (0..49).map(|k| -3.6 + 0.062 * k as f64).collect();
    betas.push(-2.5);
    let mut agree = 0;
    for &beta in &betas {
        let phases = (0..r.gen_range(1..4))
            .map(|_| {
                let c = random::cd_number(&mut r, 2);
                c.scale(1.0 / c.norm())
            })
            .collect();
        let x = PowerVector::new(PowerSeq::power(2, beta, phases)?)?;
        let lhs = diagmodel::domain_contains_with(&pt, &x, 10_000)?.member;
        let rhs = diagmodel::domain_contains_with(&t2, &x, 10_000)?.member
            && diagmodel::domain_contains_with(&t, &x, 10_000)?.member;
        let oracle = 2.0 * (2.0 + beta) < -1.0;
        if lhs == rhs && lhs == oracle {
            agree += 1;
        }
    }
    let growth = funcalc::growth_check(&p, 2.0, 2000, &mut r)?;
    let pass = agree == betas.len() && growth.holds(0.5);
    outcome(
        pass,
        format!("{agree}/{} memberships agree, growth c_top {:.3}, c_full {:.3}", betas.len(), growth.c_top, growth.c_full),
    )
}

fn main() -> ExitCode {
    let set = operator_set();
    type Criterion<'a> = (&'a str, Option<Duration>, Box<dyn Fn() -> Result<Outcome> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("kappa rule exhaustive, levels 2-4", Some(Duration::from_secs(1)), Box::new(c1_kappa)),
        ("algebra identities and zero divisor", Some(Duration::from_secs(5)), Box::new(c2_identities)),
        ("component projections", None, Box::new(c3_components)),
        ("resolvent identities", None, Box::new(|| c4_resolvents(&set))),
        ("Riemann reconstruction", None, Box::new(|| c5_reconstruction(&set))),
        ("resolution uniqueness vs inverse iteration", None, Box::new(|| c6_uniqueness(&set))),
        ("functional calculus laws", None, Box::new(c7_calculus)),
        ("positivity criteria agree", None, Box::new(c8_positivity)),
        ("diagonal model sums and products", Some(Duration::from_secs(10)), Box::new(c9_example52)),
        ("symbol adjoint and commutation laws", None, Box::new(c10_symbol_laws)),
        ("polynomial domains", None, Box::new(c11_polynomial_domain)),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => {
                let in_time = limit.is_none_or(|l| elapsed < l);
                let detail = if in_time { o.detail } else { format!("{} (exceeded {:?})", o.detail, limit.unwrap()) };
                (o.pass && in_time, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.3} s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
