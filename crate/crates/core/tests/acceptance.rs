//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p qplane-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use qplane_core::catalog::{
    are_isomorphic, build, certificate_holds, classify_label, enumerate_classification, invariant_phi,
    FamilyTag, SeriesFamily, SeriesLabel,
};
use qplane_core::classical::{check_sl2, classical_limit, CPoly, ClassicalAction};
use qplane_core::hopf::{check_module_algebra, conjugate, Action, DiagonalAutomorphism, Evaluator, Generator};
use qplane_core::qplane::{Monomial, QPlanePoly};
use qplane_core::repr::{composition_report, SummandKind};
use qplane_core::scalars::QScalar;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn q(k: i64) -> QScalar {
    QScalar::q_pow(k)
}

fn int(n: i64) -> QScalar {
    QScalar::from_int(n)
}

fn parse(s: &str) -> QScalar {
    s.parse().expect("scalar literal")
}

/// `{1, q, q², 2, (3 - q²)/(1 + 2q)}`.
fn samples() -> Vec<QScalar> {
    vec![int(1), q(1), q(2), int(2), parse("(3 - q^2)/(1 + 2*q)")]
}

fn axiom_instances() -> Vec<SeriesFamily> {
    let s = samples();
    let mut out = Vec::new();
    for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        out.push(SeriesFamily::trivial(sx, sy).unwrap());
    }
    for v in &s {
        out.push(SeriesFamily::standard(v.clone()).unwrap());
        out.push(SeriesFamily::eb0(v.clone()).unwrap());
        out.push(SeriesFamily::fc0(v.clone()).unwrap());
    }
    for (i, lead) in s.iter().enumerate() {
        let sv = s[(i + 1) % s.len()].clone();
        let tv = s[(i + 2) % s.len()].clone();
        for (ss, tt) in [(int(0), int(0)), (sv.clone(), int(0)), (int(0), tv.clone()), (sv.clone(), tv.clone())] {
            out.push(SeriesFamily::ea0(lead.clone(), ss.clone(), tt.clone()).unwrap());
            out.push(SeriesFamily::fd0(lead.clone(), ss, tt).unwrap());
        }
    }
    out
}

/// 1. Every family instance satisfies all module-algebra axioms up to degree 10.
fn criterion_axioms() -> Outcome {
    let instances = axiom_instances();
    let failures: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = instances
            .iter()
            .map(|f| scope.spawn(move || (f, check_module_algebra(&build(f), 10))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("axiom worker"))
            .filter(|(_, r)| !r.passed)
            .map(|(f, r)| format!("{f}: {}", r.lowest_failure().map(|x| x.to_string()).unwrap_or_default()))
            .collect()
    });
    if failures.is_empty() {
        Ok(format!("{} instances, all axioms hold up to degree 10", instances.len()))
    } else {
        Err(failures.join("; "))
    }
}

/// 2. 6 nonempty and 24 empty labels; forced weights equal the built weights.
fn criterion_classification() -> Outcome {
    let summary = enumerate_classification();
    if (summary.total, summary.nonempty, summary.empty) != (30, 6, 24) {
        return Err(format!("counts {} / {} / {}", summary.total, summary.nonempty, summary.empty));
    }
    for tag in FamilyTag::ALL {
        let action = build(&SeriesFamily::default_for(tag));
        let label = SeriesLabel::of(&action);
        let outcome = classify_label(&label);
        if outcome.family() != Some(tag) {
            return Err(format!("{tag} has label {label} classified as {:?}", outcome.kind));
        }
        let listed = summary.nonempty_series.iter().find(|s| s.label == label).ok_or(format!("{label} not listed"))?;
        match (&outcome.forced_weights, tag) {
            (None, FamilyTag::Trivial) => {}
            (Some(w), _) if *w == action.weights => {
                if listed.alpha.as_ref() != Some(w.alpha()) || listed.beta.as_ref() != Some(w.beta()) {
                    return Err(format!("{tag}: summary weights disagree"));
                }
            }
            _ => return Err(format!("{tag}: forced weights {:?} vs built {}", outcome.forced_weights, action.weights)),
        }
    }
    Ok("30 admissible labels: 6 nonempty, 24 empty; forced weights match all built families".into())
}

/// 3. The Leibniz engine reproduces the closed forms for EB0 with b₀ = 1.
fn criterion_closed_forms() -> Outcome {
    let action = build(&SeriesFamily::eb0(int(1)).unwrap());
    let ev = Evaluator::new(&action);
    let denom = (&q(1) - &q(-1)).inv().unwrap();
    let mut checked = 0;
    for n in 0..=10u32 {
        for p in 0..=10u32 {
            let (ni, pi) = (i64::from(n), i64::from(p));
            let mono = Monomial::new(n, p);
            // e(x^n y^p) = q^{1-p} (q^p - q^{-p})/(q - q^{-1}) x^n y^{p-1}
            let e_expected = if p == 0 {
                QPlanePoly::zero()
            } else {
                let c = &(&q(1 - pi) * &(&q(pi) - &q(-pi))) * &denom;
                QPlanePoly::monomial(c, Monomial::new(n, p - 1))
            };
            // f(x^n y^p) = q^{-n} (q^{2n} - q^{2p})/(q - q^{-1}) x^n y^{p+1}
            let c = &(&q(-ni) * &(&q(2 * ni) - &q(2 * pi))) * &denom;
            let f_expected = QPlanePoly::monomial(c, Monomial::new(n, p + 1));
            let e_got = ev.on_monomial(Generator::E, mono);
            let f_got = ev.on_monomial(Generator::F, mono);
            if e_got != e_expected {
                return Err(format!("e({mono}) = {e_got}, closed form {e_expected}"));
            }
            if f_got != f_expected {
                return Err(format!("f({mono}) = {f_got}, closed form {f_expected}"));
            }
            checked += 2;
        }
    }
    Ok(format!("{checked} entries agree exactly for 0 <= n, p <= 10"))
}

/// 4. Composition series at cutoff 12 with a 10-dimensional Verma window.
fn criterion_composition() -> Outcome {
    let families = [
        SeriesFamily::standard(int(1)).unwrap(),
        SeriesFamily::eb0(int(1)).unwrap(),
        SeriesFamily::fc0(int(1)).unwrap(),
        SeriesFamily::ea0(int(1), int(0), int(0)).unwrap(),
        SeriesFamily::ea0(int(1), int(1), int(1)).unwrap(),
        SeriesFamily::fd0(int(1), int(0), int(0)).unwrap(),
        SeriesFamily::fd0(int(1), int(1), int(1)).unwrap(),
    ];
    let reports: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = families.iter().map(|f| scope.spawn(move || composition_report(f, 12, 10))).collect();
        handles.into_iter().map(|h| h.join().expect("composition worker")).collect()
    });
    let mut notes = Vec::new();
    for r in &reports {
        if !r.passed {
            let bad: Vec<String> = r.failures().map(|c| format!("{}: {}", c.kind, c.statement)).collect();
            return Err(format!("{}: {}", r.family, bad.join("; ")));
        }
        let tag = r.family.tag();
        match tag {
            FamilyTag::Standard => {
                let ok = r.summands.len() == 13
                    && r.summands.iter().enumerate().all(|(n, s)| s.kind == SummandKind::Simple && s.dim == Some(n + 1));
                if !ok {
                    return Err("Standard summands are not simple of dimension n+1".into());
                }
            }
            FamilyTag::EB0 | FamilyTag::FC0 => {
                let sign = if tag == FamilyTag::EB0 { -1 } else { 1 };
                for (n, s) in r.summands.iter().enumerate() {
                    let n = n as i64;
                    let ok = s.kind == SummandKind::Series
                        && s.submodule_dim == Some(n as usize + 1)
                        && s.quotient_weight == Some(q(sign * (n + 2)));
                    if !ok {
                        return Err(format!("{tag}: summand {n} is {s:?}"));
                    }
                }
                if r.summands.len() != 13 {
                    return Err(format!("{tag}: {} summands", r.summands.len()));
                }
            }
            FamilyTag::EA0 | FamilyTag::FD0 => {
                let sign = if tag == FamilyTag::EA0 { -1 } else { 1 };
                let vermas: Vec<_> = r.summands.iter().filter(|s| s.kind == SummandKind::Verma).collect();
                let ok = vermas.len() == 6
                    && vermas.iter().enumerate().all(|(i, s)| s.weight == q(sign * (i as i64 + 1)))
                    && r.summands.iter().any(|s| {
                        s.kind == SummandKind::Series && s.submodule_dim == Some(1) && s.quotient_weight == Some(q(2 * sign))
                    });
                if !ok {
                    return Err(format!("{}: unexpected summands", r.family));
                }
            }
            FamilyTag::Trivial => {}
        }
        notes.push(format!("{} ({} certificates)", r.family, r.certificates.len()));
    }
    Ok(format!("all certificates hold: {}", notes.join(", ")))
}

fn cpoly(terms: &[(i64, u32, u32)]) -> CPoly {
    CPoly::from_terms(terms.iter().map(|&(c, m, n)| (Monomial::new(m, n), BigRational::from_integer(c.into()))))
}

fn golden(h: (i64, i64), e: [&[(i64, u32, u32)]; 2], f: [&[(i64, u32, u32)]; 2]) -> ClassicalAction {
    ClassicalAction { h_x: h.0, h_y: h.1, e_x: cpoly(e[0]), e_y: cpoly(e[1]), f_x: cpoly(f[0]), f_y: cpoly(f[1]) }
}

/// 5. Classical limits of all six families, and no limit for the sign-flipped trivial actions.
fn criterion_classical() -> Outcome {
    let one = || int(1);
    let rows = [
        (SeriesFamily::trivial(1, 1).unwrap(), golden((0, 0), [&[], &[]], [&[], &[]])),
        (
            SeriesFamily::eb0(one()).unwrap(),
            golden((1, -2), [&[], &[(1, 0, 0)]], [&[(1, 1, 1)], &[(-1, 0, 2)]]),
        ),
        (
            SeriesFamily::fc0(one()).unwrap(),
            golden((2, -1), [&[(-1, 2, 0)], &[(1, 1, 1)]], [&[(1, 0, 0)], &[]]),
        ),
        (
            SeriesFamily::ea0(one(), one(), one()).unwrap(),
            golden((-2, -1), [&[(1, 0, 0)], &[]], [&[(-1, 2, 0), (1, 0, 4)], &[(-1, 1, 1), (1, 0, 3)]]),
        ),
        (
            SeriesFamily::fd0(one(), one(), one()).unwrap(),
            golden((1, 2), [&[(-1, 1, 1), (1, 3, 0)], &[(-1, 0, 2), (1, 4, 0)]], [&[], &[(1, 0, 0)]]),
        ),
        (
            SeriesFamily::standard(one()).unwrap(),
            golden((1, -1), [&[], &[(1, 1, 0)]], [&[(1, 0, 1)], &[]]),
        ),
    ];
    for (family, expected) in &rows {
        let limit = classical_limit(&build(family)).map_err(|e| format!("{family}: {e}"))?;
        if limit != *expected {
            return Err(format!("{family}: got\n{limit}\nexpected\n{expected}"));
        }
        let report = check_sl2(&limit, 8);
        if !report.passed {
            return Err(format!("{family}: {report}"));
        }
    }
    for (sx, sy) in [(1, -1), (-1, 1), (-1, -1)] {
        let f = SeriesFamily::trivial(sx, sy).unwrap();
        if classical_limit(&build(&f)).is_ok() {
            return Err(format!("{f} unexpectedly has a classical limit"));
        }
    }
    Ok("six classical limits reproduced and sl2-checked to degree 8; three sign-flipped trivial actions have no limit".into())
}

fn random_scalar(rng: &mut StdRng) -> QScalar {
    loop {
        let mut num = QScalar::zero();
        for k in 0..3 {
            num += &(&int(rng.gen_range(-3..=3)) * &q(k));
        }
        let den = &int(rng.gen_range(1..=3)) + &(&int(rng.gen_range(-2..=2)) * &q(1));
        let shift = q(rng.gen_range(-2..=2));
        if let Ok(v) = num.checked_div(&den) {
            if !v.is_zero() {
                return &v * &shift;
            }
        }
    }
}

/// 6. Random conjugations preserve weights and φ; verdicts match the classes.
fn criterion_isomorphism() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let bases = [
        SeriesFamily::trivial(1, -1).unwrap(),
        SeriesFamily::standard(q(1)).unwrap(),
        SeriesFamily::eb0(int(2)).unwrap(),
        SeriesFamily::fc0(q(-1)).unwrap(),
        SeriesFamily::ea0(int(1), q(1), int(2)).unwrap(),
        SeriesFamily::fd0(q(2), int(3), q(-1)).unwrap(),
    ];
    let mut runs = 0;
    let mut certified = 0;
    for base in &bases {
        let action = build(base);
        for _ in 0..100 {
            let aut = DiagonalAutomorphism::new(random_scalar(&mut rng), random_scalar(&mut rng)).unwrap();
            let moved: Action = conjugate(&action, &aut);
            if moved.weights != action.weights {
                return Err(format!("{base}: weights changed under {aut}"));
            }
            let target = base.transport(&aut);
            if build(&target) != moved {
                return Err(format!("{base}: transported parameters disagree with conjugation by {aut}"));
            }
            if invariant_phi(&target) != invariant_phi(base) {
                return Err(format!("{base}: phi changed under {aut}"));
            }
            let verdict = are_isomorphic(base, &target);
            if !verdict.isomorphic {
                return Err(format!("{base} and {target} judged non-isomorphic: {}", verdict.reason));
            }
            if let Some(cert) = &verdict.certificate {
                if !certificate_holds(base, &target, cert) {
                    return Err(format!("certificate {cert} for {base} -> {target} is wrong"));
                }
                certified += 1;
            }
            runs += 1;
        }
    }
    let cases = [
        (SeriesFamily::ea0(int(1), int(1), int(1)).unwrap(), SeriesFamily::ea0(int(1), int(1), int(2)).unwrap(), false),
        (SeriesFamily::eb0(int(1)).unwrap(), SeriesFamily::fc0(int(1)).unwrap(), false),
        (SeriesFamily::ea0(int(1), int(0), int(1)).unwrap(), SeriesFamily::ea0(int(1), int(1), int(1)).unwrap(), false),
        (SeriesFamily::trivial(1, 1).unwrap(), SeriesFamily::trivial(1, -1).unwrap(), false),
        (SeriesFamily::standard(q(2)).unwrap(), SeriesFamily::standard(int(1)).unwrap(), true),
        (SeriesFamily::standard(parse("(3 - q^2)/(1 + 2*q)")).unwrap(), SeriesFamily::standard(int(1)).unwrap(), true),
        (SeriesFamily::eb0(q(3)).unwrap(), SeriesFamily::eb0(int(1)).unwrap(), true),
        (SeriesFamily::fd0(int(2), int(1), int(2)).unwrap(), SeriesFamily::fd0(int(1), int(1), int(1)).unwrap(), true),
    ];
    for (a, b, expected) in &cases {
        let v = are_isomorphic(a, b);
        if v.isomorphic != *expected {
            return Err(format!("{a} vs {b}: expected isomorphic = {expected}, got {}", v.isomorphic));
        }
        if *expected {
            let cert = v.certificate.as_ref().ok_or(format!("{a} vs {b}: no certificate"))?;
            if !certificate_holds(a, b, cert) {
                return Err(format!("{a} vs {b}: certificate fails"));
            }
        }
    }
    Ok(format!(
        "{runs} random conjugations preserve weights and phi ({certified} explicit certificates verified); {} verdicts as expected",
        cases.len()
    ))
}

fn corrupted(tag: FamilyTag) -> Action {
    let mut a = build(&SeriesFamily::default_for(tag));
    let flip = |p: &QPlanePoly, mono: Monomial| {
        let c = p.coeff(mono);
        let mut out = p.clone();
        out.add_term(mono, &(&c * &int(-2)));
        out
    };
    match tag {
        // Every sign pair is a valid trivial action, so the weight itself is corrupted.
        FamilyTag::Trivial => {
            a.weights = qplane_core::hopf::WeightPair::new(q(1), int(1)).unwrap();
        }
        FamilyTag::Standard => a.f_x = flip(&a.f_x, Monomial::Y),
        FamilyTag::EB0 => a.f_y = flip(&a.f_y, Monomial::new(0, 2)),
        FamilyTag::FC0 => a.e_x = flip(&a.e_x, Monomial::new(2, 0)),
        FamilyTag::EA0 => a.f_x = flip(&a.f_x, Monomial::new(2, 0)),
        FamilyTag::FD0 => a.e_y = flip(&a.e_y, Monomial::new(0, 2)),
    }
    a
}

/// 7. One sign corruption per family is caught at degree <= 4.
fn criterion_negative_controls() -> Outcome {
    let mut notes = Vec::new();
    for tag in FamilyTag::ALL {
        let bad = corrupted(tag);
        let report = check_module_algebra(&bad, 4);
        let Some(first) = report.lowest_failure() else {
            return Err(format!("corrupted {tag} passes"));
        };
        if first.residual.is_zero() || first.monomial.degree() > 4 {
            return Err(format!("corrupted {tag}: bad failure record {first}"));
        }
        notes.push(format!("{tag} on {}", first.monomial));
    }
    Ok(format!("all six corruptions caught: {}", notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 axiom suite", criterion_axioms),
        ("2 classification count", criterion_classification),
        ("3 oracle equivalence", criterion_closed_forms),
        ("4 composition series", criterion_composition),
        ("5 classical limits", criterion_classical),
        ("6 isomorphism invariants", criterion_isomorphism),
        ("7 negative controls", criterion_negative_controls),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.1}s) {msg}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 7 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 7 criteria failed");
        ExitCode::FAILURE
    }
}
