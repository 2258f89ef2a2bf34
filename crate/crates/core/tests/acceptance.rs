//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so every line is printed on every run.
//! Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use listsym::equivariance::{
    check, check_filter_equivariant, check_nfe_counts, check_no_new_values,
};
use listsym::function::{compose, foldr_fe, pointwise_concat};
use listsym::nfe::{
    check_multiset_profile, count_k_nfes, enumerate_k_nfes, interpret, terms_up_to_weight,
};
use listsym::simplicial::{check_cone, family_of_function};
use listsym::{
    amal, decompose_pi, extrapolate_fe, extrapolate_nfe_from_doubleton, list, square_multiplicity,
    AlphaStep, Builtin, Elem, Law, ListFunction, PermFamily, Permutation, Scope, SublistTable,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= budget, || {
        format!("took {took:?}, budget {budget:?}")
    })
}

fn scope(alphabet: usize, max_len: usize) -> Scope {
    Scope::new(alphabet, max_len).expect("valid scope")
}

fn nfe_fn(term: &listsym::NfeTerm) -> ListFunction {
    ListFunction::Nfe(term.clone())
}

fn apply(f: &ListFunction, xs: &[Elem]) -> Vec<Elem> {
    f.apply(xs).unwrap_or_else(|e| panic!("{f} on {xs:?}: {e}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let expected = [2u128, 6, 18, 54, 162, 486];
    for (k, want) in (1..=6).zip(expected) {
        let counted = count_k_nfes(k);
        let listed = enumerate_k_nfes(k as usize).len() as u128;
        ensure(counted == want && listed == want, || {
            format!("k={k}: formula {counted}, enumeration {listed}, expected {want}")
        })?;
        ensure(counted == 2 * 3u128.pow(k - 1), || {
            format!("k={k}: not 2*3^(k-1)")
        })?;
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("counts {expected:?}"))
}

fn criterion_2() -> Outcome {
    let xs = list(&[1, 2]);
    let got: BTreeSet<Vec<Elem>> = enumerate_k_nfes(2)
        .iter()
        .map(|t| interpret(t, &xs))
        .collect();
    let id = ListFunction::identity();
    let rev = ListFunction::reverse();
    let named = [
        ListFunction::inflate(2),
        compose(rev.clone(), ListFunction::inflate(2)),
        pointwise_concat(id.clone(), id.clone()),
        pointwise_concat(rev.clone(), id.clone()),
        pointwise_concat(id.clone(), rev.clone()),
        pointwise_concat(rev.clone(), rev.clone()),
    ];
    let want: BTreeSet<Vec<Elem>> = named.iter().map(|f| apply(f, &xs)).collect();
    ensure(want.len() == 6, || "named outputs are not distinct".into())?;
    ensure(enumerate_k_nfes(2).len() == 6, || {
        "six terms expected".into()
    })?;
    ensure(got == want, || {
        format!("enumerated {got:?}, named {want:?}")
    })?;
    Ok("six distinct outputs on [1,2] match".into())
}

fn passes(f: &ListFunction, law: Law, sc: Scope) -> Result<bool, String> {
    check(f, law, sc)
        .map(|r| r.passed())
        .map_err(|e| e.to_string())
}

fn fails_with_witness(f: &ListFunction, law: Law, sc: Scope) -> Result<(), String> {
    let report = check(f, law, sc).map_err(|e| e.to_string())?;
    let w = report
        .witnesses
        .first()
        .ok_or_else(|| format!("{f} unexpectedly passes {law}"))?;
    let confirmed = w.confirms(f).map_err(|e| e.to_string())?;
    ensure(confirmed, || {
        format!("{f}: witness {w:?} does not reproduce")
    })
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let sc = scope(3, 5);
    let rev = ListFunction::reverse();
    for law in [Law::Map, Law::Filter] {
        ensure(passes(&rev, law, sc)?, || format!("reverse fails {law}"))?;
    }
    let terms = terms_up_to_weight(3);
    for t in &terms {
        let f = nfe_fn(t);
        for law in [Law::Map, Law::Filter] {
            ensure(passes(&f, law, sc)?, || format!("{f} fails {law}"))?;
        }
    }
    let sort = ListFunction::sort();
    ensure(passes(&sort, Law::Filter, sc)?, || {
        "sort fails filter".into()
    })?;
    fails_with_witness(&sort, Law::Map, sc)?;
    let predicates = sc.predicates();
    ensure(predicates.len() == 8, || "expected 8 predicates".into())?;
    for p in &predicates {
        let f = ListFunction::Filter(p.clone());
        ensure(passes(&f, Law::Filter, sc)?, || format!("{f} fails filter"))?;
    }
    let triangle = ListFunction::builtin(Builtin::Triangle);
    ensure(passes(&triangle, Law::Map, sc)?, || {
        "triangle fails map".into()
    })?;
    fails_with_witness(&triangle, Law::Filter, sc)?;
    for b in [Builtin::SwapPairs, Builtin::SwapBlocks] {
        fails_with_witness(&ListFunction::builtin(b), Law::Filter, sc)?;
    }
    let maps = sc.endo_maps().map_err(|e| e.to_string())?;
    for m in &maps {
        let f = ListFunction::Map(m.clone());
        ensure(passes(&f, Law::Tail, sc)?, || format!("{f} fails tail"))?;
    }
    fails_with_witness(&rev, Law::Tail, sc)?;
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{} NFE terms, {} predicates, {} maps classified",
        terms.len(),
        predicates.len(),
        maps.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut t = SublistTable::new();
    t.insert(Elem(1), Elem(2), list(&[1, 2, 2]))
        .map_err(|e| e.to_string())?;
    t.insert(Elem(2), Elem(3), list(&[2, 2, 3]))
        .map_err(|e| e.to_string())?;
    t.insert(Elem(1), Elem(3), list(&[1, 3]))
        .map_err(|e| e.to_string())?;
    let got = extrapolate_fe(&t, &list(&[3, 2, 1, 2])).map_err(|e| e.to_string())?;
    ensure(got == list(&[1, 2, 2, 3]), || format!("got {got:?}"))?;
    Ok("[3,2,1,2] -> [1,2,2,3]".into())
}

fn oracle_corpus(alphabet: usize) -> Vec<ListFunction> {
    let sc = scope(alphabet, 0);
    let mut corpus: Vec<ListFunction> = terms_up_to_weight(3).iter().map(nfe_fn).collect();
    corpus.push(ListFunction::sort());
    for p in sc.predicates() {
        corpus.push(ListFunction::Filter(p.clone()));
        corpus.push(foldr_fe(AlphaStep::ConsIf(p)));
    }
    corpus.extend([AlphaStep::Cons, AlphaStep::Snoc, AlphaStep::Insert].map(foldr_fe));
    corpus
}

fn distinct_count(xs: &[Elem]) -> usize {
    xs.iter().collect::<BTreeSet<_>>().len()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let corpus = oracle_corpus(4);
    let inputs: Vec<Vec<Elem>> = scope(4, 6)
        .lists()
        .into_iter()
        .filter(|xs| distinct_count(xs) >= 3)
        .collect();
    for f in &corpus {
        for xs in &inputs {
            let table =
                SublistTable::try_from_fn(xs, |ys| f.apply(ys)).map_err(|e| e.to_string())?;
            let got = extrapolate_fe(&table, xs).map_err(|e| format!("{f} on {xs:?}: {e}"))?;
            let want = apply(f, xs);
            ensure(got == want, || {
                format!("{f} on {xs:?}: {got:?} != {want:?}")
            })?;
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "{} functions x {} inputs",
        corpus.len(),
        inputs.len()
    ))
}

fn criterion_6() -> Outcome {
    let example_in = list(&[1, 2]);
    let terms = terms_up_to_weight(3);
    let inputs = scope(4, 6).lists();
    for t in &terms {
        let example_out = interpret(t, &example_in);
        for xs in &inputs {
            let got = extrapolate_nfe_from_doubleton(&example_in, &example_out, xs)
                .map_err(|e| format!("{t} on {xs:?}: {e}"))?;
            let want = interpret(t, xs);
            ensure(got == want, || {
                format!("{t} on {xs:?}: {got:?} != {want:?}")
            })?;
        }
    }
    Ok(format!("{} terms x {} inputs", terms.len(), inputs.len()))
}

fn criterion_7() -> Outcome {
    let sc = scope(3, 5);
    let f = ListFunction::builtin(Builtin::SquareMultiplicity);
    let report = check_filter_equivariant(&f, sc).map_err(|e| e.to_string())?;
    ensure(report.passed(), || "fails filter-equivariance".into())?;
    let four_seven = list(&[4, 7, 4, 7, 8]);
    let squared = square_multiplicity(&four_seven);
    ensure(squared == list(&[4, 4, 4, 4, 7, 7, 7, 7, 8]), || {
        format!("got {squared:?}")
    })?;
    ensure(squared != four_seven, || {
        "agrees with identity on [4,7,4,7,8]".into()
    })?;
    let low: Vec<Vec<Elem>> = sc
        .lists()
        .into_iter()
        .filter(|xs| distinct_count(xs) <= 2)
        .collect();
    let disagreements: Vec<&Vec<Elem>> = low
        .iter()
        .filter(|xs| square_multiplicity(xs) != **xs)
        .collect();
    ensure(disagreements.is_empty(), || {
        let first = disagreements[0];
        format!(
            "differs from identity on {} of {} lists with at most two distinct values, first {:?} -> {:?}",
            disagreements.len(),
            low.len(),
            first,
            square_multiplicity(first)
        )
    })?;
    Ok("FE, identity on low-diversity lists, not identity on [4,7,4,7,8]".into())
}

fn criterion_8() -> Outcome {
    let inputs: Vec<Vec<u32>> = scope(4, 7)
        .lists()
        .into_iter()
        .filter(|xs| distinct_count(xs) >= 3)
        .map(|xs| xs.into_iter().map(|e| e.0).collect())
        .collect();
    for xs in &inputs {
        let back = amal(&decompose_pi(xs)).map_err(|e| format!("{xs:?}: {e}"))?;
        ensure(&back == xs, || format!("{xs:?} rebuilt as {back:?}"))?;
    }
    Ok(format!("{} lists", inputs.len()))
}

fn criterion_9() -> Outcome {
    let rev = family_of_function(&ListFunction::reverse(), 1, 4).map_err(|e| e.to_string())?;
    let want: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1, 0], vec![2, 1, 0], vec![3, 2, 1, 0]];
    let got: Vec<Vec<usize>> = rev.members().iter().map(|p| p.image().to_vec()).collect();
    ensure(got == want, || format!("reverse family {got:?}"))?;
    let mut families = 0;
    for k in 1..=3 {
        for t in enumerate_k_nfes(k) {
            let fam = family_of_function(&nfe_fn(&t), k, 4).map_err(|e| format!("{t}: {e}"))?;
            let report = check_cone(&fam);
            ensure(report.passed(), || {
                format!("{t}: {:?}", report.violations[0])
            })?;
            families += 1;
        }
    }
    let members = [vec![], vec![0], vec![1, 0], vec![0, 2, 1]]
        .into_iter()
        .map(|p| Permutation::new(p).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let incoherent = PermFamily::new(1, members).map_err(|e| e.to_string())?;
    let report = check_cone(&incoherent);
    let witness = report
        .violations
        .first()
        .ok_or("incoherent family accepted")?;
    Ok(format!(
        "{families} NFE families are cones; injected family rejected at n={} m={} along {:?}",
        witness.n, witness.m, witness.inclusion
    ))
}

fn criterion_10() -> Outcome {
    let sc = scope(3, 5);
    let mut corpus = oracle_corpus(3);
    corpus.extend(Builtin::ALL.map(ListFunction::builtin));
    corpus.push(foldr_fe(AlphaStep::ConsTwiceOnEmpty));
    let mut fe = 0;
    for f in &corpus {
        if !check_filter_equivariant(f, sc)
            .map_err(|e| e.to_string())?
            .passed()
        {
            continue;
        }
        fe += 1;
        let values = check_no_new_values(f, sc).map_err(|e| e.to_string())?;
        ensure(values.passed(), || {
            format!("{f}: {:?}", values.violations.first())
        })?;
        let profile = check_multiset_profile(f, sc).map_err(|e| e.to_string())?;
        ensure(profile.passed(), || {
            format!("{f}: {:?}", profile.violations.first())
        })?;
    }
    let terms = terms_up_to_weight(3);
    for t in &terms {
        let report = check_nfe_counts(&nfe_fn(t), sc).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("{t}: {:?}", report.violations.first())
        })?;
        ensure(
            report.inflation_factor == Some(t.inflation_factor()),
            || format!("{t}: inflation factor {:?}", report.inflation_factor),
        )?;
    }
    Ok(format!(
        "{fe} of {} corpus functions are FE and satisfy both lemmas; {} NFE terms scale length by k",
        corpus.len(),
        terms.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("counting formula for k-NFEs", criterion_1),
        ("2-NFE roster on [1,2]", criterion_2),
        ("equivariance classification at (3,5)", criterion_3),
        ("worked sublist extrapolation", criterion_4),
        ("extrapolation equals direct evaluation", criterion_5),
        ("NFE determined by one doubleton", criterion_6),
        ("square-multiplicity counterexample", criterion_7),
        ("amal inverts decompose", criterion_8),
        ("permutation families are cones", criterion_9),
        ("no new values, multiset profile, NFE counts", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title} ({took:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title} ({took:.2?}): {detail}", i + 1);
            }
        }
    }
    let _ = panic::take_hook();
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
