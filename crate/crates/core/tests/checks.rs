use std::time::Instant;

use appell_f4::algebra::RationalFunction as Rf;
use appell_f4::checks::{CheckRegistry, Context, UnknownCheck, VerificationReport};
use appell_f4::connection::DivisorLabel;
use appell_f4::parallel::Execution;

fn one() -> Rf {
    Rf::one()
}

#[test]
fn all_checks_pass_on_pristine_context() {
    let reg = CheckRegistry::standard();
    assert!(reg.len() >= 20);
    let t = Instant::now();
    let report = reg.run_all(&Context::new(), Execution::Parallel);
    println!("{} checks in {:?}", reg.len(), t.elapsed());
    for c in &report.checks {
        println!(
            "{:<28} {} {}",
            c.id,
            if c.pass { "ok" } else { "FAIL" },
            c.detail
        );
    }
    assert!(report.all_passed());
    assert_eq!(report.summary.passed, reg.len());
}

#[test]
fn ids_are_unique() {
    let reg = CheckRegistry::standard();
    let mut ids = reg.ids();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), reg.len());
    assert!(reg.get("conn-hat.flatness").is_some());
}

#[test]
fn single_check_and_unknown_id() {
    let reg = CheckRegistry::standard();
    let ctx = Context::new();
    let r = reg
        .run(&ctx, "conn-hat.flatness", Execution::Sequential)
        .unwrap();
    assert_eq!(r.checks.len(), 1);
    assert_eq!(r.checks[0].id, "conn-hat.flatness");
    assert!(r.checks[0].pass);
    assert_eq!(
        reg.run(&ctx, "nosuch", Execution::Sequential).unwrap_err(),
        UnknownCheck("nosuch".into())
    );
}

#[test]
fn report_json_schema() {
    let reg = CheckRegistry::standard();
    let r = reg
        .run(&Context::new(), "params.dictionary", Execution::Sequential)
        .unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let c = &v["checks"][0];
    for k in ["id", "anchor", "pass", "detail"] {
        assert!(c.get(k).is_some(), "{k}");
    }
    assert_eq!(v["summary"]["passed"], 1);
    assert_eq!(v["summary"]["failed"], 0);
    let back: VerificationReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn sequential_and_parallel_agree() {
    let reg = CheckRegistry::standard();
    let ctx = Context::new();
    for id in ["orth.duality", "eigenspace.residues", "int-no.intersection"] {
        let a = reg.run(&ctx, id, Execution::Sequential).unwrap();
        let b = reg.run(&ctx, id, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}

fn failing(reg: &CheckRegistry, ctx: &Context) -> Vec<String> {
    reg.run_all(ctx, Execution::Parallel)
        .checks
        .into_iter()
        .filter(|c| !c.pass)
        .map(|c| c.id)
        .collect()
}

#[test]
fn perturbed_xi_entry_fails_integrability() {
    let reg = CheckRegistry::standard();
    let mut ctx = Context::new();
    ctx.perturb_xi(0, 0, 1, &one());
    let r = reg
        .run(&ctx, "pfaff.integrability", Execution::Sequential)
        .unwrap();
    assert!(!r.all_passed());
    let bad = failing(&reg, &ctx);
    assert!(bad.contains(&"conn-hat.pipeline".to_string()), "{bad:?}");
    assert!(bad.contains(&"pfaff.certify".to_string()), "{bad:?}");
}

#[test]
fn perturbed_chat_entry_is_detected() {
    let reg = CheckRegistry::standard();
    let mut ctx = Context::new();
    ctx.perturb_chat(1, 2, &one());
    let bad = failing(&reg, &ctx);
    assert!(bad.contains(&"int-no.intersection".to_string()), "{bad:?}");
    assert!(bad.contains(&"orth.duality".to_string()), "{bad:?}");
}

#[test]
fn perturbed_residue_is_detected() {
    let reg = CheckRegistry::standard();
    let mut ctx = Context::new();
    ctx.perturb_xi_hat(DivisorLabel::Line, 3, 3, &one());
    let bad = failing(&reg, &ctx);
    assert!(bad.contains(&"conn-hat.pipeline".to_string()), "{bad:?}");
    assert!(bad.contains(&"eigenspace.residues".to_string()), "{bad:?}");
}

#[test]
fn replacing_chat_by_identity_breaks_duality() {
    let reg = CheckRegistry::standard();
    let mut ctx = Context::new();
    ctx.data.chat = appell_f4::forms::FMatrix::identity(4);
    let r = reg
        .run(&ctx, "orth.duality", Execution::Sequential)
        .unwrap();
    assert!(!r.all_passed());
}
