//! Registry of the exact checks, run against a [`Context`] holding the
//! matrices under test so that perturbed copies can be checked too.

use serde::{Deserialize, Serialize};

use crate::algebra::RationalFunction as Rf;
use crate::cohomology::{
    build_library, certify_theorem_pfaff, eta_relations, verify_combo_denominators,
    verify_lemma_diff, verify_ql2_solve, CertificateLibrary, SForm,
};
use crate::connection::{
    build_intersection, build_xi, build_xi_hat, build_xi_tilde_printed, verify_covering_symmetry,
    verify_derivative_frame, verify_duality, verify_duality_x, verify_eigenstructure,
    verify_integrability, verify_intersection, verify_orthogonality_claim, verify_pipeline,
    verify_pullback_printed, verify_reconstruction, verify_scalar_pde, verify_vanishing_factors,
    ConnectionSystem, DivisorLabel, IntersectionData, ParameterDictionary,
};
use crate::parallel::{self, Execution};
use crate::report::Report;

/// The objects the checks read.
#[derive(Clone, Debug)]
pub struct Context {
    pub dict: ParameterDictionary,
    pub xi: ConnectionSystem,
    pub xi_tilde: ConnectionSystem,
    pub xi_hat: ConnectionSystem,
    pub data: IntersectionData,
    pub library: CertificateLibrary,
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}

impl Context {
    pub fn new() -> Self {
        let dict = ParameterDictionary;
        Context {
            xi: build_xi(&dict),
            xi_tilde: build_xi_tilde_printed(&dict),
            xi_hat: build_xi_hat(&dict),
            data: build_intersection(&dict),
            library: build_library(&dict),
            dict,
        }
    }

    /// Adds `delta` to entry `(r, c)` of Ξ¹ (`part = 0`) or Ξ² (`part = 1`).
    pub fn perturb_xi(&mut self, part: usize, r: usize, c: usize, delta: &Rf) {
        let m = &mut self.xi.form.parts[part];
        let v = m.get(r, c) + delta;
        m.set(r, c, v);
    }

    pub fn perturb_chat(&mut self, r: usize, c: usize, delta: &Rf) {
        let v = self.data.chat.get(r, c) + delta;
        self.data.chat.set(r, c, v);
    }

    /// Adds `delta` to one entry of a residue of Ξ̂ and reassembles the form.
    pub fn perturb_xi_hat(&mut self, label: DivisorLabel, r: usize, c: usize, delta: &Rf) {
        let mut terms = self.xi_hat.divisors.clone();
        if let Some(t) = terms.iter_mut().find(|t| t.label == label) {
            let v = t.residue.get(r, c) + delta;
            t.residue.set(r, c, v);
        }
        self.xi_hat = ConnectionSystem::from_log_terms(self.xi_hat.frame, terms);
    }
}

pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
    run: fn(&Context) -> Report,
}

impl Check {
    pub fn run(&self, ctx: &Context) -> CheckOutcome {
        let r = (self.run)(ctx);
        CheckOutcome {
            id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            pass: r.pass,
            detail: r.witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(checks: Vec<CheckOutcome>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        VerificationReport {
            checks,
            summary: Summary { passed, failed },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown check id {0}")]
pub struct UnknownCheck(pub String);

pub struct CheckRegistry {
    checks: Vec<Check>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

fn all_pass(id: &str, reports: Vec<Report>) -> Report {
    let n = reports.len();
    match reports.into_iter().find(|r| !r.pass) {
        Some(r) => Report::fail(id, format!("{}: {}", r.id, r.witness)),
        None => Report::pass(id, format!("{n} certificates hold exactly")),
    }
}

fn certificates_with_prefix(ctx: &Context, id: &str, prefix: &str) -> Report {
    let certs: Vec<_> = ctx
        .library
        .iter()
        .filter(|c| c.name.split('.').next() == Some(prefix))
        .collect();
    if certs.is_empty() {
        return Report::fail(id, format!("no {prefix} certificates in the library"));
    }
    all_pass(id, parallel::map(&certs, |c| ctx.library.verify(c)))
}

fn dictionary(ctx: &Context) -> Report {
    let id = "params.dictionary";
    let failed = ctx.dict.failed_identities();
    let table: Vec<String> = ctx
        .dict
        .residue_table()
        .into_iter()
        .filter(|row| row.lambda != row.aij || row.aij != row.abc)
        .map(|row| row.divisor.to_string())
        .collect();
    if failed.is_empty() && table.is_empty() {
        Report::pass(id, "all parameter identities and residue rows agree")
    } else {
        Report::fail(
            id,
            format!("failed: {} {}", failed.join(", "), table.join(", ")),
        )
    }
}

fn arrangement(ctx: &Context) -> Report {
    let id = "cohomology.arrangement";
    for c in ctx.library.iter() {
        let claim = SForm::Two {
            ds12: c.claim.clone(),
        };
        let pot = SForm::One(c.potential.clone());
        if !claim.has_arrangement_denominators() {
            return Report::fail(id, format!("claim of {} has a foreign denominator", c.name));
        }
        if !pot.has_arrangement_denominators() {
            return Report::fail(
                id,
                format!("potential of {} has a foreign denominator", c.name),
            );
        }
    }
    Report::pass(id, format!("{} certificates", ctx.library.len()))
}

macro_rules! check {
    ($id:expr, $anchor:expr, $desc:expr, $run:expr) => {
        Check {
            id: $id,
            anchor: $anchor,
            description: $desc,
            run: $run,
        }
    };
}

impl CheckRegistry {
    pub fn standard() -> Self {
        let checks = vec![
            check!(
                "params.dictionary",
                "parameter dictionary, residue table",
                "lambda bindings, a_ij/b_ij identities and residue rows",
                dictionary
            ),
            check!(
                "pfaff.integrability",
                "remark after theorem Pfaff",
                "d(xi) = xi^xi and d(xi) != O in the phi frame",
                |c| verify_integrability(&c.xi)
            ),
            check!(
                "pullback.printed",
                "corollary pullback",
                "pull-back of xi under the double cover equals the printed xi-tilde",
                |c| verify_pullback_printed(&c.xi, &c.xi_tilde)
            ),
            check!(
                "conn-hat.pipeline",
                "theorem conn-hat",
                "gauge(G, pr*(xi)) equals xi-hat as printed",
                |c| verify_pipeline(&c.xi, &c.xi_hat)
            ),
            check!(
                "conn-hat.flatness",
                "theorem conn-hat",
                "d(xi-hat) = xi-hat^xi-hat = O",
                |c| {
                    let mut r = verify_integrability(&c.xi_hat);
                    r.id = "conn-hat.flatness".into();
                    r
                }
            ),
            check!(
                "conn-hat.covering-symmetry",
                "covering transformation rho",
                "rho acts on xi-hat as conjugation by I31",
                |c| verify_covering_symmetry(&c.xi_hat)
            ),
            check!(
                "int-no.intersection",
                "proposition int.no, corollary int.no",
                "C symmetric, det(C), both printed forms, block structure of C-hat",
                |c| verify_intersection(&c.data)
            ),
            check!(
                "orth.duality",
                "lemma orth",
                "xi-hat^v = -xi-hat and R C-hat + C-hat tR^v = O per residue",
                |c| verify_duality(&c.xi_hat, &c.data)
            ),
            check!(
                "int-str.compatibility",
                "proposition int-str",
                "xi C + C t(xi^v) = d_x C in the phi frame",
                |c| verify_duality_x(&c.xi, &c.data)
            ),
            check!(
                "eigenspace.residues",
                "lemma eigenspace",
                "characteristic polynomials, left eigenvectors and traces of the residues",
                |c| verify_eigenstructure(&c.xi_hat, &c.data)
            ),
            check!(
                "roots-exp.reconstruction",
                "lemma roots-exp, theorem exp-conn-int",
                "residues rebuilt from the intersection form",
                |c| verify_reconstruction(&c.xi_hat, &c.data)
            ),
            check!(
                "roots-exp.orthogonality",
                "lemma roots-exp",
                "v C-hat tw^v = 0 and the pairing that reproduces C-hat1, C-hat2",
                |c| verify_orthogonality_claim(&c.data, &c.xi_hat)
            ),
            check!(
                "pfaff.derivative-frame",
                "remark Pfaff",
                "G_partial against its printed inverse, frame rows and integrability of theta",
                |c| verify_derivative_frame(&c.dict)
            ),
            check!(
                "pfaff.scalar-pde",
                "F4 system, remark diff-para",
                "elimination to two F4 operators and their constants",
                |c| verify_scalar_pde(&c.dict)
            ),
            check!(
                "vanishi.factors",
                "lemma vanishi",
                "polynomial factors behind the vanishing of the hatted forms and e5, e6",
                |c| verify_vanishing_factors(&c.data)
            ),
            check!(
                "cohomolog.certificates",
                "remark cohomolog",
                "nabla-exactness certificates of the remark",
                |c| certificates_with_prefix(c, "cohomolog.certificates", "cohomolog")
            ),
            check!(
                "l2.certificates",
                "lemma L2",
                "nabla-exactness certificates with the printed potentials",
                |c| certificates_with_prefix(c, "l2.certificates", "L2")
            ),
            check!(
                "1sl2.certificates",
                "lemma 1sL2",
                "assembled certificates for the 1/(s_k L^2) forms",
                |c| certificates_with_prefix(c, "1sl2.certificates", "1sL2")
            ),
            check!(
                "ql2.relations",
                "lemma QL2",
                "the three relations among eta0, eta1, eta2",
                |c| all_pass("ql2.relations", eta_relations(&c.library))
            ),
            check!(
                "ql2.solve",
                "lemma QL2 and the remark after it",
                "solution of the eta system against the printed displays",
                |c| verify_ql2_solve(&c.dict)
            ),
            check!(
                "library.all",
                "lemmas L2, 1sL2, QL2, remark cohomolog",
                "every certificate in the library, stated and reduced",
                |c| all_pass("library.all", crate::cohomology::verify_library(&c.library))
            ),
            check!(
                "cohomology.arrangement",
                "twisted cohomology of the arrangement",
                "certificate forms have arrangement denominators only",
                arrangement
            ),
            check!(
                "diff.nabla-x",
                "lemma diff",
                "nabla_X of the phi frame against the printed expressions",
                |c| verify_lemma_diff(&c.dict)
            ),
            check!(
                "pfaff.certify",
                "theorem Pfaff",
                "every row of xi certified by a chained nabla-exactness certificate",
                |c| certify_theorem_pfaff(&c.dict, &c.xi)
            ),
            check!(
                "pfaff.denominators",
                "theorem Pfaff",
                "row certificate coefficients have poles along x1 x2 R(x) and lambda3 only",
                |c| verify_combo_denominators(&c.dict)
            ),
        ];
        CheckRegistry { checks }
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.id).collect()
    }

    /// Runs `"all"` or a single check id. Results come back in registry order.
    pub fn run(
        &self,
        ctx: &Context,
        selector: &str,
        exec: Execution,
    ) -> Result<VerificationReport, UnknownCheck> {
        let selected: Vec<&Check> = if selector == "all" {
            self.checks.iter().collect()
        } else {
            vec![self
                .get(selector)
                .ok_or_else(|| UnknownCheck(selector.to_string()))?]
        };
        Ok(VerificationReport::new(parallel::map_with(
            exec,
            &selected,
            |c| c.run(ctx),
        )))
    }

    pub fn run_all(&self, ctx: &Context, exec: Execution) -> VerificationReport {
        let all: Vec<&Check> = self.checks.iter().collect();
        VerificationReport::new(parallel::map_with(exec, &all, |c| c.run(ctx)))
    }
}
