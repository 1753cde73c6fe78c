//! Verification suites with a JSON-serializable report.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::gradedpoly::{
    centralizer, find_dilation, same_span, standard_connection, verify_heisenberg, HeisenbergStructure, Poly,
    PolyVectorField,
};
use crate::heisenberg::{evaluate_word, LatticePresentation};
use crate::json::field_to_wire;
use crate::rigidity::{
    final_kernel, final_kernel_with, theta, verify_graded_hom, verify_normalized_bracket_identities, GradedLieHom,
    KernelEquations,
};
use crate::scalar::{q, Q};
use crate::su_grading::{
    affine_word_action, bracket_relation_table, chart_affine_data, e_matrix, f_minus, full_basis, induced_vector_field,
    phi_chart_jet, real_basis_vector, xi_minus, Domain,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
    /// Filled in only on request, so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), cases: Vec::new(), wall_time_ms: None }
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.cases.push(Case { id: id.into(), status: Status::Pass, residual: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, residual: Value) {
        self.cases.push(Case { id: id.into(), status: Status::Fail, residual: Some(residual) });
    }

    pub fn skip(&mut self, id: impl Into<String>) {
        self.cases.push(Case { id: id.into(), status: Status::Skip, residual: None });
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, residual: impl FnOnce() -> Value) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, residual());
        }
    }

    /// Records a field that should vanish.
    pub fn check_zero(&mut self, id: impl Into<String>, residual: &PolyVectorField) {
        self.check(id, residual.is_zero(), || field_value(residual));
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.cases.extend(other.cases);
    }

    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    fn finish(mut self, start: Option<Instant>) -> Self {
        self.cases.sort_by(|a, b| a.id.cmp(&b.id));
        self.wall_time_ms = start.map(|s| s.elapsed().as_millis());
        self
    }
}

pub fn field_value(f: &PolyVectorField) -> Value {
    serde_json::to_value(field_to_wire(f)).expect("serializable")
}

fn message(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

/// Runs a suite body, optionally recording the elapsed time.
pub fn timed(suite: &str, timing: bool, body: impl FnOnce(&mut SuiteReport) -> Result<()>) -> Result<SuiteReport> {
    let start = timing.then(Instant::now);
    let mut report = SuiteReport::new(suite);
    body(&mut report)?;
    Ok(report.finish(start))
}

/// Bracket relations of the grading as matrix identities, the chart
/// realization as a homomorphism on the full basis, and the chart fields of
/// `g^(-1)`, `g^(-2)` and `E`.
pub fn brackets_suite(ns: &[usize], timing: bool) -> Result<SuiteReport> {
    timed("brackets", timing, |rep| {
        for &n in ns {
            for check in bracket_relation_table(n) {
                rep.check(format!("n{n}/relation {}", check.name), check.holds, || message("matrix identity fails"));
            }
            let basis = full_basis(n);
            let fields: Vec<PolyVectorField> = basis.iter().map(|b| induced_vector_field(&b.materialize(n))).collect();
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    let lhs = induced_vector_field(&basis[i].materialize(n).commutator(&basis[j].materialize(n)));
                    let res = &lhs - &fields[i].lie_bracket(&fields[j]);
                    rep.check_zero(format!("n{n}/iota0 [{}, {}]", basis[i], basis[j]), &res);
                }
            }
            let nvars = 2 * n + 1;
            let last = nvars - 1;
            for j in 0..n {
                let (a, b) = (2 * j, 2 * j + 1);
                let mut x = PolyVectorField::partial(n, a);
                *x.comp_mut(last) = -&Poly::var(nvars, b);
                let mut y = PolyVectorField::partial(n, b);
                *y.comp_mut(last) = Poly::var(nvars, a);
                let fx = induced_vector_field(&xi_minus(&real_basis_vector(n, a)));
                let fy = induced_vector_field(&xi_minus(&real_basis_vector(n, b)));
                rep.check_zero(format!("n{n}/chart e{}-", j + 1), &(&fx - &x));
                rep.check_zero(format!("n{n}/chart ie{}-", j + 1), &(&fy - &y));
            }
            let fm = induced_vector_field(&f_minus(n, &q(1)));
            rep.check_zero(format!("n{n}/chart F- = -d{nvars}"), &(&fm + &PolyVectorField::partial(n, last)));
            let e = induced_vector_field(&e_matrix(n));
            rep.check_zero(format!("n{n}/chart E = -R"), &(&e + &PolyVectorField::euler(n)));
        }
        Ok(())
    })
}

/// Every relator of the presentation, checked on jets of order `r`, in the
/// group `AN`, and on the affine chart action.
pub fn relations_suite(ns: &[usize], ks: &[i64], r: u32, timing: bool) -> Result<SuiteReport> {
    timed("relations", timing, |rep| {
        for &n in ns {
            for &k in ks {
                let lat = LatticePresentation::standard(n, k);
                let data = chart_affine_data(&lat)?;
                for (name, word) in lat.relators() {
                    let tag = format!("n{n}/k{k}/{name}");
                    let jet = phi_chart_jet(&word, &lat, r)?;
                    rep.check(format!("{tag}/jet r{r}"), jet.is_identity(), || {
                        field_value(&jet.displacement())
                    });
                    let g = evaluate_word(&word, &lat)?;
                    rep.check(format!("{tag}/AN"), g.is_identity(), || {
                        serde_json::to_value(crate::json::ANElementWire::from_element(&g)).expect("serializable")
                    });
                    let aff = affine_word_action(&word, &data, &lat.kq())?;
                    rep.check(format!("{tag}/affine"), aff.is_identity(), || message("affine action is not the identity"));
                }
            }
        }
        Ok(())
    })
}

/// Fields commuting with the standard connection, in the explicit form
/// `d_{2j-1} + x_{2j} d_{2n+1}`, `d_{2j} - x_{2j-1} d_{2n+1}`, `d_{2n+1}`.
pub fn listed_centralizer(n: usize) -> Vec<PolyVectorField> {
    let nvars = 2 * n + 1;
    let last = nvars - 1;
    let mut out = Vec::new();
    for j in 0..n {
        let (a, b) = (2 * j, 2 * j + 1);
        let mut y1 = PolyVectorField::partial(n, a);
        *y1.comp_mut(last) = Poly::var(nvars, b);
        let mut y2 = PolyVectorField::partial(n, b);
        *y2.comp_mut(last) = -&Poly::var(nvars, a);
        out.push(y1);
        out.push(y2);
    }
    out.push(PolyVectorField::partial(n, last));
    out
}

/// Heisenberg geometry of the standard connection: structure, centralizer and
/// the dilation by `e^{log_lambda}`.
pub fn centralizer_suite(ns: &[usize], max_level: i32, timing: bool) -> Result<SuiteReport> {
    timed("centralizer", timing, |rep| {
        for &n in ns {
            let basis = standard_connection(n);
            let origin = vec![Q::from_integer(0.into()); 2 * n + 1];
            let chk = verify_heisenberg(&basis, &HeisenbergStructure::standard(n), &origin)?;
            rep.check(format!("n{n}/connection is Heisenberg"), chk.ok(), || message(format!("{chk:?}")));
            let zh = centralizer(&basis, max_level);
            let listed = listed_centralizer(n);
            rep.check(format!("n{n}/centralizer equals listed span"), zh.len() == listed.len() && same_span(&zh, &listed), || {
                Value::Array(zh.iter().map(field_value).collect())
            });
            let log_lambda = Q::new(1.into(), 3.into());
            match find_dilation(&basis, log_lambda.clone(), max_level) {
                Ok(d) => {
                    let e = d.field();
                    let d_count = basis.len() - 1;
                    for (i, x) in basis.iter().enumerate() {
                        let w = if i == d_count { q(2) } else { q(1) };
                        let res = &e.lie_bracket(x) - &x.scale(&(&w * &log_lambda));
                        rep.check_zero(format!("n{n}/dilation of connection field {}", i + 1), &res);
                    }
                    let center = PolyVectorField::partial(n, 2 * n);
                    for (i, y) in listed.iter().enumerate() {
                        let w = if i == listed.len() - 1 { q(2) } else { q(1) };
                        let res = &e.lie_bracket(y) - &y.scale(&(&w * &log_lambda));
                        let ok = res.is_zero() || crate::gradedpoly::in_span(std::slice::from_ref(&center), &res);
                        rep.check(format!("n{n}/dilation of centralizer field {}", i + 1), ok, || field_value(&res));
                    }
                    rep.check_zero(format!("n{n}/unit dilation is the Euler field"), &(&d.unit - &PolyVectorField::euler(n)));
                }
                Err(err) => rep.fail(format!("n{n}/dilation exists"), message(err.to_string())),
            }
        }
        Ok(())
    })
}

/// `Theta iota0 = iota0` on `n^-` and the two normalized bracket identities.
pub fn theta_suite(ns: &[usize], timing: bool) -> Result<SuiteReport> {
    timed("theta", timing, |rep| {
        for &n in ns {
            let plus = GradedLieHom::standard(n, Domain::NPlus);
            let hom = verify_graded_hom(&plus);
            rep.check(format!("n{n}/iota0 on n+ is a graded hom"), hom.is_hom(), || message(format!("{hom:?}")));
            let th = theta(&plus)?;
            let minus = GradedLieHom::standard(n, Domain::NMinus);
            for (b, x) in &th.images {
                rep.check_zero(format!("n{n}/Theta iota0 {b}"), &(x - &minus.images[b]));
            }
            let report = verify_normalized_bracket_identities(&plus)?;
            if report.precondition_holds() {
                for id in &report.identities {
                    rep.check_zero(format!("n{n}/{}", id.name), &id.residual);
                }
            } else {
                rep.fail(format!("n{n}/normalization precondition"), message(format!("{:?}", report.precondition_failures)));
            }
        }
        Ok(())
    })
}

/// Linearized uniqueness system on level +2 fields.
pub fn kernel_suite(ns: &[usize], timing: bool) -> Result<SuiteReport> {
    timed("kernel", timing, |rep| {
        for &n in ns {
            let full = final_kernel(n);
            rep.check(format!("n{n}/kernel is trivial"), full.kernel.is_empty(), || {
                serde_json::json!({
                    "unknowns": full.unknowns,
                    "rank": full.rank,
                    "kernel": full.kernel.iter().map(field_value).collect::<Vec<_>>(),
                })
            });
            for (name, which) in [
                ("without mixed equations", KernelEquations { commutes_with_f_minus: true, mixed: false }),
                ("without commutation equation", KernelEquations { commutes_with_f_minus: false, mixed: true }),
            ] {
                let k = final_kernel_with(n, which);
                rep.check(format!("n{n}/kernel grows {name}"), k.kernel.len() > full.kernel.len(), || {
                    serde_json::json!({ "full": full.kernel.len(), "reduced": k.kernel.len() })
                });
            }
        }
        Ok(())
    })
}
