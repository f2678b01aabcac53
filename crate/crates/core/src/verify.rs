//! Acceptance suites shared by `opclosure verify` and the `acceptance` test.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cardinal::{Cardinal, SignedIndex};
use crate::descriptor::OperatorDescriptor;
use crate::fredholm::{self, IdealHandle, IndexRegionQuery};
use crate::orbit::{self, Condition};
use crate::universe;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({}; {:.2} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub fn run(suite: Suite) -> Vec<CriterionReport> {
    use crate::matrix::verify as numeric;
    let symbolic = suite != Suite::Numeric;
    let numeric_on = suite != Suite::Symbolic;
    let mut out = Vec::new();
    if symbolic {
        out.push(timed(
            1,
            "closure decider agrees with the lambda-inclusion oracle",
            dual_characterization,
        ));
        out.push(timed(
            2,
            "index identities and reductions",
            index_identities,
        ));
        out.push(timed(3, "index-region geography", index_geography));
    }
    if numeric_on {
        out.push(timed(
            4,
            "two-sided invertible orbits of matrices",
            numeric::gg_quantitative,
        ));
        out.push(timed(
            5,
            "one-sided unitary orbit witnesses",
            numeric::unitary_right,
        ));
        out.push(timed(6, "two-sided unitary distance", numeric::uu_mirsky));
        out.push(timed(
            7,
            "right invertible orbits and dominated positives",
            numeric::g_right_and_lplus,
        ));
    }
    out.push(timed(8, "ideals and rank semicontinuity", || {
        let mut o = Outcome::default();
        if symbolic {
            o.merge(ideal_laws());
        }
        if numeric_on {
            o.merge(numeric::rank_semicontinuity());
        }
        o
    }));
    out.push(timed(9, "round-trips and deterministic output", || {
        let mut o = Outcome::default();
        if symbolic {
            o.merge(descriptor_round_trip());
        }
        if numeric_on {
            o.merge(numeric::matrix_round_trip());
        }
        o.merge(cli_determinism());
        o
    }));
    out
}

pub(crate) fn timed(
    id: u8,
    name: &'static str,
    check: impl FnOnce() -> Outcome,
) -> CriterionReport {
    let start = Instant::now();
    let outcome = check();
    CriterionReport {
        id,
        name,
        passed: outcome.failures.is_empty(),
        detail: outcome.summary(),
        elapsed: start.elapsed(),
    }
}

/// Result of one check: how many cases ran and a few failure descriptions.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub cases: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub note: Option<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 3 {
                self.failures.push(describe());
            }
        }
    }

    pub fn merge(&mut self, other: Outcome) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < 3 {
                self.failures.push(f);
            }
        }
    }

    fn summary(&self) -> String {
        let mut s = format!("{} cases, {} violations", self.cases, self.failure_count);
        if let Some(note) = &self.note {
            s.push_str(", ");
            s.push_str(note);
        }
        for f in &self.failures {
            s.push_str("; e.g. ");
            s.push_str(f);
        }
        s
    }
}

fn pairs_by_space(descs: &[OperatorDescriptor]) -> Vec<(&OperatorDescriptor, &OperatorDescriptor)> {
    universe::by_spaces(descs)
        .into_values()
        .flat_map(|g| {
            let g2 = g.clone();
            g.into_iter()
                .flat_map(move |a| g2.clone().into_iter().map(move |c| (a, c)))
        })
        .collect()
}

fn dual_characterization() -> Outcome {
    let descs = universe::descriptors();
    let pairs = pairs_by_space(&descs);
    let start = Instant::now();
    let mut outcome = pairs
        .par_chunks(4096)
        .map(|chunk| {
            let mut o = Outcome::default();
            for (a, c) in chunk {
                let theorem = orbit::closure_gg_contains(a, c)
                    .expect("same spaces")
                    .member;
                let u = orbit::adequate_universe(&[a, c]);
                let oracle = orbit::closure_gg_contains_via_lambda(a, c, &u);
                o.check(theorem == oracle, || {
                    format!("A = {a}, C = {c}: {theorem} vs {oracle}")
                });
            }
            o
        })
        .reduce(Outcome::default, |mut x, y| {
            x.merge(y);
            x
        });
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        outcome.check(false, || {
            format!("took {:.1} s, limit 60 s", elapsed.as_secs_f64())
        });
    }
    outcome
}

fn index_identities() -> Outcome {
    let descs = universe::descriptors();
    let mut o = Outcome::default();
    for a in &descs {
        let idx = a.indices();
        let adj = a.adjoint().indices();
        o.check(
            adj.iota_i == idx.iota_f
                && adj.iota_f == idx.iota_i
                && adj.iota_r == idx.iota_r
                && adj.iota_b == idx.iota_b,
            || format!("adjoint indices of {a}"),
        );
        o.check(
            idx.iota_i.add(&idx.iota_r) == a.dim_h() && idx.iota_f.add(&idx.iota_r) == a.dim_k(),
            || format!("dimension identity for {a}"),
        );
        let aleph_0 = Cardinal::aleph_0();
        if a.dim_h() == aleph_0 && a.dim_k() == aleph_0 && !a.profile().ic().is_zero() {
            o.check(idx.iota_i == aleph_0 && idx.iota_f == aleph_0, || {
                format!("separable nonclosed range {a}")
            });
        }
        if a.is_square() && idx.ind().is_defined() {
            o.check(idx.iota_b == 1, || {
                format!("defined index with binary index 0: {a}")
            });
        }
    }
    let reps = universe::index_representatives(&descs);
    for (a, c) in pairs_by_space(&reps) {
        let (ia, ic) = (a.indices(), c.indices());
        let verdict = orbit::closure_gg_contains(a, c).expect("same spaces");
        let ab = !matches!(
            verdict.failed,
            Some(Condition::RangeIndex | Condition::BinaryIndex)
        );
        o.check(ab == (ic.iota_big_r() <= ia.iota_big_r()), || {
            format!("rank reduction for A = {a}, C = {c}")
        });
        let general = orbit::condition_c_solutions(&ia, &ic);
        if a.dim_h() != a.dim_k() {
            o.check(!general.is_empty() == (ic.iota_m() >= ia.iota_m()), || {
                format!("iota_m reduction for A = {a}, C = {c}")
            });
        }
        if ic.iota_i == c.dim_h() && ic.iota_f == c.dim_k() {
            o.check(general.contains(&ia.iota_r), || {
                format!("shortcut witness for A = {a}, C = {c}")
            });
        }
    }
    o
}

/// Closed-range operator with `ι_r = dim H` that is injective or onto, of index `γ`.
fn region_generator(dim: &Cardinal, gamma: &SignedIndex) -> OperatorDescriptor {
    let (nullity, codefect) = match gamma {
        SignedIndex::Plus(n) => (n.clone(), Cardinal::ZERO),
        SignedIndex::Minus(n) => (Cardinal::ZERO, n.clone()),
        SignedIndex::Undefined => unreachable!("regions have a defined index"),
    };
    OperatorDescriptor::new(
        nullity,
        codefect,
        crate::profile::RangeProfile::closed(dim.clone()),
    )
}

fn gammas(dim: &Cardinal) -> Vec<SignedIndex> {
    let mut out = vec![SignedIndex::ZERO];
    for m in ["1", "2", "3", "aleph_0", "aleph_1", "aleph_w"] {
        let m: Cardinal = m.parse().unwrap();
        if m <= *dim {
            out.push(SignedIndex::Plus(m.clone()));
            out.push(SignedIndex::negative(m));
        }
    }
    out
}

/// The extended-index picture reformulating the closure theorem on one space.
fn cor_orbit_casework(a: &OperatorDescriptor, b: &OperatorDescriptor) -> bool {
    let (ia, ib) = (a.indices(), b.indices());
    let rank_ok = ib.iota_r <= ia.iota_r;
    match ia.ind() {
        SignedIndex::Undefined => {
            !ib.ind().is_defined()
                && rank_ok
                && !(ia.iota_b == 0 && ib.iota_b == 1 && ib.iota_r >= ia.iota_r)
                && ib.iota_m() >= ia.iota_m()
        }
        gamma => {
            let size = gamma.magnitude().expect("defined");
            (ib.ind() == gamma && rank_ok && ib.iota_m() >= ia.iota_m())
                || (!ib.ind().is_defined() && rank_ok && ib.iota_m() >= size)
        }
    }
}

fn index_geography() -> Outcome {
    let descs = universe::descriptors();
    let reps = universe::index_representatives(&descs);
    let mut o = Outcome::default();
    for a in reps
        .iter()
        .filter(|a| a.is_square() && a.dim_h().is_infinite())
    {
        let dim = a.dim_h();
        let q = |g: SignedIndex| IndexRegionQuery::new(g, dim.clone()).expect("valid gamma");
        let uind = fredholm::uind_member(a).unwrap();
        let cl0 = fredholm::ind_closure_member(a, &q(SignedIndex::ZERO)).unwrap();
        let cl1 =
            fredholm::ind_closure_member(a, &q(SignedIndex::Plus(Cardinal::finite(1)))).unwrap();
        o.check(uind == (cl0 && cl1), || {
            format!("Uind vs closures of Ind_0, Ind_1 at {a}")
        });

        let mut regions = 0;
        for gamma in gammas(&dim) {
            let query = q(gamma.clone());
            let region = fredholm::ind_region_member(a, &query).unwrap();
            let closure = fredholm::ind_closure_member(a, &query).unwrap();
            let boundary = fredholm::ind_boundary_member(a, &query).unwrap();
            regions += usize::from(region);
            o.check(!(region && boundary), || {
                format!("region meets boundary at {a}, gamma {gamma}")
            });
            o.check((region || boundary) == closure, || {
                format!("closure split at {a}, gamma {gamma}")
            });
            // The closure of Ind_γ is the orbit closure of a one-sided invertible of index γ.
            let z = region_generator(&dim, &gamma);
            let via_orbit = orbit::closure_gg_contains(&z, a).unwrap().member;
            o.check(via_orbit == closure, || {
                format!("closure of Ind_{gamma} at {a}")
            });
        }
        let expected = usize::from(a.ind().is_defined());
        o.check(regions == expected, || {
            format!("{a} lies in {regions} index regions")
        });
    }
    for (a, b) in pairs_by_space(&reps)
        .into_iter()
        .filter(|(a, _)| a.is_square())
    {
        let theorem = orbit::closure_gg_contains(a, b).unwrap().member;
        let cases = cor_orbit_casework(a, b);
        o.check(theorem == cases, || {
            format!("casework for A = {a}, B = {b}: {theorem} vs {cases}")
        });
    }
    o
}

fn ideal_laws() -> Outcome {
    let aleph_1 = Cardinal::aleph(1);
    let descs: Vec<_> = universe::descriptors()
        .into_iter()
        .filter(|d| d.dim_h() == aleph_1 && d.dim_k() == aleph_1)
        .collect();
    let alphas = [Cardinal::aleph_0(), aleph_1.clone()];
    let ideals: Vec<IdealHandle> = alphas
        .iter()
        .map(|al| IdealHandle::new(al.clone(), aleph_1.clone()).unwrap())
        .collect();
    let mut o = Outcome::default();
    for a in &descs {
        let compact_ideal = fredholm::ideal_member(a, &ideals[0]).unwrap();
        o.check(compact_ideal == a.is_compact(), || {
            format!("compact ideal at {a}")
        });
    }
    for ja in &ideals {
        for jb in &ideals {
            let contained = descs.iter().all(|a| {
                !fredholm::ideal_member(a, ja).unwrap() || fredholm::ideal_member(a, jb).unwrap()
            });
            let order = fredholm::ideal_compare(ja, jb).unwrap();
            o.check(contained == order.is_le(), || {
                format!(
                    "J_{} in J_{}: {contained}, order {order:?}",
                    ja.alpha(),
                    jb.alpha()
                )
            });
        }
    }
    o
}

fn descriptor_round_trip() -> Outcome {
    let descs = universe::descriptors();
    let mut o = Outcome::default();
    // Spread 1,000 picks across the whole universe.
    let step = (descs.len() / 1000).max(1);
    for a in descs.iter().step_by(step).take(1000) {
        let text = a.to_json();
        let back = OperatorDescriptor::from_json(&text);
        o.check(
            back.as_ref().is_ok_and(|b| b == a && b.to_json() == text),
            || format!("round-trip of {text}"),
        );
    }
    o
}

/// Runs a fixed set of CLI invocations twice and compares the bytes.
fn cli_determinism() -> Outcome {
    use crate::matrix::ComplexMatrix;
    let mut o = Outcome::default();
    let dir = std::env::temp_dir().join(format!("opclosure-determinism-{}", std::process::id()));
    let files = [
        (
            "shift.json",
            OperatorDescriptor::unilateral_shift().to_json(),
        ),
        (
            "id.json",
            OperatorDescriptor::identity(Cardinal::aleph_0()).to_json(),
        ),
        (
            "compact.json",
            OperatorDescriptor::compact_diagonal().to_json(),
        ),
        ("a.json", ComplexMatrix::diag(&[1.0, 0.0, 0.0]).to_json()),
        ("b.json", ComplexMatrix::diag(&[2.0, 1.0, 0.5]).to_json()),
        ("c.txt", ComplexMatrix::diag(&[0.5, 0.25, 0.0]).to_string()),
    ];
    let written = std::fs::create_dir_all(&dir).and_then(|_| {
        files
            .iter()
            .try_for_each(|(name, text)| std::fs::write(dir.join(name), text))
    });
    if let Err(e) = written {
        o.check(false, || format!("cannot write scratch files: {e}"));
        return o;
    }
    let f = |name: &str| dir.join(name).display().to_string();
    let commands: Vec<Vec<String>> = vec![
        vec!["idx".into(), f("shift.json")],
        vec![
            "orbit".into(),
            "contains".into(),
            "--group".into(),
            "gg".into(),
            "--A".into(),
            f("id.json"),
            "--B".into(),
            f("compact.json"),
        ],
        vec![
            "lambda".into(),
            "enum".into(),
            "--A".into(),
            f("shift.json"),
        ],
        vec![
            "fredholm".into(),
            "closure".into(),
            "--A".into(),
            f("compact.json"),
            "--gamma".into(),
            "-1".into(),
        ],
        vec!["matrix".into(), "indices".into(), "--A".into(), f("c.txt")],
        vec![
            "matrix".into(),
            "distance".into(),
            "--group".into(),
            "gg".into(),
            "--A".into(),
            f("a.json"),
            "--B".into(),
            f("b.json"),
        ],
        vec![
            "matrix".into(),
            "approx".into(),
            "--A".into(),
            f("b.json"),
            "--B".into(),
            f("c.txt"),
        ],
        vec![
            "matrix".into(),
            "sample".into(),
            "--group".into(),
            "gg".into(),
            "--A".into(),
            f("b.json"),
            "--B".into(),
            f("c.txt"),
            "--samples".into(),
            "200".into(),
            "--seed".into(),
            "7".into(),
        ],
        vec![
            "matrix".into(),
            "sample".into(),
            "--group".into(),
            "uu".into(),
            "--A".into(),
            f("a.json"),
            "--B".into(),
            f("b.json"),
            "--samples".into(),
            "200".into(),
            "--seed".into(),
            "7".into(),
        ],
        vec![
            "orbit".into(),
            "contains".into(),
            "--group".into(),
            "ur".into(),
            "--matrix".into(),
            "--A".into(),
            f("b.json"),
            "--B".into(),
            f("b.json"),
        ],
    ];
    for args in &commands {
        let argv = || std::iter::once("opclosure".to_string()).chain(args.iter().cloned());
        let (first, second) = (crate::cli::run(argv()), crate::cli::run(argv()));
        o.check(first.code == 0, || {
            format!(
                "`{}` exited {}: {}",
                args.join(" "),
                first.code,
                first.stderr.trim()
            )
        });
        o.check(first == second, || {
            format!("`{}` differs between runs", args.join(" "))
        });
    }
    std::fs::remove_dir_all(&dir).ok();
    o
}
