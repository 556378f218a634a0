use clap::{Subcommand, ValueEnum};
use npa_core::ad::{
    ad_operator, classify_with, ev_discover, orbit_profile, partner_probe, subspace_bases_with, tensor_theorem_check,
    AdQuery, EvStatus, Grade, Label, RelationStatus, TheoremKind, TypeVerdict,
};
use npa_core::algebra::{Degree, Element, Hom};
use npa_core::gr::gr_commutative;
use npa_core::growth::{gk_profile, independence_probe, Independence};
use npa_core::linalg::Rat;
use npa_core::localization::{loc_torsion_check, TorsionOutcome};
use npa_core::par::Exec;
use npa_core::span::leading_echelon;
use npa_core::tensor::TensorAlgebraSpec;
use serde_json::{json, Value};

use crate::context::{parse_algebra, Context};
use crate::expr::{parse_element, parse_value, Value as Parsed};
use crate::report::{Payload, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "theta_F")]
    ThetaF,
    #[value(name = "gamma_F")]
    GammaF,
    #[value(name = "gamma_lambda")]
    GammaLambda,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Type of an element among the eight classes, with evidence.
    Classify {
        #[arg(long)]
        expr: String,
    },
    /// Basis of the centralizer slice C(z) in degrees <= N.
    Centralizer {
        #[arg(long)]
        expr: String,
    },
    /// Rational eigenvalues of ad_z on the invariant slice.
    Eigen {
        #[arg(long)]
        expr: String,
    },
    /// Degrees of ad_z^m(x) for m = 0..steps.
    Orbit {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        of: String,
        /// Defaults to M.
        #[arg(long)]
        steps: Option<u32>,
    },
    /// Slice check of a tensor product decomposition of F; --algebra is the left factor.
    TensorCheck {
        #[arg(long, value_enum)]
        kind: TheoremArg,
        /// z1, in the left factor.
        #[arg(long)]
        left: String,
        /// z2, in the right factor.
        #[arg(long)]
        right: String,
        /// Eigenvalue for gamma_lambda.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        /// Algebra of the right factor (defaults to --algebra).
        #[arg(long)]
        right_algebra: Option<String>,
    },
    /// Dimensions of V^n for V spanned by the generators.
    Gk {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        /// Print n,dim,slope rows instead of a report.
        #[arg(long)]
        csv: bool,
    },
    /// Right linear independence of b*w^i over a basis.
    Indep {
        #[arg(long)]
        w: String,
        #[arg(long = "basis")]
        basis: Vec<String>,
        /// Use the nilpotent slice N(z) in degrees <= N as the basis.
        #[arg(long)]
        over_nil: Option<String>,
        #[arg(long, default_value_t = 4)]
        imax: u32,
    },
    /// Bracket in a localized algebra.
    Locbracket {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Torsion membership of a localized element under ad_z.
    LocTorsion {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        probe: String,
        /// Defaults to M.
        #[arg(long)]
        steps: Option<u32>,
    },
    /// Whether the graded bracket vanishes, swept up to degree N.
    GrCheck,
    /// Some w of degree <= N with {z, w} = 1.
    Partner {
        #[arg(long)]
        expr: String,
    },
    /// Classify z and its image under the homomorphism given by generator images.
    HomClassify {
        #[arg(long)]
        expr: String,
        /// One per generator: p1..pn then q1..qn.
        #[arg(long = "image", required = true)]
        images: Vec<String>,
    },
}

pub struct Bounds {
    pub n: u32,
    pub m: u32,
}

type Run = Result<Report, String>;

fn element(src: &str, ctx: &Context) -> Result<Element, String> {
    parse_element(src, ctx).map_err(|e| format!("in '{src}': {e}"))
}

fn input<T>(r: npa_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn grade_str(g: Grade) -> &'static str {
    match g {
        Grade::Proven => "Proven",
        Grade::ConsistentUpToBound => "ConsistentUpToBound",
    }
}

fn degree_json(d: Degree) -> Value {
    match d {
        Degree::Finite(d) => d.into(),
        Degree::NegInf => Value::Null,
    }
}

fn strings(xs: &[Element]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn relation_json(r: &RelationStatus) -> Value {
    json!({
        "status": r.kind_name(),
        "bound": [r.bound_used.0, r.bound_used.1],
        "reason": r.reason,
        "witness": r.witness().map(|w| w.to_string()),
    })
}

fn verdict_json(v: &TypeVerdict) -> Value {
    let ev = match &v.ev_status {
        EvStatus::OnlyZeroFound => json!({ "nonzero": false }),
        EvStatus::NonzeroWitness { lambda, x } => {
            json!({ "nonzero": true, "lambda": lambda.to_string(), "witness": x.to_string() })
        }
    };
    json!({
        "label": v.label.as_str(),
        "grade": grade_str(v.grade),
        "relations": {
            "C_N": relation_json(&v.rel_cn),
            "N_F": relation_json(&v.rel_nf),
            "D_F": relation_json(&v.rel_df),
            "F_P": relation_json(&v.rel_fp),
        },
        "eigenvalues": ev,
        "notes": v.notes,
    })
}

fn verdict_lines(r: &mut Report, v: &TypeVerdict) {
    r.line(format!("type: {} ({})", v.label, grade_str(v.grade)));
    for (name, rel) in [("C ⊆ N", &v.rel_cn), ("N ⊆ F", &v.rel_nf), ("D ⊆ F", &v.rel_df), ("F ⊆ P", &v.rel_fp)] {
        match rel.witness() {
            Some(w) => r.line(format!("{name}: {} ({w})", rel.kind_name())),
            None => r.line(format!("{name}: {} ({})", rel.kind_name(), rel.reason)),
        }
    }
    for n in &v.notes {
        r.line(format!("note: {n}"));
    }
}

fn classify_at(z: &Element, b: &Bounds) -> Result<TypeVerdict, String> {
    let q = input(AdQuery::new(z, b.n, b.m))?;
    input(classify_with(&q, Exec::default()))
}

fn base(command: &'static str, kind: Payload, ctx: &Context, b: &Bounds) -> Report {
    Report::new(command, kind).query("algebra", ctx.name.clone()).bound("N", b.n).bound("M", b.m)
}

pub fn run(cmd: &Command, algebra: &str, b: &Bounds) -> Run {
    let ctx = parse_algebra(algebra)?;
    match cmd {
        Command::Classify { expr } => {
            let z = element(expr, &ctx)?;
            let v = classify_at(&z, b)?;
            let mut r = base("classify", Payload::Verdict, &ctx, b).query("expr", z.to_string());
            r.payload = verdict_json(&v);
            r.evidence_grade = grade_str(v.grade);
            if v.label == Label::Undetermined {
                r.warnings.push("type not determined at these bounds".into());
            }
            verdict_lines(&mut r, &v);
            Ok(r)
        }
        Command::Centralizer { expr } => {
            let z = element(expr, &ctx)?;
            let op = ad_operator(&z, b.n, Exec::default());
            let kernel: Vec<Element> = op.matrix.kernel_basis().iter().map(|v| op.source.from_coords(v)).collect();
            let basis = input(leading_echelon(&ctx.alg, &kernel))?;
            let mut r = base("centralizer", Payload::Bases, &ctx, b).query("expr", z.to_string());
            r.payload = json!({ "C": strings(&basis), "dim": basis.len(), "slice_dim": op.source.len() });
            r.line(format!("dim C ∩ P_<={} = {} of {}", b.n, basis.len(), op.source.len()));
            for x in &basis {
                r.line(x.to_string());
            }
            Ok(r)
        }
        Command::Eigen { expr } => {
            let z = element(expr, &ctx)?;
            let s = input(ev_discover(&z, b.n))?;
            let mut r = base("eigen", Payload::Verdict, &ctx, b).query("expr", z.to_string());
            let evs: Vec<Value> = s
                .ev_found
                .iter()
                .map(|e| json!({ "lambda": e.lambda.to_string(), "multiplicity": e.multiplicity, "witness": e.witness.to_string() }))
                .collect();
            r.payload = json!({ "eigenvalues": evs, "irrational_flag": s.irrational_flag, "char_poly": s.char_poly.to_string() });
            for e in &s.ev_found {
                r.line(format!("{} (multiplicity {}): {}", e.lambda, e.multiplicity, e.witness));
            }
            if s.irrational_flag {
                r.warnings.push("the characteristic polynomial has factors without rational roots".into());
            }
            Ok(r)
        }
        Command::Orbit { expr, of, steps } => {
            let z = element(expr, &ctx)?;
            let x = element(of, &ctx)?;
            let steps = steps.unwrap_or(b.m);
            let profile = input(orbit_profile(&z, &x, steps))?;
            let mut r = Report::new("orbit", Payload::Profile)
                .query("algebra", ctx.name.clone())
                .query("expr", z.to_string())
                .query("of", x.to_string())
                .bound("steps", steps);
            let closed = profile.iter().position(|d| *d == Degree::NegInf);
            r.payload = json!({ "degrees": profile.iter().map(|&d| degree_json(d)).collect::<Vec<_>>(), "vanishes_at": closed });
            if closed.is_some() {
                r.evidence_grade = "Proven";
            }
            let shown: Vec<String> = profile
                .iter()
                .map(|d| d.finite().map_or("-inf".into(), |d| d.to_string()))
                .collect();
            r.line(format!("degrees: {}", shown.join(" ")));
            Ok(r)
        }
        Command::TensorCheck { kind, left, right, lambda, right_algebra } => {
            let rctx = match right_algebra {
                Some(s) => parse_algebra(s)?,
                None => ctx.clone(),
            };
            let spec = input(TensorAlgebraSpec::new(&ctx.alg, &rctx.alg))?;
            let z1 = element(left, &ctx)?;
            let z2 = element(right, &rctx)?;
            let kind = match kind {
                TheoremArg::ThetaF => TheoremKind::ThetaF,
                TheoremArg::GammaF => TheoremKind::GammaF,
                TheoremArg::GammaLambda => {
                    TheoremKind::GammaLambda(lambda.parse::<Rat>().map_err(|_| format!("bad eigenvalue '{lambda}'"))?)
                }
            };
            let c = input(tensor_theorem_check(kind.clone(), &spec, &z1, &z2, b.n))?;
            let mut r = Report::new("tensor-check", Payload::Verdict)
                .query("algebra", format!("tensor({},{})", ctx.name, rctx.name))
                .query("kind", kind.to_string())
                .query("left", z1.to_string())
                .query("right", z2.to_string())
                .bound("N", b.n);
            r.payload = json!({
                "passed": c.passed,
                "composite": c.composite.to_string(),
                "left_dim": c.left_dim,
                "right_dim": c.right_dim,
                "union_dim": c.union_dim,
            });
            r.line(format!("{}: {}", kind, if c.passed { "pass" } else { "FAIL" }));
            r.line(format!("composite {}", c.composite));
            r.line(format!("dims: left {}, right {}, union {}", c.left_dim, c.right_dim, c.union_dim));
            r.check_failed = !c.passed;
            Ok(r)
        }
        Command::Gk { gens, nmax, csv } => {
            let gens: Vec<Element> = gens.iter().map(|g| element(g, &ctx)).collect::<Result<_, _>>()?;
            let g = input(gk_profile(&gens, *nmax))?;
            let mut r = Report::new("gk", Payload::Profile)
                .query("algebra", ctx.name.clone())
                .query("gens", strings(&gens))
                .bound("n_max", *nmax);
            r.payload = json!({
                "dims": g.dims,
                "slopes": g.slope_estimates,
                "ratios": g.ratio_estimates,
                "gk_estimate": g.gk_estimate,
            });
            r.line(format!("dims: {:?}", g.dims));
            if let Some(s) = g.gk_estimate {
                r.line(format!("growth exponent estimate: {s:.4}"));
            }
            if *csv {
                r.raw = Some(g.to_csv());
            }
            Ok(r)
        }
        Command::Indep { w, basis, over_nil, imax } => {
            let wv = element(w, &ctx)?;
            let mut r = base("indep", Payload::Verdict, &ctx, b).query("w", wv.to_string()).bound("i_max", *imax);
            let b_basis: Vec<Element> = match over_nil {
                Some(z) => {
                    let z = element(z, &ctx)?;
                    let q = input(AdQuery::new(&z, b.n, b.m))?;
                    let rep = input(subspace_bases_with(&q, Exec::default()))?;
                    if !rep.n_stabilized {
                        r.warnings.push("nilpotent slice did not stabilize within M".into());
                    }
                    r = r.query("over_nil", z.to_string());
                    input(leading_echelon(&ctx.alg, rep.n_basis()))?
                }
                None if basis.is_empty() => return Err("indep needs --basis or --over-nil".into()),
                None => basis.iter().map(|x| element(x, &ctx)).collect::<Result<_, _>>()?,
            };
            r = r.query("basis", strings(&b_basis));
            match input(independence_probe(&wv, &b_basis, *imax))? {
                Independence::IndependentUpTo(i) => {
                    r.payload = json!({ "independent_up_to": i });
                    r.line(format!("b*w^i independent for i <= {i}"));
                }
                Independence::DependenceWitness { coefficients } => {
                    r.payload = json!({ "dependence": strings(&coefficients) });
                    r.line(format!("relation with coefficients {}", strings(&coefficients).join(", ")));
                    r.evidence_grade = "Proven";
                }
            }
            Ok(r)
        }
        Command::Locbracket { left, right } => {
            if ctx.loc.is_none() {
                return Err(format!("locbracket needs a localized algebra such as sympoly:1@loc=y, not {}", ctx.name));
            }
            let loc = |s: &str| match parse_value(s, &ctx) {
                Ok(Parsed::Loc(l)) => Ok(l),
                Ok(Parsed::Poly(_)) => unreachable!("localized contexts return localized values"),
                Err(e) => Err(format!("in '{s}': {e}")),
            };
            let (a, c) = (loc(left)?, loc(right)?);
            let br = input(a.bracket(&c))?;
            let show = |l| Parsed::Loc(l).to_string();
            let mut r = Report::new("locbracket", Payload::Verdict)
                .query("algebra", ctx.name.clone())
                .query("left", show(a))
                .query("right", show(c));
            r.payload = json!({ "bracket": show(br.clone()) });
            r.evidence_grade = "Proven";
            r.line(format!("bracket: {}", show(br)));
            Ok(r)
        }
        Command::LocTorsion { expr, probe, steps } => {
            let Some(g) = &ctx.loc else {
                return Err(format!("loc-torsion needs a localized algebra such as sympoly:1@loc=y, not {}", ctx.name));
            };
            let z = element(expr, &ctx)?;
            let Parsed::Loc(p) = parse_value(probe, &ctx).map_err(|e| format!("in '{probe}': {e}"))? else {
                unreachable!("localized contexts return localized values")
            };
            let steps = steps.unwrap_or(b.m);
            let v = classify_at(&z, b)?;
            let c = input(loc_torsion_check(&z, &v, &p, steps))?;
            let mut r = base("loc-torsion", Payload::Verdict, &ctx, b)
                .query("expr", z.to_string())
                .query("probe", Parsed::Loc(p).to_string())
                .bound("steps", steps);
            let outcome = match &c.outcome {
                TorsionOutcome::MemberCertificate { steps } => {
                    r.line(format!("member: ad_z^{steps} vanishes"));
                    r.evidence_grade = "Proven";
                    json!({ "member": true, "steps": steps })
                }
                TorsionOutcome::NonMemberEvidence { profile } => {
                    let rows: Vec<Value> = profile.iter().map(|&(d, k)| json!([degree_json(d), k])).collect();
                    let shown: Vec<String> = profile
                        .iter()
                        .map(|(d, k)| format!("({},{k})", d.finite().map_or("-inf".into(), |d| d.to_string())))
                        .collect();
                    r.line(format!("no vanishing within {steps} steps; (numerator degree, denominator exponent): {}", shown.join(" ")));
                    json!({ "member": false, "profile": rows })
                }
            };
            r.payload = json!({
                "outcome": outcome,
                "predicted_member": c.predicted_member,
                "premise_holds": c.premise_holds,
                "consistent": c.consistent,
                "type": v.label.as_str(),
                "denominator": g.to_string(),
            });
            r.line(format!("predicted member: {}, consistent: {}", c.predicted_member, c.consistent));
            if !c.premise_holds {
                r.warnings.push(format!("{z} is not known to be strict, so the prediction has no premise"));
            }
            r.check_failed = !c.consistent;
            Ok(r)
        }
        Command::GrCheck => {
            let cert = gr_commutative(&ctx.alg, b.n);
            let mut r = Report::new("gr-check", Payload::Verdict).query("algebra", ctx.name.clone()).bound("N", b.n);
            r.payload = json!({
                "commutative": cert.commutative,
                "delta": cert.delta,
                "sweep_passed": cert.sweep_passed,
                "pairs_checked": cert.pairs_checked,
            });
            // delta >= 1 settles commutativity; a failing pair refutes it
            if cert.delta.is_none_or(|d| d >= 1) || !cert.sweep_passed {
                r.evidence_grade = "Proven";
            }
            let delta = cert.delta.map_or("none".into(), |d| d.to_string());
            r.line(format!("graded bracket vanishes: {} (delta {delta}, {} pairs swept)", cert.commutative, cert.pairs_checked));
            Ok(r)
        }
        Command::Partner { expr } => {
            let z = element(expr, &ctx)?;
            let w = input(partner_probe(&z, b.n))?;
            let mut r = base("partner", Payload::Verdict, &ctx, b).query("expr", z.to_string());
            r.payload = json!({ "partner": w.as_ref().map(ToString::to_string) });
            match &w {
                Some(w) => {
                    r.evidence_grade = "Proven";
                    r.line(format!("{{z, {w}}} = 1"));
                }
                None => r.line(format!("no partner of degree <= {}", b.n)),
            }
            Ok(r)
        }
        Command::HomClassify { expr, images } => {
            let z = element(expr, &ctx)?;
            let imgs: Vec<Element> = images.iter().map(|x| element(x, &ctx)).collect::<Result<_, _>>()?;
            let hom = input(Hom::new(&ctx.alg, imgs.clone()))?;
            let image = input(hom.apply(&z))?;
            let before = classify_at(&z, b)?;
            let after = classify_at(&image, b)?;
            let invariant = before.label == after.label;
            let mut r = base("hom-classify", Payload::Verdict, &ctx, b)
                .query("expr", z.to_string())
                .query("images", strings(&imgs));
            r.payload = json!({
                "image": image.to_string(),
                "before": verdict_json(&before),
                "after": verdict_json(&after),
                "invariant": invariant,
            });
            if before.grade == Grade::Proven && after.grade == Grade::Proven {
                r.evidence_grade = "Proven";
            }
            r.line(format!("{z}: {} ({})", before.label, grade_str(before.grade)));
            r.line(format!("{image}: {} ({})", after.label, grade_str(after.grade)));
            r.check_failed = !invariant;
            Ok(r)
        }
    }
}
