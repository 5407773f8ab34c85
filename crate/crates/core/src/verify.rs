//! Suite runner: configuration, seeded sampling and canonical JSON reports.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bvcomplex::{b, c, element_json, project_fc, project_g, q, random_element, random_inhomogeneous, odd_pairing, BVElement};
use crate::bvops::{
    bracket, cyclic_sign_residual, homotopy_associativity_residual, homotopy_commutativity_residual, l3_b_derivation_residual,
    l3_jacobiator_residual, pentagon_residual, q_derivation_residual, relation_residual, relation_residual_with, shuffle_residual,
    Relation, SymmetrizedDouble,
};
use crate::deform::ym::{self, Calibration, LieElement};
use crate::deform::{random_matrix, EmbedArg, Embedding, FlatDeformation, MatrixField, SymmetrizedDeformation};
use crate::doublecopy::{self as dc, Bivector, DoubledScalar};
use crate::error::{AlgebraError, Result};
use crate::exterior::{random_ym, YmComplex, YmElement};
use crate::scalars::{
    format_rational, random_gauss, random_nonzero_gauss, random_scalar, sample_rng, Coeff, FourierScalar,
    GaussRational, Metric,
};
use crate::sections::{courant_axiom_residuals, cy_axiom_residuals, dorfman, random_section, GenSection};

pub const SUITES: [&str; 11] =
    ["courant", "bvcomplex", "bvlz", "cinf", "cyclic", "linf", "deform", "ym", "exterior", "cbracket", "doublecopy"];

/// At most this many witnesses are stored per identity.
pub const MAX_WITNESSES: usize = 3;

/// Rank-one samples used to fit the Yang–Mills calibration.
pub const CALIBRATION_SAMPLES: u64 = 4;

/// Run parameters. `metric` holds `eta^{ij}` as `p/q` strings; `None` means
/// `diag(1, ..., 1, -1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub dimension: usize,
    pub metric: Option<Vec<Vec<String>>>,
    pub mode_cutoff: i64,
    pub matrix_rank: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { dimension: 3, metric: None, mode_cutoff: 2, matrix_rank: 2, samples: 25, seed: 42 }
    }
}

fn config_err(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Config(msg.into())
}

impl Config {
    /// Parses a JSON object; absent keys take their defaults.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| config_err("config must be a JSON object"))?;
        let mut cfg = Config::default();
        let uint = |key: &str, x: &Value| x.as_u64().ok_or_else(|| config_err(format!("{key} must be a non-negative integer")));
        for (key, x) in obj {
            match key.as_str() {
                "dimension" => cfg.dimension = uint(key, x)? as usize,
                "mode_cutoff" => cfg.mode_cutoff = uint(key, x)? as i64,
                "matrix_rank" => cfg.matrix_rank = uint(key, x)? as usize,
                "samples" => cfg.samples = uint(key, x)?,
                "seed" => cfg.seed = uint(key, x)?,
                "metric" => {
                    let rows = x.as_array().ok_or_else(|| config_err("metric must be an array of rows"))?;
                    let mut out = Vec::new();
                    for row in rows {
                        let row = row.as_array().ok_or_else(|| config_err("metric rows must be arrays"))?;
                        let parsed = row
                            .iter()
                            .map(|e| match e {
                                Value::Number(n) => n
                                    .as_i64()
                                    .map(|n| n.to_string())
                                    .ok_or_else(|| config_err("metric numbers must be integers; use \"p/q\" strings")),
                                Value::String(s) => Ok(s.clone()),
                                _ => Err(config_err("metric entries must be integers or \"p/q\" strings")),
                            })
                            .collect::<Result<Vec<_>>>()?;
                        out.push(parsed);
                    }
                    cfg.metric = Some(out);
                }
                other => return Err(config_err(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| config_err(format!("bad JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn metric(&self) -> Result<Metric> {
        if self.dimension == 0 {
            return Err(config_err("dimension must be at least 1"));
        }
        let eta = match &self.metric {
            None => Metric::lorentzian(self.dimension),
            Some(rows) => Metric::from_strings(rows)?,
        };
        if eta.dim() != self.dimension {
            return Err(config_err(format!("metric is {0}x{0} but dimension is {1}", eta.dim(), self.dimension)));
        }
        Ok(eta)
    }

    /// Checks the invariants needed by `suite` and returns the metric.
    pub fn validate(&self, suite: &str) -> Result<Metric> {
        if !SUITES.contains(&suite) {
            return Err(AlgebraError::UnknownSuite(suite.into()));
        }
        let eta = self.metric()?;
        if self.samples == 0 {
            return Err(config_err("samples must be at least 1"));
        }
        if self.matrix_rank == 0 {
            return Err(config_err("matrix_rank must be at least 1"));
        }
        if suite == "exterior" {
            if self.dimension < 2 {
                return Err(config_err("the exterior suite needs dimension at least 2"));
            }
            eta.sqrt_abs_det()?;
        }
        if suite == "cbracket" && self.dimension < 2 {
            return Err(config_err("the cbracket suite needs dimension at least 2"));
        }
        Ok(eta)
    }

    /// Canonical echo with the metric spelled out.
    pub fn to_json(&self) -> Value {
        let metric = self.metric().map(|m| json!(m.to_strings())).unwrap_or(Value::Null);
        json!({
            "dimension": self.dimension,
            "metric": metric,
            "mode_cutoff": self.mode_cutoff,
            "matrix_rank": self.matrix_rank,
            "samples": self.samples,
            "seed": self.seed,
        })
    }
}

/// Outcome of one identity over all samples.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub anchor: String,
    pub samples: u64,
    pub failures: u64,
    pub witnesses: Vec<Value>,
}

impl IdentityRecord {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "anchor": self.anchor,
            "samples": self.samples,
            "failures": self.failures,
            "witnesses": self.witnesses,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub config: Config,
    pub identities: Vec<IdentityRecord>,
    pub calibration: Option<Calibration>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityRecord::passed)
    }

    pub fn identity(&self, id: &str) -> Option<&IdentityRecord> {
        self.identities.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite));
        m.insert("config".into(), self.config.to_json());
        m.insert("identities".into(), Value::Array(self.identities.iter().map(IdentityRecord::to_json).collect()));
        m.insert("passed".into(), json!(self.passed()));
        if let Some(cal) = &self.calibration {
            m.insert("calibration".into(), json!({"plus": gauss_string(&cal.plus), "minus": gauss_string(&cal.minus)}));
        }
        Value::Object(m)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// `p/q`, or `p/q+r/si` when the imaginary part is nonzero.
fn gauss_string(c: &GaussRational) -> String {
    if c.im.numer() == &0.into() {
        format_rational(&c.re)
    } else {
        format!("{}+{}i", format_rational(&c.re), format_rational(&c.im))
    }
}

/// A check returns `None` on success and a witness on failure.
type Check<'a> = Box<dyn Fn(&mut ChaCha8Rng) -> Option<Value> + Sync + 'a>;

struct Identity<'a> {
    id: String,
    anchor: &'static str,
    check: Check<'a>,
}

fn identity<'a>(id: impl Into<String>, anchor: &'static str, check: impl Fn(&mut ChaCha8Rng) -> Option<Value> + Sync + 'a) -> Identity<'a> {
    Identity { id: id.into(), anchor, check: Box::new(check) }
}

fn run_identities(suite: &str, cfg: &Config, ids: Vec<Identity<'_>>) -> Vec<IdentityRecord> {
    ids.into_par_iter()
        .map(|idn| {
            let full = format!("{suite}.{}", idn.id);
            let outcomes: Vec<Option<Value>> = (0..cfg.samples)
                .into_par_iter()
                .map(|s| (idn.check)(&mut sample_rng(cfg.seed, &full, s)).map(|w| json!({"sample_index": s, "residual_is_zero": false, "witness": w})))
                .collect();
            let fails: Vec<Value> = outcomes.into_iter().flatten().collect();
            IdentityRecord {
                id: full,
                anchor: idn.anchor.to_string(),
                samples: cfg.samples,
                failures: fails.len() as u64,
                witnesses: fails.into_iter().take(MAX_WITNESSES).collect(),
            }
        })
        .collect()
}

fn zero_or(ok: bool, witness: impl FnOnce() -> Value) -> Option<Value> {
    if ok {
        None
    } else {
        Some(witness())
    }
}

fn bv_check(r: BVElement, inputs: &[&BVElement]) -> Option<Value> {
    zero_or(r.is_zero(), || {
        json!({"inputs": inputs.iter().map(|x| element_json(x)).collect::<Vec<_>>(), "residual": element_json(&r)})
    })
}

fn scalars_json(v: &[FourierScalar]) -> Value {
    Value::Array(v.iter().map(FourierScalar::to_json).collect())
}

fn matrices_json(v: &[MatrixField]) -> Value {
    Value::Array(v.iter().map(MatrixField::to_json).collect())
}

fn lie_json(x: &LieElement) -> Value {
    json!({
        "u": x.u.to_json(),
        "A": {"vec": matrices_json(&x.a.vec), "form": matrices_json(&x.a.form)},
        "v": x.v.to_json(),
        "At": {"vec": matrices_json(&x.at.vec), "form": matrices_json(&x.at.form)},
        "vt": x.vt.to_json(),
        "ut": x.ut.to_json(),
    })
}

fn random_degrees(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..4)).collect()
}

/// Runs one suite. Errors are configuration errors only; identity failures
/// are recorded in the report.
pub fn run_suite(name: &str, cfg: &Config) -> Result<Report> {
    let eta = cfg.validate(name)?;
    let (identities, calibration) = match name {
        "courant" => (courant_suite(cfg), None),
        "bvcomplex" => (bvcomplex_suite(cfg), None),
        "bvlz" => (bvlz_suite(cfg), None),
        "cinf" => (cinf_suite(cfg), None),
        "cyclic" => (cyclic_suite(cfg), None),
        "linf" => (linf_suite(cfg), None),
        "deform" => deform_suite(cfg, &eta)?,
        "ym" => ym_suite(cfg, &eta)?,
        "exterior" => (exterior_suite(cfg, &eta)?, None),
        "cbracket" => (cbracket_suite(cfg, &eta), None),
        "doublecopy" => (doublecopy_suite(cfg), None),
        other => return Err(AlgebraError::UnknownSuite(other.into())),
    };
    Ok(Report { suite: name.into(), config: cfg.clone(), identities, calibration })
}

const COURANT_ANCHORS: [&str; 6] = [
    "Courant axiom: [A1, u A2] = u [A1, A2] + <A1, du> A2",
    "Courant axiom: <A1, d<A2, A3>> = <[A1, A2], A3> + <A2, [A1, A3]>",
    "Courant axiom: [A1, A2] + [A2, A1] = d<A1, A2>",
    "Courant axiom: Leibniz identity",
    "Courant axiom: [du, A] = 0",
    "Courant axiom: <du1, du2> = 0",
];

const CY_ANCHORS: [&str; 3] = [
    "Calabi-Yau: div du = 0",
    "Calabi-Yau: div(u A) = u div A + <du, A>",
    "Calabi-Yau: div [A1, A2] = A1(div A2) - A2(div A1)",
];

fn courant_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let mut ids = Vec::new();
    for (i, anchor) in COURANT_ANCHORS.into_iter().enumerate() {
        ids.push(identity(format!("axiom{}", i + 1), anchor, move |rng| {
            let a: Vec<GenSection> = (0..3).map(|_| random_section(d, k, rng)).collect();
            let u: Vec<FourierScalar> = (0..3).map(|_| random_scalar(d, k, rng)).collect();
            let r = courant_axiom_residuals(&a[0], &a[1], &a[2], &u[0], &u[1], &u[2]);
            zero_or(r[i].is_zero(), || {
                json!({"sections": a.iter().map(GenSection::to_json).collect::<Vec<_>>(), "scalars": scalars_json(&u), "residual": r[i].to_json()})
            })
        }));
    }
    for (i, anchor) in CY_ANCHORS.into_iter().enumerate() {
        ids.push(identity(format!("cy{}", i + 1), anchor, move |rng| {
            let u = random_scalar(d, k, rng);
            let a1 = random_section(d, k, rng);
            let a2 = random_section(d, k, rng);
            let r = cy_axiom_residuals(&u, &a1, &a2);
            zero_or(r[i].is_zero(), || json!({"u": u.to_json(), "A1": a1.to_json(), "A2": a2.to_json(), "residual": r[i].to_json()}))
        }));
    }
    run_identities("courant", cfg, ids)
}

fn bvcomplex_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let unary = |id: &'static str, anchor: &'static str, f: fn(&BVElement) -> BVElement| {
        identity(id, anchor, move |rng| {
            let x = random_inhomogeneous(d, k, rng);
            bv_check(f(&x), &[&x])
        })
    };
    let ids = vec![
        unary("q_squared", "Q^2 = 0", |x| q(&q(x))),
        unary("b_squared", "b^2 = 0", |x| b(&b(x))),
        unary("c_squared", "c^2 = 0", |x| c(&c(x))),
        unary("q_b_anticommutator", "[Q, b] = Qb + bQ = 0", |x| q(&b(x)).plus(&b(&q(x)))),
        unary("b_c_anticommutator", "[b, c] = bc + cb = 1", |x| b(&c(x)).plus(&c(&b(x))).minus(x)),
        identity("fc_g_orthogonality", "F_c and G are orthogonal under the odd pairing", move |rng| {
            for deg in 0..4 {
                let x = project_fc(&random_element(d, k, deg, rng));
                let y = project_g(&random_element(d, k, 3 - deg, rng));
                let p = odd_pairing(&x, &y);
                if !p.is_zero() {
                    return Some(json!({"fc": element_json(&x), "g": element_json(&y), "pairing": gauss_string(&p)}));
                }
            }
            None
        }),
    ];
    run_identities("bvcomplex", cfg, ids)
}

const RELATION_ANCHORS: [&str; 9] = [
    "Q is a derivation of mu",
    "mu is homotopy commutative with homotopy m",
    "mu is homotopy associative with homotopy nu",
    "Q is a derivation of the bracket",
    "the bracket is a derivation of mu up to homotopy",
    "b is a derivation of the bracket",
    "homotopy symmetry of the bracket with homotopy n",
    "Jacobi identity for the bracket",
    "derivation property up to homotopy n'",
];

fn bvlz_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let mut ids: Vec<Identity> = Relation::ALL
        .into_iter()
        .zip(RELATION_ANCHORS)
        .map(|(rel, anchor)| {
            identity(rel.id(), anchor, move |rng| {
                let args: Vec<BVElement> = (0..rel.arity()).map(|_| random_inhomogeneous(d, k, rng)).collect();
                let r = relation_residual(rel, &args).expect("arity matches");
                bv_check(r, &args.iter().collect::<Vec<_>>())
            })
        })
        .collect();
    ids.push(identity("bracket_is_dorfman", "the derived bracket on sections is the Dorfman bracket", move |rng| {
        let a1 = random_section(d, k, rng);
        let a2 = random_section(d, k, rng);
        let br = bracket(&BVElement::section1(a1.clone()), &BVElement::section1(a2.clone()));
        let expect = BVElement::section1(dorfman(&a1, &a2));
        zero_or(br == expect, || json!({"A1": a1.to_json(), "A2": a2.to_json(), "bracket": element_json(&br)}))
    }));
    run_identities("bvlz", cfg, ids)
}

fn cinf_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let ops = SymmetrizedDouble;
    let ids = vec![
        identity("q_derivation", "Q is a derivation of mu^sym", move |rng| {
            let x: Vec<BVElement> = (0..2).map(|_| random_inhomogeneous(d, k, rng)).collect();
            bv_check(q_derivation_residual(&ops, &x[0], &x[1]), &[&x[0], &x[1]])
        }),
        identity("homotopy_associativity", "mu^sym is associative up to [Q, nu^sym]", move |rng| {
            let x: Vec<BVElement> = (0..3).map(|_| random_inhomogeneous(d, k, rng)).collect();
            bv_check(homotopy_associativity_residual(&ops, &x[0], &x[1], &x[2]), &[&x[0], &x[1], &x[2]])
        }),
        identity("pentagon", "quartic A-infinity relation for (mu^sym, nu^sym)", move |rng| {
            let x: Vec<BVElement> = (0..4).map(|_| random_inhomogeneous(d, k, rng)).collect();
            bv_check(pentagon_residual(&ops, [&x[0], &x[1], &x[2], &x[3]]), &[&x[0], &x[1], &x[2], &x[3]])
        }),
        identity("shuffle", "nu^sym vanishes on shuffles", move |rng| {
            let x: Vec<BVElement> = (0..3).map(|_| random_inhomogeneous(d, k, rng)).collect();
            bv_check(shuffle_residual(&ops, &x[0], &x[1], &x[2]), &[&x[0], &x[1], &x[2]])
        }),
    ];
    run_identities("cinf", cfg, ids)
}

/// Degree tuples of the given length with `sum = target`.
fn tuples_with_sum(n: usize, target: usize) -> Vec<Vec<usize>> {
    (0..4usize.pow(n as u32))
        .map(|c| (0..n).map(|i| (c >> (2 * i)) & 3).collect::<Vec<_>>())
        .filter(|t| t.iter().sum::<usize>() == target)
        .collect()
}

fn cyclic_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    // (Q P1, P2) has degree 3 when |P1| + |P2| = 2; mu adds 0, nu subtracts 1.
    let ids = [("pairs", 2usize, 2usize), ("triples", 3, 3), ("quadruples", 4, 4)]
        .into_iter()
        .map(|(id, n, target)| {
            identity(id, "cyclic-permutation sign rule on F_c", move |rng| {
                let all = tuples_with_sum(n, target);
                let degs = &all[rng.gen_range(0..all.len())];
                let p: Vec<BVElement> = degs.iter().map(|&g| project_fc(&random_element(d, k, g, rng))).collect();
                let r = cyclic_sign_residual(&p).expect("arguments lie in F_c");
                zero_or(r.is_zero(), || {
                    json!({"inputs": p.iter().map(element_json).collect::<Vec<_>>(), "residual": gauss_string(&r)})
                })
            })
        })
        .collect();
    run_identities("cyclic", cfg, ids)
}

fn linf_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let ids = vec![
        identity("jacobiator", "d[A1, A2, A3] equals the Jacobiator of the antisymmetrized bracket", move |rng| {
            let a: Vec<GenSection> = (0..3).map(|_| random_section(d, k, rng)).collect();
            let r = l3_jacobiator_residual(&a[0], &a[1], &a[2]);
            zero_or(r.is_zero(), || json!({"sections": a.iter().map(GenSection::to_json).collect::<Vec<_>>(), "residual": r.to_json()}))
        }),
        identity("b_derivation", "b is a derivation of the trilinear bracket", move |rng| {
            let x: Vec<BVElement> = (0..3).map(|_| random_inhomogeneous(d, k, rng)).collect();
            bv_check(l3_b_derivation_residual(&x[0], &x[1], &x[2]), &[&x[0], &x[1], &x[2]])
        }),
    ];
    run_identities("linf", cfg, ids)
}

fn abelian_calibration(cfg: &Config, eta: &Metric, def: &FlatDeformation) -> Result<Calibration> {
    let samples: Vec<LieElement> = (0..CALIBRATION_SAMPLES)
        .map(|s| ym::random_psi(cfg.dimension, 1, cfg.mode_cutoff, &mut sample_rng(cfg.seed, "ym.calibration", s)))
        .collect();
    ym::calibrate(def, eta, &samples)
}

fn deform_suite(cfg: &Config, eta: &Metric) -> Result<(Vec<IdentityRecord>, Option<Calibration>)> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let def = FlatDeformation::from_metric(eta);
    let calibration = abelian_calibration(cfg, eta, &def).ok();
    let df = &def;
    let sym = SymmetrizedDeformation(df);
    let bracket_broken = deformed_bracket_breaks(cfg, df);
    let inh = move |rng: &mut ChaCha8Rng, n: usize| -> Vec<BVElement> { (0..n).map(|_| random_inhomogeneous(d, k, rng)).collect() };
    let unary = |id: &'static str, anchor: &'static str, f: fn(&FlatDeformation, &BVElement) -> BVElement| {
        identity(id, anchor, move |rng| {
            let x = inh(rng, 1);
            bv_check(f(df, &x[0]), &[&x[0]])
        })
    };
    let binary = |id: &'static str, anchor: &'static str, f: fn(&FlatDeformation, &BVElement, &BVElement) -> BVElement| {
        identity(id, anchor, move |rng| {
            let x = inh(rng, 2);
            bv_check(f(df, &x[0], &x[1]), &[&x[0], &x[1]])
        })
    };
    let ids = vec![
        unary("r_squared", "(R^eta)^2 = 0", |df, x| df.r_squared(x)),
        unary("q_r_anticommutator", "[Q, R^eta] = 0", |df, x| df.q_r_anticommutator(x)),
        unary("q_eta_squared", "(Q^eta)^2 = 0", |df, x| df.q_eta(&df.q_eta(x))),
        unary("r_diagram", "R^eta agrees with its arrow diagram", |df, x| df.r_eta(x).minus(&df.r_eta_diagram(x))),
        binary("mu_bar_table", "mu_bar^eta agrees with its table", |df, x, y| df.mu_bar(x, y).minus(&df.mu_bar_table(x, y))),
        binary("mu_bar_transgression", "[R^eta, mu] + [Q, mu_bar^eta] = 0", |df, x, y| df.mu_bar_transgression(x, y)),
        binary("r_mu_bar_derivation", "R^eta is a derivation of mu_bar^eta", |df, x, y| df.r_mu_bar_derivation(x, y)),
        binary("mu_bar_commutativity", "mu_bar^eta is homotopy commutative with m", |df, x, y| df.mu_bar_commutativity(x, y)),
        binary("q_derivation", "Q^eta is a derivation of mu^eta", |df, x, y| q_derivation_residual(df, x, y)),
        binary("homotopy_commutativity", "mu^eta is homotopy commutative with unchanged m", |df, x, y| {
            homotopy_commutativity_residual(df, x, y)
        }),
        identity("homotopy_associativity", "mu^eta is associative up to [Q^eta, nu]", move |rng| {
            let x = inh(rng, 3);
            bv_check(homotopy_associativity_residual(df, &x[0], &x[1], &x[2]), &[&x[0], &x[1], &x[2]])
        }),
        identity("pentagon", "quartic A-infinity relation for (mu^eta, nu)", move |rng| {
            let x = inh(rng, 4);
            bv_check(pentagon_residual(df, [&x[0], &x[1], &x[2], &x[3]]), &[&x[0], &x[1], &x[2], &x[3]])
        }),
        identity("sym_q_derivation", "Q^eta is a derivation of mu^{eta,sym}", move |rng| {
            let x = inh(rng, 2);
            bv_check(q_derivation_residual(&sym, &x[0], &x[1]), &[&x[0], &x[1]])
        }),
        identity("sym_associativity", "mu^{eta,sym} is associative up to [Q^eta, nu^sym]", move |rng| {
            let x = inh(rng, 3);
            bv_check(homotopy_associativity_residual(&sym, &x[0], &x[1], &x[2]), &[&x[0], &x[1], &x[2]])
        }),
        identity("sym_shuffle", "nu^sym vanishes on shuffles", move |rng| {
            let x = inh(rng, 3);
            bv_check(shuffle_residual(&sym, &x[0], &x[1], &x[2]), &[&x[0], &x[1], &x[2]])
        }),
        identity("embeddings_intertwine", "the Yang-Mills subcomplex embeddings are chain maps", move |rng| {
            let form: Vec<FourierScalar> = (0..d).map(|_| random_scalar(d, k, rng)).collect();
            let s = random_scalar(d, k, rng);
            for kind in Embedding::ALL {
                let arg = if matches!(kind, Embedding::F3 | Embedding::G3) {
                    EmbedArg::Scalar(s.clone())
                } else {
                    EmbedArg::OneForm(form.clone())
                };
                let r = df.intertwining_residual(kind, &arg).expect("argument matches embedding");
                if !r.is_zero() {
                    return Some(json!({"embedding": kind.name(), "form": scalars_json(&form), "scalar": s.to_json(), "residual": element_json(&r)}));
                }
            }
            let r = df.ghost_intertwining_residual(&s).expect("scalar argument");
            zero_or(r.is_zero(), || json!({"embedding": "u", "scalar": s.to_json(), "residual": element_json(&r)}))
        }),
        identity("deformed_bracket_witness", "the deformed bracket breaks some bracket relation", move |_| {
            zero_or(bracket_broken, || json!({"searched": BRACKET_WITNESS_TRIES}))
        }),
    ];
    Ok((run_identities("deform", cfg, ids), calibration))
}

/// Degree-one samples searched for a relation broken by the deformed bracket.
const BRACKET_WITNESS_TRIES: u64 = 3;

fn deformed_bracket_breaks(cfg: &Config, df: &FlatDeformation) -> bool {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff.max(1));
    (0..BRACKET_WITNESS_TRIES).any(|s| {
        let mut rng = sample_rng(cfg.seed, "deform.bracket_witness", s);
        let x: Vec<BVElement> = (0..3).map(|_| random_element(d, k, 1, &mut rng)).collect();
        [Relation::Jacobi, Relation::BracketDerivationMu, Relation::QDerivationBracket]
            .into_iter()
            .any(|rel| !relation_residual_with(df, rel, &x[..rel.arity()]).expect("arity matches").is_zero())
    })
}

fn ym_suite(cfg: &Config, eta: &Metric) -> Result<(Vec<IdentityRecord>, Option<Calibration>)> {
    let (d, k, rank) = (cfg.dimension, cfg.mode_cutoff, cfg.matrix_rank);
    let def = FlatDeformation::from_metric(eta);
    let cal = abelian_calibration(cfg, eta, &def)?;
    let (df, calr) = (&def, &cal);
    let ids = vec![
        identity("mc_matches_field_equations", "Maurer-Cartan residual equals the (A, Phi) field equations after calibration", move |rng| {
            let psi = ym::random_psi(d, rank, k, rng);
            let c = ym::mc_vs_ym_compare(df, eta, &psi).expect("degree one");
            zero_or(c.matches(calr), || {
                json!({
                    "psi": lie_json(&psi),
                    "mc_plus": matrices_json(&c.mc_plus),
                    "mc_minus": matrices_json(&c.mc_minus),
                    "ym_gauge": matrices_json(&c.ym_gauge),
                    "ym_scalar": matrices_json(&c.ym_scalar),
                })
            })
        }),
        identity("gauge_transport", "gauge variation transports to d u + [A, u] and [Phi, u]", move |rng| {
            let psi = ym::random_psi(d, rank, k, rng);
            let u = random_matrix(d, rank, k, rng);
            let (dg, ds) = ym::gauge_transport_residual(df, eta, &psi, &u).expect("degrees match");
            zero_or(dg.iter().chain(&ds).all(Coeff::is_zero), || {
                json!({"psi": lie_json(&psi), "u": u.to_json(), "gauge": matrices_json(&dg), "scalar": matrices_json(&ds)})
            })
        }),
        identity("central_gauge", "a central gauge parameter shifts A by du and leaves Phi fixed", move |rng| {
            let psi = ym::random_psi(d, rank, k, rng);
            let f = random_scalar(d, k, rng);
            let u = <MatrixField as Coeff>::from_scalar((d, rank), &f);
            let delta = ym::gauge_variation(df, &psi, &LieElement::deg0(u)).expect("degrees match");
            let (dg, ds) = ym::dictionary(&delta, eta);
            let ok = ds.iter().all(Coeff::is_zero)
                && dg.iter().enumerate().all(|(i, g)| *g == <MatrixField as Coeff>::from_scalar((d, rank), &f.partial(i)));
            zero_or(ok, || json!({"psi": lie_json(&psi), "u": f.to_json()}))
        }),
        identity("zero_field", "the zero field solves the Maurer-Cartan equation", move |_| {
            let r = ym::mc_residual(df, &LieElement::zero((d, rank))).expect("degree one");
            zero_or(r.is_zero(), || lie_json(&r))
        }),
    ];
    Ok((run_identities("ym", cfg, ids), Some(cal)))
}

fn exterior_suite(cfg: &Config, eta: &Metric) -> Result<Vec<IdentityRecord>> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let ymc = YmComplex::new(eta.clone())?;
    let ym = &ymc;
    let triple = move |rng: &mut ChaCha8Rng| -> Vec<YmElement> {
        random_degrees(rng, 3).into_iter().map(|g| random_ym(d, g, k, rng)).collect()
    };
    let form_check = |r: YmElement, x: &[YmElement]| {
        zero_or(r.is_zero(), || {
            json!({"inputs": x.iter().map(|e| json!({"ghost": e.ghost, "form": e.form.to_json()})).collect::<Vec<_>>(), "residual": r.form.to_json()})
        })
    };
    let ids = vec![
        identity("q_derivation", "d is a derivation of the table product", move |rng| {
            let x = triple(rng);
            form_check(ym.q_derivation_residual(&x[0], &x[1]), &x)
        }),
        identity("associativity", "the table product is associative up to [Q, nu^sym]", move |rng| {
            let x = triple(rng);
            form_check(ym.associativity_residual(&x[0], &x[1], &x[2]), &x)
        }),
        identity("shuffle", "nu^sym of the table vanishes on shuffles", move |rng| {
            let x = triple(rng);
            form_check(ym.shuffle_residual(&x[0], &x[1], &x[2]), &x)
        }),
        identity("transport", "table operations agree with (Q^eta, mu^{eta,sym}, nu^sym) through f1, g1 and Hodge", move |rng| {
            let mut x = triple(rng);
            let ones: Vec<YmElement> = (0..3).map(|_| random_ym(d, 1, k, rng)).collect();
            let a = ym.transport_residuals(&x[0], &x[1], &x[2]);
            let b = ym.transport_residuals(&ones[0], &ones[1], &ones[2]);
            x.extend(ones);
            zero_or(a.is_zero() && b.is_zero(), || {
                json!({"q": element_json(&a.q), "mu": element_json(&a.mu), "nu": element_json(&a.nu), "nu_one_forms": element_json(&b.nu)})
            })
        }),
    ];
    Ok(run_identities("exterior", cfg, ids))
}

/// First nonzero integer covector in `[-2, 2]^D` with `eta^{ij} k_i k_j = 0`.
pub fn null_covector(eta: &Metric) -> Option<Vec<i64>> {
    let n = eta.dim();
    let total = 5usize.pow(n as u32);
    (1..total).map(|c| (0..n).map(|i| ((c / 5usize.pow(i as u32)) % 5) as i64 - 2).collect::<Vec<_>>()).find(|k| {
        k.iter().any(|&x| x != 0) && eta.quad_up(k) == num_rational::BigRational::from_integer(0.into())
    })
}

/// Generalization of the stored witness to dimension `D >= 2`.
fn jacobi_witness(d: usize) -> [Vec<FourierScalar>; 3] {
    let z = FourierScalar::zero(d);
    let mut m = vec![0; d];
    m[0] = 1;
    let w = FourierScalar::mode(m);
    let mut a = vec![z.clone(); d];
    a[0] = w.clone();
    let mut b = vec![z.clone(); d];
    b[1] = w;
    let mut c = vec![z; d];
    c[0] = FourierScalar::one(d);
    [a, b, c]
}

fn cbracket_suite(cfg: &Config, eta: &Metric) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let null = null_covector(eta);
    let null = &null;
    let constrained = move |rng: &mut ChaCha8Rng| -> Vec<FourierScalar> {
        match &null {
            Some(n) => dc::random_null_field(n, k.max(1), rng),
            None => (0..d).map(|_| FourierScalar::constant(d, random_gauss(rng))).collect(),
        }
    };
    let fields = move |rng: &mut ChaCha8Rng| -> Vec<Vec<FourierScalar>> { (0..3).map(|_| dc::random_vector_field(d, k, rng)).collect() };
    let vec_json = |v: &[Vec<FourierScalar>]| Value::Array(v.iter().map(|f| scalars_json(f)).collect());
    let ids = vec![
        identity("antisymmetry", "the C-bracket is antisymmetric", move |rng| {
            let f = fields(rng);
            let ab = dc::c_bracket(&f[0], &f[1], eta);
            let ba = dc::c_bracket(&f[1], &f[0], eta);
            zero_or(ab.iter().zip(&ba).all(|(x, y)| x.plus(y).is_zero()), || vec_json(&f))
        }),
        identity("constant_first_argument", "[A, B]^j = A^i d_i B^j for constant A", move |rng| {
            let a: Vec<FourierScalar> = (0..d).map(|_| FourierScalar::constant(d, random_gauss(rng))).collect();
            let bf = dc::random_vector_field(d, k, rng);
            let lhs = dc::etab_bracket(&a, &bf, eta);
            let ok = (0..d).all(|j| lhs[j] == (0..d).fold(FourierScalar::zero(d), |acc, i| &acc + &(&a[i] * &bf[j].partial(i))));
            zero_or(ok, || json!({"A": scalars_json(&a), "B": scalars_json(&bf)}))
        }),
        identity("jacobi_constrained", "Jacobi identity holds when the three constraints hold pairwise", move |rng| {
            let f: Vec<Vec<FourierScalar>> = (0..3).map(|_| constrained(rng)).collect();
            let cons = [(0, 1), (1, 2), (0, 2)].iter().all(|&(x, y)| dc::c_constraints_hold(&f[x], &f[y], eta));
            let j = dc::c_jacobiator(&f[0], &f[1], &f[2], eta);
            zero_or(cons && j.iter().all(FourierScalar::is_zero), || json!({"fields": vec_json(&f), "constraints": cons, "jacobiator": scalars_json(&j)}))
        }),
        identity("cyclic_exactness_constrained", "the antisymmetrized Jacobiator is exact on constrained triples", move |rng| {
            let f: Vec<Vec<FourierScalar>> = (0..3).map(|_| constrained(rng)).collect();
            let r = dc::c_jacobiator_exactness_residual(&f[0], &f[1], &f[2], eta);
            zero_or(r.iter().all(FourierScalar::is_zero), || json!({"fields": vec_json(&f), "residual": scalars_json(&r)}))
        }),
        identity("stored_witness", "an unconstrained pair breaks Jacobi", move |_| {
            let w = jacobi_witness(d);
            let j = dc::c_jacobiator(&w[0], &w[1], &w[2], eta);
            zero_or(!dc::c_constraints_hold(&w[0], &w[1], eta) && j.iter().any(|x| !x.is_zero()), || vec_json(&w))
        }),
        identity("generic_violation", "generic fields violate the constraints and Jacobi", move |rng| {
            let f = fields(rng);
            let j = dc::c_jacobiator(&f[0], &f[1], &f[2], eta);
            let nonzero = j.iter().any(|x| !x.is_zero());
            // a sample may land in the constrained sector by chance; then Jacobi must hold
            let cons = dc::c_constraints_hold(&f[0], &f[1], eta) && dc::c_constraints_hold(&f[1], &f[2], eta) && dc::c_constraints_hold(&f[0], &f[2], eta);
            zero_or(nonzero != cons, || vec_json(&f))
        }),
    ];
    run_identities("cbracket", cfg, ids)
}

fn random_bivector(d: usize, k: i64, rng: &mut ChaCha8Rng) -> Bivector {
    Bivector::new((0..d).map(|_| (0..d).map(|_| dc::random_doubled(d, k, rng)).collect()).collect()).expect("square")
}

/// `g^{k lbar}` built from modes with `p_k = 0` and `q_l = 0`: divergence free for `phi = 0`.
fn divergence_free_bivector(d: usize, k: i64, rng: &mut ChaCha8Rng) -> Bivector {
    let comps = (0..d)
        .map(|r| {
            (0..d)
                .map(|l| {
                    let mut p: Vec<i64> = (0..d).map(|_| rng.gen_range(-k..=k)).collect();
                    let mut qv: Vec<i64> = (0..d).map(|_| rng.gen_range(-k..=k)).collect();
                    p[r] = 0;
                    qv[l] = 0;
                    DoubledScalar::mode(&p, &qv, random_gauss(rng)).expect("same length")
                })
                .collect()
        })
        .collect();
    Bivector::new(comps).expect("square")
}

fn doublecopy_suite(cfg: &Config) -> Vec<IdentityRecord> {
    let (d, k) = (cfg.dimension, cfg.mode_cutoff);
    let k1 = k.max(1);
    let ids = vec![
        identity("delta_minus_modes", "Delta_- acts on a mode by -2 k.kt", move |rng| {
            let f = dc::random_doubled(d, k, rng);
            let expect = f.inner().map_modes(|m| GaussRational::from_int(-2 * (0..d).map(|i| m[i] * m[d + i]).sum::<i64>()));
            let got = dc::delta_minus(&f);
            zero_or(got.inner() == &expect, || json!({"f": f.to_json(), "delta_minus": got.to_json()}))
        }),
        identity("delta_minus_sectors", "Delta_- annihilates x-only and xt-only functions", move |rng| {
            let p: Vec<i64> = (0..d).map(|_| rng.gen_range(-k1..=k1)).collect();
            let zero = vec![0; d];
            let fx = DoubledScalar::mode(&p, &zero, random_nonzero_gauss(rng)).expect("same length");
            let ft = DoubledScalar::mode(&zero, &p, random_nonzero_gauss(rng)).expect("same length");
            let matched = DoubledScalar::mode(&p, &p, GaussRational::one()).expect("same length");
            let m2: i64 = p.iter().map(|x| x * x).sum();
            let ok = dc::delta_minus(&fx).is_zero()
                && dc::delta_minus(&ft).is_zero()
                && dc::delta_minus(&matched) == matched.scale(&GaussRational::from_int(-2 * m2));
            zero_or(ok, || json!({"mode": p}))
        }),
        identity("constraint_two", "condition (2) is symmetric and holds on x-only pairs", move |rng| {
            let f = dc::random_doubled(d, k, rng);
            let g = dc::random_doubled(d, k, rng);
            let zero = vec![0; d];
            let p1: Vec<i64> = (0..d).map(|_| rng.gen_range(-k1..=k1)).collect();
            let p2: Vec<i64> = (0..d).map(|_| rng.gen_range(-k1..=k1)).collect();
            let x1 = DoubledScalar::mode(&p1, &zero, random_nonzero_gauss(rng)).expect("same length");
            let x2 = DoubledScalar::mode(&p2, &zero, random_nonzero_gauss(rng)).expect("same length");
            let ok = dc::constraint_two(&f, &g) == dc::constraint_two(&g, &f) && dc::strong_constraint_check(&x1, &x2) == (true, true);
            zero_or(ok, || json!({"f": f.to_json(), "g": g.to_json()}))
        }),
        identity("double_bracket_symmetric", "[[g, h]] = [[h, g]] and constants give zero", move |rng| {
            let g = random_bivector(d, k, rng);
            let h = random_bivector(d, k, rng);
            let c = Bivector::new((0..d).map(|_| (0..d).map(|_| DoubledScalar::constant(d, random_gauss(rng))).collect()).collect())
                .expect("square");
            let ok = dc::double_bracket(&g, &h) == dc::double_bracket(&h, &g) && dc::double_bracket(&c, &g).minus(&dc::double_bracket(&g, &c)).is_zero()
                && dc::double_bracket(&c, &c).is_zero();
            zero_or(ok, || json!({"g": g.to_json(), "h": h.to_json()}))
        }),
        identity("bivector_constant", "constant g with phi = 0 solves both equations", move |rng| {
            let c = Bivector::new((0..d).map(|_| (0..d).map(|_| DoubledScalar::constant(d, random_gauss(rng))).collect()).collect())
                .expect("square");
            let (r, s) = dc::bivector_mc_residual(&c, &DoubledScalar::zero(d));
            zero_or(r.is_zero() && s.is_zero(), || c.to_json())
        }),
        identity("bivector_divergence_free", "for divergence-free g the residual is [[g, g]]", move |rng| {
            let g = divergence_free_bivector(d, k1, rng);
            let phi = DoubledScalar::zero(d);
            let v = dc::div_omega(&g, &phi);
            let (r, s) = dc::bivector_mc_residual(&g, &phi);
            let ok = v.holo.iter().chain(&v.anti).all(DoubledScalar::is_zero) && r == dc::double_bracket(&g, &g) && s.is_zero();
            zero_or(ok, || g.to_json())
        }),
        identity("bivector_single_mode", "single-mode g against the closed form", move |rng| {
            let p: Vec<i64> = (0..d).map(|_| rng.gen_range(-k1..=k1)).collect();
            let qv: Vec<i64> = (0..d).map(|_| rng.gen_range(-k1..=k1)).collect();
            let c: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            single_mode_check(&c, &p, &qv)
        }),
        identity("dilaton_shift", "a constant shift of phi leaves the residuals unchanged", move |rng| {
            let g = random_bivector(d, k, rng);
            let phi = dc::random_doubled(d, k, rng);
            let shifted = phi.plus(&DoubledScalar::constant(d, random_nonzero_gauss(rng)));
            zero_or(dc::bivector_mc_residual(&g, &phi) == dc::bivector_mc_residual(&g, &shifted), || g.to_json())
        }),
    ];
    run_identities("doublecopy", cfg, ids)
}

/// With `g = C e`, `e = e^{i(p.x + q.xt)}`:
/// residual `= -4 ((pCq) C - (Cq)(pC)) e^2`, scalar `= -2 (pCq) e`.
fn single_mode_check(c: &[Vec<i64>], p: &[i64], qv: &[i64]) -> Option<Value> {
    let d = p.len();
    let cq: Vec<i64> = (0..d).map(|r| (0..d).map(|j| c[r][j] * qv[j]).sum()).collect();
    let pc: Vec<i64> = (0..d).map(|l| (0..d).map(|i| p[i] * c[i][l]).sum()).collect();
    let pcq: i64 = (0..d).map(|i| p[i] * cq[i]).sum();
    let p2: Vec<i64> = p.iter().map(|x| 2 * x).collect();
    let q2: Vec<i64> = qv.iter().map(|x| 2 * x).collect();
    let mode = |pp: &[i64], qq: &[i64], n: i64| DoubledScalar::mode(pp, qq, GaussRational::from_int(n)).expect("same length");
    let g = Bivector::new((0..d).map(|r| (0..d).map(|l| mode(p, qv, c[r][l])).collect()).collect()).expect("square");
    let expect = Bivector::new(
        (0..d).map(|r| (0..d).map(|l| mode(&p2, &q2, -4 * (pcq * c[r][l] - cq[r] * pc[l]))).collect()).collect(),
    )
    .expect("square");
    let (res, s) = dc::bivector_mc_residual(&g, &DoubledScalar::zero(d));
    zero_or(res == expect && s == mode(p, qv, -2 * pcq), || json!({"C": c, "p": p, "q": qv}))
}
