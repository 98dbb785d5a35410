//! Problem files and the report builders behind the `ftv` binary.
//!
//! A problem file is one JSON document:
//!
//! ```json
//! { "version": 1,
//!   "variety": { "projective_space": 2 },
//!   "framing": [1, 1, 2],
//!   "options": { "k_cap": 1000, "render": "text" } }
//! ```
//!
//! `variety` is one of `projective_space`, `weighted_projective`,
//! `hirzebruch`, `product` (a list of varieties) or `fan` (rows of a fan
//! matrix). Integers may be JSON numbers or decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::ci::{ci_family_monomials, ci_mirror_monomials, partitioned_dual, PartitionedFraming};
use crate::duality::{f_process, fans, strings, FProcess, FramedToricVariety, VERSION};
use crate::error::{FtvError, Result};
use crate::linalg::{gale_dual, JsonInt, IntMatrix, IntVector};
use crate::mirror::{
    givental_pn, moduli_counts, pn_mirror, subfamily_dual, weak_superpotential, Grading, MirrorPair, RenderFormat,
};
use crate::polytope::LatticePolytope;
use crate::quotient::{check_pn_convention, kernel_weight_vector, reduce_weights, torsion_matrix};
use crate::DEFAULT_K_CAP;

/// Candidate framings `enumerate` visits before giving up.
pub const DEFAULT_MAX_CANDIDATES: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Dualize,
    CiDualize,
    Lg,
    Subfamily,
    Enumerate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dualize => "dualize",
            Command::CiDualize => "ci-dualize",
            Command::Lg => "lg",
            Command::Subfamily => "subfamily",
            Command::Enumerate => "enumerate",
        }
    }
}

/// Command line overrides of the file options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub render: Option<RenderFormat>,
    pub k_cap: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum VarietySpec {
    ProjectiveSpace(usize),
    WeightedProjective(Vec<JsonInt>),
    Hirzebruch(i64),
    Product(Vec<VarietySpec>),
    Fan(IntMatrix),
}

impl VarietySpec {
    pub fn fan(&self) -> Result<IntMatrix> {
        match self {
            VarietySpec::ProjectiveSpace(n) if *n >= 1 => Ok(fans::projective_space(*n)),
            VarietySpec::ProjectiveSpace(_) => Err(FtvError::Input("projective_space needs n ≥ 1".into())),
            VarietySpec::WeightedProjective(q) => fans::weighted_projective(&ints(q)),
            VarietySpec::Hirzebruch(r) if *r >= 0 => Ok(fans::hirzebruch(*r)),
            VarietySpec::Hirzebruch(_) => Err(FtvError::Input("hirzebruch needs r ≥ 0".into())),
            VarietySpec::Product(parts) => {
                let mut it = parts.iter();
                let first = it.next().ok_or_else(|| FtvError::Input("empty product".into()))?.fan()?;
                it.try_fold(first, |acc, p| Ok(fans::product(&acc, &p.fan()?)))
            }
            VarietySpec::Fan(m) => Ok(m.clone()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PartSpec {
    Framing(Vec<JsonInt>),
    Indexed { indices: Vec<usize>, framing: Vec<JsonInt> },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub k_cap: Option<u64>,
    pub render: Option<RenderFormat>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectiveDegree {
    pub n: usize,
    pub d: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: Option<Value>,
    pub variety: Option<VarietySpec>,
    pub framing: Option<Vec<JsonInt>>,
    pub partition: Option<Vec<PartSpec>>,
    /// Vertices of a sub-polytope, for `subfamily`.
    pub delta: Option<Vec<Vec<JsonInt>>>,
    /// Degree `d` hypersurfaces in `ℙⁿ`, for `lg`.
    pub projective: Option<ProjectiveDegree>,
    /// Target class `Q·a`, for `enumerate`.
    pub degree: Option<Vec<JsonInt>>,
    pub max_candidates: Option<u64>,
    #[serde(default)]
    pub options: FileOptions,
}

fn ints(v: &[JsonInt]) -> IntVector {
    v.iter().map(|x| x.0.clone()).collect()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| FtvError::Input(e.to_string()))
    }

    fn fan(&self) -> Result<IntMatrix> {
        self.variety.as_ref().ok_or_else(|| FtvError::Input("missing \"variety\"".into()))?.fan()
    }

    fn framing(&self) -> Result<IntVector> {
        Ok(ints(self.framing.as_ref().ok_or_else(|| FtvError::Input("missing \"framing\"".into()))?))
    }

    /// The framed variety given by `variety` and `framing`.
    pub fn variety(&self) -> Result<FramedToricVariety> {
        FramedToricVariety::new(self.fan()?, self.framing()?)
    }
}

struct Settings {
    render: RenderFormat,
    k_cap: u64,
}

fn settings(file: &ProblemFile, o: &Overrides) -> Settings {
    Settings {
        render: o.render.or(file.options.render).unwrap_or_default(),
        k_cap: o.k_cap.or(file.options.k_cap).unwrap_or(DEFAULT_K_CAP),
    }
}

/// Runs a command on the text of a problem file.
pub fn run(cmd: Command, text: &str, o: &Overrides) -> Result<Value> {
    let input: Value = serde_json::from_str(text).map_err(|e| FtvError::Input(e.to_string()))?;
    let file = ProblemFile::parse(text)?;
    let s = settings(&file, o);
    let body = match cmd {
        Command::Dualize => dualize(&file, &s)?,
        Command::CiDualize => ci_dualize(&file, &s)?,
        Command::Lg => lg(&file, &s)?,
        Command::Subfamily => subfamily(&file, &s)?,
        Command::Enumerate => enumerate(&file, &s)?,
    };
    Ok(json!({
        "command": cmd.name(),
        "version": VERSION,
        "input": input,
        "report": body,
    }))
}

/// JSON body printed when a command fails.
pub fn error_body(e: &FtvError) -> Value {
    json!({
        "error": {
            "kind": error_kind(e),
            "message": e.to_string(),
            "exit_code": e.exit_code(),
        }
    })
}

fn error_kind(e: &FtvError) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Problem file whose `dualize` runs the second half of the process.
fn dual_problem(p: &FProcess) -> Value {
    json!({
        "version": 1,
        "variety": { "fan": p.lambda_a() },
        "framing": strings(p.b()),
    })
}

fn quotient_data(fan: &IntMatrix) -> Value {
    let Ok(kq) = kernel_weight_vector(fan) else {
        return Value::Null;
    };
    match torsion_matrix(&kq, fan) {
        Ok(t) => json!({
            "weights": strings(&reduce_weights(&kq)),
            "kernel_weights": strings(&kq),
            "torsion": t,
        }),
        Err(e) => json!({ "error": error_body(&e)["error"] }),
    }
}

fn dualize(file: &ProblemFile, s: &Settings) -> Result<Value> {
    let x = file.variety()?;
    let p = f_process(&x, s.k_cap)?;
    let families = match MirrorPair::of_process(&p) {
        Ok(pair) => json!({
            "family": pair.family,
            "family_degree": pair.family_degree,
            "family_normalization": pair.family_normalization,
            "mirror": pair.mirror,
            "mirror_degree": pair.mirror_degree,
            "mirror_normalization": pair.mirror_normalization,
            "rendered": {
                "family": pair.family.render(s.render),
                "mirror": pair.mirror.render(s.render),
            },
        }),
        Err(e @ FtvError::NegativeExponent(_)) => json!({ "error": error_body(&e)["error"] }),
        Err(e) => return Err(e),
    };
    let moduli = moduli_counts(&x, Some((p.lambda_a(), p.b())))?;
    let projective = projective_data(&x, s.k_cap)?;
    Ok(json!({
        "process": p.record(),
        "dual_problem": dual_problem(&p),
        "quotient": quotient_data(p.lambda_a()),
        "families": families,
        "moduli": moduli,
        "projective": projective,
    }))
}

/// Closed-form data when `X = ℙⁿ` and the framing follows the sorted, gcd
/// one convention.
fn projective_data(x: &FramedToricVariety, k_cap: u64) -> Result<Value> {
    if *x.fan() != fans::projective_space(x.dim()) || check_pn_convention(x.framing()).is_err() {
        return Ok(Value::Null);
    }
    Ok(to_value(&pn_mirror(x.framing(), k_cap)?))
}

fn partition(file: &ProblemFile) -> Result<PartitionedFraming> {
    let fan = file.fan()?;
    let specs = file.partition.as_ref().ok_or_else(|| FtvError::Input("missing \"partition\"".into()))?;
    if specs.iter().all(|p| matches!(p, PartSpec::Framing(_))) {
        let framings = specs
            .iter()
            .map(|p| match p {
                PartSpec::Framing(a) => ints(a),
                PartSpec::Indexed { .. } => unreachable!(),
            })
            .collect();
        return PartitionedFraming::from_framings(fan, framings);
    }
    let mut parts = Vec::new();
    let mut framings = Vec::new();
    for p in specs {
        match p {
            PartSpec::Indexed { indices, framing } => {
                parts.push(indices.clone());
                framings.push(ints(framing));
            }
            PartSpec::Framing(_) => {
                return Err(FtvError::Input("partition entries must all be vectors or all be objects".into()))
            }
        }
    }
    PartitionedFraming::new(fan, parts, framings)
}

fn ci_dualize(file: &ProblemFile, s: &Settings) -> Result<Value> {
    let p = partition(file)?;
    let r = partitioned_dual(&p, s.k_cap)?;
    let primal_grading = Grading::of_fan(p.fan());
    let dual_grading = Grading::of_fan(&r.lambda_a);
    let mut parts = Vec::new();
    for k in 0..p.len() {
        let f = ci_family_monomials(&r, k)?;
        let g = ci_mirror_monomials(&r, k)?;
        parts.push(json!({
            "indices": p.parts()[k],
            "framing": strings(&p.framings()[k]),
            "dual_indices": r.induced[k],
            "b": strings(&r.b[k]),
            "c": strings(&r.c[k]),
            "family": f,
            "family_degree": if f.is_empty() { Value::Null } else { to_value(&f.degree(&primal_grading)?) },
            "mirror": g,
            "mirror_degree": if g.is_empty() { Value::Null } else { to_value(&g.degree(&dual_grading)?) },
            "rendered": { "family": f.render(s.render), "mirror": g.render(s.render) },
        }));
    }
    Ok(json!({
        "record": r,
        "b_bar": strings(&r.b_bar()),
        "parts": parts,
    }))
}

fn lg(file: &ProblemFile, s: &Settings) -> Result<Value> {
    if let Some(pd) = &file.projective {
        let r = givental_pn(pd.n, pd.d)?;
        if !r.holds() {
            return Err(FtvError::InvariantViolated(format!(
                "Givental identities fail for n = {}, d = {}",
                pd.n, pd.d
            )));
        }
        let rendered = r.superpotential.render(s.render);
        return Ok(json!({ "givental": r, "identities_hold": true, "rendered": rendered }));
    }
    let x = FramedToricVariety::weak(file.fan()?, file.framing()?)?;
    let m = weak_superpotential(&x)?;
    Ok(json!({
        "weak_dual": m.dual,
        "mirror": m.mirror,
        "superpotential": m.superpotential,
        "rendered": {
            "mirror": m.mirror.render(s.render),
            "superpotential": m.superpotential.render(s.render),
        },
    }))
}

fn subfamily(file: &ProblemFile, s: &Settings) -> Result<Value> {
    let x = file.variety()?;
    let verts: Vec<IntVector> = file
        .delta
        .as_ref()
        .ok_or_else(|| FtvError::Input("missing \"delta\"".into()))?
        .iter()
        .map(|v| ints(v))
        .collect();
    let delta = LatticePolytope::from_vertices(x.dim(), &verts)?;
    let r = subfamily_dual(&x, &delta, s.k_cap)?;
    let rendered = json!({
        "family": r.family.render(s.render),
        "dual_family": r.dual_family.render(s.render),
        "vertex_family": r.vertex_family.render(s.render),
        "vertex_dual_family": r.vertex_dual_family.render(s.render),
    });
    Ok(json!({ "subfamily": r, "rendered": rendered }))
}

/// All strictly positive `a` with `Q·a = degree`, in lexicographic order.
pub fn framings_of_degree(q: &IntMatrix, degree: &[BigInt], max: u64) -> Result<Vec<IntVector>> {
    if degree.len() != q.rows() {
        return Err(FtvError::DimensionMismatch(format!(
            "degree has {} entries, class group has rank {}",
            degree.len(),
            q.rows()
        )));
    }
    let m = q.cols();
    if (0..m).any(|j| (0..q.rows()).all(|r| !q[(r, j)].is_positive())) {
        return Err(FtvError::SearchTooLarge("a weight column has no positive entry".into()));
    }
    // Remaining degree after every coordinate is at least one.
    let mut rest: IntVector = degree.to_vec();
    for r in 0..q.rows() {
        for j in 0..m {
            rest[r] -= &q[(r, j)];
        }
    }
    let mut out = Vec::new();
    let mut current = vec![BigInt::zero(); m];
    search(q, 0, &mut rest, &mut current, &mut out, max)?;
    for a in out.iter_mut() {
        for x in a.iter_mut() {
            *x += 1;
        }
    }
    Ok(out)
}

fn search(q: &IntMatrix, j: usize, rest: &mut IntVector, cur: &mut IntVector, out: &mut Vec<IntVector>, max: u64) -> Result<()> {
    if rest.iter().any(Signed::is_negative) {
        return Ok(());
    }
    if j == q.cols() {
        if rest.iter().all(Zero::is_zero) {
            if out.len() as u64 >= max {
                return Err(FtvError::SearchTooLarge(format!("more than {max} framings")));
            }
            out.push(cur.clone());
        }
        return Ok(());
    }
    loop {
        search(q, j + 1, rest, cur, out, max)?;
        for r in 0..q.rows() {
            rest[r] -= &q[(r, j)];
        }
        cur[j] += 1;
        if rest.iter().any(Signed::is_negative) {
            break;
        }
    }
    for r in 0..q.rows() {
        rest[r] += &q[(r, j)] * &cur[j];
    }
    cur[j] = BigInt::zero();
    Ok(())
}

fn enumerate(file: &ProblemFile, s: &Settings) -> Result<Value> {
    let fan = file.fan()?;
    let degree = ints(file.degree.as_ref().ok_or_else(|| FtvError::Input("missing \"degree\"".into()))?);
    let q = gale_dual(&fan)?;
    let max = file.max_candidates.unwrap_or(DEFAULT_MAX_CANDIDATES);
    let candidates = framings_of_degree(&q, &degree, max)?;
    let projective = fan == fans::projective_space(fan.rows());

    let results: Vec<(IntVector, Result<FProcess>)> = candidates
        .par_iter()
        .map(|a| {
            let p = FramedToricVariety::new(fan.clone(), a.clone()).and_then(|x| f_process(&x, s.k_cap));
            (a.clone(), p)
        })
        .collect();

    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut failures: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    let mut uncalibrated = 0usize;
    for (a, r) in &results {
        match r {
            Ok(p) if p.calibrated() => {
                let mut node = json!({
                    "framing": strings(a),
                    "k0": p.k0(),
                    "Lambda_a": p.lambda_a(),
                    "b": strings(p.b()),
                });
                if projective {
                    let mut sorted = a.clone();
                    sorted.sort();
                    let n = sorted.len() - 1;
                    node["a_mirror"] = json!((&sorted[n - 1] / &sorted[0]).is_one());
                }
                edges.push(json!({ "from": strings(a), "to": dual_problem(p) }));
                nodes.push(node);
            }
            Ok(_) => uncalibrated += 1,
            Err(e) => failures.entry(error_kind(e)).or_default().push(strings(a)),
        }
    }
    Ok(json!({
        "weights": q,
        "degree": strings(&degree),
        "candidates": candidates.len(),
        "calibrated_count": nodes.len(),
        "uncalibrated_count": uncalibrated,
        "nodes": nodes,
        "edges": edges,
        "failures": failures,
    }))
}

/// Serializes a report deterministically.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
