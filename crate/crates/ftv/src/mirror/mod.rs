//! Hypersurface families in Cox coordinates: exponent matrices from lattice
//! points, their class group degree, coefficient normalization, moduli
//! counts and rendering.

mod givental;
mod pn;
mod subfamily;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::duality::{FProcess, FramedToricVariety};
use crate::error::{FtvError, Result};
use crate::linalg::{gale_dual, integer_kernel, rat, ser, IntMatrix, IntVector};
use crate::polytope::{integer_part, HRep, RationalPolytope};
use crate::quotient::{kernel_weight_vector, torsion_matrix, TorsionData};

pub use givental::{givental_pn, weak_superpotential, GiventalReport, LgModel};
pub use pn::{canonical_mirror_polynomial, pn_mirror, CanonicalPolynomial, CoefficientRole, PnMirror};
pub use subfamily::{subfamily_dual, SubfamilyReport};

/// Class group grading of the Cox ring of a fan: a weight matrix for the
/// free part and, for rank one, the torsion characters.
#[derive(Clone, Debug, Serialize)]
pub struct Grading {
    pub weights: IntMatrix,
    pub torsion: Option<TorsionData>,
}

impl Grading {
    pub fn of_fan(fan: &IntMatrix) -> Grading {
        let weights = gale_dual(fan).unwrap_or_else(|_| integer_kernel(fan));
        let torsion = if weights.rows() == 1 {
            kernel_weight_vector(fan).ok().and_then(|q| torsion_matrix(&q, fan).ok())
        } else {
            None
        };
        Grading { weights, torsion }
    }

    pub fn degree(&self, exponent: &[BigInt]) -> Degree {
        let free = self.weights.mul_vec(exponent).expect("dimensions");
        let torsion = match &self.torsion {
            Some(t) => t
                .gamma
                .iter()
                .zip(&t.taus)
                .map(|(g, tau)| crate::linalg::dot(g, exponent).mod_floor(tau))
                .collect(),
            None => vec![],
        };
        Degree { free, torsion }
    }
}

/// A class in `Cl(X)`: free coordinates and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degree {
    #[serde(serialize_with = "ser::vec")]
    pub free: IntVector,
    #[serde(serialize_with = "ser::vec")]
    pub torsion: IntVector,
}

/// Exponents of a Cox polynomial, one non-negative column per monomial,
/// kept in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    vars: usize,
    columns: Vec<IntVector>,
}

impl ExponentMatrix {
    pub fn new(vars: usize, mut columns: Vec<IntVector>) -> Result<Self> {
        for c in &columns {
            if c.len() != vars {
                return Err(FtvError::DimensionMismatch(format!("exponent of length {}, expected {vars}", c.len())));
            }
            if c.iter().any(Signed::is_negative) {
                return Err(FtvError::NegativeExponent(format!("{c:?}")));
            }
        }
        columns.sort_by(|a, b| b.cmp(a));
        Ok(ExponentMatrix { vars, columns })
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.vars, &self.columns)
    }

    /// Common degree of all monomials, or `InvariantViolated`.
    pub fn degree(&self, grading: &Grading) -> Result<Degree> {
        let mut it = self.columns.iter();
        let Some(first) = it.next() else {
            return Err(FtvError::InvariantViolated("empty polynomial has no degree".into()));
        };
        let d = grading.degree(first);
        for c in it {
            let e = grading.degree(c);
            if e != d {
                return Err(FtvError::InvariantViolated(format!(
                    "monomial {} has degree {:?}, expected {:?}",
                    strs(c).join(","),
                    e,
                    d
                )));
            }
        }
        Ok(d)
    }

    pub fn normalization(&self) -> Normalization {
        Normalization::of(&self.columns)
    }

    /// Generic member with normalizable coefficients set to one and the
    /// remaining slots named `ψ, φ, …`.
    pub fn render(&self, format: RenderFormat) -> String {
        let names = self.normalization().coefficient_names();
        render_terms(&self.columns, &names, format)
    }
}

/// As [`ExponentMatrix`] with arbitrary signs, for Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExponentMatrix {
    vars: usize,
    columns: Vec<IntVector>,
}

impl LaurentExponentMatrix {
    pub fn new(vars: usize, mut columns: Vec<IntVector>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != vars) {
            return Err(FtvError::DimensionMismatch(format!("exponent of length {}, expected {vars}", c.len())));
        }
        columns.sort_by(|a, b| b.cmp(a));
        Ok(LaurentExponentMatrix { vars, columns })
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.vars, &self.columns)
    }

    pub fn render(&self, format: RenderFormat) -> String {
        let names = Normalization::of(&self.columns).coefficient_names();
        render_terms(&self.columns, &names, format)
    }
}

impl Serialize for ExponentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        exponent_json(self.vars, &self.columns).serialize(s)
    }
}

impl Serialize for LaurentExponentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        exponent_json(self.vars, &self.columns).serialize(s)
    }
}

fn exponent_json(vars: usize, columns: &[IntVector]) -> serde_json::Value {
    serde_json::json!({
        "vars": vars,
        "monomials": columns.iter().map(|c| strs(c)).collect::<Vec<_>>(),
    })
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Columns `Mᵀ·p + shift` over the given points.
fn shifted_columns(m: &IntMatrix, shift: &[BigInt], points: &[IntVector]) -> Result<Vec<IntVector>> {
    if shift.len() != m.cols() {
        return Err(FtvError::DimensionMismatch(format!("shift of length {} for {} rays", shift.len(), m.cols())));
    }
    points
        .iter()
        .map(|p| {
            let mut c = m.tmul_vec(p)?;
            for (x, s) in c.iter_mut().zip(shift) {
                *x += s;
            }
            Ok(c)
        })
        .collect()
}

/// Exponents `Vᵀm + a` of the family cut out by sections of `D_a`, one per
/// lattice point `m`.
pub fn family_monomials(fan: &IntMatrix, framing: &[BigInt], points: &[IntVector]) -> Result<ExponentMatrix> {
    ExponentMatrix::new(fan.cols(), shifted_columns(fan, framing, points)?)
}

/// Exponents `Λ_aᵀn + b` of the dual family, one per lattice point `n`.
pub fn mirror_monomials(lambda_a: &IntMatrix, b: &[BigInt], points: &[IntVector]) -> Result<ExponentMatrix> {
    ExponentMatrix::new(lambda_a.cols(), shifted_columns(lambda_a, b, points)?)
}

/// Divides the polynomial by `x^shift`.
pub fn laurent_superpotential(e: &ExponentMatrix, shift: &[BigInt]) -> Result<LaurentExponentMatrix> {
    if shift.len() != e.vars {
        return Err(FtvError::DimensionMismatch(format!("shift of length {}, expected {}", shift.len(), e.vars)));
    }
    let cols = e.columns.iter().map(|c| c.iter().zip(shift).map(|(x, s)| x - s).collect()).collect();
    LaurentExponentMatrix::new(e.vars, cols)
}

/// Which coefficients a torus rescaling can set to one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    /// `rank_ℚ [E; 1ᵀ]`: the number of coefficients that can be set to one.
    pub rank: usize,
    /// Column indices left as parameters, in order.
    pub moduli: Vec<usize>,
    pub len: usize,
}

impl Normalization {
    /// Greedy in column order: a column is normalizable when `(e, 1)` is
    /// independent of the earlier normalizable columns.
    pub fn of(columns: &[IntVector]) -> Normalization {
        let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut moduli = Vec::new();
        for (j, c) in columns.iter().enumerate() {
            let mut v: Vec<BigRational> = c.iter().map(rat).collect();
            v.push(BigRational::one());
            for (p, b) in &basis {
                if !v[*p].is_zero() {
                    let f = &v[*p] / &b[*p];
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                Some(p) => basis.push((p, v)),
                None => moduli.push(j),
            }
        }
        Normalization { rank: basis.len(), moduli, len: columns.len() }
    }

    pub fn coefficient_names(&self) -> Vec<Option<String>> {
        let mut names = vec![None; self.len];
        for (k, &j) in self.moduli.iter().enumerate() {
            names[j] = Some(modulus_name(k));
        }
        names
    }
}

/// `psi`, `phi`, `chi`, `omega`, then `t5`, `t6`, …; rendered as Greek
/// letters in LaTeX.
pub fn modulus_name(k: usize) -> String {
    match k {
        0 => "psi".into(),
        1 => "phi".into(),
        2 => "chi".into(),
        3 => "omega".into(),
        _ => format!("t{}", k + 1),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    #[default]
    Text,
    Latex,
}

impl std::str::FromStr for RenderFormat {
    type Err = FtvError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(RenderFormat::Text),
            "latex" => Ok(RenderFormat::Latex),
            _ => Err(FtvError::Input(format!("unknown render format {s}"))),
        }
    }
}


/// Sum of `coeff · x^e`; `None` coefficients are one.
pub fn render_terms(columns: &[IntVector], coeffs: &[Option<String>], format: RenderFormat) -> String {
    if columns.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = columns
        .iter()
        .zip(coeffs)
        .map(|(c, name)| render_term(c, name.as_deref(), format))
        .collect();
    terms.join(" + ")
}

fn render_term(e: &[BigInt], coeff: Option<&str>, format: RenderFormat) -> String {
    let mut factors: Vec<String> = Vec::new();
    if let Some(c) = coeff {
        factors.push(match format {
            RenderFormat::Text => c.to_string(),
            RenderFormat::Latex if c.starts_with('t') => format!("t_{{{}}}", &c[1..]),
            RenderFormat::Latex => format!("\\{c}"),
        });
    }
    for (i, x) in e.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mut f = String::new();
        match format {
            RenderFormat::Text => {
                write!(f, "x{}", i + 1).unwrap();
                if !x.is_one() {
                    write!(f, "^{}", paren(x)).unwrap();
                }
            }
            RenderFormat::Latex => {
                write!(f, "x_{{{}}}", i + 1).unwrap();
                if !x.is_one() {
                    write!(f, "^{{{x}}}").unwrap();
                }
            }
        }
        factors.push(f);
    }
    if factors.is_empty() {
        return "1".into();
    }
    match format {
        RenderFormat::Text => factors.join("*"),
        RenderFormat::Latex => factors.join(" "),
    }
}

fn paren(x: &BigInt) -> String {
    if x.is_negative() {
        format!("({x})")
    } else {
        x.to_string()
    }
}

/// Both families of an f-process: `f` on `X` from `Δ(X,a)` and `f∨` on
/// `𝕏_a` from `Δ(𝕏_a,b)`, with their degrees.
#[derive(Clone, Debug, Serialize)]
pub struct MirrorPair {
    pub family: ExponentMatrix,
    pub family_degree: Degree,
    pub mirror: ExponentMatrix,
    pub mirror_degree: Degree,
    pub family_normalization: Normalization,
    pub mirror_normalization: Normalization,
}

impl MirrorPair {
    pub fn of_process(p: &FProcess) -> Result<MirrorPair> {
        let x = &p.input;
        let family = family_monomials(x.fan(), x.framing(), p.first.polytope.lattice_points())?;
        let family_degree = family.degree(&Grading::of_fan(x.fan()))?;
        let mirror = mirror_monomials(p.lambda_a(), p.b(), p.second.polytope.lattice_points())?;
        let mirror_degree = mirror.degree(&Grading::of_fan(p.lambda_a()))?;
        Ok(MirrorPair {
            family_normalization: family.normalization(),
            mirror_normalization: mirror.normalization(),
            family,
            family_degree,
            mirror,
            mirror_degree,
        })
    }
}

/// Moduli counts of both families from lattice point counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub m_y: i64,
    pub m_y_vee: Option<i64>,
    /// Set when the anticanonical polytope used for the `l*` correction is
    /// not a lattice polytope.
    pub anticanonical_non_lattice: bool,
    pub dual_anticanonical_non_lattice: bool,
    pub k_d_n: Option<i64>,
    pub m_d_n: Option<i64>,
}

/// Lattice points in the relative interior of each facet of a rational
/// polytope, and whether the polytope is a lattice polytope.
pub fn rational_facet_interior_counts(p: &RationalPolytope) -> Result<(Vec<usize>, bool)> {
    let h = p.hrep()?;
    let rows = h.facet_rows(p.vertices());
    let points = match integer_part(p) {
        Ok(l) => l.lattice_points().to_vec(),
        Err(FtvError::EmptyLattice) => vec![],
        Err(e) => return Err(e),
    };
    let counts = rows
        .iter()
        .map(|&r| {
            points
                .iter()
                .filter(|x| {
                    h.slack_int(r, x).is_zero() && rows.iter().all(|&s| s == r || h.slack_int(s, x).is_positive())
                })
                .count()
        })
        .collect();
    Ok((counts, p.is_lattice()))
}

fn lattice_count(h: HRep) -> Result<usize> {
    let p = RationalPolytope::from_hrep(h)?;
    match integer_part(&p) {
        Ok(l) => Ok(l.num_lattice_points()),
        Err(FtvError::EmptyLattice) => Ok(0),
        Err(e) => Err(e),
    }
}

/// `l(Δ) − 1 − n − Σ l*(Θ)` with `Θ` over facets of `{Mᵀm ≥ −1}`.
fn moduli_number(rays: &IntMatrix, framing: &[BigInt]) -> Result<(i64, bool)> {
    let n = rays.rows() as i64;
    let l = lattice_count(HRep::from_fan(rays, framing)?)? as i64;
    let ones = vec![BigInt::one(); rays.cols()];
    let anti = RationalPolytope::from_hrep(HRep::from_fan(rays, &ones)?)?;
    let (counts, lattice) = rational_facet_interior_counts(&anti)?;
    let star: usize = counts.iter().sum();
    Ok((l - 1 - n - star as i64, !lattice))
}

/// `m_Y` for `(X, a)` and, given the f-dual data, `m_{Y∨}`; the
/// projective numbers are filled in when `X = ℙⁿ` and `a` has total `d`.
pub fn moduli_counts(x: &FramedToricVariety, dual: Option<(&IntMatrix, &[BigInt])>) -> Result<ModuliReport> {
    let (m_y, non_lattice) = moduli_number(x.fan(), x.framing())?;
    let (m_y_vee, dual_non_lattice) = match dual {
        Some((lambda, b)) => {
            let (m, f) = moduli_number(lambda, b)?;
            (Some(m), f)
        }
        None => (None, false),
    };
    let n = x.dim();
    let (k_d_n, m_d_n) = if *x.fan() == crate::duality::fans::projective_space(n) {
        let d: BigInt = x.framing().iter().sum();
        let d = crate::linalg::to_i64(&d);
        (Some(k_d_n(n)?), d.and_then(|d| u32::try_from(d).ok()).map(|d| m_d_n(n as u32, d)))
    } else {
        (None, None)
    };
    Ok(ModuliReport {
        m_y,
        m_y_vee,
        anticanonical_non_lattice: non_lattice,
        dual_anticanonical_non_lattice: dual_non_lattice,
        k_d_n,
        m_d_n,
    })
}

/// `C(n+d, d) − (n+1)²`.
pub fn m_d_n(n: u32, d: u32) -> i64 {
    let c = binomial(n + d, d);
    let s = BigInt::from(n + 1).pow(2);
    crate::linalg::to_i64(&(c - s)).expect("fits in i64")
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `l(conv V) − 1 − n` for the fan of `ℙⁿ`.
pub fn k_d_n(n: usize) -> Result<i64> {
    let v = crate::duality::fans::projective_space(n);
    let p = crate::polytope::LatticePolytope::from_vertices(n, &v.columns())?;
    Ok(p.num_lattice_points() as i64 - 1 - n as i64)
}
