//! JSON scenarios for the mirror pipeline and the reports they produce.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::involution::{self, BraneType, CohomologyInvolution, Construction, InvolutionError, TableRow};
use crate::lattice::{FieldVector, IntegralLattice, NikulinTriple};
use crate::mirror::{
    self, enumerate_walls, wall_obstruction, ComplexClass, DeformationType, HKDatum, HyperbolicSlot, Wall,
    WallDivisorSpec,
};
use crate::scalar::QuadScalar;

pub const NORM_BOUND_ENV: &str = "IHS_NORM_BOUND";
pub const DEFAULT_NORM_BOUND: u32 = 20;

#[derive(Debug, Error)]
pub enum ScenarioError {
    /// Malformed or inconsistent input.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] crate::Error),
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Input(_) => 2,
            ScenarioError::Engine(_) => 3,
        }
    }
}

fn input(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Input(msg.into())
}

impl From<mirror::MirrorError> for ScenarioError {
    fn from(e: mirror::MirrorError) -> Self {
        ScenarioError::Engine(e.into())
    }
}

impl From<InvolutionError> for ScenarioError {
    fn from(e: InvolutionError) -> Self {
        ScenarioError::Engine(e.into())
    }
}

/// A scalar written either as a JSON string (`"1/2+3*sqrt(2)"`) or as an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn parse(&self, radicand: i64) -> Result<QuadScalar, ScenarioError> {
        match self {
            ScalarText::Int(n) => Ok(QuadScalar::from(*n)),
            ScalarText::Text(s) => QuadScalar::parse_with_radicand(s, radicand).map_err(|e| input(e.to_string())),
        }
    }

    fn parse_int(&self) -> Result<i64, ScenarioError> {
        match self {
            ScalarText::Int(n) => Ok(*n),
            ScalarText::Text(s) => s.trim().parse().map_err(|_| input(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub gram: Vec<Vec<i64>>,
    #[serde(default = "one")]
    pub radicand: i64,
    pub omega: Vec<ScalarText>,
    pub re_sigma: Vec<ScalarText>,
    pub im_sigma: Vec<ScalarText>,
    pub v: Vec<ScalarText>,
    pub v_star: Vec<ScalarText>,
    pub beta: Vec<ScalarText>,
    #[serde(default)]
    pub picard_basis: Vec<Vec<ScalarText>>,
    #[serde(default)]
    pub norm_bound: Option<u32>,
    pub deformation_type: DeformationType,
    #[serde(default)]
    pub reference: Option<Vec<ScalarText>>,
    #[serde(default)]
    pub polarization: Option<Vec<i64>>,
    #[serde(default)]
    pub involution: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub construction: Option<Construction>,
    #[serde(default)]
    pub example_id: Option<String>,
}

fn one() -> i64 {
    1
}

/// `table_match` is a boolean, or an error verdict when the construction does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TableMatch {
    Verdict(bool),
    Error { error: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub example_id: Option<String>,
    pub admissible: bool,
    pub rescaled: bool,
    pub sigma_check: ComplexClass,
    pub omega_check: FieldVector,
    pub omega_degenerate: bool,
    pub period_ok: bool,
    pub norm_bound: u32,
    pub walls: usize,
    pub obstructions: Vec<Wall>,
    pub involution_type: Option<BraneType>,
    pub mirror_type: Option<BraneType>,
    pub table_match: Option<TableMatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    pub example_id: Option<String>,
    pub involution_type: BraneType,
    pub invariant: LatticeSummary,
    pub anti_invariant: LatticeSummary,
    pub construction: Option<Construction>,
    pub expected_type: Option<BraneType>,
    pub mirror_type: Option<BraneType>,
    pub table_match: Option<TableMatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub rank: usize,
    pub signature: (usize, usize),
    pub triple: Option<NikulinTriple>,
}

fn summarize(ambient: &IntegralLattice, basis: &[Vec<i64>]) -> Result<LatticeSummary, ScenarioError> {
    let sub = ambient.sublattice(basis).map_err(crate::Error::from)?;
    Ok(LatticeSummary {
        rank: sub.rank(),
        signature: sub.signature(),
        triple: if sub.rank() == 0 { None } else { sub.two_elementary_invariants().ok() },
    })
}

/// Parsed scenario with every vector checked against the lattice rank.
struct Prepared {
    lattice: IntegralLattice,
    datum: HKDatum,
    slot: HyperbolicSlot,
    beta: FieldVector,
    reference: Option<FieldVector>,
    picard: Vec<Vec<i64>>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| input(format!("invalid scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Scenario value, then `IHS_NORM_BOUND`, then the default.
    pub fn effective_norm_bound(&self) -> Result<u32, ScenarioError> {
        if let Some(b) = self.norm_bound {
            return Ok(b);
        }
        match std::env::var(NORM_BOUND_ENV) {
            Ok(s) => {
                s.trim().parse().map_err(|_| input(format!("{NORM_BOUND_ENV}=`{s}` is not a nonnegative integer")))
            }
            Err(_) => Ok(DEFAULT_NORM_BOUND),
        }
    }

    fn field(&self, name: &str, xs: &[ScalarText], n: usize) -> Result<FieldVector, ScenarioError> {
        if xs.len() != n {
            return Err(input(format!("`{name}` has {} entries, expected {n}", xs.len())));
        }
        Ok(FieldVector::new(xs.iter().map(|x| x.parse(self.radicand)).collect::<Result<_, _>>()?))
    }

    fn ints(&self, name: &str, xs: &[ScalarText], n: usize) -> Result<Vec<i64>, ScenarioError> {
        if xs.len() != n {
            return Err(input(format!("`{name}` has {} entries, expected {n}", xs.len())));
        }
        xs.iter().map(ScalarText::parse_int).collect()
    }

    fn lattice(&self) -> Result<IntegralLattice, ScenarioError> {
        IntegralLattice::new(self.gram.clone()).map_err(|e| input(format!("`gram`: {e}")))
    }

    fn involution_matrix(&self, lattice: &IntegralLattice) -> Result<Option<CohomologyInvolution>, ScenarioError> {
        let Some(m) = &self.involution else { return Ok(None) };
        let n = lattice.rank();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(input(format!("`involution` must be {n}×{n}")));
        }
        Ok(Some(CohomologyInvolution::new(lattice, m.clone(), self.deformation_type)?))
    }

    fn prepare(&self) -> Result<Prepared, ScenarioError> {
        let lattice = self.lattice()?;
        let n = lattice.rank();
        let omega = self.field("omega", &self.omega, n)?;
        let re = self.field("re_sigma", &self.re_sigma, n)?;
        let im = self.field("im_sigma", &self.im_sigma, n)?;
        let beta = self.field("beta", &self.beta, n)?;
        let v = self.ints("v", &self.v, n)?;
        let v_star = self.ints("v_star", &self.v_star, n)?;
        let reference = self.reference.as_ref().map(|r| self.field("reference", r, n)).transpose()?;
        let picard =
            self.picard_basis.iter().map(|b| self.ints("picard_basis", b, n)).collect::<Result<Vec<_>, _>>()?;
        let datum = HKDatum::new(lattice.clone(), omega, re, im)?;
        let slot = HyperbolicSlot::new(&lattice, v, v_star)?;
        Ok(Prepared { lattice, datum, slot, beta, reference, picard })
    }

    /// Runs the mirror pipeline, with the involution branch when an involution is given.
    pub fn run_mirror(&self) -> Result<Report, ScenarioError> {
        let norm_bound = self.effective_norm_bound()?;
        let p = self.prepare()?;
        let iota = self.involution_matrix(&p.lattice)?;
        let admissible = mirror::check_admissible(&p.datum, &p.slot)?;
        let (datum, rescaled) = if admissible {
            (p.datum.clone(), false)
        } else {
            let (re, im) = mirror::rescale_sigma(&p.datum, &p.slot)?;
            (HKDatum::new(p.lattice.clone(), p.datum.omega.clone(), re, im)?, true)
        };
        let sigma_check = mirror::mirror_sigma(&datum, &p.slot, &p.beta)?;
        let omega = mirror::mirror_omega(&datum, &p.slot, &p.beta, p.reference.as_ref())?;
        let period_ok = mirror::period_check(&p.lattice, &sigma_check)?;
        let mut spec = WallDivisorSpec::new(p.picard.clone(), norm_bound, self.deformation_type);
        if let Some(h) = &self.polarization {
            spec = spec.with_polarization(h.clone());
        }
        let walls = if p.picard.is_empty() { Vec::new() } else { enumerate_walls(&p.lattice, &spec)? };
        let obstructions = wall_obstruction(&p.lattice, &sigma_check, &omega.omega, &walls)?;

        let (mut involution_type, mut mirror_type, mut table_match) = (None, None, None);
        if let Some(iota) = &iota {
            involution_type = Some(involution::brane_type(iota, &datum)?);
            if let Some(c) = self.construction {
                let row = involution::verify_table_row(iota, &datum, &p.slot, &p.beta, c, p.reference.as_ref());
                let (m, t) = table_outcome(row)?;
                mirror_type = m;
                table_match = Some(t);
            }
        }
        Ok(Report {
            example_id: self.example_id.clone(),
            admissible,
            rescaled,
            sigma_check,
            omega_check: omega.omega,
            omega_degenerate: omega.degenerate,
            period_ok,
            norm_bound,
            walls: walls.len(),
            obstructions,
            involution_type,
            mirror_type,
            table_match,
        })
    }

    /// Classifies the involution and, when a construction is given, checks its table row.
    pub fn run_involution(&self) -> Result<InvolutionReport, ScenarioError> {
        let p = self.prepare()?;
        let iota = self.involution_matrix(&p.lattice)?.ok_or_else(|| input("scenario has no `involution`"))?;
        let involution_type = involution::brane_type(&iota, &p.datum)?;
        let (t, s) = involution::invariant_lattices(&iota)?;
        let (mut expected_type, mut mirror_type, mut table_match) = (None, None, None);
        if let Some(c) = self.construction {
            expected_type = involution::transform_type(involution_type, c);
            let row = involution::verify_table_row(&iota, &p.datum, &p.slot, &p.beta, c, p.reference.as_ref());
            let (m, tm) = table_outcome(row)?;
            mirror_type = m;
            table_match = Some(tm);
        }
        Ok(InvolutionReport {
            example_id: self.example_id.clone(),
            involution_type,
            invariant: summarize(&p.lattice, &t)?,
            anti_invariant: summarize(&p.lattice, &s)?,
            construction: self.construction,
            expected_type,
            mirror_type,
            table_match,
        })
    }
}

fn table_outcome(row: Result<TableRow, InvolutionError>) -> Result<(Option<BraneType>, TableMatch), ScenarioError> {
    match row {
        Ok(r) => Ok((Some(r.computed), TableMatch::Verdict(r.matches))),
        Err(InvolutionError::Impossible(..)) => Ok((None, TableMatch::Error { error: "Impossible".into() })),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const U2: &str = r#"{
        "gram": [[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]],
        "radicand": 2,
        "omega": ["0","0","sqrt(2)","sqrt(2)"],
        "re_sigma": ["0","0","0","0"],
        "im_sigma": ["0","0","0","0"],
        "v": ["1","0","0","0"],
        "v_star": ["0","1","0","0"],
        "beta": ["0","0","1","0"],
        "picard_basis": [],
        "norm_bound": 4,
        "deformation_type": "K3",
        "reference": null
    }"#;

    #[test]
    fn worked_example() {
        let s = Scenario::from_json(U2).unwrap();
        let r = s.run_mirror().unwrap();
        assert!(r.admissible);
        assert!(r.period_ok);
        assert!(r.obstructions.is_empty());
        assert_eq!(r.sigma_check.re.to_strings(), ["1/1", "2/1", "1/1", "0/1"]);
        assert!(r.table_match.is_none());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["sigma_check"]["re"], serde_json::json!(["1/1", "2/1", "1/1", "0/1"]));
    }

    #[test]
    fn input_errors() {
        assert_eq!(Scenario::from_json("{").unwrap_err().exit_code(), 2);
        let short = U2.replace(r#""beta": ["0","0","1","0"]"#, r#""beta": ["0","0","1"]"#);
        assert_eq!(Scenario::from_json(&short).unwrap().run_mirror().unwrap_err().exit_code(), 2);
        let unknown = U2.replace(r#""radicand": 2,"#, r#""radicand": 2, "colour": 3,"#);
        assert_eq!(Scenario::from_json(&unknown).unwrap_err().exit_code(), 2);
        let surd = U2.replace(r#""omega": ["0","0","sqrt(2)","sqrt(2)"]"#, r#""omega": ["0","0","1","sqrt(3)"]"#);
        assert_eq!(Scenario::from_json(&surd).unwrap().run_mirror().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn engine_errors() {
        let bad = U2.replace(r#""beta": ["0","0","1","0"]"#, r#""beta": ["0","1","0","0"]"#);
        let err = Scenario::from_json(&bad).unwrap().run_mirror().unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let no_iota = Scenario::from_json(U2).unwrap().run_involution().unwrap_err();
        assert_eq!(no_iota.exit_code(), 2);
    }

    #[test]
    fn integer_entries_are_accepted() {
        let ints = U2.replace(r#""v": ["1","0","0","0"]"#, r#""v": [1,0,0,0]"#);
        assert!(Scenario::from_json(&ints).unwrap().run_mirror().is_ok());
    }

    #[test]
    fn norm_bound_precedence() {
        let s = Scenario::from_json(U2).unwrap();
        assert_eq!(s.effective_norm_bound().unwrap(), 4);
    }
}
