//! Problem files: a ring, an optional ideal, a module and task parameters.

use std::path::Path;

use serde::Deserialize;

use resreg::{parse_polynomial, FieldSpec, Polynomial, PresentedModule, RingSpec};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: RingSection,
    #[serde(default)]
    pub ideal: Option<Vec<String>>,
    pub module: ModuleSection,
    #[serde(default)]
    pub sequence: Option<Vec<String>>,
    #[serde(default)]
    pub coordinate: Option<usize>,
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub window: Option<usize>,
    #[serde(default)]
    pub n0_max: Option<u32>,
    #[serde(default)]
    pub max_subset: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    pub field: String,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleType {
    Quotient,
    IdealAsModule,
    PowerTimesQuotient,
}

/// `quotient` is `S/J` with `J` the relations; `ideal-as-module` is
/// `I (S/J)` and `power-times-quotient` is `I^n (S/J)`, where `I` is given
/// by `generators` or, failing that, by the top-level `ideal`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    #[serde(rename = "type")]
    pub kind: ModuleType,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
    #[serde(default)]
    pub power: Option<u32>,
}

/// A problem file with every string parsed in its ring.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub ring: RingSpec,
    pub ideal: Option<Vec<Polynomial>>,
    pub relations: Vec<Polynomial>,
    pub module: PresentedModule,
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::User(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

fn parse_list(what: &str, src: &[String], ring: &RingSpec) -> Result<Vec<Polynomial>, CliError> {
    src.iter()
        .enumerate()
        .map(|(i, s)| {
            let p = parse_polynomial(s, ring).map_err(|e| CliError::User(format!("{what}[{i}]: {e}")))?;
            if !p.is_zero() && p.degree(ring).is_none() {
                return Err(CliError::User(format!("{what}[{i}]: `{s}` is not multihomogeneous")));
            }
            Ok(p)
        })
        .collect()
}

impl Problem {
    /// Parses and validates `file`; `field` overrides the ring's field.
    pub fn build(file: ProblemFile, field: Option<FieldSpec>) -> Result<Self, CliError> {
        let field = match field {
            Some(f) => f,
            None => file.ring.field.parse().map_err(|e| CliError::User(format!("ring.field: {e}")))?,
        };
        let ring =
            RingSpec::new(file.ring.blocks.clone(), field).map_err(|e| CliError::User(format!("ring.blocks: {e}")))?;
        let ideal = file.ideal.as_ref().map(|g| parse_list("ideal", g, &ring)).transpose()?;
        let relations = parse_list("module.relations", &file.module.relations, &ring)?;
        let generators = match &file.module.generators {
            Some(g) => Some(parse_list("module.generators", g, &ring)?),
            None => ideal.clone(),
        };
        let need_gens = || {
            generators.clone().ok_or_else(|| {
                CliError::User("module.generators: required for this module type (or give `ideal`)".into())
            })
        };
        let module = match file.module.kind {
            ModuleType::Quotient => PresentedModule::quotient(&ring, &relations),
            ModuleType::IdealAsModule if relations.is_empty() => PresentedModule::ideal_as_module(&ring, &need_gens()?),
            ModuleType::IdealAsModule => resreg::present_subquotient(&ring, &need_gens()?, &relations),
            ModuleType::PowerTimesQuotient => {
                let n = file
                    .module
                    .power
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| CliError::User("module.power: a positive power is required".into()))?;
                PresentedModule::power_times_quotient(&ring, &need_gens()?, n, &relations)
            }
        }
        .map_err(|e| CliError::User(format!("module: {e}")))?;
        Ok(Problem { file, ring, ideal, relations, module })
    }

    /// `I` and `J` for the power commands, which need `M = S/J`.
    pub fn ideal_and_quotient(&self) -> Result<(&[Polynomial], &[Polynomial]), CliError> {
        let ideal = self.ideal.as_deref().ok_or_else(|| CliError::User("ideal: required for this command".into()))?;
        if self.file.module.kind != ModuleType::Quotient {
            return Err(CliError::User("module.type: this command requires `quotient`".into()));
        }
        Ok((ideal, &self.relations))
    }

    pub fn parse_sequence(&self, src: &[String], what: &str) -> Result<Vec<Polynomial>, CliError> {
        parse_list(what, src, &self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(src: &str) -> ProblemFile {
        serde_json::from_str(src).unwrap()
    }

    #[test]
    fn power_module_uses_top_level_ideal() {
        let f = file(
            r#"{"ring":{"field":"q","blocks":[["a"],["b"]]},"ideal":["a","b"],
                "module":{"type":"power-times-quotient","relations":["a^2"],"power":2}}"#,
        );
        let p = Problem::build(f, None).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.ideal.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn zero_power_is_rejected() {
        let f = file(
            r#"{"ring":{"field":"q","blocks":[["a"]]},"ideal":["a"],
                "module":{"type":"power-times-quotient","power":0}}"#,
        );
        let e = Problem::build(f, None).unwrap_err();
        assert!(e.to_string().starts_with("module.power"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: Result<ProblemFile, _> =
            serde_json::from_str(r#"{"ring":{"field":"q","blocks":[["a"]]},"module":{"type":"quotient"},"n":1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn field_override_wins() {
        let f = file(r#"{"ring":{"field":"q","blocks":[["a"]]},"module":{"type":"quotient"}}"#);
        let p = Problem::build(f, Some(FieldSpec::PrimeField(101))).unwrap();
        assert_eq!(p.ring.field(), FieldSpec::PrimeField(101));
    }

    #[test]
    fn errors_name_the_offending_entry() {
        let f = file(
            r#"{"ring":{"field":"q","blocks":[["a"],["b"]]},"module":{"type":"quotient","relations":["a","a+b"]}}"#,
        );
        let e = Problem::build(f, None).unwrap_err().to_string();
        assert!(e.starts_with("module.relations[1]"), "{e}");
    }
}
