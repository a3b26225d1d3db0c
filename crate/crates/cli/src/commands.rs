use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use pqdensity::cyclic_code::{verify_code_properties, CodeSpec, CyclicCode, DEFAULT_ENUMERATION_BUDGET};
use pqdensity::density::{certify_density, exact_density_bruteforce, DEFAULT_BRUTEFORCE_BUDGET};
use pqdensity::field_poly::{factor_cyclotomic_with, FactorOptions, MAX_MODULUS};
use pqdensity::numtheory::{is_prime, multiplicative_order, repunit, search_projective_pairs};
use pqdensity::perm_group::{
    build_example33, build_group_symbolic, kernel_of_block_action, BlockSystem, GroupDump, PermutationGroup,
    DEFAULT_CLOSURE_BUDGET,
};
use pqdensity::Error;

use crate::{CertifyArgs, CodeArgs};

/// A command's JSON result and whether every check in it passed.
pub struct Outcome {
    pub value: Value,
    pub verified: bool,
}

impl Outcome {
    fn ok(value: impl Serialize) -> Self {
        Outcome {
            value: serde_json::to_value(value).expect("serializable output"),
            verified: true,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_verification_failure() => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn field_prime(name: &str, r: u64) -> Result<u32, CliError> {
    if r >= MAX_MODULUS as u64 || !is_prime(r) {
        return Err(bad(format!("--{name} must be a prime below 2^31, got {r}")));
    }
    Ok(r as u32)
}

fn code_length(m: u64) -> Result<usize, CliError> {
    if m == 0 {
        return Err(bad("--m must be positive"));
    }
    usize::try_from(m).map_err(|_| bad("--m is too large"))
}

fn enumeration_budget(budget: Option<u64>) -> u128 {
    budget.map_or(DEFAULT_ENUMERATION_BUDGET, u128::from)
}

fn closure_budget(budget: Option<u64>) -> usize {
    budget.map_or(DEFAULT_CLOSURE_BUDGET, |b| usize::try_from(b).unwrap_or(usize::MAX))
}

#[derive(Serialize)]
struct FactorRow {
    index: usize,
    degree: usize,
    coefficients: Vec<u32>,
    polynomial: String,
}

pub fn factor(m: u64, r: u64, seed: u64) -> Result<Outcome, CliError> {
    code_length(m)?;
    let r = field_prime("r", r)?;
    if m.is_multiple_of(r as u64) {
        return Err(bad(format!("gcd(m, r) must be 1, got m = {m}, r = {r}")));
    }
    let opts = FactorOptions {
        seed,
        ..FactorOptions::default()
    };
    let factors: Vec<FactorRow> = factor_cyclotomic_with(m, r, &opts)?
        .into_iter()
        .enumerate()
        .map(|(index, f)| FactorRow {
            index,
            degree: f.degree().unwrap_or(0),
            coefficients: f.coefficients().to_vec(),
            polynomial: f.to_string(),
        })
        .collect();
    Ok(Outcome::ok(json!({
        "m": m,
        "r": r,
        "seed": seed,
        "count": factors.len(),
        "factors": factors,
    })))
}

fn load_code(m: Option<u64>, r: Option<u64>, factor: usize, spec: Option<&Path>, seed: u64) -> Result<CyclicCode, CliError> {
    if let Some(path) = spec {
        let spec: CodeSpec = read_json(path)?;
        field_prime("r", spec.r as u64)?;
        return Ok(CyclicCode::from_spec(&spec)?);
    }
    let (m, r) = m.zip(r).ok_or_else(|| bad("give --m and --r, or --spec"))?;
    let m = code_length(m)?;
    let r = field_prime("r", r)?;
    let opts = FactorOptions {
        seed,
        ..FactorOptions::default()
    };
    Ok(CyclicCode::from_cyclotomic_factor(m, r, factor, &opts)?)
}

pub fn code(args: &CodeArgs, seed: u64, budget: Option<u64>) -> Result<Outcome, CliError> {
    let code = load_code(args.m, args.r, args.factor, args.spec.as_deref(), seed)?;
    let report = verify_code_properties(&code, enumeration_budget(budget))?;
    let consistent = report.consistent();
    Ok(Outcome {
        value: json!({
            "spec": code.spec(),
            "generator": code.generator().coefficients(),
            "report": report,
            "consistent": consistent,
        }),
        verified: consistent,
    })
}

pub fn certify(args: &CertifyArgs, seed: u64, budget: Option<u64>) -> Result<Outcome, CliError> {
    if args.example33 {
        return certify_example33(budget);
    }
    let code = match (args.q, args.k) {
        (Some(q), Some(k)) => {
            let qf = field_prime("q", q)?;
            if k < 2 {
                return Err(bad("--k must be at least 2"));
            }
            let p = match args.p {
                Some(p) => p,
                None => {
                    let p = repunit(q, k)?;
                    u64::try_from(p).map_err(|_| bad("(q^k - 1)/(q - 1) does not fit in 64 bits"))?
                }
            };
            if !is_prime(p) || p == q {
                return Err(bad(format!("p = {p} must be a prime other than q")));
            }
            let order = multiplicative_order(q, p)?;
            if order != k as u64 {
                return Err(bad(format!("the order of {q} mod {p} is {order}, not {k}")));
            }
            load_code(Some(p), Some(qf as u64), args.factor, None, seed)?
        }
        _ => match &args.spec {
            Some(path) => load_code(None, None, 0, Some(path), seed)?,
            None => return Err(bad("give --q and --k, --spec, or --example33")),
        },
    };

    let group = build_group_symbolic(&code)?;
    let witness: Vec<_> = group.kernel_elements(enumeration_budget(budget))?.collect();
    let cert = certify_density(&group, &group.alpha(), witness)?;
    Ok(Outcome::ok(json!({
        "dimension": code.dimension(),
        "certificate": cert.summary(),
    })))
}

fn certify_example33(budget: Option<u64>) -> Result<Outcome, CliError> {
    let group = build_example33()?;
    if group.order() as usize > closure_budget(budget) {
        return Err(Error::Capacity {
            what: "group closure",
            needed: group.order() as u128,
            budget: closure_budget(budget) as u128,
        }
        .into());
    }
    let kernel = kernel_of_block_action(&group, &BlockSystem::columns(3, 11))?;
    let alpha = group.generators()[0].clone();
    let cert = certify_density(&group, &alpha, kernel.elements().to_vec())?;
    Ok(Outcome::ok(json!({
        "kernel_order": kernel.order(),
        "kernel_elementary_abelian": kernel.is_elementary_abelian(),
        "certificate": cert.summary(),
    })))
}

#[derive(Serialize)]
struct PairRow {
    k: u32,
    p: u64,
}

pub fn search(q: u64, kmax: u32) -> Result<Outcome, CliError> {
    if !is_prime(q) {
        return Err(bad(format!("--q must be prime, got {q}")));
    }
    let pairs: Vec<PairRow> = search_projective_pairs(q, kmax)?
        .into_iter()
        .map(|(k, p)| PairRow { k, p })
        .collect();
    Ok(Outcome::ok(json!({ "q": q, "kmax": kmax, "pairs": pairs })))
}

pub fn density(path: &Path, budget: Option<u64>) -> Result<Outcome, CliError> {
    let dump: GroupDump = read_json(path)?;
    let limit = budget.map_or(DEFAULT_BRUTEFORCE_BUDGET, |b| usize::try_from(b).unwrap_or(usize::MAX));
    let group = dump.build(limit.max(1))?;
    if !group.is_transitive() {
        return Err(bad("group must be transitive"));
    }
    let rho = exact_density_bruteforce(&group, limit)?;
    let stab = group.max_stabilizer_order();
    Ok(Outcome::ok(json!({
        "degree": group.degree(),
        "order": group.order(),
        "stabilizer_order": stab,
        "max_intersecting_set": (rho * stab).to_integer(),
        "rho_numerator": rho.numer(),
        "rho_denominator": rho.denom(),
    })))
}
