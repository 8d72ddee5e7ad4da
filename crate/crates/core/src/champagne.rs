//! The generalized Champagne plant families, the bilinear bridge between
//! their continuous and discrete forms, and the catalog of published
//! controller examples.

use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, Poly, Rational, TransferFunction};
use crate::error::{Error, Result};
use crate::feedback::PlantSet;
use crate::problem::ProblemFile;
use crate::synthesis::ControllerTemplate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `2δ(s-1)/(s+1)`, `2δ(s-1)^2/(((1+δ)s-(1-δ))(s+1))`, `0`.
    Theorem1,
    /// `(s-1)/(s+1)`, `(s-1)^2/((1-δ)s^2-2δs-(1+δ))`, `0`.
    Theorem2,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "theorem1" | "t1" => Ok(Variant::Theorem1),
            "2" | "theorem2" | "t2" => Ok(Variant::Theorem2),
            other => Err(Error::InvalidArgument(format!(
                "unknown variant `{other}` (use 1 or 2)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcpInstance {
    pub delta: Rational,
    pub variant: Variant,
    pub domain: Domain,
}

impl GcpInstance {
    pub fn new(delta: Rational, variant: Variant, domain: Domain) -> Self {
        GcpInstance {
            delta,
            variant,
            domain,
        }
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn lin(a: Rational, b: Rational) -> Poly {
    Poly::linear(a, b)
}

/// The three plants of the requested family, reduced.
pub fn gcp_plants(inst: &GcpInstance) -> PlantSet {
    let d = &inst.delta;
    let one = Rational::one();
    let (num1, den1, num2, den2) = match (inst.variant, inst.domain) {
        (Variant::Theorem1, Domain::Continuous) => {
            let two_d = d * r(2);
            (
                lin(two_d.clone(), -two_d.clone()),
                lin(one.clone(), one.clone()),
                lin(one.clone(), -one.clone()).pow(2).scale(&two_d),
                &lin(&one + d, d - &one) * &lin(one.clone(), one.clone()),
            )
        }
        (Variant::Theorem1, Domain::Discrete) => {
            let two_d = d * r(2);
            (
                Poly::monomial(two_d.clone(), 1),
                Poly::one(),
                Poly::monomial(two_d, 2),
                lin(one.clone(), d.clone()),
            )
        }
        (Variant::Theorem2, Domain::Continuous) => (
            lin(one.clone(), -one.clone()),
            lin(one.clone(), one.clone()),
            lin(one.clone(), -one.clone()).pow(2),
            Poly::new(vec![-(&one + d), -(d * r(2)), &one - d]),
        ),
        (Variant::Theorem2, Domain::Discrete) => (
            Poly::x(),
            Poly::one(),
            Poly::monomial(one.clone(), 2),
            lin(one.clone(), -d.clone()),
        ),
    };
    let dom = inst.domain;
    let tf = |n: Poly, d: Poly| TransferFunction::new(n, d, dom).expect("denominators are nonzero");
    PlantSet::new(vec![
        tf(num1, den1),
        tf(num2, den2),
        TransferFunction::zero(dom),
    ])
    .expect("three plants in one domain")
}

/// Moves a transfer function to the other domain: `s = (1+z)/(1-z)` for
/// continuous input and `z = (s-1)/(s+1)` for discrete input. A function
/// already in `target` is returned unchanged.
pub fn bilinear_plant(p: &TransferFunction, target: Domain) -> Result<TransferFunction> {
    if p.domain() == target {
        return Ok(p.clone());
    }
    if p.is_zero() {
        return Ok(TransferFunction::zero(target));
    }
    let one = Rational::one();
    // (a, b, c, d) of x -> (a x + b)/(c x + d)
    let (a, b, c, d) = match target {
        Domain::Discrete => (one.clone(), one.clone(), -one.clone(), one.clone()),
        Domain::Continuous => (one.clone(), -one.clone(), one.clone(), one.clone()),
    };
    let mut num = p.num().mobius_substitute(&a, &b, &c, &d)?;
    let mut den = p.den().mobius_substitute(&a, &b, &c, &d)?;
    let (dn, dd) = (p.num().degree().unwrap_or(0), p.den().degree().unwrap_or(0));
    let factor = Poly::linear(c, d);
    if dd > dn {
        num = &num * &factor.pow((dd - dn) as u32);
    } else if dn > dd {
        den = &den * &factor.pow((dn - dd) as u32);
    }
    TransferFunction::new(num, den, target)
}

/// Transforms every plant of a set.
pub fn bilinear_set(plants: &PlantSet, target: Domain) -> Result<PlantSet> {
    PlantSet::new(
        plants
            .plants()
            .iter()
            .map(|p| bilinear_plant(p, target))
            .collect::<Result<_>>()?,
    )
}

/// Whether the family is simultaneously stabilizable: `δ = 0` or
/// `|δ| > 1/16`. Both variants share the condition.
pub fn verdict(delta: &Rational, _variant: Variant) -> bool {
    delta.is_zero() || delta.abs() > Rational::frac(1, 16)
}

/// One published claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperExample {
    pub id: String,
    pub delta: Rational,
    /// Structure of the controllers (or of the claimed nonexistence).
    pub template: Option<ControllerTemplate>,
    pub controllers: Vec<TransferFunction>,
    /// `true`: each listed controller stabilizes. `false`: no controller of
    /// `template` exists at `delta`.
    pub expected: bool,
    pub notes: String,
    /// Exact open interval of admissible constant controllers, when stated.
    pub y0_range: Option<(Rational, Rational)>,
}

impl PaperExample {
    pub fn plants(&self) -> PlantSet {
        gcp_plants(&GcpInstance::new(
            self.delta.clone(),
            Variant::Theorem1,
            Domain::Continuous,
        ))
    }
}

/// One catalog line in problem-file form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub id: String,
    pub delta: Rational,
    pub expected: bool,
    pub notes: String,
    #[serde(flatten)]
    pub problem: ProblemFile,
}

fn q(s: &str) -> Rational {
    s.parse().expect("catalog literal")
}

fn poly(c: &[&str]) -> Poly {
    Poly::new(c.iter().map(|s| q(s)).collect())
}

fn ctrl(num: &[&str], den: &[&str]) -> TransferFunction {
    TransferFunction::new(poly(num), poly(den), Domain::Continuous).expect("catalog controller")
}

fn tpl(m: usize, k: usize) -> Option<ControllerTemplate> {
    Some(ControllerTemplate::new(m, k))
}

/// Numerators listed highest degree first, as published.
fn descending<'a>(c: &[&'a str]) -> Vec<&'a str> {
    c.iter().rev().copied().collect()
}

const EX5: [[&str; 3]; 5] = [
    ["191/100", "39001/10000", "2450001/1000000"],
    ["191/100", "390019/100000", "2450003/1000000"],
    ["97/50", "39001/10000", "245001/100000"],
    ["97/50", "19501/5000", "245001/100000"],
    ["19501/10000", "39003/10000", "4900299/2000000"],
];

const EX6: [[&str; 4]; 6] = [
    ["1037/1000", "30077/10000", "50001/10000", "300001/100000"],
    ["26/25", "376/125", "50001/10000", "300001/100000"],
    ["113/100", "378/125", "50001/10000", "300001/100000"],
    ["57029/50000", "121/40", "50001/10000", "300001/100000"],
    ["11407/10000", "121/40", "50001/10000", "300001/100000"],
    ["114113/100000", "1513/500", "50001/10000", "300001/100000"],
];

/// Every explicit controller and threshold claim of the published examples.
pub fn example_catalog() -> Vec<PaperExample> {
    let ex = |id: &str, delta: &str, t, controllers, expected, notes: &str| PaperExample {
        id: id.into(),
        delta: q(delta),
        template: t,
        controllers,
        expected,
        notes: notes.into(),
        y0_range: None,
    };
    let mut out = Vec::new();

    let mut ex1 = ex(
        "Ex1",
        "3/4",
        tpl(0, 0),
        vec![ctrl(&["1/3"], &["1"])],
        true,
        "constant controller; admissible iff 1/6 < y0 < 1/2",
    );
    ex1.y0_range = Some((q("1/6"), q("1/2")));
    out.push(ex1);
    out.push(ex(
        "Ex1",
        "1/2",
        tpl(0, 0),
        vec![],
        false,
        "no constant controller for delta <= 1/2",
    ));

    out.push(ex(
        "Ex2",
        "3/4",
        tpl(0, 1),
        vec![ctrl(&["1"], &["3", "1"])],
        true,
        "c = 1/(s+3)",
    ));
    out.push(ex(
        "Ex2",
        "1/2",
        tpl(0, 1),
        vec![],
        false,
        "no y0/(s+x0) controller for delta <= 1/2",
    ));

    let ex3 = [["1/10", "51/100"], ["3/5", "3/5"], ["4/5", "3/5"]];
    out.push(ex(
        "Ex3",
        "1/2",
        tpl(1, 0),
        ex3.iter().map(|c| ctrl(&descending(c), &["1"])).collect(),
        true,
        "c = y1 s + y0",
    ));
    out.push(ex(
        "Ex3",
        "1/2",
        tpl(1, 1),
        ex3.iter()
            .map(|c| ctrl(&descending(c), &["1", "1/10"]))
            .collect(),
        true,
        "proper variant over (eps s + 1), eps = 1/10",
    ));
    out.push(ex(
        "Ex3",
        "1/4",
        tpl(1, 0),
        vec![],
        false,
        "no y1 s + y0 controller for delta <= 1/4",
    ));

    let ex4 = [
        ["2", "31/10", "201/100"],
        ["3", "41/10", "301/100"],
        ["6", "8", "61/10"],
    ];
    out.push(ex(
        "Ex4",
        "1/3",
        tpl(1, 1),
        ex4.iter()
            .map(|[x0, y1, y0]| ctrl(&[y0, y1], &[x0, "1"]))
            .collect(),
        true,
        "c = (y1 s + y0)/(s + x0)",
    ));
    out.push(ex(
        "Ex4",
        "1/4",
        tpl(1, 1),
        vec![],
        false,
        "no (y1 s + y0)/(s + x0) controller for delta <= 1/4",
    ));

    out.push(ex(
        "Ex5",
        "10/59",
        tpl(2, 0),
        EX5.iter().map(|c| ctrl(&descending(c), &["1"])).collect(),
        true,
        "c = y2 s^2 + y1 s + y0",
    ));
    let eps = "1/10000000";
    out.push(ex(
        "Ex5",
        "10/59",
        tpl(2, 2),
        EX5.iter()
            .map(|c| ctrl(&descending(c), &["1", eps, eps]))
            .collect(),
        true,
        "proper variant over (eps s^2 + eps s + 1), eps = 1e-7",
    ));
    out.push(ex(
        "Ex5",
        "1/6",
        tpl(2, 0),
        vec![],
        false,
        "no quadratic polynomial controller at delta = 1/6",
    ));

    out.push(ex(
        "Ex6",
        "1/7",
        tpl(3, 0),
        EX6.iter().map(|c| ctrl(&descending(c), &["1"])).collect(),
        true,
        "c = y3 s^3 + y2 s^2 + y1 s + y0",
    ));
    let eps1 = "1/1000000000000000";
    out.push(ex(
        "Ex6",
        "1/7",
        tpl(3, 3),
        EX6.iter()
            .map(|c| ctrl(&descending(c), &["1", eps, eps, eps1]))
            .collect(),
        true,
        "proper variant over (eps1 s^3 + eps s^2 + eps s + 1), eps = 1e-7, eps1 = 1e-15",
    ));

    out.push(ex(
        "Champagne",
        "1/17",
        None,
        vec![],
        false,
        "2/17 (s-1)/(s+1), (s-1)^2/((9s-8)(s+1)), 0: not simultaneously stabilizable",
    ));
    out
}

/// The catalog flattened to one problem file per controller; claims without
/// controllers keep `controller` empty.
pub fn catalog_records() -> Vec<CatalogRecord> {
    let mut out = Vec::new();
    for e in example_catalog() {
        let plants = e.plants();
        let base = |controller: Option<TransferFunction>| CatalogRecord {
            id: e.id.clone(),
            delta: e.delta.clone(),
            expected: e.expected,
            notes: e.notes.clone(),
            problem: ProblemFile {
                domain: Domain::Continuous,
                plants: plants.plants().to_vec(),
                controller,
                template: e.template,
                param_box: None,
                search: None,
            },
        };
        if e.controllers.is_empty() {
            out.push(base(None));
        } else {
            out.extend(e.controllers.iter().cloned().map(|c| base(Some(c))));
        }
    }
    out
}
