//! Named reproduction pipelines: each one runs a published construction end
//! to end, compares every stated fact against the computed value, and
//! returns a tabular report. The command-line front end prints these; the
//! acceptance suite asserts them.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::code::{CodeTag, LinearCode};
use crate::constructions::{esgrs, is_nk_delta_set, roth_lempel, EvalConfig};
use crate::covering::SyndromeTable;
use crate::criteria::{class1_is_deep_hole, class2_is_deep_hole, forbidden_set, shape_vector};
use crate::equiv::{equivalent_to_some_grs, monomial_equivalent, square_code_distinguisher};
use crate::error::{Error, Result};
use crate::extend::extend_by_deep_hole;
use crate::field::{Fe, Field, Poly};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub inputs: String,
    pub outcomes: Vec<Outcome>,
    pub elapsed: Duration,
}

impl RunReport {
    fn new(command: &str, inputs: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            inputs: inputs.to_string(),
            outcomes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn check<E: fmt::Display, C: fmt::Display>(&mut self, claim: &str, expected: E, computed: C) {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        self.outcomes.push(Outcome {
            claim: claim.to_string(),
            expected,
            computed,
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn render(&self) -> String {
        let mut out = format!("# {} ({})\n", self.command, self.inputs);
        for o in &self.outcomes {
            out.push_str(&format!(
                "{} | expected {} | computed {} | {}\n",
                o.claim,
                o.expected,
                o.computed,
                if o.pass { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "{}/{} checks passed in {:.3}s\n",
            self.outcomes.iter().filter(|o| o.pass).count(),
            self.outcomes.len(),
            self.elapsed.as_secs_f64()
        ));
        out
    }
}

/// The five named reproduction pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleId {
    Counterexample,
    Example4,
    Example5,
    Remark2,
    Q8Square,
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExampleId> {
        match s {
            "counterexample" => Ok(ExampleId::Counterexample),
            "example4" => Ok(ExampleId::Example4),
            "example5" => Ok(ExampleId::Example5),
            "remark2" => Ok(ExampleId::Remark2),
            "q8-square" => Ok(ExampleId::Q8Square),
            other => Err(Error::Parse(format!(
                "unknown example {other:?}; expected one of counterexample, example4, example5, remark2, q8-square"
            ))),
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ExampleId::Counterexample => "counterexample",
            ExampleId::Example4 => "example4",
            ExampleId::Example5 => "example5",
            ExampleId::Remark2 => "remark2",
            ExampleId::Q8Square => "q8-square",
        };
        write!(f, "{name}")
    }
}

pub fn run(id: ExampleId) -> Result<RunReport> {
    match id {
        ExampleId::Counterexample => counterexample(),
        ExampleId::Example4 => example4(),
        ExampleId::Example5 => example5(),
        ExampleId::Remark2 => remark2(),
        ExampleId::Q8Square => q8_square(),
    }
}

fn fes(field: &std::sync::Arc<Field>, encs: &[u64]) -> Vec<Fe> {
    encs.iter().map(|&x| field.el(x)).collect()
}

fn fmt_class(code: &LinearCode) -> Result<String> {
    let c = code.classify()?;
    Ok(format!("[{},{},{}] {}", code.n(), code.k(), c.d, c.tag))
}

/// The binary extended Hamming code violates the covering-radius hypothesis,
/// and neither augmented code is NMDS.
pub fn counterexample() -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new("reproduce counterexample", "binary extended Hamming [8,4]");
    let f = Field::prime(2)?;
    let code = LinearCode::from_generator(Matrix::from_int_rows(
        &f,
        &[
            &[1, 0, 0, 0, 0, 1, 1, 1],
            &[0, 1, 0, 0, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 0, 1],
            &[0, 0, 0, 1, 1, 1, 1, 0],
        ],
    )?)?;

    report.check("base classifies NMDS [8,4,4]", "[8,4,4] NMDS", fmt_class(&code)?);
    let table = SyndromeTable::build(&code)?;
    report.check("covering radius", 2, table.covering_radius());

    let u = fes(&f, &[0, 1, 1, 1, 0, 1, 0, 0]);
    report.check("u is a deep hole", true, table.is_deep_hole(&u)?);

    let cu = LinearCode::from_generator(code.generator().append_row(&u)?)?;
    report.check(
        "row-augmented code parameters",
        "[8,5,2]",
        format!("[{},{},{}]", cu.n(), cu.k(), cu.min_distance()?),
    );

    let ext = extend_by_deep_hole(&code, &u)?;
    report.check(
        "extended code parameters",
        "[9,5,3]",
        format!(
            "[{},{},{}]",
            ext.extended.n(),
            ext.extended.k(),
            ext.extended.min_distance()?
        ),
    );
    report.check(
        "neither augmented code is NMDS",
        "true",
        (cu.classify()?.tag != CodeTag::Nmds && ext.extended_class.tag != CodeTag::Nmds)
            .to_string(),
    );
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Data shared by the two published extended-subcode walkthroughs over
/// GF(11) with S = {3,4,5,6,7}.
fn example4_base() -> Result<(EvalConfig, LinearCode)> {
    let f = Field::prime(11)?;
    let cfg = EvalConfig::from_ints(&f, &[3, 4, 5, 6, 7])?;
    let code = esgrs(&cfg, 3)?;
    Ok((cfg, code))
}

pub fn example4() -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new("reproduce example4", "GF(11), S={3,4,5,6,7}, v=1, k=3");
    let (cfg, code) = example4_base()?;
    let f = cfg.field().clone();

    report.check("base is MDS [6,3,4]", "[6,3,4] MDS", fmt_class(&code)?);
    report.check(
        "base is non-GRS (exhaustive sweep)",
        "none",
        match equivalent_to_some_grs(&code)? {
            None => "none".to_string(),
            Some(m) => format!("witness {:?}", m.kind),
        },
    );

    let table = SyndromeTable::build(&code)?;
    report.check("covering radius", 3, table.covering_radius());

    // the first-class deep holes of g = 4x^3 + 3x^2 + 10x + 7
    let fpoly = Poly::from_ints(&f, &[7, 10, 0, 4]);
    let g = Poly::from_ints(&f, &[7, 10, 3, 4]);
    let g2 = f.el(3);
    let accepted: Vec<u64> = f
        .elements()
        .filter_map(|u| {
            class1_is_deep_hole(&cfg, 3, g2, &fpoly, u)
                .ok()
                .and_then(|yes| yes.then_some(u.enc()))
        })
        .collect();
    report.check("class-1 accepted u-scalars", "[1, 3, 4, 8]", {
        let mut a = accepted.clone();
        a.sort_unstable();
        format!("{a:?}")
    });
    let mut definition_agrees = true;
    for u in f.elements() {
        let vector = shape_vector(&cfg, &g, u)?;
        let is_hole = table.is_deep_hole(&vector)?;
        if is_hole != accepted.contains(&u.enc()) {
            definition_agrees = false;
        }
    }
    report.check(
        "class-1 verdicts match the definition for every u-scalar",
        true,
        definition_agrees,
    );
    let hole_values: Vec<u64> = shape_vector(&cfg, &g, f.el(4))?
        .iter()
        .map(|e| e.enc())
        .collect();
    report.check(
        "deep-hole vector of branch 1",
        "[7, 10, 5, 5, 1, 4]",
        format!("{hole_values:?}"),
    );

    // the delta-set of S at k = 3
    let deltas: Vec<u64> = f
        .elements()
        .filter_map(|d| {
            is_nk_delta_set(&f, cfg.points(), 3, d)
                .ok()
                .and_then(|yes| yes.then_some(d.enc()))
        })
        .collect();
    report.check("delta-set values", "[0, 8, 9, 10]", format!("{deltas:?}"));

    // branch-1 extension: monomially equivalent to the delta = 0 Roth-Lempel
    let pts = cfg.points().to_vec();
    let u1 = shape_vector(&cfg, &g, f.el(4))?;
    let ext1 = extend_by_deep_hole(&code, &u1)?;
    report.check(
        "branch-1 extension is MDS [7,4,4]",
        "[7,4,4] MDS",
        fmt_class(&ext1.extended)?,
    );
    let rl0 = roth_lempel(&f, &pts, 4, f.zero())?;
    report.check(
        "branch-1 extension equivalent to the delta=0 Roth-Lempel code",
        true,
        monomial_equivalent(&ext1.extended, &rl0)?.is_some(),
    );

    // the three sibling extensions and their Roth-Lempel verdicts
    let mut rl_matches: Vec<(u64, Vec<u64>)> = Vec::new();
    for last in [1u64, 3, 8] {
        let u = shape_vector(&cfg, &g, f.el(last))?;
        let ext = extend_by_deep_hole(&code, &u)?;
        report.check(
            &format!("extension ending in {last} is MDS [7,4,4]"),
            "[7,4,4] MDS",
            fmt_class(&ext.extended)?,
        );
        let mut found: Vec<u64> = Vec::new();
        for delta in f.elements() {
            let rl = roth_lempel(&f, &pts, 4, delta)?;
            if monomial_equivalent(&ext.extended, &rl)?.is_some() {
                found.push(delta.enc());
            }
        }
        rl_matches.push((last, found));
    }
    for (last, found) in &rl_matches {
        let expected: &[u64] = match last {
            8 => &[9, 10],
            _ => &[],
        };
        report.check(
            &format!("Roth-Lempel deltas matching the extension ending in {last}"),
            format!("{expected:?}"),
            format!("{found:?}"),
        );
    }

    report.elapsed = start.elapsed();
    Ok(report)
}

pub fn example5() -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(
        "reproduce example5",
        "GF(11), S={3,4,5,6,7}, v=1, k=3, g4=2, f=3x^3+5x+2",
    );
    let (cfg, code) = example4_base()?;
    let f = cfg.field().clone();
    let fpoly = Poly::from_ints(&f, &[2, 5, 0, 3]);
    let f3 = fpoly.coeff(3);

    // forbidden sets at the two published u-scalars
    let fs0 = forbidden_set(&cfg, 3, f.el(2), f.sub(f.el(0), f3))?;
    let expect0: Vec<u64> = (0..11).filter(|&x| x != 8).collect();
    report.check(
        "forbidden set at u-scalar 0",
        format!("{expect0:?}"),
        format!("{:?}", fs0.union.iter().map(|e| e.enc()).collect::<Vec<_>>()),
    );
    let fs4 = forbidden_set(&cfg, 3, f.el(2), f.sub(f.el(4), f3))?;
    report.check(
        "forbidden set at u-scalar 4 is the whole field",
        11usize,
        fs4.union.len(),
    );

    // the published deep hole and its class-2 certificate
    let g = Poly::from_ints(&f, &[2, 5, 8, 3, 2]);
    let u = shape_vector(&cfg, &g, f.zero())?;
    report.check(
        "deep-hole vector",
        "[2, 7, 4, 7, 1, 0]",
        format!("{:?}", u.iter().map(|e| e.enc()).collect::<Vec<_>>()),
    );
    report.check(
        "class-2 certificate accepts",
        true,
        class2_is_deep_hole(&cfg, 3, f.el(2), f.el(8), &fpoly, f.zero())?,
    );
    let table = SyndromeTable::build(&code)?;
    report.check("definition confirms the deep hole", true, table.is_deep_hole(&u)?);

    // at u-scalar 4 no g2 yields a deep hole for this shape, by exhaustion
    let mut none_at_4 = true;
    for g2 in f.elements() {
        for f1 in f.elements() {
            for f0 in f.elements() {
                let gg = Poly::new(
                    &f,
                    vec![f0, f1, g2, f.el(3), f.el(2)],
                )?;
                let vec4 = shape_vector(&cfg, &gg, f.el(4))?;
                if table.is_deep_hole(&vec4)? {
                    none_at_4 = false;
                }
            }
        }
    }
    report.check(
        "no deep holes of this shape at u-scalar 4",
        true,
        none_at_4,
    );

    // the extension and its Roth-Lempel verdicts
    let ext = extend_by_deep_hole(&code, &u)?;
    report.check("extension is MDS [7,4,4]", "[7,4,4] MDS", fmt_class(&ext.extended)?);
    let mut found: Vec<u64> = Vec::new();
    for delta in f.elements() {
        let rl = roth_lempel(&f, cfg.points(), 4, delta)?;
        if monomial_equivalent(&ext.extended, &rl)?.is_some() {
            found.push(delta.enc());
        }
    }
    report.check("no Roth-Lempel code matches", "[]", format!("{found:?}"));

    report.elapsed = start.elapsed();
    Ok(report)
}

pub fn remark2() -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(
        "reproduce remark2",
        "GF(11), S={1,2,5,6,9}, coefficient 3",
    );
    let f = Field::prime(11)?;
    let pts = fes(&f, &[1, 2, 5, 6, 9]);

    // normal form of the delta-set branch with coefficient
    // g_{k-1}(u v - f_k)^{-1} = 3
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for exp in 0..=3u64 {
        let mut row: Vec<Fe> = pts.iter().map(|&a| f.pow(a, exp)).collect();
        row.push(if exp == 2 { f.one() } else { f.zero() });
        row.push(match exp {
            2 => f.one(),
            3 => f.el(3),
            _ => f.zero(),
        });
        rows.push(row);
    }
    let code = LinearCode::from_generator(Matrix::from_rows(&f, rows)?)?;

    report.check("code is MDS [7,4,4]", "[7,4,4] MDS", fmt_class(&code)?);
    report.check(
        "code is non-GRS (exhaustive sweep)",
        "none",
        match equivalent_to_some_grs(&code)? {
            None => "none".to_string(),
            Some(m) => format!("witness {:?}", m.kind),
        },
    );
    let mut found: Vec<u64> = Vec::new();
    for delta in f.elements() {
        let rl = roth_lempel(&f, &pts, 4, delta)?;
        if monomial_equivalent(&code, &rl)?.is_some() {
            found.push(delta.enc());
        }
    }
    report.check("Roth-Lempel deltas matching", "[3, 7]", format!("{found:?}"));

    report.elapsed = start.elapsed();
    Ok(report)
}

pub fn q8_square() -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(
        "reproduce q8-square",
        "GF(8), full evaluation set, k = 6",
    );
    let f = Field::new(2, 3, None)?;
    let all: Vec<Fe> = f.elements().collect();
    let cfg = EvalConfig::with_unit_multipliers(&f, all.clone())?;

    let sub = esgrs(&cfg, 6)?;
    report.check("extended subcode is MDS [9,6,4]", "[9,6,4] MDS", fmt_class(&sub)?);
    report.check(
        "square distinguisher of the subcode",
        1,
        square_code_distinguisher(&sub)?,
    );

    let ext = crate::constructions::egrs(&cfg, 6)?;
    report.check("extended GRS is MDS [9,6,4]", "[9,6,4] MDS", fmt_class(&ext)?);
    let d_ext = square_code_distinguisher(&ext)?;
    report.check("extended GRS distinguisher at least 2", true, d_ext >= 2);

    // the separation also holds for a non-unit multiplier vector
    let mult: Vec<Fe> = (0..8).map(|i| f.el(i % 7 + 1)).collect();
    let cfg2 = EvalConfig::new(&f, all, mult)?;
    report.check(
        "subcode distinguisher with scaled multipliers",
        1,
        square_code_distinguisher(&esgrs(&cfg2, 6)?)?,
    );
    report.check(
        "extended GRS distinguisher with scaled multipliers at least 2",
        true,
        square_code_distinguisher(&crate::constructions::egrs(&cfg2, 6)?)? >= 2,
    );

    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_ids_parse() {
        for name in ["counterexample", "example4", "example5", "remark2", "q8-square"] {
            let id: ExampleId = name.parse().unwrap();
            assert_eq!(id.to_string(), name);
        }
        assert!("example9".parse::<ExampleId>().is_err());
    }

    #[test]
    fn counterexample_report_passes() {
        let report = counterexample().unwrap();
        assert!(report.all_pass(), "{}", report.render());
    }
}
