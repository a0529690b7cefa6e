use std::fs;
use std::path::Path;
use std::time::Duration;

use armstrong::bounds::{bound_report, PhiSource};
use armstrong::code::{verify_armstrong_with, verify_st_armstrong_with};
use armstrong::construct::{
    extodc_to_code, gdd_to_extodc_even, gdd_to_extodc_odd, k2_code, odc_to_code,
    random_lll_code_with, rs_code, st22_code, InfinityCoordinate, PartOrdering,
};
use armstrong::designs::{
    parse_type, verify_base_partition, verify_double_cover, verify_gdd, DesignReport,
};
use armstrong::format::{self, Artifact};
use armstrong::search::{
    exhaust_double_cover, search_base_partition, search_gdd, search_resolvable_completion,
    ExhaustConfig, ResumeState, SearchConfig, SearchOutcome, StopReason,
};
use armstrong::{
    develop_base_partition, fixtures, ArmstrongCode, Budget as SampleBudget, CoverMode, GddDesign,
    GraphType, Limits, PartitionSystem, VerificationReport,
};
use serde::Serialize;

use crate::explain;
use crate::{
    BoundsArgs, Budget, Common, ConstructArgs, ConvertArgs, Failure, Family, Format, Infinity,
    Kind, Method, Mode, Phi, SearchArgs, SearchTarget, VerifyArgs,
};

type Outcome = Result<u8, Failure>;

const NOT_FOUND: u8 = 5;
const VERIFY_FAILED: u8 = 3;

fn read_artifact(path: &Path) -> Result<Artifact, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        status: 4,
        message: format!("{}: {e}", path.display()),
    })?;
    format::parse_any(&text).map_err(|e| Failure {
        status: 4,
        message: format!("{}: {e}", path.display()),
    })
}

fn render(a: &Artifact, fmt: Format) -> String {
    match fmt {
        Format::Text => a.to_text(),
        Format::Json => a.to_json() + "\n",
    }
}

fn write_out(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn limits(c: &Common) -> Limits {
    let d = Limits::default();
    Limits {
        max_row_subsets: c.max_row_subsets.unwrap_or(d.max_row_subsets),
        max_column_subsets: c.max_column_subsets.unwrap_or(d.max_column_subsets),
    }
}

fn mode(m: Mode) -> CoverMode {
    match m {
        Mode::Exact => CoverMode::Exact,
        Mode::AtLeast => CoverMode::AtLeast,
        Mode::AtMost => CoverMode::AtMost,
    }
}

fn search_config(b: &Budget) -> Result<SearchConfig, Failure> {
    if !(b.budget.is_finite() && b.budget > 0.0) {
        return Err(Failure::usage(
            "--budget must be a positive number of seconds",
        ));
    }
    let resume = match &b.resume {
        Some(p) => {
            let text = fs::read_to_string(p)?;
            Some(ResumeState::parse(&text).map_err(|e| Failure {
                status: 4,
                message: format!("{}: {e}", p.display()),
            })?)
        }
        None => None,
    };
    Ok(SearchConfig {
        seed: b.seed,
        time_budget: Some(Duration::from_secs_f64(b.budget)),
        node_budget: b.nodes,
        restart_nodes: b.restart_nodes,
        workers: b.workers.max(1),
        resume,
    })
}

/// Logs search statistics and turns a miss into exit status 5, writing the
/// checkpoint when asked.
fn settle<T>(out: SearchOutcome<T>, b: &Budget, what: &str) -> Result<T, Failure> {
    eprintln!(
        "search: {:?} after {} nodes, {} restarts, {:.2?}",
        out.stop, out.nodes, out.restarts, out.elapsed
    );
    if let Some(found) = out.found {
        return Ok(found);
    }
    if let (Some(path), Some(cp)) = (&b.checkpoint, &out.checkpoint) {
        fs::write(path, cp.to_text())?;
        eprintln!("checkpoint written to {}", path.display());
    }
    let message = match out.stop {
        StopReason::Exhausted => format!("no {what} exists: the search tree was exhausted"),
        _ => format!("no {what} found within the budget"),
    };
    Err(Failure {
        status: NOT_FOUND,
        message,
    })
}

enum Report {
    Code(VerificationReport),
    Design(DesignReport),
}

impl Report {
    fn passed(&self) -> bool {
        match self {
            Report::Code(r) => r.passed,
            Report::Design(r) => r.passed,
        }
    }

    fn render(&self, fmt: Format) -> String {
        match (self, fmt) {
            (Report::Code(r), Format::Text) => r.to_string(),
            (Report::Design(r), Format::Text) => r.to_string(),
            (Report::Code(r), Format::Json) => json(r) + "\n",
            (Report::Design(r), Format::Json) => json(r) + "\n",
        }
    }

    fn status(&self) -> u8 {
        if self.passed() {
            0
        } else {
            VERIFY_FAILED
        }
    }
}

fn verify_code(
    code: &ArmstrongCode,
    c: &Common,
    samples: Option<SampleBudget>,
) -> Result<Report, Failure> {
    let lim = limits(c);
    let r = match code.dependency() {
        None | Some((1, 1)) => verify_armstrong_with(code, &lim)?,
        Some(_) => verify_st_armstrong_with(code, samples, &lim)?,
    };
    Ok(Report::Code(r))
}

fn need(v: Option<usize>, name: &str, family: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::usage(format!("{family} needs --{name}")))
}

fn input_system(a: &ConstructArgs) -> Result<(PartitionSystem, Option<PartOrdering>), Failure> {
    let (system, fixture_order) = match (&a.input, a.fixture) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage("give either --input or --fixture, not both"))
        }
        (Some(p), None) => match read_artifact(p)? {
            Artifact::PartitionSystem { system } => (system, None),
            other => {
                return Err(Failure {
                    status: 4,
                    message: format!("expected a partition-system, got {}", other.kind()),
                })
            }
        },
        (None, Some(crate::Fixture::K7Odc)) => {
            (fixtures::k7_odc_system(), Some(fixtures::k7_odc_ordering()))
        }
        (None, None) => return Err(Failure::usage("this family needs --input or --fixture")),
    };
    let order = match &a.ordering {
        Some(p) => match read_artifact(p)? {
            Artifact::PartOrdering { ordering } => Some(ordering),
            other => {
                return Err(Failure {
                    status: 4,
                    message: format!("expected a part-ordering, got {}", other.kind()),
                })
            }
        },
        None => fixture_order,
    };
    Ok((system, order))
}

/// The GDD for the odd or even pipeline: read from `--input`, or searched
/// with the type fixed by `--q`.
fn obtain_gdd(a: &ConstructArgs, odd: bool) -> Result<GddDesign, Failure> {
    if let Some(p) = &a.input {
        return match read_artifact(p)? {
            Artifact::Gdd { design } => Ok(design),
            other => Err(Failure {
                status: 4,
                message: format!("expected a gdd, got {}", other.kind()),
            }),
        };
    }
    let q = need(a.q, "q", "the GDD pipeline without --input")?;
    if (q % 2 == 1) != odd {
        return Err(Failure::usage(format!(
            "q={q} has the wrong parity for this pipeline"
        )));
    }
    let tv = if odd {
        vec![(2, (3 * q - 1) / 2)]
    } else {
        if 3 * q < 18 || (3 * q - 18) % 2 != 0 {
            return Err(Failure::usage(format!(
                "q={q} is too small for the even pipeline"
            )));
        }
        vec![(2, (3 * q - 18) / 2), (17, 1)]
    };
    let cfg = search_config(&a.search)?;
    if tv == [(2, 18), (17, 1)] {
        // every block meets the 17-group, so the design is a completed
        // resolvable 3-GDD of type 2^18; search that structure instead
        eprintln!("searching 2^18 17^1 by completing a cyclic resolvable 3-GDD of type 2^18");
        return settle(search_resolvable_completion(17, &cfg)?, &a.search, "GDD");
    }
    settle(search_gdd(&tv, 4, &cfg)?, &a.search, "GDD")
}

fn even_seed(a: &ConstructArgs) -> Result<PartitionSystem, Failure> {
    match &a.seed_design {
        Some(p) => match read_artifact(p)? {
            Artifact::PartitionSystem { system } => Ok(system),
            other => Err(Failure {
                status: 4,
                message: format!("expected a partition-system, got {}", other.kind()),
            }),
        },
        None => Ok(develop_base_partition(
            &fixtures::tabulated_base(6).expect("q=6 fixture"),
        )?),
    }
}

fn extodc_design(a: &ConstructArgs) -> Result<PartitionSystem, Failure> {
    let q = need(a.q, "q", "extodc")?;
    let method = a.method.unwrap_or(if q % 2 == 0 {
        Method::BasePartition
    } else {
        Method::Gdd
    });
    match method {
        Method::BasePartition => {
            if q % 2 == 1 {
                return Err(Failure::usage(
                    "base partitions exist only for even q; use --method gdd",
                ));
            }
            let bp = match fixtures::tabulated_base(q) {
                Some(bp) if a.search.resume.is_none() => bp,
                _ => settle(
                    search_base_partition(q, &search_config(&a.search)?)?,
                    &a.search,
                    "base partition",
                )?,
            };
            Ok(develop_base_partition(&bp)?)
        }
        Method::Gdd if q % 2 == 1 => Ok(gdd_to_extodc_odd(&obtain_gdd(a, true)?)?),
        Method::Gdd => Ok(gdd_to_extodc_even(&obtain_gdd(a, false)?, &even_seed(a)?)?),
    }
}

pub fn construct(a: &ConstructArgs, c: &Common) -> Outcome {
    let family = explain::family_name(a.family);
    let (artifact, report) = match a.family {
        Family::St22 => {
            let code = st22_code(need(a.q, "q", family)?)?;
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::K2 => {
            let code = k2_code(need(a.q, "q", family)?, need(a.t, "t", family)?)?;
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::Rs => {
            let inf = match a.infinity {
                Infinity::Leading => InfinityCoordinate::LeadingCoefficient,
                Infinity::Linear => InfinityCoordinate::LinearCoefficient,
            };
            let code = rs_code(need(a.q, "q", family)?, need(a.k, "k", family)?, inf)?;
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::RandomLll => {
            let (q, k, n) = (
                need(a.q, "q", family)?,
                need(a.k, "k", family)?,
                need(a.n, "n", family)?,
            );
            let out = random_lll_code_with(
                q,
                k,
                a.t.unwrap_or(1),
                n,
                a.search.seed,
                a.retries,
                &limits(c),
            )?;
            eprintln!(
                "random-lll: {} attempts ({} with repeated rows, {} failing condition (i), {} failing condition (ii))",
                out.attempts, out.duplicate_rows, out.failed_condition_i, out.failed_condition_ii
            );
            let Some(code) = out.code else {
                return Err(Failure {
                    status: NOT_FOUND,
                    message: "no sampled code passed within the retry budget".into(),
                });
            };
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::OdcCode => {
            let (system, order) = input_system(a)?;
            let code = odc_to_code(&system, order.as_ref())?;
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::ExtodcCode => {
            let (system, order) = input_system(a)?;
            let code = match extodc_to_code(&system, order.as_ref()) {
                Ok(code) => code,
                // an ODC is an extODC whose partitions need not be triangle factors
                Err(armstrong::Error::Precondition(why)) => {
                    if !verify_double_cover(&system, CoverMode::Exact)?.passed {
                        return Err(Failure::usage(why));
                    }
                    odc_to_code(&system, order.as_ref())?
                }
                Err(e) => return Err(e.into()),
            };
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::Extodc => {
            let system = extodc_design(a)?;
            let r = Report::Design(verify_double_cover(&system, CoverMode::AtLeast)?);
            (Artifact::PartitionSystem { system }, r)
        }
        Family::GddOdd => {
            let system = gdd_to_extodc_odd(&obtain_gdd(a, true)?)?;
            let code = extodc_to_code(&system, None)?;
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
        Family::GddEven => {
            let system = gdd_to_extodc_even(&obtain_gdd(a, false)?, &even_seed(a)?)?;
            let code = extodc_to_code(&system, None)?;
            let r = verify_code(&code, c, None)?;
            (Artifact::Code { code }, r)
        }
    };
    write_out(&render(&artifact, c.format), a.output.as_deref())?;
    if c.explain {
        eprintln!("{}", explain::construction(a.family));
    }
    eprint!("{}", report.render(c.format));
    Ok(report.status())
}

pub fn verify(a: &VerifyArgs, c: &Common) -> Outcome {
    let artifact = read_artifact(&a.path)?;
    let found = match &artifact {
        Artifact::Code { .. } => Some(Kind::Code),
        Artifact::PartitionSystem { .. } => Some(Kind::Design),
        Artifact::Gdd { .. } => Some(Kind::Gdd),
        Artifact::BasePartition { .. } => Some(Kind::BasePartition),
        Artifact::PartOrdering { .. } => None,
    };
    let Some(found) = found else {
        return Err(Failure::usage("a part-ordering has nothing to verify"));
    };
    if let Some(kind) = a.kind {
        if kind != found {
            return Err(Failure::usage(format!(
                "--kind {kind:?} given but the file holds a {}",
                artifact.kind()
            )));
        }
    }
    let report = match artifact {
        Artifact::Code { code } => {
            let st = match (a.s, a.t) {
                (None, None) => code.dependency(),
                (s, t) => Some((s.unwrap_or(1), t.unwrap_or(1))),
            };
            let code = code.reparameterize(a.k.unwrap_or(code.k()), st)?;
            let samples = a.samples.map(|samples| SampleBudget {
                samples,
                seed: a.seed,
            });
            verify_code(&code, c, samples)?
        }
        Artifact::PartitionSystem { system } => {
            Report::Design(verify_double_cover(&system, mode(a.mode))?)
        }
        Artifact::Gdd { design } => Report::Design(verify_gdd(&design)),
        Artifact::BasePartition { base } => Report::Design(verify_base_partition(&base)),
        Artifact::PartOrdering { .. } => unreachable!("rejected above"),
    };
    print!("{}", report.render(c.format));
    if c.explain {
        println!("{}", explain::verifier(found));
    }
    Ok(report.status())
}

pub fn bounds(a: &BoundsArgs, c: &Common) -> Outcome {
    let source = match a.phi {
        Phi::Formula => PhiSource::Formula,
        Phi::Oracle => PhiSource::Oracle,
    };
    let r = bound_report(a.q, a.k, a.s, a.t, source)?;
    match c.format {
        Format::Text => print!("{r}"),
        Format::Json => println!("{}", json(&r)),
    }
    if c.explain {
        println!("{}", explain::bounds());
    }
    if !r.consistent() {
        return Err(Failure {
            status: 1,
            message: "lower bound exceeds upper bound".into(),
        });
    }
    Ok(0)
}

#[derive(Serialize)]
struct ExhaustSummary<'a> {
    m: usize,
    graph_type: String,
    mode: CoverMode,
    per_system: usize,
    partitions_of_type: usize,
    pruned: bool,
    solutions: usize,
    classes: Option<usize>,
    nodes: u64,
    elapsed_ms: u128,
    representatives: &'a [PartitionSystem],
}

pub fn search(a: &SearchArgs, c: &Common) -> Outcome {
    match &a.target {
        SearchTarget::Gdd {
            type_,
            k,
            budget,
            output,
        } => {
            let tv = parse_type(type_)?;
            let design = settle(search_gdd(&tv, *k, &search_config(budget)?)?, budget, "GDD")?;
            write_out(
                &render(&Artifact::Gdd { design }, c.format),
                output.as_deref(),
            )?;
            Ok(0)
        }
        SearchTarget::Completion { p, budget, output } => {
            let design = settle(
                search_resolvable_completion(*p, &search_config(budget)?)?,
                budget,
                "resolvable design",
            )?;
            write_out(
                &render(&Artifact::Gdd { design }, c.format),
                output.as_deref(),
            )?;
            Ok(0)
        }
        SearchTarget::BasePartition { q, budget, output } => {
            let base = settle(
                search_base_partition(*q, &search_config(budget)?)?,
                budget,
                "base partition",
            )?;
            write_out(
                &render(&Artifact::BasePartition { base }, c.format),
                output.as_deref(),
            )?;
            Ok(0)
        }
        SearchTarget::Exhaust {
            m,
            graph_type,
            mode: md,
            no_pruning,
            workers,
            output,
        } => {
            let gt: GraphType = graph_type.parse()?;
            let d = ExhaustConfig::default();
            let cfg = ExhaustConfig {
                pruning: !no_pruning,
                workers: (*workers).max(1),
                max_points: c.max_points.unwrap_or(d.max_points),
                max_partitions: c.max_partitions.unwrap_or(d.max_partitions),
                ..d
            };
            let r = exhaust_double_cover(*m, &gt, mode(*md), &cfg)?;
            let reps = r.classes.clone().unwrap_or_default();
            let summary = ExhaustSummary {
                m: r.m,
                graph_type: r.graph_type.to_string(),
                mode: r.mode,
                per_system: r.per_system,
                partitions_of_type: r.partitions_of_type,
                pruned: r.pruned,
                solutions: r.solutions.len(),
                classes: r.classes.as_ref().map(Vec::len),
                nodes: r.nodes,
                elapsed_ms: r.elapsed.as_millis(),
                representatives: &reps,
            };
            match c.format {
                Format::Json => println!("{}", json(&summary)),
                Format::Text => {
                    println!(
                        "m={} type={} mode={} partitions-per-system={} partitions-of-type={} pruned={}",
                        summary.m, summary.graph_type, summary.mode, summary.per_system, summary.partitions_of_type, summary.pruned
                    );
                    println!("solutions: {}", summary.solutions);
                    match summary.classes {
                        Some(n) => println!("isomorphism classes: {n}"),
                        None => println!("isomorphism classes: not computed for m={}", summary.m),
                    }
                    println!("nodes: {}", summary.nodes);
                    println!("elapsed: {:.2?}", r.elapsed);
                }
            }
            if let Some(dir) = output {
                fs::create_dir_all(dir)?;
                let ext = if c.format == Format::Json {
                    "json"
                } else {
                    "txt"
                };
                for (i, system) in reps.into_iter().enumerate() {
                    let text = render(&Artifact::PartitionSystem { system }, c.format);
                    fs::write(dir.join(format!("class-{}.{ext}", i + 1)), text)?;
                }
            }
            Ok(0)
        }
    }
}

pub fn convert(a: &ConvertArgs) -> Outcome {
    let text = fs::read_to_string(&a.input)?;
    let was_json = text.trim_start().starts_with('{');
    let artifact = format::parse_any(&text).map_err(|e| Failure {
        status: 4,
        message: format!("{}: {e}", a.input.display()),
    })?;
    let to =
        a.to.unwrap_or(if was_json { Format::Text } else { Format::Json });
    write_out(&render(&artifact, to), a.output.as_deref())?;
    Ok(0)
}
