use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use gct_core::flatten::{
    chow_border_lower_bound, exact_rank, flattening_ranks, polarize, shifted_partials_dim, waring_border_lower_bound,
};
use gct_core::geometry::{
    cayley_check, dual_dimension_at, hessian, perm_special_point, rank_deficient_point, stabilizer_lie_dim,
    verify_discriminant_identity, verify_sfturbo, verify_sylvester_franke, SfturboCheck,
};
use gct_core::hhh::{
    build_hhh, hhh_rank, hhh_rank_by_weights, kernel_basis, kernel_character, kernel_multiplicities,
    kernel_vanishes_on_chow, vector_vanishes_on_chow, HhhLimits,
};
use gct_core::latin::{alon_tarsi_count, pairing_allvars_det, pairing_perm_det, AtOptions};
use gct_core::rep::{
    character, character_value, gct_useful_filter, kronecker, littlewood_richardson, occurrence_obstruction_test,
    plethysm_mult, symmetric_kronecker, Partition,
};
use gct_core::zoo::{
    benor_decomposition, fischer_decomposition, make, perm2_witness, ryser_decomposition, Family, Witness,
};
use gct_core::{Field, Poly, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Command, FlattenCmd, GeoCmd, HhhCmd, HhhShape, LatinCmd, RepCmd, ZooCmd};
use crate::cache::sha256_hex;
use crate::report::Report;
use crate::CliError;

type Run = Box<dyn FnOnce() -> Result<Report, CliError>>;

/// A command with its inputs resolved, ready to run or to be served from cache.
pub struct Job {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    /// Commands that write files are always executed.
    pub cacheable: bool,
    pub run: Run,
}

struct Builder {
    command: String,
    parameters: BTreeMap<String, String>,
    cacheable: bool,
}

impl Builder {
    fn new(command: &str) -> Self {
        Builder {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            cacheable: true,
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn uncached(mut self) -> Self {
        self.cacheable = false;
        self
    }

    fn run(self, f: impl FnOnce() -> Result<Report, CliError> + 'static) -> Job {
        Job {
            command: self.command,
            parameters: self.parameters,
            cacheable: self.cacheable,
            run: Box::new(f),
        }
    }
}

fn partition(s: &str) -> Result<Partition, CliError> {
    Ok(s.parse::<Partition>()?)
}

/// Loads `zoo:<family>:<params>` or a polynomial record file.
fn load_poly(source: &str) -> Result<Poly, CliError> {
    if let Some(spec) = source.strip_prefix("zoo:") {
        let mut parts = spec.split(':');
        let family: Family = parts.next().unwrap_or_default().parse()?;
        let params = parts
            .map(|p| p.parse::<usize>().map_err(|e| CliError::Usage(format!("bad parameter {p:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(make(family, &params)?);
    }
    let text = fs::read_to_string(source).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    Ok(Poly::from_json(&text)?)
}

/// A loaded polynomial and the digest of its canonical record, which is what
/// the cache key sees.
fn poly_input(b: Builder, key: &str, source: &str) -> Result<(Builder, Poly), CliError> {
    let p = load_poly(source)?;
    let digest = sha256_hex(serde_json::to_string(&p.to_record()).expect("record").as_bytes());
    Ok((b.param(key, digest), p))
}

fn write_or_print(report: Report, text: String, output: Option<&Path>) -> Result<Report, CliError> {
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(report.field("written_to", path.display().to_string()))
        }
        None => Ok(report.body(text)),
    }
}

pub fn plan(cmd: Command, seed: u64) -> Result<Job, CliError> {
    match cmd {
        Command::Zoo(c) => zoo(c),
        Command::Flatten(c) => flatten(c),
        Command::Hhh(c) => hhh(c, seed),
        Command::Rep(c) => rep(c),
        Command::Latin(c) => latin(c),
        Command::Geo(c) => geo(c, seed),
    }
}

fn zoo(cmd: ZooCmd) -> Result<Job, CliError> {
    Ok(match cmd {
        ZooCmd::List => Builder::new("zoo list").run(|| {
            let mut r = Report::new("polynomial families");
            for f in Family::ALL {
                r = r.field(f.name(), f.params().join(" "));
            }
            Ok(r)
        }),
        ZooCmd::Make { family, params, output } => {
            let f: Family = family.parse()?;
            let b = Builder::new("zoo make")
                .param("family", f)
                .param("params", format!("{params:?}"));
            let b = if output.is_some() { b.uncached() } else { b };
            b.run(move || {
                let p = make(f, &params)?;
                let r = Report::new(format!("{f} {params:?}"))
                    .field("num_vars", p.num_vars())
                    .field("terms", p.len());
                write_or_print(r, p.to_json(), output.as_deref())
            })
        }
        ZooCmd::Witness { kind, params, output } => {
            let b = Builder::new("zoo witness")
                .param("kind", &kind)
                .param("params", format!("{params:?}"));
            let b = if output.is_some() { b.uncached() } else { b };
            b.run(move || {
                let arg = |i: usize| {
                    params
                        .get(i)
                        .copied()
                        .ok_or_else(|| CliError::Usage(format!("{kind} needs {} parameter(s)", i + 1)))
                };
                let w = match kind.as_str() {
                    "ryser" => Witness::Chow(ryser_decomposition(arg(0)?)?),
                    "fischer" => Witness::Waring(fischer_decomposition(arg(0)?)?),
                    "benor" => Witness::Chow(benor_decomposition(arg(0)?, arg(1)?)?),
                    "perm2" => Witness::DetExpression(perm2_witness()),
                    other => return Err(CliError::Usage(format!("unknown witness kind {other:?}"))),
                };
                let r = Report::new(format!("{kind} witness")).field("terms", w.term_count());
                let text = serde_json::to_string_pretty(&w).expect("witness serializes");
                write_or_print(r, text, output.as_deref())
            })
        }
        ZooCmd::Verify { witness, target } => {
            let text =
                fs::read_to_string(&witness).map_err(|e| CliError::Io(format!("{}: {e}", witness.display())))?;
            let w: Witness =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("witness file: {e}")))?;
            let b = Builder::new("zoo verify").param("witness", sha256_hex(text.as_bytes()));
            let (b, p) = poly_input(b, "target", &target)?;
            b.run(move || {
                let ok = w.verify(&p)?;
                Ok(Report::new("witness verification")
                    .field("terms", w.term_count())
                    .check("witness expands to the target", ok))
            })
        }
    })
}

fn flatten(cmd: FlattenCmd) -> Result<Job, CliError> {
    Ok(match cmd {
        FlattenCmd::Rank { poly, k } => {
            let (b, p) = poly_input(Builder::new("flatten rank"), "poly", &poly)?;
            let b = b.param("k", format!("{k:?}"));
            b.run(move || {
                let mut r = Report::new("flattening ranks");
                match k {
                    Some(k) => {
                        let cert = exact_rank(&polarize(&p, k)?);
                        r = r
                            .field("k", k)
                            .field("rows", cert.rows)
                            .field("cols", cert.cols)
                            .field("rank", cert.rank);
                    }
                    None => {
                        for (k, rank) in flattening_ranks(&p)? {
                            r = r.field(&format!("rank k={k}"), rank);
                        }
                    }
                }
                Ok(r)
            })
        }
        FlattenCmd::WaringLb { poly } => {
            let (b, p) = poly_input(Builder::new("flatten waring-lb"), "poly", &poly)?;
            b.run(move || Ok(Report::new("border Waring rank lower bound").field("bound", waring_border_lower_bound(&p)?)))
        }
        FlattenCmd::ChowLb { poly } => {
            let (b, p) = poly_input(Builder::new("flatten chow-lb"), "poly", &poly)?;
            b.run(move || Ok(Report::new("border Chow rank lower bound").field("bound", chow_border_lower_bound(&p)?)))
        }
        FlattenCmd::Shifted { poly, k, l } => {
            let (b, p) = poly_input(Builder::new("flatten shifted"), "poly", &poly)?;
            b.param("k", k).param("l", l).run(move || {
                Ok(Report::new("shifted partials")
                    .field("k", k)
                    .field("l", l)
                    .field("dimension", shifted_partials_dim(&p, k, l)?))
            })
        }
    })
}

fn limits(shape: &HhhShape) -> HhhLimits {
    let mut lim = HhhLimits::default();
    if let Some(b) = shape.max_basis {
        lim.max_basis = b;
    }
    if let Some(w) = shape.max_work {
        lim.max_elimination_work = w;
    }
    lim
}

fn shape_params(b: Builder, s: &HhhShape) -> Builder {
    let lim = limits(s);
    b.param("d", s.d)
        .param("n", s.n)
        .param("v", s.v)
        .param("weight", format!("{:?}", s.weight))
        .param("max_basis", lim.max_basis)
        .param("max_work", lim.max_elimination_work)
}

fn hhh(cmd: HhhCmd, seed: u64) -> Result<Job, CliError> {
    Ok(match cmd {
        HhhCmd::Rank(s) => shape_params(Builder::new("hhh rank"), &s).run(move || {
            let lim = limits(&s);
            let title = format!("h_{{{},{}}} on C^{}", s.d, s.n, s.v);
            let (dom, cod, rank) = match &s.weight {
                Some(w) => {
                    let map = build_hhh(s.d, s.n, s.v, Some(w), &lim)?;
                    let rank = hhh_rank(&map).rank as u128;
                    (map.domain.len() as u128, map.codomain.len() as u128, rank)
                }
                None => {
                    let rep = hhh_rank_by_weights(s.d, s.n, s.v, &lim)?;
                    (rep.domain_dim, rep.codomain_dim, rep.rank)
                }
            };
            Ok(Report::new(title)
                .field("domain_dim", dom.to_string())
                .field("codomain_dim", cod.to_string())
                .field("rank", rank.to_string())
                .field("kernel_dim", (dom - rank).to_string())
                .field("injective", rank == dom)
                .field("surjective", rank == cod))
        }),
        HhhCmd::Kernel { shape: s, trials } => shape_params(Builder::new("hhh kernel"), &s)
            .param("trials", trials)
            .param("seed", seed)
            .run(move || {
                let lim = limits(&s);
                let (vectors, vanish) = match &s.weight {
                    Some(w) => {
                        let map = build_hhh(s.d, s.n, s.v, Some(w), &lim)?;
                        let ker = kernel_basis(&map);
                        let mut all = true;
                        for k in &ker {
                            all &= vector_vanishes_on_chow(&map, k, trials, seed)?;
                        }
                        (ker.len(), all)
                    }
                    None => {
                        let rep = kernel_vanishes_on_chow(s.d, s.n, s.v, trials, seed, &lim)?;
                        (rep.kernel_vectors, rep.all_vanish)
                    }
                };
                Ok(Report::new(format!("kernel of h_{{{},{}}} on C^{}", s.d, s.n, s.v))
                    .field("kernel_vectors", vectors)
                    .field("trials", trials)
                    .check("kernel vectors vanish on random products of linear forms", vanish))
            }),
        HhhCmd::Character { shape: s, targets } => {
            if s.weight.is_some() {
                return Err(CliError::Usage("character works on all weights; drop --weight".into()));
            }
            let parsed = targets.iter().map(|t| partition(t)).collect::<Result<Vec<_>, _>>()?;
            shape_params(Builder::new("hhh character"), &s)
                .param("targets", format!("{targets:?}"))
                .run(move || {
                    let lim = limits(&s);
                    let ch = if parsed.is_empty() {
                        kernel_character(s.d, s.n, s.v, &lim)?
                    } else {
                        kernel_multiplicities(s.d, s.n, s.v, &parsed, &lim)?
                    };
                    let mut r = Report::new(format!("kernel of h_{{{},{}}} on C^{}", s.d, s.n, s.v));
                    for (p, m) in ch {
                        r = r.field(&p.to_string(), m);
                    }
                    Ok(r)
                })
        }
    })
}

fn rep(cmd: RepCmd) -> Result<Job, CliError> {
    Ok(match cmd {
        RepCmd::Char { pi, mu } => {
            let (p, m) = (partition(&pi)?, mu.as_deref().map(partition).transpose()?);
            Builder::new("rep char")
                .param("pi", &p)
                .param("mu", format!("{m:?}"))
                .run(move || {
                    let mut r = Report::new(format!("character of {p}"));
                    match m {
                        Some(m) => r = r.field("value", character_value(&p, &m)?.to_string()),
                        None => {
                            for (c, v) in character(&p).values {
                                r = r.field(&c.to_string(), v.to_string());
                            }
                        }
                    }
                    Ok(r)
                })
        }
        RepCmd::Kron { pi, mu, nu } => {
            let (a, b, c) = (partition(&pi)?, partition(&mu)?, partition(&nu)?);
            Builder::new("rep kron").param("pi", &a).param("mu", &b).param("nu", &c).run(move || {
                Ok(Report::new("Kronecker coefficient").field("value", kronecker(&a, &b, &c)?.to_string()))
            })
        }
        RepCmd::Skron { pi, mu } => {
            let (a, b) = (partition(&pi)?, partition(&mu)?);
            Builder::new("rep skron").param("pi", &a).param("mu", &b).run(move || {
                Ok(Report::new("symmetric Kronecker coefficient")
                    .field("value", symmetric_kronecker(&a, &b)?.to_string())
                    .field("kronecker", kronecker(&a, &b, &b)?.to_string()))
            })
        }
        RepCmd::Lr { pi, mu, nu } => {
            let (a, b, c) = (partition(&pi)?, partition(&mu)?, partition(&nu)?);
            Builder::new("rep lr").param("pi", &a).param("mu", &b).param("nu", &c).run(move || {
                Ok(Report::new("Littlewood-Richardson coefficient")
                    .field("value", littlewood_richardson(&a, &b, &c)?.to_string()))
            })
        }
        RepCmd::Pleth { pi, d, n } => {
            let p = partition(&pi)?;
            Builder::new("rep pleth").param("pi", &p).param("d", d).param("n", n).run(move || {
                Ok(Report::new(format!("multiplicity of S_({p}) in S^{d}(S^{n})"))
                    .field("value", plethysm_mult(&p, d, n)?.to_string()))
            })
        }
        RepCmd::Obstruct { pi, d, n } => {
            let p = partition(&pi)?;
            Builder::new("rep obstruct").param("pi", &p).param("d", d).param("n", n).run(move || {
                let v = occurrence_obstruction_test(&p, d, n)?;
                Ok(Report::new(format!("obstruction test for ({p}) against ({d}^{n})"))
                    .field("plethysm", v.plethysm.to_string())
                    .field("kronecker", v.kronecker.to_string())
                    .field("symmetric_kronecker", v.symmetric_kronecker.to_string())
                    .field("representation_theoretic", v.representation_theoretic)
                    .field("occurrence", v.occurrence))
            })
        }
        RepCmd::Useful { pi, d, n, m } => {
            let p = partition(&pi)?;
            Builder::new("rep useful")
                .param("pi", &p)
                .param("d", d)
                .param("n", n)
                .param("m", m)
                .run(move || {
                    Ok(Report::new(format!("usefulness filter for ({p})")).field("passes", gct_useful_filter(&p, d, n, m)?))
                })
        }
    })
}

fn latin(cmd: LatinCmd) -> Result<Job, CliError> {
    Ok(match cmd {
        LatinCmd::Count { n, resume, max_n } => {
            let b = Builder::new("latin count").param("n", n).param("max_n", max_n);
            let b = if resume.is_some() { b.uncached() } else { b };
            b.run(move || {
                let c = alon_tarsi_count(n, &AtOptions { max_n, checkpoint: resume })?;
                Ok(Report::new(format!("Latin squares of order {n}"))
                    .field("total", c.total().to_string())
                    .field("even", c.count_plus.to_string())
                    .field("odd", c.count_minus.to_string())
                    .field("difference", c.difference().to_string())
                    .field("column_difference", c.column_difference().to_string()))
            })
        }
        LatinCmd::Pairing { n, all_vars } => Builder::new("latin pairing")
            .param("n", n)
            .param("all_vars", all_vars)
            .run(move || {
                let (what, v) = if all_vars {
                    ("<prod x_ij, det^n>", pairing_allvars_det(n)?)
                } else {
                    ("<perm^n, det^n>", pairing_perm_det(n)?)
                };
                Ok(Report::new(format!("pairing {what} at n={n}")).field("value", v.to_string()))
            }),
    })
}

fn parse_check(s: &str) -> Result<SfturboCheck, CliError> {
    serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
        .map_err(|_| CliError::Usage(format!("unknown check {s:?}; use cp1, cp3, cp5, sub_top, top")))
}

fn geo(cmd: GeoCmd, seed: u64) -> Result<Job, CliError> {
    Ok(match cmd {
        GeoCmd::Hessian { poly } => {
            let (b, p) = poly_input(Builder::new("geo hessian"), "poly", &poly)?;
            b.run(move || {
                let h = hessian(&p)?;
                let rows: Vec<Vec<String>> =
                    h.entries().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                Ok(Report::new("Hessian").field("size", h.size()).field("entries", rows))
            })
        }
        GeoCmd::Cp { poly, up_to } => {
            let (b, p) = poly_input(Builder::new("geo cp"), "poly", &poly)?;
            b.param("up_to", up_to).run(move || {
                let cps = hessian(&p)?.charpoly_coeffs(up_to)?;
                let mut r = Report::new("characteristic polynomial of the Hessian");
                for (s, c) in cps.iter().enumerate() {
                    r = r.field(&format!("cp_{s}"), c.to_string());
                }
                Ok(r)
            })
        }
        GeoCmd::Sfturbo { v, checks } => {
            let checks = match checks {
                Some(list) => list.iter().map(|c| parse_check(c)).collect::<Result<Vec<_>, _>>()?,
                None => SfturboCheck::defaults(v),
            };
            Builder::new("geo sfturbo")
                .param("v", v)
                .param("checks", format!("{checks:?}"))
                .run(move || {
                    let rep = verify_sfturbo(v, &checks)?;
                    let mut r = Report::new(format!("Hessian of det_{v}"));
                    for o in rep.outcomes {
                        r = r.check(format!("{:?}: {}", o.check, o.detail), o.passed);
                    }
                    Ok(r)
                })
        }
        GeoCmd::Discriminant => Builder::new("geo discriminant").run(|| {
            Ok(Report::new("discriminant of the binary cubic").check("det(H(Δ)) = 3888·Δ²", verify_discriminant_identity()?))
        }),
        GeoCmd::Cayley { n, s } => Builder::new("geo cayley").param("n", n).param("s", s).run(move || {
            Ok(Report::new(format!("Cayley identity n={n} s={s}"))
                .check(format!("det_{n}(∂) det_{n}^{} = ((s+n)!/s!) det_{n}^{s}", s + 1), cayley_check(n, s)?))
        }),
        GeoCmd::Sylfranke { v, k, p } => Builder::new("geo sylfranke")
            .param("v", v)
            .param("k", k)
            .param("p", p)
            .run(move || {
                let rep = verify_sylvester_franke(v, k, p)?;
                Ok(Report::new(format!("compound {k} of the generic {v}x{v} matrix"))
                    .field("coefficient", rep.coefficient)
                    .field("detail", rep.detail)
                    .check(format!("det^{p} divides cp_{}", rep.coefficient), rep.divisible))
            }),
        GeoCmd::Dualdim { poly, point } => {
            let (b, p) = poly_input(Builder::new("geo dualdim"), "poly", &poly)?;
            let w: Vec<Rational> = match point {
                Some(coords) => coords
                    .iter()
                    .map(|c| Rational::parse_exact(c.trim()))
                    .collect::<Result<_, _>>()?,
                None => sample_point(&poly, seed)?,
            };
            let shown: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            b.param("point", shown.join(",")).run(move || {
                Ok(Report::new("dual variety dimension")
                    .field("point", shown)
                    .field("dimension", dual_dimension_at(&p, &w)?))
            })
        }
        GeoCmd::Stab { poly } => {
            let (b, p) = poly_input(Builder::new("geo stab"), "poly", &poly)?;
            b.run(move || Ok(Report::new("stabilizer Lie algebra").field("dimension", stabilizer_lie_dim(&p)?)))
        }
    })
}

/// Default points for `zoo:det:n` (random, rank n−1) and `zoo:perm:m`.
fn sample_point(source: &str, seed: u64) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = source.split(':').collect();
    let size = |s: &str| s.parse::<usize>().map_err(|e| CliError::Usage(e.to_string()));
    match parts.as_slice() {
        ["zoo", "det", n] => Ok(rank_deficient_point(size(n)?, &mut ChaCha8Rng::seed_from_u64(seed))),
        ["zoo", "perm", m] => Ok(perm_special_point(size(m)?)),
        _ => Err(CliError::Usage(
            "--point is required unless the polynomial is zoo:det:<n> or zoo:perm:<m>".into(),
        )),
    }
}
