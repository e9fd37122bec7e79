//! Job orchestration: one JobSpec in, one deterministic report out.

use gmcalc_core::brieskorn::{nabla_eta_vec, reduce_n_form, ConnectionData, EtaCoords};
use gmcalc_core::forms::euler_form;
use gmcalc_core::hodge::{
    compute_d_beta, compute_d_beta_symbolic, compute_d_beta_with_retry, DBetaMap,
};
use gmcalc_core::milnor::{
    check_strong_tameness, separable_critical_values, split_separable, MilnorData,
    SeparableCriticalValues, TameInput,
};
use gmcalc_core::pf::picard_fuchs;
use gmcalc_core::{Error, Rational, Result};

use crate::parser::{infer_variables, parse_polynomial};
use crate::report;

#[derive(Debug, Clone, PartialEq)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone)]
pub enum Command {
    TameCheck,
    Milnor,
    Connection,
    HodgeBasis { b: Option<Rational>, symbolic: bool },
    HodgeCriterion { b: Option<Rational>, symbolic: bool },
    PicardFuchs { form: String, nabla: u32 },
    Fermat { m: Vec<u32> },
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub polynomial: Option<String>,
    pub vars: Option<Vec<String>>,
    pub weights: Option<Vec<u32>>,
    pub format: OutputFormat,
}

pub struct TameContext {
    pub names: Vec<String>,
    pub data: MilnorData,
    pub critical_values: Option<SeparableCriticalValues>,
}

fn build_context(job: &JobSpec) -> Result<TameContext> {
    let src = job.polynomial.as_deref().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "missing polynomial argument".into(),
    })?;
    let names = match &job.vars {
        Some(v) => v.clone(),
        None => infer_variables(src)?,
    };
    let f = parse_polynomial(src, &names)?;
    let alphas = match &job.weights {
        Some(w) => {
            if w.len() != names.len() {
                return Err(Error::ArityMismatch {
                    expected: names.len(),
                    got: w.len(),
                });
            }
            w.clone()
        }
        None => vec![1; names.len()],
    };
    let input = TameInput::with_auto_degree(f, alphas)?;
    let data = check_strong_tameness(input)?;
    let critical_values = split_separable(data.f())
        .ok()
        .and_then(|parts| separable_critical_values(&parts).ok());
    Ok(TameContext {
        names,
        data,
        critical_values,
    })
}

fn d_beta_for(ctx: &TameContext, b: &Option<Rational>, symbolic: bool) -> Result<DBetaMap> {
    if symbolic {
        return compute_d_beta_symbolic(&ctx.data);
    }
    match b {
        // a user-pinned b fails hard; the default retries at b+1, b+2
        Some(b) => compute_d_beta(&ctx.data, b),
        None => compute_d_beta_with_retry(&ctx.data, &Rational::from_int(1)),
    }
}

/// Class of `[P * eta]` in the eta basis, for the picard-fuchs target form.
fn form_to_eta_coords(
    ctx: &TameContext,
    conn: &ConnectionData,
    form_src: &str,
) -> Result<EtaCoords> {
    let p = parse_polynomial(form_src, &ctx.names)?;
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let psi = euler_form(ctx.data.weights()).scale_poly(&p);
    reduce_n_form(&psi, &ctx.data, conn)
}

pub fn run(job: &JobSpec) -> Result<String> {
    match &job.command {
        Command::Fermat { m } => {
            let fp = gmcalc_core::hodge::fermat_hodge_lattice(m)?;
            Ok(report::render_fermat(&fp, &job.format))
        }
        Command::TameCheck => {
            let ctx = build_context(job)?;
            Ok(report::render_tame_check(&ctx, &job.format))
        }
        Command::Milnor => {
            let ctx = build_context(job)?;
            Ok(report::render_milnor(&ctx, &job.format))
        }
        Command::Connection => {
            let ctx = build_context(job)?;
            let conn = ConnectionData::new(&ctx.data)?;
            Ok(report::render_connection(&ctx, &conn, &job.format))
        }
        Command::HodgeBasis { b, symbolic } => {
            let ctx = build_context(job)?;
            let conn = ConnectionData::new(&ctx.data)?;
            let dmap = d_beta_for(&ctx, b, *symbolic)?;
            let basis = gmcalc_core::hodge::hodge_basis(&ctx.data, &conn, &dmap)?;
            Ok(report::render_hodge_basis(&ctx, &dmap, &basis, &job.format))
        }
        Command::HodgeCriterion { b, symbolic } => {
            let ctx = build_context(job)?;
            let conn = ConnectionData::new(&ctx.data)?;
            let dmap = d_beta_for(&ctx, b, *symbolic)?;
            let crit = gmcalc_core::hodge::hodge_cycle_criterion(&ctx.data, &conn, &dmap)?;
            Ok(report::render_hodge_criterion(
                &ctx,
                &dmap,
                &crit,
                &job.format,
            ))
        }
        Command::PicardFuchs { form, nabla } => {
            let ctx = build_context(job)?;
            let conn = ConnectionData::new(&ctx.data)?;
            let mut element = form_to_eta_coords(&ctx, &conn, form)?;
            for _ in 0..*nabla {
                element = nabla_eta_vec(&element, &conn);
            }
            let eq = picard_fuchs(&element, &ctx.data, &conn)?;
            Ok(report::render_picard_fuchs(
                &ctx,
                form,
                *nabla,
                &element,
                &eq,
                &job.format,
            ))
        }
    }
}

/// Parse "a1,a2,..,ak" into numbers.
pub fn parse_u32_list(src: &str) -> Result<Vec<u32>> {
    src.split(',')
        .map(|s| {
            s.trim().parse::<u32>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad number `{s}` in list"),
            })
        })
        .collect()
}
