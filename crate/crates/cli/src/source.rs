//! Coloring sources accepted by `--coloring` and `--start`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rado_core::colorings::{
    alternating_prefix_coloring, block_coloring, lift_from_cyclic, point_coloring_cyclic, random_coloring, BlockSpec,
};
use rado_core::{Color, Coloring, Domain, DomainKind};

/// Seed carried by a `random:seed` source.
pub fn seed_of(spec: &str) -> Option<u64> {
    spec.strip_prefix("random:")?.parse().ok()
}

fn need_interval(domain: Domain, what: &str) -> Result<usize> {
    match domain {
        Domain::Interval(n) => Ok(n),
        Domain::Cyclic(_) => bail!("coloring '{what}' is defined on [n]; use --n"),
    }
}

fn read_coloring(path: &str, kind: DomainKind) -> Result<Coloring> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Coloring::parse_text(&text, kind).map_err(|e| anyhow!(e).context(format!("in {path}")))
}

/// `schur`, `altprefix:c`, `blocks:spec`, `point[:m]`, `random:seed`,
/// `lift:m:file`, `red`, `blue`, `file:path`, or a path.
pub fn resolve(spec: &str, domain: Domain) -> Result<Coloring> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let f = match head {
        "schur" => block_coloring(need_interval(domain, spec)?, &BlockSpec::schur()),
        "blocks" => block_coloring(need_interval(domain, spec)?, &rest.parse::<BlockSpec>()?),
        "altprefix" => {
            let c = rest.parse().with_context(|| format!("bad c in '{spec}'"))?;
            alternating_prefix_coloring(need_interval(domain, spec)?, c)?
        }
        "point" => match (domain, rest) {
            (Domain::Cyclic(m), "") => point_coloring_cyclic(m),
            (Domain::Cyclic(m), r) if r.parse::<usize>().ok() == Some(m) => point_coloring_cyclic(m),
            (Domain::Interval(n), r) if !r.is_empty() => {
                let m: usize = r.parse().with_context(|| format!("bad m in '{spec}'"))?;
                lift_from_cyclic(&point_coloring_cyclic(m), n)?
            }
            _ => bail!("'{spec}': use 'point' with --zm or 'point:m' with --n"),
        },
        "random" => {
            let seed = seed_of(spec).ok_or_else(|| anyhow!("bad seed in '{spec}'"))?;
            random_coloring(domain, seed)
        }
        "lift" => {
            let (m, path) = rest.split_once(':').ok_or_else(|| anyhow!("expected lift:m:file"))?;
            let m: usize = m.parse().with_context(|| format!("bad m in '{spec}'"))?;
            let base = read_coloring(path, DomainKind::Cyclic)?;
            if base.domain() != Domain::Cyclic(m) {
                bail!("{path} colors {}, expected Z_{m}", base.domain());
            }
            lift_from_cyclic(&base, need_interval(domain, spec)?)?
        }
        "red" | "blue" if rest.is_empty() => {
            Coloring::constant(domain, if head == "red" { Color::Red } else { Color::Blue })
        }
        "file" => from_file(rest, domain)?,
        _ if Path::new(spec).exists() => from_file(spec, domain)?,
        _ => bail!("unknown coloring source '{spec}'"),
    };
    Ok(f)
}

fn from_file(path: &str, domain: Domain) -> Result<Coloring> {
    let kind = match domain {
        Domain::Interval(_) => DomainKind::Interval,
        Domain::Cyclic(_) => DomainKind::Cyclic,
    };
    let f = read_coloring(path, kind)?;
    if f.domain() != domain {
        bail!("{path} colors {}, expected {domain}", f.domain());
    }
    Ok(f)
}
