//! `kqcoop` - compute and verify trigraded Ext charts over the motivic
//! `A(1)` dual and the closed-form lines of the kq-resolution.
//!
//! Exit codes: 0 success, 1 usage error, 2 mathematical verification failure.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kqcoop_core::comodule::{
    brown_gitler, restrict_coaction, tensor, BrownGitlerKind, Comodule,
};
use kqcoop_core::ext::{
    beta_torsion_split, ext_chart, ExtChart, ExtChartJson, MargolisWhich, Window,
};
use kqcoop_core::steenrod::AlgebraSpec;
use kqcoop_core::{kq, verify, ENGINE_VERSION};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

mod svg;

#[derive(Parser)]
#[command(name = "kqcoop", version, about = "kq-resolution chart engine")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// maximal Adams filtration reported
    #[arg(long, default_value_t = 6)]
    smax: i32,
    /// maximal internal degree reported
    #[arg(long, default_value_t = 16)]
    tmax: i32,
    /// minimal motivic weight reported
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    wmin: i32,
    /// extra internal degrees computed but not reported
    #[arg(long, default_value_t = 0)]
    pad: i32,
}

impl WindowArgs {
    fn window(&self) -> Window {
        Window::new(self.smax, self.tmax, self.wmin, self.pad)
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// output format
    #[arg(long, default_value = "json")]
    format: String,
    /// chart cache directory (also env KQCOOP_CACHE)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an Ext chart for a module
    Ext {
        /// module: M2 | HZ<n> | kq<n> | HZ1^<k> | tensor:<m1,m2,...> |
        /// AmodA0 | AmodA1 (windowed); append `bar` for the reduced module
        #[arg(long)]
        module: String,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// also report the beta-torsion split (requires pad >= 12)
        #[arg(long)]
        split: bool,
    },
    /// Dump a Brown-Gitler (or any) comodule as JSON
    Bg {
        #[arg(long)]
        module: String,
        /// window bound for infinite modules
        #[arg(long, default_value_t = 16)]
        tmax: i32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Assemble one line of the E1-page of the kq-resolution
    E1 {
        #[arg(long)]
        line: usize,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form E-infinity 0- and 1-lines
    Einf {
        /// maximal internal degree
        #[arg(long, default_value_t = 40)]
        tmax: i32,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        wmin: i32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Margolis homology of a comodule
    Margolis {
        #[arg(long)]
        module: String,
        /// which operator: 0 or 1
        #[arg(long)]
        q: u8,
        #[arg(long, default_value_t = 16)]
        tmax: i32,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        wmin: i32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run invariant suites; exits 2 on the first violation
    Verify {
        /// all | steenrod | comodule | linalg | ext | ext-fast | kq | kq-fast
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Re-emit a stored chart JSON as TSV or SVG
    Chart {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form stem data
    Stems {
        /// eta-periodic chart
        #[arg(long, conflicts_with = "v1")]
        eta: bool,
        /// v1-periodic stems
        #[arg(long)]
        v1: bool,
        #[arg(long, allow_hyphen_values = true)]
        stem: i32,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        wmin: i32,
        #[arg(long, allow_hyphen_values = true)]
        wmax: Option<i32>,
    },
}

/// Parse a module spec, producing the comodule. Infinite families are
/// truncated at `t_max`.
fn parse_module(spec: &str, t_max: i32) -> Result<Arc<Comodule>> {
    let (name, reduced) = match spec.strip_suffix("bar") {
        Some(base) if base != "" => (base, true),
        _ => (spec, false),
    };
    let module = parse_module_plain(name, t_max)?;
    Ok(if reduced { module.reduced() } else { module })
}

fn parse_module_plain(spec: &str, t_max: i32) -> Result<Arc<Comodule>> {
    if spec == "M2" {
        return Ok(Comodule::unit());
    }
    if spec == "AmodA0" {
        return Ok(restrict_coaction(AlgebraSpec::AModANDual(0), t_max, -1));
    }
    if spec == "AmodA1" {
        return Ok(restrict_coaction(AlgebraSpec::AModANDual(1), t_max, -1));
    }
    if let Some(rest) = spec.strip_prefix("tensor:") {
        let mut factors = Vec::new();
        for part in rest.split(',') {
            factors.push(parse_module(part.trim(), t_max)?);
        }
        let mut iter = factors.into_iter();
        let first = iter.next().ok_or_else(|| anyhow!("empty tensor spec"))?;
        return Ok(iter.fold(first, |acc, m| tensor(&acc, &m)));
    }
    if let Some((base, pow)) = spec.split_once('^') {
        let k: u32 = pow.parse().context("bad tensor power")?;
        if k == 0 {
            return Ok(Comodule::unit());
        }
        let factor = parse_module(base, t_max)?;
        let mut acc = Arc::clone(&factor);
        for _ in 1..k {
            acc = tensor(&acc, &factor);
        }
        return Ok(acc);
    }
    if let Some(n) = spec.strip_prefix("HZ") {
        let n: u32 = n.parse().context("bad HZ index")?;
        return Ok(brown_gitler(BrownGitlerKind::Integral, n));
    }
    if let Some(n) = spec.strip_prefix("kq") {
        let n: u32 = n.parse().context("bad kq index")?;
        return Ok(brown_gitler(BrownGitlerKind::Kq, n));
    }
    bail!("unknown module spec `{spec}`")
}

fn cache_dir(output: &OutputArgs) -> Option<PathBuf> {
    output
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("KQCOOP_CACHE").map(PathBuf::from))
}

/// FNV-1a, good enough for cache keys; the engine version participates so
/// stale entries die on upgrade.
fn cache_key(parts: &[&str]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for part in parts {
        for b in part.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0x7c;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn compute_chart_cached(
    module_spec: &str,
    window: Window,
    output: &OutputArgs,
) -> Result<(ExtChartJson, String)> {
    let key = cache_key(&[
        module_spec,
        &format!(
            "{},{},{},{}",
            window.s_max, window.t_max, window.w_min, window.pad
        ),
        ENGINE_VERSION,
    ]);
    if let Some(dir) = cache_dir(output) {
        let path = dir.join(format!("{key}.json"));
        if let Ok(bytes) = std::fs::read(&path) {
            let parsed: ExtChartJson =
                serde_json::from_slice(&bytes).context("corrupt cache entry")?;
            return Ok((parsed, String::from_utf8(bytes)?));
        }
    }
    let module = parse_module(module_spec, window.computed_t())?;
    let chart = ext_chart(module, window);
    let json = chart.to_json();
    let text = serde_json::to_string_pretty(&json)?;
    if let Some(dir) = cache_dir(output) {
        let path = dir.join(format!("{key}.json"));
        atomic_write(&path, text.as_bytes())?;
    }
    Ok((json, text))
}

fn write_output(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => atomic_write(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn chart_from_json(json: &ExtChartJson) -> ExtChart {
    // rebuild the queryable chart shape from the serialized cells
    let mut dims = std::collections::BTreeMap::new();
    let mut generators = Vec::new();
    for cell in &json.cells {
        dims.insert((cell.s, cell.t, cell.w), cell.dim);
        for (index, name) in cell.gens.iter().enumerate() {
            generators.push(kqcoop_core::ext::ChartGen {
                name: name.clone(),
                s: cell.s,
                t: cell.t,
                w: cell.w,
                index,
                representative: String::new(),
            });
        }
    }
    let name_to_id: std::collections::BTreeMap<&str, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.name.as_str(), i))
        .collect();
    let actions = json
        .actions
        .iter()
        .map(|(k, edges)| {
            (
                k.clone(),
                edges
                    .iter()
                    .filter_map(|e| {
                        Some((
                            *name_to_id.get(e.from.as_str())?,
                            *name_to_id.get(e.to.as_str())?,
                        ))
                    })
                    .collect(),
            )
        })
        .collect();
    ExtChart {
        module: json.module.clone(),
        window: json.window,
        dims,
        generators,
        actions,
        action_unknown: Default::default(),
    }
}

fn run() -> Result<i32> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap exits 2 by default; the exit code 2 is reserved for
            // mathematical verification failures
            let _ = e.print();
            return Ok(1);
        }
    };
    match cli.command {
        Command::Ext {
            module,
            window,
            output,
            split,
        } => {
            let w = window.window();
            if split && w.pad < 12 {
                bail!("--split needs pad >= 12 in t (config floor is 8)");
            }
            let (json, text) = compute_chart_cached(&module, w, &output)?;
            match output.format.as_str() {
                "json" => write_output(&output, &text)?,
                "tsv" => {
                    let chart = chart_from_json(&json);
                    write_output(&output, &chart.to_tsv())?;
                }
                "svg" => {
                    let chart = chart_from_json(&json);
                    write_output(&output, &svg::chart_svg(&chart))?;
                }
                other => bail!("unknown format `{other}`"),
            }
            if split {
                let module = parse_module(&module, w.computed_t())?;
                let chart = ext_chart(module, w);
                let split = beta_torsion_split(&chart);
                let mut text = String::from("s\tt\tw\tfree\ttorsion\n");
                for (&(s, t, ww), &f) in &split.free {
                    let tor = split.torsion.get(&(s, t, ww)).copied().unwrap_or(0);
                    text.push_str(&format!("{s}\t{t}\t{ww}\t{f}\t{tor}\n"));
                }
                eprint!("{text}");
            }
            Ok(0)
        }
        Command::Bg {
            module,
            tmax,
            output,
        } => {
            let m = parse_module(&module, tmax)?;
            let text = serde_json::to_string_pretty(&m.to_json())?;
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::E1 {
            line,
            window,
            output,
        } => {
            let w = window.window();
            let base = verify::shared_base(w);
            let l = kq::e1_line(line, w, base);
            match output.format.as_str() {
                "json" => {
                    let support = l.support();
                    let cells: Vec<serde_json::Value> = support
                        .iter()
                        .map(|(&(s, t, ww), &d)| {
                            serde_json::json!({"s": s, "t": t, "w": ww, "dim": d})
                        })
                        .collect();
                    let text = serde_json::to_string_pretty(
                        &serde_json::json!({"line": line, "cells": cells}),
                    )?;
                    write_output(&output, &text)?;
                }
                "tsv" => {
                    let mut text = String::from("s\tt\tw\tdim\n");
                    for (&(s, t, ww), &d) in &l.support() {
                        text.push_str(&format!("{s}\t{t}\t{ww}\t{d}\n"));
                    }
                    write_output(&output, &text)?;
                }
                other => bail!("unknown format `{other}`"),
            }
            Ok(0)
        }
        Command::Einf { tmax, wmin, output } => {
            let zero = kq::e_infinity_zero_line(tmax, wmin);
            let one = kq::e_infinity_one_line(tmax, wmin);
            let to_json = |line: usize, l: &kq::ClosedFormLine| {
                let cells: Vec<serde_json::Value> = l
                    .cells
                    .iter()
                    .map(|c| {
                        serde_json::json!({"t": c.t, "w": c.w, "group": c.group, "gen": c.gen})
                    })
                    .collect();
                serde_json::json!({"line": line, "name": l.name, "cells": cells})
            };
            let text = serde_json::to_string_pretty(&serde_json::json!([
                to_json(0, &zero),
                to_json(1, &one)
            ]))?;
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Margolis {
            module,
            q,
            tmax,
            wmin,
            output,
        } => {
            let which = match q {
                0 => MargolisWhich::Q0,
                1 => MargolisWhich::Q1,
                _ => bail!("--q must be 0 or 1"),
            };
            // pad the window internally so the reported range is exact
            let m = parse_module(&module, tmax + 4)?;
            let hom = kqcoop_core::ext::margolis(m, which, tmax, wmin);
            let mut text = String::from("t\tw\tdim\n");
            for (&(t, w), &d) in &hom {
                text.push_str(&format!("{t}\t{w}\t{d}\n"));
            }
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let reports = verify::run_suite(&suite);
            let mut failed = false;
            for r in &reports {
                println!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
                if !r.pass {
                    failed = true;
                    for v in &r.violations {
                        println!("  {v}");
                    }
                }
            }
            if failed {
                return Ok(2);
            }
            Ok(0)
        }
        Command::Chart { input, output } => {
            let bytes = std::fs::read(&input).context("reading chart JSON")?;
            let json: ExtChartJson = serde_json::from_slice(&bytes)?;
            let chart = chart_from_json(&json);
            match output.format.as_str() {
                "json" => write_output(&output, &serde_json::to_string_pretty(&json)?)?,
                "tsv" => write_output(&output, &chart.to_tsv())?,
                "svg" => write_output(&output, &svg::chart_svg(&chart))?,
                other => bail!("unknown format `{other}`"),
            }
            Ok(0)
        }
        Command::Stems {
            eta,
            v1,
            stem,
            wmin,
            wmax,
        } => {
            if eta {
                let top = wmax.unwrap_or(stem.max(8) + 1);
                let mut lines = Vec::new();
                for weight in wmin..=top {
                    if let Some(gen) = kq::eta_local_stems(stem, weight) {
                        // default listing keeps nonnegative h1 powers
                        if !gen.contains("h1^-") {
                            lines.push(format!("stem {stem} weight {weight}: F2{{{gen}}}"));
                        }
                    }
                }
                println!("{}", lines.join("\n"));
                Ok(0)
            } else if v1 {
                let top = wmax.unwrap_or(stem + 1);
                for g in kq::v1_periodic_stems(stem, (wmin, top)) {
                    println!(
                        "stem {} weight {}: {} ({})",
                        g.stem, g.weight, g.group, g.gen
                    );
                }
                Ok(0)
            } else {
                bail!("stems requires --eta or --v1")
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(2) => ExitCode::from(2),
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
