use chipwalk_core::prob::{approx_decimal, format_exact, Rational};
use chipwalk_core::verify::SCHEMA;
use chipwalk_core::{
    GameParams, PositionClass, ProbabilityReport, ReachabilityReport, SimulationCounts, WitnessPath,
};
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON record per line.
    Json,
}

fn record(kind: &str, params: GameParams, mut body: Value) -> String {
    let mut out = json!({
        "schema": SCHEMA,
        "record": kind,
        "a": params.a(),
        "b": params.b(),
        "m": params.m(),
        "n": params.n(),
    });
    if let (Some(out), Some(body)) = (out.as_object_mut(), body.as_object_mut()) {
        out.append(body);
    }
    format!("{out}\n")
}

pub fn reach(report: &ReachabilityReport, format: Format) -> String {
    let p = report.params();
    let full = report.full_reachability_square().ok();
    let counts = [
        ("interior", report.count(PositionClass::Interior)),
        ("alice_wins", report.count(PositionClass::AliceWin)),
        ("bob_wins", report.count(PositionClass::BobWin)),
    ];
    match format {
        Format::Text => {
            let mut out = format!(
                "summary: {} cells, {} reachable, all_wins_alice={}\n",
                p.cell_count(),
                report.len(),
                report.all_wins_alice()
            );
            out.push_str(&format!("params: {p}\n"));
            for (name, count) in counts {
                out.push_str(&format!("{name}: {count}\n"));
            }
            out.push_str(&format!("max_depth: {}\n", report.max_depth()));
            if let Some(full) = full {
                out.push_str(&format!("full_reachability={full}\n"));
            }
            out
        }
        Format::Json => record(
            "reach",
            p,
            json!({
                "cells": p.cell_count(),
                "reachable": report.len(),
                "interior": counts[0].1,
                "alice_wins": counts[1].1,
                "bob_wins": counts[2].1,
                "max_depth": report.max_depth(),
                "all_wins_alice": report.all_wins_alice(),
                "full_reachability": full,
            }),
        ),
    }
}

pub fn witness(params: GameParams, witness: &WitnessPath, format: Format) -> String {
    let mut trail = vec![params.start()];
    for &mv in &witness.moves {
        trail.push(params.step(*trail.last().expect("nonempty"), mv));
    }
    match format {
        Format::Text => {
            let words: Vec<String> = witness.moves.iter().map(|mv| mv.to_string()).collect();
            let path: Vec<String> = trail.iter().map(|pos| pos.to_string()).collect();
            format!(
                "witness {}: {}\nlength: {}\npath: {}\n",
                witness.landing,
                words.join(" "),
                witness.len(),
                path.join(" -> ")
            )
        }
        Format::Json => record(
            "witness",
            params,
            json!({
                "x": witness.landing.x(),
                "y": witness.landing.y(),
                "moves": witness.moves,
                "length": witness.len(),
                "path": trail.iter().map(|pos| [pos.x(), pos.y()]).collect::<Vec<_>>(),
            }),
        ),
    }
}

pub fn grid(report: &ReachabilityReport, format: Format) -> String {
    match format {
        Format::Text => report.render_grid(),
        Format::Json => {
            let rows: Vec<String> = report
                .render_grid()
                .lines()
                .skip(1)
                .map(String::from)
                .collect();
            record("grid", report.params(), json!({ "rows": rows }))
        }
    }
}

fn exact(value: &Rational) -> Value {
    json!({ "exact": format_exact(value), "approx": approx_decimal(value) })
}

pub fn prob(report: &ProbabilityReport, format: Format) -> String {
    let masses = [
        ("p_alice", &report.p_alice),
        ("p_bob", &report.p_bob),
        ("p_nonterminating", &report.p_nonterminating),
    ];
    match format {
        Format::Text => {
            let mut out = format!(
                "params: {}\nbias = {}\n",
                report.params,
                format_exact(&report.coin_bias)
            );
            for (name, value) in masses {
                out.push_str(&format!(
                    "{name} = {}  (approx {})\n",
                    format_exact(value),
                    approx_decimal(value)
                ));
            }
            out
        }
        Format::Json => record(
            "prob",
            report.params,
            json!({
                "bias": format_exact(&report.coin_bias),
                "p_alice": exact(&report.p_alice),
                "p_bob": exact(&report.p_bob),
                "p_nonterminating": exact(&report.p_nonterminating),
            }),
        ),
    }
}

pub fn sim(
    params: GameParams,
    bias: &Rational,
    seed: u64,
    counts: &SimulationCounts,
    format: Format,
) -> String {
    const GENERATOR: &str = "xoshiro256** seeded by SplitMix64, 1024-trial shards";
    match format {
        Format::Text => format!(
            "params: {params}\nbias = {}\nseed: {seed}\ngenerator: {GENERATOR}\ntrials: {}\nalice_wins: {}\nbob_wins: {}\ntruncated: {}\nmove_cap: {}\n",
            format_exact(bias),
            counts.trials,
            counts.alice_wins,
            counts.bob_wins,
            counts.truncated,
            counts.move_cap
        ),
        Format::Json => record(
            "sim",
            params,
            json!({
                "bias": format_exact(bias),
                "seed": seed,
                "generator": GENERATOR,
                "trials": counts.trials,
                "alice_wins": counts.alice_wins,
                "bob_wins": counts.bob_wins,
                "truncated": counts.truncated,
                "move_cap": counts.move_cap,
            }),
        ),
    }
}
