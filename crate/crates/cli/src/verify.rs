use std::io::Write;
use std::time::Instant;

use abstract_checker::{
    build_graph, certify_cycles, check_structure, check_trace, classify, CycleKind, OracleReport, SubsetLabel,
};
use protocol::Protocol;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Random corrupted executions replayed against the graph.
    pub runs: usize,
    pub seed: u64,
    /// Step cap for each of those executions.
    pub max_steps: usize,
    /// Exploration cap for the symbolic executions between anchors.
    pub limit: usize,
    pub verbose: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { runs: 200, seed: 0, max_steps: 5_000, limit: 50_000, verbose: false }
    }
}

struct Report<'a> {
    out: &'a mut dyn Write,
    ok: bool,
}

impl Report<'_> {
    fn line(&mut self, passed: bool, name: &str, detail: &str) -> std::io::Result<()> {
        self.ok &= passed;
        let tag = if passed { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            writeln!(self.out, "{tag} {name}")
        } else {
            writeln!(self.out, "{tag} {name}: {detail}")
        }
    }

    fn witness(&mut self, lines: &[String]) -> std::io::Result<()> {
        for l in lines {
            writeln!(self.out, "    {l}")?;
        }
        Ok(())
    }
}

/// Random corrupted executions of `protocol`, checked step by step against
/// the abstract graph.
pub fn soundness(
    g: &abstract_checker::AbstractGraph,
    seeds: std::ops::Range<u64>,
    window: usize,
    max_steps: usize,
) -> Result<OracleReport, crate::CliError> {
    let protocol = g.rules.protocol();
    let mut report = OracleReport::default();
    for seed in seeds {
        let init = adversary::random_corrupted_config(seed);
        let mut strategy = adversary::RandomFair::new(seed);
        let outcome = executor::run(protocol, &init, &mut strategy, window, max_steps, Some(seed))?;
        let r = check_trace(g, &outcome.trace).map_err(|e| crate::CliError::Usage(e.to_string()))?;
        report.absorb(r);
    }
    Ok(report)
}

/// Runs every check and writes one line per check. Returns whether all
/// passed.
pub fn verify(protocol: &Protocol, opts: &VerifyOptions, out: &mut dyn Write) -> Result<bool, crate::CliError> {
    let start = Instant::now();
    let mut r = Report { out, ok: true };
    writeln!(r.out, "protocol: {}", protocol.selector())?;
    writeln!(r.out, "seed: {}", opts.seed)?;
    let g = build_graph(protocol);
    let moving = g.edges.iter().filter(|e| e.motion).count();
    r.line(
        true,
        "graph",
        &format!("{} configurations, {} transitions ({} with motion)", g.nodes.len(), g.edges.len(), moving),
    )?;

    let labels = match classify(&g) {
        Ok(l) => l,
        Err(e) => {
            r.line(false, "classification", &e.to_string())?;
            return Ok(false);
        }
    };
    let census: Vec<String> = SubsetLabel::ALL.iter().map(|l| format!("{l} {}", labels.count(*l))).collect();
    r.line(true, "classification", &census.join(", "))?;

    let structure = check_structure(&g, &labels);
    for c in &structure.checks {
        r.line(c.passed, c.name, &c.detail)?;
        if !c.passed {
            r.witness(&c.witness)?;
        }
    }
    let exits: Vec<String> = structure.illegal_exits.iter().map(|(l, n)| format!("{l} {n}")).collect();
    writeln!(r.out, "info ILLEGAL exits by target: {}", exits.join(", "))?;
    if let Some(path) = &structure.terminal_sym_to_faulty2 {
        writeln!(r.out, "info terminal SYM reaches FAULTY2 through separated SYM:")?;
        r.witness(path)?;
    }

    let cert = match certify_cycles(&g, opts.limit) {
        Ok(c) => c,
        Err(e) => {
            r.line(false, "cycle certification", &e.to_string())?;
            return Ok(false);
        }
    };
    let decreasing = cert.count(|k| matches!(k, CycleKind::Decreasing { .. }));
    let summary = format!(
        "{} decreasing, {} unfair, {} motionless, {} uncertified (anchor transitions: {} at x >= δ, {} at x < δ)",
        decreasing,
        cert.count(|k| *k == CycleKind::Unfair),
        cert.count(|k| *k == CycleKind::Motionless),
        cert.failures.len(),
        cert.anchor_edges[0],
        cert.anchor_edges[1]
    );
    r.line(cert.passed(), "every fair cycle with motion shrinks the separation", &summary)?;
    if opts.verbose {
        for c in &cert.certificates {
            let regime = c.regime.map_or("gathered".to_string(), |x| x.to_string());
            writeln!(r.out, "  cycle [{regime}] {}", c.kind)?;
            for l in &c.cycle {
                writeln!(r.out, "      {l}")?;
            }
        }
    }
    for f in &cert.failures {
        let regime = f.regime.map_or(String::new(), |x| format!(" [{x}]"));
        writeln!(r.out, "  uncertified{regime}: {}", f.reason)?;
        r.witness(&f.witness)?;
    }

    let window = executor::DEFAULT_WINDOW;
    let oracle = soundness(&g, opts.seed..opts.seed + opts.runs as u64, window, opts.max_steps)?;
    r.line(
        oracle.passed(),
        "abstraction covers concrete executions",
        &format!("{} runs, {} transitions, {} missing edges", opts.runs, oracle.transitions, oracle.missing.len()),
    )?;
    let missing: Vec<String> = oracle.missing.iter().take(20).map(|m| m.to_string()).collect();
    r.witness(&missing)?;

    let ok = r.ok;
    writeln!(r.out, "{} ({} ms)", if ok { "verified" } else { "NOT verified" }, start.elapsed().as_millis())?;
    Ok(ok)
}
