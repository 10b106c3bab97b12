//! Ordered gate lists bound to a qubit ledger.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::ledger::QubitLedger;

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    name: String,
    ledger: QubitLedger,
    gates: Vec<Gate>,
}

/// Gate counts and depth figures for a circuit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircuitStats {
    pub qubits: usize,
    pub gates: usize,
    pub counts: BTreeMap<GateKind, usize>,
    /// ASAP layer count with every gate taking one layer.
    pub depth: usize,
    /// Sum of [`Gate::toffoli_cost`].
    pub toffoli_count: usize,
    /// ASAP layer count where only X-type gates with two or more controls take
    /// time, weighted by [`Gate::toffoli_cost`].
    pub toffoli_depth: usize,
}

impl CircuitStats {
    pub fn count(&self, kind: GateKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

impl Circuit {
    pub fn new(name: &str, ledger: QubitLedger) -> Circuit {
        Circuit { name: name.into(), ledger, gates: Vec::new() }
    }

    /// A circuit over a single register `q` of `qubits` qubits.
    pub fn with_qubits(name: &str, qubits: usize) -> Circuit {
        let mut ledger = QubitLedger::new();
        ledger.allocate("q", qubits).expect("fresh ledger");
        Circuit::new(name, ledger)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ledger(&self) -> &QubitLedger {
        &self.ledger
    }

    pub fn ledger_mut(&mut self) -> &mut QubitLedger {
        &mut self.ledger
    }

    pub fn num_qubits(&self) -> usize {
        self.ledger.total()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking it against the ledger.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.ledger.total()).map_err(|e| match e {
            Error::QubitOutOfRange { qubit, .. } => Error::Unallocated(qubit),
            other => other,
        })?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Position to pass to [`Circuit::mirror_since`].
    pub fn mark(&self) -> usize {
        self.gates.len()
    }

    /// Appends the inverse of `gates[range]` (reversed, each gate inverted).
    pub fn mirror_range(&mut self, range: Range<usize>) -> Result<()> {
        if range.end > self.gates.len() || range.start > range.end {
            return Err(Error::InvalidArgument("mirror range out of bounds"));
        }
        let inv: Vec<Gate> = self.gates[range].iter().rev().map(Gate::inverse).collect();
        self.gates.extend(inv);
        Ok(())
    }

    /// Appends the inverse of everything emitted since `mark`.
    pub fn mirror_since(&mut self, mark: usize) -> Result<()> {
        self.mirror_range(mark..self.gates.len())
    }

    /// Appends the gates of `other`, which must fit this circuit's ledger.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        self.extend(other.gates.iter().cloned())
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            name: format!("{}_inv", self.name),
            ledger: self.ledger.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn stats(&self) -> CircuitStats {
        stats_for(&self.gates, self.ledger.total())
    }

    /// Text export, one gate per line:
    ///
    /// ```text
    /// # gqtsp-gates v1 qubits=3
    /// h 0
    /// cp 0 1 0.785398163397448
    /// ccx 0 1 2
    /// mcx 0 1 2 3
    /// diag 0 1 | 0 0 0 3.14159265358979
    /// ```
    ///
    /// For `cx`, `ccx` and `mcx` the last qubit is the target.
    pub fn to_gate_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# gqtsp-gates v1 qubits={}", self.ledger.total());
        for g in &self.gates {
            write_gate(&mut out, g);
            out.push('\n');
        }
        out
    }
}

/// Stats over a bare gate slice.
pub fn stats_for(gates: &[Gate], qubits: usize) -> CircuitStats {
    let mut counts = BTreeMap::new();
    let mut level = alloc::vec![0usize; qubits];
    let mut tlevel = alloc::vec![0usize; qubits];
    let mut depth = 0;
    let mut toffoli_depth = 0;
    let mut toffoli_count = 0;
    for g in gates {
        *counts.entry(g.kind()).or_insert(0) += 1;
        let qs = g.qubits();
        let cost = g.toffoli_cost();
        toffoli_count += cost;
        let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        let t = qs.iter().map(|&q| tlevel[q]).max().unwrap_or(0) + cost;
        for &q in &qs {
            level[q] = l;
            tlevel[q] = t;
        }
        depth = depth.max(l);
        toffoli_depth = toffoli_depth.max(t);
    }
    CircuitStats {
        qubits,
        gates: gates.len(),
        counts,
        depth,
        toffoli_count,
        toffoli_depth,
    }
}

fn write_gate(out: &mut String, g: &Gate) {
    match g {
        Gate::X { target } => {
            let _ = write!(out, "x {target}");
        }
        Gate::H { target } => {
            let _ = write!(out, "h {target}");
        }
        Gate::Phase { target, angle } => {
            let _ = write!(out, "p {target} {angle:?}");
        }
        Gate::ControlledPhase { control, target, angle } => {
            let _ = write!(out, "cp {control} {target} {angle:?}");
        }
        Gate::Toffoli { controls, target } => {
            let _ = write!(out, "ccx {} {} {target}", controls[0], controls[1]);
        }
        Gate::Mcx { controls, target } => {
            out.push_str(if controls.len() == 1 { "cx" } else { "mcx" });
            for c in controls {
                let _ = write!(out, " {c}");
            }
            let _ = write!(out, " {target}");
        }
        Gate::DiagonalPhase { qubits, angles } => {
            out.push_str("diag");
            for q in qubits {
                let _ = write!(out, " {q}");
            }
            out.push_str(" |");
            for a in angles {
                let _ = write!(out, " {a:?}");
            }
        }
    }
}

/// Parses the text produced by [`Circuit::to_gate_list`] into a circuit over a
/// single register `q`.
pub fn parse_gate_list(name: &str, text: &str) -> Result<Circuit> {
    let mut qubits: Option<usize> = None;
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let bad = || Error::MalformedGateList { line: line_no };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            if let Some(rest) = header.trim().strip_prefix("gqtsp-gates v1 qubits=") {
                qubits = Some(rest.trim().parse().map_err(|_| bad())?);
            }
            continue;
        }
        let (head, tail) = match line.split_once('|') {
            Some((h, t)) => (h, Some(t)),
            None => (line, None),
        };
        let mut words = head.split_whitespace();
        let op = words.next().ok_or_else(bad)?;
        let args: Vec<&str> = words.collect();
        let idx = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let ang = |s: &str| s.parse::<f64>().map_err(|_| bad());
        let gate = match (op, args.as_slice()) {
            ("x", [t]) => Gate::x(idx(t)?),
            ("h", [t]) => Gate::h(idx(t)?),
            ("p", [t, a]) => Gate::phase(idx(t)?, ang(a)?),
            ("cp", [c, t, a]) => Gate::cphase(idx(c)?, idx(t)?, ang(a)?),
            ("ccx", [a, b, t]) => Gate::toffoli(idx(a)?, idx(b)?, idx(t)?),
            ("cx", [c, t]) => Gate::cx(idx(c)?, idx(t)?),
            ("mcx", [rest @ .., t]) => {
                let controls = rest.iter().map(|s| idx(s)).collect::<Result<Vec<_>>>()?;
                Gate::Mcx { controls, target: idx(t)? }
            }
            ("diag", qs) if tail.is_some() => {
                let qs = qs.iter().map(|s| idx(s)).collect::<Result<Vec<_>>>()?;
                let angles = tail
                    .unwrap_or("")
                    .split_whitespace()
                    .map(ang)
                    .collect::<Result<Vec<_>>>()?;
                Gate::diagonal(&qs, &angles).map_err(|_| bad())?
            }
            _ => return Err(bad()),
        };
        gates.push((line_no, gate));
    }
    let n = qubits.ok_or(Error::MalformedGateList { line: 1 })?;
    let mut circ = Circuit::with_qubits(name, n);
    for (line, g) in gates {
        circ.push(g).map_err(|_| Error::MalformedGateList { line })?;
    }
    Ok(circ)
}
