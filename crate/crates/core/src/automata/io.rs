//! JSON and Graphviz DOT renderings of automata.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::alphabet::{Alphabet, Direction, Symbol};
use super::dfa::{Dfa, StateId};
use super::dfao::Dfao;
use crate::error::{Error, Result};

/// Serialized form of a [`Dfa`] or [`Dfao`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutomatonJson {
    /// Every symbol: a letter string for single-track alphabets, a list of
    /// letters for tuple alphabets.
    pub alphabet: Vec<Value>,
    /// Track letters, arity and padding letter of the tuple alphabet.
    pub tracks: TracksJson,
    /// Number of states.
    pub states: usize,
    /// Initial state.
    pub initial: StateId,
    /// Accepting states.
    pub accepting: Vec<StateId>,
    /// `[from, symbol, to]` triples, one per transition.
    pub transitions: Vec<(StateId, Value, StateId)>,
    /// Output letter of each state (DFAO only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
    /// Reading direction.
    pub direction: Direction,
}

/// Track description of a serialized alphabet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracksJson {
    /// Track letters in their total order.
    pub letters: Vec<String>,
    /// Number of tracks.
    pub arity: usize,
    /// Padding letter, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pad: Option<String>,
}

fn symbol_value(alphabet: &Alphabet, s: Symbol) -> Value {
    if alphabet.arity() == 1 {
        Value::String(alphabet.letters()[s as usize].clone())
    } else {
        Value::Array(
            alphabet.decode(s).into_iter().map(|t| Value::String(alphabet.letters()[t as usize].clone())).collect(),
        )
    }
}

fn parse_symbol(alphabet: &Alphabet, v: &Value) -> Result<Symbol> {
    match v {
        Value::String(s) if alphabet.arity() == 1 => alphabet.letter_index(s),
        Value::Array(items) if items.len() == alphabet.arity() => {
            let mut tracks = Vec::new();
            for item in items {
                let name =
                    item.as_str().ok_or_else(|| Error::Invalid(format!("symbol component {item} is not a string")))?;
                tracks.push(alphabet.letter_index(name)?);
            }
            Ok(alphabet.encode(&tracks))
        }
        other => Err(Error::Invalid(format!("malformed symbol {other}"))),
    }
}

impl AutomatonJson {
    /// Serialized form of an automaton.
    pub fn from_dfa(dfa: &Dfa) -> AutomatonJson {
        let a = dfa.alphabet();
        let mut transitions = Vec::new();
        for q in 0..dfa.num_states() as StateId {
            for s in 0..a.size() as Symbol {
                transitions.push((q, symbol_value(a, s), dfa.next(q, s)));
            }
        }
        AutomatonJson {
            alphabet: (0..a.size() as Symbol).map(|s| symbol_value(a, s)).collect(),
            tracks: TracksJson {
                letters: a.letters().to_vec(),
                arity: a.arity(),
                pad: a.pad().map(|p| a.letters()[p as usize].clone()),
            },
            states: dfa.num_states(),
            initial: dfa.initial(),
            accepting: (0..dfa.num_states() as StateId).filter(|&q| dfa.is_accepting(q)).collect(),
            transitions,
            outputs: None,
            direction: dfa.direction(),
        }
    }

    /// Serialized form of a DFAO.
    pub fn from_dfao(dfao: &Dfao) -> AutomatonJson {
        let mut json = AutomatonJson::from_dfa(dfao.base());
        json.outputs = Some(dfao.outputs().iter().map(|&o| dfao.output_names()[o as usize].clone()).collect());
        json
    }

    fn alphabet(&self) -> Result<Alphabet> {
        let pad = match &self.tracks.pad {
            Some(p) => Some(
                self.tracks
                    .letters
                    .iter()
                    .position(|l| l == p)
                    .ok_or_else(|| Error::Invalid(format!("padding letter `{p}` not a track letter")))?
                    as u32,
            ),
            None => None,
        };
        Ok(Alphabet::tuples(&self.tracks.letters, self.tracks.arity, pad))
    }

    /// Rebuilds the automaton; missing transitions go to an added sink.
    pub fn to_dfa(&self) -> Result<Dfa> {
        let alphabet = self.alphabet()?;
        let mut triples = Vec::with_capacity(self.transitions.len());
        for (p, v, q) in &self.transitions {
            triples.push((*p, parse_symbol(&alphabet, v)?, *q));
        }
        let dfa = Dfa::from_partial(alphabet, self.direction, self.states, self.initial, &self.accepting, &triples)?;
        // Drop the added sink when the table was already complete.
        let n = self.states;
        let k = dfa.alphabet().size();
        if dfa.delta()[..n * k].iter().all(|&t| (t as usize) < n) {
            return Dfa::new(
                dfa.alphabet().clone(),
                self.direction,
                self.initial,
                dfa.accepting()[..n].to_vec(),
                dfa.delta()[..n * k].to_vec(),
            );
        }
        Ok(dfa)
    }

    /// Rebuilds a DFAO; the sink (if one is needed) outputs `sink_output`.
    pub fn to_dfao(&self, sink_output: &str) -> Result<Dfao> {
        let outputs = self.outputs.as_ref().ok_or_else(|| Error::Invalid("automaton has no outputs".into()))?;
        if outputs.len() != self.states {
            return Err(Error::Invalid("one output per state required".into()));
        }
        let dfa = self.to_dfa()?;
        let mut names: Vec<String> = Vec::new();
        let mut idx = Vec::new();
        for o in outputs.iter().map(String::as_str).chain(std::iter::once(sink_output)) {
            let i = match names.iter().position(|n| n == o) {
                Some(i) => i,
                None => {
                    names.push(o.to_string());
                    names.len() - 1
                }
            };
            idx.push(i as u32);
        }
        idx.truncate(dfa.num_states());
        Dfao::new(dfa, idx, names)
    }

    /// Pretty JSON text.
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("automaton JSON is serializable")
    }

    /// Parses JSON text.
    pub fn parse(text: &str) -> Result<AutomatonJson> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("automaton JSON: {e}")))
    }
}

/// Graphviz rendering: one node per state (labelled `id` or `id/output`),
/// an arrow from an invisible point into the initial state, double circles
/// for accepting states, and one edge per transition.  Transitions into a
/// non-accepting sink are omitted when `hide_sink` is set.
pub fn to_dot(dfa: &Dfa, outputs: Option<&Dfao>, hide_sink: bool) -> String {
    let a = dfa.alphabet();
    let sink = |q: StateId| {
        hide_sink && outputs.is_none() && !dfa.is_accepting(q) && (0..a.size() as Symbol).all(|s| dfa.next(q, s) == q)
    };
    let mut out = String::new();
    writeln!(out, "digraph automaton {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  start [shape=point];").unwrap();
    for q in 0..dfa.num_states() as StateId {
        if sink(q) {
            continue;
        }
        let label = match outputs {
            Some(m) => format!("{q}/{}", m.output_names()[m.output(q) as usize]),
            None => q.to_string(),
        };
        let shape = if outputs.is_none() && dfa.is_accepting(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  q{q} [label=\"{label}\", shape={shape}];").unwrap();
    }
    writeln!(out, "  start -> q{};", dfa.initial()).unwrap();
    for q in 0..dfa.num_states() as StateId {
        if sink(q) {
            continue;
        }
        for s in 0..a.size() as Symbol {
            let t = dfa.next(q, s);
            if sink(t) {
                continue;
            }
            let label = a.symbol_name(s).replace('"', "\\\"");
            writeln!(out, "  q{q} -> q{t} [label=\"{label}\"];").unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_tuple_alphabet() {
        let a = Alphabet::tuples(&["#", "1", "2"], 2, Some(0));
        let d =
            Dfa::explore(a.clone(), Direction::Lsd, 0u8, 64, |&q, s| (q + a.track_letter(s, 0) as u8) % 3, |&q| q == 0)
                .unwrap()
                .0;
        let json = AutomatonJson::from_dfa(&d);
        let text = json.to_string_pretty();
        let back = AutomatonJson::parse(&text).unwrap().to_dfa().unwrap();
        assert_eq!(back, d);
        assert_eq!(back.direction(), Direction::Lsd);
    }

    #[test]
    fn dot_has_one_edge_per_transition() {
        let a = Alphabet::plain(&["0", "1"]);
        let d = Dfa::universal(a, Direction::Msd);
        let dot = to_dot(&d, None, false);
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("doublecircle"));
    }
}
