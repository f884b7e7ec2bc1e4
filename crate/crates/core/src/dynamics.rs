//! Naming Game dynamics on a fixed graph.
//!
//! Each event picks a speaker uniformly at random. A speaker with an empty
//! list invents a fresh word, then transmits one word chosen uniformly from
//! its list. In broadcast mode every neighbor listens; in pairwise mode a
//! single random neighbor does. A listener that already knows the word
//! collapses its list to that word, otherwise it appends it. In broadcast
//! mode the speaker collapses as soon as one listener succeeded; in pairwise
//! mode speaker and listener collapse together.
//!
//! Time is measured in units of `n` speaker events.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::topology::{Graph, NodeId};

/// An invented word. Tokens are handed out by a per-run counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub u32);

impl Word {
    pub fn token(self) -> u32 {
        self.0
    }
}

/// A node's list of synonyms, in insertion order and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<Word>,
}

impl Vocabulary {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: Word) -> bool {
        self.words.contains(&word)
    }

    /// The single word held, if the list has exactly one entry.
    pub fn single(&self) -> Option<Word> {
        match self.words.as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InteractionMode {
    /// Speaker talks to all of its neighbors at once.
    #[default]
    Broadcast,
    /// Speaker talks to one uniformly chosen neighbor.
    Pairwise,
}

impl InteractionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            InteractionMode::Broadcast => "broadcast",
            InteractionMode::Pairwise => "pairwise",
        }
    }
}

impl fmt::Display for InteractionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InteractionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "broadcast" => Ok(InteractionMode::Broadcast),
            "pairwise" => Ok(InteractionMode::Pairwise),
            other => Err(Error::param(format!("unknown interaction mode `{other}`"))),
        }
    }
}

/// Result of a single speaker event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepOutcome {
    pub speaker: NodeId,
    pub transmitted: Word,
    pub listener_count: u32,
    pub success_count: u32,
    pub invented: bool,
}

/// Vocabularies of all nodes plus the counters needed for O(1) observables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimState {
    vocabularies: Vec<Vocabulary>,
    /// holders[token] = number of nodes whose list contains the word
    holders: Vec<u32>,
    steps: u64,
    total_words: usize,
    distinct_words: usize,
}

impl SimState {
    /// All vocabularies empty.
    pub fn new(n: usize) -> Self {
        SimState {
            vocabularies: vec![Vocabulary::default(); n],
            holders: Vec::new(),
            steps: 0,
            total_words: 0,
            distinct_words: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.vocabularies.len()
    }

    pub fn vocabulary(&self, node: NodeId) -> &Vocabulary {
        &self.vocabularies[node as usize]
    }

    pub fn vocabularies(&self) -> &[Vocabulary] {
        &self.vocabularies
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Time in units of `n` speaker events.
    pub fn time(&self) -> f64 {
        self.steps as f64 / self.node_count() as f64
    }

    pub fn inventions(&self) -> u32 {
        self.holders.len() as u32
    }

    /// `N_w`: summed vocabulary sizes.
    pub fn total_words(&self) -> usize {
        self.total_words
    }

    /// `N_d`: number of different words currently held by anyone.
    pub fn distinct_words(&self) -> usize {
        self.distinct_words
    }

    /// Every node holds exactly one word and it is the same word everywhere.
    pub fn is_consensus(&self) -> bool {
        self.distinct_words == 1 && self.total_words == self.node_count()
    }

    /// Creates a word that has never existed in this run.
    pub fn invent_word(&mut self) -> Word {
        let w = Word(self.holders.len() as u32);
        self.holders.push(0);
        w
    }

    fn add_word(&mut self, node: NodeId, w: Word) {
        let holders = &mut self.holders[w.0 as usize];
        if *holders == 0 {
            self.distinct_words += 1;
        }
        *holders += 1;
        self.total_words += 1;
        self.vocabularies[node as usize].words.push(w);
    }

    /// Reduces the node's list to `w`, which it must already hold.
    fn collapse(&mut self, node: NodeId, w: Word) {
        let words = &mut self.vocabularies[node as usize].words;
        if words.len() == 1 {
            return;
        }
        for &u in words.iter() {
            if u != w {
                let holders = &mut self.holders[u.0 as usize];
                *holders -= 1;
                if *holders == 0 {
                    self.distinct_words -= 1;
                }
            }
        }
        self.total_words -= words.len() - 1;
        words.clear();
        words.push(w);
    }

    /// Listener side of a transmission; returns whether the listener knew `w`.
    fn hear(&mut self, listener: NodeId, w: Word) -> bool {
        if self.vocabularies[listener as usize].contains(w) {
            self.collapse(listener, w);
            true
        } else {
            self.add_word(listener, w);
            false
        }
    }

    /// Recomputes every counter from scratch and checks list invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let mut holders = vec![0u32; self.holders.len()];
        let mut total = 0;
        for (node, vocab) in self.vocabularies.iter().enumerate() {
            for (i, w) in vocab.words.iter().enumerate() {
                if w.0 as usize >= holders.len() {
                    return Err(Error::param(format!("node {node} holds uninvented word {}", w.0)));
                }
                if vocab.words[..i].contains(w) {
                    return Err(Error::param(format!("node {node} holds word {} twice", w.0)));
                }
                holders[w.0 as usize] += 1;
            }
            total += vocab.len();
        }
        let distinct = holders.iter().filter(|&&h| h > 0).count();
        if holders != self.holders || total != self.total_words || distinct != self.distinct_words {
            return Err(Error::param("cached word counters out of sync"));
        }
        if u64::from(self.inventions()) > self.steps {
            return Err(Error::param("more inventions than steps"));
        }
        Ok(())
    }
}

/// Applies one speaker event.
pub fn step<R: Rng + ?Sized>(state: &mut SimState, graph: &Graph, mode: InteractionMode, rng: &mut R) -> StepOutcome {
    debug_assert_eq!(state.node_count(), graph.node_count());
    let speaker = rng.gen_range(0..state.node_count()) as NodeId;

    let invented = state.vocabulary(speaker).is_empty();
    if invented {
        let w = state.invent_word();
        state.add_word(speaker, w);
    }
    let words = &state.vocabulary(speaker).words;
    let transmitted = if words.len() == 1 { words[0] } else { words[rng.gen_range(0..words.len())] };

    let neighbors = graph.neighbors(speaker);
    let (listener_count, success_count) = match mode {
        InteractionMode::Broadcast => {
            let mut successes = 0;
            for &listener in neighbors {
                if state.hear(listener, transmitted) {
                    successes += 1;
                }
            }
            (neighbors.len() as u32, successes)
        }
        InteractionMode::Pairwise if neighbors.is_empty() => (0, 0),
        InteractionMode::Pairwise => {
            let listener = neighbors[rng.gen_range(0..neighbors.len())];
            (1, u32::from(state.hear(listener, transmitted)))
        }
    };
    if success_count > 0 {
        state.collapse(speaker, transmitted);
    }
    state.steps += 1;

    StepOutcome { speaker, transmitted, listener_count, success_count, invented }
}

/// Receives every event of a run.
pub trait Observer {
    fn on_step(&mut self, state: &SimState, outcome: &StepOutcome);
}

impl Observer for () {
    fn on_step(&mut self, _: &SimState, _: &StepOutcome) {}
}

impl<O: Observer + ?Sized> Observer for &mut O {
    fn on_step(&mut self, state: &SimState, outcome: &StepOutcome) {
        (**self).on_step(state, outcome)
    }
}

impl<A: Observer, B: Observer> Observer for (A, B) {
    fn on_step(&mut self, state: &SimState, outcome: &StepOutcome) {
        self.0.on_step(state, outcome);
        self.1.on_step(state, outcome);
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub converged: bool,
    /// Convergence time `steps / n` at the first consensus state.
    pub t_c: Option<f64>,
    pub final_state: SimState,
}

/// Runs from empty vocabularies until consensus or until `max_time` elapses.
pub fn run<R: Rng + ?Sized, O: Observer>(
    graph: &Graph,
    mode: InteractionMode,
    rng: &mut R,
    observer: O,
    max_time: f64,
) -> Result<RunResult> {
    run_from(SimState::new(graph.node_count()), graph, mode, rng, observer, max_time)
}

/// Like [`run`], continuing from an arbitrary state.
pub fn run_from<R: Rng + ?Sized, O: Observer>(
    mut state: SimState,
    graph: &Graph,
    mode: InteractionMode,
    rng: &mut R,
    mut observer: O,
    max_time: f64,
) -> Result<RunResult> {
    let n = graph.node_count();
    if n == 0 || state.node_count() != n {
        return Err(Error::param("state and graph node counts differ (or graph is empty)"));
    }
    if !(max_time > 0.0) {
        return Err(Error::param(format!("max_time must be positive, got {max_time}")));
    }
    let max_steps = (max_time * n as f64).ceil() as u64;
    while state.steps < max_steps {
        let outcome = step(&mut state, graph, mode, rng);
        observer.on_step(&state, &outcome);
        if state.is_consensus() {
            let t_c = state.time();
            return Ok(RunResult { converged: true, t_c: Some(t_c), final_state: state });
        }
    }
    Ok(RunResult { converged: false, t_c: None, final_state: state })
}
