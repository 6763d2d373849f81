//! Mealy automata `(Q, Σ, δ, ρ)` and the groups they generate.
//!
//! States are numbered `0..n`; letters are `0..k` in the API and 1-based
//! in files.  Three textual formats are supported and auto-detected by
//! their header line:
//!
//! ```text
//! mealy v1            # explicit transition table
//! states 2
//! letters 2
//! trans 0 1 0 2       # δ₁(0) = 0 and ρ₀(1) = 2
//! ...
//!
//! cyclic v1           # single-cycle automaton, one permutation per state
//! letters 6
//! state 0 (1,6,4,3)(2,5)
//! state 1 (2,3)(4,5,6)
//!
//! union v1            # disjoint union of cyclic blocks, separated by ---
//! cyclic v1
//! ...
//! ---
//! cyclic v1
//! ...
//! ```
//!
//! `#` starts a comment; blank lines are ignored.
//!
//! For letter-independent invertible automata every state acts on words
//! letterwise through an eventually periodic sequence of permutations,
//! and the generated group embeds faithfully into permutations of
//! `m · k` points where `m` covers the longest approach to a cycle plus
//! one full period.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::groups::PermGroup;
use crate::perm::{block_permutation, PermError, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MealyError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("transition table incomplete: missing state {state}, letter {letter}")]
    IncompleteTable { state: usize, letter: usize },
    #[error("letter {letter} out of range 1..={letters} at line {line}")]
    LetterOutOfRange {
        line: usize,
        letter: usize,
        letters: usize,
    },
    #[error("union components disagree on the alphabet: {expected} letters vs {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("automaton is not invertible: some output row is not a permutation")]
    NotInvertible,
    #[error("transitions depend on the letter read")]
    NotLetterIndependent,
}

/// A finite Mealy automaton with total transition and output functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyAutomaton {
    states: usize,
    letters: usize,
    /// `delta[q][i]`: the state reached from `q` reading letter `i`.
    delta: Vec<Vec<usize>>,
    /// `rho[q][i]`: the letter produced by `q` reading letter `i`.
    rho: Vec<Vec<usize>>,
}

impl MealyAutomaton {
    pub fn new(
        states: usize,
        letters: usize,
        delta: Vec<Vec<usize>>,
        rho: Vec<Vec<usize>>,
    ) -> Self {
        assert!(states > 0 && letters > 0, "need at least one state and letter");
        assert_eq!(delta.len(), states);
        assert_eq!(rho.len(), states);
        for q in 0..states {
            assert_eq!(delta[q].len(), letters);
            assert_eq!(rho[q].len(), letters);
            assert!(delta[q].iter().all(|&s| s < states), "state out of range");
            assert!(rho[q].iter().all(|&l| l < letters), "letter out of range");
        }
        MealyAutomaton {
            states,
            letters,
            delta,
            rho,
        }
    }

    /// The cyclic automaton on `outputs.len()` states whose state `q`
    /// moves to `q + 1 (mod n)` on every letter and outputs through
    /// `outputs[q]`.
    pub fn cyclic(outputs: &[Permutation]) -> Self {
        assert!(!outputs.is_empty(), "need at least one state");
        let letters = outputs[0].degree();
        assert!(letters > 0, "need at least one letter");
        assert!(
            outputs.iter().all(|p| p.degree() == letters),
            "output degree mismatch"
        );
        let states = outputs.len();
        let delta = (0..states)
            .map(|q| vec![(q + 1) % states; letters])
            .collect();
        let rho = outputs.iter().map(|p| p.images().to_vec()).collect();
        MealyAutomaton {
            states,
            letters,
            delta,
            rho,
        }
    }

    /// Disjoint union over a shared alphabet; states are renumbered
    /// consecutively component by component.
    pub fn disjoint_union(components: &[MealyAutomaton]) -> Result<Self, MealyError> {
        assert!(!components.is_empty(), "need at least one component");
        let letters = components[0].letters;
        for c in components {
            if c.letters != letters {
                return Err(MealyError::AlphabetMismatch {
                    expected: letters,
                    found: c.letters,
                });
            }
        }
        let mut delta = Vec::new();
        let mut rho = Vec::new();
        let mut offset = 0;
        for c in components {
            for q in 0..c.states {
                delta.push(c.delta[q].iter().map(|&s| s + offset).collect());
                rho.push(c.rho[q].clone());
            }
            offset += c.states;
        }
        Ok(MealyAutomaton {
            states: offset,
            letters,
            delta,
            rho,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn next_state(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn output_letter(&self, q: usize, letter: usize) -> usize {
        self.rho[q][letter]
    }

    /// Runs the automaton from `q` on an input word; returns the output
    /// word and the final state.
    pub fn run(&self, q: usize, word: &[usize]) -> (Vec<usize>, usize) {
        let mut state = q;
        let mut out = Vec::with_capacity(word.len());
        for &letter in word {
            assert!(letter < self.letters, "letter out of range");
            out.push(self.rho[state][letter]);
            state = self.delta[state][letter];
        }
        (out, state)
    }

    /// Every output row is a permutation of the alphabet.
    pub fn is_invertible(&self) -> bool {
        self.rho.iter().all(|row| is_bijection(row, self.letters))
    }

    /// Every letter acts as a permutation of the state set.
    pub fn is_reversible(&self) -> bool {
        (0..self.letters).all(|i| {
            let column: Vec<usize> = (0..self.states).map(|q| self.delta[q][i]).collect();
            is_bijection(&column, self.states)
        })
    }

    /// Reversible, and transitions are co-deterministic when read
    /// backwards by output letter: every `(state, output)` pair has
    /// exactly one incoming transition.
    pub fn is_bireversible(&self) -> bool {
        if !self.is_reversible() {
            return false;
        }
        let mut incoming = vec![0usize; self.states * self.letters];
        for q in 0..self.states {
            for i in 0..self.letters {
                incoming[self.delta[q][i] * self.letters + self.rho[q][i]] += 1;
            }
        }
        incoming.iter().all(|&c| c == 1)
    }

    /// `δ` ignores the letter read.
    pub fn is_letter_independent(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|&s| s == row[0]))
    }

    /// The successor function of a letter-independent automaton.
    pub fn successors(&self) -> Result<Vec<usize>, MealyError> {
        if !self.is_letter_independent() {
            return Err(MealyError::NotLetterIndependent);
        }
        Ok(self.delta.iter().map(|row| row[0]).collect())
    }

    pub fn output_permutation(&self, q: usize) -> Result<Permutation, MealyError> {
        if !is_bijection(&self.rho[q], self.letters) {
            return Err(MealyError::NotInvertible);
        }
        Ok(Permutation::from_images(self.rho[q].clone()))
    }

    pub fn output_permutations(&self) -> Result<Vec<Permutation>, MealyError> {
        (0..self.states).map(|q| self.output_permutation(q)).collect()
    }

    /// Shape of the state graph of a letter-independent automaton; see
    /// [`StructureClass`].
    pub fn classify_structure(&self) -> StructureClass {
        let Ok(f) = self.successors() else {
            return StructureClass::LetterDependent;
        };
        let n = self.states;
        // peel states of in-degree zero until only cycles remain
        let mut indegree = vec![0usize; n];
        for &t in &f {
            indegree[t] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&q| indegree[q] == 0).collect();
        let mut on_cycle = vec![true; n];
        while let Some(q) = queue.pop() {
            on_cycle[q] = false;
            let t = f[q];
            indegree[t] -= 1;
            if indegree[t] == 0 {
                queue.push(t);
            }
        }
        let mut cycle_sizes = Vec::new();
        let mut visited = vec![false; n];
        for start in 0..n {
            if on_cycle[start] && !visited[start] {
                let mut len = 0;
                let mut q = start;
                while !visited[q] {
                    visited[q] = true;
                    len += 1;
                    q = f[q];
                }
                cycle_sizes.push(len);
            }
        }
        cycle_sizes.sort_unstable();
        let tree_states = on_cycle.iter().filter(|&&c| !c).count();
        if tree_states == 0 {
            return if cycle_sizes.len() == 1 {
                StructureClass::Cyclic(n)
            } else {
                StructureClass::DisjointCycles(cycle_sizes)
            };
        }
        if cycle_sizes != [1] {
            return StructureClass::CycleWithoutExit;
        }
        // a single looping root with a real tree hanging off it
        let root = (0..n).find(|&q| f[q] == q).unwrap();
        let mut children = vec![Vec::new(); n];
        for q in 0..n {
            if q != root {
                children[f[q]].push(q);
            }
        }
        if children.iter().all(|c| c.len() <= 1) {
            return StructureClass::Path(n);
        }
        // breadth-first depths from the root
        let mut depth = vec![0usize; n];
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &c in &children[q] {
                depth[c] = depth[q] + 1;
                order.push(c);
            }
        }
        let max_depth = depth.iter().copied().max().unwrap();
        let arity = children[root].len();
        let balanced = (0..n).all(|q| {
            if depth[q] < max_depth {
                children[q].len() == arity
            } else {
                children[q].is_empty()
            }
        });
        if balanced && arity >= 2 {
            StructureClass::ConvergingTree {
                arity,
                depth: max_depth,
            }
        } else {
            StructureClass::CycleWithoutExit
        }
    }

    /// The eventually periodic sequence of permutations through which
    /// state `q` acts letterwise on input words.
    pub fn state_semantics(&self, q: usize) -> Result<EventuallyPeriodic, MealyError> {
        let f = self.successors()?;
        let rho = self.output_permutations()?;
        let mut index_of = vec![None; self.states];
        let mut path = Vec::new();
        let mut cur = q;
        while index_of[cur].is_none() {
            index_of[cur] = Some(path.len());
            path.push(cur);
            cur = f[cur];
        }
        let entry = index_of[cur].unwrap();
        let preperiod = path[..entry].iter().map(|&s| rho[s].clone()).collect();
        let period = path[entry..].iter().map(|&s| rho[s].clone()).collect();
        Ok(EventuallyPeriodic::new(self.letters, preperiod, period))
    }

    /// Semantics of a word of states: the product of the state actions,
    /// first state applied first.
    pub fn word_semantics(&self, word: &[usize]) -> Result<EventuallyPeriodic, MealyError> {
        let mut out = EventuallyPeriodic::identity(self.letters);
        for &q in word {
            out = out.multiply(&self.state_semantics(q)?);
        }
        Ok(out)
    }

    /// The first `depth` permutations of every state's action.
    pub fn state_tuples(&self, depth: usize) -> Result<Vec<Vec<Permutation>>, MealyError> {
        let f = self.successors()?;
        let rho = self.output_permutations()?;
        Ok((0..self.states)
            .map(|q| {
                let mut cur = q;
                (0..depth)
                    .map(|_| {
                        let p = rho[cur].clone();
                        cur = f[cur];
                        p
                    })
                    .collect()
            })
            .collect())
    }

    /// A depth `m` large enough that acting on words of length `m`
    /// distinguishes every pair of distinct group elements: the longest
    /// approach to a cycle plus one full common period.
    pub fn faithful_embedding(&self) -> Result<(usize, Vec<Vec<Permutation>>), MealyError> {
        let f = self.successors()?;
        if !self.is_invertible() {
            return Err(MealyError::NotInvertible);
        }
        let mut period = 1usize;
        let mut tail = 0usize;
        let mut distance = vec![None::<usize>; self.states];
        for start in 0..self.states {
            // walk to the first repeated state to find the local cycle
            let mut index_of = vec![None; self.states];
            let mut path = Vec::new();
            let mut cur = start;
            while index_of[cur].is_none() && distance[cur].is_none() {
                index_of[cur] = Some(path.len());
                path.push(cur);
                cur = f[cur];
            }
            let (entry, base) = match index_of[cur] {
                Some(i) => {
                    period = period.lcm(&(path.len() - i));
                    (i, 0)
                }
                None => (path.len(), distance[cur].unwrap()),
            };
            for (i, &q) in path.iter().enumerate() {
                let d = if i < entry { entry - i + base } else { 0 };
                distance[q] = Some(d);
                tail = tail.max(d);
            }
        }
        let m = tail + period;
        Ok((m, self.state_tuples(m)?))
    }

    /// The group circularly generated by the automaton, as permutations
    /// of `m · k` points acting blockwise on the faithful depth.
    pub fn generated_group(&self) -> Result<PermGroup, MealyError> {
        let (m, tuples) = self.faithful_embedding()?;
        let gens = tuples.iter().map(|t| block_permutation(t)).collect();
        Ok(PermGroup::new(m * self.letters, gens))
    }

    /// Parses any of the three file formats, detected by header.
    pub fn parse(text: &str) -> Result<Self, MealyError> {
        let lines = meaningful_lines(text);
        if lines.is_empty() {
            return Err(MealyError::Parse {
                line: 1,
                reason: "empty input".into(),
            });
        }
        match lines[0].1 {
            "mealy v1" => parse_mealy(&lines[1..]),
            "cyclic v1" => parse_cyclic(&lines[1..]),
            "union v1" => parse_union(&lines[1..]),
            other => Err(MealyError::Parse {
                line: lines[0].0,
                reason: format!("unknown header {other:?}"),
            }),
        }
    }

    /// Writes the most compact of the three formats that can represent
    /// the automaton.
    pub fn serialize(&self) -> String {
        if let Some(segments) = self.cyclic_segments() {
            let blocks: Vec<String> = segments
                .iter()
                .map(|&(offset, len)| {
                    let mut out = format!("cyclic v1\nletters {}\n", self.letters);
                    for q in 0..len {
                        let p = Permutation::from_images(self.rho[offset + q].clone());
                        out.push_str(&format!("state {q} {p}\n"));
                    }
                    out
                })
                .collect();
            if blocks.len() == 1 {
                return blocks.into_iter().next().unwrap();
            }
            return format!("union v1\n{}", blocks.join("---\n"));
        }
        let mut out = format!(
            "mealy v1\nstates {}\nletters {}\n",
            self.states, self.letters
        );
        for q in 0..self.states {
            for i in 0..self.letters {
                out.push_str(&format!(
                    "trans {q} {} {} {}\n",
                    i + 1,
                    self.delta[q][i],
                    self.rho[q][i] + 1
                ));
            }
        }
        out
    }

    /// Consecutive state ranges forming canonical cycles (`q → q+1`,
    /// wrapping at the end of each range), when the automaton is an
    /// invertible letter-independent union of such cycles.
    fn cyclic_segments(&self) -> Option<Vec<(usize, usize)>> {
        if !self.is_letter_independent() || !self.is_invertible() {
            return None;
        }
        let f: Vec<usize> = self.delta.iter().map(|row| row[0]).collect();
        let mut segments = Vec::new();
        let mut seg_start = 0;
        for q in 0..self.states {
            if f[q] == q + 1 {
                continue;
            }
            if f[q] == seg_start {
                segments.push((seg_start, q + 1 - seg_start));
                seg_start = q + 1;
            } else {
                return None;
            }
        }
        if seg_start == self.states {
            Some(segments)
        } else {
            None
        }
    }
}

fn is_bijection(row: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    for &y in row {
        if y >= size || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    row.len() == size
}

/// Lines with comments stripped, paired with 1-based line numbers.
fn meaningful_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let cut = raw.split('#').next().unwrap_or("").trim();
            if cut.is_empty() {
                None
            } else {
                Some((i + 1, cut))
            }
        })
        .collect()
}

fn parse_count(lines: &[(usize, &str)], at: usize, keyword: &str) -> Result<usize, MealyError> {
    let Some(&(line, text)) = lines.get(at) else {
        return Err(MealyError::Parse {
            line: lines.last().map_or(1, |&(l, _)| l),
            reason: format!("missing {keyword} declaration"),
        });
    };
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(MealyError::Parse {
            line,
            reason: format!("expected {keyword:?} declaration, found {text:?}"),
        });
    }
    let value = parts
        .next()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1);
    match (value, parts.next()) {
        (Some(v), None) => Ok(v),
        _ => Err(MealyError::Parse {
            line,
            reason: format!("bad {keyword} declaration {text:?}"),
        }),
    }
}

fn parse_mealy(lines: &[(usize, &str)]) -> Result<MealyAutomaton, MealyError> {
    let states = parse_count(lines, 0, "states")?;
    let letters = parse_count(lines, 1, "letters")?;
    let mut delta = vec![vec![None::<usize>; letters]; states];
    let mut rho = vec![vec![0usize; letters]; states];
    for &(line, text) in &lines[2..] {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "trans" {
            return Err(MealyError::Parse {
                line,
                reason: format!("expected \"trans q i q' j\", found {text:?}"),
            });
        }
        let numbers: Vec<usize> = fields[1..]
            .iter()
            .map(|f| f.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| MealyError::Parse {
                line,
                reason: format!("non-numeric field in {text:?}"),
            })?;
        let (q, i, q2, j) = (numbers[0], numbers[1], numbers[2], numbers[3]);
        if q >= states || q2 >= states {
            return Err(MealyError::Parse {
                line,
                reason: format!("state out of range 0..{states} in {text:?}"),
            });
        }
        for letter in [i, j] {
            if letter == 0 || letter > letters {
                return Err(MealyError::LetterOutOfRange {
                    line,
                    letter,
                    letters,
                });
            }
        }
        if delta[q][i - 1].is_some() {
            return Err(MealyError::Parse {
                line,
                reason: format!("duplicate transition for state {q}, letter {i}"),
            });
        }
        delta[q][i - 1] = Some(q2);
        rho[q][i - 1] = j - 1;
    }
    for q in 0..states {
        for i in 0..letters {
            if delta[q][i].is_none() {
                return Err(MealyError::IncompleteTable {
                    state: q,
                    letter: i + 1,
                });
            }
        }
    }
    let delta = delta
        .into_iter()
        .map(|row| row.into_iter().map(Option::unwrap).collect())
        .collect();
    Ok(MealyAutomaton::new(states, letters, delta, rho))
}

fn parse_cyclic(lines: &[(usize, &str)]) -> Result<MealyAutomaton, MealyError> {
    let letters = parse_count(lines, 0, "letters")?;
    let body = &lines[1..];
    if body.is_empty() {
        return Err(MealyError::Parse {
            line: lines.first().map_or(1, |&(l, _)| l),
            reason: "cyclic automaton needs at least one state".into(),
        });
    }
    let states = body.len();
    let mut outputs: Vec<Option<Permutation>> = vec![None; states];
    for &(line, text) in body {
        let Some(rest) = text.strip_prefix("state ") else {
            return Err(MealyError::Parse {
                line,
                reason: format!("expected \"state q cycles\", found {text:?}"),
            });
        };
        let mut parts = rest.splitn(2, char::is_whitespace);
        let q = parts
            .next()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&q| q < states);
        let Some(q) = q else {
            return Err(MealyError::Parse {
                line,
                reason: format!("bad state number in {text:?} (expected 0..{states})"),
            });
        };
        let notation = parts.next().unwrap_or("").trim();
        let p = Permutation::parse_cycles(notation, Some(letters)).map_err(|e| match e {
            PermError::MalformedCycle(reason) => MealyError::Parse { line, reason },
            other => MealyError::Parse {
                line,
                reason: other.to_string(),
            },
        })?;
        if outputs[q].is_some() {
            return Err(MealyError::Parse {
                line,
                reason: format!("state {q} defined twice"),
            });
        }
        outputs[q] = Some(p);
    }
    let outputs: Vec<Permutation> = outputs.into_iter().map(Option::unwrap).collect();
    Ok(MealyAutomaton::cyclic(&outputs))
}

fn parse_union(lines: &[(usize, &str)]) -> Result<MealyAutomaton, MealyError> {
    let mut components = Vec::new();
    let mut chunk: Vec<(usize, &str)> = Vec::new();
    let mut chunks: Vec<Vec<(usize, &str)>> = Vec::new();
    for &(line, text) in lines {
        if text == "---" {
            chunks.push(std::mem::take(&mut chunk));
        } else {
            chunk.push((line, text));
        }
    }
    chunks.push(chunk);
    for chunk in &chunks {
        match chunk.first() {
            Some(&(_, "cyclic v1")) => components.push(parse_cyclic(&chunk[1..])?),
            Some(&(line, other)) => {
                return Err(MealyError::Parse {
                    line,
                    reason: format!("expected \"cyclic v1\" block, found {other:?}"),
                })
            }
            None => {
                return Err(MealyError::Parse {
                    line: lines.last().map_or(1, |&(l, _)| l),
                    reason: "empty union block".into(),
                })
            }
        }
    }
    MealyAutomaton::disjoint_union(&components)
}

/// Shape of the state graph under the (letter-independent) successor
/// function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureClass {
    /// One cycle through all states.
    Cyclic(usize),
    /// A chain feeding a single self-looping root.
    Path(usize),
    /// A complete `arity`-ary in-tree of the given depth feeding a
    /// self-looping root.
    ConvergingTree { arity: usize, depth: usize },
    /// A disjoint set of cycles with these sizes (ascending).
    DisjointCycles(Vec<usize>),
    /// Any other letter-independent graph: trees feeding cycles.
    CycleWithoutExit,
    /// The transition function depends on the letter read.
    LetterDependent,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureClass::Cyclic(n) => write!(f, "cyclic({n})"),
            StructureClass::Path(n) => write!(f, "path({n})"),
            StructureClass::ConvergingTree { arity, depth } => {
                write!(f, "tree({arity}^{depth})")
            }
            StructureClass::DisjointCycles(sizes) => {
                let parts: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                write!(f, "cycles({})", parts.join(";"))
            }
            StructureClass::CycleWithoutExit => write!(f, "cycle-without-exit"),
            StructureClass::LetterDependent => write!(f, "letter-dependent"),
        }
    }
}

/// An eventually periodic sequence of permutations in canonical form:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodic {
    degree: usize,
    preperiod: Vec<Permutation>,
    period: Vec<Permutation>,
}

impl EventuallyPeriodic {
    pub fn new(degree: usize, preperiod: Vec<Permutation>, period: Vec<Permutation>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        assert!(
            preperiod.iter().chain(&period).all(|p| p.degree() == degree),
            "degree mismatch"
        );
        let mut ep = EventuallyPeriodic {
            degree,
            preperiod,
            period,
        };
        ep.canonicalize();
        ep
    }

    pub fn identity(degree: usize) -> Self {
        EventuallyPeriodic {
            degree,
            preperiod: Vec::new(),
            period: vec![Permutation::identity(degree)],
        }
    }

    fn canonicalize(&mut self) {
        let len = self.period.len();
        for d in 1..=len {
            if len % d == 0 && (0..len).all(|i| self.period[i] == self.period[i % d]) {
                self.period.truncate(d);
                break;
            }
        }
        while let Some(last) = self.preperiod.last() {
            if last == self.period.last().unwrap() {
                self.preperiod.pop();
                self.period.rotate_right(1);
            } else {
                break;
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn preperiod(&self) -> &[Permutation] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Permutation] {
        &self.period
    }

    /// The permutation applied at depth `i`.
    pub fn at(&self, i: usize) -> &Permutation {
        if i < self.preperiod.len() {
            &self.preperiod[i]
        } else {
            &self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.preperiod.is_empty() && self.period.len() == 1 && self.period[0].is_identity()
    }

    /// Depthwise product: `self` applied first at every depth.
    pub fn multiply(&self, other: &EventuallyPeriodic) -> EventuallyPeriodic {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let pre = self.preperiod.len().max(other.preperiod.len());
        let len = self.period.len().lcm(&other.period.len());
        let preperiod = (0..pre).map(|i| self.at(i).compose(other.at(i))).collect();
        let period = (pre..pre + len)
            .map(|i| self.at(i).compose(other.at(i)))
            .collect();
        EventuallyPeriodic::new(self.degree, preperiod, period)
    }

    pub fn inverse(&self) -> EventuallyPeriodic {
        EventuallyPeriodic::new(
            self.degree,
            self.preperiod.iter().map(Permutation::inverse).collect(),
            self.period.iter().map(Permutation::inverse).collect(),
        )
    }
}
