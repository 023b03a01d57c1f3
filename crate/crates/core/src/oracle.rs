//! Value-query oracles.
//!
//! [`CountingOracle`] wraps any [`AnswerPolicy`] and does the bookkeeping every
//! algorithm run needs: per-agent query counters, an ordered transcript, and a
//! cache so a repeated `(agent, item)` query is answered for free.

use std::collections::HashMap;

use crate::{Error, Result, ValuationProfile};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranscriptEntry {
    pub agent: usize,
    pub item: usize,
    pub answer: f64,
}

/// The interface algorithms see.
pub trait QueryOracle {
    fn n(&self) -> usize;

    /// Value of `agent` for `item`. Counted once per distinct pair.
    fn query(&mut self, agent: usize, item: usize) -> Result<f64>;

    fn queries_of(&self, agent: usize) -> usize;

    fn transcript(&self) -> &[TranscriptEntry];

    fn max_queries(&self) -> usize {
        (0..self.n()).map(|i| self.queries_of(i)).max().unwrap_or(0)
    }
}

/// Decides the answer to a fresh (uncached) query.
pub trait AnswerPolicy {
    fn n(&self) -> usize;
    fn answer(&mut self, agent: usize, item: usize) -> Result<f64>;
}

#[derive(Debug, Clone, Copy)]
pub struct TruthfulPolicy<'a> {
    truth: &'a ValuationProfile,
}

impl<'a> TruthfulPolicy<'a> {
    pub fn new(truth: &'a ValuationProfile) -> Self {
        Self { truth }
    }
}

impl AnswerPolicy for TruthfulPolicy<'_> {
    fn n(&self) -> usize {
        self.truth.n()
    }

    fn answer(&mut self, agent: usize, item: usize) -> Result<f64> {
        Ok(self.truth.value(agent, item))
    }
}

/// Refuses every query; wraps ordinal-only algorithms.
#[derive(Debug, Clone, Copy)]
pub struct ForbidQueries {
    pub n: usize,
}

impl AnswerPolicy for ForbidQueries {
    fn n(&self) -> usize {
        self.n
    }

    fn answer(&mut self, _agent: usize, _item: usize) -> Result<f64> {
        Err(Error::QueryForbidden)
    }
}

#[derive(Debug, Clone)]
pub struct CountingOracle<P> {
    policy: P,
    counters: Vec<usize>,
    transcript: Vec<TranscriptEntry>,
    cache: HashMap<(usize, usize), f64>,
}

impl<P: AnswerPolicy> CountingOracle<P> {
    pub fn new(policy: P) -> Self {
        let n = policy.n();
        Self { policy, counters: vec![0; n], transcript: Vec::new(), cache: HashMap::new() }
    }

    pub fn policy(&self) -> &P {
        &self.policy
    }

    pub fn counters(&self) -> &[usize] {
        &self.counters
    }

    pub fn into_parts(self) -> (P, Vec<TranscriptEntry>) {
        (self.policy, self.transcript)
    }
}

impl<'a> CountingOracle<TruthfulPolicy<'a>> {
    pub fn truthful(truth: &'a ValuationProfile) -> Self {
        Self::new(TruthfulPolicy::new(truth))
    }
}

impl<P: AnswerPolicy> QueryOracle for CountingOracle<P> {
    fn n(&self) -> usize {
        self.counters.len()
    }

    fn query(&mut self, agent: usize, item: usize) -> Result<f64> {
        let n = self.counters.len();
        if agent >= n || item >= n {
            return Err(Error::IndexOutOfRange { agent, item, n });
        }
        if let Some(&cached) = self.cache.get(&(agent, item)) {
            return Ok(cached);
        }
        let answer = self.policy.answer(agent, item)?;
        self.cache.insert((agent, item), answer);
        self.counters[agent] += 1;
        self.transcript.push(TranscriptEntry { agent, item, answer });
        Ok(answer)
    }

    fn queries_of(&self, agent: usize) -> usize {
        self.counters[agent]
    }

    fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }
}
