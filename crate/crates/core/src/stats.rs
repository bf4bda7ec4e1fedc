//! Per-genus aggregation of invariants and the statistics derived from it.
//!
//! A [`GenusAggregate`] is a commutative monoid: workers build their own and
//! the results are merged once. All counts are exact, so every probability
//! and expectation is returned as an exact rational.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::semigroup::{InvariantRecord, SemigroupSet};

pub fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// `(5 + sqrt 5) / 10`, the typical ratio `m / g`.
pub fn gamma() -> f64 {
    (5.0 + 5f64.sqrt()) / 10.0
}

/// Counts indexed by a small integer value.
#[derive(Clone, Debug, Default)]
pub struct Histogram {
    offset: i64,
    counts: Vec<u64>,
}

impl Histogram {
    /// Preallocated for values in `[lo, hi]`; other values still fit.
    pub fn with_range(lo: i64, hi: i64) -> Self {
        Histogram {
            offset: lo,
            counts: vec![0; (hi - lo + 1).max(0) as usize],
        }
    }

    #[inline]
    pub fn add(&mut self, value: i64) {
        self.add_n(value, 1);
    }

    #[inline]
    fn add_n(&mut self, value: i64, n: u64) {
        let idx = value - self.offset;
        if idx < 0 || idx as usize >= self.counts.len() {
            self.grow(value);
        }
        self.counts[(value - self.offset) as usize] += n;
    }

    fn grow(&mut self, value: i64) {
        if self.counts.is_empty() {
            self.offset = value;
            self.counts.push(0);
            return;
        }
        if value < self.offset {
            let extra = (self.offset - value) as usize;
            let mut counts = vec![0; extra];
            counts.extend_from_slice(&self.counts);
            self.counts = counts;
            self.offset = value;
        } else {
            self.counts.resize((value - self.offset + 1) as usize, 0);
        }
    }

    pub fn get(&self, value: i64) -> u64 {
        let idx = value - self.offset;
        if idx < 0 {
            return 0;
        }
        self.counts.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(value, count)` pairs in ascending value order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| (self.offset + i as i64, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn weighted_sum(&self) -> i128 {
        self.iter().map(|(v, c)| v as i128 * c as i128).sum()
    }

    pub fn count_where<P: Fn(i64) -> bool>(&self, pred: P) -> u64 {
        self.iter().filter(|&(v, _)| pred(v)).map(|(_, c)| c).sum()
    }

    pub fn merge_from(&mut self, other: &Histogram) {
        for (v, c) in other.iter() {
            self.add_n(v, c);
        }
    }
}

impl PartialEq for Histogram {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for Histogram {}

/// Scalar invariants that can be queried from an aggregate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Multiplicity,
    Frobenius,
    EmbeddingDim,
    E1,
    E2,
    Type,
    T1,
    T2,
    Weight,
    GapSum,
}

impl Invariant {
    pub const ALL: [Invariant; 10] = [
        Invariant::Multiplicity,
        Invariant::Frobenius,
        Invariant::EmbeddingDim,
        Invariant::E1,
        Invariant::E2,
        Invariant::Type,
        Invariant::T1,
        Invariant::T2,
        Invariant::Weight,
        Invariant::GapSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Multiplicity => "m",
            Invariant::Frobenius => "F",
            Invariant::EmbeddingDim => "e",
            Invariant::E1 => "e1",
            Invariant::E2 => "e2",
            Invariant::Type => "t",
            Invariant::T1 => "t1",
            Invariant::T2 => "t2",
            Invariant::Weight => "w",
            Invariant::GapSum => "alpha",
        }
    }

    pub fn of(self, r: &InvariantRecord) -> i64 {
        match self {
            Invariant::Multiplicity => r.multiplicity as i64,
            Invariant::Frobenius => r.frobenius as i64,
            Invariant::EmbeddingDim => r.embedding_dim as i64,
            Invariant::E1 => r.e1 as i64,
            Invariant::E2 => r.e2 as i64,
            Invariant::Type => r.type_t as i64,
            Invariant::T1 => r.t1 as i64,
            Invariant::T2 => r.t2 as i64,
            Invariant::Weight => r.weight as i64,
            Invariant::GapSum => r.gap_sum as i64,
        }
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "m" | "multiplicity" => Invariant::Multiplicity,
            "F" | "f" | "frobenius" => Invariant::Frobenius,
            "e" | "embedding" | "embedding_dim" => Invariant::EmbeddingDim,
            "e1" => Invariant::E1,
            "e2" => Invariant::E2,
            "t" | "type" => Invariant::Type,
            "t1" => Invariant::T1,
            "t2" => Invariant::T2,
            "w" | "weight" => Invariant::Weight,
            "alpha" | "gap_sum" => Invariant::GapSum,
            other => return Err(Error::UnknownInvariant(other.to_string())),
        })
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sums of the tracked invariants and of the squares of `w` and `alpha`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Moments {
    pub e: u128,
    pub e1: u128,
    pub e2: u128,
    pub t: u128,
    pub t1: u128,
    pub t2: u128,
    pub w: u128,
    pub alpha: u128,
    pub w_sq: u128,
    pub alpha_sq: u128,
}

impl Moments {
    const NAMES: [&'static str; 10] = [
        "alpha", "alpha_sq", "e", "e1", "e2", "t", "t1", "t2", "w", "w_sq",
    ];

    fn fields(&self) -> [u128; 10] {
        [
            self.alpha,
            self.alpha_sq,
            self.e,
            self.e1,
            self.e2,
            self.t,
            self.t1,
            self.t2,
            self.w,
            self.w_sq,
        ]
    }

    fn fields_mut(&mut self) -> [&mut u128; 10] {
        [
            &mut self.alpha,
            &mut self.alpha_sq,
            &mut self.e,
            &mut self.e1,
            &mut self.e2,
            &mut self.t,
            &mut self.t1,
            &mut self.t2,
            &mut self.w,
            &mut self.w_sq,
        ]
    }

    fn first(&self, inv: Invariant) -> Option<u128> {
        Some(match inv {
            Invariant::EmbeddingDim => self.e,
            Invariant::E1 => self.e1,
            Invariant::E2 => self.e2,
            Invariant::Type => self.t,
            Invariant::T1 => self.t1,
            Invariant::T2 => self.t2,
            Invariant::Weight => self.w,
            Invariant::GapSum => self.alpha,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// `e >= m/2`
    pub e_half_m: u64,
    /// `e >= m/3`
    pub e_third_m: u64,
    /// `F = 2g - 1`
    pub symmetric: u64,
    /// `F < 2m`
    pub f_below_2m: u64,
    /// `F - 2m = k` for `k = 1..=k_max`
    pub f_minus_2m: Vec<u64>,
    /// `F - 2m > k_max`
    pub f_minus_2m_overflow: u64,
}

/// Settings that must agree for two aggregates to merge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateConfig {
    pub k_max: u32,
    /// Pairs `(i, j)`, `i < j`, for which `{i, j} ∩ S = ∅` is counted.
    pub pairs: Vec<(u32, u32)>,
}

impl AggregateConfig {
    pub const DEFAULT_K_MAX: u32 = 10;

    /// Default settings: `k_max = 10` and all pairs of the nine deciles of `[1, 2g]`.
    pub fn for_genus(g: u32) -> Self {
        let mut deciles: Vec<u32> = (1..=9u32)
            .map(|k| ((2 * g * k + 5) / 10).max(1))
            .filter(|&n| n <= 2 * g)
            .collect();
        deciles.dedup();
        let mut pairs = Vec::new();
        for (a, &i) in deciles.iter().enumerate() {
            for &j in &deciles[a + 1..] {
                pairs.push((i, j));
            }
        }
        AggregateConfig {
            k_max: Self::DEFAULT_K_MAX,
            pairs,
        }
    }
}

/// Mergeable statistics over all semigroups of one genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusAggregate {
    genus: u32,
    count: u64,
    histograms: [Histogram; 10],
    f_minus_2m: Histogram,
    moments: Moments,
    counters: Counters,
    /// `gap_counts[n - 1] = #{S : n not in S}` for `n` in `[1, 2g]`.
    gap_counts: Vec<u64>,
    config: AggregateConfig,
    pair_miss: Vec<u64>,
}

fn hist_slot(inv: Invariant) -> usize {
    inv as usize
}

impl GenusAggregate {
    /// Empty aggregate with the default configuration.
    pub fn new(genus: u32) -> Self {
        Self::with_config(genus, AggregateConfig::for_genus(genus))
    }

    pub fn with_config(genus: u32, config: AggregateConfig) -> Self {
        let g = genus as i64;
        let histograms = Invariant::ALL.map(|inv| match inv {
            Invariant::Frobenius => Histogram::with_range(-1, 2 * g - 1),
            Invariant::Weight => Histogram::with_range(0, g * g / 2 + 1),
            Invariant::GapSum => Histogram::with_range(g * (g + 1) / 2, g * g + 1),
            _ => Histogram::with_range(0, g + 1),
        });
        GenusAggregate {
            genus,
            count: 0,
            histograms,
            f_minus_2m: Histogram::with_range(-g - 3, g),
            moments: Moments::default(),
            counters: Counters {
                f_minus_2m: vec![0; config.k_max as usize],
                ..Counters::default()
            },
            gap_counts: vec![0; 2 * genus as usize],
            pair_miss: vec![0; config.pairs.len()],
            config,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn config(&self) -> &AggregateConfig {
        &self.config
    }

    pub fn moments(&self) -> &Moments {
        &self.moments
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn histogram(&self, inv: Invariant) -> &Histogram {
        &self.histograms[hist_slot(inv)]
    }

    /// Distribution of `F - 2m`.
    pub fn f_minus_2m_histogram(&self) -> &Histogram {
        &self.f_minus_2m
    }

    /// `#{S : n in S}`.
    pub fn membership_count(&self, n: u32) -> u64 {
        if n == 0 || n > 2 * self.genus {
            return self.count;
        }
        self.count - self.gap_counts[n as usize - 1]
    }

    pub fn pair_miss_count(&self, i: u32, j: u32) -> Option<u64> {
        let key = (i.min(j), i.max(j));
        self.config
            .pairs
            .iter()
            .position(|&p| p == key)
            .map(|idx| self.pair_miss[idx])
    }

    /// Records one semigroup of this genus.
    pub fn add(&mut self, s: &SemigroupSet, r: &InvariantRecord) {
        debug_assert_eq!(r.genus, self.genus);
        self.count += 1;
        for inv in Invariant::ALL {
            self.histograms[hist_slot(inv)].add(inv.of(r));
        }
        let m = r.multiplicity as i64;
        let f = r.frobenius as i64;
        self.f_minus_2m.add(f - 2 * m);

        let mo = &mut self.moments;
        mo.e += r.embedding_dim as u128;
        mo.e1 += r.e1 as u128;
        mo.e2 += r.e2 as u128;
        mo.t += r.type_t as u128;
        mo.t1 += r.t1 as u128;
        mo.t2 += r.t2 as u128;
        mo.w += r.weight as u128;
        mo.alpha += r.gap_sum as u128;
        mo.w_sq += (r.weight as u128).pow(2);
        mo.alpha_sq += (r.gap_sum as u128).pow(2);

        let c = &mut self.counters;
        let e = r.embedding_dim as i64;
        if 2 * e >= m {
            c.e_half_m += 1;
        }
        if 3 * e >= m {
            c.e_third_m += 1;
        }
        if f == 2 * self.genus as i64 - 1 {
            c.symmetric += 1;
        }
        if f < 2 * m {
            c.f_below_2m += 1;
        } else {
            // F = 2m is impossible since 2m is a member.
            let k = (f - 2 * m) as usize;
            match c.f_minus_2m.get_mut(k.wrapping_sub(1)) {
                Some(slot) => *slot += 1,
                None => c.f_minus_2m_overflow += 1,
            }
        }

        for h in s.gap_bits().iter() {
            self.gap_counts[h as usize - 1] += 1;
        }
        for (slot, &(i, j)) in self.pair_miss.iter_mut().zip(&self.config.pairs) {
            if !s.contains(i) && !s.contains(j) {
                *slot += 1;
            }
        }
    }

    /// Componentwise sum. The empty aggregate is the identity.
    pub fn merge(&self, other: &GenusAggregate) -> Result<GenusAggregate> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        if self.config != other.config {
            return Err(Error::IncompatibleAggregates);
        }
        let mut out = self.clone();
        out.count += other.count;
        for (a, b) in out.histograms.iter_mut().zip(&other.histograms) {
            a.merge_from(b);
        }
        out.f_minus_2m.merge_from(&other.f_minus_2m);
        for (a, b) in out.moments.fields_mut().into_iter().zip(other.moments.fields()) {
            *a += b;
        }
        let (c, d) = (&mut out.counters, &other.counters);
        c.e_half_m += d.e_half_m;
        c.e_third_m += d.e_third_m;
        c.symmetric += d.symmetric;
        c.f_below_2m += d.f_below_2m;
        c.f_minus_2m_overflow += d.f_minus_2m_overflow;
        for (a, b) in c.f_minus_2m.iter_mut().zip(&d.f_minus_2m) {
            *a += b;
        }
        for (a, b) in out.gap_counts.iter_mut().zip(&other.gap_counts) {
            *a += b;
        }
        for (a, b) in out.pair_miss.iter_mut().zip(&other.pair_miss) {
            *a += b;
        }
        Ok(out)
    }

    /// Canonical JSON form: sorted keys, every number as a decimal string.
    pub fn to_json(&self) -> Value {
        let dec = |x: u128| Value::String(x.to_string());
        let hist = |h: &Histogram| {
            let map: Map<String, Value> = h
                .iter()
                .map(|(v, c)| (v.to_string(), dec(c as u128)))
                .collect();
            Value::Object(map)
        };
        let mut histograms = Map::new();
        for inv in Invariant::ALL {
            histograms.insert(inv.name().to_string(), hist(self.histogram(inv)));
        }
        histograms.insert("F-2m".to_string(), hist(&self.f_minus_2m));
        let moments: Map<String, Value> = Moments::NAMES
            .iter()
            .zip(self.moments.fields())
            .map(|(n, v)| (n.to_string(), dec(v)))
            .collect();
        let c = &self.counters;
        json!({
            "genus": dec(self.genus as u128),
            "count": dec(self.count as u128),
            "histograms": histograms,
            "moments": moments,
            "counters": {
                "e_half_m": dec(c.e_half_m as u128),
                "e_third_m": dec(c.e_third_m as u128),
                "symmetric": dec(c.symmetric as u128),
                "f_below_2m": dec(c.f_below_2m as u128),
                "f_minus_2m": c.f_minus_2m.iter().map(|&x| dec(x as u128)).collect::<Vec<_>>(),
                "f_minus_2m_overflow": dec(c.f_minus_2m_overflow as u128),
                "k_max": dec(self.config.k_max as u128),
            },
            "membership": (1..=2 * self.genus)
                .map(|n| dec(self.membership_count(n) as u128))
                .collect::<Vec<_>>(),
            "pairs": self.config.pairs.iter().zip(&self.pair_miss)
                .map(|(&(i, j), &x)| json!([dec(i as u128), dec(j as u128), dec(x as u128)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> std::result::Result<Self, String> {
        fn num<T: FromStr>(v: &Value, what: &str) -> std::result::Result<T, String> {
            v.as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad number at `{what}`"))
        }
        fn field<'a>(v: &'a Value, key: &str) -> std::result::Result<&'a Value, String> {
            v.get(key).ok_or_else(|| format!("missing `{key}`"))
        }
        fn arr<'a>(v: &'a Value, key: &str) -> std::result::Result<&'a Vec<Value>, String> {
            field(v, key)?
                .as_array()
                .ok_or_else(|| format!("`{key}` is not an array"))
        }
        fn hist(v: &Value) -> std::result::Result<Histogram, String> {
            let obj = v.as_object().ok_or("histogram is not an object")?;
            let mut h = Histogram::default();
            for (k, c) in obj {
                let value: i64 = k.parse().map_err(|_| format!("bad histogram key `{k}`"))?;
                h.add_n(value, num(c, k)?);
            }
            Ok(h)
        }

        let genus: u32 = num(field(v, "genus")?, "genus")?;
        let counters = field(v, "counters")?;
        let k_max: u32 = num(field(counters, "k_max")?, "k_max")?;
        let mut pairs = Vec::new();
        let mut pair_miss = Vec::new();
        for p in arr(v, "pairs")? {
            let p = p.as_array().filter(|p| p.len() == 3).ok_or("bad pair entry")?;
            pairs.push((num(&p[0], "pair")?, num(&p[1], "pair")?));
            pair_miss.push(num(&p[2], "pair")?);
        }
        let mut agg = GenusAggregate::with_config(genus, AggregateConfig { k_max, pairs });
        agg.count = num(field(v, "count")?, "count")?;
        agg.pair_miss = pair_miss;

        let hs = field(v, "histograms")?;
        for inv in Invariant::ALL {
            agg.histograms[hist_slot(inv)] = hist(field(hs, inv.name())?)?;
        }
        agg.f_minus_2m = hist(field(hs, "F-2m")?)?;

        let ms = field(v, "moments")?;
        for (name, slot) in Moments::NAMES.iter().zip(agg.moments.fields_mut()) {
            *slot = num(field(ms, name)?, name)?;
        }

        let c = &mut agg.counters;
        c.e_half_m = num(field(counters, "e_half_m")?, "e_half_m")?;
        c.e_third_m = num(field(counters, "e_third_m")?, "e_third_m")?;
        c.symmetric = num(field(counters, "symmetric")?, "symmetric")?;
        c.f_below_2m = num(field(counters, "f_below_2m")?, "f_below_2m")?;
        c.f_minus_2m_overflow = num(field(counters, "f_minus_2m_overflow")?, "overflow")?;
        c.f_minus_2m = arr(counters, "f_minus_2m")?
            .iter()
            .map(|x| num(x, "f_minus_2m"))
            .collect::<std::result::Result<_, _>>()?;
        if c.f_minus_2m.len() != k_max as usize {
            return Err("f_minus_2m length disagrees with k_max".into());
        }

        let membership = arr(v, "membership")?;
        if membership.len() != 2 * genus as usize {
            return Err("membership length disagrees with genus".into());
        }
        for (slot, x) in agg.gap_counts.iter_mut().zip(membership) {
            let members: u64 = num(x, "membership")?;
            *slot = agg
                .count
                .checked_sub(members)
                .ok_or("membership exceeds count")?;
        }
        Ok(agg)
    }
}

fn ratio(num: impl Into<BigInt>, den: u64) -> BigRational {
    BigRational::new(num.into(), BigInt::from(den))
}

/// Proportion queries supported by [`proportion`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Predicate {
    /// `|e - g/sqrt 5| < eps g`
    EmbeddingBand(f64),
    /// `|t - (1 - gamma) g| < eps g`
    TypeBand(f64),
    /// `|w - g^2/(10 phi)| < eps g^2`
    WeightBand(f64),
    /// `|m - gamma g| < eps g`
    MultiplicityBand(f64),
    /// `|F - 2m| < eps g`
    FrobeniusBand(f64),
    EmbeddingAtLeastHalfM,
    EmbeddingAtLeastThirdM,
    Symmetric,
    FrobeniusBelow2M,
}

impl FromStr for Predicate {
    type Err = Error;

    /// Accepts `e>=m/2`, `e>=m/3`, `symmetric`, `F<2m`, or `<family>:<eps>`
    /// with family one of `e`, `t`, `w`, `m`, `F-2m`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownPredicate(s.to_string());
        match s {
            "e>=m/2" => return Ok(Predicate::EmbeddingAtLeastHalfM),
            "e>=m/3" => return Ok(Predicate::EmbeddingAtLeastThirdM),
            "symmetric" => return Ok(Predicate::Symmetric),
            "F<2m" => return Ok(Predicate::FrobeniusBelow2M),
            _ => {}
        }
        let (family, eps) = s.split_once(':').ok_or_else(unknown)?;
        let eps: f64 = eps.parse().map_err(|_| unknown())?;
        Ok(match family {
            "e" => Predicate::EmbeddingBand(eps),
            "t" => Predicate::TypeBand(eps),
            "w" => Predicate::WeightBand(eps),
            "m" => Predicate::MultiplicityBand(eps),
            "F-2m" => Predicate::FrobeniusBand(eps),
            _ => return Err(unknown()),
        })
    }
}

fn band(h: &Histogram, center: f64, radius: f64) -> u64 {
    h.count_where(|v| (v as f64 - center).abs() < radius)
}

/// Fraction of the semigroups of the aggregate's genus satisfying `pred`.
pub fn proportion(agg: &GenusAggregate, pred: Predicate) -> Result<BigRational> {
    if agg.count == 0 {
        return Err(Error::MissingAggregate(agg.genus));
    }
    let g = agg.genus as f64;
    let c = &agg.counters;
    let hits = match pred {
        Predicate::EmbeddingBand(eps) => {
            band(agg.histogram(Invariant::EmbeddingDim), g / 5f64.sqrt(), eps * g)
        }
        Predicate::TypeBand(eps) => band(agg.histogram(Invariant::Type), (1.0 - gamma()) * g, eps * g),
        Predicate::WeightBand(eps) => band(
            agg.histogram(Invariant::Weight),
            g * g / (10.0 * phi()),
            eps * g * g,
        ),
        Predicate::MultiplicityBand(eps) => {
            band(agg.histogram(Invariant::Multiplicity), gamma() * g, eps * g)
        }
        Predicate::FrobeniusBand(eps) => band(&agg.f_minus_2m, 0.0, eps * g),
        Predicate::EmbeddingAtLeastHalfM => c.e_half_m,
        Predicate::EmbeddingAtLeastThirdM => c.e_third_m,
        Predicate::Symmetric => c.symmetric,
        Predicate::FrobeniusBelow2M => c.f_below_2m,
    };
    Ok(ratio(hits, agg.count))
}

/// Mean of `inv` over the genus.
pub fn expectation(agg: &GenusAggregate, inv: Invariant) -> Result<BigRational> {
    if agg.count == 0 {
        return Err(Error::MissingAggregate(agg.genus));
    }
    let total: BigInt = match agg.moments.first(inv) {
        Some(s) => s.into(),
        None => agg.histogram(inv).weighted_sum().into(),
    };
    Ok(ratio(total, agg.count))
}

/// `E[x^2] - E[x]^2`; available for the weight and the gap sum.
pub fn variance(agg: &GenusAggregate, inv: Invariant) -> Result<BigRational> {
    let second = match inv {
        Invariant::Weight => agg.moments.w_sq,
        Invariant::GapSum => agg.moments.alpha_sq,
        other => return Err(Error::NoSecondMoment(other.name())),
    };
    let mean = expectation(agg, inv)?;
    Ok(ratio(second, agg.count) - &mean * &mean)
}

/// The limiting membership density: 0 below `gamma`, `1/phi` between `gamma`
/// and `2 gamma`, 1 above.
pub fn f1(x: f64) -> Result<f64> {
    let gm = gamma();
    if !(0.0..=2.0).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    if x == gm || x == 2.0 * gm {
        return Err(Error::UndefinedAtBreakpoint(x));
    }
    Ok(if x < gm {
        0.0
    } else if x < 2.0 * gm {
        (5f64.sqrt() - 1.0) / 2.0
    } else {
        1.0
    })
}

/// `P_g[n in S]`.
pub fn membership_probability(agg: &GenusAggregate, n: u32) -> Result<BigRational> {
    if agg.count == 0 {
        return Err(Error::MissingAggregate(agg.genus));
    }
    Ok(ratio(agg.membership_count(n), agg.count))
}

/// `P_g[{i, j} ∩ S = ∅]` for a configured pair.
pub fn pair_miss_probability(agg: &GenusAggregate, i: u32, j: u32) -> Result<BigRational> {
    if agg.count == 0 {
        return Err(Error::MissingAggregate(agg.genus));
    }
    let hits = agg
        .pair_miss_count(i, j)
        .ok_or_else(|| Error::UntrackedElement(format!("pair ({i}, {j})")))?;
    Ok(ratio(hits, agg.count))
}

/// Default epsilons of the band figures.
pub fn default_epsilons(figure: u8) -> Vec<f64> {
    match figure {
        3 => vec![0.02, 0.03, 0.04],
        _ => vec![0.2, 0.15, 0.1],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FigureRow {
    /// Figures 1 to 3.
    Band {
        genus: u32,
        epsilon: f64,
        proportion: BigRational,
    },
    /// Figures 4 and 5: `E[x]/g`, `E[x_1]/g`, `E[x_2]/g`.
    Means {
        genus: u32,
        total: BigRational,
        part1: BigRational,
        part2: BigRational,
    },
}

/// Rows of figure `figure` for every genus in `genera`. Figures 4 and 5
/// divide by `g` and skip genus 0.
pub fn figure_data(
    figure: u8,
    aggregates: &BTreeMap<u32, GenusAggregate>,
    genera: RangeInclusive<u32>,
    epsilons: &[f64],
) -> Result<Vec<FigureRow>> {
    if !(1..=5).contains(&figure) {
        return Err(Error::UnknownFigure(figure));
    }
    let mut rows = Vec::new();
    for g in genera {
        let agg = aggregates.get(&g).ok_or(Error::MissingAggregate(g))?;
        match figure {
            1..=3 => {
                for &eps in epsilons {
                    let pred = match figure {
                        1 => Predicate::EmbeddingBand(eps),
                        2 => Predicate::TypeBand(eps),
                        _ => Predicate::WeightBand(eps),
                    };
                    rows.push(FigureRow::Band {
                        genus: g,
                        epsilon: eps,
                        proportion: proportion(agg, pred)?,
                    });
                }
            }
            _ if g == 0 => {}
            _ => {
                let [a, b, c] = if figure == 4 {
                    [Invariant::EmbeddingDim, Invariant::E1, Invariant::E2]
                } else {
                    [Invariant::Type, Invariant::T1, Invariant::T2]
                };
                let gg = BigRational::from_integer(g.into());
                rows.push(FigureRow::Means {
                    genus: g,
                    total: expectation(agg, a)? / &gg,
                    part1: expectation(agg, b)? / &gg,
                    part2: expectation(agg, c)? / &gg,
                });
            }
        }
    }
    Ok(rows)
}

/// Decimal rendering rounded to `sig` significant digits (half away from
/// zero), without trailing zeros.
pub fn to_decimal(q: &BigRational, sig: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = q.is_negative();
    let q = q.abs();
    let ten = BigRational::from_integer(10.into());
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            num_traits::pow(ten.clone(), e as usize)
        } else {
            BigRational::one() / num_traits::pow(ten.clone(), (-e) as usize)
        }
    };
    // exponent with 10^e <= q < 10^(e+1)
    let mut e = {
        let approx = q.numer().bits() as i64 - q.denom().bits() as i64;
        (approx as f64 * std::f64::consts::LOG10_2).floor() as i64
    };
    while pow10(e) > q {
        e -= 1;
    }
    while pow10(e + 1) <= q {
        e += 1;
    }
    let scaled = &q * pow10(sig as i64 - 1 - e);
    let half = BigRational::new(1.into(), 2.into());
    let mut digits = (scaled + half).floor().to_integer();
    if digits == num_traits::pow(BigInt::from(10), sig) {
        digits /= 10;
        e += 1;
    }
    let digits = digits.to_string();
    let point = e + 1; // digits before the decimal point
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}
