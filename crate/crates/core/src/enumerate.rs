//! Exhaustive enumeration of the semigroups of a given genus.
//!
//! Every numerical semigroup other than the full monoid has a unique parent,
//! obtained by adding back its Frobenius number. Conversely the children of a
//! node are obtained by removing one minimal generator larger than the
//! Frobenius number. Walking this tree to depth `g` visits each semigroup of
//! genus `g` exactly once.
//!
//! Each node carries decomposition counts `dec[y] = #{a <= y/2 : a, y-a in S}`
//! so that `y` is a minimal generator iff `dec[y] == 1`. Removing a generator
//! `x` only requires decrementing `dec[y]` for the `y >= x` with `y - x` in S.

use rayon::prelude::*;

use crate::bits::Bits256;
use crate::error::{Error, Result};
use crate::semigroup::{InvariantRecord, SemigroupSet};
use crate::stats::{AggregateConfig, GenusAggregate};

/// Hard limit imposed by the node layout.
pub const HARD_MAX_GENUS: u32 = 60;
pub const DEFAULT_MAX_GENUS: u32 = 45;
pub const DEFAULT_SPLIT_DEPTH: u32 = 14;

const DEC_LEN: usize = 3 * HARD_MAX_GENUS as usize + 4;

/// A node of the semigroup tree.
#[derive(Clone)]
pub struct TreeNode {
    gaps: Bits256,
    multiplicity: u32,
    frobenius: i32,
    genus: u32,
    gap_sum: u64,
    dec: [u8; DEC_LEN],
}

impl TreeNode {
    /// The full monoid, root of the tree.
    pub fn root() -> Self {
        let mut dec = [0u8; DEC_LEN];
        for (y, d) in dec.iter_mut().enumerate() {
            *d = (y / 2 + 1) as u8;
        }
        TreeNode {
            gaps: Bits256::empty(),
            multiplicity: 1,
            frobenius: -1,
            genus: 0,
            gap_sum: 0,
            dec,
        }
    }

    pub fn from_semigroup(s: &SemigroupSet) -> Result<Self> {
        if s.genus() > HARD_MAX_GENUS {
            return Err(Error::GenusTooLarge {
                genus: s.genus(),
                max: HARD_MAX_GENUS,
            });
        }
        let mut dec = [0u8; DEC_LEN];
        for (y, d) in dec.iter_mut().enumerate() {
            let y = y as u32;
            *d = (0..=y / 2)
                .filter(|&a| s.contains(a) && s.contains(y - a))
                .count() as u8;
        }
        Ok(TreeNode {
            gaps: s.gap_bits(),
            multiplicity: s.multiplicity(),
            frobenius: s.frobenius(),
            genus: s.genus(),
            gap_sum: s.gaps().iter().map(|&h| h as u64).sum(),
            dec,
        })
    }

    pub fn semigroup(&self) -> SemigroupSet {
        SemigroupSet::from_gap_bits(self.gaps)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    #[inline]
    fn generator_window(&self) -> (usize, usize) {
        let lo = (self.frobenius + 1).max(1) as usize;
        let hi = ((self.frobenius + self.multiplicity as i32).max(1) as usize).min(DEC_LEN - 1);
        (lo, hi)
    }

    /// Minimal generators larger than the Frobenius number, ascending.
    pub fn effective_generators(&self) -> Vec<u32> {
        let (lo, hi) = self.generator_window();
        (lo..=hi)
            .filter(|&y| self.dec[y] == 1)
            .map(|y| y as u32)
            .collect()
    }

    #[inline]
    fn effective_count(&self) -> u64 {
        let (lo, hi) = self.generator_window();
        self.dec[lo..=hi].iter().filter(|&&d| d == 1).count() as u64
    }

    /// Removes the effective generator `x`. `limit` bounds the part of the
    /// decomposition table kept up to date.
    #[inline]
    fn child(&self, x: u32, limit: usize) -> TreeNode {
        let xs = x as usize;
        let mut child = self.clone();
        // Descending order reads only entries below `y`, which are still the
        // parent's values.
        for y in (xs..limit).rev() {
            if self.dec[y - xs] > 0 {
                child.dec[y] -= 1;
            }
        }
        child.gaps.set(x);
        child.frobenius = x as i32;
        child.genus += 1;
        child.gap_sum += x as u64;
        if x == self.multiplicity {
            child.multiplicity = (xs + 1..limit)
                .find(|&y| child.dec[y] > 0)
                .map_or(x + 1, |y| y as u32);
        }
        child
    }

    /// All invariants, read off the decomposition table.
    pub fn invariants(&self) -> InvariantRecord {
        let m = self.multiplicity;
        let f = self.frobenius;
        let mut gens = [0u32; DEC_LEN];
        let mut e = 0usize;
        if self.genus == 0 {
            gens[0] = 1;
            e = 1;
        } else {
            let hi = (f + m as i32) as usize;
            for y in m as usize..=hi {
                if self.dec[y] == 1 {
                    gens[e] = y as u32;
                    e += 1;
                }
            }
        }
        let e1 = if self.genus == 0 {
            1
        } else {
            m - self.gaps.and(&Bits256::range(m, 2 * m)).count()
        };
        let pf = gens[..e]
            .iter()
            .fold(self.gaps, |pf, &a| pf.and_not(&self.gaps.shr(a)));
        let t = pf.count();
        let t1 = if f < 0 {
            0
        } else {
            let lo = (f - m as i32 + 1).max(0) as u32;
            self.gaps.and(&Bits256::range(lo, f as u32 + 1)).count()
        };
        let g = self.genus as u64;
        InvariantRecord {
            genus: self.genus,
            multiplicity: m,
            frobenius: f,
            embedding_dim: e as u32,
            e1,
            e2: e as u32 - e1,
            type_t: t,
            t1,
            t2: t - t1,
            weight: self.gap_sum - g * (g + 1) / 2,
            gap_sum: self.gap_sum,
        }
    }
}

/// Children in ascending order of the removed generator.
pub fn children(node: &TreeNode) -> Vec<TreeNode> {
    node.effective_generators()
        .into_iter()
        .map(|x| node.child(x, DEC_LEN))
        .collect()
}

/// How the enumeration of one genus is split into independent work units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationPlan {
    pub target_genus: u32,
    /// Genus of the subtree roots handed to workers.
    pub split_depth: u32,
    pub workers: usize,
    pub max_genus: u32,
}

impl EnumerationPlan {
    pub fn new(target_genus: u32) -> Self {
        EnumerationPlan {
            target_genus,
            split_depth: DEFAULT_SPLIT_DEPTH.min(target_genus.saturating_sub(1)),
            workers: rayon::current_num_threads(),
            max_genus: DEFAULT_MAX_GENUS,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_split_depth(mut self, depth: u32) -> Self {
        self.split_depth = depth.min(self.target_genus.saturating_sub(1));
        self
    }

    pub fn with_max_genus(mut self, max_genus: u32) -> Self {
        self.max_genus = max_genus;
        self
    }

    fn validate(&self) -> Result<()> {
        let max = self.max_genus.min(HARD_MAX_GENUS);
        if self.target_genus > max {
            return Err(Error::GenusTooLarge {
                genus: self.target_genus,
                max,
            });
        }
        Ok(())
    }

    fn limit(&self) -> usize {
        (3 * self.target_genus as usize + 3).min(DEC_LEN)
    }

    /// Every node of genus `split_depth`; their subtrees partition the
    /// semigroups of the target genus.
    fn frontier(&self) -> Vec<TreeNode> {
        let mut out = Vec::new();
        walk(&TreeNode::root(), self.split_depth, self.limit(), &mut |n| {
            out.push(n.clone())
        });
        out
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))
    }
}

fn walk<F: FnMut(&TreeNode)>(node: &TreeNode, target: u32, limit: usize, f: &mut F) {
    if node.genus == target {
        f(node);
        return;
    }
    let (lo, hi) = node.generator_window();
    for y in lo..=hi {
        if node.dec[y] == 1 {
            walk(&node.child(y as u32, limit), target, limit, f);
        }
    }
}

fn count_below(node: &TreeNode, target: u32, limit: usize) -> u64 {
    if node.genus == target {
        return 1;
    }
    if node.genus + 1 == target {
        return node.effective_count();
    }
    let (lo, hi) = node.generator_window();
    (lo..=hi)
        .filter(|&y| node.dec[y] == 1)
        .map(|y| count_below(&node.child(y as u32, limit), target, limit))
        .sum()
}

/// Visits every semigroup of genus `g` on the current thread, in tree order.
pub fn visit_genus<F: FnMut(&SemigroupSet, &InvariantRecord)>(g: u32, mut f: F) -> Result<()> {
    let plan = EnumerationPlan::new(g).with_max_genus(HARD_MAX_GENUS);
    plan.validate()?;
    walk(&TreeNode::root(), g, plan.limit(), &mut |n| {
        f(&n.semigroup(), &n.invariants())
    });
    Ok(())
}

/// All semigroups of genus `g` in tree order.
pub fn semigroups_of_genus(g: u32) -> Result<Vec<SemigroupSet>> {
    let mut out = Vec::new();
    visit_genus(g, |s, _| out.push(*s))?;
    Ok(out)
}

/// Enumerates genus `g` with the default plan. `visitor` is called once per
/// semigroup, possibly from several threads.
pub fn enumerate_genus<V>(g: u32, visitor: V) -> Result<GenusAggregate>
where
    V: Fn(&SemigroupSet, &InvariantRecord) + Sync,
{
    enumerate_with_plan(&EnumerationPlan::new(g), &AggregateConfig::for_genus(g), visitor)
}

pub fn enumerate_with_plan<V>(
    plan: &EnumerationPlan,
    config: &AggregateConfig,
    visitor: V,
) -> Result<GenusAggregate>
where
    V: Fn(&SemigroupSet, &InvariantRecord) + Sync,
{
    plan.validate()?;
    let g = plan.target_genus;
    let limit = plan.limit();
    let leaf = |agg: &mut GenusAggregate, n: &TreeNode| {
        let s = n.semigroup();
        let r = n.invariants();
        agg.add(&s, &r);
        visitor(&s, &r);
    };
    if g == 0 || plan.workers <= 1 && plan.split_depth == 0 {
        let mut agg = GenusAggregate::with_config(g, config.clone());
        walk(&TreeNode::root(), g, limit, &mut |n| leaf(&mut agg, n));
        return Ok(agg);
    }
    let frontier = plan.frontier();
    let pool = plan.pool()?;
    pool.install(|| {
        frontier
            .par_iter()
            .fold(
                || GenusAggregate::with_config(g, config.clone()),
                |mut agg, root| {
                    walk(root, g, limit, &mut |n| leaf(&mut agg, n));
                    agg
                },
            )
            .map(Ok::<_, Error>)
            .try_reduce(
                || GenusAggregate::with_config(g, config.clone()),
                |a, b| a.merge(&b),
            )
    })
}

/// `N(g)`, the number of semigroups of genus `g`.
pub fn count_genus(g: u32) -> Result<u64> {
    count_with_plan(&EnumerationPlan::new(g))
}

pub fn count_with_plan(plan: &EnumerationPlan) -> Result<u64> {
    plan.validate()?;
    let g = plan.target_genus;
    let limit = plan.limit();
    if g == 0 {
        return Ok(1);
    }
    let frontier = plan.frontier();
    let pool = plan.pool()?;
    Ok(pool.install(|| {
        frontier
            .par_iter()
            .map(|n| count_below(n, g, limit))
            .sum()
    }))
}
