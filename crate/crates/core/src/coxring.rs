//! Cox ring data: variables, their Pic-degrees, the dimension of the variety
//! and the prime components of the irrelevant ideal.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::{Poly, PolyRing};

/// Largest number of user variables accepted; the remaining slots are kept
/// free for elimination variables.
pub const MAX_RING_VARS: usize = 12;

/// An element of Pic(X) = Z^r.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<i32>);

impl Multidegree {
    pub fn zero(r: usize) -> Self {
        Multidegree(vec![0; r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn parse(s: &str) -> Result<Multidegree> {
        s.trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad multidegree `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub count: usize,
    pub degree: Multidegree,
}

/// JSON ring descriptor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingDescriptor {
    #[serde(default = "default_prime")]
    pub p: u32,
    pub blocks: Vec<Block>,
    #[serde(rename = "dimX", default, skip_serializing_if = "Option::is_none")]
    pub dim_x: Option<usize>,
    /// Variable names generating each prime component of B. Defaults to one
    /// component per block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<String>>>,
}

fn default_prime() -> u32 {
    PrimeField::DEFAULT_PRIME
}

#[derive(Debug)]
pub struct CoxRing {
    blocks: Vec<Block>,
    names: Vec<String>,
    degrees: Vec<Multidegree>,
    pic_rank: usize,
    dim_x: usize,
    components: Vec<Vec<usize>>,
    weights: Vec<u32>,
    functional: Vec<i32>,
    polys: PolyRing,
    product_dims: Option<Vec<usize>>,
    seed: u64,
}

impl PartialEq for CoxRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.degrees == other.degrees
            && self.dim_x == other.dim_x
            && self.components == other.components
            && self.polys.field() == other.polys.field()
    }
}

/// The prime components of the irrelevant ideal, each generated by a set of
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrelevantIdeal {
    pub components: Vec<Vec<usize>>,
}

impl CoxRing {
    /// Cox ring of P^{d_1} x ... x P^{d_k}.
    pub fn product_space(dims: &[usize], p: u32) -> Result<Arc<CoxRing>> {
        if dims.is_empty() {
            return Err(Error::InvalidRing("empty list of factor dimensions".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidRing("factor dimensions must be positive".into()));
        }
        let k = dims.len();
        let names = ["x", "y", "z", "w", "u", "v"];
        let blocks = dims
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let mut deg = vec![0; k];
                deg[j] = 1;
                Block {
                    name: names.get(j).map_or_else(|| format!("t{j}_"), |s| s.to_string()),
                    count: d + 1,
                    degree: Multidegree(deg),
                }
            })
            .collect();
        CoxRing::from_descriptor(&RingDescriptor {
            p,
            blocks,
            dim_x: None,
            components: None,
        })
    }

    pub fn from_descriptor(desc: &RingDescriptor) -> Result<Arc<CoxRing>> {
        let field = PrimeField::new(desc.p)?;
        if desc.blocks.is_empty() {
            return Err(Error::InvalidRing("no variable blocks".into()));
        }
        let r = desc.blocks[0].degree.rank();
        if r == 0 || desc.blocks.iter().any(|b| b.degree.rank() != r) {
            return Err(Error::InvalidRing("blocks disagree on the Picard rank".into()));
        }
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for b in &desc.blocks {
            if b.count == 0 {
                return Err(Error::InvalidRing(format!("block `{}` is empty", b.name)));
            }
            for i in 0..b.count {
                names.push(format!("{}{}", b.name, i));
                degrees.push(b.degree.clone());
            }
        }
        let n = names.len();
        if n > MAX_RING_VARS {
            return Err(Error::ResourceLimit(format!(
                "{n} variables exceeds the cap of {MAX_RING_VARS}"
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidRing(format!("duplicate variable name `{a}`")));
            }
        }

        // A product of projective spaces: block j has degree e_j.
        let is_product = desc.blocks.len() == r
            && desc
                .blocks
                .iter()
                .enumerate()
                .all(|(j, b)| b.degree.0.iter().enumerate().all(|(i, &c)| c == i32::from(i == j)));
        let product_dims = is_product.then(|| desc.blocks.iter().map(|b| b.count - 1).collect::<Vec<_>>());

        let dim_x = match (desc.dim_x, &product_dims) {
            (Some(d), Some(dims)) if d != dims.iter().sum::<usize>() => {
                return Err(Error::InvalidRing(format!(
                    "dimX = {d} contradicts the product structure (expected {})",
                    dims.iter().sum::<usize>()
                )))
            }
            (Some(d), _) => d,
            (None, Some(dims)) => dims.iter().sum(),
            (None, None) => {
                return Err(Error::InvalidRing(
                    "dimX is required for rings that are not products of projective spaces".into(),
                ))
            }
        };

        let components = match &desc.components {
            None => {
                let mut start = 0;
                desc.blocks
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = (start..start + b.count).collect();
                        start += b.count;
                        c
                    })
                    .collect()
            }
            Some(comps) => comps
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|v| {
                            names
                                .iter()
                                .position(|n| n == v)
                                .ok_or_else(|| Error::InvalidRing(format!("unknown variable `{v}` in components")))
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if components.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidRing("empty component of the irrelevant ideal".into()));
        }

        let functional = grading_functional(&degrees)
            .ok_or_else(|| Error::InvalidRing("the grading is not positive on all variables".into()))?;
        let weights = weights_from(&degrees, &functional);
        let order = MonomialOrder::grevlex(&weights);
        debug_assert!(n < MAX_VARS);
        Ok(Arc::new(CoxRing {
            blocks: desc.blocks.clone(),
            names,
            degrees,
            pic_rank: r,
            dim_x,
            components,
            weights,
            functional,
            polys: PolyRing::new(field, order),
            product_dims,
            seed: 0,
        }))
    }

    /// Replaces the seed used by probabilistic pre-passes (rank guesses).
    pub fn with_seed(self: &Arc<Self>, seed: u64) -> Arc<CoxRing> {
        Arc::new(CoxRing {
            blocks: self.blocks.clone(),
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            pic_rank: self.pic_rank,
            dim_x: self.dim_x,
            components: self.components.clone(),
            weights: self.weights.clone(),
            functional: self.functional.clone(),
            polys: self.polys.clone(),
            product_dims: self.product_dims.clone(),
            seed,
        })
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            p: self.field().modulus(),
            blocks: self.blocks.clone(),
            dim_x: Some(self.dim_x),
            components: Some(
                self.components
                    .iter()
                    .map(|c| c.iter().map(|&v| self.names[v].clone()).collect())
                    .collect(),
            ),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pic_rank(&self) -> usize {
        self.pic_rank
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn field(&self) -> &PrimeField {
        self.polys.field()
    }

    pub fn polys(&self) -> &PolyRing {
        &self.polys
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Positive integer weight of each variable; a linear functional of the
    /// multidegree that is positive on every variable.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// The factor dimensions when the ring is Cox(P^{n_1} x ... x P^{n_k}).
    pub fn product_dims(&self) -> Option<&[usize]> {
        self.product_dims.as_deref()
    }

    pub fn var_degree(&self, i: usize) -> &Multidegree {
        &self.degrees[i]
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Multidegree {
        let mut d = vec![0i32; self.pic_rank];
        for (i, deg) in self.degrees.iter().enumerate() {
            let e = m.exp(i) as i32;
            if e != 0 {
                for (a, b) in d.iter_mut().zip(&deg.0) {
                    *a += e * b;
                }
            }
        }
        Multidegree(d)
    }

    /// Weighted total degree attached to a multidegree, matching
    /// [`CoxRing::weights`] on variables.
    pub fn weight_of(&self, d: &Multidegree) -> i64 {
        self.functional
            .iter()
            .zip(&d.0)
            .map(|(a, b)| *a as i64 * *b as i64)
            .sum()
    }

    pub fn multidegree_of(&self, f: &Poly) -> Result<Multidegree> {
        let mut it = f.terms().iter();
        let (m0, _) = it.next().ok_or(Error::DegreeOfZero)?;
        let d = self.monomial_degree(m0);
        for (m, _) in it {
            let e = self.monomial_degree(m);
            if e != d {
                return Err(Error::NotHomogeneous(format!(
                    "`{}` mixes degrees {d} and {e}",
                    self.format(f)
                )));
            }
        }
        Ok(d)
    }

    pub fn is_homogeneous(&self, f: &Poly) -> bool {
        f.is_zero() || self.multidegree_of(f).is_ok()
    }

    pub fn irrelevant(&self) -> IrrelevantIdeal {
        IrrelevantIdeal {
            components: self.components.clone(),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        self.polys.parse(s, &self.names)
    }

    pub fn format(&self, f: &Poly) -> String {
        self.polys.format(f, &self.names)
    }

    pub fn var(&self, i: usize) -> Poly {
        self.polys.var(i)
    }

    pub fn var_by_name(&self, name: &str) -> Option<Poly> {
        self.names.iter().position(|n| n == name).map(|i| self.var(i))
    }
}

fn grading_functional(degrees: &[Multidegree]) -> Option<Vec<i32>> {
    let r = degrees.first()?.rank();
    let positive = |w: &[i32]| {
        degrees
            .iter()
            .all(|d| d.0.iter().zip(w).map(|(a, b)| a * b).sum::<i32>() > 0)
    };
    let ones = vec![1; r];
    if positive(&ones) {
        return Some(ones);
    }
    // small exhaustive search over functionals with entries in -3..=3
    let span = 7i64;
    let total = span.checked_pow(r as u32)?;
    if total > 1_000_000 {
        return None;
    }
    (0..total).find_map(|mut code| {
        let w: Vec<i32> = (0..r)
            .map(|_| {
                let c = (code % span) as i32 - 3;
                code /= span;
                c
            })
            .collect();
        positive(&w).then_some(w)
    })
}

fn weights_from(degrees: &[Multidegree], w: &[i32]) -> Vec<u32> {
    degrees
        .iter()
        .map(|d| d.0.iter().zip(w).map(|(a, b)| a * b).sum::<i32>() as u32)
        .collect()
}
