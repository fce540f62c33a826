//! Locally constant functions on `Z_p`, their Haar `L₂` inner product, and
//! distributions realized as finite cascade trees.

use std::collections::btree_map::{BTreeMap, Entry};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{check_prime, same_prime, words_of_len, Disk, PAdicPoint, Word};
use crate::scalar::{format_scalar, pow_p, real, Rational, Scalar};

/// A finite linear combination of disk indicators.
#[derive(Clone, Debug, PartialEq)]
pub struct LCFunction {
    p: u32,
    terms: BTreeMap<Word, Scalar>,
}

impl LCFunction {
    pub fn zero(p: u32) -> Self {
        LCFunction {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, c: Scalar) -> Self {
        LCFunction::zero(p).plus_term(Disk::whole(p), c)
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Disk, Scalar)>) -> Result<Self> {
        let mut f = LCFunction::zero(p);
        for (d, c) in terms {
            same_prime(p, d.p())?;
            f.add_term(d.center().clone(), c);
        }
        Ok(f)
    }

    fn add_term(&mut self, center: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(center) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn plus_term(mut self, d: Disk, c: Scalar) -> Self {
        self.add_term(d.center().clone(), c);
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (Disk, &Scalar)> {
        self.terms.iter().map(|(w, c)| (Disk::new(w.clone()), c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Deepest disk among the terms (0 for the zero function).
    pub fn max_depth(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &LCFunction) -> Result<LCFunction> {
        same_prime(self.p, other.p)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> LCFunction {
        let mut out = LCFunction::zero(self.p);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn evaluate(&self, x: &PAdicPoint) -> Result<Scalar> {
        same_prime(self.p, x.p())?;
        Ok(self
            .terms
            .iter()
            .filter(|(w, _)| x.prefix(w.len()) == **w)
            .fold(Scalar::zero(), |acc, (_, c)| acc + c))
    }

    /// Rewrites the function on pairwise disjoint disks of depth exactly `level`.
    pub fn refine(&self, level: usize) -> Result<LCFunction> {
        let required = self.max_depth();
        if level < required {
            return Err(Error::RefineLevel { level, required });
        }
        let mut out = LCFunction::zero(self.p);
        for (w, c) in &self.terms {
            let mut cells = vec![w.clone()];
            for _ in w.len()..level {
                cells = cells.iter().flat_map(|cell| cell.children()).collect();
            }
            for cell in cells {
                out.add_term(cell, c.clone());
            }
        }
        Ok(out)
    }

    /// Pointwise equality, decided on a common refinement.
    pub fn same_function(&self, other: &LCFunction) -> Result<bool> {
        same_prime(self.p, other.p)?;
        let level = self.max_depth().max(other.max_depth());
        Ok(self.refine(level)? == other.refine(level)?)
    }
}

/// `1` on the disk, `0` elsewhere.
pub fn indicator(d: &Disk) -> LCFunction {
    LCFunction::zero(d.p()).plus_term(d.clone(), real(Rational::from_integer(1.into())))
}

/// `θ / ‖θ‖² = p^{|I|} θ`.
pub fn normalized_indicator(d: &Disk) -> LCFunction {
    LCFunction::zero(d.p()).plus_term(d.clone(), real(pow_p(d.p(), d.depth() as i64)))
}

/// `∫_{Z_p} f · conj(g) dx` with respect to the Haar measure.
///
/// Expands both functions bilinearly: two indicators integrate to the measure
/// of their intersection, which is the smaller disk or nothing.
pub fn l2_inner(f: &LCFunction, g: &LCFunction) -> Result<Scalar> {
    same_prime(f.p, g.p)?;
    let mut acc = Scalar::zero();
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let smaller = if a.is_prefix_of(b) {
                b
            } else if b.is_prefix_of(a) {
                a
            } else {
                continue;
            };
            let mu = pow_p(f.p, -(smaller.len() as i64));
            acc += x * y.conj() * real(mu);
        }
    }
    Ok(acc)
}

/// Assignment `I ↦ Ψ_I` on every word of length `≤ depth`.
///
/// Trees built through [`CascadeTree::new`], the JSON loader or the
/// generators satisfy `Ψ_I = Σ_i Ψ_{Ii}` at every internal node.
/// [`CascadeTree::with_value_unchecked`] can break that on purpose.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadeTree {
    p: u32,
    depth: usize,
    values: BTreeMap<Word, Scalar>,
}

impl CascadeTree {
    /// Validates completeness and the cascade identity.
    pub fn new(p: u32, depth: usize, values: BTreeMap<Word, Scalar>) -> Result<Self> {
        let tree = CascadeTree::complete(p, depth, values)?;
        tree.validate()?;
        Ok(tree)
    }

    fn complete(p: u32, depth: usize, values: BTreeMap<Word, Scalar>) -> Result<Self> {
        check_prime(p)?;
        for w in values.keys() {
            same_prime(p, w.p())?;
            if w.len() > depth {
                return Err(Error::Resolution {
                    requested: w.len(),
                    depth,
                });
            }
        }
        let expected: usize = (0..=depth).map(|k| (p as usize).pow(k as u32)).sum();
        if values.len() != expected {
            let missing = (0..=depth)
                .flat_map(|k| words_of_len(p, k))
                .find(|w| !values.contains_key(w))
                .map(|w| w.to_string())
                .unwrap_or_default();
            return Err(Error::MissingNode(missing));
        }
        Ok(CascadeTree { p, depth, values })
    }

    /// `Ψ_I = root · p^{−|I|}`, the Haar measure scaled by `root`.
    pub fn uniform(p: u32, depth: usize, root: Scalar) -> Result<Self> {
        check_prime(p)?;
        let mut values = BTreeMap::new();
        for k in 0..=depth {
            let share = &root * real(pow_p(p, -(k as i64)));
            for w in words_of_len(p, k) {
                values.insert(w, share.clone());
            }
        }
        Ok(CascadeTree { p, depth, values })
    }

    /// Builds the unique tree whose depth-`depth` values are `leaves`
    /// (in lexicographic word order) by summing upwards.
    pub fn from_leaves(p: u32, depth: usize, leaves: Vec<Scalar>) -> Result<Self> {
        check_prime(p)?;
        let words = words_of_len(p, depth);
        if leaves.len() != words.len() {
            return Err(Error::Invalid(format!(
                "expected {} leaf values at depth {depth}, got {}",
                words.len(),
                leaves.len()
            )));
        }
        let mut values: BTreeMap<Word, Scalar> = words.into_iter().zip(leaves).collect();
        for k in (0..depth).rev() {
            for w in words_of_len(p, k) {
                let sum = w
                    .children()
                    .map(|c| values[&c].clone())
                    .fold(Scalar::zero(), |acc, x| acc + x);
                values.insert(w, sum);
            }
        }
        Ok(CascadeTree { p, depth, values })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn value(&self, word: &Word) -> Result<&Scalar> {
        same_prime(self.p, word.p())?;
        if word.len() > self.depth {
            return Err(Error::Resolution {
                requested: word.len(),
                depth: self.depth,
            });
        }
        self.values
            .get(word)
            .ok_or_else(|| Error::MissingNode(word.to_string()))
    }

    pub fn root(&self) -> &Scalar {
        &self.values[&Word::empty(self.p)]
    }

    /// All `(word, Ψ_word)` pairs in shortlex order.
    pub fn values(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.values.iter()
    }

    /// Copy with one node overwritten and no cascade check.
    pub fn with_value_unchecked(&self, word: &Word, value: Scalar) -> Result<Self> {
        self.value(word)?;
        let mut out = self.clone();
        out.values.insert(word.clone(), value);
        Ok(out)
    }

    /// `Σ_i Ψ_{Ii} − Ψ_I` at an internal node.
    pub fn violation_at(&self, word: &Word) -> Result<Scalar> {
        if word.len() >= self.depth {
            return Err(Error::Resolution {
                requested: word.len() + 1,
                depth: self.depth,
            });
        }
        let sum = word
            .children()
            .map(|c| self.values[&c].clone())
            .fold(Scalar::zero(), |acc, x| acc + x);
        Ok(sum - self.value(word)?)
    }

    /// First internal node (shortlex) where the children do not sum to the parent.
    pub fn validate(&self) -> Result<()> {
        for (w, v) in &self.values {
            if w.len() >= self.depth {
                break;
            }
            let sum = w
                .children()
                .map(|c| self.values[&c].clone())
                .fold(Scalar::zero(), |acc, x| acc + x);
            if &sum != v {
                return Err(Error::CascadeViolation {
                    word: w.to_string(),
                    expected: format_scalar(v),
                    got: format_scalar(&sum),
                });
            }
        }
        Ok(())
    }

    /// `Σ_{|J| = j} Ψ_{IJ}`.
    pub fn level_sum(&self, word: &Word, j: usize) -> Result<Scalar> {
        if word.len() + j > self.depth {
            return Err(Error::Resolution {
                requested: word.len() + j,
                depth: self.depth,
            });
        }
        let mut acc = Scalar::zero();
        for tail in words_of_len(self.p, j) {
            acc += &self.values[&word.concat(&tail)?];
        }
        Ok(acc)
    }

    /// Restriction to words of length `≤ depth`.
    pub fn truncate(&self, depth: usize) -> CascadeTree {
        let depth = depth.min(self.depth);
        CascadeTree {
            p: self.p,
            depth,
            values: self
                .values
                .iter()
                .filter(|(w, _)| w.len() <= depth)
                .map(|(w, v)| (w.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let values = self
            .values
            .iter()
            .map(|(w, v)| CascadeEntry {
                word: w.to_string(),
                re_num: JsonInt::from(v.re.numer()),
                re_den: JsonInt::from(v.re.denom()),
                im_num: JsonInt::from(v.im.numer()),
                im_den: JsonInt::from(v.im.denom()),
            })
            .collect();
        let file = CascadeFile {
            p: self.p,
            depth: self.depth,
            values,
        };
        serde_json::to_string_pretty(&file).expect("cascade tree serializes")
    }

    /// Parses and re-validates a tree; any cascade violation is rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CascadeFile =
            serde_json::from_str(text).map_err(|e| Error::parse("cascade", e.to_string()))?;
        check_prime(file.p)?;
        let mut values = BTreeMap::new();
        for entry in file.values {
            let word = Word::parse(file.p, &entry.word)?;
            let part = |num: JsonInt, den: JsonInt, field: &str| -> Result<Rational> {
                let den = den.to_bigint(field)?;
                if den.is_zero() {
                    return Err(Error::parse(field, format!("zero denominator at \"{word}\"")));
                }
                Ok(Rational::new(num.to_bigint(field)?, den))
            };
            let value = Scalar::new(
                part(entry.re_num, entry.re_den, "re_den")?,
                part(entry.im_num, entry.im_den, "im_den")?,
            );
            if values.insert(word.clone(), value).is_some() {
                return Err(Error::parse("values", format!("duplicate word \"{word}\"")));
            }
        }
        CascadeTree::new(file.p, file.depth, values)
    }
}

#[derive(Serialize, Deserialize)]
struct CascadeFile {
    p: u32,
    depth: usize,
    values: Vec<CascadeEntry>,
}

#[derive(Serialize, Deserialize)]
struct CascadeEntry {
    word: String,
    re_num: JsonInt,
    re_den: JsonInt,
    im_num: JsonInt,
    im_den: JsonInt,
}

/// Integers that fit in `i64` are written as JSON numbers, others as strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }

    fn to_bigint(&self, field: &str) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s
                .parse()
                .map_err(|_| Error::parse(field, format!("\"{s}\" is not an integer"))),
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=9);
    Rational::new(num.into(), den.into())
}

/// Seeded random cascade with real values: each node's children are drawn
/// freely except the last, which absorbs the remainder.
pub fn random_cascade(p: u32, depth: usize, seed: u64) -> Result<CascadeTree> {
    random_cascade_with(p, depth, seed, false)
}

/// As [`random_cascade`], with independent random imaginary parts.
pub fn random_complex_cascade(p: u32, depth: usize, seed: u64) -> Result<CascadeTree> {
    random_cascade_with(p, depth, seed, true)
}

fn random_cascade_with(p: u32, depth: usize, seed: u64, complex: bool) -> Result<CascadeTree> {
    check_prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let re = random_rational(rng);
        let im = if complex {
            random_rational(rng)
        } else {
            Rational::zero()
        };
        Scalar::new(re, im)
    };
    let mut values = BTreeMap::new();
    let root = Word::empty(p);
    values.insert(root.clone(), draw(&mut rng));
    let mut level = vec![root];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * p as usize);
        for parent in &level {
            let mut remainder = values[parent].clone();
            for (i, child) in parent.children().enumerate() {
                let v = if i + 1 == p as usize {
                    remainder.clone()
                } else {
                    let v = draw(&mut rng);
                    remainder -= &v;
                    v
                };
                values.insert(child.clone(), v);
                next.push(child);
            }
        }
        level = next;
    }
    Ok(CascadeTree { p, depth, values })
}

/// A linear functional on locally constant functions.
#[derive(Clone, Debug, PartialEq)]
pub enum Distribution {
    Cascade(CascadeTree),
    Delta(PAdicPoint),
    Haar { p: u32 },
}

impl Distribution {
    pub fn p(&self) -> u32 {
        match self {
            Distribution::Cascade(t) => t.p(),
            Distribution::Delta(x) => x.p(),
            Distribution::Haar { p } => *p,
        }
    }

    /// Value on the indicator of one disk.
    pub fn on_disk(&self, d: &Disk) -> Result<Scalar> {
        same_prime(self.p(), d.p())?;
        Ok(match self {
            Distribution::Cascade(t) => t.value(d.center())?.clone(),
            Distribution::Delta(x) => {
                if d.contains_point(x) {
                    crate::scalar::one()
                } else {
                    Scalar::zero()
                }
            }
            Distribution::Haar { .. } => real(d.measure()),
        })
    }
}

/// Bilinear action `⟨d, f⟩`; no conjugation is applied to `f`.
pub fn act(d: &Distribution, f: &LCFunction) -> Result<Scalar> {
    same_prime(d.p(), f.p())?;
    let mut acc = Scalar::zero();
    for (disk, c) in f.terms() {
        acc += c * d.on_disk(&disk)?;
    }
    Ok(acc)
}
