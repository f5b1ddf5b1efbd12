//! The mod-p Steenrod algebra in the admissible basis.
//!
//! At p = 2 a monomial is a word `Sq^{i_1} ... Sq^{i_k}` and it is admissible
//! when `i_j >= 2 i_{j+1}`. At an odd prime a monomial is a word
//! `b^{e_0} P^{s_1} b^{e_1} ... P^{s_k} b^{e_k}` in the Bockstein and the
//! power operations, admissible when `s_j >= p s_{j+1} + e_j`; the degrees
//! are `|b| = 1` and `|P^s| = 2s(p-1)`.
//!
//! Products are straightened with the Adem relations, applied recursively to
//! the leftmost inadmissible pair. The recursion bottoms out because every
//! recursive call strictly lowers the degree of the right-hand factor. The
//! straightening of (generator x admissible monomial) is memoized per prime;
//! the table is filled lazily and concurrent fills are idempotent, so it
//! behaves as if computed once.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use dashmap::DashMap;

use crate::prime::Prime;

/// A multiplicative generator of the algebra: `Sq^i` at p = 2, the Bockstein
/// or a power operation `P^s` at odd primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Sq(u32),
    Bockstein,
    Power(u32),
}

impl Generator {
    pub fn degree(self, p: Prime) -> u32 {
        match self {
            Generator::Sq(i) => i,
            Generator::Bockstein => 1,
            Generator::Power(s) => 2 * s * (p.get() - 1),
        }
    }

    pub fn is_valid_for(self, p: Prime) -> bool {
        match self {
            Generator::Sq(i) => p.is_two() && i >= 1,
            Generator::Bockstein => !p.is_two(),
            Generator::Power(s) => !p.is_two() && s >= 1,
        }
    }

    /// All generators of degree `<= max_degree`, ascending in degree.
    pub fn up_to_degree(p: Prime, max_degree: u32) -> Vec<Generator> {
        let mut gens = Vec::new();
        if p.is_two() {
            for i in 1..=max_degree {
                gens.push(Generator::Sq(i));
            }
        } else {
            if max_degree >= 1 {
                gens.push(Generator::Bockstein);
            }
            let mut s = 1;
            while 2 * s * (p.get() - 1) <= max_degree {
                gens.push(Generator::Power(s));
                s += 1;
            }
        }
        gens
    }

    fn key(self) -> u32 {
        match self {
            Generator::Sq(i) => i,
            Generator::Bockstein => 0,
            Generator::Power(s) => s,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sq(i) => write!(f, "Sq^{i}"),
            Generator::Bockstein => write!(f, "β"),
            Generator::Power(s) => write!(f, "P^{s}"),
        }
    }
}

/// An admissible monomial, stored as its word of generators. The empty word
/// is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleMonomial {
    tokens: Vec<Generator>,
}

impl AdmissibleMonomial {
    pub fn unit() -> Self {
        AdmissibleMonomial { tokens: Vec::new() }
    }

    /// Builds a monomial after checking admissibility for the given prime.
    pub fn new(p: Prime, tokens: Vec<Generator>) -> Option<Self> {
        let m = AdmissibleMonomial { tokens };
        if m.is_admissible(p) {
            Some(m)
        } else {
            None
        }
    }

    fn from_tokens_unchecked(tokens: Vec<Generator>) -> Self {
        AdmissibleMonomial { tokens }
    }

    pub fn tokens(&self) -> &[Generator] {
        &self.tokens
    }

    pub fn is_unit(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn degree(&self, p: Prime) -> u32 {
        self.tokens.iter().map(|g| g.degree(p)).sum()
    }

    pub fn is_admissible(&self, p: Prime) -> bool {
        if self.tokens.iter().any(|g| !g.is_valid_for(p)) {
            return false;
        }
        if p.is_two() {
            self.tokens.windows(2).all(|w| match (w[0], w[1]) {
                (Generator::Sq(a), Generator::Sq(b)) => a >= 2 * b,
                _ => false,
            })
        } else {
            // No two adjacent Bocksteins, and s >= p s' + e across each
            // `P^s b^e P^s'` stretch.
            let t = &self.tokens;
            for i in 0..t.len() {
                if let Generator::Bockstein = t[i] {
                    if i + 1 < t.len() && t[i + 1] == Generator::Bockstein {
                        return false;
                    }
                }
                if let Generator::Power(s) = t[i] {
                    let (eps, next) = match t.get(i + 1) {
                        Some(Generator::Bockstein) => (1, t.get(i + 2)),
                        other => (0, other),
                    };
                    if let Some(Generator::Power(s2)) = next {
                        if s < p.get() * s2 + eps {
                            return false;
                        }
                    }
                }
            }
            true
        }
    }

    /// The exponent sequence used for the canonical (lexicographic) order:
    /// `(i_1, ..., i_k)` at p = 2 and `(e_0, s_1, e_1, ..., s_k, e_k)` at odd
    /// primes.
    pub fn exponent_sequence(&self) -> Vec<u32> {
        if self.tokens.iter().all(|g| matches!(g, Generator::Sq(_))) && !self.tokens.is_empty() {
            return self
                .tokens
                .iter()
                .map(|g| match g {
                    Generator::Sq(i) => *i,
                    _ => unreachable!(),
                })
                .collect();
        }
        if self.tokens.is_empty() {
            return Vec::new();
        }
        let mut seq = Vec::new();
        let mut iter = self.tokens.iter().peekable();
        let leading_bockstein = matches!(iter.peek(), Some(Generator::Bockstein));
        seq.push(u32::from(leading_bockstein));
        if leading_bockstein {
            iter.next();
        }
        while let Some(g) = iter.next() {
            match g {
                Generator::Power(s) => {
                    seq.push(*s);
                    let eps = matches!(iter.peek(), Some(Generator::Bockstein));
                    seq.push(u32::from(eps));
                    if eps {
                        iter.next();
                    }
                }
                _ => unreachable!("admissible odd-prime words alternate P and β"),
            }
        }
        seq
    }
}

impl PartialOrd for AdmissibleMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponent_sequence().cmp(&other.exponent_sequence())
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A homogeneous element: a linear combination of admissible monomials of a
/// single degree, with nonzero coefficients in `F_p`, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteenrodElement {
    p: Prime,
    degree: u32,
    terms: Vec<(AdmissibleMonomial, u32)>,
}

impl SteenrodElement {
    pub fn zero(p: Prime, degree: u32) -> Self {
        SteenrodElement { p, degree, terms: Vec::new() }
    }

    pub fn unit(p: Prime) -> Self {
        SteenrodElement {
            p,
            degree: 0,
            terms: vec![(AdmissibleMonomial::unit(), 1)],
        }
    }

    pub fn single(p: Prime, mono: AdmissibleMonomial, coef: u32) -> Self {
        let degree = mono.degree(p);
        let coef = coef % p.get();
        let terms = if coef == 0 { Vec::new() } else { vec![(mono, coef)] };
        SteenrodElement { p, degree, terms }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(AdmissibleMonomial, u32)] {
        &self.terms
    }

    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        assert_eq!(self.p, other.p);
        assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "cannot add elements of degrees {} and {}",
            self.degree,
            other.degree
        );
        let mut acc: BTreeMap<AdmissibleMonomial, u32> = BTreeMap::new();
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            let e = acc.entry(m.clone()).or_insert(0);
            *e = self.p.add(*e, *c);
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        SteenrodElement {
            p: self.p,
            degree: if self.is_zero() { other.degree } else { self.degree },
            terms,
        }
    }

    pub fn scale(&self, c: u32) -> SteenrodElement {
        let c = c % self.p.get();
        if c == 0 {
            return SteenrodElement::zero(self.p, self.degree);
        }
        SteenrodElement {
            p: self.p,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.p.mul(*a, c)))
                .collect(),
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 || m.is_unit() {
                write!(f, "{c}")?;
                if !m.is_unit() {
                    write!(f, " ")?;
                }
            }
            if !m.is_unit() {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// An element in the interned per-degree basis: sorted `(index, coefficient)`
/// pairs. The ambient degree is carried by context.
pub(crate) type IndexedElement = Vec<(u32, u32)>;

struct DegreeBasis {
    monomials: Vec<AdmissibleMonomial>,
    index: HashMap<AdmissibleMonomial, u32>,
}

impl DegreeBasis {
    fn build(p: Prime, d: u32) -> Self {
        let monomials = enumerate_admissible(p, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        DegreeBasis { monomials, index }
    }
}

/// The algebra at a fixed prime: interned admissible bases per degree and the
/// memoized straightening table for products (generator x monomial).
pub struct SteenrodAlgebra {
    p: Prime,
    levels: RwLock<Vec<Arc<DegreeBasis>>>,
    gen_mult: DashMap<(u32, u32, u32), Arc<IndexedElement>>,
}

impl SteenrodAlgebra {
    fn new(p: Prime) -> Self {
        SteenrodAlgebra {
            p,
            levels: RwLock::new(Vec::new()),
            gen_mult: DashMap::new(),
        }
    }

    /// The shared algebra instance for a prime. Sharing keeps one
    /// straightening table per prime for the whole process.
    pub fn for_prime(p: Prime) -> Arc<SteenrodAlgebra> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<SteenrodAlgebra>>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = registry.lock().unwrap();
        map.entry(p.get())
            .or_insert_with(|| Arc::new(SteenrodAlgebra::new(p)))
            .clone()
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    fn level(&self, d: u32) -> Arc<DegreeBasis> {
        {
            let levels = self.levels.read().unwrap();
            if let Some(l) = levels.get(d as usize) {
                return l.clone();
            }
        }
        let mut levels = self.levels.write().unwrap();
        while levels.len() <= d as usize {
            let next = levels.len() as u32;
            levels.push(Arc::new(DegreeBasis::build(self.p, next)));
        }
        levels[d as usize].clone()
    }

    /// The admissible basis of the degree-d component, canonically ordered.
    pub fn basis(&self, d: u32) -> Vec<AdmissibleMonomial> {
        self.level(d).monomials.clone()
    }

    pub fn dimension(&self, d: u32) -> usize {
        self.level(d).monomials.len()
    }

    pub fn monomial_at(&self, d: u32, idx: u32) -> AdmissibleMonomial {
        self.level(d).monomials[idx as usize].clone()
    }

    pub(crate) fn index_of(&self, m: &AdmissibleMonomial, d: u32) -> u32 {
        *self
            .level(d)
            .index
            .get(m)
            .unwrap_or_else(|| panic!("monomial {m} not admissible in degree {d}"))
    }

    /// Left multiplication by a generator of a basis monomial, straightened
    /// into the admissible basis of the target degree. Memoized.
    pub(crate) fn gen_mult(&self, gen: Generator, d: u32, idx: u32) -> Arc<IndexedElement> {
        debug_assert!(gen.is_valid_for(self.p));
        let key = (gen.key(), d, idx);
        if let Some(v) = self.gen_mult.get(&key) {
            return v.clone();
        }
        let mono = self.monomial_at(d, idx);
        let value = Arc::new(self.straighten(gen, &mono, d));
        self.gen_mult.insert(key, value.clone());
        value
    }

    /// Left multiplication of an indexed element by a generator.
    pub(crate) fn gen_mult_elem(
        &self,
        gen: Generator,
        d: u32,
        elem: &IndexedElement,
    ) -> IndexedElement {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for &(idx, c) in elem {
            for &(idx2, c2) in self.gen_mult(gen, d, idx).iter() {
                let e = acc.entry(idx2).or_insert(0);
                *e = self.p.add(*e, self.p.mul(c, c2));
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    fn straighten(&self, gen: Generator, mono: &AdmissibleMonomial, d: u32) -> IndexedElement {
        let p = self.p;
        let target = d + gen.degree(p);
        let prepend = |tokens: &[Generator]| -> IndexedElement {
            let mut t = Vec::with_capacity(tokens.len() + 1);
            t.push(gen);
            t.extend_from_slice(tokens);
            let m = AdmissibleMonomial::from_tokens_unchecked(t);
            debug_assert!(m.is_admissible(p));
            vec![(self.index_of(&m, target), 1)]
        };
        match gen {
            Generator::Sq(a) => {
                match mono.tokens.first() {
                    None => prepend(&[]),
                    Some(&Generator::Sq(b)) if a >= 2 * b => prepend(&mono.tokens),
                    Some(&Generator::Sq(b)) => {
                        // Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c
                        let rest = AdmissibleMonomial::from_tokens_unchecked(
                            mono.tokens[1..].to_vec(),
                        );
                        let rest_deg = d - b;
                        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
                        for c in 0..=a / 2 {
                            if p.binomial_signed(i64::from(b) - i64::from(c) - 1, i64::from(a) - 2 * i64::from(c)) == 0 {
                                continue;
                            }
                            let z: IndexedElement = if c == 0 {
                                vec![(self.index_of(&rest, rest_deg), 1)]
                            } else {
                                let idx = self.index_of(&rest, rest_deg);
                                self.gen_mult(Generator::Sq(c), rest_deg, idx).as_ref().clone()
                            };
                            let y = self.gen_mult_elem(Generator::Sq(a + b - c), rest_deg + c, &z);
                            for (i, v) in y {
                                let e = acc.entry(i).or_insert(0);
                                *e = p.add(*e, v);
                            }
                        }
                        acc.into_iter().filter(|(_, c)| *c != 0).collect()
                    }
                    Some(_) => unreachable!("Sq against odd-prime word"),
                }
            }
            Generator::Bockstein => match mono.tokens.first() {
                Some(Generator::Bockstein) => Vec::new(),
                _ => prepend(&mono.tokens),
            },
            Generator::Power(a) => {
                let tokens = &mono.tokens;
                let (eps, b, rest_start) = match (tokens.first(), tokens.get(1)) {
                    (None, _) => return prepend(&[]),
                    (Some(Generator::Bockstein), None) => return prepend(tokens),
                    (Some(Generator::Bockstein), Some(&Generator::Power(b))) => (1u32, b, 2usize),
                    (Some(&Generator::Power(b)), _) => (0u32, b, 1usize),
                    _ => unreachable!("odd-prime word starts with β or P"),
                };
                if a >= p.get() * b + eps {
                    return prepend(tokens);
                }
                let rest = AdmissibleMonomial::from_tokens_unchecked(tokens[rest_start..].to_vec());
                let rest_deg = d - eps - 2 * b * (p.get() - 1);
                let rest_idx = self.index_of(&rest, rest_deg);
                let pm1 = i64::from(p.get() - 1);
                let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
                let add_all = |elem: IndexedElement, coef: u32, acc: &mut BTreeMap<u32, u32>| {
                    for (i, v) in elem {
                        let e = acc.entry(i).or_insert(0);
                        *e = p.add(*e, p.mul(v, coef));
                    }
                };
                for t in 0..=a / p.get() {
                    let sign = p.sign(u64::from(a) + u64::from(t));
                    let z: IndexedElement = if t == 0 {
                        vec![(rest_idx, 1)]
                    } else {
                        self.gen_mult(Generator::Power(t), rest_deg, rest_idx).as_ref().clone()
                    };
                    let z_deg = rest_deg + 2 * t * (p.get() - 1);
                    if eps == 0 {
                        // P^a P^b = sum_t (-1)^{a+t} C((p-1)(b-t)-1, a-pt) P^{a+b-t} P^t
                        let c1 = p.binomial_signed(
                            pm1 * (i64::from(b) - i64::from(t)) - 1,
                            i64::from(a) - i64::from(p.get()) * i64::from(t),
                        );
                        if c1 != 0 {
                            let y = self.gen_mult_elem(Generator::Power(a + b - t), z_deg, &z);
                            add_all(y, p.mul(sign, c1), &mut acc);
                        }
                    } else {
                        // P^a β P^b = sum_t (-1)^{a+t} C((p-1)(b-t), a-pt) β P^{a+b-t} P^t
                        //           - sum_t (-1)^{a+t} C((p-1)(b-t)-1, a-pt-1) P^{a+b-t} β P^t
                        let c1 = p.binomial_signed(
                            pm1 * (i64::from(b) - i64::from(t)),
                            i64::from(a) - i64::from(p.get()) * i64::from(t),
                        );
                        if c1 != 0 {
                            let y = self.gen_mult_elem(Generator::Power(a + b - t), z_deg, &z);
                            let w = self.gen_mult_elem(Generator::Bockstein, z_deg + 2 * (a + b - t) * (p.get() - 1), &y);
                            add_all(w, p.mul(sign, c1), &mut acc);
                        }
                        let c2 = p.binomial_signed(
                            pm1 * (i64::from(b) - i64::from(t)) - 1,
                            i64::from(a) - i64::from(p.get()) * i64::from(t) - 1,
                        );
                        if c2 != 0 {
                            let w = self.gen_mult_elem(Generator::Bockstein, z_deg, &z);
                            let y = self.gen_mult_elem(Generator::Power(a + b - t), z_deg + 1, &w);
                            add_all(y, p.mul(p.neg(sign), c2), &mut acc);
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| *c != 0).collect()
            }
        }
    }

    pub(crate) fn indexed_to_element(&self, d: u32, elem: &IndexedElement) -> SteenrodElement {
        let level = self.level(d);
        SteenrodElement {
            p: self.p,
            degree: d,
            terms: elem
                .iter()
                .map(|&(i, c)| (level.monomials[i as usize].clone(), c))
                .collect(),
        }
    }

    pub(crate) fn element_to_indexed(&self, e: &SteenrodElement) -> IndexedElement {
        let mut out: IndexedElement = e
            .terms
            .iter()
            .map(|(m, c)| (self.index_of(m, e.degree), *c))
            .collect();
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }

    /// Product of two admissible monomials, straightened.
    pub fn monomial_product(
        &self,
        a: &AdmissibleMonomial,
        b: &AdmissibleMonomial,
    ) -> SteenrodElement {
        let db = b.degree(self.p);
        let mut elem: IndexedElement = vec![(self.index_of(b, db), 1)];
        let mut deg = db;
        for gen in a.tokens.iter().rev() {
            elem = self.gen_mult_elem(*gen, deg, &elem);
            deg += gen.degree(self.p);
        }
        self.indexed_to_element(deg, &elem)
    }

    /// Bilinear product of two homogeneous elements.
    pub fn product(&self, a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
        assert_eq!(a.p, self.p);
        assert_eq!(b.p, self.p);
        let mut acc = SteenrodElement::zero(self.p, a.degree + b.degree);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = self.monomial_product(ma, mb).scale(self.p.mul(*ca, *cb));
                acc = acc.add(&prod);
            }
        }
        acc
    }
}

/// Straightens an arbitrary word of generators into the admissible basis.
pub fn adem_normalize(p: Prime, word: &[Generator]) -> SteenrodElement {
    for g in word {
        assert!(g.is_valid_for(p), "generator {g} is not valid at the prime {p}");
    }
    let alg = SteenrodAlgebra::for_prime(p);
    let mut elem: IndexedElement = vec![(0, 1)]; // the unit spans degree 0
    let mut deg = 0;
    for gen in word.iter().rev() {
        elem = alg.gen_mult_elem(*gen, deg, &elem);
        deg += gen.degree(p);
    }
    alg.indexed_to_element(deg, &elem)
}

/// The admissible basis of the degree-d component, canonically ordered.
pub fn basis_in_degree(p: Prime, d: u32) -> Vec<AdmissibleMonomial> {
    SteenrodAlgebra::for_prime(p).basis(d)
}

/// The F_p-dimension of the degree-d component.
pub fn algebra_dimension(p: Prime, d: u32) -> usize {
    SteenrodAlgebra::for_prime(p).dimension(d)
}

fn enumerate_admissible(p: Prime, d: u32) -> Vec<AdmissibleMonomial> {
    let mut out: Vec<AdmissibleMonomial> = Vec::new();
    if p.is_two() {
        // Sequences summing to d whose leading entry is capped; the cap
        // propagates as floor(i/2) to enforce i_j >= 2 i_{j+1}.
        fn rec(d: u32, cap: u32, prefix: &mut Vec<Generator>, out: &mut Vec<AdmissibleMonomial>) {
            if d == 0 {
                out.push(AdmissibleMonomial::from_tokens_unchecked(prefix.clone()));
                return;
            }
            for i in 1..=cap.min(d) {
                prefix.push(Generator::Sq(i));
                rec(d - i, i / 2, prefix, out);
                prefix.pop();
            }
        }
        rec(d, d, &mut Vec::new(), &mut out);
    } else {
        // Optional leading Bockstein, then a chain of P^s b^e blocks with
        // s >= p s' + e linking consecutive blocks.
        fn chain(
            p: Prime,
            d: u32,
            cap: u32,
            prefix: &mut Vec<Generator>,
            out: &mut Vec<AdmissibleMonomial>,
        ) {
            if d == 0 {
                out.push(AdmissibleMonomial::from_tokens_unchecked(prefix.clone()));
                return;
            }
            let unit = 2 * (p.get() - 1);
            for s in 1..=(d / unit).min(cap) {
                for eps in 0..=1u32 {
                    let used = s * unit + eps;
                    if used > d {
                        continue;
                    }
                    prefix.push(Generator::Power(s));
                    if eps == 1 {
                        prefix.push(Generator::Bockstein);
                    }
                    chain(p, d - used, (s - eps) / p.get(), prefix, out);
                    if eps == 1 {
                        prefix.pop();
                    }
                    prefix.pop();
                }
            }
        }
        chain(p, d, u32::MAX, &mut Vec::new(), &mut out);
        if d >= 1 {
            let mut prefix = vec![Generator::Bockstein];
            chain(p, d - 1, u32::MAX, &mut prefix, &mut out);
        }
    }
    out.sort();
    debug_assert!(out.iter().all(|m| m.is_admissible(p) && m.degree(p) == d));
    out
}
