//! PBW-symbolic enveloping algebra of the Euclidean Lie algebra `iso(m)`.
//!
//! Generators are translations `P_a` (a = 0..m-1) and rotations `M_{ab}`
//! (a < b), with brackets
//!
//! ```text
//! [P_a, P_b] = 0
//! [M_{ab}, P_c] = i (delta_{bc} P_a - delta_{ac} P_b)
//! [M_{ab}, M_{cd}] = i (delta_{ad} M_{bc} + delta_{bc} M_{ad}
//!                        - delta_{ac} M_{bd} - delta_{bd} M_{ac})
//! ```
//!
//! Every element is stored over PBW-ordered words (rotation part first, then
//! the commuting translation part); multiplying any two words re-normalizes
//! through the brackets, which strictly lowers either the degree of the
//! subproblem or leaves a directly appendable generator, so the rewriting
//! terminates.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::HopfError;
use crate::scalar::Scalar;

/// A generator of `iso(m)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    /// Translation `P_a`.
    P(usize),
    /// Rotation `M_{ab}` with `a < b`.
    M(usize, usize),
}

/// Index of the ordered pair `(a, b)`, `a < b`, in lex order.
fn pair_index(m: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < m);
    // pairs (0,1), (0,2), ..., (0,m-1), (1,2), ...
    a * m - a * (a + 1) / 2 + (b - a - 1)
}

fn pair_from_index(m: usize, mut idx: usize) -> (usize, usize) {
    for a in 0..m {
        let row = m - a - 1;
        if idx < row {
            return (a, a + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range");
}

pub fn num_pairs(m: usize) -> usize {
    m * (m - 1) / 2
}

/// A PBW-ordered word: exponents of the rotation generators (by pair index)
/// followed by exponents of the translations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub m_exps: Vec<u32>,
    pub p_exps: Vec<u32>,
}

impl Word {
    pub fn empty(m: usize) -> Self {
        Word {
            m_exps: vec![0; num_pairs(m)],
            p_exps: vec![0; m],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.m_exps.iter().all(|&e| e == 0) && self.p_exps.iter().all(|&e| e == 0)
    }

    pub fn m_degree(&self) -> u32 {
        self.m_exps.iter().sum()
    }

    pub fn p_degree(&self) -> u32 {
        self.p_exps.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.m_degree() + self.p_degree()
    }

    /// True when the word uses only translation generators.
    pub fn is_translation(&self) -> bool {
        self.m_exps.iter().all(|&e| e == 0)
    }

    /// Expands the word into its generator sequence in PBW order.
    pub fn generators(&self, m: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for (idx, &e) in self.m_exps.iter().enumerate() {
            let (a, b) = pair_from_index(m, idx);
            for _ in 0..e {
                out.push(Generator::M(a, b));
            }
        }
        for (a, &e) in self.p_exps.iter().enumerate() {
            for _ in 0..e {
                out.push(Generator::P(a));
            }
        }
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let m = self.p_exps.len();
        let mut parts = Vec::new();
        for (idx, &e) in self.m_exps.iter().enumerate() {
            if e > 0 {
                let (a, b) = pair_from_index(m, idx);
                let base = format!("M{}{}", a + 1, b + 1);
                parts.push(if e == 1 { base } else { format!("{}^{}", base, e) });
            }
        }
        for (a, &e) in self.p_exps.iter().enumerate() {
            if e > 0 {
                let base = format!("P{}", a + 1);
                parts.push(if e == 1 { base } else { format!("{}^{}", base, e) });
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// An element of the enveloping algebra over exact complex rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct UEAElement {
    dim: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl UEAElement {
    pub fn zero(dim: usize) -> Self {
        UEAElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(dim: usize) -> Self {
        let mut e = UEAElement::zero(dim);
        e.add_term(Word::empty(dim), Scalar::one());
        e
    }

    pub fn generator(dim: usize, g: Generator) -> Result<Self, HopfError> {
        let word = match g {
            Generator::P(a) => {
                if a >= dim {
                    return Err(HopfError::GeneratorRange { dim, a, b: a });
                }
                let mut w = Word::empty(dim);
                w.p_exps[a] = 1;
                w
            }
            Generator::M(a, b) => {
                if a >= b || b >= dim {
                    return Err(HopfError::GeneratorRange { dim, a, b });
                }
                let mut w = Word::empty(dim);
                w.m_exps[pair_index(dim, a, b)] = 1;
                w
            }
        };
        let mut e = UEAElement::zero(dim);
        e.add_term(word, Scalar::one());
        Ok(e)
    }

    /// `M_omega = omega^{ab} M_{ab}` for an antisymmetric rational matrix.
    pub fn m_omega(dim: usize, omega: &crate::theta::ThetaMatrix) -> Result<Self, HopfError> {
        let mut e = UEAElement::zero(dim);
        for a in 0..dim {
            for b in (a + 1)..dim {
                // omega^{ab} M_{ab} + omega^{ba} M_{ba} = 2 omega^{ab} M_{ab}
                let c = Scalar::from_real(omega.get(a, b).clone()) * Scalar::from_int(2);
                if !c.is_zero() {
                    e = e.add(&UEAElement::generator(dim, Generator::M(a, b))?.scale(&c));
                }
            }
        }
        Ok(e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &UEAElement) -> UEAElement {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> UEAElement {
        if s.is_zero() {
            return UEAElement::zero(self.dim);
        }
        UEAElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Multiplies by a single generator on the right, re-normalizing to PBW order.
    pub fn mul_generator(&self, g: Generator) -> UEAElement {
        let mut out = UEAElement::zero(self.dim);
        for (w, c) in &self.terms {
            out = out.add(&word_times_generator(self.dim, w, g).scale(c));
        }
        out
    }

    pub fn mul(&self, rhs: &UEAElement) -> UEAElement {
        let mut out = UEAElement::zero(self.dim);
        for (w, c) in &rhs.terms {
            let mut acc = self.scale(c);
            for g in w.generators(self.dim) {
                acc = acc.mul_generator(g);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn commutator(&self, rhs: &UEAElement) -> UEAElement {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// The counit: the coefficient of the empty word.
    pub fn counit(&self) -> Scalar {
        self.terms
            .get(&Word::empty(self.dim))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Debug for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({}) {:?}", c, w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[M_{ab}, P_c] = i (delta_{bc} P_a - delta_{ac} P_b)`
fn bracket_m_p(dim: usize, a: usize, b: usize, c: usize) -> UEAElement {
    let mut out = UEAElement::zero(dim);
    if b == c {
        out = out.add(
            &UEAElement::generator(dim, Generator::P(a))
                .unwrap()
                .scale(&Scalar::i()),
        );
    }
    if a == c {
        out = out.sub(
            &UEAElement::generator(dim, Generator::P(b))
                .unwrap()
                .scale(&Scalar::i()),
        );
    }
    out
}

/// `M_{xy}` extended to arbitrary index order: zero on the diagonal,
/// antisymmetric otherwise.
fn m_signed(dim: usize, x: usize, y: usize) -> UEAElement {
    if x == y {
        UEAElement::zero(dim)
    } else if x < y {
        UEAElement::generator(dim, Generator::M(x, y)).unwrap()
    } else {
        UEAElement::generator(dim, Generator::M(y, x))
            .unwrap()
            .scale(&Scalar::from_int(-1))
    }
}

/// `[M_{ab}, M_{cd}] = i (d_{ad} M_{bc} + d_{bc} M_{ad} - d_{ac} M_{bd} - d_{bd} M_{ac})`
fn bracket_m_m(dim: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> UEAElement {
    let mut out = UEAElement::zero(dim);
    if a == d {
        out = out.add(&m_signed(dim, b, c));
    }
    if b == c {
        out = out.add(&m_signed(dim, a, d));
    }
    if a == c {
        out = out.sub(&m_signed(dim, b, d));
    }
    if b == d {
        out = out.sub(&m_signed(dim, a, c));
    }
    out.scale(&Scalar::i())
}

/// PBW straightening of `word * g`.
fn word_times_generator(dim: usize, word: &Word, g: Generator) -> UEAElement {
    match g {
        Generator::P(a) => {
            // translations commute and sit rightmost: plain append
            let mut w = word.clone();
            w.p_exps[a] += 1;
            let mut out = UEAElement::zero(dim);
            out.add_term(w, Scalar::one());
            out
        }
        Generator::M(a, b) => {
            // move M left through the translation part
            if let Some(c) = word.p_exps.iter().rposition(|&e| e > 0) {
                let mut prefix = word.clone();
                prefix.p_exps[c] -= 1;
                // prefix P_c M_{ab} = prefix M_{ab} P_c + prefix [P_c, M_{ab}]
                let main = word_times_generator(dim, &prefix, g).mul_generator(Generator::P(c));
                let mut pre_elem = UEAElement::zero(dim);
                pre_elem.add_term(prefix, Scalar::one());
                let bracket = bracket_m_p(dim, a, b, c).scale(&Scalar::from_int(-1));
                return main.add(&pre_elem.mul(&bracket));
            }
            // pure rotation word: insert in pair order
            let q = pair_index(dim, a, b);
            match word.m_exps.iter().rposition(|&e| e > 0) {
                Some(r) if r > q => {
                    let mut prefix = word.clone();
                    prefix.m_exps[r] -= 1;
                    let (ra, rb) = pair_from_index(dim, r);
                    // prefix M_r M_q = (prefix M_q) M_r + prefix [M_r, M_q]
                    let main =
                        word_times_generator(dim, &prefix, g).mul_generator(Generator::M(ra, rb));
                    let mut pre_elem = UEAElement::zero(dim);
                    pre_elem.add_term(prefix, Scalar::one());
                    let bracket = bracket_m_m(dim, (ra, rb), (a, b));
                    main.add(&pre_elem.mul(&bracket))
                }
                _ => {
                    let mut w = word.clone();
                    w.m_exps[q] += 1;
                    let mut out = UEAElement::zero(dim);
                    out.add_term(w, Scalar::one());
                    out
                }
            }
        }
    }
}
