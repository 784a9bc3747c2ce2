//! Permutations of `{1..d}`, words over finitely presented groups and
//! homomorphisms into the symmetric group.
//!
//! Composition is left to right everywhere in this crate: `p.then(&q)` applies
//! `p` first and `q` second, so the product of the permutations met along a path
//! is accumulated in traversal order.
//!
//! The subgroup attached to a homomorphism `φ: G → S_d` and a basepoint `x` is
//! `H = φ⁻¹(Stab(x))`. Its index is the size of the orbit of `x` under the image
//! group, and `H` is normal iff `Stab(x) ∩ im φ` is normal in `im φ`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree for which the image group is closed explicitly (|S_6| = 720).
pub const MAX_CLOSURE_DEGREE: usize = 6;

/// A bijection of `{1..d}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > u8::MAX as usize {
            return Err(Error::Permutation(format!("degree {d} out of range")));
        }
        let mut seen = vec![false; d];
        let mut image = Vec::with_capacity(d);
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::Permutation(format!(
                    "{images:?} is not a bijection of 1..{d}"
                )));
            }
            seen[x - 1] = true;
            image.push((x - 1) as u8);
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation from disjoint 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree + 1];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree || touched[x] {
                    return Err(Error::Permutation(format!("bad cycle {cycle:?}")));
                }
                touched[x] = true;
                image[x - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&image)
    }

    /// Shorthand for the transposition `(a b)`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        Self::from_cycles(degree, &[&[a, b]]).expect("valid transposition")
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.image[point - 1] as usize + 1
    }

    /// Image of a 0-based sheet index.
    #[inline]
    pub fn apply0(&self, sheet: u8) -> u8 {
        self.image[sheet as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.apply(point) == point
    }

    pub fn has_fixed_point(&self) -> bool {
        self.image.iter().enumerate().any(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: self.image.iter().map(|&x| other.image[x as usize]).collect(),
        }
    }

    /// Checked left-to-right product.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u8;
        }
        Permutation { image }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// `g⁻¹ · self · g`, the relabeling of `self` by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Disjoint cycles of length ≥ 2, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// One letter of a word: a generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

/// A freely reduced word over generator symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from `(symbol, ±1)` pairs, reducing `x x⁻¹` pairs.
    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = (S, i32)>,
        S: Into<String>,
    {
        let mut w = Word::empty();
        for (g, e) in letters {
            let g = g.into();
            for _ in 0..e.unsigned_abs() {
                w.push(Letter {
                    generator: g.clone(),
                    inverse: e < 0,
                });
            }
        }
        w
    }

    fn push(&mut self, letter: Letter) {
        if let Some(last) = self.letters.last() {
            if last.generator == letter.generator && last.inverse != letter.inverse {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(letter);
    }

    /// Parses a word such as `"a b a^-1"`, `"abAB"` or `"a^2 b"`.
    ///
    /// Tokens are separated by whitespace or `*`/`.`. A token that is not a
    /// generator name is split into single characters; an uppercase character
    /// whose lowercase form is a generator denotes the inverse. A relation
    /// `lhs = rhs` parses to `lhs · rhs⁻¹`.
    pub fn parse(text: &str, generators: &[String]) -> Result<Word> {
        if let Some((lhs, rhs)) = text.split_once('=') {
            let l = Word::parse(lhs, generators)?;
            let r = Word::parse(rhs, generators)?;
            return Ok(l.concat(&r.inverse()));
        }
        let mut w = Word::empty();
        for token in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
            if token.is_empty() || token == "1" || token == "e" && !generators.iter().any(|g| g == "e") {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i32 = e
                        .trim_matches(|c| c == '(' || c == ')')
                        .parse()
                        .map_err(|_| Error::Schema(format!("bad exponent in `{token}`")))?;
                    (b, e)
                }
                None => (token, 1),
            };
            let letters = Self::resolve(base, generators)?;
            let unit: Word = Word { letters };
            let unit = if exp < 0 { unit.inverse() } else { unit };
            for _ in 0..exp.unsigned_abs() {
                w = w.concat(&unit);
            }
        }
        Ok(w)
    }

    fn resolve(base: &str, generators: &[String]) -> Result<Vec<Letter>> {
        if generators.iter().any(|g| g == base) {
            return Ok(vec![Letter {
                generator: base.to_string(),
                inverse: false,
            }]);
        }
        base.chars()
            .map(|c| {
                let s = c.to_string();
                if generators.contains(&s) {
                    return Ok(Letter {
                        generator: s,
                        inverse: false,
                    });
                }
                let lower = c.to_lowercase().to_string();
                if c.is_uppercase() && generators.contains(&lower) {
                    return Ok(Letter {
                        generator: lower,
                        inverse: true,
                    });
                }
                Err(Error::UnknownGenerator(base.to_string()))
            })
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator.clone(),
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// Sum of exponents over all generators.
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", l.generator)
                } else {
                    l.generator.clone()
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Generators and relators; each relator is read as `relator = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(Error::Schema(format!("duplicate generator `{g}`")));
            }
        }
        for r in &relators {
            for l in r.letters() {
                if !generators.contains(&l.generator) {
                    return Err(Error::UnknownGenerator(l.generator.clone()));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Free group on the given symbols.
    pub fn free<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Self {
        Presentation {
            generators: generators.into_iter().map(Into::into).collect(),
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn index_of(&self, g: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }
}

fn evaluate(pres: &Presentation, images: &[Permutation], w: &Word) -> Result<Permutation> {
    let d = images.first().map(|p| p.degree()).unwrap_or(1);
    let mut acc = Permutation::identity(d);
    for l in w.letters() {
        let p = &images[pres.index_of(&l.generator)?];
        acc = if l.inverse {
            acc.then(&p.inverse())
        } else {
            acc.then(p)
        };
    }
    Ok(acc)
}

/// True iff every relator evaluates to the identity under `images`
/// (listed in generator order).
pub fn check_relations(pres: &Presentation, images: &[Permutation]) -> bool {
    if images.len() != pres.generators.len() {
        return false;
    }
    pres.relators.iter().all(|r| {
        evaluate(pres, images, r)
            .map(|p| p.is_identity())
            .unwrap_or(false)
    })
}

/// A homomorphism from a presented group to `S_d`, checked on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Homomorphism {
    presentation: Presentation,
    images: Vec<Permutation>,
    degree: usize,
}

impl Homomorphism {
    pub fn new(presentation: Presentation, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != presentation.generators.len() {
            return Err(Error::Schema(format!(
                "{} images for {} generators",
                images.len(),
                presentation.generators.len()
            )));
        }
        let degree = images
            .first()
            .map(|p| p.degree())
            .ok_or_else(|| Error::Schema("presentation has no generators".into()))?;
        for p in &images {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
        }
        for r in &presentation.relators {
            if !evaluate(&presentation, &images, r)?.is_identity() {
                return Err(Error::RelatorViolated(r.to_string()));
            }
        }
        Ok(Homomorphism {
            presentation,
            images,
            degree,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image_of(&self, generator: &str) -> Result<&Permutation> {
        Ok(&self.images[self.presentation.index_of(generator)?])
    }

    /// Conjugates every generator image by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Homomorphism {
        Homomorphism {
            presentation: self.presentation.clone(),
            images: self.images.iter().map(|p| p.conjugate_by(g)).collect(),
            degree: self.degree,
        }
    }
}

pub fn evaluate_word(hom: &Homomorphism, w: &Word) -> Result<Permutation> {
    if w.is_empty() {
        return Ok(Permutation::identity(hom.degree));
    }
    evaluate(&hom.presentation, &hom.images, w)
}

fn check_point(hom: &Homomorphism, basepoint: usize) -> Result<()> {
    if basepoint == 0 || basepoint > hom.degree {
        return Err(Error::Schema(format!(
            "basepoint {basepoint} outside 1..{}",
            hom.degree
        )));
    }
    Ok(())
}

/// Orbit of a 1-based point under the group generated by `gens`, sorted.
pub fn orbit(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree + 1];
    let mut queue = VecDeque::from([point]);
    seen[point] = true;
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    (1..=degree).filter(|&x| seen[x]).collect()
}

/// All elements of the group generated by `gens`, in BFS order from the identity.
pub fn closure(gens: &[Permutation], degree: usize) -> Result<Vec<Permutation>> {
    if degree > MAX_CLOSURE_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                order.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(order)
}

/// Index of `H = φ⁻¹(Stab(basepoint))`, i.e. the orbit size of the basepoint.
pub fn subgroup_index(hom: &Homomorphism, basepoint: usize) -> Result<usize> {
    check_point(hom, basepoint)?;
    Ok(orbit(&hom.images, hom.degree, basepoint).len())
}

/// Whether `H = φ⁻¹(Stab(basepoint))` is normal in the presented group.
pub fn is_normal(hom: &Homomorphism, basepoint: usize) -> Result<bool> {
    check_point(hom, basepoint)?;
    let group = closure(&hom.images, hom.degree)?;
    let stab: Vec<&Permutation> = group.iter().filter(|p| p.fixes(basepoint)).collect();
    // normality under the generators of the image suffices in a finite group
    Ok(hom
        .images
        .iter()
        .all(|g| stab.iter().all(|s| s.conjugate_by(g).fixes(basepoint))))
}

/// Whether the word lies in `H = φ⁻¹(Stab(basepoint))`.
pub fn in_subgroup(hom: &Homomorphism, basepoint: usize, w: &Word) -> Result<bool> {
    check_point(hom, basepoint)?;
    Ok(evaluate_word(hom, w)?.fixes(basepoint))
}

/// Serializable presentation plus homomorphism, as read by `group-check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    /// Generator symbol to 1-based image list.
    pub images: BTreeMap<String, Permutation>,
    #[serde(default = "default_basepoint")]
    pub basepoint: usize,
}

fn default_basepoint() -> usize {
    1
}

impl GroupSpec {
    pub fn presentation(&self) -> Result<Presentation> {
        let relators = self
            .relators
            .iter()
            .map(|r| Word::parse(r, &self.generators))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(self.generators.clone(), relators)
    }

    pub fn image_list(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| {
                self.images
                    .get(g)
                    .cloned()
                    .ok_or_else(|| Error::Schema(format!("no image for generator `{g}`")))
            })
            .collect()
    }

    pub fn homomorphism(&self) -> Result<Homomorphism> {
        Homomorphism::new(self.presentation()?, self.image_list()?)
    }

    /// Evaluates relations, index and normality without failing on bad relators.
    pub fn check(&self) -> Result<GroupCheck> {
        let pres = self.presentation()?;
        let images = self.image_list()?;
        let relations_ok = check_relations(&pres, &images);
        let hom = Homomorphism {
            degree: images[0].degree(),
            presentation: pres,
            images,
        };
        for p in &hom.images {
            if p.degree() != hom.degree {
                return Err(Error::DegreeMismatch(hom.degree, p.degree()));
            }
        }
        Ok(GroupCheck {
            relations_ok,
            index: subgroup_index(&hom, self.basepoint)?,
            normal: is_normal(&hom, self.basepoint)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCheck {
    pub relations_ok: bool,
    pub index: usize,
    pub normal: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn t(a: usize, b: usize) -> Permutation {
        Permutation::transposition(3, a, b)
    }

    fn c123() -> Permutation {
        Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap()
    }

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn almgren() -> Homomorphism {
        Homomorphism::new(Presentation::free(["a", "b"]), vec![t(1, 2), t(2, 3)]).unwrap()
    }

    fn cube() -> Homomorphism {
        Homomorphism::new(
            Presentation::free(["a", "b", "c", "d", "e"]),
            vec![c123(); 5],
        )
        .unwrap()
    }

    #[test]
    fn triple_curve_identity() {
        let p = t(2, 3)
            .then(&t(1, 2).inverse())
            .then(&t(1, 3).inverse())
            .then(&t(1, 2));
        assert!(p.is_identity());
    }

    #[test]
    fn left_to_right_convention() {
        // (1 2) then (2 3): 1 -> 2 -> 3
        let p = t(1, 2).then(&t(2, 3));
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.to_string(), "(1 3 2)");
    }

    #[test]
    fn group_axioms_on_random_permutations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for i in 0..50 {
            let d = 1 + i % 6;
            let mut v: Vec<usize> = (1..=d).collect();
            v.shuffle(&mut rng);
            let p = Permutation::from_images(&v).unwrap();
            assert_eq!(p.compose(&Permutation::identity(d)).unwrap(), p);
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn rejects_non_bijection_and_mismatch() {
        assert!(Permutation::from_images(&[1, 1, 3]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(matches!(
            t(1, 2).compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn word_reduction_and_parse() {
        let g = gens(&["a", "b"]);
        let w = Word::parse("a b B a^-1", &g).unwrap();
        assert!(w.is_empty());
        let w = Word::parse("abab = baba", &g).unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(Word::parse("a^3", &g).unwrap().exponent_sum(), 3);
        assert!(matches!(
            Word::parse("x", &g),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn evaluate_words() {
        let cube = cube();
        let w = Word::parse("a b c", cube.presentation().generators()).unwrap();
        assert!(evaluate_word(&cube, &w).unwrap().is_identity());
        assert!(evaluate_word(&cube, &Word::empty()).unwrap().is_identity());
        let b = Word::parse("b", almgren().presentation().generators()).unwrap();
        assert_eq!(evaluate_word(&almgren(), &b).unwrap(), t(2, 3));
    }

    #[test]
    fn moebius_relation_holds() {
        let g = gens(&["a", "b"]);
        let pres = Presentation::new(g.clone(), vec![Word::parse("abab=baba", &g).unwrap()]).unwrap();
        assert!(check_relations(&pres, &[c123(), t(2, 3)]));
        // (1 2),(1 3): abab = (1 2)(1 3)(1 2)(1 3) evaluated directly
        let a = t(1, 2);
        let b = t(1, 3);
        let lhs = a.then(&b).then(&a).then(&b);
        let rhs = b.then(&a).then(&b).then(&a);
        assert_eq!(check_relations(&pres, &[a, b]), lhs == rhs);
        assert!(check_relations(&Presentation::free(["a"]), &[t(1, 2)]));
    }

    #[test]
    fn bad_relator_rejected_at_construction() {
        let g = gens(&["a"]);
        let pres = Presentation::new(g.clone(), vec![Word::parse("a a", &g).unwrap()]).unwrap();
        assert!(matches!(
            Homomorphism::new(pres, vec![c123()]),
            Err(Error::RelatorViolated(_))
        ));
    }

    #[test]
    fn index_and_normality() {
        assert_eq!(subgroup_index(&almgren(), 1).unwrap(), 3);
        assert!(!is_normal(&almgren(), 1).unwrap());
        assert_eq!(subgroup_index(&cube(), 1).unwrap(), 3);
        assert!(is_normal(&cube(), 1).unwrap());
        let trivial =
            Homomorphism::new(Presentation::free(["a"]), vec![Permutation::identity(3)]).unwrap();
        assert_eq!(subgroup_index(&trivial, 1).unwrap(), 1);
        let cyc = Homomorphism::new(
            Presentation::free(["a"]),
            vec![Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap()],
        )
        .unwrap();
        assert!(is_normal(&cyc, 2).unwrap());
    }

    #[test]
    fn closure_cap() {
        let p = Permutation::from_cycles(7, &[&[1, 2]]).unwrap();
        let hom = Homomorphism::new(Presentation::free(["a"]), vec![p]).unwrap();
        assert!(matches!(is_normal(&hom, 1), Err(Error::DegreeTooLarge(7))));
        assert_eq!(subgroup_index(&hom, 1).unwrap(), 2);
    }

    #[test]
    fn membership() {
        let cube = cube();
        let g = cube.presentation().generators().to_vec();
        assert!(in_subgroup(&cube, 1, &Word::parse("a b e", &g).unwrap()).unwrap());
        assert!(!in_subgroup(&cube, 1, &Word::parse("a b", &g).unwrap()).unwrap());
        assert!(in_subgroup(&cube, 1, &Word::empty()).unwrap());
        let ag = almgren().presentation().generators().to_vec();
        assert!(in_subgroup(&almgren(), 1, &Word::parse("b", &ag).unwrap()).unwrap());
        assert!(!in_subgroup(&almgren(), 1, &Word::parse("a", &ag).unwrap()).unwrap());
    }

    #[test]
    fn group_spec_json() {
        let text = r#"{"generators":["a","b"],"relators":["abab=baba"],
            "images":{"a":[2,3,1],"b":[1,3,2]},"basepoint":1}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        let check = spec.check().unwrap();
        assert!(check.relations_ok);
        assert_eq!(check.index, 3);
        assert!(!check.normal);
    }
}
