use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use burnside_core::VirtualBiset;
use group_core::{direct_product, p_part, pair, Elem, Embedding, Group, Hom, Subgroup, NONE};

use crate::error::FusionError;

type HomKey = (Vec<Elem>, Vec<Elem>);

/// A fusion system on a `p`-group `S`, realized as `F_S(G)` for an ambient
/// group `G` containing `S` as a Sylow `p`-subgroup. Morphisms are the maps
/// `c_g(x) = g⁻¹xg` between subgroups of `S`.
///
/// Products `A × F'` with `A` abelian are realized by `A × G'`, whose
/// conjugation maps are exactly `id × φ`; the factors are remembered so the
/// idempotent can be built from `ω_{F'}`.
pub struct FusionSystem {
    name: String,
    prime: u64,
    ambient: Arc<Group>,
    sylow: Embedding,
    factors: Option<(Arc<Group>, Arc<FusionSystem>)>,
    homs: Mutex<HashMap<HomKey, Arc<Vec<Hom>>>>,
    classes: OnceLock<Arc<Vec<Vec<Subgroup>>>>,
    pub(crate) omega: OnceLock<Arc<VirtualBiset>>,
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionSystem({}, p = {})", self.name, self.prime)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FusionSystem {
    fn build(name: String, prime: u64, ambient: Arc<Group>, sylow: Embedding) -> FusionSystem {
        FusionSystem {
            name,
            prime,
            ambient,
            sylow,
            factors: None,
            homs: Mutex::new(HashMap::new()),
            classes: OnceLock::new(),
            omega: OnceLock::new(),
        }
    }

    /// `F_S(G)` for a Sylow `p`-subgroup `S` of `G`.
    pub fn realized(g: &Arc<Group>, p: u64) -> Result<Arc<FusionSystem>, FusionError> {
        if !is_prime(p) {
            return Err(FusionError::Input(format!("{p} is not a prime")));
        }
        let s = g.sylow(p);
        let sylow = Embedding::new(g, &s, format!("Syl{p}({})", g.name()));
        Ok(Arc::new(FusionSystem::build(format!("F_{p}({})", g.name()), p, g.clone(), sylow)))
    }

    /// `F_S(G)` for a given Sylow subgroup `S ≤ G`.
    pub fn with_sylow(g: &Arc<Group>, p: u64, sylow: Embedding, name: impl Into<String>) -> Result<Arc<FusionSystem>, FusionError> {
        if !is_prime(p) {
            return Err(FusionError::Input(format!("{p} is not a prime")));
        }
        let n = sylow.sub.order() as u64;
        if !sylow.sub.is_p_group(p) || n != p_part(g.order() as u64, p) {
            return Err(FusionError::Input(format!("subgroup of order {n} is not a Sylow {p}-subgroup of {}", g.name())));
        }
        Ok(Arc::new(FusionSystem::build(name.into(), p, g.clone(), sylow)))
    }

    /// The fusion system `F_S(S)` of a `p`-group on itself.
    pub fn trivial(s: &Arc<Group>, p: u64) -> Result<Arc<FusionSystem>, FusionError> {
        if !is_prime(p) || !s.is_p_group(p) {
            return Err(FusionError::Input(format!("{} is not a {p}-group", s.name())));
        }
        let id: Vec<Elem> = s.elements().collect();
        let sylow = Embedding { sub: s.clone(), into: id.clone(), back: id };
        Ok(Arc::new(FusionSystem::build(format!("F({})", s.name()), p, s.clone(), sylow)))
    }

    /// `A × F'` for an abelian `p`-group `A` with trivial fusion. Elements of
    /// `A × S'` sit at `a·|S'| + s`.
    pub fn product(a: &Arc<Group>, inner: &Arc<FusionSystem>) -> Result<Arc<FusionSystem>, FusionError> {
        let p = inner.prime;
        if !a.is_abelian() || !a.is_p_group(p) {
            return Err(FusionError::Input(format!("{} is not an abelian {p}-group", a.name())));
        }
        let s = direct_product(a, inner.s())?;
        let g = direct_product(a, &inner.ambient)?;
        let (ns, ng) = (inner.s().order(), g.order());
        let mut into = Vec::with_capacity(s.order());
        let mut back = vec![NONE; ng];
        for x in s.elements() {
            let (ta, ts) = group_core::split(ns, x);
            let y = pair(inner.ambient.order(), ta, inner.sylow.to_ambient(ts));
            into.push(y);
            back[y as usize] = x;
        }
        let sylow = Embedding { sub: s, into, back };
        let mut f = FusionSystem::build(format!("{}x{}", a.name(), inner.name), p, g, sylow);
        f.factors = Some((a.clone(), inner.clone()));
        Ok(Arc::new(f))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// The underlying `p`-group.
    pub fn s(&self) -> &Arc<Group> {
        &self.sylow.sub
    }

    pub fn ambient(&self) -> &Arc<Group> {
        &self.ambient
    }

    /// `S` inside the ambient group.
    pub fn embedding(&self) -> &Embedding {
        &self.sylow
    }

    /// `(A, F')` when this system was built as a product.
    pub fn factors(&self) -> Option<&(Arc<Group>, Arc<FusionSystem>)> {
        self.factors.as_ref()
    }

    /// Whether every morphism is a conjugation in `S`.
    pub fn is_trivial(&self) -> bool {
        let s = self.s();
        let whole = Subgroup::whole(s);
        s.subgroup_classes()
            .expect("subgroups of S within bounds")
            .iter()
            .all(|c| self.hom_set(&c.representative, &whole).len() * s.centralizer_of(&c.representative).order() == s.order())
    }

    /// `c_g` on `P`, when `g⁻¹Pg ≤ S`.
    pub fn conj_hom(&self, g: Elem, p: &Subgroup) -> Option<Hom> {
        let amb = &self.ambient;
        let mut img = vec![NONE; self.s().order()];
        for &x in p.members() {
            img[x as usize] = self.sylow.to_sub(amb.conj(g, self.sylow.to_ambient(x)))?;
        }
        Some(Hom::from_fn(self.s().order(), p, |x| img[x as usize]))
    }

    /// `F(P, Q)`: the distinct maps `c_g|_P` with `g⁻¹Pg ≤ Q`.
    pub fn hom_set(&self, p: &Subgroup, q: &Subgroup) -> Arc<Vec<Hom>> {
        let key = (p.members().to_vec(), q.members().to_vec());
        if let Some(v) = self.homs.lock().expect("poisoned").get(&key) {
            return v.clone();
        }
        let s = self.s();
        let gens = p.gens(s);
        let amb = &self.ambient;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in amb.elements() {
            let mut imgs = Vec::with_capacity(gens.len());
            for &x in &gens {
                match self.sylow.to_sub(amb.conj(g, self.sylow.to_ambient(x))) {
                    Some(y) if q.contains(y) => imgs.push(y),
                    _ => break,
                }
            }
            if imgs.len() == gens.len() && seen.insert(imgs.clone()) {
                out.push((imgs, g));
            }
        }
        let homs: Vec<Hom> = out
            .into_iter()
            .map(|(_, g)| self.conj_hom(g, p).expect("generators land in S, so does P"))
            .collect();
        let v = Arc::new(homs);
        self.homs.lock().expect("poisoned").insert(key, v.clone());
        v
    }

    /// Whether `φ: P → S` lies in `F`.
    pub fn contains_hom(&self, phi: &Hom) -> bool {
        let p = phi.domain();
        let gens = p.gens(self.s());
        let want: Vec<Elem> = gens.iter().map(|&x| phi.apply(x)).collect();
        self.hom_set(p, &Subgroup::whole(self.s())).iter().any(|h| gens.iter().map(|&x| h.apply(x)).eq(want.iter().copied()))
    }

    /// All `F`-conjugates of `P`, sorted.
    pub fn class_of(&self, p: &Subgroup) -> Vec<Subgroup> {
        let s = self.s();
        let mut out: BTreeSet<Subgroup> = BTreeSet::new();
        for h in self.hom_set(p, &Subgroup::whole(s)).iter() {
            out.insert(h.image(s.order()));
        }
        out.into_iter().collect()
    }

    /// `F`-conjugacy classes of subgroups of `S`, in decreasing order of
    /// size and, within one size, by least member set.
    pub fn subgroup_classes(&self) -> Arc<Vec<Vec<Subgroup>>> {
        self.classes
            .get_or_init(|| {
                let subs = self.s().all_subgroups().expect("subgroups of S within bounds");
                let mut done: BTreeSet<Subgroup> = BTreeSet::new();
                let mut out = Vec::new();
                for p in subs.iter() {
                    if done.contains(p) {
                        continue;
                    }
                    let class = self.class_of(p);
                    done.extend(class.iter().cloned());
                    out.push(class);
                }
                out.sort_by(|a, b| b[0].order().cmp(&a[0].order()).then_with(|| a[0].cmp(&b[0])));
                Arc::new(out)
            })
            .clone()
    }

    pub fn are_conjugate(&self, p: &Subgroup, q: &Subgroup) -> bool {
        p.order() == q.order() && !self.hom_set(p, q).is_empty()
    }

    /// Some ambient `g` with `g⁻¹ a_i g = b_i`.
    pub fn tuple_conjugator(&self, a: &[Elem], b: &[Elem]) -> Option<Elem> {
        let amb = &self.ambient;
        let a: Vec<Elem> = a.iter().map(|&x| self.sylow.to_ambient(x)).collect();
        let b: Vec<Elem> = b.iter().map(|&x| self.sylow.to_ambient(x)).collect();
        amb.elements().find(|&g| a.iter().zip(&b).all(|(&x, &y)| amb.conj(g, x) == y))
    }

    pub fn tuples_conjugate(&self, a: &[Elem], b: &[Elem]) -> bool {
        a.len() == b.len() && self.tuple_conjugator(a, b).is_some()
    }

    /// All `F`-conjugates of a tuple in `S`, sorted.
    pub fn tuple_class(&self, a: &[Elem]) -> Vec<Vec<Elem>> {
        let amb = &self.ambient;
        let a: Vec<Elem> = a.iter().map(|&x| self.sylow.to_ambient(x)).collect();
        let mut out = BTreeSet::new();
        for g in amb.elements() {
            let img: Option<Vec<Elem>> = a.iter().map(|&x| self.sylow.to_sub(amb.conj(g, x))).collect();
            if let Some(t) = img {
                out.insert(t);
            }
        }
        out.into_iter().collect()
    }

    /// `C_S(a)` has maximal order in the `F`-class of `a`, which for a
    /// realized system means `C_S(a)` is a Sylow subgroup of `C_G(a)`.
    pub fn is_fully_centralized(&self, a: &[Elem]) -> bool {
        let amb: Vec<Elem> = a.iter().map(|&x| self.sylow.to_ambient(x)).collect();
        let cg = self.ambient.centralizer(&amb).order() as u64;
        self.s().centralizer(a).order() as u64 == p_part(cg, self.prime)
    }

    /// The centralizer system `C_F(a) = F_{C_S(a)}(C_G(a))` of a fully
    /// centralized tuple, with `C_S(a)` embedded in `S`.
    pub fn centralizer(&self, a: &[Elem]) -> Result<(Arc<FusionSystem>, Embedding), FusionError> {
        if !group_core::is_commuting(self.s(), a) {
            return Err(FusionError::Input(format!("tuple {a:?} does not commute")));
        }
        if !self.is_fully_centralized(a) {
            return Err(FusionError::Input(format!("tuple {a:?} is not fully centralized in {}", self.name)));
        }
        if let Some((fa, inner)) = &self.factors {
            // C_{A×F'}((t, w)) = A × C_{F'}(w)
            let ns = inner.s().order();
            let w: Vec<Elem> = a.iter().map(|&x| group_core::split(ns, x).1).collect();
            let (ci, _) = inner.centralizer(&w)?;
            let f = FusionSystem::product(fa, &ci)?;
            let cs = self.s().centralizer(a);
            let emb = Embedding::new(self.s(), &cs, f.name());
            if *emb.sub != **f.s() {
                return Err(FusionError::Consistency("product centralizer labels differ".into()));
            }
            return Ok((f.clone(), Embedding { sub: f.s().clone(), into: emb.into, back: emb.back }));
        }
        let label = a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let cs = self.s().centralizer(a);
        let cs_emb = Embedding::new(self.s(), &cs, format!("C_{}({label})", self.s().name()));
        let amb: Vec<Elem> = a.iter().map(|&x| self.sylow.to_ambient(x)).collect();
        let cg = self.ambient.centralizer(&amb);
        let cg_emb = Embedding::new(&self.ambient, &cg, format!("C_{}({label})", self.ambient.name()));
        let into: Vec<Elem> = cs_emb
            .into
            .iter()
            .map(|&x| cg_emb.to_sub(self.sylow.to_ambient(x)).expect("C_S(a) ≤ C_G(a)"))
            .collect();
        let mut back = vec![NONE; cg_emb.sub.order()];
        for (i, &y) in into.iter().enumerate() {
            back[y as usize] = i as Elem;
        }
        let sylow = Embedding { sub: cs_emb.sub.clone(), into, back };
        let f = FusionSystem::with_sylow(&cg_emb.sub, self.prime, sylow, format!("C_{}({label})", self.name))?;
        Ok((f, cs_emb))
    }
}

/// A formal union of fusion systems at one prime.
#[derive(Clone, Debug)]
pub struct Fusoid {
    components: Vec<Arc<FusionSystem>>,
}

impl Fusoid {
    pub fn new(components: Vec<Arc<FusionSystem>>) -> Result<Fusoid, FusionError> {
        let Some(first) = components.first() else {
            return Err(FusionError::Input("a fusoid needs at least one component".into()));
        };
        if components.iter().any(|c| c.prime() != first.prime()) {
            return Err(FusionError::Input("fusoid components use different primes".into()));
        }
        Ok(Fusoid { components })
    }

    pub fn single(f: &Arc<FusionSystem>) -> Fusoid {
        Fusoid { components: vec![f.clone()] }
    }

    pub fn components(&self) -> &[Arc<FusionSystem>] {
        &self.components
    }

    pub fn prime(&self) -> u64 {
        self.components[0].prime()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}
