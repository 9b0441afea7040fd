//! The acceptance suite: eight end-to-end checks, each reported as one
//! PASS/FAIL line. Shared by the `acceptance` test target and `selftest`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finrep::{clifford_identity_check, hom_mult, induce, restrict, CharTable, ClassFunction, FiniteGroup};
use crate::functor::{check_transitivity, conservation_holds, decompose_with, packet_union_check, sample_parameters, smap, GroupHomDesc, SMapData, TwistConvention};
use crate::hecke::ad::{check_relations_preserved, AdXg};
use crate::hecke::bernstein::BernsteinAlgebra;
use crate::hecke::{HKey, HeckeElement, HeckeSpec, ImAlgebra};
use crate::lparam::{component_group, example_sln, relevant_enhancements, tau_character, ComponentGroupResult, Factor, GroupTag, ToyParameter};
use crate::numkernel::{Cyclo, LaurentPoly, Rat};
use crate::rootdata::{build_classical, Family, Isogeny};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {} ({:.2}s): {}", self.id, self.name, self.elapsed.as_secs_f64(), self.detail)
    }
}

/// Conservation checks collected from every decomposition the suite performs.
#[derive(Default)]
struct ConservationLog {
    calls: usize,
    checked: usize,
    failures: Vec<String>,
}

impl ConservationLog {
    /// Decompose and, when `^S f` is injective, check `Σ m·deg ρ̃ = [S_φ̃ : S_φ]·deg ρ`.
    fn decompose(&mut self, sm: &SMapData, rho: usize, what: &str) -> Result<Vec<crate::functor::PullbackTerm>> {
        let terms = decompose_with(sm, rho, TwistConvention::Inverse)?;
        self.calls += 1;
        if sm.image().len() == sm.source.group.order() {
            self.checked += 1;
            if !conservation_holds(sm, rho, TwistConvention::Inverse)? {
                self.failures.push(format!("{what}, ρ = {rho}"));
            }
        }
        Ok(terms)
    }

    fn decompose_all(&mut self, sm: &SMapData, what: &str) -> Result<()> {
        for rho in relevant_enhancements(&sm.source) {
            self.decompose(sm, rho, what)?;
        }
        Ok(())
    }
}

fn fail(m: String) -> Error {
    Error::Computation(m)
}

fn ensure(cond: bool, m: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(m()))
    }
}

fn timed<F: FnOnce() -> Result<String>>(id: usize, name: &'static str, limit: Option<Duration>, f: F) -> CriterionReport {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    if let Some(lim) = limit {
        if elapsed > lim {
            passed = false;
            detail = format!("{detail}; exceeded the {}s budget", lim.as_secs());
        }
    }
    CriterionReport { id, name, passed, detail, elapsed }
}

/// Run all eight criteria in order.
pub fn run_all() -> Vec<CriterionReport> {
    let mut log = ConservationLog::default();
    let mut out = vec![
        timed(1, "SL_n worked example", Some(Duration::from_secs(10)), || sln_example(&mut log)),
        timed(2, "Hecke kernel", Some(Duration::from_secs(60)), hecke_kernel),
        timed(3, "center", None, center),
        timed(4, "Ad(x_g)", None, ad_xg),
        timed(5, "Clifford and induction", None, clifford),
    ];
    out.push(timed(6, "functoriality transitivity", None, || transitivity(&mut log)));
    out.push(timed(7, "Condition-1 factorization", None, factorization));
    out.push(timed(8, "multiplicity conservation", None, || {
        ensure(log.calls > 0, || "no decompositions were performed".into())?;
        ensure(log.failures.is_empty(), || format!("conservation fails on {}", log.failures.join("; ")))?;
        Ok(format!("{} decompositions, {} with injective ^S f checked exactly", log.calls, log.checked))
    }));
    out
}

// ---- 1 ----

fn cycle_element(cg: &ComponentGroupResult, n: usize) -> Option<u32> {
    let cyc: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    (0..cg.group.order() as u32).find(|&e| cg.pairs[e as usize][0].perm == cyc)
}

fn sln_example(log: &mut ConservationLog) -> Result<String> {
    for n in 2..=8usize {
        let (tag, phi) = example_sln(n)?;
        let cg = component_group(&tag, &phi)?;
        let w_chi: usize = cg.cosets.iter().map(Vec::len).sum();
        ensure(w_chi == n, || format!("n = {n}: |W_χ| = {w_chi}"))?;
        let gen = cycle_element(&cg, n).ok_or_else(|| fail(format!("n = {n}: no n-cycle in W_χ")))?;
        ensure(cg.weyl.closure(&[cg.representative(gen)]).len() == n, || format!("n = {n}: the n-cycle does not generate W_χ"))?;
        ensure(cg.group.order() == n && cg.group.element_order(gen) == n as u64, || format!("n = {n}: S_φ is not Z/{n}"))?;

        let mut g = vec![0; n - 1];
        g[0] = 1;
        let tau = tau_character(&cg, &g)?;
        for k in 0..n as u64 {
            let e = cg.group.pow(gen, k);
            ensure(tau.values[e as usize] == Cyclo::root_of_unity(-(k as i64), n as u64), || format!("n = {n}: τ(c^{k}) ≠ ζ^-{k}"))?;
        }

        let ad = GroupHomDesc::ad(&tag, g)?;
        let sm = smap(&ad, &phi)?;
        sm.check_invariants()?;
        let zeta = Cyclo::root_of_unity(1, n as u64);
        let sgen = cycle_element(&sm.source, n).ok_or_else(|| fail("no cycle in the source".into()))?;
        for rho in 0..n {
            let terms = log.decompose(&sm, rho, &format!("Ad(t) on SL{n}"))?;
            ensure(terms.len() == 1 && terms[0].m == 1, || format!("n = {n}: Ad(t) pullback of ρ{rho} is not a single piece"))?;
            let lhs = &sm.target.table.irr[terms[0].rho].values[sgen as usize];
            let rhs = &zeta * &sm.source.table.irr[rho].values[sgen as usize];
            ensure(*lhs == rhs, || format!("n = {n}: Ad(t) does not multiply ρ{rho} by ζ"))?;
        }

        let f = GroupHomDesc::sl_to_gl(n)?;
        let gl = GroupTag::single(Factor::Gl(n));
        let phi_gl = ToyParameter::from_root_exponents(&gl, &[(0..n as i64).collect()], n as i64)?;
        let sm = smap(&f, &phi_gl)?;
        let terms = log.decompose(&sm, 0, &format!("SL{n}→GL{n}"))?;
        ensure(terms.len() == n && terms.iter().all(|t| t.m == 1 && t.phi == phi), || format!("n = {n}: restriction from GL has {} pieces", terms.len()))?;
        ensure(packet_union_check(&f, &phi_gl, TwistConvention::Inverse)?, || format!("n = {n}: packet union fails"))?;
    }
    Ok("n = 2..8: W_χ = ⟨n-cycle⟩, S_φ = Z/n, τ = ζ^-k, Ad(t) twists by ζ, GL restriction has n pieces".into())
}

// ---- 2 ----

fn hecke_fixtures() -> Result<Vec<(String, ImAlgebra)>> {
    let mut out = Vec::new();
    for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::C, 2)] {
        for iso in [Isogeny::Sc, Isogeny::Ad] {
            for lab in [1, 2] {
                let d = build_classical(f, n, iso)?;
                let h = ImAlgebra::new(HeckeSpec::uniform(&d, lab)?)?;
                out.push((format!("{f:?}{n} {iso:?} λ={lab}"), h));
            }
        }
    }
    Ok(out)
}

fn random_element(rng: &mut ChaCha8Rng, keys: &[HKey]) -> HeckeElement {
    let mut x = HeckeElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let k = keys[rng.gen_range(0..keys.len())].clone();
        x.add_term(k, LaurentPoly::from_int(rng.gen_range(1..=3)));
    }
    x
}

fn hecke_kernel() -> Result<String> {
    let mut triples = 0usize;
    let mut pairs = 0usize;
    for (name, h) in hecke_fixtures()? {
        let keys = h.basis_up_to_length(6)?;
        let by_len: Vec<Vec<&HKey>> = (0..=6).map(|l| keys.iter().filter(|k| h.length(k) == l).collect()).collect();
        // Structure constants N_a N_b, memoized; products of basis elements
        // of total length ≤ 6 only involve basis elements of length ≤ 6.
        let mut prod: HashMap<(HKey, HKey), HeckeElement> = HashMap::new();
        let mut mul = |a: &HKey, b: &HKey| -> HeckeElement {
            prod.entry((a.clone(), b.clone())).or_insert_with(|| h.mul(&HeckeElement::basis(a.clone()), &HeckeElement::basis(b.clone()))).clone()
        };
        for la in 0..=6 {
            for lb in 0..=6 - la {
                for lc in 0..=6 - la - lb {
                    for a in &by_len[la] {
                        for b in &by_len[lb] {
                            let ab = mul(a, b);
                            for c in &by_len[lc] {
                                let bc = mul(b, c);
                                let mut left = HeckeElement::zero();
                                for (k, x) in ab.terms() {
                                    left.add_scaled(&mul(k, c), x);
                                }
                                let mut right = HeckeElement::zero();
                                for (k, x) in bc.terms() {
                                    right.add_scaled(&mul(a, k), x);
                                }
                                if left != right {
                                    return Err(fail(format!("{name}: (ab)c ≠ a(bc) for {a:?}, {b:?}, {c:?}")));
                                }
                                triples += 1;
                            }
                        }
                    }
                }
            }
        }
        for i in 0..h.affine_gens().len() {
            let ns = h.gen(i);
            let mut rhs = h.one();
            rhs.add_scaled(&ns, h.zdiff(i));
            ensure(h.mul(&ns, &ns) == rhs, || format!("{name}: quadratic relation fails for generator {i}"))?;
        }
        let bern = BernsteinAlgebra::new(&h);
        let small = h.basis_up_to_length(4)?;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            let a = random_element(&mut rng, &small);
            let b = random_element(&mut rng, &small);
            let lhs = bern.from_im(&h.mul(&a, &b));
            let rhs = bern.mul(&bern.from_im(&a), &bern.from_im(&b));
            ensure(lhs == rhs, || format!("{name}: IM and Bernstein products disagree"))?;
            pairs += 1;
        }
    }
    Ok(format!("{triples} associativity triples, quadratic relations, {pairs} IM/Bernstein pairs"))
}

// ---- 3 ----

fn center() -> Result<String> {
    let mut sums = 0;
    let mut gens = 0;
    for (name, h) in hecke_fixtures()? {
        let r = h.rank();
        let mut orbits = BTreeSet::new();
        let mut x = vec![-2i64; r];
        loop {
            let p = h.symmetrized_theta(&x);
            let key: Vec<Vec<i64>> = p.terms().map(|(y, _)| y.clone()).collect();
            if orbits.insert(key) {
                ensure(h.is_central(&h.theta_poly(&p)), || format!("{name}: symmetrized θ_{x:?} is not central"))?;
                sums += 1;
            }
            let Some(i) = x.iter().position(|&c| c < 2) else { break };
            x[i] += 1;
            for c in &mut x[..i] {
                *c = -2;
            }
        }
        for i in 0..h.affine_gens().len() {
            ensure(!h.is_central(&h.gen(i)), || format!("{name}: generator {i} is central"))?;
            gens += 1;
        }
    }
    Ok(format!("{sums} symmetrized θ-sums central, {gens} generators N_s not central"))
}

// ---- 4 ----

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn ad_xg() -> Result<String> {
    let fixtures: Vec<(Family, usize, Isogeny, Vec<Rat>)> = vec![
        (Family::A, 1, Isogeny::Ad, vec![rat(1, 2)]),
        (Family::A, 1, Isogeny::Sc, vec![rat(1, 1)]),
        (Family::A, 1, Isogeny::Ad, vec![rat(1, 1)]),
        (Family::A, 2, Isogeny::Sc, vec![rat(1, 1), rat(0, 1)]),
        (Family::A, 2, Isogeny::Ad, vec![rat(0, 1), rat(-1, 1)]),
        (Family::C, 2, Isogeny::Sc, vec![rat(1, 1), rat(0, 1)]),
        (Family::C, 2, Isogeny::Ad, vec![rat(1, 1), rat(1, 1)]),
    ];
    let mut integral = 0;
    for (f, n, iso, x) in &fixtures {
        let name = format!("{f:?}{n} {iso:?} x_g = {x:?}");
        let h = ImAlgebra::new(HeckeSpec::uniform(&build_classical(*f, *n, *iso)?, 1)?)?;
        let ad = AdXg::new(&h, x)?;
        let neg: Vec<Rat> = x.iter().map(|c| -c).collect();
        let back = AdXg::new(&h, &neg)?;
        check_relations_preserved(&h, &h, &|e| ad.apply(e)).map_err(|e| fail(format!("{name}: {e}")))?;
        let r = h.rank();
        for i in 0..r {
            for s in [-2, -1, 1, 2] {
                let mut y = vec![0; r];
                y[i] = s;
                ensure(ad.apply(&h.theta(&y))? == h.theta(&y), || format!("{name}: θ_{y:?} is moved"))?;
            }
        }
        let mut probes: Vec<HeckeElement> = h.central_test_generators();
        probes.extend(h.basis_up_to_length(2)?.into_iter().map(HeckeElement::basis));
        for p in &probes {
            ensure(back.apply(&ad.apply(p)?)? == *p, || format!("{name}: Ad(-x_g)∘Ad(x_g) ≠ id"))?;
        }
        if x.iter().all(|c| c.is_integer()) {
            integral += 1;
            let xi: Vec<i64> = x.iter().map(|c| i64::try_from(c.to_integer()).expect("small")).collect();
            let t = h.theta(&xi);
            let ti = h.theta(&xi.iter().map(|c| -c).collect::<Vec<_>>());
            for g in h.central_test_generators() {
                ensure(ad.apply(&g)? == h.mul(&h.mul(&t, &g), &ti), || format!("{name}: Ad(x_g) differs from conjugation by θ"))?;
            }
        }
    }
    Ok(format!("{} fixtures ({integral} with x_g ∈ X): relations, θ fixed, inverse, conjugation by θ", fixtures.len()))
}

// ---- 5 ----

fn group_fixtures() -> Result<Vec<(String, FiniteGroup)>> {
    let c = FiniteGroup::cyclic;
    let mut out = vec![];
    for n in [1, 2, 3, 4, 6, 8, 12] {
        out.push((format!("C{n}"), c(n)?));
    }
    for n in [3, 4, 5, 6, 12] {
        out.push((format!("D{n}"), FiniteGroup::dihedral(n)?));
    }
    out.push(("C2×C2".into(), c(2)?.direct_product(&c(2)?)?));
    out.push(("C2×C4".into(), c(2)?.direct_product(&c(4)?)?));
    out.push(("C3×C3".into(), c(3)?.direct_product(&c(3)?)?));
    out.push(("Q8".into(), FiniteGroup::quaternion()?));
    out.push(("A4".into(), FiniteGroup::alternating(4)?));
    out.push(("S4".into(), FiniteGroup::symmetric(4)?));
    out.push(("SL2(F3)".into(), FiniteGroup::sl2(3)?));
    out.push(("C3×S3".into(), c(3)?.direct_product(&FiniteGroup::symmetric(3)?)?));
    out.push(("C2×A4".into(), c(2)?.direct_product(&FiniteGroup::alternating(4)?)?));
    Ok(out)
}

/// All normal subgroups with abelian quotient, found among subgroups
/// generated by at most two elements.
/// Normal subgroups with abelian quotient: closures of the derived subgroup
/// with two more elements, which is all of them when `G/[G, G]` has rank ≤ 2.
fn abelian_quotient_normals(g: &FiniteGroup) -> Vec<Vec<u32>> {
    let n = g.order() as u32;
    let d = g.derived_subgroup();
    let mut seen = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            let mut gens = d.clone();
            gens.extend([a, b]);
            seen.insert(g.closure(&gens));
        }
    }
    seen.into_iter().filter(|s| g.is_normal(s) && g.quotient_is_abelian(s)).collect()
}

fn clifford() -> Result<String> {
    let mut checks = 0;
    let mut pairs = 0;
    for (name, g) in group_fixtures()? {
        if g.order() > 24 {
            continue;
        }
        let table = CharTable::compute(&g)?;
        for n in abelian_quotient_normals(&g) {
            pairs += 1;
            let ng = g.subgroup(&n)?;
            let index = (g.order() / n.len()) as i64;
            for rho in &CharTable::compute(&ng)?.irr {
                let ind = induce(&g, &table, &n, rho)?;
                let deg_rho = rho.degree(&ng);
                let mut total = Rat::from_integer(0.into());
                for (i, chi) in table.irr.iter().enumerate() {
                    let m = ind.decomposition.iter().find(|(j, _)| *j == i).map_or(0, |(_, m)| *m);
                    let frob = hom_mult(&ng, &restrict(&n, chi), rho)?;
                    ensure(m == frob, || format!("{name}, |N| = {}: Frobenius reciprocity fails", n.len()))?;
                    total += chi.degree(&g) * Rat::from_integer(m.into());
                }
                ensure(total == deg_rho * Rat::from_integer(index.into()), || format!("{name}, |N| = {}: degrees not conserved", n.len()))?;
                let rep = clifford_identity_check(&g, &n, rho)?;
                let mut rebuilt = ClassFunction { values: vec![Cyclo::zero(); g.order()] };
                for ((_, m), piece) in rep.pieces.iter().zip(&rep.induced_pieces) {
                    rebuilt = rebuilt.add(&piece.scale(*m as i64));
                }
                ensure(rep.holds && rebuilt == ind.character, || format!("{name}, |N| = {}: Clifford re-derivation disagrees", n.len()))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{pairs} (G, N) pairs, {checks} irreducible ρ of N"))
}

// ---- 6 ----

/// Every primitive morphism whose source is `SL_n`, `GL_n`, `PGL_n` or `SL_n × T`.
fn primitives(n: usize) -> Result<Vec<GroupHomDesc>> {
    let sl = GroupTag::single(Factor::Sl(n));
    let gl = GroupTag::single(Factor::Gl(n));
    let pgl = GroupTag::single(Factor::Pgl(n));
    let slt = GroupTag::split(vec![Factor::Sl(n), Factor::Torus(1)])?;
    let mut out = vec![
        GroupHomDesc::sl_to_gl(n)?,
        GroupHomDesc::gl_to_pgl(n)?,
        GroupHomDesc::sl_to_pgl(n)?,
        GroupHomDesc::torus_insert(&sl, 1)?,
    ];
    let mut g = vec![0; n - 1];
    g[0] = 1;
    let mut g2 = vec![0; n - 1];
    g2[n - 2] = 2;
    for t in [&sl, &gl, &pgl, &slt] {
        out.push(GroupHomDesc::ad(t, g.clone())?);
        out.push(GroupHomDesc::ad(t, g2.clone())?);
        out.push(GroupHomDesc::flip(t)?);
    }
    Ok(out)
}

fn transitivity(log: &mut ConservationLog) -> Result<String> {
    let mut chains = 0;
    let mut params = 0;
    for n in 2..=6 {
        let prims = primitives(n)?;
        for f in &prims {
            for q in prims.iter().filter(|q| q.source == f.target) {
                chains += 1;
                let qf = GroupHomDesc::compose(f, q)?;
                for phi in sample_parameters(&q.target, 5, 31 * n as u64 + chains as u64)? {
                    let rep = check_transitivity(f, q, &phi, TwistConvention::Inverse)?;
                    ensure(rep.holds, || format!("{} then {}: {}", f.label, q.label, rep.mismatches.join("; ")))?;
                    let s_q = smap(q, &phi)?;
                    log.decompose_all(&s_q, &q.label)?;
                    log.decompose_all(&smap(f, &s_q.target.phi)?, &f.label)?;
                    log.decompose_all(&smap(&qf, &phi)?, &qf.label)?;
                    params += 1;
                }
            }
        }
    }
    Ok(format!("{chains} composable chains, {params} parameters, zero mismatches"))
}

// ---- 7 ----

fn random_condition1(rng: &mut ChaCha8Rng) -> Result<GroupHomDesc> {
    let n = rng.gen_range(2..=5);
    let sl = GroupTag::single(Factor::Sl(n));
    let mut f = match rng.gen_range(0..4) {
        0 => GroupHomDesc::sl_to_gl(n)?,
        1 => GroupHomDesc::gl_to_pgl(n)?,
        2 => GroupHomDesc::sl_to_pgl(n)?,
        _ => GroupHomDesc::flip(&sl)?,
    };
    for _ in 0..rng.gen_range(0..=2) {
        let t = f.target.clone();
        let next = match rng.gen_range(0..3) {
            0 => GroupHomDesc::torus_insert(&t, rng.gen_range(1..=2))?,
            1 => GroupHomDesc::flip(&t)?,
            _ => match t.factors[0] {
                Factor::Sl(m) => GroupHomDesc::sl_to_gl(m)?,
                Factor::Gl(m) => GroupHomDesc::gl_to_pgl(m)?,
                _ => GroupHomDesc::flip(&t)?,
            },
        };
        if next.source == f.target {
            f = GroupHomDesc::compose(&f, &next)?;
        }
    }
    Ok(f)
}

fn factorization() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..20 {
        let f = random_condition1(&mut rng)?;
        let m = &f.lattice_map;
        ensure(m.is_condition1(), || format!("sample {i} ({}) is not Condition 1", f.label))?;
        let fac = m.factorize_condition1()?;
        for (k, stage) in [&fac.f1, &fac.f2, &fac.f3].into_iter().enumerate() {
            ensure(stage.is_condition1(), || format!("sample {i} ({}): stage {} fails Condition 1", f.label, k + 1))?;
        }
        ensure(fac.recompose()? == *m, || format!("sample {i} ({}): the factorization does not recompose", f.label))?;
    }
    Ok("20 seeded morphisms recompose exactly with Condition-1 stages".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_subgroups_of_s4() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let mut sizes: Vec<usize> = abelian_quotient_normals(&g).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![12, 24]);
    }

    #[test]
    fn three_generated_normal_subgroup_is_found() {
        let g = FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::alternating(4).unwrap()).unwrap();
        let mut sizes: Vec<usize> = abelian_quotient_normals(&g).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 8, 12, 24]);
    }

    #[test]
    fn primitives_compose_somewhere() {
        let p = primitives(3).unwrap();
        assert!(p.iter().all(|f| p.iter().any(|q| q.source == f.target)));
    }
}
