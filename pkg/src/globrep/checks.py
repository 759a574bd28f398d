"""Property suites shared by the ``check`` command and the acceptance tests.

Every suite returns :class:`CheckResult` records. ``anchor`` names the
mathematical statement being exercised so a failure can be traced.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Callable

from .family import (abelian_p, check_family, check_n_stable, cyclic_p, elementary_abelian, inclusion,
                     up_closure)
from .io import dumps, rep_from_json, rep_to_json
from .kan import adjunction_check, glue_ses, left_kan, oplax_comparison, restrict, right_kan
from .randgen import (random_inclusion_pair, random_mono, random_morphism, random_outrep, random_rep,
                      small_families)
from .rep import (RepError, ShortExactSequence, check_eventually_torsion_free, chi, chi_rep, cokernel,
                  dsum, e_rep, gamma_rep, hom_space, identity, image, is_isomorphic, kernel, representable, support, tensor,
                  tensor_morphisms, unit, validate, zero_rep)
from .serre import (IdealSpec, brute_force_closure, decompose_chi, gamma_certificate, member,
                    serre_plus_member, symbolic_member)
from .spectrum import (P_INFINITY, decide_prime, described_ideals, enumerate_serre_ideals,
                       group_prime, primes_by_brute_force, quotient_by_group_prime,
                       reference_is_closed, replay_uniqueness, representable_point_sets, spc,
                       spc_n_stable, union_witness, zariski_closed)
from .support import SupportDescriptor
from .symbolic import Named, basic_catalog


@dataclass
class CheckResult:
    name: str
    anchor: str
    passed: bool
    detail: str
    instances: int = 0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} [{self.anchor}] {self.detail}"

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "passed": self.passed,
                "detail": self.detail, "instances": self.instances}


def _pick_family(rng, max_classes=4):
    return rng.choice([f for f in small_families() if len(f) <= max_classes])


# --- 1: discrete spectrum ------------------------------------------------------------------


def check_discrete_spectrum() -> list[CheckResult]:
    fams = [cyclic_p(2, 2), cyclic_p(3, 2), elementary_abelian(2, 2)]
    problems = []
    for f in fams:
        L = enumerate_serre_ideals(f)
        primes = L.primes()
        if len(L.ideals) != 8 or not L.round_trip_ok():
            problems.append(f"{f}: {len(L.ideals)} ideals, round trip {L.round_trip_ok()}")
        if len(primes) != 3:
            problems.append(f"{f}: {len(primes)} primes")
        gp = {group_prime(f, G) for G in f.classes}
        if set(primes) != gp:
            problems.append(f"{f}: primes are not the group primes")
        if sorted(map(sorted, primes_by_brute_force(f))) != sorted(sorted(I.support.points) for I in primes):
            problems.append(f"{f}: brute-force primes disagree")
        s = spc(f)
        if s.describe() != "3 points, discrete" or not s.injective:
            problems.append(f"{f}: spectrum {s.describe()}")
    return [CheckResult("discrete spectrum", "essentially finite spectrum is the set of classes",
                        not problems, "; ".join(problems) or "8 ideals, 3 group primes, discrete 3-point space",
                        len(fams))]


# --- 2: N* model -------------------------------------------------------------------------


def check_nstar_model(top: int = 64, seed: int = 0, max_exceptional: int = 5) -> list[CheckResult]:
    rng = random.Random(seed)
    extra = [frozenset(rng.sample(range(top + 1), rng.randint(3, 8))) for _ in range(100)]
    sets = representable_point_sets(top, 2, extra)
    out = []
    for kind in ("cyclic_p", "elementary_abelian"):
        sp = spc_n_stable(kind)
        bad = [str(T) for T in sets if sp.is_closed(T) != reference_is_closed(T)]
        closed = [T for T in sets if reference_is_closed(T)]
        ops = 0
        for _ in range(3000):
            T1, T2 = rng.choice(closed), rng.choice(closed)
            S1, S2 = sp.witness(T1), sp.witness(T2)
            U, I = T1 | T2, T1 & T2
            ops += 1
            if zariski_closed(union_witness(S1, S2)) != U or not sp.is_closed(U) or not reference_is_closed(U):
                bad.append(f"union {T1} | {T2}")
            if zariski_closed(list(S1) + list(S2)) != I or not sp.is_closed(I) or not reference_is_closed(I):
                bad.append(f"intersection {T1} & {T2}")
        out.append(CheckResult(f"N* closed sets ({kind})", "spectrum of an N-indexed family is N*",
                               not bad, f"{len(sets)} sets, {ops} union/intersection pairs"
                               + (f"; first mismatch {bad[0]}" if bad else ""), len(sets)))
    ideals = described_ideals(12, max_exceptional)
    problems, primes = [], 0
    canonical_primes = set()
    for I in ideals:
        v = decide_prime(I)
        if not v.prime:
            continue
        primes += 1
        canonical_primes.add(I.canonical())
        try:
            n = replay_uniqueness(I)
        except AssertionError as e:
            problems.append(f"{I}: {e}")
            continue
        if n is None and I.canonical() != P_INFINITY:
            problems.append(f"{I}: classified as P_inf wrongly")
    # independent check of the verdicts against the definition on a finite catalog
    small = [SupportDescriptor(frozenset(E), c) for r in range(4) for E in itertools.combinations(range(5), r)
             for c in (False, True)]
    for P in canonical_primes:
        for a, b in itertools.product(small, repeat=2):
            if P.contains(a & b) and not (P.contains(a) or P.contains(b)):
                problems.append(f"{P} fails primality on {a}, {b}")
                break
    out.append(CheckResult("prime uniqueness replay", "every prime other than P_inf is some P_n",
                           not problems, f"{len(ideals)} presented ideals, {primes} prime presentations, "
                           f"{len(canonical_primes)} distinct primes" + (f"; {problems[0]}" if problems else ""),
                           len(ideals)))
    return out


# --- 3: chi certificates and the closure oracle -------------------------------------------------


def check_chi_certificates(n: int = 200, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    problems = []
    for _ in range(n):
        f = _pick_family(rng)
        X = random_rep(f, rng)
        cert = decompose_chi(X)
        issues = cert.verify()
        expected = sorted((G, X.dims[G]) for G in support(X).points)
        if issues or sorted(cert.pieces()) != expected:
            problems.append(f"{f} {X.dims}: {issues[:1] or cert.pieces()}")
    res = [CheckResult("chi-filtration certificates", "support determines the generated ideal",
                       not problems, f"{n} random objects" + (f"; {problems[0]}" if problems else ""), n)]
    disagreements, reached, checked = [], 0, 0
    for f in small_families():
        catalog = [chi(f, G) for G in f.classes] + [e_rep(f, G) for G in f.classes]
        gens = [[g] for g in catalog] + [[random_rep(f, rng)] for _ in range(2)] + [[zero_rep(f)]]
        for g in gens:
            cl = brute_force_closure(g, catalog, seed=rng.randrange(1 << 30))
            ideal = IdealSpec.generated(f, g)
            for i, C in enumerate(catalog):
                checked += 1
                if i in cl:
                    reached += 1
                    if not member(C, ideal):
                        disagreements.append(f"{f}: oracle reaches {C.dims} from {g[0].dims}")
    res.append(CheckResult("membership vs closure oracle", "support criterion for membership",
                           not disagreements, f"{checked} catalog checks, {reached} reached by the oracle, "
                           f"{len(disagreements)} sound-direction disagreements", checked))
    return res


# --- 4: support datum ------------------------------------------------------------------------------


def check_support_datum(n: int = 500, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    problems = []
    for k in range(n):
        f = _pick_family(rng)
        which = k % 5
        if which == 0:
            ok = support(unit(f)).points == frozenset(f.classes) and support(zero_rep(f)).is_empty()
        elif which == 1:
            X, Y = random_rep(f, rng), random_rep(f, rng)
            ok = support(dsum(X, Y)) == support(X) | support(Y)
        elif which == 2:
            X, Y = random_rep(f, rng), random_rep(f, rng)
            ok = support(tensor(X, Y)) == support(X) & support(Y)
        else:
            X, Y = random_rep(f, rng), random_rep(f, rng)
            g = random_morphism(X, Y, rng)
            K, m = kernel(g)
            I, e, mi = image(g)
            C, q = cokernel(g)
            seqs = [ShortExactSequence(m, e), ShortExactSequence(mi, q)]
            ok = all(s.is_exact() and support(s.middle) == support(s.sub) | support(s.quotient) for s in seqs)
        if not ok:
            problems.append(f"case {which} over {f}")
    return [CheckResult("support datum axioms", "supports of unit, zero, sums, tensors and extensions",
                        not problems, f"{n} randomized checks" + (f"; {problems[0]}" if problems else ""), n)]


# --- 5: structural facts -----------------------------------------------------------------------


def check_structural(n: int = 100, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    res = []
    probs = []
    for _ in range(n):
        f = _pick_family(rng)
        G = rng.choice(f.classes)
        V = random_outrep(f, G, rng)
        C, epi = chi_rep(f, G, V)
        F, mono = kernel(epi)
        ses = ShortExactSequence(mono, epi)
        allowed = up_closure(f, [G]) - {G}
        if not ses.is_exact() or not support(F).points <= allowed:
            probs.append(f"{f} at {G}")
    res.append(CheckResult("kernel of e -> chi", "kernel of e_{G,V} -> chi_{G,V} lives strictly above G",
                           not probs, f"{n} instances" + (f"; {probs[0]}" if probs else ""), n))

    probs, count = [], 0
    fams = [f for f in small_families() if 3 <= len(f) <= 4]
    while count < n:
        f = fams[count % len(fams)]
        X = random_rep(f, rng)
        orders = sorted({f.order(G) for G in f.classes})
        for t in [0] + orders:
            down = inclusion(f, [G for G in f.classes if f.order(G) <= t])
            up = inclusion(f, [G for G in f.classes if f.order(G) > t])
            try:
                ses = glue_ses(down, up, X)
            except RepError as e:
                probs.append(f"{f} split at {t}: {e}")
                continue
            if support(X).points <= set(up.sub.classes) and not ses.mono.is_iso():
                probs.append(f"{f} split at {t}: left map not iso")
            if support(X).points <= set(down.sub.classes) and not ses.epi.is_iso():
                probs.append(f"{f} split at {t}: right map not iso")
            count += 1
    res.append(CheckResult("gluing sequence", "j_! j* X >-> X ->> i_* i* X is exact",
                           not probs, f"{count} split instances" + (f"; {probs[0]}" if probs else ""), count))

    probs = []
    for k in range(n):
        f = _pick_family(rng)
        side = "up" if k % 2 == 0 else "down"
        inc = random_inclusion_pair(f, rng, side)
        X = random_rep(inc.sub, rng)
        if side == "up":
            fast, gen = left_kan(inc, X, "zero"), left_kan(inc, X, "general")
        else:
            fast, gen = right_kan(inc, X, "zero"), right_kan(inc, X, "general")
        if validate(gen) or is_isomorphic(fast, gen) is None:
            probs.append(f"{side} inclusion of {inc.sub} in {f}")
        elif is_isomorphic(restrict(inc, gen), X) is None:
            probs.append(f"restriction of extension differs from X over {inc.sub}")
    res.append(CheckResult("extension by zero", "Kan extensions along up/down-closed inclusions extend by zero",
                           not probs, f"{n} instances" + (f"; {probs[0]}" if probs else ""), n))

    probs = []
    for _ in range(n):
        f = _pick_family(rng)
        X = random_rep(f, rng)
        G = rng.choice(f.classes)
        if len(hom_space(e_rep(f, G), X)) != X.dims[G]:
            probs.append(f"{f} at {G}")
    res.append(CheckResult("evaluation adjunction", "dim Hom(e_G, X) = dim X(G)",
                           not probs, f"{n} instances" + (f"; {probs[0]}" if probs else ""), n))
    return res


# --- 6: gamma mechanisms -------------------------------------------------------------------------


def gamma_truncations() -> list:
    out = [cyclic_p(2, N) for N in range(1, 9)]
    out += [cyclic_p(3, N) for N in range(1, 5)]
    out += [elementary_abelian(2, N) for N in range(1, 4)]
    out += [elementary_abelian(3, N) for N in range(1, 3)]
    return out


def finite_named_catalog(top: int = 8) -> list[Named]:
    out = [Named.zero()] + [Named.chi(i) for i in range(top + 1)]
    out += [Named.chi(i) + Named.chi(j) for i in range(top + 1) for j in range(i + 1, top + 1, 3)]
    out += [Named.chi(i) @ Named.gamma(j) for i in range(top + 1) for j in range(0, top + 1, 2)]
    out += [Named.chi(i) @ Named.e(j) for i in range(5) for j in range(i + 1)]
    out += [Named.gamma(i) @ Named.chi(i) for i in range(top + 1)]
    return out


def check_gamma_mechanisms(top: int = 8) -> list[CheckResult]:
    res = []
    probs, count = [], 0
    for f in gamma_truncations():
        idx = check_n_stable(f).indexing
        for i in range(len(idx)):
            count += 1
            try:
                g = gamma_rep(f, i, idx)
            except RepError as e:
                probs.append(f"{f}: {e}")
                continue
            if not tensor(g, chi(f, idx[i])).is_zero():
                probs.append(f"{f}: gamma_{i} (x) chi_{i} != 0")
    res.append(CheckResult("gamma annihilates chi", "gamma_i (x) chi_i = 0 on every truncation",
                           not probs, f"{count} (family, i) pairs up to level 8"
                           + (f"; {probs[0]}" if probs else ""), count))

    fam = cyclic_p(2, top + 1)
    idx = check_n_stable(fam).indexing
    probs = []
    cat = finite_named_catalog(top)
    for X in cat:
        R = X.realize(fam, idx)
        cert = gamma_certificate(R, idx)
        levels = sorted(idx.index(G) for G, _ in cert.pieces())
        if cert.verify() or levels != sorted(X.descriptor().points):
            probs.append(str(X))
    res.append(CheckResult("gamma filtration certificates", "finitely supported objects lie in Serre<chi_i>",
                           not probs, f"{len(cat)} finitely supported named objects"
                           + (f"; {probs[0]}" if probs else ""), len(cat)))

    probs, pairs = [], 0
    for fam, t in ((cyclic_p(2, top + 1), top), (elementary_abelian(2, 3), 2)):
        idx = check_n_stable(fam).indexing
        cat = basic_catalog(t)
        real = [X.realize(fam, idx) for X in cat]
        for (X, RX), (Y, RY) in itertools.product(list(zip(cat, real)), repeat=2):
            pairs += 1
            if symbolic_member(X, Y) != member(RX, IdealSpec.generated(fam, [RY])):
                probs.append(f"{X} vs {Y} over {fam}")
    res.append(CheckResult("symbolic vs truncated membership", "support inclusion decides membership",
                           not probs, f"{pairs} pairs" + (f"; {probs[0]}" if probs else ""), pairs))
    return res


# --- 7: flatness and radicality -------------------------------------------------------------------


def check_flatness_radicality(n: int = 100, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    probs = []
    for _ in range(n):
        f = _pick_family(rng)
        m = random_mono(f, rng)
        X = random_rep(f, rng)
        if not m.is_mono() or not tensor_morphisms(m, identity(X)).is_mono():
            probs.append(f"{f}: {m.source.dims} -> {m.target.dims} with {X.dims}")
    res = [CheckResult("flatness", "tensoring preserves monomorphisms", not probs,
                       f"{n} monos" + (f"; {probs[0]}" if probs else ""), n)]
    probs, count = [], 0
    for f in small_families():
        cat = ([chi(f, G) for G in f.classes] + [e_rep(f, G) for G in f.classes] + [unit(f)]
               + [random_rep(f, rng) for _ in range(3)])
        for Y in cat:
            I = IdealSpec.generated(f, [Y])
            for X in cat:
                count += 1
                if member(X, I) != member(tensor(X, X), I):
                    probs.append(f"{f}: {X.dims} in <{Y.dims}>")
    res.append(CheckResult("radicality", "X in I iff X (x) X in I", not probs,
                           f"{count} (object, ideal) pairs" + (f"; {probs[0]}" if probs else ""), count))
    return res


# --- 8: Serre+ -----------------------------------------------------------------------------------


def check_serre_plus(n: int = 100, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    probs, total = [], 0
    for k in range(n):
        f = _pick_family(rng)
        Y = random_rep(f, rng)
        mode = k % 3
        if mode == 0:
            X = random_rep(f, rng)
            Y = dsum(Y, X)
        elif mode == 1:
            Z = random_rep(f, rng)
            X = cokernel(random_morphism(Z, Y, rng))[0]
        else:
            Z = random_rep(f, rng)
            X = tensor(Y, Z)
        if not support(X) <= support(Y):
            probs.append("generator produced a pair without support inclusion")
            continue
        top = max(f.order(G) for G in f.classes)
        for m in range(top + 1):
            total += 1
            if not serre_plus_member(X, Y, m):
                probs.append(f"{f}: n={m}")
    return [CheckResult("Serre+ membership", "supp X within supp Y gives X in Serre+_n<Y> for all n",
                        not probs, f"{n} pairs, {total} (pair, n) checks" + (f"; {probs[0]}" if probs else ""), n)]


# --- further suites run by the check command ---------------------------------------------------------


def check_family_laws() -> list[CheckResult]:
    probs = []
    fams = small_families() + [elementary_abelian(2, 3), cyclic_p(5, 2)]
    skipped = 0
    for f in fams:
        r = check_family(f)
        skipped += r.associativity_skipped
        if not r.ok:
            probs.append(f"{f}: {r.violations[:1]}")
    if not check_n_stable(elementary_abelian(2, 2)).total_order:
        probs.append("elementary abelian chain not recognised as N-stable")
    if check_n_stable(abelian_p(2, 4)).total_order:
        probs.append("abelian 2-groups of order <= 4 recognised as a chain")
    return [CheckResult("family category laws", "families are categories; Out(G) is a group",
                        not probs, f"{len(fams)} families, associativity over the guard in {skipped}"
                        + (f"; {probs[0]}" if probs else ""), len(fams))]


def check_projectives(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    probs = []
    for f in small_families():
        if "1" in f and is_isomorphic(unit(f), e_rep(f, "1")) is None:
            probs.append(f"{f}: unit vs e_1")
        for G in f.classes:
            e = e_rep(f, G)
            if validate(e) or is_isomorphic(e, representable(f, G)) is None:
                probs.append(f"{f}: e_{G} vs representable")
            if support(e).points != up_closure(f, [G]):
                probs.append(f"{f}: support of e_{G}")
            V = random_outrep(f, G, rng)
            if support(e_rep(f, G, V)) != support(e) or support(chi(f, G, V)) != support(chi(f, G)):
                probs.append(f"{f}: twisted supports at {G}")
    return [CheckResult("projectives and twisted objects", "e_G is representable; twisting keeps supports",
                        not probs, "; ".join(probs[:1]) or "all families", len(small_families()))]


def check_kan_extras(n: int = 30, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    probs = []
    for k in range(n):
        f = _pick_family(rng)
        inc = random_inclusion_pair(f, rng, "down" if k % 2 else "up")
        X, Y = random_rep(inc.sub, rng), random_rep(inc.sub, rng)
        Z = random_rep(f, rng)
        rep = adjunction_check(inc, X, Z)
        if not rep.ok:
            probs.append(f"adjunction over {inc.sub} in {f}: {rep}")
        if restrict(inc, unit(f)) != unit(inc.sub):
            probs.append("restriction of unit")
        W = random_rep(f, rng)
        if restrict(inc, tensor(Z, W)) != tensor(restrict(inc, Z), restrict(inc, W)):
            probs.append("restriction is not strong monoidal")
        op = oplax_comparison(inc, X, Y)
        if any(op.kernel.dims[G] or op.cokernel.dims[G] for G in inc.sub.classes):
            probs.append("oplax kernel or cokernel meets the subfamily")
        full = inclusion(f, f.classes)
        h = oplax_comparison(full, restrict(full, Z), restrict(full, W)).h
        if not h.is_iso():
            probs.append("oplax comparison along the identity is not invertible")
    return [CheckResult("Kan extension laws", "adjunctions, monoidality of restriction, oplax comparison",
                        not probs, f"{n} instances" + (f"; {probs[0]}" if probs else ""), n)]


def check_group_primes() -> list[CheckResult]:
    probs = []
    for f in small_families():
        for G in f.classes:
            r = quotient_by_group_prime(f, G)
            if not r.ok:
                probs.append(f"{f} at {G}: {r}")
            if member(e_rep(f, G), group_prime(f, G)):
                probs.append(f"e_{G} in P_{G}")
    return [CheckResult("group primes", "P_G is maximal and evaluation at G kills it",
                        not probs, "; ".join(probs[:1]) or "all classes of all small families",
                        len(small_families()))]


def check_round_trip(n: int = 30, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    probs = []
    for _ in range(n):
        f = _pick_family(rng)
        X = random_rep(f, rng)
        text = dumps(rep_to_json(X))
        Y = rep_from_json(json.loads(text))
        if Y != X or dumps(rep_to_json(Y)) != text:
            probs.append(f"{f}: {X.dims}")
    return [CheckResult("file round trip", "Rep files re-parse to equal values", not probs,
                        f"{n} objects" + (f"; {probs[0]}" if probs else ""), n)]


def check_torsion_free() -> list[CheckResult]:
    probs = []
    f = cyclic_p(2, 4)
    idx = check_n_stable(f).indexing
    if check_eventually_torsion_free(unit(f), idx).r != 0:
        probs.append("unit")
    # the top level of a truncation has nothing above it, so it is skipped
    for i in range(len(idx) - 1):
        r = check_eventually_torsion_free(chi(f, idx[i]), idx).r
        if r != i:
            probs.append(f"chi_{i}: {r}")
        r = check_eventually_torsion_free(gamma_rep(f, i, idx), idx).r
        if r != max(i - 1, 0):
            probs.append(f"gamma_{i}: {r}")
    return [CheckResult("eventual torsion-freeness", "transitions out of high levels are injective",
                        not probs, "; ".join(probs[:1]) or "unit, chi_i, gamma_i on C_(2^n), n <= 4", 1)]


ACCEPTANCE: list[tuple[int, Callable[[], list[CheckResult]]]] = [
    (1, check_discrete_spectrum),
    (2, check_nstar_model),
    (3, check_chi_certificates),
    (4, check_support_datum),
    (5, check_structural),
    (6, check_gamma_mechanisms),
    (7, check_flatness_radicality),
    (8, check_serre_plus),
]

EXTRA: list[Callable[[], list[CheckResult]]] = [
    check_family_laws, check_projectives, check_kan_extras, check_group_primes, check_round_trip,
    check_torsion_free,
]


def run_all(include_acceptance: bool = True) -> list[CheckResult]:
    out = []
    if include_acceptance:
        for _, fn in ACCEPTANCE:
            out += fn()
    for fn in EXTRA:
        out += fn()
    return out
