"""Self-verification suites: the CLI `verify` command runs all of them.

Each suite returns (name, passed, detail).  They restate the defining
properties of the invariant as executable checks: the ring identities
behind Reidemeister invariance, the Reidemeister/Markov battery for the
bracket, order-independence of the reduction, the mirror and product laws,
the N = 2 closed form, and agreement with the 4-valent oracle.
"""

from __future__ import annotations

import random

from .corpus import (clasped_handcuff, dodecahedral_graphs, link_corpus,
                     random_braid, random_regraph, random_trivalent_graph,
                     regraph_from_word)
from .diagrams import (BraidWord, braid_to_link, connected_sum,
                       disjoint_union, mirror, parse_braid, smooth_crossing,
                       switch_crossing)
from .fourvalent import OracleContext, collapse, evaluate4, kauffman_via_4valent
from .invariants import (bracket, eval_braid, kauffman_state_sum,
                         n2_closed_form, regraph_invariant)
from .ring import (R_A, R_B, R_ONE, R_a, R_a_inv, RingElem, constants,
                   specialize_soN, to_canonical_text)
from .skein import EvalContext, evaluate


def check_ring_identities() -> tuple[str, bool, str]:
    C = constants()
    checks = [
        ("A*alpha + B + beta - a", R_A * C.alpha + R_B + C.beta - R_a),
        ("A*a^-1 + B^2 + B*beta + gamma",
         R_A * R_a_inv + R_B * R_B + R_B * C.beta + C.gamma),
        ("A^2 + B^2 + (A+B)*beta + AB*alpha + gamma",
         R_A * R_A + R_B * R_B + (R_A + R_B) * C.beta
         + R_A * R_B * C.alpha + C.gamma),
        ("AB*beta + (A+B)*gamma - delta",
         R_A * R_B * C.beta + (R_A + R_B) * C.gamma - C.delta),
    ]
    bad = [name for name, v in checks if not v.is_zero()]
    return ("ring identities", not bad, "failed: " + ", ".join(bad) if bad else "4 identities exact")


def check_normalization(kmax: int = 5) -> tuple[str, bool, str]:
    from .maps import PlanarMap
    alpha = constants().alpha
    ok = True
    for k in range(1, kmax + 1):
        g = PlanarMap([], [], [], frozenset(), k)
        if evaluate(g, EvalContext()) != alpha ** (k - 1):
            ok = False
    return ("circle normalization", ok, f"alpha^(k-1) for k <= {kmax}")


def check_hopf() -> tuple[str, bool, str]:
    aa = R_a - R_a_inv
    expected = aa * (R_A - R_B) + RingElem(aa.num, 1) + R_ONE
    got = eval_braid(parse_braid("1 1")).value
    return ("Hopf link", got == expected, to_canonical_text(got))


def check_markov(seed: int = 11, trials: int = 100) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    for t in range(trials):
        b = random_braid(rng, max_strands=4, max_letters=8)
        base = bracket(b, ctx)
        k = rng.randint(0, len(b.letters))
        i = rng.randint(1, b.strands - 1)
        inserted = BraidWord(b.strands,
                             b.letters[:k] + (i, -i) + b.letters[k:])
        variants = [inserted,
                    b.conjugated_by(rng.randint(1, b.strands - 1)),
                    b.stabilized(1), b.stabilized(-1)]
        if b.strands >= 3:
            i = rng.randint(1, b.strands - 2)
            variants.append(BraidWord(b.strands,
                                      (i, i + 1, i) + b.letters))
            variants.append(BraidWord(b.strands,
                                      (i + 1, i, i + 1) + b.letters))
        vals = [bracket(v, ctx) for v in variants]
        if b.strands >= 3 and vals[-1] != vals[-2]:
            return ("Reidemeister/Markov battery", False,
                    f"braid relation failed at trial {t}: {b.letters}")
        for v, val in zip(variants[:4], vals[:4]):
            if val != base:
                return ("Reidemeister/Markov battery", False,
                        f"failed at trial {t}: {b.letters} vs {v.letters}")
    return ("Reidemeister/Markov battery", True, f"{trials} random braids")


def check_dubrovnik_axioms(seed: int = 23, trials: int = 50) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    z = R_A - R_B
    for t in range(trials):
        b = random_braid(rng, max_strands=4, max_letters=6, min_letters=1)
        d = braid_to_link(b)
        node = rng.choice(d.crossing_nodes())
        p_pos = kauffman_state_sum(d, ctx).value
        p_neg = kauffman_state_sum(switch_crossing(d, node), ctx).value
        p_0 = kauffman_state_sum(smooth_crossing(d, node, "A"), ctx).value
        p_inf = kauffman_state_sum(smooth_crossing(d, node, "B"), ctx).value
        if p_pos - p_neg != z * (p_0 - p_inf):
            return ("Dubrovnik skein axiom", False, f"trial {t}: {b.letters}")
        # kink factors via Markov stabilization
        base = kauffman_state_sum(d, ctx).value
        up = kauffman_state_sum(braid_to_link(b.stabilized(1)), ctx).value
        down = kauffman_state_sum(braid_to_link(b.stabilized(-1)), ctx).value
        if up != R_a * base or down != R_a_inv * base:
            return ("Dubrovnik skein axiom", False, f"kink factor, trial {t}")
    return ("Dubrovnik skein axiom", True, f"{trials} marked diagrams")


def check_confluence(seed: int = 5, graphs: int = 40, strategies: int = 5
                     ) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    corpus = [random_trivalent_graph(rng, max_vertices=12)
              for _ in range(graphs - 4)] + dodecahedral_graphs(4)
    consistency: dict = {}
    fallback_used = 0
    from .skein import reducible_configs
    for g in corpus:
        if not reducible_configs(g):
            fallback_used += 1
        ref = None
        for s in range(strategies):
            ctx = EvalContext(rng=random.Random((seed, s, 17)),
                              consistency=consistency)
            v = evaluate(g, ctx)
            if ref is None:
                ref = v
            elif v != ref:
                return ("confluence", False, "strategy-dependent value")
    return ("confluence", True,
            f"{len(corpus)} graphs x {strategies} strategies, "
            f"{fallback_used} needed the move search")


def check_mirror(seed: int = 31, trials: int = 30) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    for t in range(trials):
        d = random_regraph(rng, max_crossings=6, max_wide=4)
        v = regraph_invariant(d, ctx).value
        vm = regraph_invariant(mirror(d), ctx).value
        if vm != v.swap_AB_invert_a():
            return ("mirror law", False, f"trial {t}")
    return ("mirror law", True, f"{trials} random graph diagrams")


def check_products(seed: int = 41, trials: int = 20) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    alpha = constants().alpha
    for t in range(trials):
        d1 = random_regraph(rng, max_crossings=3, max_wide=2)
        d2 = random_regraph(rng, max_crossings=3, max_wide=2)
        v1 = regraph_invariant(d1, ctx).value
        v2 = regraph_invariant(d2, ctx).value
        union = disjoint_union(d1, d2)
        if regraph_invariant(union, ctx).value != alpha * v1 * v2:
            return ("product laws", False, f"union, trial {t}")
        e1 = next(h for h in range(d1.n_half) if not d1.wide[h])
        e2 = next(h for h in range(d2.n_half) if not d2.wide[h])
        summed = connected_sum(d1, e1, d2, e2)
        if regraph_invariant(summed, ctx).value != v1 * v2:
            return ("product laws", False, f"connected sum, trial {t}")
    return ("product laws", True, f"{trials} random pairs")


def check_n2(seed: int = 53, graphs: int = 60) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    corpus = [random_trivalent_graph(rng, max_vertices=12)
              for _ in range(graphs - 2)] + dodecahedral_graphs(2)
    for i, g in enumerate(corpus):
        if specialize_soN(evaluate(g, ctx), 2) != n2_closed_form(g):
            return ("N=2 closed form", False, f"graph {i}")
    hc = clasped_handcuff()
    got = specialize_soN(regraph_invariant(hc, ctx).value, 2)
    if got != {-1: -1, -3: -1}:
        return ("N=2 closed form", False, "clasped handcuff example")
    return ("N=2 closed form", True,
            f"{len(corpus)} graphs + handcuff example")


def check_oracle(seed: int = 61, graphs: int = 25, links: int = 8
                 ) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    octx = OracleContext()
    for i in range(graphs):
        g = random_trivalent_graph(rng, max_vertices=12)
        if evaluate4(collapse(g), octx) != evaluate(g, ctx):
            return ("4-valent oracle", False, f"collapse mismatch, graph {i}")
    for i in range(links):
        b = random_braid(rng, max_strands=3, max_letters=6)
        d = braid_to_link(b)
        if kauffman_via_4valent(d, octx) != kauffman_state_sum(d, ctx).value:
            return ("4-valent oracle", False, f"link path mismatch: {b.letters}")
    return ("4-valent oracle", True,
            f"{graphs} collapses + {links} link diagrams")


def check_path_agreement(seed: int = 71, trials: int = 25) -> tuple[str, bool, str]:
    rng = random.Random(seed)
    ctx = EvalContext()
    for t in range(trials):
        b = random_braid(rng, max_strands=4, max_letters=6)
        lhs = RingElem.mono(b.writhe(), 0, 0) * bracket(b, ctx)
        if lhs != eval_braid(b, ctx).value:
            return ("bracket/state-sum agreement", False, f"trial {t}: {b.letters}")
    return ("bracket/state-sum agreement", True, f"{trials} braids")


ALL_SUITES = [
    check_ring_identities,
    check_normalization,
    check_hopf,
    check_markov,
    check_dubrovnik_axioms,
    check_path_agreement,
    check_confluence,
    check_mirror,
    check_products,
    check_n2,
    check_oracle,
]


def run_all(suites=None) -> list[tuple[str, bool, str]]:
    return [suite() for suite in (suites or ALL_SUITES)]
