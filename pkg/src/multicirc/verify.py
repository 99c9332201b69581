"""Acceptance sweeps: each closed-form result checked against the oracles.

Every ``criterion_*`` function returns a :class:`CheckResult`. A result
passes only if there are no disagreements and it finished inside its time
budget.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

from . import oracle
from .circulant import adam_canonical, adam_isomorphic, build, cartesian_product, complete, components, cycle
from .dimension import (
    commutative_2step_is_circulant,
    exceptional_pair,
    is_circulant_2step,
    prime_product_dimension,
    prime_product_instance,
)
from .directions import detect_directions
from .graph import Graph, hypercube
from .intmat import (
    IntMatrix,
    det,
    determinantal_divisors,
    hermite_normal_form,
    smith_normal_form,
)
from .quotient import diagonal_group, element_order_2x2, make_group


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.3f}s, budget {self.budget:g}s)"


def _timed(number: int, name: str, budget: float, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t0
    if ok and dt > budget:
        ok, detail = False, detail + "; over time budget"
    return CheckResult(number, name, ok, detail, dt, budget)


def _random_matrix(rng: random.Random, n: int, lo: int, hi: int) -> IntMatrix:
    return IntMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def _random_unimodular(rng: random.Random, n: int, steps: int = 8) -> IntMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if kind == 0 and n > 1:
            c = rng.choice([-2, -1, 1, 2])
            rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
        elif kind == 1 and n > 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-x for x in rows[i]]
    return IntMatrix(rows)


# --- 1 -----------------------------------------------------------------


def criterion_1() -> CheckResult:
    M = IntMatrix.diag(2, 2, 3)

    def body():
        sd = smith_normal_form(M)
        best = min(_time_call(lambda: smith_normal_form(M)) for _ in range(20))
        ok = (
            sd.S == IntMatrix.diag(1, 2, 6)
            and sd.divisors == (1, 2, 12)
            and sd.factors == (1, 2, 6)
            and sd.U @ M @ sd.V == sd.S
            and abs(det(sd.U)) == 1
            and abs(det(sd.V)) == 1
            and best < 1e-3
        )
        return ok, f"S={sd.S}, d={sd.divisors}, s={sd.factors}, single call {best * 1e3:.3f} ms"

    return _timed(1, "Smith form of diag(2,2,3)", 1.0, body)


def _time_call(f) -> float:
    t0 = time.perf_counter()
    f()
    return time.perf_counter() - t0


# --- 2 -----------------------------------------------------------------


def criterion_2() -> CheckResult:
    def body():
        g = make_group(IntMatrix.diag(2, 2, 3))
        A = [(1, 0, 0), (0, 1, 0), (0, 0, 2)]
        target, jumps = adam_canonical(g, A)
        canon = build(target, jumps)
        ref = build(IntMatrix.diag(2, 6), [(0, 3), (1, 0), (0, 4)])
        ok = target.Sprime == (2, 6) and oracle.graphs_isomorphic(canon, ref)
        ok = ok and oracle.graphs_isomorphic(canon, build(g, A))
        js = ", ".join(",".join(map(str, a)) for a in jumps)
        return ok, f"canonical jumps {{{js}}} over {target.describe()}"

    return _timed(2, "Smith-coordinate presentation is isomorphic", 1.0, body)


# --- 3 -----------------------------------------------------------------


def two_by_two_matrices(lo: int, hi: int, max_det: int):
    for a, b, c, d in product(range(lo, hi + 1), repeat=4):
        D = a * d - b * c
        if D and abs(D) <= max_det:
            yield IntMatrix([[a, b], [c, d]])


def criterion_3(lo: int = -4, hi: int = 4, max_det: int = 12) -> CheckResult:
    def body():
        verdict_cache: dict[tuple, bool] = {}
        checked = disagreements = 0
        rules: dict[str | None, int] = {}
        first = None
        for M in two_by_two_matrices(lo, hi, max_det):
            g = make_group(M)
            elems = [e for e in g.elements() if e != g.zero]
            for a1, a2 in combinations(elems, 2):
                if not g.generates([a1, a2]):
                    continue
                for symmetric in (False, True):
                    claim, rule = is_circulant_2step(g, [a1, a2], symmetric)
                    rules[rule] = rules.get(rule, 0) + 1
                    G = build(g, [a1, a2], symmetric)
                    key = G.key()
                    if key not in verdict_cache:
                        verdict_cache[key] = oracle.has_regular_cyclic_subgroup(G)
                    checked += 1
                    if claim != verdict_cache[key]:
                        disagreements += 1
                        first = first or (M, a1, a2, symmetric)
        tally = ", ".join(f"{k or 'none'}: {v}" for k, v in sorted(rules.items(), key=lambda kv: str(kv[0])))
        detail = f"{checked} cases, {len(verdict_cache)} distinct graphs, rules ({tally}), {disagreements} disagreements"
        if first:
            detail += f"; first {first}"
        return disagreements == 0 and checked > 0, detail

    return _timed(3, "2-step circulant rule vs cyclic-automorphism search", 600.0, body)


# --- 4 -----------------------------------------------------------------


def criterion_4(lo: int = -5, hi: int = 5, max_det: int = 20) -> CheckResult:
    def body():
        checked = degenerate = disagreements = 0
        for M in two_by_two_matrices(lo, hi, max_det):
            g = make_group(M)
            if not g.generates([(1, 0), (0, 1)]):
                continue
            e1, e2 = g.canonicalize((1, 0)), g.canonicalize((0, 1))
            if g.zero in (e1, e2) or e1 == e2:
                # a loop or a doubled arc on a cycle: still a circulant
                degenerate += 1
                if not commutative_2step_is_circulant(M):
                    disagreements += 1
                continue
            checked += 1
            if commutative_2step_is_circulant(M) != is_circulant_2step(g, [(1, 0), (0, 1)])[0]:
                disagreements += 1
        detail = f"{checked} matrices (+{degenerate} with e1 = e2 or a trivial jump), {disagreements} disagreements"
        return disagreements == 0 and checked > 0, detail

    return _timed(4, "entry formula for G(M; e1, e2) vs 2-step rule", 60.0, body)


# --- 5 -----------------------------------------------------------------


def criterion_5(etas=(1, 2, 3)) -> CheckResult:
    def body():
        bad = []
        for eta in etas:
            for symmetric in (False, True):
                G, C = exceptional_pair(eta, symmetric)
                iso = oracle.graphs_isomorphic(G, C)
                adam = adam_isomorphic(G.group, G.jumps, C.group, C.jumps, symmetric)
                if not iso or adam:
                    bad.append((eta, symmetric, iso, adam))
        return not bad, f"eta in {tuple(etas)}, both modes: isomorphic and not Adam isomorphic" if not bad else f"failures {bad}"

    return _timed(5, "exceptional family", 60.0, body)


# --- 6 -----------------------------------------------------------------


def criterion_6() -> CheckResult:
    def body():
        dc3 = cycle(3, directed=True)
        k3 = complete(3)
        dim_c = oracle.dimension_bruteforce(cartesian_product(dc3, dc3))
        dim_k = oracle.dimension_bruteforce(cartesian_product(k3, k3))
        closed_c = prime_product_dimension(3, [[1], [1]])
        closed_k = prime_product_dimension(3, [[1, 2], [1, 2]])
        inst = prime_product_instance(3, [[1, 2], [1, 2]], symmetric=True)
        same = oracle.graphs_isomorphic(inst, cartesian_product(k3, k3))
        no_cycle = not oracle.has_regular_cyclic_subgroup(inst)
        ok = dim_c == dim_k == closed_c == closed_k == 2 and same and no_cycle
        return ok, f"brute force C3xC3 -> {dim_c}, K3xK3 -> {dim_k}; closed form {closed_c}, {closed_k}"

    return _timed(6, "products of prime circulants", 300.0, body)


# --- 7 -----------------------------------------------------------------


def criterion_7() -> CheckResult:
    def body():
        k = oracle.dimension_bruteforce(hypercube(3))
        return k == 2, f"dimension of Q3 = {k}"

    return _timed(7, "3-cube dimension", 300.0, body)


# --- 8 -----------------------------------------------------------------


def random_groups(rng: random.Random, count: int, max_order: int, max_n: int = 3, lo: int = -6, hi: int = 6):
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        M = _random_matrix(rng, n, lo, hi)
        D = det(M)
        if D and abs(D) <= max_order:
            out.append(make_group(M))
    return out


def criterion_8(count: int = 200, seed: int = 8) -> CheckResult:
    def body():
        rng = random.Random(seed)
        groups = random_groups(rng, count, 60)
        elements = disagreements = eq9 = 0
        for g in groups:
            for a in g.elements():
                elements += 1
                o = g.element_order(a)
                if o != oracle.element_order_bruteforce(g, a):
                    disagreements += 1
                if g.n == 2:
                    eq9 += 1
                    if element_order_2x2(g.M, a) != o:
                        disagreements += 1
        ok = disagreements == 0
        return ok, f"{len(groups)} groups, {elements} elements, {eq9} 2x2 checks, {disagreements} disagreements"

    return _timed(8, "element order formula vs repeated addition", 60.0, body)


# --- 9 -----------------------------------------------------------------


def criterion_9(count: int = 100, seed: int = 9) -> CheckResult:
    def body():
        rng = random.Random(seed)
        groups = random_groups(rng, count, 24)
        mismatches = disconnected = 0
        for g in groups:
            elems = [e for e in g.elements() if e != g.zero]
            if not elems:
                g = diagonal_group(rng.randint(2, 24))
                elems = [e for e in g.elements() if e != g.zero]
            k = rng.randint(1, min(3, len(elems)))
            A = rng.sample(elems, k)
            if rng.random() < 0.5:
                A = [g.scale(rng.choice([2, 3]), a) for a in A]
                A = [a for a in dict.fromkeys(A) if a != g.zero] or [elems[0]]
            G = build(g, A, rng.random() < 0.5)
            alpha = g.subgroup_index(G.jumps.jumps)
            comps = G.weak_components()
            if alpha != len(comps):
                mismatches += 1
                continue
            try:
                components(G)
            except RuntimeError:
                mismatches += 1
                continue
            if alpha > 1:
                disconnected += 1
                first = G.induced(comps[0])
                if not all(oracle.graphs_isomorphic(first, G.induced(c)) for c in comps[1:]):
                    mismatches += 1
        ok = mismatches == 0 and disconnected > 0
        return ok, f"{len(groups)} instances ({disconnected} disconnected), {mismatches} mismatches"

    return _timed(9, "component count and component isomorphism", 120.0, body)


# --- 10 ----------------------------------------------------------------


def _ground_truth(G) -> dict[tuple[int, int], int]:
    truth = {}
    for u, v in G.edges():
        a, b = G.vertices[u], G.vertices[v]
        diff = [i for i in range(len(a)) if a[i] != b[i]]
        truth[(min(u, v), max(u, v))] = diff[0]
    return truth


def _matches_truth(found: dict, truth: dict, perm: list[int]) -> bool:
    if len(found) != len(truth):
        return False
    inv = {perm[u]: u for u in range(len(perm))}
    mapping: dict[int, int] = {}
    for (a, b), d in found.items():
        u, v = inv[a], inv[b]
        t = truth[(min(u, v), max(u, v))]
        if mapping.setdefault(d, t) != t:
            return False
    return len(set(mapping.values())) == len(mapping)


def criterion_10(seed: int = 10) -> CheckResult:
    def body():
        rng = random.Random(seed)
        cases = failures = 0
        for p in (3, 5):
            for n in (2, 3):
                for kind in ("C", "directed C", "K"):
                    factor = {"C": cycle(p), "directed C": cycle(p, directed=True), "K": complete(p)}[kind]
                    G = factor
                    for _ in range(n - 1):
                        G = cartesian_product(G, factor)
                    perm = list(range(G.n))
                    rng.shuffle(perm)
                    bare = Graph.from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()], G.directed)
                    truth = _ground_truth(G)
                    rules = ("odd-cycle", "neighbourhood") if kind == "K" else ("odd-cycle",)
                    for rule in rules:
                        cases += 1
                        try:
                            part = detect_directions(bare, p, rule)
                        except Exception:
                            failures += 1
                            continue
                        if part.n_directions != n or not _matches_truth(part.direction_of_edge, truth, perm):
                            failures += 1
        return failures == 0, f"{cases} relabelled product instances, {failures} failures"

    return _timed(10, "direction recovery on C_p^n and K_p^n", 120.0, body)


# --- 11 ----------------------------------------------------------------


def normal_form_violations(M: IntMatrix, rng: random.Random) -> list[str]:
    out = []
    n = M.rows
    hd = hermite_normal_form(M)
    H = hd.H
    if M @ hd.V != H or abs(det(hd.V)) != 1:
        out.append("M V != H or V not unimodular")
    for i in range(n):
        if H[i, i] <= 0:
            out.append("non-positive HNF diagonal")
        for j in range(n):
            if j < i and H[i, j] != 0:
                out.append("HNF not upper triangular")
            if j > i and not 0 <= H[i, j] < H[i, i]:
                out.append("HNF residue out of range")
    sd = smith_normal_form(M)
    s = sd.factors
    if sd.U @ M @ sd.V != sd.S or abs(det(sd.U)) != 1 or abs(det(sd.V)) != 1:
        out.append("U M V != S or transforms not unimodular")
    if sd.S != IntMatrix.diag(*s) or any(x <= 0 for x in s):
        out.append("S not a positive diagonal")
    if any(s[i + 1] % s[i] for i in range(n - 1)):
        out.append("divisibility chain broken")
    if n <= 4 and determinantal_divisors(M, "minors") != sd.divisors:
        out.append("minor gcds disagree with invariant factors")
    P, Q = _random_unimodular(rng, n), _random_unimodular(rng, n)
    if hermite_normal_form(M @ Q).H != H:
        out.append("HNF changed under right unimodular multiplication")
    if hermite_normal_form(H).H != H:
        out.append("HNF not idempotent")
    if smith_normal_form(P @ M @ Q).S != sd.S:
        out.append("SNF changed under unimodular equivalence")
    return out


def criterion_11(count: int = 500, seed: int = 11) -> CheckResult:
    def body():
        rng = random.Random(seed)
        done = 0
        violations = []
        while done < count:
            M = _random_matrix(rng, rng.randint(1, 5), -9, 9)
            if det(M) == 0:
                continue
            done += 1
            v = normal_form_violations(M, rng)
            if v:
                violations.append((M, v))
        detail = f"{done} matrices, {len(violations)} with violations"
        if violations:
            detail += f"; first {violations[0][0]}: {violations[0][1]}"
        return not violations, detail

    return _timed(11, "HNF/SNF invariants on random matrices", 60.0, body)


CRITERIA: dict[int, Callable[[], CheckResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_all(selected=None, echo: Callable[[str], None] | None = None) -> list[CheckResult]:
    results = []
    for k in selected or sorted(CRITERIA):
        r = CRITERIA[k]()
        if echo:
            echo(r.line())
        results.append(r)
    return results
