"""One report-producing function per verifiable statement, plus the suite.

The CLI is a thin argparse layer over this module; tests call these
functions directly.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import Callable

import numpy as np

from . import properties
from .config import LIMITS, Limits
from .errors import UsageError
from .field import as_field
from .invariants import (
    dickson_Q,
    dickson_Q0_formula,
    dickson_Q_chi,
    lemma_vn_sides,
    lines_product_matches_dickson,
    projective_points,
)
from .quotient_ring import (
    cuspidal_dim,
    embedding_kernel_check,
    gamma_fixed_check,
    hilbert_series,
    ideal_rel_check,
    mechanism_check,
    p_stable,
    quot_agreement,
    ring_R,
    spike_check,
    top_degree,
    top_indecomposable_check,
    top_spanning_check,
)
from .report import VerificationReport
from .simplicial import (
    build_affine_K,
    build_delta,
    check_matroid_exchange,
    check_matroid_exchange_pairwise,
    dual_euler_relation,
    f_vector,
    facet_count_formula,
    reduced_euler,
    sr_generators,
)
from .steenrod import quot_dim
from .steenrod2 import bg2n_count, bg_dims, decomposition_check, mahowald_check

PAIRWISE_CAP = 10
TUPLES_MAIN = ((2, 2, 1), (2, 2, 2), (3, 2, 1), (3, 2, 2), (2, 3, 1), (2, 3, 2))
TUPLES_KERNEL = ((2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1))
LEMMA_VN_TUPLES = ((2, 0, 1, 2), (2, 0, 1, 3), (2, 1, 1, 2), (2, 1, 1, 3), (3, 0, 1, 2), (3, 0, 2, 2), (3, 1, 1, 2))


def steinberg_dim(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2)


# --- single statements -------------------------------------------------------


def quot(q: int, n: int, deg_from: int, deg_to: int) -> VerificationReport:
    F = as_field(q)
    if n < 1 or deg_from < 0 or deg_to < deg_from:
        raise UsageError("need n >= 1 and 0 <= deg-from <= deg-to")
    rep = VerificationReport("quot", {"q": F.q, "n": n, "deg_from": deg_from, "deg_to": deg_to})
    rep.table(f"dim Quot^m F_{F.q}[x_1..x_{n}]", ("m", "dim"), [(m, quot_dim(n, m, F)) for m in range(deg_from, deg_to + 1)])
    return rep


def main1(q: int, n: int, k: int) -> VerificationReport:
    F = as_field(q)
    _check_k(F.q, k)
    r = ring_R(n, F, k)
    d = r.top_degree
    rep = VerificationReport("verify main1", {"q": F.q, "n": n, "k": k})
    rep.check("dim R^d", steinberg_dim(n, F.q), r.dim(d))
    rep.check("dim R^(d+1)", 0, r.dim(d + 1))
    agree = quot_agreement(r)
    rep.check("dim Quot^m R = dim Quot^m Sym for m <= d", [a for _, a, _ in agree], [b for _, _, b in agree])
    a, b = top_indecomposable_check(r)
    rep.check("P^i(R^(d-i(q-1))) = 0 in R^d", True, a)
    rep.check("chi(P^i) kills R^e when e + q i > d", True, b)
    rep.check("frames span R^d", True, top_spanning_check(r, k))
    rep.check("I(V*,k) is P-stable", True, p_stable(r.ideal, d + 1))
    rep.check("gamma fixed by the twisted idempotent", True, gamma_fixed_check(n, F, k, r))
    rep.check("f V_n^k hit below the top", True, mechanism_check(n, F, k))
    rep.table(
        f"R(V*,{k}) over F_{F.q}, n={n}, d={d}",
        ("m", "dim R^m", "Quot^m Sym", "Quot^m R"),
        [(m, r.dim(m), s, t) for m, s, t in agree],
    )
    return rep


def cuspidal(q: int, n: int) -> VerificationReport:
    F = as_field(q)
    if n < 2:
        raise UsageError("need n >= 2")
    c = cuspidal_dim(n, F)
    rep = VerificationReport("verify cuspidal", {"q": F.q, "n": n})
    rep.check(f"dim Quot^{c.degree} Sym", c.target, c.quot_dim)
    rep.check(f"dim (Sym/I)^{c.degree}", c.target, c.dim_top)
    rep.check("Quot of Sym and Sym/I agree below the top", True, c.quot_agree)
    rep.check("(Sym/I) vanishes above the top", True, c.vanishes_above)
    rep.check("I + (y) = I(W, q-1) + (y) for y in E", True, c.affine_rel)
    rep.table("cuspidal summary", ("degree", "target", "dim Quot", "dim Sym/I"), [(c.degree, c.target, c.quot_dim, c.dim_top)])
    return rep


def decomposition(n: int) -> VerificationReport:
    d = decomposition_check(n)
    rep = VerificationReport("verify decomposition", {"n": n})
    rep.check("combinatorial path = Brown-Gitler path", d.bg_path, d.combinatorial_path)
    rep.check("idempotent path = Brown-Gitler path", d.bg_path, d.idempotent_path)
    rep.check("chi(Sq^i)(alpha_j) = 0 for 2i > 2^j - 1", True, d.relations_hold)
    rep.check("generators fixed by st_n", True, d.generators_fixed)
    rep.check("generators span the st_n image", True, d.generation_holds)
    rep.check("Steinberg-tuple classes independent", True, d.independence_holds)
    rep.table(
        f"R_{{{n},2}} st_{n} by degree",
        ("m", "Brown-Gitler", "tuples", "idempotent"),
        [(m, a, b, c) for m, (a, b, c) in enumerate(zip(d.bg_path, d.combinatorial_path, d.idempotent_path))],
    )
    return rep


def lemma_vn(q: int, s: int, r: int, n: int, sign: str = "derived") -> VerificationReport:
    lhs, rhs = lemma_vn_sides(q, s, r, n, sign=sign)
    rep = VerificationReport("verify lemma-vn", {"q": q, "s": s, "r": r, "n": n, "sign": sign})
    rep.check("product of V^(q^s) = signed antipode sum", True, lhs == rhs)
    rep.table("sides", ("side", "terms", "degree"), [("lhs", len(lhs.terms), lhs.degree()), ("rhs", len(rhs.terms), rhs.degree())])
    return rep


def ideal_rel(q: int, n: int, k: int, ys=None) -> VerificationReport:
    F = as_field(q)
    _check_k(F.q, k)
    lines = [tuple(y) for y in ys] if ys else list(projective_points(n, F))
    rep = VerificationReport("verify ideal-rel", {"q": F.q, "n": n, "k": k, "y": [list(y) for y in lines]})
    rows = []
    for y in lines:
        ok = ideal_rel_check(n, F, k, y)
        rep.check(f"I + (y^k) = I(W, qk) + (y^k), y={list(y)}", True, ok)
        rows.append((list(y), ok))
    ok1, ok2 = embedding_kernel_check(n, F, k)
    rep.check("intersection of I + (u^k) over lines is I", True, ok1)
    rep.check("intersection of (u^k) over lines is (L^k)", True, ok2)
    rep.table("ideal relation by line", ("y", "holds"), rows)
    return rep


def dickson(q: int, m: int) -> VerificationReport:
    F = as_field(q)
    rep = VerificationReport("verify dickson", {"q": F.q, "m": m})
    rows = []
    for j in range(m + 1):
        Q = dickson_Q(m, j, F)
        rep.check(f"Q_{{{m},{j}}} = antipode sum", True, Q == dickson_Q_chi(m, j, F))
        rep.check(f"Q_{{{m},{j}}} = unshortened antipode sum", True, Q == dickson_Q_chi(m, j, F, simplified=False))
        rows.append((j, Q.degree(), len(Q.terms)))
    rep.check(f"Q_{{{m},0}} = chi(P^top)(e_m)", True, dickson_Q(m, 0, F) == dickson_Q0_formula(m, F))
    rep.check("product of lines proportional to L_m", True, lines_product_matches_dickson(m, F))
    rep.table(f"Q_{{{m},j}} over F_{F.q}", ("j", "degree", "terms"), rows)
    return rep


def _complex(kind: str, q: int, n: int, k: int):
    if kind == "delta":
        return build_delta(n, q, k)
    if kind == "affine":
        return build_affine_K(n, q)
    raise UsageError(f"unknown complex {kind!r}")


def matroid(q: int, n: int, k: int = 1, kind: str = "delta") -> VerificationReport:
    c = _complex(kind, q, n, k)
    params = {"q": q, "n": n, "complex": kind} | ({"k": k} if kind == "delta" else {})
    rep = VerificationReport("verify matroid", params)
    rep.check("exchange property (subset DP)", True, check_matroid_exchange(c))
    if c.vertex_count <= PAIRWISE_CAP:
        rep.check("exchange property (pairwise)", True, check_matroid_exchange_pairwise(c))
    fh = f_vector(c, "brute")
    rep.check("h-vector nonnegative", True, all(x >= 0 for x in fh.h))
    if kind == "delta":
        holds, hd, chi = dual_euler_relation(c)
        rep.check("h_d = (-1)^(|S|-d) chi~(dual)", True, holds)
        rep.check("stored and derived minimal non-faces", sr_generators(c, "brute"), sr_generators(c))
    rep.table("complex", ("vertices", "dim", "f", "h"), [(c.vertex_count, c.dim, list(fh.f), list(fh.h))])
    return rep


def hvector(q: int, n: int, k: int, ring: bool = True) -> VerificationReport:
    F = as_field(q)
    _check_k(F.q, k)
    c = build_delta(n, F, k)
    mob = f_vector(c, "mobius")
    rep = VerificationReport("verify hvector", {"q": F.q, "n": n, "k": k})
    rep.check("h_top", steinberg_dim(n, F.q), mob.h[-1])
    rep.check("facets = sum h", facet_count_formula(n, F, k), sum(mob.h))
    if c.vertex_count <= LIMITS.max_brute_vertices:
        brute = f_vector(c, "brute")
        rep.check("f-vector, Mobius = brute force", list(brute.f), list(mob.f))
        rep.check("reduced Euler characteristic", reduced_euler(c, brute), reduced_euler(c, mob))
    if ring:
        r = ring_R(n, F, k)
        rep.check("Hilbert series of R = h-vector", list(mob.h), hilbert_series(r, top_degree(n, F.q, k)))
    rep.table("f and h", ("i", "f_(i-1)", "h_i"), [(i, mob.f[i - 1] if i else 1, h) for i, h in enumerate(mob.h)])
    return rep


def chi_trick(cases: int = 200, seed: int = 0) -> VerificationReport:
    rng = np.random.default_rng(seed)
    rep = VerificationReport("verify chi-trick", {"cases": cases, "seed": seed})
    rep.check("failed cases", 0, properties.chi_trick_failures(rng, cases))
    return rep


def spike(q: int, m: int, r: int) -> VerificationReport:
    F = as_field(q)
    binom_ok, linalg_ok = spike_check(F, m, r)
    rep = VerificationReport("verify spike", {"q": F.q, "m": m, "r": r})
    rep.check("no P^(p^a) reaches the spike (binomials)", True, binom_ok)
    rep.check("dim Quot in the spike degree is 1", True, linalg_ok)
    return rep


def _check_k(q: int, k: int) -> None:
    if k < 1:
        raise UsageError(f"need k >= 1, got {k}")


# --- the acceptance battery --------------------------------------------------


def _c01():
    rep = VerificationReport("c01")
    for n, deg in ((2, 1), (3, 4), (4, 11)):
        rep.check(f"q=2 n={n} dim Quot^{deg}", steinberg_dim(n, 2), quot_dim(n, deg, 2))
    return rep


def _c02():
    rep = VerificationReport("c02")
    for n, k in ((2, 1), (2, 2), (3, 1)):
        deg = k * (3**n - 1) // 2 - n
        rep.check(f"q=3 n={n} k={k} dim Quot^{deg}", steinberg_dim(n, 3), quot_dim(n, deg, 3))
    return rep


def _c03():
    rep = VerificationReport("c03")
    for n, q, k in TUPLES_MAIN:
        r = ring_R(n, q, k)
        d = r.top_degree
        rep.check(f"{(n, q, k)} dim R^d", steinberg_dim(n, q), r.dim(d))
        rep.check(f"{(n, q, k)} dim R^(d+1)", 0, r.dim(d + 1))
    return rep


def _c04():
    rep = VerificationReport("c04")
    for n, q, k in TUPLES_MAIN:
        agree = quot_agreement(ring_R(n, q, k))
        rep.check(f"{(n, q, k)} Quot Sym = Quot R", [a for _, a, _ in agree], [b for _, _, b in agree])
    return rep


def _c05():
    rep = VerificationReport("c05")
    for n, q, k in TUPLES_MAIN:
        rep.check(f"{(n, q, k)} top indecomposable (a, b)", [True, True], list(top_indecomposable_check(ring_R(n, q, k))))
    return rep


def _c06():
    rep = VerificationReport("c06")
    for n, q in ((3, 2), (4, 2), (3, 3)):
        rep.extend(cuspidal(q, n), f"{(n, q)}")
    return rep


def _c07():
    rep = VerificationReport("c07")
    for n, q, k in TUPLES_MAIN:
        rep.extend(hvector(q, n, k), f"{(n, q, k)}")
    return rep


def _c08():
    rep = VerificationReport("c08")
    for n, q, k in TUPLES_MAIN:
        rep.extend(matroid(q, n, k, "delta"), f"Delta{(n, q, k)}")
    for n, q in ((3, 2), (2, 3)):
        rep.extend(matroid(q, n, 1, "affine"), f"K{(n, q)}")
    return rep


def _c09():
    rep = VerificationReport("c09")
    for t in LEMMA_VN_TUPLES:
        rep.extend(lemma_vn(*t), f"(q,s,r,n)={t}")
    return rep


def _c10():
    rep = VerificationReport("c10")
    for n, q, k in TUPLES_KERNEL:
        rep.extend(ideal_rel(q, n, k), f"{(n, q, k)}")
    return rep


def _c11():
    rep = VerificationReport("c11")
    for q in (2, 3):
        for m in (2, 3):
            rep.extend(dickson(q, m), f"q={q} m={m}")
    return rep


def _c12(ns=(1, 2, 3)):
    rep = VerificationReport("c12")
    for n in ns:
        rep.extend(decomposition(n), f"n={n}")
    return rep


def _c12_full():
    return _c12((1, 2, 3, 4))


def _c13():
    rep = VerificationReport("c13")
    for j in (1, 2, 3):
        rep.check(f"Mahowald sequence j={j} (cap 12)", True, mahowald_check(j, 12))
    for n in (1, 2, 3):
        cap = 2**n
        rep.check(f"dim BG({2**n}) = admissible-tuple count", bg2n_count(n, cap), bg_dims(2**n, cap))
    return rep


def _c14():
    rep = VerificationReport("c14")
    rep.check("Cartan formula, failed of 200", 0, properties.cartan_failures(np.random.default_rng(14), 200))
    rep.check("antipode recursion, failed of 200", 0, properties.antipode_failures(np.random.default_rng(15), 200))
    rep.check("chi-trick, failed of 200", 0, properties.chi_trick_failures(np.random.default_rng(16), 200))
    rep.check("field axioms, failures", 0, properties.field_axiom_failures())
    rep.check("byte / bit-packed rank agreement, failed of 200", 0, properties.rank_failures(np.random.default_rng(17), 200))
    rep.check("st_n and twists idempotent, failures", 0, properties.idempotent_failures())
    return rep


CRITERIA: dict[str, tuple[str, Callable[[], VerificationReport]]] = {
    "c01": ("Quot of Sym in the Steinberg degree, q=2", _c01),
    "c02": ("Quot of Sym in the Steinberg degree, q=3", _c02),
    "c03": ("top degree of R and vanishing above", _c03),
    "c04": ("Quot of R agrees with Quot of Sym", _c04),
    "c05": ("top class indecomposable", _c05),
    "c06": ("cuspidal dimension and affine quotient", _c06),
    "c07": ("Hilbert series = h-vector", _c07),
    "c08": ("matroid exchange property", _c08),
    "c09": ("V-product antipode identity", _c09),
    "c10": ("ideal relation and embedding kernels", _c10),
    "c11": ("Dickson invariants via antipodes", _c11),
    "c12": ("Steinberg summand of R_{n,2}", _c12),
    "c13": ("Brown-Gitler dimension bookkeeping", _c13),
    "c14": ("randomized property suites", _c14),
}

PROFILES = ("fast", "full")


def _run_criterion(job: tuple[str, str, dict]) -> tuple[VerificationReport, int]:
    key, profile, limits = job
    for name, value in limits.items():
        setattr(LIMITS, name, value)
    fn = _c12_full if key == "c12" and profile == "full" else CRITERIA[key][1]
    t0 = time.perf_counter()
    rep = fn()
    return rep, int((time.perf_counter() - t0) * 1000)


def suite(profile: str = "fast", threads: int = 1, only=None, timing: bool = True) -> VerificationReport:
    if profile not in PROFILES:
        raise UsageError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    keys = list(only) if only else list(CRITERIA)
    unknown = [k for k in keys if k not in CRITERIA]
    if unknown:
        raise UsageError(f"unknown criteria {unknown}")
    jobs = [(k, profile, asdict(LIMITS)) for k in keys]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_run_criterion, jobs))
    else:
        results = [_run_criterion(j) for j in jobs]
    rep = VerificationReport("suite", {"profile": profile} | ({"only": keys} if only else {}))
    rows = []
    for key, (sub, ms) in zip(keys, results):
        rep.extend(sub, key)
        row = [key, CRITERIA[key][0], len(sub.checks), sum(c.passed for c in sub.checks), "PASS" if sub.passed else "FAIL"]
        rows.append(row + [ms] if timing else row)
    cols = ["criterion", "statement", "checks", "passed", "status"] + (["ms"] if timing else [])
    rep.table(f"acceptance battery ({profile})", cols, rows)
    return rep


__all__ = [
    "CRITERIA",
    "Limits",
    "chi_trick",
    "cuspidal",
    "decomposition",
    "dickson",
    "hvector",
    "ideal_rel",
    "lemma_vn",
    "main1",
    "matroid",
    "quot",
    "spike",
    "suite",
]
