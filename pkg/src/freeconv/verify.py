"""Verification suites for the combinatorial layer, plus the suite dispatcher.

The series-level suites live next to the code they exercise
(transforms.verify_transform_identities, freeprob.verify_freeprob_identities);
this module adds the two purely structural suites and run_suite(), which the
command line calls.  Every suite returns the same report shape::

    {"suite", "checks": [{"id", "statement", "status", "params", ...}],
     "seed", "order", "dim", "trials", "status", "elapsed"}
"""

import random
import time

from .algebra import random_element_from
from .catalan import (FAMILIES, NAMED_BIJECTIONS, catalan_iso, family_elements,
                      get_family, named_bijection, verify_diagram)
from .multiseries import operad_eval, random_series, tree_eval, word_action
from .partitions import enumerate_ncp, interleave, kreweras
from .trees import enumerate_trees, rmap, tree_to_text


def _catalan(n):
    row = [1]
    for _ in range(n):
        row.append(sum(a * b for a, b in zip(row, reversed(row))))
    return row[n]


def _recorder(results):
    def record(cid, statement, ok, witness=None, params=None):
        slot = results.setdefault(cid, {"id": cid, "statement": statement,
                                        "status": "pass", "params": params or {}})
        if not ok and slot["status"] == "pass":
            slot["status"] = "fail"
            slot["witness"] = witness
    return record


def _finish(suite, results, started, seed, order, dim, trials):
    checks = list(results.values())
    return {"suite": suite,
            "checks": checks,
            "seed": seed, "order": order, "dim": dim, "trials": trials,
            "status": "pass" if all(c["status"] == "pass" for c in checks)
            else "fail",
            "elapsed": round(time.time() - started, 3)}


def verify_bijection_identities(n_max=6, seed=0):
    """Exhaustive checks on the Catalan families and the maps between them.

    Everything here is deterministic; the seed is only echoed into the
    report so all suites share one shape.
    """
    started = time.time()
    results = {}
    record = _recorder(results)

    for fam in sorted(FAMILIES):
        f = get_family(fam)
        ok, witness = True, None
        for n in range(n_max + 1):
            level = family_elements(fam, n)
            if len(level) != _catalan(n) or len(set(level)) != len(level):
                ok, witness = False, {"n": n, "count": len(level)}
                break
            bad = next((x for x in level
                        if not f.member(x) or f.size(x) != n), None)
            if bad is not None:
                ok, witness = False, {"n": n, "element": str(bad)}
                break
            if n:
                for x in level:
                    a, b = f.decompose(x)
                    if f.compose(a, b) != x or f.size(a) + f.size(b) + 1 != n:
                        ok, witness = False, {"n": n, "element": str(x)}
                        break
                if not ok:
                    break
        if ok:
            # decompose must also invert compose pairwise, not just on the
            # elements the enumeration happened to build
            for k in range(n_max):
                for l in range(n_max - k):
                    for x in family_elements(fam, k):
                        for y in family_elements(fam, l):
                            if f.decompose(f.compose(x, y)) != (x, y):
                                ok = False
                                witness = {"left": str(x), "right": str(y)}
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
        record(f"round-trip-{fam}",
               "levels have Catalan size and compose/decompose invert "
               f"each other for family {fam!r}",
               ok, witness, {"n_max": n_max})

    for name, (src, dst) in sorted(NAMED_BIJECTIONS.items()):
        target = get_family(dst)
        ok, witness = True, None
        for n in range(n_max + 1):
            level = family_elements(src, n)
            images = [named_bijection(name, x) for x in level]
            bad = next((i for i, z in enumerate(images)
                        if not target.member(z) or target.size(z) != n), None)
            if bad is not None:
                ok = False
                witness = {"n": n, "input": str(level[bad]),
                           "image": str(images[bad])}
                break
            if set(images) != set(family_elements(dst, n)):
                ok, witness = False, {"n": n, "reason": "not onto the level"}
                break
            back = next((i for i, z in enumerate(images)
                         if catalan_iso(dst, src, z) != level[i]), None)
            if back is not None:
                ok = False
                witness = {"n": n, "input": str(level[back]),
                           "reason": "inverse does not return"}
                break
        record(f"bijection-{name}",
               f"{name}: {src} -> {dst} is a size-preserving bijection "
               "with inverse recovered through the composition structure",
               ok, witness, {"n_max": n_max})

    for diagram_id in (1, 2, 3):
        ok, witness, statement = True, None, ""
        for n in range(n_max + 1):
            report = verify_diagram(diagram_id, n)
            statement = report["statement"]
            if report["status"] != "pass":
                ok, witness = False, report["witness"]
                break
        record(f"diagram-{diagram_id}", statement, ok, witness,
               {"n_max": n_max})

    ok, witness = True, None
    for n in range(min(n_max, 5) + 1):
        doubled = {named_bijection("phi", rmap(t)) for t in enumerate_trees(n)}
        paired = {interleave(p, kreweras(p)) for p in enumerate_ncp(n)}
        if doubled != paired:
            ok, witness = False, {"n": n}
            break
    record("phi-rmap-interleave-image",
           "{phi(rmap(t))} == {interleave(P, K(P))} as sets at every size",
           ok, witness, {"n_max": min(n_max, 5)})

    witness = None
    for t in enumerate_trees(2):
        p = named_bijection("phi", t)
        if named_bijection("phi", rmap(t)) != interleave(p, kreweras(p)):
            witness = {"tree": tree_to_text(t)}
            break
    record("phi-rmap-not-pointwise",
           "phi(rmap(t)) != interleave(phi(t), K(phi(t))) for some size-2 t",
           witness is not None, None, {"n": 2})

    ok, witness = True, None
    for n in range(n_max + 1):
        level = enumerate_ncp(n)
        for p in level:
            if kreweras(p) != catalan_iso("ncp2", "ncp1", p):
                ok, witness = False, {"n": n, "partition": str(p)}
                break
        if not ok:
            break
        if set(kreweras(kreweras(p)) for p in level) != set(level):
            ok, witness = False, {"n": n, "reason": "K o K not onto"}
            break
    record("kreweras-dual-path",
           "kreweras(P) == catalan_iso('ncp2', 'ncp1', P) and K o K "
           "permutes every level",
           ok, witness, {"n_max": n_max})

    return _finish("bijections", results, started, seed, n_max, None, None)


def verify_operad_identities(N=5, d=2, trials=5, seed=0):
    """Check the word recursion against direct tree evaluation.

    For series of the shape identity * multiplicative, evaluating a tree
    vertex by vertex agrees with flattening the tree into a word of the
    tensor algebra first; the word action also satisfies three mixed
    associativity laws with concatenation.
    """
    rng = random.Random(seed)
    started = time.time()
    results = {}
    record = _recorder(results)

    for trial in range(trials):
        params = {"trial": trial}
        f = random_series(rng, d, N, "gi", bound=2)

        for n in range(1, N + 1):
            for t in enumerate_trees(n):
                args = tuple(random_element_from(rng, 2, d) for _ in range(n))
                lhs = operad_eval(f, t, args)
                rhs = tree_eval(f, t, args)
                record("word-recursion",
                       "operad_eval(f, t, xs) == tree_eval(f, t, xs) for "
                       "every tree",
                       lhs == rhs,
                       {"tree": tree_to_text(t), "n": n}, params)

        u = tuple(random_element_from(rng, 2, d)
                  for _ in range(rng.randint(1, N)))
        v = tuple(random_element_from(rng, 2, d)
                  for _ in range(rng.randint(1, N)))
        w = tuple(random_element_from(rng, 2, d)
                  for _ in range(rng.randint(1, N)))
        record("action-associative",
               "word_action(f, word_action(f, u, v), w) == "
               "word_action(f, u, word_action(f, v, w))",
               word_action(f, word_action(f, u, v), w)
               == word_action(f, u, word_action(f, v, w)),
               {"lengths": [len(u), len(v), len(w)]}, params)
        record("concat-associative",
               "(u + v) + w == u + (v + w) on words",
               (u + v) + w == u + (v + w),
               {"lengths": [len(u), len(v), len(w)]}, params)
        record("action-concat",
               "word_action(f, u, v) + w == word_action(f, u, v + w)",
               word_action(f, u, v) + w == word_action(f, u, v + w),
               {"lengths": [len(u), len(v), len(w)]}, params)

    return _finish("operad", results, started, seed, N, d, trials)


def run_suite(name, order=None, dim=None, trials=None, seed=None):
    """Run one named verification suite and return its report dict.

    Unset knobs fall back to each suite's own defaults, so "all" runs
    every suite at its natural strength.
    """
    from .freeprob import sab_search, verify_freeprob_identities
    from .transforms import verify_transform_identities

    seed = 0 if seed is None else seed
    if name == "transforms":
        return verify_transform_identities(N=order or 4, d=dim or 2,
                                           trials=trials or 20, seed=seed)
    if name == "freeprob":
        return verify_freeprob_identities(N=order or 4, d=dim or 2,
                                          trials=trials or 10, seed=seed)
    if name == "bijections":
        return verify_bijection_identities(n_max=order or 6, seed=seed)
    if name == "operad":
        return verify_operad_identities(N=order or 5, d=dim or 2,
                                        trials=trials or 5, seed=seed)
    if name == "sab-search":
        return sab_search(N=order or 4, d=dim or 2,
                          trials=trials or 50, seed=seed)
    if name == "all":
        started = time.time()
        checks = []
        status = "pass"
        for sub in ("transforms", "freeprob", "bijections", "operad"):
            report = run_suite(sub, order, dim, trials, seed)
            if report["status"] != "pass":
                status = "fail"
            for check in report["checks"]:
                checks.append(dict(check, id=f"{sub}:{check['id']}"))
        return {"suite": "all", "checks": checks,
                "seed": seed, "order": order, "dim": dim, "trials": trials,
                "status": status,
                "elapsed": round(time.time() - started, 3)}
    raise ValueError(f"unknown suite {name!r}")
