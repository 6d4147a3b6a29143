"""Decision procedures: Condition (K), the simplicity sufficiency test, strong
grading, unitality, and the aggregate structure report."""

from __future__ import annotations

from dataclasses import dataclass, field

from .paths import InfinitePath
from .ultragraph import (FirstReturnVerdict, Ultragraph, bits, cycle_exits, edge_cycle,
                         first_return, generate_G0, reachable_from, regular_vertices, sinks)


@dataclass(frozen=True)
class ConditionK:
    holds: bool
    verdicts: dict            # vertex -> FirstReturnVerdict
    witnesses: tuple = ()     # vertices with exactly one first-return path


def condition_K(U: Ultragraph) -> ConditionK:
    verdicts = {v: first_return(U, v) for v in range(U.n_vertices)}
    bad = tuple(v for v, fr in verdicts.items() if fr.kind == "one")
    return ConditionK(not bad, verdicts, bad)


def connects_to_all_infinite(U: Ultragraph, v: int) -> tuple[bool, InfinitePath | None]:
    """Whether ``v`` connects to every infinite path; otherwise a periodic
    infinite path none of whose edge sources is reachable from ``v``."""
    W = reachable_from(U, v)
    outside = [e for e in range(U.n_edges) if not (W >> U.src[e]) & 1]
    cyc = edge_cycle(U, outside)
    if cyc is None:
        return True, None
    return False, InfinitePath.periodic((), cyc)


@dataclass(frozen=True)
class SimplicityVerdict:
    status: str                      # "true", "inconclusive" or "not_applicable"
    failures: tuple = ()             # (condition, detail) pairs
    notes: tuple = ()

    def failed(self, condition: str) -> bool:
        return any(c == condition for c, _ in self.failures)


def simplicity_sufficient(U: Ultragraph) -> SimplicityVerdict:
    """Sufficient test for simplicity; never concludes "not simple"."""
    if U.has_sinks():
        return SimplicityVerdict("not_applicable", notes=("the criterion assumes no sinks",))
    failures = []
    ck = condition_K(U)
    if not ck.holds:
        failures.append(("K", {"vertices": ck.witnesses,
                               "paths": tuple(ck.verdicts[v].witnesses[0] for v in ck.witnesses)}))
    for v in range(U.n_vertices):
        ok, cex = connects_to_all_infinite(U, v)
        if not ok:
            failures.append(("2", {"vertex": v, "path": cex}))
            break
    notes = ("condition (3) holds vacuously: a finite ultragraph has no infinite emitters",)
    if failures:
        return SimplicityVerdict("inconclusive", tuple(failures), notes)
    return SimplicityVerdict("true", (), notes)


# -- strong grading ------------------------------------------------------------------

@dataclass(frozen=True)
class StrongGradingVerdict:
    status: str                  # "true" or "not_applicable_sinks"
    detail: tuple = ()


def strongly_graded(U: Ultragraph) -> StrongGradingVerdict:
    """For finite ultragraphs without sinks the algebra is strongly graded.

    Condition (1) holds since there are no infinite emitters.  For (2): an
    infinite path p in a finite graph repeats some edge, so past its first
    repetition each edge e_n lies on a cycle, and winding that cycle backwards
    gives paths of every length >= 1 ending in e_n; take x = tau_{<=n}(p) and
    y of length n + k with r(y) = r(e_n).
    """
    if U.has_sinks():
        return StrongGradingVerdict("not_applicable_sinks",
                                    ("the criterion assumes no sinks",))
    return StrongGradingVerdict("true", (
        "condition (1) holds vacuously: no infinite emitters",
        "condition (2) holds: every eventual edge of an infinite path ends paths of all lengths >= 1",
    ))


def length_sets(U: Ultragraph, horizon: int) -> dict[int, set[int]]:
    """For each edge range set R, the lengths l in [1, horizon] of paths y with r(y) = R."""
    ends = {e: {1} for e in range(U.n_edges)}
    layer = {e for e in range(U.n_edges)}
    for length in range(2, horizon + 1):
        nxt = {f for f in range(U.n_edges)
               if any((U.rng[e] >> U.src[f]) & 1 for e in layer)}
        for f in nxt:
            ends[f].add(length)
        layer = nxt
    out: dict[int, set[int]] = {}
    for e, ls in ends.items():
        out.setdefault(U.rng[e], set()).update(ls)
    return out


def periodic_paths(U: Ultragraph, bound: int):
    """All canonical eventually periodic infinite paths with preperiod + period <= bound."""
    from itertools import product
    seen = set()
    E = range(U.n_edges)
    for total in range(1, bound + 1):
        for word in product(E, repeat=total):
            for split in range(total):
                pre, cyc = word[:split], word[split:]
                if not U.is_path(pre + cyc + cyc):
                    continue
                p = InfinitePath.periodic(pre, cyc)
                if p not in seen:
                    seen.add(p)
                    yield p


@dataclass(frozen=True)
class BoundedReport:
    passed: bool
    checked: int                  # (word, k) pairs examined by the search
    failures: tuple = ()          # (path, k)
    witnesses: tuple = ()         # (prefix, k, n, |y|): every path starting with prefix passes at k


def bounded_condition2(U: Ultragraph, k_max: int, witness_bound: int) -> BoundedReport:
    """Check condition (2) of the strong-grading criterion for k <= k_max on all
    eventually periodic paths with preperiod + period <= witness_bound.

    An initial subpath x = tau_{<=n}(p) has n >= 1 and r(x) = r(e_n); the
    condition asks for a path y with |y| = n + k and r(y) = r(e_n).  Words are
    grown letter by letter; once position n of the word admits such a y every
    path through that word passes, so only words failing at every position so
    far are extended, and each of their (prefix, cycle) splits is checked out to
    position witness_bound + |E| + 1.
    """
    n_max = witness_bound + U.n_edges + 1
    L = length_sets(U, n_max + k_max)

    def good(e: int, n: int, k: int) -> bool:
        return n + k in L.get(U.rng[e], ())

    failures, witnesses = {}, []
    checked = 0
    for k in range(1, k_max + 1):
        stack = [()]
        while stack:
            w = stack.pop()
            for split in range(len(w)):
                pre, cyc = w[:split], w[split:]
                if not (U.rng[cyc[-1]] >> U.src[cyc[0]]) & 1:
                    continue
                checked += 1
                p = InfinitePath.periodic(pre, cyc)
                if not any(good(p.letter(n - 1), n, k) for n in range(len(w) + 1, n_max + 1)):
                    failures.setdefault((p, k), None)
            if len(w) == witness_bound:
                continue
            nxt = [e for e in range(U.n_edges) if not w or (U.rng[w[-1]] >> U.src[e]) & 1]
            for e in nxt:
                checked += 1
                n = len(w) + 1
                if good(e, n, k):
                    if len(witnesses) < 20:
                        witnesses.append((w + (e,), k, n, n + k))
                else:
                    stack.append(w + (e,))
    return BoundedReport(not failures, checked, tuple(failures), tuple(witnesses))


def is_unital(U: Ultragraph) -> bool:
    return U.all_vertices in generate_G0(U)


# -- aggregate report ----------------------------------------------------------------------

@dataclass
class StructureReport:
    sinks: list
    regular: list
    condition_k: ConditionK
    simplicity: SimplicityVerdict
    strong: StrongGradingVerdict
    unital: bool
    cycles: list = field(default_factory=list)     # (cycle word, exits)


def simple_cycles(U: Ultragraph) -> list[tuple]:
    """Edge cycles (as words, least rotation, no repeated edge) in index order."""
    from .paths import least_rotation
    out = set()

    def dfs(start, word, used):
        last = word[-1]
        if (U.rng[last] >> U.src[start]) & 1:
            out.add(least_rotation(tuple(U.edge_names[e] for e in word)))
        for f in range(U.n_edges):
            if f not in used and f > start and (U.rng[last] >> U.src[f]) & 1:
                used.add(f)
                word.append(f)
                dfs(start, word, used)
                word.pop()
                used.discard(f)

    for e in range(U.n_edges):
        dfs(e, [e], {e})
    return sorted(tuple(U.e(n) for n in c) for c in out)


def report(U: Ultragraph) -> StructureReport:
    cycles = [(c, cycle_exits(U, c)) for c in simple_cycles(U)]
    return StructureReport(
        sinks=U.vnames(sinks(U)),
        regular=U.vnames(regular_vertices(U)),
        condition_k=condition_K(U),
        simplicity=simplicity_sufficient(U),
        strong=strongly_graded(U),
        unital=is_unital(U),
        cycles=cycles,
    )


def report_dict(U: Ultragraph, rep: StructureReport) -> dict:
    """Machine-readable form with stable key names."""
    def word(w):
        return list(U.wnames(w))

    def path(p):
        return {"prefix": word(p.prefix), "cycle": word(p.cycle)}

    ck = rep.condition_k
    fr = {U.vertex_names[v]: {"count": vd.count, "witnesses": [word(w) for w in vd.witnesses]}
          for v, vd in ck.verdicts.items()}
    simp = {"status": rep.simplicity.status, "failures": [], "notes": list(rep.simplicity.notes)}
    for cond, detail in rep.simplicity.failures:
        if cond == "K":
            simp["failures"].append({"condition": "K",
                                     "vertices": [U.vertex_names[v] for v in detail["vertices"]],
                                     "paths": [word(w) for w in detail["paths"]]})
        else:
            simp["failures"].append({"condition": "2", "vertex": U.vertex_names[detail["vertex"]],
                                     "path": path(detail["path"])})
    return {
        "sinks": rep.sinks,
        "regular_vertices": rep.regular,
        "condition_k": {"holds": ck.holds, "first_return": fr,
                        "witnesses": [U.vertex_names[v] for v in ck.witnesses]},
        "simplicity_sufficient": simp,
        "strongly_graded": {"status": rep.strong.status, "detail": list(rep.strong.detail)},
        "unital": rep.unital,
        "cycles": [{"cycle": word(c), "exits": [{"index": x.index, "kind": x.kind,
                                                  "item": U.edge_names[x.item] if x.kind == "edge"
                                                  else U.vertex_names[x.item]} for x in ex]}
                   for c, ex in rep.cycles],
    }


def report_text(U: Ultragraph, rep: StructureReport) -> str:
    d = report_dict(U, rep)
    lines = [f"sinks: {', '.join(d['sinks']) or '-'}",
             f"regular vertices: {', '.join(d['regular_vertices']) or '-'}"]
    ck = d["condition_k"]
    lines.append(f"condition (K): {'holds' if ck['holds'] else 'fails'}")
    for v, info in ck["first_return"].items():
        ws = "; ".join(" ".join(w) for w in info["witnesses"])
        lines.append(f"  first-return paths at {v}: {info['count']}" + (f" ({ws})" if ws else ""))
    s = d["simplicity_sufficient"]
    lines.append(f"simplicity (sufficient test): {s['status']}")
    for f in s["failures"]:
        if f["condition"] == "K":
            lines.append(f"  condition (1) fails: unique first-return path at {', '.join(f['vertices'])}")
        else:
            p = f["path"]
            lines.append(f"  condition (2) fails: {f['vertex']} does not connect to "
                         f"{','.join(p['prefix'])}|{','.join(p['cycle'])}")
    for n in s["notes"]:
        lines.append(f"  note: {n}")
    lines.append(f"strongly graded: {d['strongly_graded']['status']}")
    lines.append(f"unital: {'yes' if d['unital'] else 'no'}")
    for c in d["cycles"]:
        ex = ", ".join(f"{x['kind']} {x['item']}@{x['index']}" for x in c["exits"]) or "none"
        lines.append(f"cycle {' '.join(c['cycle'])}: exits {ex}")
    return "\n".join(lines) + "\n"
