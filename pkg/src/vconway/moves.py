"""Classical Reidemeister moves on Gauss codes, plus a random diagram generator.

The move engine is the fuzzing backbone: walks made of these moves
preserve the link type, so every polynomial the package computes must
agree (exactly, or up to the documented x-power for raw Z) across a
walk's endpoints.

Moves operate purely on the code.  Moves involving only virtual
crossings never change a Gauss code, so they need no representation;
the detour argument also makes every gap pair usable for a second-move
insertion and both sign choices reachable.  For the third move we
generate the braid-like subset (three crossings pairwise adjacent
along three strands, all signs equal); a sound subset is enough for
fuzzing.

Site encodings (component indices ci, cyclic positions t, gaps g):
  R1_add     (ci, g, over_first, sign)       insert a kink at gap g
  R1_remove  (ci, t)                          window t, t+1 is one crossing's O and U
  R2_add     ((ci1, g1), (ci2, g2), role1, parallel, sign)
  R2_remove  ((ci1, t1), (ci2, t2))           over-window first, under-window second
  R3         ((ci1, t1), (ci2, t2), (ci3, t3), variant)

A gap g means insertion before position g; cyclic gaps are
0 .. len-1 (an empty component has the single gap 0).  A window t
covers positions t and (t+1) mod len.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import (
    CLASSICAL_ROLES,
    Diagram,
    Crossing,
    OVER,
    Passage,
    UNDER,
    FIRST,
    SECOND,
    validate,
)


class MoveError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class MoveEvent:
    kind: str
    site: tuple


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    classical_crossings: int
    components: int
    double_points: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.classical_crossings < 0 or self.double_points < 0:
            raise ValueError("crossing counts must be non-negative")
        if self.components < 1:
            raise ValueError("need at least one component")


# The four kink types, in the canonical order used for factor tables:
# (over_first, sign).
KINK_TYPES: tuple[tuple[bool, int], ...] = ((True, 1), (False, 1), (False, -1), (True, -1))

R3_VARIANTS = ("L+", "R+", "L-", "R-")


def _gaps(comp: tuple) -> range:
    return range(max(len(comp), 1))


def _next_id(d: Diagram) -> int:
    return max(d.crossings, default=0) + 1


def _classical_windows(d: Diagram) -> list[tuple[int, int, Passage, Passage]]:
    """All cyclic windows (ci, t) whose two passages are both classical."""
    out = []
    for ci, comp in enumerate(d.components):
        L = len(comp)
        if L < 2:
            continue
        for t in range(L):
            p, q = comp[t], comp[(t + 1) % L]
            if d.crossings[p.crossing].kind == "x" and d.crossings[q.crossing].kind == "x":
                out.append((ci, t, p, q))
    return out


def _r1_remove_sites(d: Diagram) -> list[tuple]:
    sites = []
    for ci, t, p, q in _classical_windows(d):
        if p.crossing == q.crossing and {p.role, q.role} == set(CLASSICAL_ROLES):
            sites.append((ci, t))
    return sites


def _r2_remove_sites(d: Diagram) -> list[tuple]:
    wins = _classical_windows(d)
    over, under = [], []
    for ci, t, p, q in wins:
        if p.crossing == q.crossing:
            continue
        if p.role == OVER and q.role == OVER:
            over.append((ci, t, p.crossing, q.crossing))
        elif p.role == UNDER and q.role == UNDER:
            under.append((ci, t, p.crossing, q.crossing))
    sites = []
    for ci1, t1, c, e in over:
        if d.crossings[c].sign != -d.crossings[e].sign:
            continue
        for ci2, t2, c2, e2 in under:
            if {c2, e2} == {c, e}:
                sites.append(((ci1, t1), (ci2, t2)))
    return sites


# R3 window patterns per variant: three windows given as ((role, key), (role, key))
# over abstract crossing keys 0, 1, 2, plus the common sign.
_R3_PATTERNS = {
    "L+": ((("O", 0), ("O", 1)), (("U", 0), ("O", 2)), (("U", 1), ("U", 2)), 1),
    "R+": ((("O", 0), ("O", 1)), (("O", 2), ("U", 1)), (("U", 2), ("U", 0)), 1),
    "L-": ((("U", 0), ("U", 1)), (("O", 0), ("U", 2)), (("O", 1), ("O", 2)), -1),
    "R-": ((("U", 0), ("U", 1)), (("U", 2), ("O", 1)), (("O", 2), ("O", 0)), -1),
}


def _r3_sites(d: Diagram) -> list[tuple]:
    wins = _classical_windows(d)
    by_first: dict[tuple[str, int], list[tuple[int, int, Passage, Passage]]] = {}
    for w in wins:
        by_first.setdefault((w[2].role, w[2].crossing), []).append(w)
    sites = []
    for variant, (w1pat, w2pat, w3pat, sign) in _R3_PATTERNS.items():
        for ci1, t1, p1, q1 in wins:
            if p1.role != w1pat[0][0] or q1.role != w1pat[1][0]:
                continue
            if p1.crossing == q1.crossing:
                continue
            if d.crossings[p1.crossing].sign != sign or d.crossings[q1.crossing].sign != sign:
                continue
            key = {w1pat[0][1]: p1.crossing, w1pat[1][1]: q1.crossing}
            # scan for window 2; its slots may introduce the third crossing
            for ci2, t2, p2, q2 in wins:
                if (ci2, t2) == (ci1, t1):
                    continue
                if p2.role != w2pat[0][0] or q2.role != w2pat[1][0]:
                    continue
                k2 = dict(key)
                ok = True
                for (role, kk), passage in ((w2pat[0], p2), (w2pat[1], q2)):
                    if kk in k2:
                        if k2[kk] != passage.crossing:
                            ok = False
                            break
                    else:
                        if passage.crossing in k2.values():
                            ok = False
                            break
                        if d.crossings[passage.crossing].sign != sign:
                            ok = False
                            break
                        k2[kk] = passage.crossing
                if not ok or len(k2) != 3:
                    continue
                # window 3 is fully determined
                want_p3 = (w3pat[0][0], k2[w3pat[0][1]])
                want_q3 = (w3pat[1][0], k2[w3pat[1][1]])
                for ci3, t3, p3, q3 in by_first.get(want_p3, []):
                    if (q3.role, q3.crossing) == want_q3 and (ci3, t3) not in ((ci1, t1), (ci2, t2)):
                        sites.append(((ci1, t1), (ci2, t2), (ci3, t3), variant))
    return sites


def enumerate_moves(d: Diagram) -> list[MoveEvent]:
    """Every applicable move: all removal and third-move sites, and the
    parameterized families of additions at every gap."""
    if d.has_doubles():
        raise ValueError("moves are generated for non-singular diagrams only")
    out: list[MoveEvent] = []
    for site in _r1_remove_sites(d):
        out.append(MoveEvent("R1_remove", site))
    for site in _r2_remove_sites(d):
        out.append(MoveEvent("R2_remove", site))
    for site in _r3_sites(d):
        out.append(MoveEvent("R3", site))
    gaps = [(ci, g) for ci, comp in enumerate(d.components) for g in _gaps(comp)]
    for ci, g in gaps:
        for over_first, sign in KINK_TYPES:
            out.append(MoveEvent("R1_add", (ci, g, over_first, sign)))
    for i in range(len(gaps)):
        for j in range(i + 1, len(gaps)):
            for role1 in CLASSICAL_ROLES:
                for parallel in (True, False):
                    for sign in (1, -1):
                        out.append(
                            MoveEvent("R2_add", (gaps[i], gaps[j], role1, parallel, sign))
                        )
    return out


def _insert(comp: tuple, gap: int, items: tuple) -> tuple:
    return comp[:gap] + items + comp[gap:]


def _apply_r1_add(d: Diagram, site: tuple) -> Diagram:
    ci, gap, over_first, sign = site
    if not (0 <= ci < len(d.components)) or gap not in _gaps(d.components[ci]):
        raise MoveError(f"inapplicable move: no gap {gap} in component {ci}")
    nid = _next_id(d)
    roles = (OVER, UNDER) if over_first else (UNDER, OVER)
    comps = list(d.components)
    comps[ci] = _insert(comps[ci], gap, (Passage(nid, roles[0]), Passage(nid, roles[1])))
    return Diagram(tuple(comps), {**d.crossings, nid: Crossing(nid, "x", sign)})


def _apply_r1_remove(d: Diagram, site: tuple) -> Diagram:
    ci, t = site
    if not (0 <= ci < len(d.components)):
        raise MoveError(f"inapplicable move: no component {ci}")
    comp = d.components[ci]
    L = len(comp)
    if L < 2:
        raise MoveError("inapplicable move: component too short for a kink")
    p, q = comp[t], comp[(t + 1) % L]
    if p.crossing != q.crossing or {p.role, q.role} != set(CLASSICAL_ROLES):
        raise MoveError(f"inapplicable move: window {t} is not a kink")
    comps = list(d.components)
    keep = [x for k, x in enumerate(comp) if k not in (t, (t + 1) % L)]
    comps[ci] = tuple(keep)
    table = {k: v for k, v in d.crossings.items() if k != p.crossing}
    return Diagram(tuple(comps), table)


def _apply_r2_add(d: Diagram, site: tuple) -> Diagram:
    (ci1, g1), (ci2, g2), role1, parallel, sign = site
    if (ci1, g1) == (ci2, g2):
        raise MoveError("inapplicable move: second-move strands need two distinct gaps")
    for ci, g in ((ci1, g1), (ci2, g2)):
        if not (0 <= ci < len(d.components)) or g not in _gaps(d.components[ci]):
            raise MoveError(f"inapplicable move: no gap {g} in component {ci}")
    nid = _next_id(d)
    ids = (nid, nid + 1)
    role2 = UNDER if role1 == OVER else OVER
    strand1 = (Passage(ids[0], role1), Passage(ids[1], role1))
    if parallel:
        strand2 = (Passage(ids[0], role2), Passage(ids[1], role2))
    else:
        strand2 = (Passage(ids[1], role2), Passage(ids[0], role2))
    comps = list(d.components)
    inserts = [((ci1, g1), strand1), ((ci2, g2), strand2)]
    # same component: apply the later gap first so the earlier index stays valid
    inserts.sort(key=lambda it: (it[0][0], -it[0][1]))
    for (ci, g), items in inserts:
        comps[ci] = _insert(comps[ci], g, items)
    table = dict(d.crossings)
    table[ids[0]] = Crossing(ids[0], "x", sign)
    table[ids[1]] = Crossing(ids[1], "x", -sign)
    return Diagram(tuple(comps), table)


def _apply_r2_remove(d: Diagram, site: tuple) -> Diagram:
    (ci1, t1), (ci2, t2) = site
    for ci in (ci1, ci2):
        if not (0 <= ci < len(d.components)):
            raise MoveError(f"inapplicable move: no component {ci}")
    c1, c2 = d.components[ci1], d.components[ci2]
    w1 = (c1[t1], c1[(t1 + 1) % len(c1)]) if len(c1) >= 2 else None
    w2 = (c2[t2], c2[(t2 + 1) % len(c2)]) if len(c2) >= 2 else None
    if w1 is None or w2 is None:
        raise MoveError("inapplicable move: window out of range")
    if not (w1[0].role == OVER and w1[1].role == OVER and w2[0].role == UNDER and w2[1].role == UNDER):
        raise MoveError("inapplicable move: second-move cancellation pattern absent")
    ids1 = {w1[0].crossing, w1[1].crossing}
    if len(ids1) != 2 or {w2[0].crossing, w2[1].crossing} != ids1:
        raise MoveError("inapplicable move: windows do not pair the same two crossings")
    a, b = w1[0].crossing, w1[1].crossing
    if d.crossings[a].kind != "x" or d.crossings[b].kind != "x" or d.crossings[a].sign != -d.crossings[b].sign:
        raise MoveError("inapplicable move: crossings must be classical with opposite signs")
    comps = list(d.components)
    drop = {ci1: {t1, (t1 + 1) % len(c1)}}
    drop.setdefault(ci2, set()).update({t2, (t2 + 1) % len(c2)})
    for ci, idxs in drop.items():
        comp = comps[ci]
        comps[ci] = tuple(x for k, x in enumerate(comp) if k not in idxs)
    table = {k: v for k, v in d.crossings.items() if k not in ids1}
    return Diagram(tuple(comps), table)


# swapping a variant's three windows leaves the opposite-handed pattern
_R3_FLIP = {"L+": "R+", "R+": "L+", "L-": "R-", "R-": "L-"}


def _r3_pattern_holds(d: Diagram, windows: tuple, variant: str) -> bool:
    w1pat, w2pat, w3pat, sign = _R3_PATTERNS[variant]
    key: dict[int, int] = {}
    for (ci, t), pat in zip(windows, (w1pat, w2pat, w3pat)):
        comp = d.components[ci]
        for pos, (role, kk) in zip((t, (t + 1) % len(comp)), pat):
            pas = comp[pos]
            rec = d.crossings[pas.crossing]
            if pas.role != role or rec.kind != "x" or rec.sign != sign:
                return False
            if kk in key:
                if key[kk] != pas.crossing:
                    return False
            else:
                if pas.crossing in key.values():
                    return False
                key[kk] = pas.crossing
    return len(key) == 3


def _apply_r3(d: Diagram, site: tuple) -> Diagram:
    (ci1, t1), (ci2, t2), (ci3, t3), variant = site
    if variant not in _R3_PATTERNS:
        raise MoveError(f"inapplicable move: unknown third-move variant {variant!r}")
    windows = ((ci1, t1), (ci2, t2), (ci3, t3))
    if len(set(windows)) != 3:
        raise MoveError("inapplicable move: third-move windows must be distinct")
    for ci, t in windows:
        if not (0 <= ci < len(d.components)) or not (0 <= t < len(d.components[ci])) or len(d.components[ci]) < 2:
            raise MoveError("inapplicable move: window out of range")
    # the same windows carry the opposite-handed pattern after one swap,
    # so re-applying an event undoes it
    if not (
        _r3_pattern_holds(d, windows, variant)
        or _r3_pattern_holds(d, windows, _R3_FLIP[variant])
    ):
        raise MoveError("inapplicable move: third-move pattern absent")
    comps = list(d.components)
    for ci, t in windows:
        comp = list(comps[ci])
        u = (t + 1) % len(comp)
        comp[t], comp[u] = comp[u], comp[t]
        comps[ci] = tuple(comp)
    return Diagram(tuple(comps), dict(d.crossings))


_APPLIERS = {
    "R1_add": _apply_r1_add,
    "R1_remove": _apply_r1_remove,
    "R2_add": _apply_r2_add,
    "R2_remove": _apply_r2_remove,
    "R3": _apply_r3,
}


def apply(d: Diagram, m: MoveEvent) -> Diagram:
    """Apply one move; raises MoveError when the site does not match d."""
    fn = _APPLIERS.get(m.kind)
    if fn is None:
        raise MoveError(f"inapplicable move: unknown kind {m.kind!r}")
    result = fn(d, m.site)
    problems = validate(result)
    if problems:
        raise MoveError("move produced an invalid diagram: " + "; ".join(problems))
    return result


def random_walk(
    d: Diagram, steps: int, seed: int, *, max_crossings: int | None = None
) -> Diagram:
    """Apply `steps` random moves, never materializing the full move list.

    Each step picks uniformly among the currently available move kinds,
    then uniformly among that kind's sites.  A soft cap (default: the
    starting crossing count plus 4) excludes additions while at or over
    the cap, except as a last resort when nothing else applies.
    """
    if d.has_doubles():
        raise ValueError("moves are generated for non-singular diagrams only")
    rng = random.Random(seed)
    cap = max_crossings if max_crossings is not None else d.n_classical() + 4
    cur = d
    for _ in range(steps):
        n = cur.n_classical()
        removal_sites = {
            "R1_remove": _r1_remove_sites(cur),
            "R2_remove": _r2_remove_sites(cur),
            "R3": _r3_sites(cur),
        }
        kinds = [k for k, v in removal_sites.items() if v]
        if n + 1 <= cap:
            kinds.append("R1_add")
        if n + 2 <= cap:
            kinds.append("R2_add")
        if not kinds:
            kinds = ["R1_add"]
        kind = rng.choice(kinds)
        if kind == "R1_add":
            gaps = [(ci, g) for ci, comp in enumerate(cur.components) for g in _gaps(comp)]
            ci, g = rng.choice(gaps)
            over_first, sign = rng.choice(KINK_TYPES)
            m = MoveEvent("R1_add", (ci, g, over_first, sign))
        elif kind == "R2_add":
            gaps = [(ci, g) for ci, comp in enumerate(cur.components) for g in _gaps(comp)]
            if len(gaps) < 2:
                m = MoveEvent("R1_add", (0, 0, True, 1))
            else:
                g1, g2 = rng.sample(gaps, 2)
                role1 = rng.choice(CLASSICAL_ROLES)
                parallel = rng.random() < 0.5
                sign = rng.choice((1, -1))
                m = MoveEvent("R2_add", (g1, g2, role1, parallel, sign))
        else:
            m = MoveEvent(kind, rng.choice(removal_sites[kind]))
        cur = apply(cur, m)
    return cur


def random_diagram(cfg: GeneratorConfig) -> Diagram:
    """A uniform random valid code with the requested counts, deterministic in seed.

    Call order is fixed: component assignment for every passage token
    (classical ids first, then double points), then one shuffle per
    component, then one sign draw per classical crossing.
    """
    rng = random.Random(cfg.seed)
    k, m = cfg.classical_crossings, cfg.double_points
    tokens: list[Passage] = []
    for cid in range(1, k + 1):
        tokens.append(Passage(cid, OVER))
        tokens.append(Passage(cid, UNDER))
    for cid in range(k + 1, k + m + 1):
        tokens.append(Passage(cid, FIRST))
        tokens.append(Passage(cid, SECOND))
    comp_lists: list[list[Passage]] = [[] for _ in range(cfg.components)]
    for tok in tokens:
        comp_lists[rng.randrange(cfg.components)].append(tok)
    for lst in comp_lists:
        rng.shuffle(lst)
    table: dict[int, Crossing] = {}
    for cid in range(1, k + 1):
        table[cid] = Crossing(cid, "x", rng.choice((1, -1)))
    for cid in range(k + 1, k + m + 1):
        table[cid] = Crossing(cid, "d", None)
    return Diagram(tuple(tuple(lst) for lst in comp_lists), table)
