"""Planar diagram (PD) codes.

Convention: ``X(a, b, c, d)`` lists the four edge labels counterclockwise,
starting from the incoming under-strand ``a``; the under-strand runs a -> c.
The over-strand runs b -> d (a negative crossing) or d -> b (a positive
crossing); its direction is recovered by walking the knot.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Hashable, Sequence


class PDError(ValueError):
    pass


class NotAKnotError(PDError):
    pass


@dataclass(frozen=True)
class Passage:
    """One visit to a crossing while walking the knot."""

    crossing: int
    under: bool
    entry_slot: int


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def __str__(self) -> str:
        return ";".join("X(%d,%d,%d,%d)" % x for x in self.crossings)

    def mirror(self) -> "PDCode":
        """Swap over and under at every crossing."""
        return PDCode(tuple(_mirror_crossing(x, self) for x in self.crossings))

    def walk(self) -> tuple[list[int], list[Passage]]:
        """Edges in traversal order and the crossing passages between them."""
        return walk_diagram(self.crossings)

    def signs(self) -> list[int]:
        edges, passages = self.walk()
        signs = [0] * self.n_crossings
        for p in passages:
            if not p.under:
                signs[p.crossing] = 1 if p.entry_slot == 3 else -1
        return signs

    def writhe(self) -> int:
        return sum(self.signs())


def _mirror_crossing(x, pd: PDCode):
    # new incoming under-strand is the old over-strand's incoming edge
    a, b, c, d = x
    edges, passages = pd.walk()
    i = pd.crossings.index(x)
    entry = next(p.entry_slot for p in passages if p.crossing == i and not p.under)
    if entry == 1:
        # over ran b -> d; after mirroring it is the under-strand b -> d
        return (b, c, d, a)
    return (d, a, b, c)


def walk_diagram(crossings: Sequence[Sequence[Hashable]]) -> tuple[list, list[Passage]]:
    """Follow the strand from crossing 0's incoming under-edge until it closes.

    Raises NotAKnotError when some edge is not reached (more than one component)
    and PDError when the orientation data is inconsistent.
    """
    occurrences: dict[Hashable, list[tuple[int, int]]] = {}
    for ci, x in enumerate(crossings):
        for slot, label in enumerate(x):
            occurrences.setdefault(label, []).append((ci, slot))
    for label, occ in occurrences.items():
        if len(occ) != 2:
            raise PDError(f"label {label!r} appears {len(occ)} times; expected exactly 2")
    if not crossings:
        return [], []

    edges: list = []
    passages: list[Passage] = []
    start = (0, 0)
    ci, slot = start
    visits = 0
    while True:
        if slot == 2:
            raise PDError(f"crossing {ci} is entered along its outgoing under-edge")
        passages.append(Passage(ci, slot in (0, 2), slot))
        out_slot = (slot + 2) % 4
        label = crossings[ci][out_slot]
        edges.append(label)
        occ = occurrences[label]
        nxt = occ[1] if occ[0] == (ci, out_slot) else occ[0]
        if occ[0] == occ[1]:
            raise PDError(f"label {label!r} is malformed")
        ci, slot = nxt
        visits += 1
        if (ci, slot) == start:
            break
        if visits > 4 * len(crossings):
            raise PDError("walk does not close up")
    if len(edges) != len(occurrences):
        raise NotAKnotError("not a knot: diagram has more than one component")
    under_count = sum(1 for p in passages if p.under)
    if under_count != len(crossings):
        raise PDError("each crossing must be passed under exactly once")
    return edges, passages


_X_PATTERN = re.compile(r"X\s*[\(\[]\s*([^\)\]]*)[\)\]]")


def parse_pd(text) -> PDCode:
    """Parse ``"X(1,4,2,5);X(3,6,4,1);..."``, ``X[...]`` variants, or a JSON array of 4-tuples."""
    if isinstance(text, PDCode):
        return text
    if isinstance(text, (list, tuple)):
        raw = [list(x) for x in text]
    else:
        s = text.strip()
        if not s or s in ("[]", "PD[]", "unknot"):
            raw = []
        elif s.startswith("["):
            try:
                raw = json.loads(s)
            except json.JSONDecodeError as exc:
                raise PDError(f"malformed JSON PD code: {exc}") from None
        else:
            body = s[3:-1] if s.startswith("PD[") and s.endswith("]") else s
            matches = list(_X_PATTERN.finditer(body))
            leftover = _X_PATTERN.sub("", body).replace(";", "").replace(",", "").strip()
            if leftover or not matches:
                raise PDError(f"malformed PD code: {text!r}")
            raw = []
            for m in matches:
                parts = [p.strip() for p in m.group(1).split(",")]
                raw.append(parts)
    crossings = []
    for x in raw:
        if len(x) != 4:
            raise PDError(f"crossing {x!r} does not have 4 entries")
        try:
            crossings.append(tuple(int(v) for v in x))
        except (TypeError, ValueError):
            raise PDError(f"crossing {x!r} has non-integer labels") from None
    n = len(crossings)
    labels = sorted(v for x in crossings for v in x)
    expected = sorted(list(range(1, 2 * n + 1)) * 2)
    if labels != expected:
        counts = {}
        for v in labels:
            counts[v] = counts.get(v, 0) + 1
        bad = [v for v, c in counts.items() if c != 2]
        if bad:
            raise PDError(f"labels {bad} do not appear exactly twice")
        raise PDError(f"labels must be 1..{2 * n}")
    pd = PDCode(tuple(crossings))
    pd.walk()
    return pd


class DiagramBuilder:
    """Assemble a PD code from crossings with ports SW, SE, NE, NW (counterclockwise).

    ``over`` names the port pair carrying the over-strand: (0, 2) for the
    SW-NE strand, (1, 3) for the SE-NW strand.
    """

    def __init__(self):
        self.overs: list[tuple[int, int]] = []
        self.links: dict[tuple[int, int], tuple[int, int]] = {}

    def crossing(self, over: tuple[int, int]) -> int:
        if over not in ((0, 2), (1, 3)):
            raise ValueError("over pair must be (0, 2) or (1, 3)")
        self.overs.append(over)
        return len(self.overs) - 1

    def connect(self, p: tuple[int, int], q: tuple[int, int]) -> None:
        if p in self.links or q in self.links:
            raise ValueError(f"port already connected: {p} or {q}")
        self.links[p] = q
        self.links[q] = p

    def build(self) -> PDCode:
        n = len(self.overs)
        if len(self.links) != 4 * n:
            raise ValueError("some ports are not connected")
        edge_of: dict[tuple[int, int], int] = {}
        next_id = 0
        for p, q in self.links.items():
            if p not in edge_of:
                edge_of[p] = edge_of[q] = next_id
                next_id += 1
        # walk: enter crossing 0 at some port, exit at the opposite port
        start = (0, 0)
        order: list[int] = []
        entries: dict[int, list[int]] = {i: [] for i in range(n)}
        port = start
        while True:
            ci, slot = port
            entries[ci].append(slot)
            out = (ci, (slot + 2) % 4)
            order.append(edge_of[out])
            port = self.links[out]
            if port == start:
                break
            if len(order) > 2 * n:
                raise NotAKnotError("not a knot: diagram has more than one component")
        if len(order) != 2 * n:
            raise NotAKnotError("not a knot: diagram has more than one component")
        label = {e: k + 1 for k, e in enumerate(order)}
        crossings = []
        for ci in range(n):
            under_slots = {0, 2} if self.overs[ci] == (1, 3) else {1, 3}
            k = next(s for s in entries[ci] if s in under_slots)
            crossings.append(tuple(label[edge_of[(ci, (k + r) % 4)]] for r in range(4)))
        # rotate so that the crossing containing edge 1 as incoming under comes first
        pd = PDCode(tuple(crossings))
        return canonical_start(pd)


def canonical_start(pd: PDCode) -> PDCode:
    """Reorder crossings so that walking starts on edge 1 where possible."""
    for i, x in enumerate(pd.crossings):
        if x[0] == 1:
            xs = list(pd.crossings)
            xs.insert(0, xs.pop(i))
            return PDCode(tuple(xs))
    return pd


def braid_closure(word: Sequence[int], strands: int | None = None) -> PDCode:
    """PD code of the closure of a braid word (generator i > 0 positive, -i its inverse)."""
    if not word:
        raise ValueError("empty braid word")
    s = strands or (max(abs(g) for g in word) + 1)
    b = DiagramBuilder()
    first: dict[int, tuple[int, int]] = {}
    last: dict[int, tuple[int, int]] = {}
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < s - 1:
            raise ValueError(f"generator {g} out of range for {s} strands")
        c = b.crossing((0, 2) if g > 0 else (1, 3))
        for pos, port in ((i, (c, 0)), (i + 1, (c, 1))):
            if pos in last:
                b.connect(last[pos], port)
            else:
                first[pos] = port
        last[i] = (c, 3)
        last[i + 1] = (c, 2)
    for pos in range(s):
        if pos not in first:
            raise NotAKnotError("not a knot: a braid strand never crosses")
        b.connect(last[pos], first[pos])
    return b.build()


def pretzel(p: int, q: int, r: int) -> PDCode:
    """PD code of the pretzel knot P(p, q, r) with p, q, r odd.

    Each twist region is a vertical column of |n| crossings; positive n puts
    the SW-NE strand on top.
    """
    twists = (p, q, r)
    if any(n % 2 == 0 for n in twists):
        raise ValueError("pretzel generator needs odd p, q, r")
    b = DiagramBuilder()
    tops, bottoms = [], []
    for n in twists:
        over = (0, 2) if n > 0 else (1, 3)
        col = [b.crossing(over) for _ in range(abs(n))]
        for lo, hi in zip(col, col[1:]):
            b.connect((lo, 3), (hi, 0))
            b.connect((lo, 2), (hi, 1))
        tops.append(((col[-1], 3), (col[-1], 2)))
        bottoms.append(((col[0], 0), (col[0], 1)))
    for k in range(2):
        b.connect(tops[k][1], tops[k + 1][0])
        b.connect(bottoms[k][1], bottoms[k + 1][0])
    b.connect(tops[0][0], tops[2][1])
    b.connect(bottoms[0][0], bottoms[2][1])
    return b.build()
