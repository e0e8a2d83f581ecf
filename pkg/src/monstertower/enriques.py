"""Proximity between tower points and the Enriques multiplicity identity."""

from __future__ import annotations

from dataclasses import dataclass

from .tower import TowerTrace

__all__ = [
    "ProximityTable",
    "EnriquesIdentity",
    "EnriquesReport",
    "HorizonTooShort",
    "MissingAnnotations",
    "proximity_table",
    "check_enriques",
]


class HorizonTooShort(RuntimeError):
    def __init__(self, levels):
        self.levels = tuple(levels)
        super().__init__(f"proximate sets of levels {list(self.levels)} may extend past the trace")


class MissingAnnotations(ValueError):
    pass


@dataclass(frozen=True)
class ProximityTable:
    levels: int
    prox: frozenset
    mults: tuple
    complete: tuple

    def proximate_to(self, j: int) -> list:
        """Levels ``i`` whose point is proximate to ``p_j``."""
        return sorted(i for i, jj in self.prox if jj == j)

    def proximate_from(self, i: int) -> list:
        """Levels ``j`` such that ``p_i`` is proximate to ``p_j``."""
        return sorted(jj for ii, jj in self.prox if ii == i)


def proximity_table(trace: TowerTrace) -> ProximityTable:
    """``(i, j)`` holds when ``i = j + 1`` or ``p_i`` lies on the prolonged fiber over ``p_j``.

    The prolonged fiber over ``p_j`` is the plane family born at level
    ``j + 1``; ``p_i`` lies on it exactly when one of the tangency planes
    carried at level ``i`` still has that birth level.
    """
    recs = trace.records
    for r in recs[1:]:
        if r.letter is None:
            raise MissingAnnotations(f"level {r.level} has no letter")
    prox = set()
    for i in range(1, len(recs)):
        prox.add((i, i - 1))
        for p in recs[i].tangency_planes:
            j = p.birth_level - 1
            if 0 <= j < i - 1:
                prox.add((i, j))
    last = recs[-1]
    open_births = {p.birth_level for p in last.tangency_planes}
    # a vertical step one level past the trace would still reach p_{last-1}
    complete = tuple(j for j in range(len(recs) - 2) if j + 1 not in open_births)
    return ProximityTable(trace.levels, frozenset(prox), tuple(trace.multiplicities), complete)


@dataclass(frozen=True)
class EnriquesIdentity:
    level: int
    multiplicity: int
    proximate: tuple
    total: int | None
    status: str

    def render(self) -> str:
        if self.status == "horizon":
            return f"p{self.level}: {self.multiplicity} = ? (proximate set may pass the horizon)"
        rhs = " + ".join(str(m) for _, m in self.proximate) or "0"
        return f"p{self.level}: {self.multiplicity} = {rhs}  [{self.status}]"


@dataclass(frozen=True)
class EnriquesReport:
    identities: tuple

    @property
    def checked(self) -> list:
        return [e for e in self.identities if e.status != "horizon"]

    @property
    def passed(self) -> bool:
        return bool(self.checked) and all(e.status == "pass" for e in self.checked)

    @property
    def failures(self) -> list:
        return [e for e in self.identities if e.status == "fail"]

    def render(self) -> str:
        return "\n".join(e.render() for e in self.identities)


def check_enriques(trace: TowerTrace, strict: bool = False) -> EnriquesReport:
    """Check ``mult(p_i) = sum of mult(p_j)`` over the points ``p_j`` proximate to ``p_i``.

    Levels whose proximate set might continue beyond the trace are reported
    with status ``"horizon"``, or raise :class:`HorizonTooShort` when ``strict``.
    """
    table = proximity_table(trace)
    mults = table.mults
    out = []
    incomplete = []
    for i in range(len(mults)):
        prox = tuple((j, mults[j]) for j in table.proximate_to(i))
        if i not in table.complete:
            incomplete.append(i)
            out.append(EnriquesIdentity(i, mults[i], prox, None, "horizon"))
            continue
        total = sum(m for _, m in prox)
        out.append(EnriquesIdentity(i, mults[i], prox, total,
                                    "pass" if total == mults[i] else "fail"))
    if strict and incomplete:
        raise HorizonTooShort(incomplete)
    return EnriquesReport(tuple(out))
