"""Irrelevant-link detection by distance certificates.

A link is irrelevant when no elementary source-target path within the hop
bound uses it; deleting an irrelevant link leaves the reliability unchanged.
Three sufficient conditions of increasing strength certify irrelevance for a
link e = {x, y} with hop bound d, writing D for hop distance:

1. plain distances:            D(s,x) + D(y,t) >= d, both orientations;
2. distances in G - e:         the same sums measured without e;
3. node-disjoint distances:    D[G-y-t](s,x) + D[G-s-x](y,t) >= d and the
   symmetric orientation, where D[G-X] excludes the node set X.

A path using e in the orientation x->y needs a prefix s..x avoiding y and t
and a suffix y..t avoiding s and x, hence at least sum+1 > d hops under
condition 3; conditions 1 and 2 relax the avoidance.  When a distance query's
endpoint is itself excluded the term is infinite (no path of that shape can
exist at all), except that D(u,u) = 0 stands when u is not excluded; the
graph's distance primitive implements exactly this.

Every certificate is checkable: it records the two orientation sums, and each
must be at least the hop bound.  None of the conditions is complete; there
are instances whose irrelevant links none of them certify.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import INF, Instance, LinkId

LEVELS = ("c1", "c2", "c3")
LEVELS_WITH_OFF = LEVELS + ("off",)


@dataclass(frozen=True)
class IrrelevanceCertificate:
    """Witness that a link is irrelevant: both orientation sums reach d."""

    link: LinkId
    condition: str
    sums: tuple[float, float]

    def to_json(self) -> dict:
        return {
            "link": self.link,
            "condition": self.condition,
            "sums": [s if s != INF else "inf" for s in self.sums],
        }


def _certify(link: LinkId, condition: str, d: int, sum_xy, sum_yx) -> IrrelevanceCertificate | None:
    if sum_xy >= d and sum_yx >= d:
        return IrrelevanceCertificate(link=link, condition=condition, sums=(sum_xy, sum_yx))
    return None


def condition1(inst: Instance, link_id: LinkId) -> IrrelevanceCertificate | None:
    g, s, t, d = inst.graph, inst.source, inst.target, inst.diameter
    e = g.link(link_id)
    x, y = e.u, e.v
    return _certify(link_id, "c1", d,
                    g.distance(s, x) + g.distance(y, t),
                    g.distance(s, y) + g.distance(x, t))


def condition2(inst: Instance, link_id: LinkId) -> IrrelevanceCertificate | None:
    e = inst.graph.link(link_id)
    g = inst.graph.delete_link(link_id)
    s, t, d = inst.source, inst.target, inst.diameter
    x, y = e.u, e.v
    return _certify(link_id, "c2", d,
                    g.distance(s, x) + g.distance(y, t),
                    g.distance(s, y) + g.distance(x, t))


def condition3(inst: Instance, link_id: LinkId) -> IrrelevanceCertificate | None:
    g, s, t, d = inst.graph, inst.source, inst.target, inst.diameter
    e = g.link(link_id)
    x, y = e.u, e.v
    sum_xy = g.distance(s, x, excluded=(y, t)) + g.distance(y, t, excluded=(s, x))
    if sum_xy < d:
        return None
    sum_yx = g.distance(s, y, excluded=(x, t)) + g.distance(x, t, excluded=(s, y))
    return _certify(link_id, "c3", d, sum_xy, sum_yx)


_CONDITIONS = {"c1": condition1, "c2": condition2, "c3": condition3}


def check_condition(inst: Instance, link_id: LinkId, level: str) -> IrrelevanceCertificate | None:
    try:
        fn = _CONDITIONS[level]
    except KeyError:
        raise ValueError(f"unknown irrelevance level {level!r}; expected one of {LEVELS}") from None
    return fn(inst, link_id)


@dataclass(frozen=True)
class PruneResult:
    instance: Instance
    certificates: tuple[IrrelevanceCertificate, ...]

    @property
    def removed(self) -> tuple[LinkId, ...]:
        return tuple(c.link for c in self.certificates)


def prune_irrelevant(inst: Instance, level: str = "c3") -> PruneResult:
    """Delete certified-irrelevant links until none is certified.

    Scans links in id order against the current graph, deleting as it goes,
    and rescans until a full pass deletes nothing: a deletion can lengthen
    detours and thereby enable new certificates.  Certificates are returned
    in deletion order.  Level ``"off"`` returns the instance unchanged.
    """
    if level == "off":
        return PruneResult(inst, ())
    if level not in _CONDITIONS:
        raise ValueError(f"unknown irrelevance level {level!r}; expected one of {LEVELS_WITH_OFF}")
    current = inst
    certs: list[IrrelevanceCertificate] = []
    changed = True
    while changed:
        changed = False
        for link_id in sorted(current.graph.links):
            cert = check_condition(current, link_id, level)
            if cert is not None:
                current = current.with_graph(current.graph.delete_link(link_id))
                certs.append(cert)
                changed = True
    return PruneResult(current, tuple(certs))
