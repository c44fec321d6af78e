"""Stone-and-coin diagrams: an equivalent picture of the dynamics.

Each vertex v gets a replica placed on a reference cycle with positions
1..nu (clockwise, position p+1 is one step clockwise from p).  The replica of
v sits at the position equal to v's label, the stone sits at the active
position, and the coin rides on the replica at the stone.  One diagram step
either slides the stone one position clockwise onto the next replica (when
the two vertices are adjacent in the graph) or swaps the two replicas so the
stone's replica surfs one position clockwise with the coin staying on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dynamics import Labeling, State
from .graphs import SimpleGraph


@dataclass(frozen=True)
class StoneDiagram:
    """Replica placement plus stone position and coin vertex.

    positions[p-1] is the vertex whose replica occupies cycle position p.
    The coin always rides the replica under the stone, so
    positions[stone_at - 1] == coin_at.
    """

    positions: tuple[int, ...]
    stone_at: int
    coin_at: int

    def __post_init__(self) -> None:
        nu = len(self.positions)
        if sorted(self.positions) != list(range(nu)):
            raise ValueError("positions must place each replica exactly once")
        if not 1 <= self.stone_at <= nu:
            raise ValueError(f"stone position {self.stone_at} out of range")
        if self.positions[self.stone_at - 1] != self.coin_at:
            raise ValueError("coin must ride the replica at the stone position")

    @property
    def nu(self) -> int:
        return len(self.positions)

    def position_of(self, v: int) -> int:
        """Cycle position (1-based) of vertex v's replica."""
        return self.positions.index(v) + 1


def from_state(g: SimpleGraph, s: State) -> StoneDiagram:
    """Place replica of v at position label(v); stone at the active label."""
    if s.nu != g.vertex_count:
        raise ValueError("state does not fit the graph")
    positions = s.labeling.vertex_of
    return StoneDiagram(positions, s.active, positions[s.active - 1])


def to_state(sd: StoneDiagram) -> State:
    """Inverse of from_state."""
    labels = [0] * sd.nu
    for p, v in enumerate(sd.positions, start=1):
        labels[v] = p
    return State(Labeling(tuple(labels)), sd.stone_at)


def sd_step(g: SimpleGraph, sd: StoneDiagram) -> StoneDiagram:
    """One diagram step: stone slides clockwise, or the stone's replica surfs."""
    if sd.nu != g.vertex_count:
        raise ValueError("diagram does not fit the graph")
    nu = sd.nu
    p = sd.stone_at
    q = p % nu + 1
    r_here = sd.positions[p - 1]
    r_next = sd.positions[q - 1]
    if g.adjacent(r_here, r_next):
        return StoneDiagram(sd.positions, q, r_next)
    positions = list(sd.positions)
    positions[p - 1], positions[q - 1] = r_next, r_here
    return StoneDiagram(tuple(positions), q, r_here)


def rotate(sd: StoneDiagram, k: int = 1) -> StoneDiagram:
    """Rotate every replica and the stone k positions clockwise."""
    nu = sd.nu
    k %= nu
    positions = [0] * nu
    for p, v in enumerate(sd.positions):
        positions[(p + k) % nu] = v
    stone = (sd.stone_at - 1 + k) % nu + 1
    return StoneDiagram(tuple(positions), stone, sd.coin_at)


def is_cyclic_rotation(a: StoneDiagram, b: StoneDiagram) -> int | None:
    """The k in 0..nu-1 with rotate(a, k) == b, or None if there is none."""
    if a.nu != b.nu:
        raise ValueError("diagrams must have the same size")
    k = (b.position_of(0) - a.position_of(0)) % a.nu
    return k if rotate(a, k) == b else None


# ---------------------------------------------------------------------------
# rendering

def render(diagrams: Sequence[StoneDiagram] | StoneDiagram, fmt: str = "ascii") -> str:
    """Render one diagram or a sequence of them as ascii, svg, or dot.

    Each diagram becomes one panel; a sequence is laid out left to right in
    step order.  All three formats are deterministic text.
    """
    if isinstance(diagrams, StoneDiagram):
        diagrams = [diagrams]
    diagrams = list(diagrams)
    if not diagrams:
        raise ValueError("nothing to render")
    if fmt == "ascii":
        return _render_ascii(diagrams)
    if fmt == "svg":
        return _render_svg(diagrams)
    if fmt == "dot":
        return _render_dot(diagrams)
    raise ValueError(f"unknown render format {fmt!r}")


def ascii_line(sd: StoneDiagram) -> str:
    """One-line form: position:replica pairs, then the stone and coin."""
    cells = " ".join(f"{p}:v{v}" for p, v in enumerate(sd.positions, start=1))
    return f"{cells} | stone={sd.stone_at} coin=v{sd.coin_at}"


def _render_ascii(diagrams: list[StoneDiagram]) -> str:
    return "\n".join(ascii_line(sd) for sd in diagrams) + "\n"


def _panel_points(nu: int, cx: float, cy: float, radius: float) -> list[tuple[float, float]]:
    # position 1 at twelve o'clock, increasing clockwise
    pts = []
    for p in range(nu):
        theta = 2 * math.pi * p / nu
        pts.append((cx + radius * math.sin(theta), cy - radius * math.cos(theta)))
    return pts


def _render_svg(diagrams: list[StoneDiagram]) -> str:
    size = 170
    radius = 55.0
    width = size * len(diagrams)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{size + 20}" '
        f'viewBox="0 0 {width} {size + 20}">'
    ]
    for idx, sd in enumerate(diagrams):
        cx = idx * size + size / 2
        cy = size / 2
        pts = _panel_points(sd.nu, cx, cy, radius)
        out.append(f'  <g id="panel{idx}">')
        out.append(
            f'    <circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius:.2f}" '
            'fill="none" stroke="#bbbbbb"/>'
        )
        for p, (x, y) in enumerate(pts, start=1):
            v = sd.positions[p - 1]
            if p == sd.stone_at:
                out.append(
                    f'    <circle cx="{x:.2f}" cy="{y:.2f}" r="10.00" '
                    'fill="#222222"/>'
                )
                out.append(
                    f'    <text x="{x:.2f}" y="{y + 3.5:.2f}" font-size="9" '
                    f'text-anchor="middle" fill="#ffffff">v{v}</text>'
                )
            else:
                out.append(
                    f'    <circle cx="{x:.2f}" cy="{y:.2f}" r="10.00" '
                    'fill="#ffffff" stroke="#222222"/>'
                )
                out.append(
                    f'    <text x="{x:.2f}" y="{y + 3.5:.2f}" font-size="9" '
                    f'text-anchor="middle" fill="#222222">v{v}</text>'
                )
        out.append(
            f'    <text x="{cx:.2f}" y="{size + 12:.2f}" font-size="10" '
            f'text-anchor="middle">t={idx} stone={sd.stone_at} coin=v{sd.coin_at}</text>'
        )
        out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _render_dot(diagrams: list[StoneDiagram]) -> str:
    out = ["graph stone_diagrams {"]
    for idx, sd in enumerate(diagrams):
        out.append(f"  subgraph cluster_{idx} {{")
        out.append(f'    label="t={idx} stone={sd.stone_at} coin=v{sd.coin_at}";')
        for p, v in enumerate(sd.positions, start=1):
            shape = "doublecircle" if p == sd.stone_at else "circle"
            out.append(f'    d{idx}p{p} [label="{p}:v{v}" shape={shape}];')
        for p in range(1, sd.nu + 1):
            q = p % sd.nu + 1
            out.append(f"    d{idx}p{p} -- d{idx}p{q};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def orbit_diagrams(g: SimpleGraph, s: State, steps: int | None = None) -> list[StoneDiagram]:
    """Diagrams along the orbit of s: the full closed orbit, or `steps` steps.

    With steps=None the list has orbit length + 1 panels and ends where it
    started.
    """
    from .dynamics import iterate_orbit, tpro_step

    if steps is None:
        return [from_state(g, st) for st in iterate_orbit(g, s)]
    out = [from_state(g, s)]
    cur = s
    for _ in range(steps):
        cur = tpro_step(g, cur)
        out.append(from_state(g, cur))
    return out
