"""Text file formats: instances and certificates.

Instance files have a header line ``n <N>`` followed by edge lines
``<u> <v> <value>``. Values are exact rationals written ``p/q`` (or bare
integers); unspecified edges are zero, duplicate lines are summed, and
the edge may be written in either vertex order. ``#`` starts a comment.
On write, edges appear in canonical lexicographic order with u < v, zero
entries omitted, so parse(print(x)) round-trips bit-exactly.

Certificate files start with ``certificate <kind>`` where kind is one of
decomposition, membership-inside, membership-outside, lp-farkas; see the
grammar in the README. Printing is canonical and parsing inverts it
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .decompose import DecompositionCertificate
from .edgespace import EdgeSpace, EdgeVector, edge_pairs
from .membership import INSIDE, OUTSIDE, MembershipAnswer
from .multigraph import HamiltonianCycle, Multigraph, ShortcutTriple


class FormatError(ValueError):
    """Malformed instance or certificate text; carries a 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class FarkasCertificate:
    """A bare infeasibility row vector, as emitted by the LP engine."""

    y: Tuple[Fraction, ...]


def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_rational(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {token!r}", lineno)


def _parse_header(lines: List[Tuple[int, str]]) -> Tuple[int, int]:
    if not lines:
        raise FormatError("empty instance")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n":
        raise FormatError(f"expected header 'n <count>', got {header!r}", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError(f"bad vertex count {parts[1]!r}", lineno)
    if n < 3:
        raise FormatError(f"need n >= 3, got {n}", lineno)
    return n, lineno


def _parse_edge_lines(
    lines: List[Tuple[int, str]], n: int
) -> List[Tuple[int, int, Fraction, int]]:
    out = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(
                f"expected '<u> <v> <value>', got {line!r}", lineno
            )
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"bad vertex in {line!r}", lineno)
        if u == v:
            raise FormatError(f"loop edge ({u}, {u})", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex out of range in {line!r}", lineno)
        value = _parse_rational(parts[2], lineno)
        out.append((u, v, value, lineno))
    return out


def parse_instance(text: str, kind: str = "multigraph") -> Union[Multigraph, EdgeVector]:
    """Parse an instance file as a Multigraph or an EdgeVector.

    kind = "multigraph" demands non-negative integer values; kind =
    "vector" accepts any rationals.
    """
    if kind not in ("multigraph", "vector"):
        raise ValueError(f"unknown instance kind {kind!r}")
    lines = _content_lines(text)
    n, _ = _parse_header(lines)
    space = EdgeSpace(n)
    coords = [Fraction(0)] * space.dim
    for u, v, value, lineno in _parse_edge_lines(lines[1:], n):
        if kind == "multigraph":
            if value.denominator != 1:
                raise FormatError(
                    f"multiplicity must be an integer, got {value}", lineno
                )
            if value < 0:
                raise FormatError(
                    f"negative multiplicity {value}", lineno
                )
        coords[space.index(u, v)] += value
    if kind == "multigraph":
        return Multigraph(space, tuple(int(c) for c in coords))
    return EdgeVector(space, tuple(coords))


def _edge_lines(space: EdgeSpace, coords, prefix: str = "") -> List[str]:
    out = []
    for (u, v), c in zip(edge_pairs(space.n), coords):
        if c != 0:
            out.append(f"{prefix}{u} {v} {c}")
    return out


def print_instance(obj: Union[Multigraph, EdgeVector]) -> str:
    if isinstance(obj, Multigraph):
        space, coords = obj.space, obj.mult
    else:
        space, coords = obj.space, obj.coords
    lines = [f"n {space.n}"] + _edge_lines(space, coords)
    return "\n".join(lines) + "\n"


def print_certificate(
    cert: Union[DecompositionCertificate, MembershipAnswer, FarkasCertificate]
) -> str:
    """Canonical text form; parse_certificate inverts it exactly."""
    if isinstance(cert, DecompositionCertificate):
        lines = [
            "certificate decomposition",
            f"n {cert.base_cycle.n}",
            "cycle " + " ".join(map(str, cert.base_cycle.order)),
            f"steps {len(cert.steps)}",
        ]
        lines += [f"step {t.u} {t.w} {t.v}" for t in cert.steps]
        return "\n".join(lines) + "\n"

    if isinstance(cert, MembershipAnswer):
        kind = "membership-inside" if cert.verdict == INSIDE else "membership-outside"
        space = cert.point.space
        lines = [f"certificate {kind}", f"set {cert.set_name}", f"n {space.n}"]
        lines += _edge_lines(space, cert.point.coords, prefix="point ")
        if cert.verdict == INSIDE:
            for t, c in cert.tour_coeffs:
                lines.append("tour " + str(c) + " : " + " ".join(map(str, t.order)))
            for t, c in cert.shortcut_coeffs:
                lines.append(f"shortcut {c} : {t.u} {t.w} {t.v}")
        else:
            a, alpha = cert.separating
            lines += _edge_lines(space, a.coords, prefix="sep ")
            lines.append(f"rhs {alpha}")
        return "\n".join(lines) + "\n"

    if isinstance(cert, FarkasCertificate):
        lines = [
            "certificate lp-farkas",
            f"rows {len(cert.y)}",
            "y " + " ".join(str(v) for v in cert.y),
        ]
        return "\n".join(lines) + "\n"

    raise TypeError(f"cannot serialize {type(cert).__name__}")


def parse_certificate(
    text: str,
) -> Union[DecompositionCertificate, MembershipAnswer, FarkasCertificate]:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty certificate")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "certificate":
        raise FormatError(f"expected 'certificate <kind>', got {head!r}", lineno)
    kind = parts[1]
    body = lines[1:]
    if kind == "decomposition":
        return _parse_decomposition(body)
    if kind in ("membership-inside", "membership-outside"):
        return _parse_membership(kind, body)
    if kind == "lp-farkas":
        return _parse_farkas(body)
    raise FormatError(f"unknown certificate kind {kind!r}", lineno)


def _expect(body, idx, name):
    if idx >= len(body):
        raise FormatError(f"missing {name} line")
    return body[idx]


def _parse_decomposition(body) -> DecompositionCertificate:
    n, _ = _parse_header(body)
    lineno, cyc = _expect(body, 1, "cycle")
    parts = cyc.split()
    if parts[0] != "cycle":
        raise FormatError(f"expected cycle line, got {cyc!r}", lineno)
    try:
        order = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise FormatError(f"bad cycle {cyc!r}", lineno)
    if len(order) != n:
        raise FormatError(f"cycle has {len(order)} vertices, expected {n}", lineno)
    lineno, cnt = _expect(body, 2, "steps")
    parts = cnt.split()
    if parts[0] != "steps" or len(parts) != 2:
        raise FormatError(f"expected 'steps <count>', got {cnt!r}", lineno)
    count = int(parts[1])
    steps = []
    for lineno, line in body[3:]:
        parts = line.split()
        if parts[0] != "step" or len(parts) != 4:
            raise FormatError(f"expected 'step u w v', got {line!r}", lineno)
        try:
            u, w, v = (int(p) for p in parts[1:])
            steps.append(ShortcutTriple(u, w, v))
        except ValueError as exc:
            raise FormatError(str(exc), lineno)
    if len(steps) != count:
        raise FormatError(f"declared {count} steps, found {len(steps)}")
    return DecompositionCertificate(HamiltonianCycle(order), tuple(steps))


def _parse_membership(kind: str, body) -> MembershipAnswer:
    lineno, set_line = _expect(body, 0, "set")
    parts = set_line.split()
    if parts[0] != "set" or len(parts) != 2:
        raise FormatError(f"expected 'set <name>', got {set_line!r}", lineno)
    set_name = parts[1]
    if set_name not in ("stsp", "polar", "minkowski", "gtsp"):
        raise FormatError(f"unknown set {set_name!r}", lineno)
    n, _ = _parse_header(body[1:])
    space = EdgeSpace(n)
    point = [Fraction(0)] * space.dim
    sep = [Fraction(0)] * space.dim
    alpha = None
    tour_coeffs = []
    shortcut_coeffs = []
    for lineno, line in body[2:]:
        parts = line.split()
        tag = parts[0]
        if tag == "point" and len(parts) == 4:
            u, v = int(parts[1]), int(parts[2])
            point[space.index(u, v)] += _parse_rational(parts[3], lineno)
        elif tag == "tour" and len(parts) == n + 3 and parts[2] == ":":
            c = _parse_rational(parts[1], lineno)
            order = tuple(int(p) for p in parts[3:])
            tour_coeffs.append((HamiltonianCycle(order), c))
        elif tag == "shortcut" and len(parts) == 6 and parts[2] == ":":
            c = _parse_rational(parts[1], lineno)
            u, w, v = (int(p) for p in parts[3:])
            shortcut_coeffs.append((ShortcutTriple(u, w, v), c))
        elif tag == "sep" and len(parts) == 4:
            u, v = int(parts[1]), int(parts[2])
            sep[space.index(u, v)] += _parse_rational(parts[3], lineno)
        elif tag == "rhs" and len(parts) == 2:
            alpha = _parse_rational(parts[1], lineno)
        else:
            raise FormatError(f"unrecognized certificate line {line!r}", lineno)
    verdict = INSIDE if kind == "membership-inside" else OUTSIDE
    separating = None
    if verdict == OUTSIDE:
        if alpha is None:
            raise FormatError("membership-outside certificate missing rhs line")
        separating = (EdgeVector(space, tuple(sep)), alpha)
    return MembershipAnswer(
        set_name,
        verdict,
        EdgeVector(space, tuple(point)),
        tour_coeffs=tuple(tour_coeffs),
        shortcut_coeffs=tuple(shortcut_coeffs),
        separating=separating,
    )


def _parse_farkas(body) -> FarkasCertificate:
    lineno, rows_line = _expect(body, 0, "rows")
    parts = rows_line.split()
    if parts[0] != "rows" or len(parts) != 2:
        raise FormatError(f"expected 'rows <count>', got {rows_line!r}", lineno)
    count = int(parts[1])
    lineno, y_line = _expect(body, 1, "y")
    parts = y_line.split()
    if parts[0] != "y":
        raise FormatError(f"expected y line, got {y_line!r}", lineno)
    y = tuple(_parse_rational(p, lineno) for p in parts[1:])
    if len(y) != count:
        raise FormatError(f"declared {count} rows, found {len(y)}", lineno)
    return FarkasCertificate(y)
