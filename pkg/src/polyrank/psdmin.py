"""Complex psd-minimality of polygons: certificates and trinomial obstructions.

A d-polytope is psd-minimal over C when its slack matrix S is the Hadamard
square |M| * |M| (entrywise squared moduli) of a complex matrix M of rank
d + 1. For polygons d + 1 = 3.

Certificates are checked exactly over Q(i, sqrt 2). Obstructions come from
the 4-minors of the normalized symbolic slack matrix: a minor of the shape
x^a - x^b + x^c (unit coefficients, up to global sign) forces
Re(z^c / z^a) = 0 at any certificate point z. From there a parity closure
tracks which variables must be pure imaginary and looks for a minor that
cannot vanish.

Axiom used by the parity rules: every variable stands for a strictly
positive slack entry (see ``SlackMatrix`` validation), so no monomial
evaluated at a certificate point is zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .fields import GaussianSqrt2, QuadraticNumber, exact_rank
from .polynomial import Polynomial, determinant
from .slack import SlackMatrix, SymbolicSlackMatrix, regular_gon_slack, symbolic_slack

__all__ = [
    "GaussianRootCertificate",
    "CertificateCheck",
    "SymbolicMinor",
    "ParityState",
    "Derivation",
    "PsdReport",
    "verify_hadamard_certificate",
    "symbolic_minors",
    "scan_trinomial_obstructions",
    "psd_minimality_report",
    "hexagon_certificate",
    "real_root_certificate",
    "pentagon_minors",
]

POLYGON_RANK = 3  # d + 1 for d = 2

# Known values quoted from the literature, not computed here.
LITERATURE_NOTES = {
    5: "real psd rank of the pentagon is 4 (literature); with the obstruction this "
    "pins its complex psd rank at 4",
    6: "complex psd rank 3 for the hexagon versus 4 for the pentagon: the sequence "
    "over regular n-gons is not monotone",
}


# --- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class GaussianRootCertificate:
    """Matrix over Q(i, sqrt 2), rows indexed like ``SlackMatrix`` (canonical layout)."""

    n: int
    entries: tuple[tuple[GaussianSqrt2, ...], ...]
    claimed_rank: int = POLYGON_RANK

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError("certificate must be n x n")

    def to_json(self) -> dict:
        rows = [[[str(x) for x in e.coords()] for e in r] for r in self.entries]
        return {"n": self.n, "claimed_rank": self.claimed_rank, "entries": rows}

    @classmethod
    def from_json(cls, data: dict) -> "GaussianRootCertificate":
        n = int(data["n"])
        rows = []
        for r in data["entries"]:
            row = []
            for e in r:
                if len(e) != 4:
                    raise ValueError("each entry needs four rational coordinates [a, b, c, d]")
                row.append(GaussianSqrt2(*(Fraction(x) for x in e)))
            rows.append(tuple(row))
        return cls(n, tuple(rows), int(data.get("claimed_rank", POLYGON_RANK)))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")

    @classmethod
    def load(cls, path) -> "GaussianRootCertificate":
        return cls.from_json(json.loads(Path(path).read_text()))

    def replace(self, i: int, j: int, value: GaussianSqrt2) -> "GaussianRootCertificate":
        rows = [list(r) for r in self.entries]
        rows[i][j] = value
        return GaussianRootCertificate(self.n, tuple(tuple(r) for r in rows), self.claimed_rank)


@dataclass
class CertificateCheck:
    valid: bool
    rank: int
    mismatches: list[tuple[int, int]] = field(default_factory=list)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "rank": self.rank,
            "mismatches": [list(x) for x in self.mismatches],
            "reason": self.reason,
        }


def verify_hadamard_certificate(cert: GaussianRootCertificate, slack: SlackMatrix) -> CertificateCheck:
    """Exact check of S = |M| * |M| entrywise and rank M = claimed_rank = 3."""
    if slack.n < 3 or cert.n < 3:
        raise ValueError("a polygon needs n >= 3")
    if cert.n != slack.n:
        raise ValueError(f"certificate is {cert.n}x{cert.n} but slack matrix is {slack.n}x{slack.n}")
    if slack.field not in ("Q", "Q(sqrt2)"):
        raise ValueError(f"slack entries over {slack.field} cannot be compared in Q(i, sqrt 2)")
    bad = []
    for i in range(cert.n):
        for j in range(cert.n):
            target = slack.entries[i][j]
            if cert.entries[i][j].abs2() != QuadraticNumber(target, 0, 2):
                bad.append((i, j))
    rank = exact_rank(cert.entries)
    reasons = []
    if bad:
        reasons.append(f"{len(bad)} entries with |M_ij|^2 != S_ij")
    if rank != cert.claimed_rank:
        reasons.append(f"rank {rank} != claimed {cert.claimed_rank}")
    if cert.claimed_rank != POLYGON_RANK:
        reasons.append(f"claimed rank must be {POLYGON_RANK} for a polygon")
    return CertificateCheck(not reasons, rank, bad, "; ".join(reasons))


def _g(s: str) -> GaussianSqrt2:
    # tiny parser for the hexagon entries below
    table = {
        "0": GaussianSqrt2(0),
        "1": GaussianSqrt2(1),
        "-1": GaussianSqrt2(-1),
        "r2": GaussianSqrt2(0, 1),
        "r2i": GaussianSqrt2(0, 0, 0, 1),
        "1+i": GaussianSqrt2(1, 0, 1),
        "1-i": GaussianSqrt2(1, 0, -1),
    }
    return table[s]


# Rows as printed for the hexagon (facet i between vertices i and i+1).
_HEXAGON_PRINTED = (
    "0 0 1 r2 r2 1",
    "1 0 0 1 1-i r2",
    "1+i 1 0 0 1 r2i",
    "r2i r2i -1 0 0 -1",
    "1 1+i r2i 1 0 0",
    "0 1 r2 1-i 1 0",
)


def hexagon_certificate() -> GaussianRootCertificate:
    """The published rank-3 root of the regular hexagon slack matrix."""
    printed = [tuple(_g(x) for x in row.split()) for row in _HEXAGON_PRINTED]
    n = len(printed)
    # printed row i is facet i+1 in the package layout
    rows = tuple(printed[(i - 1) % n] for i in range(n))
    return GaussianRootCertificate(n, rows)


def real_root_certificate(n: int) -> GaussianRootCertificate:
    """Entrywise square root of the exact slack matrix, for n = 3, 4 (all entries 1)."""
    slack = regular_gon_slack(n, exact=True)
    rows = []
    for r in slack.entries:
        row = []
        for x in r:
            if x not in (0, 1):
                raise ValueError("only 0/1 slack matrices have an obvious rational root")
            row.append(GaussianSqrt2(int(x)))
        rows.append(tuple(row))
    return GaussianRootCertificate(n, tuple(rows))


# --- symbolic minors -------------------------------------------------------------


@dataclass(frozen=True)
class SymbolicMinor:
    """Minor keeping all but ``deleted_rows``/``deleted_cols`` (1-based)."""

    deleted_rows: tuple[int, ...]
    deleted_cols: tuple[int, ...]
    polynomial: Polynomial

    @property
    def label(self) -> str:
        r = ",".join(map(str, self.deleted_rows))
        c = ",".join(map(str, self.deleted_cols))
        return f"m[{r}|{c}]"

    def to_dict(self) -> dict:
        return {
            "deleted_rows": list(self.deleted_rows),
            "deleted_cols": list(self.deleted_cols),
            "polynomial": str(self.polynomial),
        }


def symbolic_minors(S: SymbolicSlackMatrix, size: int) -> list[SymbolicMinor]:
    """All size x size minors, sign-normalized, zero minors dropped.

    Order: by deleted rows, then deleted columns, lexicographically.
    """
    n = S.n
    if not 1 <= size <= n:
        raise ValueError(f"minor size must be in 1..{n}, got {size}")
    grid = [[Polynomial.from_entry(S.var_count, e) for e in row] for row in S.entries]
    out = []
    idx = range(n)
    for rows in combinations(idx, size):
        drop_r = tuple(i + 1 for i in idx if i not in rows)
        for cols in combinations(idx, size):
            drop_c = tuple(j + 1 for j in idx if j not in cols)
            sub = [[grid[i][j] for j in cols] for i in rows]
            p = determinant(sub).normalized()
            if not p.is_zero():
                out.append(SymbolicMinor(drop_r, drop_c, p))
    return out


# --- trinomial obstructions --------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    minor: str
    rule: str  # "trinomial", "propagate", "contradiction"
    detail: str
    variable: int | None = None

    def to_dict(self) -> dict:
        return {"minor": self.minor, "rule": self.rule, "detail": self.detail, "variable": self.variable}


@dataclass
class ParityState:
    """Variables known to be pure imaginary at every certificate point."""

    nvars: int
    imaginary: set[int] = field(default_factory=set)
    constraints: list[tuple[str, tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    chain: list[Derivation] = field(default_factory=list)
    contradictions: list[Derivation] = field(default_factory=list)

    @property
    def contradiction(self) -> Derivation | None:
        return self.contradictions[0] if self.contradictions else None

    def status(self, var: int) -> str:
        return "pure_imaginary" if var in self.imaginary else "unknown"

    @property
    def verdict(self) -> str:
        return "not_minimal" if self.contradictions else "inconclusive"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "pure_imaginary": sorted(self.imaginary),
            "chain": [d.to_dict() for d in self.chain],
            "contradictions": [d.to_dict() for d in self.contradictions],
        }


def _mono(e: Sequence[int]) -> str:
    s = "*".join(f"x{i + 1}" if x == 1 else f"x{i + 1}^{x}" for i, x in enumerate(e) if x)
    return s or "1"


def _phase(e: Sequence[int], imaginary: set[int]) -> int | None:
    """0 if the monomial is real, 1 if pure imaginary, None if undecided."""
    odd = 0
    for i, x in enumerate(e):
        if not x:
            continue
        if i + 1 not in imaginary:
            return None
        odd += x
    return odd % 2


def _trinomial(p: Polynomial):
    """(a, b, c) exponents when p = +-(x^a - x^b + x^c), else None."""
    if len(p) != 3:
        return None
    coeffs = [c for _, c in p.terms]
    if sorted(abs(c) for c in coeffs) != [1, 1, 1]:
        return None
    neg = [e for e, c in p.terms if c < 0]
    pos = [e for e, c in p.terms if c > 0]
    if len(neg) == 1:
        return pos[0], neg[0], pos[1]
    if len(pos) == 1:
        return neg[0], pos[0], neg[1]
    return None


def scan_trinomial_obstructions(minors: Sequence[SymbolicMinor], nvars: int | None = None) -> ParityState:
    """Collect trinomial constraints and run the parity closure.

    Rules, each applied until nothing changes:
      * constraint Re(z^c / z^a) = 0 with every variable of a and c but one,
        v, known imaginary, and v of net exponent +-1: v is pure imaginary when
        the known part of c - a has even degree (this covers the base case of
        a constant against a single variable);
      * a minor whose monomials are all decided, with exactly one of them pure
        imaginary, cannot vanish: contradiction.
    A sound semi-decision procedure; it never concludes minimality.
    """
    if nvars is None:
        nvars = minors[0].polynomial.nvars if minors else 0
    st = ParityState(nvars)
    for m in minors:
        t = _trinomial(m.polynomial)
        if t is not None:
            a, b, c = t
            st.constraints.append((m.label, a, c))
            st.chain.append(Derivation(m.label, "trinomial", f"Re({_mono(c)} / {_mono(a)}) = 0"))

    changed = True
    while changed:
        changed = False
        for label, a, c in st.constraints:
            net = [x - y for x, y in zip(c, a)]
            unknown = [i for i, x in enumerate(net) if x and i + 1 not in st.imaginary]
            if len(unknown) != 1 or abs(net[unknown[0]]) != 1:
                continue
            # ratio = z_v^(+-1) * (product of known imaginary factors), must be imaginary
            known = sum(abs(x) for i, x in enumerate(net) if x and i + 1 in st.imaginary)
            if known % 2:
                continue  # would force v real, which the state cannot express
            v = unknown[0] + 1
            st.imaginary.add(v)
            st.chain.append(Derivation(label, "propagate", f"x{v} is pure imaginary", v))
            changed = True

    for m in minors:
        phases = [_phase(e, st.imaginary) for e, _ in m.polynomial.terms]
        if None in phases or sum(phases) != 1:
            continue
        odd = next(e for (e, _), ph in zip(m.polynomial.terms, phases) if ph == 1)
        d = Derivation(
            m.label,
            "contradiction",
            f"{m.polynomial} = 0 has the single imaginary term {_mono(odd)}, the rest real",
        )
        st.contradictions.append(d)
        st.chain.append(d)
    return st


# --- report ----------------------------------------------------------------------


@dataclass
class PsdReport:
    n: int
    verdict: str  # "minimal", "not_minimal", "inconclusive"
    lower_bound: int
    certificate: GaussianRootCertificate | None = None
    check: CertificateCheck | None = None
    parity: ParityState | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"n": self.n, "verdict": self.verdict, "lower_bound": self.lower_bound}
        if self.check is not None:
            out["certificate_check"] = self.check.to_dict()
        if self.parity is not None:
            out["parity"] = self.parity.to_dict()
        if self.note:
            out["note"] = self.note
        return out


def pentagon_minors() -> list[SymbolicMinor]:
    return symbolic_minors(symbolic_slack(5, normalized=True).printed_layout(), 4)


def psd_minimality_report(n: int) -> PsdReport:
    """Evidence about psd-minimality over C of the regular n-gon.

    n = 3, 4: real entrywise root, verified; n = 6: the stored certificate,
    verified; everything else: the obstruction scanner on the normalized
    symbolic slack matrix (printed layout), which can only refute.
    """
    if n < 3:
        raise ValueError(f"a polygon needs n >= 3, got {n}")
    note = LITERATURE_NOTES.get(n, "")
    if n in (3, 4, 6):
        cert = real_root_certificate(n) if n != 6 else hexagon_certificate()
        check = verify_hadamard_certificate(cert, regular_gon_slack(n, exact=True))
        parity = None
        if n == 6:
            S = symbolic_slack(n, normalized=True).printed_layout()
            parity = scan_trinomial_obstructions(symbolic_minors(S, POLYGON_RANK + 1), S.var_count)
        verdict = "minimal" if check.valid else "inconclusive"
        return PsdReport(n, verdict, POLYGON_RANK, cert, check, parity, note)
    S = symbolic_slack(n, normalized=True).printed_layout()
    parity = scan_trinomial_obstructions(symbolic_minors(S, POLYGON_RANK + 1), S.var_count)
    return PsdReport(n, parity.verdict, POLYGON_RANK + (parity.verdict == "not_minimal"), None, None, parity, note)
