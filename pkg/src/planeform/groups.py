"""Matrix groups: closure enumeration, boundedness screening, length classes."""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import scalars
from .errors import IncompleteClosure, SingularGenerator
from .linalg import Mat2, Vec2, real_eigenvalues, traceless_decompose

DEFAULT_CLOSURE_LIMIT = 4096
# entrywise tolerance for matching float group elements
MATCH_TOL = 1e-9


@dataclass(frozen=True)
class GroupSpec:
    generators: tuple = ()
    elements: tuple = ()
    closure_limit: int = DEFAULT_CLOSURE_LIMIT
    scalar: str = scalars.RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "elements", tuple(self.elements))
        mats = self.generators + self.elements
        if not mats:
            raise ValueError("a group spec needs generators or elements")
        if self.closure_limit < 1:
            raise ValueError("closure_limit must be positive")
        for m in mats:
            if m.kind != self.scalar:
                raise scalars.ScalarKindError(f"matrix of kind {m.kind} in a {self.scalar} spec")
            if scalars.is_zero(m.det(), 0.0):
                raise SingularGenerator(f"singular matrix {m.as_rows()}")

    def conjugate(self, s: Mat2) -> "GroupSpec":
        """The spec of ``s @ G @ s^-1``."""
        s_inv = s.inverse()
        return GroupSpec(
            generators=tuple(s @ g @ s_inv for g in self.generators),
            elements=tuple(s @ g @ s_inv for g in self.elements),
            closure_limit=self.closure_limit,
            scalar=self.scalar,
        )

    def to_kind(self, kind: str) -> "GroupSpec":
        return GroupSpec(
            generators=tuple(g.to_kind(kind) for g in self.generators),
            elements=tuple(g.to_kind(kind) for g in self.elements),
            closure_limit=self.closure_limit,
            scalar=kind,
        )


class _MemberIndex:
    """Set of matrices with exact (rational) or tolerant (float) membership."""

    def __init__(self, kind: str, tol: float = MATCH_TOL):
        self.kind = kind
        self.tol = tol
        self._table: dict = {}

    def _key(self, m: Mat2) -> tuple:
        if self.kind == scalars.RATIONAL:
            return m.entries()
        return tuple(round(v / self.tol) for v in m.entries())

    def find(self, m: Mat2):
        key = self._key(m)
        if self.kind == scalars.RATIONAL:
            return self._table.get(key)
        for offset in itertools.product((0, -1, 1), repeat=4):
            hit = self._table.get(tuple(k + o for k, o in zip(key, offset)))
            if hit is not None and hit.close(m, self.tol):
                return hit
        return None

    def add(self, m: Mat2) -> bool:
        if self.find(m) is not None:
            return False
        self._table[self._key(m)] = m
        return True


@dataclass(frozen=True)
class GroupClosure:
    """Members of a matrix group; ``complete=False`` marks a truncated sample."""

    members: tuple
    complete: bool
    generators: tuple = ()

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def kind(self) -> str:
        return self.members[0].kind

    def sorted_members(self) -> list:
        return sorted(self.members, key=Mat2.sort_key)

    def contains(self, m: Mat2, tol: float = MATCH_TOL) -> bool:
        t = 0.0 if self.kind == scalars.RATIONAL else tol
        return any(x.close(m, t) for x in self.members)


def close_group(spec: GroupSpec) -> GroupClosure:
    """Breadth-first closure of the spec's matrices under products and inverses."""
    ident = Mat2.identity(spec.scalar)
    seeds = list(spec.generators) + list(spec.elements)
    for m in seeds:
        if scalars.is_zero(m.det(), 0.0):
            raise SingularGenerator(f"singular matrix {m.as_rows()}")
    steps = []
    for m in seeds + [m.inverse() for m in seeds]:
        if not any(m == s for s in steps):
            steps.append(m)

    index = _MemberIndex(spec.scalar)
    members: list = []
    queue: deque = deque()

    def push(m: Mat2) -> bool:
        if index.add(m):
            members.append(m)
            queue.append(m)
        return len(members) >= spec.closure_limit

    full = push(ident)
    for m in seeds:
        if full:
            break
        full = push(m)
    while queue and not full:
        m = queue.popleft()
        for g in steps:
            full = push(m @ g)
            if full:
                break
    complete = not full
    if full:
        # a group of order exactly closure_limit still counts as closed
        complete = all(index.find(m @ g) is not None for m in members for g in steps)
    return GroupClosure(members=tuple(members), complete=complete, generators=tuple(steps))


@dataclass(frozen=True)
class ScreenReport:
    passed: bool
    reason: str | None = None
    witness: Mat2 | None = None
    violations: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.passed


def _fmt(m: Mat2) -> str:
    return "[[{}, {}], [{}, {}]]".format(*m.entries())


_REASONS = {
    "determinant": "determinant is not +1 or -1",
    "eigenvalue": "real eigenvalue other than +1 or -1",
    "trace": "|trace| > 2 at determinant 1",
    "nilpotent": "nilpotent traceless part",
}


def member_violations(m: Mat2, tol: float = MATCH_TOL) -> list:
    """Boundedness conditions violated by a single member, as ``(code, message)`` pairs."""
    t = 0.0 if m.kind == scalars.RATIONAL else tol
    out = []
    det = m.det()
    if not (scalars.close(det, 1, t) or scalars.close(det, -1, t)):
        out.append(("determinant", f"{_REASONS['determinant']}: det = {det}"))
    for lam in real_eigenvalues(m):
        if abs(abs(lam) - 1) > t:
            out.append(("eigenvalue", f"{_REASONS['eigenvalue']}: {lam}"))
            break
    if scalars.close(det, 1, t):
        if abs(m.trace()) > 2 + t:
            out.append(("trace", f"{_REASONS['trace']}: trace = {m.trace()}"))
        dec = traceless_decompose(m)
        # floats: J^2 must vanish relative to |J|^2, so small rotations are not flagged
        scale = dec.j.max_abs() ** 2 if t else 1
        if abs(dec.j_square) <= t * scale and not dec.j.is_zero(t):
            out.append(("nilpotent", f"{_REASONS['nilpotent']}: J = {_fmt(dec.j)}"))
    return out


def boundedness_screen(g: GroupClosure) -> ScreenReport:
    """Reject groups that cannot be bounded; the first offending member is the witness.

    ``violations`` lists every failed condition for the witness (e.g. a
    determinant-1 matrix with trace 5/2 fails both the eigenvalue and the
    trace condition); ``reason`` is the first of them.
    """
    for m in g.members:
        bad = member_violations(m)
        if bad:
            return ScreenReport(
                passed=False,
                reason=_REASONS[bad[0][0]],
                witness=m,
                violations=tuple(code for code, _ in bad),
                message="; ".join(msg for _, msg in bad),
            )
    return ScreenReport(passed=True)


def nilpotent_powers(m: Mat2, n_max: int = 20) -> list:
    """For a determinant-1 member ``+-(I + J)`` with ``J**2 == 0``, list ``(n, (+-m)**n, I + n*J)``.

    Equality of the two matrices for every ``n`` exhibits the linear entry
    growth that rules out boundedness.
    """
    dec = traceless_decompose(m)
    sign = 1 if dec.tau > 0 else -1
    base = m * sign
    j1 = base - Mat2.identity(m.kind)
    ident = Mat2.identity(m.kind)
    out = []
    power = ident
    for n in range(1, n_max + 1):
        power = power @ base
        out.append((n, power, ident + j1 * n))
    return out


def same_length(u: Vec2, v: Vec2, g: GroupClosure, tol: float = MATCH_TOL) -> bool:
    """Whether some member of the (complete) group maps ``u`` to ``v``."""
    if not g.complete:
        raise IncompleteClosure("same_length needs a complete closure")
    t = 0.0 if u.kind == scalars.RATIONAL else tol
    return any((m @ u).close(v, t) for m in g.members)


def orbit(v: Vec2, g: GroupClosure) -> list:
    out: list = []
    for m in g.members:
        w = m @ v
        if not any(w.close(x, 0.0 if v.kind == scalars.RATIONAL else MATCH_TOL) for x in out):
            out.append(w)
    return out


def is_irreducible(g: GroupClosure) -> bool:
    """True when the members share no real eigenvector."""
    mats = [m.to_kind(scalars.FLOAT) for m in g.members]
    if any(m.trace() ** 2 - 4 * m.det() < -MATCH_TOL for m in mats):
        return True
    candidates = None
    for m in mats:
        if m.is_scalar(MATCH_TOL):
            continue
        candidates = _eigenvectors(m)
        break
    if candidates is None:
        return False
    for v in candidates:
        if all(_is_eigenvector(m, v) for m in mats):
            return False
    return True


def _eigenvectors(m: Mat2) -> list:
    out = []
    for lam in real_eigenvalues(m):
        a = m - Mat2.scalar(float(lam))
        # kernel of the rank-1 matrix a
        v = Vec2(-a.a12, a.a11) if abs(a.a11) + abs(a.a12) > MATCH_TOL else Vec2(-a.a22, a.a21)
        if not v.is_zero(MATCH_TOL):
            out.append(v)
    return out


def _is_eigenvector(m: Mat2, v: Vec2) -> bool:
    w = m @ v
    return abs(w.x1 * v.x2 - w.x2 * v.x1) <= MATCH_TOL * max(1.0, abs(v.x1) + abs(v.x2)) ** 2


@dataclass(frozen=True)
class AxiomReport:
    bounded: ScreenReport
    transitive_on_lengths: str
    transitive_on_lines: str


def axiom_report(g: GroupClosure) -> AxiomReport:
    """Status of the isotropy and boundedness axioms for a group of isometries.

    Same-length classes are defined as orbits, so transitivity on them holds
    by construction. Transitivity on the infinitely many lines through the
    origin is impossible for a finite group and not decidable from a sample.
    """
    if g.complete:
        lines = "fails: a finite group has finite orbits on the infinite set of lines"
    else:
        lines = "not checkable from a sampled closure"
    return AxiomReport(
        bounded=boundedness_screen(g),
        transitive_on_lengths="holds by construction (same length means same orbit)",
        transitive_on_lines=lines,
    )


# -- catalog of finite subgroups of GL(2, Q) ---------------------------------

R90 = Mat2(0, 1, -1, 0)
ORDER3 = Mat2(0, -1, 1, -1)
ORDER6 = Mat2(1, -1, 1, 0)
FLIP = Mat2(1, 0, 0, -1)
SWAP = Mat2(0, 1, 1, 0)
SHEAR = Mat2(1, 1, 0, 1)


def random_rational_invertible(rng: random.Random, span: int = 4) -> Mat2:
    while True:
        m = Mat2(*(Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(4)))
        if m.det() != 0:
            return m


def base_catalog() -> dict:
    """Finite groups of rational 2x2 matrices by name (dihedral names carry the group order)."""
    neg = -Mat2.identity()
    return {
        "C2": GroupSpec(generators=(neg,)),
        "C3": GroupSpec(generators=(ORDER3,)),
        "C4": GroupSpec(generators=(R90,)),
        "C6": GroupSpec(generators=(ORDER6,)),
        "D4": GroupSpec(generators=(FLIP, neg)),
        "D6": GroupSpec(generators=(ORDER3, SWAP)),
        "D8": GroupSpec(generators=(R90, FLIP)),
    }


def catalog(seed: int = 0) -> dict:
    """Base groups plus their conjugates by the shear and by a seeded random rational matrix."""
    rng = random.Random(seed)
    out: dict = {}
    for name, spec in base_catalog().items():
        out[name] = spec
        out[f"{name}^shear"] = spec.conjugate(SHEAR)
        out[f"{name}^rand"] = spec.conjugate(random_rational_invertible(rng))
    return out
