"""Deterministic constructors for the concrete test groups, plus the textual
mini-language used by the CLI (`Z12`, `E(2,6)`, `Ab(2^2+1;3^1)`, `D8`, `Q8`,
`S4`, `A5`, products joined with `x`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial, prod

import numpy as np

from . import config
from .errors import CapacityError, DomainError, SpecParseError
from .group_core import GroupTable, build_from_generators


@dataclass(frozen=True)
class Cyclic:
    n: int

    def order(self):
        return self.n

    def text(self):
        return f"Z{self.n}"


@dataclass(frozen=True)
class ElemAbelian:
    p: int
    k: int

    def order(self):
        return self.p**self.k

    def text(self):
        return f"E({self.p},{self.k})"


@dataclass(frozen=True)
class Abelian:
    """Abelian p-group types: one exponent partition per prime."""

    parts: tuple  # ((p, (e1, e2, ...)), ...)

    def order(self):
        return prod(p ** sum(es) for p, es in self.parts)

    def text(self):
        chunks = [f"{p}^" + "+".join(str(e) for e in es) for p, es in self.parts]
        return "Ab(" + ";".join(chunks) + ")"


@dataclass(frozen=True)
class Dihedral:
    n: int  # group order 2m

    def order(self):
        return self.n

    def text(self):
        return f"D{self.n}"


@dataclass(frozen=True)
class QuaternionQ8:
    def order(self):
        return 8

    def text(self):
        return "Q8"


@dataclass(frozen=True)
class Symmetric:
    n: int

    def order(self):
        return factorial(self.n)

    def text(self):
        return f"S{self.n}"


@dataclass(frozen=True)
class Alternating:
    n: int

    def order(self):
        return max(factorial(self.n) // 2, 1)

    def text(self):
        return f"A{self.n}"


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple

    def order(self):
        return prod(f.order() for f in self.factors)

    def text(self):
        return "x".join(f.text() for f in self.factors)


_ATOM_RES = [
    (re.compile(r"Z(\d+)"), lambda m: Cyclic(int(m.group(1)))),
    (re.compile(r"E\((\d+),(\d+)\)"), lambda m: ElemAbelian(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"Ab\(([0-9^+;]+)\)"), None),  # handled specially
    (re.compile(r"D(\d+)"), lambda m: Dihedral(int(m.group(1)))),
    (re.compile(r"Q8"), lambda m: QuaternionQ8()),
    (re.compile(r"S(\d+)"), lambda m: Symmetric(int(m.group(1)))),
    (re.compile(r"A(\d+)"), lambda m: Alternating(int(m.group(1)))),
]

from .formulas import is_prime  # noqa: E402  (tiny helper, avoids duplication)


def _validate_atom(atom, pos):
    """Semantic atom validation; syntax errors are raised earlier as parse errors."""
    if isinstance(atom, Cyclic) and atom.n < 1:
        raise DomainError("cyclic order must be >= 1")
    if isinstance(atom, ElemAbelian):
        if not is_prime(atom.p):
            raise DomainError(f"{atom.p} is not prime")
        if atom.k < 0:
            raise DomainError("exponent must be >= 0")
    if isinstance(atom, Dihedral):
        if atom.n % 2 or atom.n < 6:
            raise DomainError(
                "dihedral atoms need an even order >= 6 (use Z2 / E(2,2) below that)"
            )
    if isinstance(atom, (Symmetric, Alternating)):
        if not 1 <= atom.n <= 5:
            raise DomainError("S and A atoms support degrees 1..5 only")
    if isinstance(atom, Abelian):
        for p, es in atom.parts:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
            if not es or any(e < 1 for e in es):
                raise DomainError("partition entries must be >= 1")


def _parse_abelian(body, pos):
    parts = []
    seen = set()
    for chunk in body.split(";"):
        m = re.fullmatch(r"(\d+)\^(\d+(?:\+\d+)*)", chunk)
        if not m:
            raise SpecParseError(f"bad Ab() chunk {chunk!r}", pos)
        p = int(m.group(1))
        es = tuple(sorted((int(e) for e in m.group(2).split("+")), reverse=True))
        if p in seen:
            raise SpecParseError(f"prime {p} repeated in Ab()", pos)
        seen.add(p)
        parts.append((p, es))
    parts.sort()
    return Abelian(tuple(parts))


def _parse_atom(text, pos):
    for rx, build in _ATOM_RES:
        m = rx.fullmatch(text)
        if m:
            atom = _parse_abelian(m.group(1), pos) if build is None else build(m)
            _validate_atom(atom, pos)
            return atom
    raise SpecParseError(f"unrecognized group atom {text!r}", pos)


def parse_spec(text):
    """Parse the group mini-language into a GroupSpec tree."""
    stripped = "".join(text.split())
    if not stripped:
        raise SpecParseError("empty group spec", 0)
    factors = []
    pos = 0
    for chunk in stripped.split("x"):
        if not chunk:
            raise SpecParseError("empty product factor", pos)
        factors.append(_parse_atom(chunk, pos))
        pos += len(chunk) + 1
    if len(factors) == 1:
        return factors[0]
    return DirectProduct(tuple(factors))


def print_spec(spec):
    """Canonical text: product factors sorted by (order, text)."""
    if isinstance(spec, DirectProduct):
        factors = sorted(spec.factors, key=lambda f: (f.order(), f.text()))
        return "x".join(f.text() for f in factors)
    return spec.text()


# ---------------------------------------------------------------------------
# structural helpers used by the CLI's formula routing


def is_abelian_spec(spec):
    if isinstance(spec, DirectProduct):
        return all(is_abelian_spec(f) for f in spec.factors)
    if isinstance(spec, (Cyclic, ElemAbelian, Abelian)):
        return True
    if isinstance(spec, Symmetric):
        return spec.n <= 2
    if isinstance(spec, Alternating):
        return spec.n <= 3
    return False


def abelian_prime_partitions(spec):
    """Merged {p: sorted partition} over all abelian factors; DomainError otherwise."""
    if not is_abelian_spec(spec):
        raise DomainError("spec is not abelian")
    parts = {}

    def add(p, e):
        if e > 0:
            parts.setdefault(p, []).append(e)

    def walk(s):
        if isinstance(s, DirectProduct):
            for f in s.factors:
                walk(f)
        elif isinstance(s, Cyclic):
            from .formulas import factorize

            for p, a in factorize(s.n).pairs:
                add(p, a)
        elif isinstance(s, ElemAbelian):
            for _ in range(s.k):
                add(s.p, 1)
        elif isinstance(s, Abelian):
            for p, es in s.parts:
                for e in es:
                    add(p, e)
        elif isinstance(s, Symmetric) and s.n == 2:
            add(2, 1)
        elif isinstance(s, Alternating) and s.n == 3:
            add(3, 1)
        # remaining abelian atoms are trivial groups

    walk(spec)
    return {p: tuple(sorted(es, reverse=True)) for p, es in sorted(parts.items())}


def is_cyclic_spec(spec):
    return is_abelian_spec(spec) and all(
        len(es) == 1 for es in abelian_prime_partitions(spec).values()
    )


def is_elem_sylow_spec(spec):
    return is_abelian_spec(spec) and all(
        all(e == 1 for e in es) for es in abelian_prime_partitions(spec).values()
    )


# ---------------------------------------------------------------------------
# realization


def _cyclic_table(n):
    ar = np.arange(n)
    return (ar[:, None] + ar[None, :]) % n


def _product_table(t1, t2):
    n1, n2 = t1.shape[0], t2.shape[0]
    prod_t = (
        np.asarray(t1, dtype=np.int64)[:, None, :, None] * n2
        + np.asarray(t2, dtype=np.int64)[None, :, None, :]
    )
    return prod_t.reshape(n1 * n2, n1 * n2)


def _quaternion_generators():
    """Left-regular permutations of i and j on (1,-1,i,-i,j,-j,k,-k)."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = {n: (-1 if n.startswith("-") else 1) for n in names}
    base = {n: n.lstrip("-") for n in names}
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }

    def mul(a, b):
        s = sign[a] * sign[b]
        s2, r = rules[(base[a], base[b])]
        s *= s2
        return r if s == 1 else "-" + r

    idx = {n: i for i, n in enumerate(names)}
    gens = []
    for g in ("i", "j"):
        gens.append(tuple(idx[mul(g, n)] for n in names))
    return gens


def _atom_table(atom, cap):
    if isinstance(atom, Cyclic):
        return _cyclic_table(atom.n)
    if isinstance(atom, ElemAbelian):
        t = _cyclic_table(1)
        for _ in range(atom.k):
            t = _product_table(t, _cyclic_table(atom.p))
        return t
    if isinstance(atom, Abelian):
        t = _cyclic_table(1)
        for p, es in atom.parts:
            for e in es:
                t = _product_table(t, _cyclic_table(p**e))
        return t
    if isinstance(atom, Dihedral):
        m = atom.n // 2
        rot = tuple((x + 1) % m for x in range(m))
        refl = tuple((m - x) % m for x in range(m))
        return build_from_generators(m, [rot, refl], cap=cap).mult
    if isinstance(atom, QuaternionQ8):
        return build_from_generators(8, _quaternion_generators(), cap=cap).mult
    if isinstance(atom, Symmetric):
        n = atom.n
        if n <= 1:
            return _cyclic_table(1)
        cycle = tuple(list(range(1, n)) + [0])
        swap = tuple([1, 0] + list(range(2, n)))
        return build_from_generators(n, [cycle, swap] if n > 2 else [swap], cap=cap).mult
    if isinstance(atom, Alternating):
        n = atom.n
        if n <= 2:
            return _cyclic_table(1)
        three = tuple([1, 2, 0] + list(range(3, n)))
        if n == 3:
            gens = [three]
        elif n % 2:
            gens = [three, tuple(list(range(1, n)) + [0])]
        else:
            gens = [three, tuple([0] + list(range(2, n)) + [1])]
        return build_from_generators(n, gens, cap=cap).mult
    raise DomainError(f"cannot realize {atom!r}")


def realize(spec, cap=None):
    """Deterministic GroupTable for a spec; lexicographic product ordering."""
    if cap is None:
        cap = config.element_cap()
    total = spec.order()
    if total > cap:
        raise CapacityError(
            f"spec order {total} exceeds the element cap {cap}"
        )
    if isinstance(spec, DirectProduct):
        t = _cyclic_table(1)
        for f in spec.factors:
            t = _product_table(t, _atom_table(f, cap))
    else:
        t = _atom_table(spec, cap)
    return GroupTable(t)


def realize_text(text, cap=None):
    return realize(parse_spec(text), cap=cap)


# ---------------------------------------------------------------------------
# the standard roster used by the verification suites


_ROSTER_TEXTS = [
    # cyclic
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z12", "Z16",
    "Z24", "Z27", "Z30", "Z36", "Z48", "Z60", "Z64", "Z100", "Z128", "Z210", "Z256",
    # elementary abelian
    "E(2,2)", "E(2,3)", "E(2,4)", "E(2,5)", "E(2,6)", "E(2,7)", "E(2,8)",
    "E(3,2)", "E(3,3)", "E(3,4)", "E(5,2)", "E(5,3)", "E(7,2)",
    # abelian with mixed Sylow types
    "Ab(2^2+1)", "Ab(2^2+2)", "Ab(2^3+1)", "Ab(2^2+1+1)", "Ab(2^3+2)",
    "Ab(3^2+1)", "Ab(3^3+1)", "Ab(5^2+1)", "Ab(2^2+1;3^1)", "Ab(2^2+1;3^1+1)",
    "Ab(2^1+1;3^2)", "Ab(2^3+1;3^1)", "Ab(2^2+2;3^1+1)",
    "Z4xZ2xZ3", "E(2,2)xZ9", "E(2,3)xE(3,2)", "Z4xZ4", "Z8xZ2", "Z9xZ9",
    # dihedral / quaternion
    "D6", "D8", "D10", "D12", "D16", "D24", "D32", "D64",
    "Q8", "Q8xZ2", "Q8xZ3", "Q8xQ8",
    # symmetric / alternating and mixed products
    "S3", "S4", "S5", "A4", "A5",
    "S3xZ2", "S3xZ4", "S3xS3", "S3xZ5", "S4xZ2", "S4xZ3", "S4xE(2,2)",
    "A4xZ2", "A4xZ3", "A4xA4", "A5xZ2", "A5xE(2,2)", "D8xZ3", "D10xS3",
]


def standard_roster(max_order, texts=None):
    """[(canonical text, spec)] for every roster entry with order <= max_order."""
    out = []
    for text in texts or _ROSTER_TEXTS:
        spec = parse_spec(text)
        if spec.order() <= max_order:
            out.append((print_spec(spec), spec))
    return out
