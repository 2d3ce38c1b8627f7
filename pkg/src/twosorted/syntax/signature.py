"""Constant signature shared by the parser, printer and kernel.

Each entry records the surface name, the ``f``-index (``None`` for the
pairing/identity constants of the pairing-based systems) and the number of
number arguments ``k`` and function arguments ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ConstSig:
    name: str
    k: int
    l: int
    index: int | None = None

    @property
    def is_unary(self) -> bool:
        """True for constants that also serve as functors (k=1, l=0)."""
        return self.k == 1 and self.l == 0


F_TABLE: tuple[ConstSig, ...] = (
    ConstSig("zero", 0, 0, 0),
    ConstSig("succ", 1, 0, 1),
    ConstSig("add", 2, 0, 2),
    ConstSig("mul", 2, 0, 3),
    ConstSig("exp", 2, 0, 4),
    ConstSig("fact", 1, 0, 5),
    ConstSig("pd", 1, 0, 6),
    ConstSig("monus", 2, 0, 7),
    ConstSig("minf", 2, 0, 8),
    ConstSig("maxf", 2, 0, 9),
    ConstSig("sgbar", 1, 0, 10),
    ConstSig("sg", 1, 0, 11),
    ConstSig("absdiff", 2, 0, 12),
    ConstSig("rm", 2, 0, 13),
    ConstSig("quot", 2, 0, 14),
    ConstSig("sum", 1, 1, 15),
    ConstSig("prod", 1, 1, 16),
    ConstSig("minle", 1, 1, 17),
    ConstSig("maxle", 1, 1, 18),
    ConstSig("prime", 1, 0, 19),
    ConstSig("expof", 2, 0, 20),
    ConstSig("lh", 1, 0, 21),
    ConstSig("concat", 2, 0, 22),
    ConstSig("bar", 1, 1, 23),
    ConstSig("tilde", 1, 1, 24),
    ConstSig("join", 2, 0, 25),
    ConstSig("ccp", 1, 0, 26),
)

# Primitives of the pairing-based systems (BIM, H use J/K/L; WKV uses j/j1/j2).
PAIRING_CONSTS: tuple[ConstSig, ...] = (
    ConstSig("J", 2, 0),
    ConstSig("K", 1, 0),
    ConstSig("L", 1, 0),
    ConstSig("j", 2, 0),
    ConstSig("j1", 1, 0),
    ConstSig("j2", 1, 0),
    ConstSig("zerofn", 1, 0),
    ConstSig("ident", 1, 0),
)

BASE_SIGNATURE: dict[str, ConstSig] = {c.name: c for c in F_TABLE + PAIRING_CONSTS}

BY_INDEX: dict[int, ConstSig] = {c.index: c for c in F_TABLE}


def lookup(name: str) -> ConstSig:
    try:
        return BASE_SIGNATURE[name]
    except KeyError:
        raise KeyError(f"unknown constant {name!r}") from None
