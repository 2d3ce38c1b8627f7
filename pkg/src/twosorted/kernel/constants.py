"""Standard semantics of the function(al) constants.

Each entry pairs a :class:`ConstSig` with a Python function taking a tuple
of naturals and a tuple of unary function handles.  ``ccp`` is present in
the signature but has no semantics here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, isqrt
from types import MappingProxyType
from typing import Callable, Mapping

from ..errors import UnsupportedConstantError, ValueTooLarge
from ..syntax.signature import BASE_SIGNATURE, ConstSig
from . import codec

Semantics = Callable[[tuple, tuple], int]


def cantor_pair(m: int, n: int) -> int:
    return (m + n) * (m + n + 1) // 2 + n


def cantor_unpair(x: int) -> tuple[int, int]:
    w = (isqrt(8 * x + 1) - 1) // 2
    n = x - w * (w + 1) // 2
    return w - n, n


def _rm(a: int, b: int) -> int:
    return a if b == 0 else a % b


def _quot(a: int, b: int) -> int:
    return 0 if b == 0 else a // b


def _fact(n: int) -> int:
    if n > 200_000:
        raise ValueTooLarge(f"{n}! is too large to evaluate")
    return factorial(n)


def _sum(z, f):
    return sum(f(y) for y in range(z))


def _prod(z, f):
    out = 1
    for y in range(z):
        out *= f(y)
        if out == 0:
            break
    return out


_BASE: dict[str, Callable] = {
    "zero": lambda n, f: 0,
    "succ": lambda n, f: n[0] + 1,
    "add": lambda n, f: n[0] + n[1],
    "mul": lambda n, f: n[0] * n[1],
    "exp": lambda n, f: codec.power(n[0], n[1]),
    "fact": lambda n, f: _fact(n[0]),
    "pd": lambda n, f: max(n[0] - 1, 0),
    "monus": lambda n, f: max(n[0] - n[1], 0),
    "minf": lambda n, f: min(n),
    "maxf": lambda n, f: max(n),
    "sgbar": lambda n, f: int(n[0] == 0),
    "sg": lambda n, f: int(n[0] != 0),
    "absdiff": lambda n, f: abs(n[0] - n[1]),
    "rm": lambda n, f: _rm(*n),
    "quot": lambda n, f: _quot(*n),
    "sum": lambda n, f: _sum(n[0], f[0]),
    "prod": lambda n, f: _prod(n[0], f[0]),
    "minle": lambda n, f: min(f[0](y) for y in range(n[0] + 1)),
    "maxle": lambda n, f: max(f[0](y) for y in range(n[0] + 1)),
    "prime": lambda n, f: codec.nth_prime(n[0]),
    "expof": lambda n, f: codec.component(*n),
    "lh": lambda n, f: codec.seq_len(n[0]),
    "concat": lambda n, f: codec.concat(*n),
    "bar": lambda n, f: codec.bar_code(f[0], n[0]),
    "tilde": lambda n, f: codec.tilde_code(f[0], n[0]),
    "join": lambda n, f: codec.join(*n),
    "J": lambda n, f: cantor_pair(*n),
    "K": lambda n, f: cantor_unpair(n[0])[0],
    "L": lambda n, f: cantor_unpair(n[0])[1],
    "j": lambda n, f: cantor_pair(*n),
    "j1": lambda n, f: cantor_unpair(n[0])[0],
    "j2": lambda n, f: cantor_unpair(n[0])[1],
    "zerofn": lambda n, f: 0,
    "ident": lambda n, f: n[0],
}


@dataclass(frozen=True)
class ConstantDef:
    sig: ConstSig
    semantics: Semantics | None

    def __call__(self, nums: tuple, funs: tuple = ()) -> int:
        if self.semantics is None:
            raise UnsupportedConstantError(f"constant {self.sig.name} has no semantics")
        return self.semantics(nums, funs)


@dataclass(frozen=True)
class ConstantTable:
    """Name-indexed constants; :meth:`extend` returns a new table."""

    entries: Mapping[str, ConstantDef] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> ConstantDef:
        try:
            return self.entries[name]
        except KeyError:
            raise UnsupportedConstantError(f"unknown constant {name!r}") from None

    def signature(self) -> dict[str, ConstSig]:
        return {n: d.sig for n, d in self.entries.items()}

    def extend(self, sig: ConstSig, semantics: Semantics) -> "ConstantTable":
        if sig.name in self.entries:
            raise ValueError(f"constant {sig.name!r} already defined")
        return ConstantTable({**self.entries, sig.name: ConstantDef(sig, semantics)})


BASE_TABLE = ConstantTable(
    {name: ConstantDef(sig, _BASE.get(name)) for name, sig in BASE_SIGNATURE.items()}
)
